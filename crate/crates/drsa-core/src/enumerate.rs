//! Enumeration of depth-consistent topologies.
//!
//! Generates every rooted binary tree over a set of labeled leaves with
//! prescribed depths, quotiented by sibling swaps: each unordered labeled
//! tree appears exactly once. Subtrees are shared, so enumeration cost is
//! proportional to the number of distinct subtrees.

use crate::feas::{kraft_check, FeasError};
use crate::topology::{TopoNode, Topology};
use std::collections::HashMap;
use std::rc::Rc;

#[derive(Debug)]
enum STree {
    Leaf(usize),
    Node(Rc<STree>, Rc<STree>),
}

struct Enumerator<'a> {
    depths: &'a [u32],
    max_d: u32,
    shapes: HashMap<u32, Rc<Vec<Rc<STree>>>>,
    counts: HashMap<u32, u128>,
}

impl<'a> Enumerator<'a> {
    fn new(depths: &'a [u32]) -> Self {
        let max_d = depths.iter().copied().max().unwrap_or(0);
        Enumerator {
            depths,
            max_d,
            shapes: HashMap::new(),
            counts: HashMap::new(),
        }
    }

    /// Dyadic mass of a leaf subset in units of 2^-max_d.
    fn mass(&self, mask: u32) -> u128 {
        let mut m = 0u128;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            m += 1u128 << (self.max_d - self.depths[i]);
            bits &= bits - 1;
        }
        m
    }

    /// Root depth of a subtree over `mask`, if the subset is realizable.
    fn subset_depth(&self, mask: u32) -> Option<u32> {
        let m = self.mass(mask);
        if !m.is_power_of_two() {
            return None;
        }
        let log = m.trailing_zeros() as u32;
        if log > self.max_d {
            return None; // mass exceeds a whole tree rooted above depth 0
        }
        Some(self.max_d - log)
    }

    fn count(&mut self, mask: u32) -> u128 {
        if let Some(&c) = self.counts.get(&mask) {
            return c;
        }
        let c = if mask.count_ones() == 1 {
            1
        } else {
            let mut total = 0u128;
            let low = mask & mask.wrapping_neg();
            let mut s = (mask - 1) & mask;
            while s != 0 {
                if s & low != 0 {
                    let rest = mask ^ s;
                    if self.splits_ok(mask, s, rest) {
                        total = total.saturating_add(self.count(s).saturating_mul(self.count(rest)));
                    }
                }
                s = (s - 1) & mask;
            }
            total
        };
        self.counts.insert(mask, c);
        c
    }

    fn splits_ok(&self, mask: u32, a: u32, b: u32) -> bool {
        match (self.subset_depth(mask), self.subset_depth(a), self.subset_depth(b)) {
            (Some(d), Some(da), Some(db)) => da == d + 1 && db == d + 1,
            _ => false,
        }
    }

    fn gen(&mut self, mask: u32) -> Rc<Vec<Rc<STree>>> {
        if let Some(v) = self.shapes.get(&mask) {
            return v.clone();
        }
        let mut out: Vec<Rc<STree>> = Vec::new();
        if mask.count_ones() == 1 {
            out.push(Rc::new(STree::Leaf(mask.trailing_zeros() as usize)));
        } else {
            let low = mask & mask.wrapping_neg();
            let mut s = (mask - 1) & mask;
            while s != 0 {
                if s & low != 0 {
                    let rest = mask ^ s;
                    if self.splits_ok(mask, s, rest) {
                        let ls = self.gen(s);
                        let rs = self.gen(rest);
                        for l in ls.iter() {
                            for r in rs.iter() {
                                out.push(Rc::new(STree::Node(l.clone(), r.clone())));
                            }
                        }
                    }
                }
                s = (s - 1) & mask;
            }
        }
        let rc = Rc::new(out);
        self.shapes.insert(mask, rc.clone());
        rc
    }
}

fn to_topology(tree: &STree, depths: &[u32]) -> Topology {
    fn rec(t: &STree, nodes: &mut Vec<TopoNode>) -> usize {
        match t {
            STree::Leaf(slot) => {
                nodes.push(TopoNode::Leaf { slot: *slot });
                nodes.len() - 1
            }
            STree::Node(a, b) => {
                let ia = rec(a, nodes);
                let ib = rec(b, nodes);
                nodes.push(TopoNode::Steiner { children: [ia, ib] });
                nodes.len() - 1
            }
        }
    }
    let mut nodes = Vec::new();
    let top = rec(tree, &mut nodes);
    Topology {
        nodes,
        top,
        slot_depths: depths.to_vec(),
        assignment: (0..depths.len()).collect(),
    }
}

/// Number of unordered labeled topologies for the depth multiset, without
/// materializing them.
pub fn count_topologies(depths: &[u32]) -> Result<u128, FeasError> {
    let kraft = kraft_check(depths)?;
    if !kraft.feasible {
        return Err(FeasError::Infeasible {
            sum: kraft.to_string(),
        });
    }
    assert!(depths.len() <= 32, "enumeration supports at most 32 terminals");
    let mut e = Enumerator::new(depths);
    let full = if depths.len() == 32 {
        u32::MAX
    } else {
        (1u32 << depths.len()) - 1
    };
    Ok(e.count(full))
}

/// All depth-consistent topologies over leaves `0..depths.len()`, each
/// unordered tree exactly once. Leaf slot `i` is bound to terminal `i`.
pub fn enumerate_topologies(depths: &[u32]) -> Result<Vec<Topology>, FeasError> {
    let kraft = kraft_check(depths)?;
    if !kraft.feasible {
        return Err(FeasError::Infeasible {
            sum: kraft.to_string(),
        });
    }
    assert!(depths.len() <= 32, "enumeration supports at most 32 terminals");
    let mut e = Enumerator::new(depths);
    let full = if depths.len() == 32 {
        u32::MAX
    } else {
        (1u32 << depths.len()) - 1
    };
    let shapes = e.gen(full);
    Ok(shapes.iter().map(|s| to_topology(s, depths)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_topology_for_1_2_2() {
        let ts = enumerate_topologies(&[1, 2, 2]).unwrap();
        assert_eq!(ts.len(), 1);
        assert!(ts[0].is_depth_consistent());
    }

    #[test]
    fn sibling_swap_quotient_for_pairs() {
        let ts = enumerate_topologies(&[1, 1]).unwrap();
        assert_eq!(ts.len(), 1);
    }

    #[test]
    fn infeasible_multiset_is_flagged() {
        assert!(matches!(
            enumerate_topologies(&[2, 2, 2]),
            Err(FeasError::Infeasible { .. })
        ));
    }

    #[test]
    fn counts_match_enumeration() {
        for depths in [
            vec![1u32, 2, 2],
            vec![2, 2, 2, 2],
            vec![1, 2, 3, 3],
            vec![2, 2, 2, 3, 3],
            vec![3, 3, 3, 3, 2, 2],
        ] {
            let n = count_topologies(&depths).unwrap();
            let ts = enumerate_topologies(&depths).unwrap();
            assert_eq!(n as usize, ts.len(), "depths {:?}", depths);
            for t in &ts {
                assert!(t.is_depth_consistent());
                assert_eq!(t.leaf_depth_multiset(), {
                    let mut d = depths.clone();
                    d.sort_unstable();
                    d
                });
            }
        }
    }

    #[test]
    fn all_enumerated_trees_distinct() {
        let ts = enumerate_topologies(&[2, 2, 2, 3, 3]).unwrap();
        let mut keys: Vec<Vec<u8>> = ts
            .iter()
            .map(|t| t.canonical_key(&|s| s as u64))
            .collect();
        let before = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), before);
    }
}
