//! Feasibility: the exact dyadic-sum test for depth multisets, the
//! deterministic merge construction of a depth-respecting topology, and the
//! trivial all-at-root embedding.
//!
//! A binary tree with leaves at depths d_1..d_n exists iff the dyadic sum
//! sum(2^-d_i) equals exactly 1.

use crate::geom::Point;
use crate::model::Instance;
use crate::solution::{EmbeddedSolution, NodeKind, SolNode};
use crate::topology::{NodeId, TopoNode, Topology};
use num_bigint::BigUint;
use thiserror::Error;

/// Exact value of sum(2^-d_i) as `numerator / 2^log2_denominator`, reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KraftResult {
    pub numerator: BigUint,
    pub log2_denominator: u64,
    pub feasible: bool,
}

impl KraftResult {
    pub fn denominator(&self) -> BigUint {
        BigUint::from(1u32) << self.log2_denominator
    }
}

impl std::fmt::Display for KraftResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FeasError {
    #[error("empty depth multiset")]
    Empty,
    #[error("infeasible depth multiset: dyadic sum {sum} != 1")]
    Infeasible { sum: String },
}

/// Exact feasibility test: the dyadic sum over the depth multiset, reduced
/// to lowest terms; feasible iff it equals 1.
pub fn kraft_check(depths: &[u32]) -> Result<KraftResult, FeasError> {
    if depths.is_empty() {
        return Err(FeasError::Empty);
    }
    let max_d = u64::from(*depths.iter().max().unwrap());
    let mut numerator = BigUint::default();
    for &d in depths {
        numerator += BigUint::from(1u32) << (max_d - u64::from(d));
    }
    // Reduce by the largest shared power of two.
    let shift = numerator.trailing_zeros().unwrap_or(0).min(max_d);
    let numerator = numerator >> shift;
    let log2_denominator = max_d - shift;
    let feasible = log2_denominator == 0 && numerator == BigUint::from(1u32);
    Ok(KraftResult {
        numerator,
        log2_denominator,
        feasible,
    })
}

/// Builds a topology whose leaf-depth multiset equals `depths` (slot `i`
/// keeps depth `depths[i]`), by repeatedly merging the two deepest
/// equal-depth subtrees. Among equal-depth candidates the two with the
/// smallest leaf-slot indices merge first, so the output is deterministic.
pub fn build_depth_topology(depths: &[u32]) -> Result<Topology, FeasError> {
    let kraft = kraft_check(depths)?;
    if !kraft.feasible {
        return Err(FeasError::Infeasible {
            sum: kraft.to_string(),
        });
    }
    let mut nodes: Vec<TopoNode> = Vec::new();
    // Active subtrees: (depth of the subtree root, node id, smallest slot).
    let mut active: Vec<(u32, NodeId, usize)> = Vec::new();
    for (slot, &d) in depths.iter().enumerate() {
        nodes.push(TopoNode::Leaf { slot });
        active.push((d, slot, slot));
    }
    while active.len() > 1 {
        let deepest = active.iter().map(|&(d, _, _)| d).max().unwrap();
        let mut at_depth: Vec<usize> = (0..active.len())
            .filter(|&i| active[i].0 == deepest)
            .collect();
        if at_depth.len() < 2 || deepest == 0 {
            // Cannot happen when the dyadic sum is 1.
            return Err(FeasError::Infeasible {
                sum: kraft.to_string(),
            });
        }
        at_depth.sort_by_key(|&i| active[i].2);
        let (ai, bi) = (at_depth[0], at_depth[1]);
        let (_, a_node, a_slot) = active[ai];
        let (_, b_node, b_slot) = active[bi];
        let parent = nodes.len();
        nodes.push(TopoNode::Steiner {
            children: [a_node, b_node],
        });
        let merged = (deepest - 1, parent, a_slot.min(b_slot));
        // Remove the two entries (larger index first) and push the parent.
        let (hi, lo) = if ai > bi { (ai, bi) } else { (bi, ai) };
        active.swap_remove(hi);
        active.swap_remove(lo);
        active.push(merged);
    }
    let (d, top, _) = active[0];
    if d != 0 {
        return Err(FeasError::Infeasible {
            sum: kraft.to_string(),
        });
    }
    Ok(Topology {
        nodes,
        top,
        slot_depths: depths.to_vec(),
        assignment: Vec::new(),
    })
}

/// Feasible but usually non-optimal solution: the merge topology with every
/// Steiner node placed at the origin, so each terminal hangs on a direct
/// edge of length equal to its distance from the root.
pub fn trivial_solution(inst: &Instance) -> Result<EmbeddedSolution, FeasError> {
    let depths = inst.depths();
    let topo = build_depth_topology(&depths)?;
    let assignment: Vec<usize> = (0..inst.terminals.len()).collect();
    let topo = topo.assign(assignment);
    let positions = vec![Point::ORIGIN; topo.nodes.len()];
    Ok(solution_from_topology(inst, &topo, &positions))
}

/// Assembles an [`EmbeddedSolution`] from an assigned topology and one
/// position per topology node (leaf positions are taken from the instance).
pub fn solution_from_topology(
    inst: &Instance,
    topo: &Topology,
    positions: &[Point],
) -> EmbeddedSolution {
    debug_assert!(topo.is_assigned());
    let mut nodes = vec![SolNode {
        kind: NodeKind::Root,
        position: Point::ORIGIN,
        children: Vec::new(),
    }];
    let mut map = vec![usize::MAX; topo.nodes.len()];
    for (id, n) in topo.nodes.iter().enumerate() {
        let (kind, position) = match n {
            TopoNode::Leaf { slot } => {
                let t = topo.assignment[*slot];
                (NodeKind::Terminal(t), inst.terminals[t].position)
            }
            TopoNode::Steiner { .. } => (NodeKind::Steiner, positions[id]),
        };
        map[id] = nodes.len();
        nodes.push(SolNode {
            kind,
            position,
            children: Vec::new(),
        });
    }
    for (id, n) in topo.nodes.iter().enumerate() {
        if let TopoNode::Steiner { children } = n {
            let cs = vec![map[children[0]], map[children[1]]];
            nodes[map[id]].children = cs;
        }
    }
    nodes[0].children = vec![map[topo.top]];
    let mut sol = EmbeddedSolution {
        nodes,
        root: 0,
        length: 0,
    };
    sol.length = sol.computed_length();
    sol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::verify_solution;
    use num_bigint::BigUint;

    #[test]
    fn kraft_examples() {
        let r = kraft_check(&[1, 2, 2]).unwrap();
        assert!(r.feasible);
        assert_eq!(r.numerator, BigUint::from(1u32));

        let r = kraft_check(&[2, 2, 2]).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.to_string(), "3/4");

        let r = kraft_check(&[0]).unwrap();
        assert!(r.feasible);

        assert_eq!(kraft_check(&[]), Err(FeasError::Empty));
    }

    #[test]
    fn merge_topology_for_1_2_2() {
        let topo = build_depth_topology(&[1, 2, 2]).unwrap();
        assert!(topo.is_depth_consistent());
        assert_eq!(topo.leaf_depth_multiset(), vec![1, 2, 2]);
        assert_eq!(topo.num_steiner(), 2);
    }

    #[test]
    fn merge_topology_pair() {
        let topo = build_depth_topology(&[1, 1]).unwrap();
        assert_eq!(topo.num_steiner(), 1);
        assert!(topo.is_depth_consistent());
    }

    #[test]
    fn merge_topology_infeasible() {
        assert!(matches!(
            build_depth_topology(&[2, 2, 2]),
            Err(FeasError::Infeasible { .. })
        ));
    }

    #[test]
    fn trivial_solution_examples() {
        let inst = Instance::from_triples(&[(2, 0, 1), (0, 2, 1)]);
        let sol = trivial_solution(&inst).unwrap();
        assert_eq!(sol.length, 4);
        assert!(verify_solution(&inst, &sol).unwrap().ok());

        let inst = Instance::from_triples(&[(3, 5, 0)]);
        let sol = trivial_solution(&inst).unwrap();
        assert_eq!(sol.length, 8);
        assert!(verify_solution(&inst, &sol).unwrap().ok());

        let inst = Instance::from_triples(&[(2, 2, 2), (2, 0, 2), (0, 2, 1)]);
        let sol = trivial_solution(&inst).unwrap();
        assert_eq!(sol.length, 8);
        assert!(verify_solution(&inst, &sol).unwrap().ok());
    }

    #[test]
    fn trivial_solution_infeasible_is_typed() {
        let inst = Instance::from_triples(&[(1, 0, 2), (0, 1, 2), (2, 2, 2)]);
        assert!(matches!(
            trivial_solution(&inst),
            Err(FeasError::Infeasible { .. })
        ));
    }
}
