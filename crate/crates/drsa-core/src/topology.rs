//! Abstract tree topologies: rooted binary trees whose leaves carry required
//! depths. The implicit root terminal has a unique child, the tree's top
//! node; a leaf's depth is the number of Steiner nodes strictly between the
//! root terminal and that leaf.

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopoNode {
    Steiner { children: [NodeId; 2] },
    /// Leaf slot; `slot` indexes into `Topology::slot_depths` and, once
    /// assigned, `Topology::assignment`.
    Leaf { slot: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    pub nodes: Vec<TopoNode>,
    /// The root terminal's unique child.
    pub top: NodeId,
    /// Required depth per leaf slot.
    pub slot_depths: Vec<u32>,
    /// Terminal id per leaf slot; empty until terminals are assigned.
    pub assignment: Vec<usize>,
}

impl Topology {
    /// Single leaf directly wired to the root (depth 0).
    pub fn single_leaf() -> Self {
        Topology {
            nodes: vec![TopoNode::Leaf { slot: 0 }],
            top: 0,
            slot_depths: vec![0],
            assignment: Vec::new(),
        }
    }

    pub fn num_slots(&self) -> usize {
        self.slot_depths.len()
    }

    pub fn num_steiner(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, TopoNode::Steiner { .. }))
            .count()
    }

    pub fn is_assigned(&self) -> bool {
        self.assignment.len() == self.slot_depths.len()
    }

    pub fn assign(&self, terminals: Vec<usize>) -> Topology {
        debug_assert_eq!(terminals.len(), self.slot_depths.len());
        Topology {
            assignment: terminals,
            ..self.clone()
        }
    }

    /// Node depth of every node: the top node has depth 0 and each edge adds
    /// one.
    pub fn node_depths(&self) -> Vec<u32> {
        let mut depths = vec![0u32; self.nodes.len()];
        let mut stack = vec![(self.top, 0u32)];
        while let Some((id, d)) = stack.pop() {
            depths[id] = d;
            if let TopoNode::Steiner { children } = self.nodes[id] {
                stack.push((children[0], d + 1));
                stack.push((children[1], d + 1));
            }
        }
        depths
    }

    /// True iff every leaf sits at exactly its required depth.
    pub fn is_depth_consistent(&self) -> bool {
        let depths = self.node_depths();
        self.nodes.iter().enumerate().all(|(id, n)| match n {
            TopoNode::Leaf { slot } => depths[id] == self.slot_depths[*slot],
            TopoNode::Steiner { .. } => true,
        })
    }

    /// Leaf-slot ids in left-to-right tree order.
    pub fn leaves_in_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.top];
        while let Some(id) = stack.pop() {
            match self.nodes[id] {
                TopoNode::Leaf { slot } => out.push(slot),
                TopoNode::Steiner { children } => {
                    stack.push(children[1]);
                    stack.push(children[0]);
                }
            }
        }
        out
    }

    /// Sorted multiset of leaf depths.
    pub fn leaf_depth_multiset(&self) -> Vec<u32> {
        let mut ds = self.slot_depths.clone();
        ds.sort_unstable();
        ds
    }

    /// Canonical structural key, invariant under sibling swaps. Leaves are
    /// keyed by `label(slot)`.
    pub fn canonical_key(&self, label: &dyn Fn(usize) -> u64) -> Vec<u8> {
        fn rec(topo: &Topology, id: NodeId, label: &dyn Fn(usize) -> u64, out: &mut Vec<u8>) {
            match topo.nodes[id] {
                TopoNode::Leaf { slot } => {
                    out.push(b'L');
                    out.extend_from_slice(&label(slot).to_be_bytes());
                }
                TopoNode::Steiner { children } => {
                    let mut a = Vec::new();
                    let mut b = Vec::new();
                    rec(topo, children[0], label, &mut a);
                    rec(topo, children[1], label, &mut b);
                    if a > b {
                        std::mem::swap(&mut a, &mut b);
                    }
                    out.push(b'(');
                    out.extend_from_slice(&a);
                    out.extend_from_slice(&b);
                    out.push(b')');
                }
            }
        }
        let mut out = Vec::new();
        rec(self, self.top, label, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(d: u32) -> Topology {
        // Two leaves of equal depth d under one Steiner chain of length d.
        let mut nodes = vec![
            TopoNode::Leaf { slot: 0 },
            TopoNode::Leaf { slot: 1 },
            TopoNode::Steiner { children: [0, 1] },
        ];
        let mut top = 2;
        for _ in 1..d {
            let id = nodes.len();
            nodes.push(TopoNode::Steiner {
                children: [top, top],
            });
            // placeholder; proper chains are built by the enumerator
            top = id;
        }
        Topology {
            nodes,
            top: 2,
            slot_depths: vec![d, d],
            assignment: Vec::new(),
        }
    }

    #[test]
    fn depth_consistency_of_simple_pair() {
        let t = pair(1);
        assert!(t.is_depth_consistent());
        assert_eq!(t.leaf_depth_multiset(), vec![1, 1]);
    }

    #[test]
    fn sibling_swap_invariance() {
        let a = Topology {
            nodes: vec![
                TopoNode::Leaf { slot: 0 },
                TopoNode::Leaf { slot: 1 },
                TopoNode::Steiner { children: [0, 1] },
            ],
            top: 2,
            slot_depths: vec![1, 1],
            assignment: Vec::new(),
        };
        let b = Topology {
            nodes: vec![
                TopoNode::Leaf { slot: 0 },
                TopoNode::Leaf { slot: 1 },
                TopoNode::Steiner { children: [1, 0] },
            ],
            top: 2,
            slot_depths: vec![1, 1],
            assignment: Vec::new(),
        };
        let lbl = |s: usize| s as u64;
        assert_eq!(a.canonical_key(&lbl), b.canonical_key(&lbl));
    }
}
