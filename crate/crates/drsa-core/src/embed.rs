//! Optimal plane embedding of a fixed topology.
//!
//! For first-quadrant instances the optimal position of an internal node
//! with children at (x1,y1) and (x2,y2) is (min(x1,x2), min(y1,y2));
//! applying this leaves-upward yields the minimum-length embedding of the
//! topology, with every Steiner point on the Hanan grid of the terminals
//! and the origin.

use crate::feas::solution_from_topology;
use crate::geom::Point;
use crate::model::Instance;
use crate::solution::EmbeddedSolution;
use crate::topology::{TopoNode, Topology};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("binding: {0}")]
    Binding(String),
}

/// Embeds `topo` over `inst` with every Steiner node at the componentwise
/// minimum of its children, computed leaves-upward.
pub fn optimal_embed(inst: &Instance, topo: &Topology) -> Result<EmbeddedSolution, EmbedError> {
    if !topo.is_assigned() {
        return Err(EmbedError::Binding("topology has no terminal assignment".into()));
    }
    if topo.num_slots() != inst.terminals.len() {
        return Err(EmbedError::Binding(format!(
            "topology has {} leaves but the instance has {} terminals",
            topo.num_slots(),
            inst.terminals.len()
        )));
    }
    let mut used = vec![false; inst.terminals.len()];
    for (slot, &t) in topo.assignment.iter().enumerate() {
        if t >= inst.terminals.len() || used[t] {
            return Err(EmbedError::Binding(format!(
                "leaf slot {} bound to invalid or duplicate terminal {}",
                slot, t
            )));
        }
        used[t] = true;
        if inst.terminals[t].depth != topo.slot_depths[slot] {
            return Err(EmbedError::Binding(format!(
                "terminal {} requires depth {} but sits in a depth-{} slot",
                t, inst.terminals[t].depth, topo.slot_depths[slot]
            )));
        }
    }
    if !topo.is_depth_consistent() {
        return Err(EmbedError::Binding("topology is not depth-consistent".into()));
    }

    let mut positions = vec![Point::ORIGIN; topo.nodes.len()];
    let mut done = vec![false; topo.nodes.len()];
    // Iterative post-order so deep chains cannot overflow the stack.
    let mut stack = vec![(topo.top, false)];
    while let Some((id, expanded)) = stack.pop() {
        match topo.nodes[id] {
            TopoNode::Leaf { slot } => {
                positions[id] = inst.terminals[topo.assignment[slot]].position;
                done[id] = true;
            }
            TopoNode::Steiner { children } => {
                if expanded {
                    debug_assert!(done[children[0]] && done[children[1]]);
                    let a = positions[children[0]];
                    let b = positions[children[1]];
                    positions[id] = Point::new(a.x.min(b.x), a.y.min(b.y));
                    done[id] = true;
                } else {
                    stack.push((id, true));
                    stack.push((children[0], false));
                    stack.push((children[1], false));
                }
            }
        }
    }
    Ok(solution_from_topology(inst, topo, &positions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::{verify_solution, NodeKind};
    use crate::topology::TopoNode;

    /// r -> s1, s1 -> {c, s2}, s2 -> {a, b} over a=(2,2,d2) b=(2,0,d2)
    /// c=(0,2,d1).
    fn three_terminal_case() -> (Instance, Topology) {
        let inst = Instance::from_triples(&[(2, 2, 2), (2, 0, 2), (0, 2, 1)]);
        let topo = Topology {
            nodes: vec![
                TopoNode::Leaf { slot: 0 },
                TopoNode::Leaf { slot: 1 },
                TopoNode::Leaf { slot: 2 },
                TopoNode::Steiner { children: [0, 1] },
                TopoNode::Steiner { children: [2, 3] },
            ],
            top: 4,
            slot_depths: vec![2, 2, 1],
            assignment: vec![0, 1, 2],
        };
        (inst, topo)
    }

    #[test]
    fn componentwise_min_placement() {
        let (inst, topo) = three_terminal_case();
        let sol = optimal_embed(&inst, &topo).unwrap();
        assert_eq!(sol.length, 6);
        assert!(verify_solution(&inst, &sol).unwrap().ok());
        // s2 lands at (2,0), s1 at (0,0).
        let steiners: Vec<Point> = sol
            .nodes
            .iter()
            .filter(|n| matches!(n.kind, NodeKind::Steiner))
            .map(|n| n.position)
            .collect();
        assert!(steiners.contains(&Point::new(2, 0)));
        assert!(steiners.contains(&Point::new(0, 0)));
    }

    #[test]
    fn single_terminal_direct_edge() {
        let inst = Instance::from_triples(&[(3, 5, 0)]);
        let topo = Topology::single_leaf().assign(vec![0]);
        let sol = optimal_embed(&inst, &topo).unwrap();
        assert_eq!(sol.length, 8);
    }

    #[test]
    fn forced_pair_placement() {
        let inst = Instance::from_triples(&[(2, 0, 1), (0, 2, 1)]);
        let topo = Topology {
            nodes: vec![
                TopoNode::Leaf { slot: 0 },
                TopoNode::Leaf { slot: 1 },
                TopoNode::Steiner { children: [0, 1] },
            ],
            top: 2,
            slot_depths: vec![1, 1],
            assignment: vec![0, 1],
        };
        let sol = optimal_embed(&inst, &topo).unwrap();
        assert_eq!(sol.length, 4);
    }

    #[test]
    fn binding_mismatch_rejected() {
        let (inst, mut topo) = three_terminal_case();
        topo.assignment = vec![0, 2, 1]; // depths no longer line up
        assert!(optimal_embed(&inst, &topo).is_err());
    }

    #[test]
    fn idempotent_under_reembedding() {
        let (inst, topo) = three_terminal_case();
        let a = optimal_embed(&inst, &topo).unwrap();
        let b = optimal_embed(&inst, &topo).unwrap();
        assert_eq!(a.length, b.length);
        let pa: Vec<Point> = a.nodes.iter().map(|n| n.position).collect();
        let pb: Vec<Point> = b.nodes.iter().map(|n| n.position).collect();
        assert_eq!(pa, pb);
    }
}
