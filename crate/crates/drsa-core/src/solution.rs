//! Embedded solutions and the feasibility verifier.
//!
//! A solution is a rooted tree over the root vertex (at the origin),
//! Steiner vertices and terminal vertices, together with a plane embedding.
//! Verification checks the five feasibility conditions: binary Steiner
//! nodes, terminals as leaves, pinned terminal placement, shortest
//! root-terminal paths, and exact per-terminal depths, plus the stored
//! length.

use crate::geom::Point;
use crate::model::{Condition, Instance, TermId, ValidationReport};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// The root terminal, implicit at the origin.
    Root,
    Terminal(TermId),
    Steiner,
}

#[derive(Debug, Clone)]
pub struct SolNode {
    pub kind: NodeKind,
    pub position: Point,
    pub children: Vec<usize>,
}

/// A topology with an embedding; `length` is the stored total rectilinear
/// edge length, re-checked by [`verify_solution`].
#[derive(Debug, Clone)]
pub struct EmbeddedSolution {
    pub nodes: Vec<SolNode>,
    /// Index of the root vertex in `nodes`.
    pub root: usize,
    pub length: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("malformed solution: {0}")]
    Malformed(String),
}

impl EmbeddedSolution {
    /// Recomputes the total rectilinear length of all edges.
    pub fn computed_length(&self) -> i64 {
        let mut total = 0;
        for node in &self.nodes {
            for &c in &node.children {
                total += node.position.l1(&self.nodes[c].position);
            }
        }
        total
    }

    /// Parent-indexed view; `None` for the root.
    pub fn parents(&self) -> Result<Vec<Option<usize>>, SolutionError> {
        let mut parent = vec![None; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                if c >= self.nodes.len() {
                    return Err(SolutionError::Malformed(format!(
                        "child reference {} out of range",
                        c
                    )));
                }
                if parent[c].is_some() {
                    return Err(SolutionError::Malformed(format!(
                        "node {} has two parents",
                        c
                    )));
                }
                if c == self.root {
                    return Err(SolutionError::Malformed("root has a parent".into()));
                }
                parent[c] = Some(id);
            }
        }
        Ok(parent)
    }
}

/// Checks that `sol` is a feasible depth-restricted rectilinear Steiner
/// arborescence for `inst`, and that its stored length is correct.
///
/// Structural defects (dangling references, cycles, unreachable vertices,
/// unknown terminals) are errors; feasibility defects are reported as
/// violations.
pub fn verify_solution(
    inst: &Instance,
    sol: &EmbeddedSolution,
) -> Result<ValidationReport, SolutionError> {
    let mut report = ValidationReport::default();
    if sol.root >= sol.nodes.len() {
        return Err(SolutionError::Malformed("root index out of range".into()));
    }
    sol.parents()?;

    // Reachability from the root; everything must be in one tree.
    let mut seen = vec![false; sol.nodes.len()];
    let mut order = Vec::with_capacity(sol.nodes.len());
    let mut stack = vec![sol.root];
    while let Some(id) = stack.pop() {
        if seen[id] {
            return Err(SolutionError::Malformed(format!("cycle through node {}", id)));
        }
        seen[id] = true;
        order.push(id);
        for &c in &sol.nodes[id].children {
            stack.push(c);
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(SolutionError::Malformed(
            "solution has vertices unreachable from the root".into(),
        ));
    }

    // Root: a terminal of degree 1, pinned at the origin.
    let root_node = &sol.nodes[sol.root];
    if !matches!(root_node.kind, NodeKind::Root) {
        return Err(SolutionError::Malformed("root vertex is not the root".into()));
    }
    if root_node.children.len() != 1 {
        report.push(
            Condition::Degree,
            format!("root has {} children, expected 1", root_node.children.len()),
        );
    }
    if root_node.position != Point::ORIGIN {
        report.push(Condition::Pinned, "root not placed at the origin".to_string());
    }

    // Terminal coverage: each instance terminal appears exactly once.
    let mut seen_terms = vec![0usize; inst.terminals.len()];
    for node in &sol.nodes {
        if let NodeKind::Terminal(t) = node.kind {
            if t >= inst.terminals.len() {
                return Err(SolutionError::Malformed(format!("unknown terminal {}", t)));
            }
            seen_terms[t] += 1;
        }
    }
    for (t, &count) in seen_terms.iter().enumerate() {
        if count != 1 {
            return Err(SolutionError::Malformed(format!(
                "terminal {} appears {} times",
                t, count
            )));
        }
    }

    // Distance and Steiner count along root paths, in one pass.
    let mut dist = vec![0i64; sol.nodes.len()];
    let mut steiners_above = vec![0u32; sol.nodes.len()];
    for &id in &order {
        let node = &sol.nodes[id];
        let here_steiner = matches!(node.kind, NodeKind::Steiner) as u32;
        for &c in &node.children {
            dist[c] = dist[id] + node.position.l1(&sol.nodes[c].position);
            steiners_above[c] = steiners_above[id] + here_steiner;
        }
    }

    for (id, node) in sol.nodes.iter().enumerate() {
        match node.kind {
            NodeKind::Root => {}
            NodeKind::Steiner => {
                if node.children.len() != 2 {
                    report.push(
                        Condition::Degree,
                        format!(
                            "Steiner node {} has {} children, expected 2",
                            id,
                            node.children.len()
                        ),
                    );
                }
            }
            NodeKind::Terminal(t) => {
                if !node.children.is_empty() {
                    report.push(
                        Condition::Leaf,
                        format!("terminal {} has {} children", t, node.children.len()),
                    );
                }
                let want = inst.terminals[t].position;
                if node.position != want {
                    report.push(
                        Condition::Pinned,
                        format!("terminal {} placed at {}, required {}", t, node.position, want),
                    );
                }
                if dist[id] != want.norm() {
                    report.push(
                        Condition::ShortestPath,
                        format!(
                            "terminal {}: path length {} differs from distance {}",
                            t,
                            dist[id],
                            want.norm()
                        ),
                    );
                }
                if steiners_above[id] != inst.terminals[t].depth {
                    report.push(
                        Condition::Depth,
                        format!(
                            "terminal {}: {} Steiner nodes on root path, required {}",
                            t, steiners_above[id], inst.terminals[t].depth
                        ),
                    );
                }
            }
        }
    }

    let computed = sol.computed_length();
    if computed != sol.length {
        report.push(
            Condition::Length,
            format!("stored length {} but edges sum to {}", sol.length, computed),
        );
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Four terminals at depth 2 wired through Steiner points at (1,0),
    /// (1,1) and (5,0); segments 1 + 1 + 4 + 2 + 3 + 1 + 2 = 14. One
    /// terminal sits below the x-axis, which verification accepts.
    pub(crate) fn four_terminal_example() -> (Instance, EmbeddedSolution) {
        let inst = Instance::from_triples(&[(1, 3, 2), (4, 1, 2), (5, -1, 2), (5, 2, 2)]);
        let nodes = vec![
            SolNode {
                kind: NodeKind::Root,
                position: Point::ORIGIN,
                children: vec![1],
            },
            SolNode {
                kind: NodeKind::Steiner,
                position: Point::new(1, 0),
                children: vec![2, 5],
            },
            SolNode {
                kind: NodeKind::Steiner,
                position: Point::new(1, 1),
                children: vec![3, 4],
            },
            SolNode {
                kind: NodeKind::Terminal(0),
                position: Point::new(1, 3),
                children: vec![],
            },
            SolNode {
                kind: NodeKind::Terminal(1),
                position: Point::new(4, 1),
                children: vec![],
            },
            SolNode {
                kind: NodeKind::Steiner,
                position: Point::new(5, 0),
                children: vec![6, 7],
            },
            SolNode {
                kind: NodeKind::Terminal(2),
                position: Point::new(5, -1),
                children: vec![],
            },
            SolNode {
                kind: NodeKind::Terminal(3),
                position: Point::new(5, 2),
                children: vec![],
            },
        ];
        let sol = EmbeddedSolution {
            nodes,
            root: 0,
            length: 14,
        };
        (inst, sol)
    }

    #[test]
    fn four_terminal_solution_verifies_with_length_14() {
        let (inst, sol) = four_terminal_example();
        let rep = verify_solution(&inst, &sol).unwrap();
        assert!(rep.ok(), "{}", rep);
        assert_eq!(sol.computed_length(), 14);
    }

    #[test]
    fn ternary_steiner_rejected() {
        let (inst, mut sol) = four_terminal_example();
        // Give node 1 a third child by splicing in a copy of terminal 1's
        // parent edge; degree violation expected.
        sol.nodes.push(SolNode {
            kind: NodeKind::Steiner,
            position: Point::new(2, 0),
            children: vec![],
        });
        let extra = sol.nodes.len() - 1;
        sol.nodes[1].children.push(extra);
        let rep = verify_solution(&inst, &sol).unwrap();
        assert!(rep
            .violations
            .iter()
            .any(|v| v.condition.id() == "degree"));
    }

    #[test]
    fn wrong_length_flagged() {
        let (inst, mut sol) = four_terminal_example();
        sol.length = 13;
        let rep = verify_solution(&inst, &sol).unwrap();
        assert!(rep
            .violations
            .iter()
            .any(|v| v.condition.id() == "length"));
    }

    #[test]
    fn dangling_reference_is_an_error() {
        let (inst, mut sol) = four_terminal_example();
        sol.nodes[2].children.push(99);
        assert!(verify_solution(&inst, &sol).is_err());
    }

    #[test]
    fn non_shortest_path_flagged() {
        // Root -> Steiner at (3,0) -> terminals (2,1) and (3,1): the path to
        // (2,1) has length 3+2=5 but the distance is 3.
        let inst = Instance::from_triples(&[(2, 1, 1), (3, 1, 1)]);
        let sol = EmbeddedSolution {
            nodes: vec![
                SolNode {
                    kind: NodeKind::Root,
                    position: Point::ORIGIN,
                    children: vec![1],
                },
                SolNode {
                    kind: NodeKind::Steiner,
                    position: Point::new(3, 0),
                    children: vec![2, 3],
                },
                SolNode {
                    kind: NodeKind::Terminal(0),
                    position: Point::new(2, 1),
                    children: vec![],
                },
                SolNode {
                    kind: NodeKind::Terminal(1),
                    position: Point::new(3, 1),
                    children: vec![],
                },
            ],
            root: 0,
            length: 6,
        };
        let rep = verify_solution(&inst, &sol).unwrap();
        assert!(rep
            .violations
            .iter()
            .any(|v| v.condition.id() == "shortest-path"));
    }
}
