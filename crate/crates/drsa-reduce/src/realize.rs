//! Realizations: the feasible solution induced by a truth assignment.
//!
//! Every wire's parity is its literal's truth value (infrastructure wires
//! are pinned), each tile contributes its pattern branching for those
//! parities, and the per-tile trees are grafted together at the border
//! Steiner points: a producer's tree root is the very vertex the consumer's
//! pattern holds as an input leaf.

use crate::compile::{GridCell, PSrc, TileGrid};
use crate::dimacs::Lit;
use crate::pattern::{pattern, validate_forest, variable_pattern, LocalForest, PatLeaf, TreeAttach};
use crate::template::TileSpec;
use drsa_core::geom::Point;
use drsa_core::model::Instance;
use drsa_core::solution::{EmbeddedSolution, NodeKind, SolNode};
use drsa_core::tile::Side;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct Realization {
    pub assignment: Vec<bool>,
    pub solution: EmbeddedSolution,
    /// Number of clauses the assignment leaves unsatisfied.
    pub unsatisfied: u32,
    pub length: i64,
}

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("assignment covers {0} variables, instance has {1}")]
    BadAssignment(usize, usize),
    #[error("wiring bug: {0}")]
    WiringBug(String),
}

fn parity_of(psrc: PSrc, assignment: &[bool]) -> u8 {
    match psrc {
        PSrc::Lit(l) => Lit(l).value(assignment) as u8,
        PSrc::Fixed(p) => p,
    }
}

fn variable_index(grid: &TileGrid, cell: &GridCell) -> usize {
    (cell.col - grid.num_clauses) / 2 - 1
}

pub fn build_realization(
    grid: &TileGrid,
    inst: &Instance,
    assignment: &[bool],
) -> Result<Realization, RealizeError> {
    if assignment.len() != grid.num_vars {
        return Err(RealizeError::BadAssignment(assignment.len(), grid.num_vars));
    }
    let tile = 4 * grid.alpha + 2;

    let mut nodes: Vec<SolNode> = vec![SolNode {
        kind: NodeKind::Root,
        position: Point::ORIGIN,
        children: Vec::new(),
    }];
    // (cell, output side) -> global id of the tree root on that border.
    let mut produced: HashMap<((usize, usize), u8), usize> = HashMap::new();
    // Consumer edges waiting for their producer root.
    let mut pending: Vec<(usize, (usize, usize), Side, Point, i64)> = Vec::new();
    let mut root_child: Option<usize> = None;

    for cell in &grid.cells {
        let in_parities: Vec<u8> = cell
            .psrc
            .iter()
            .map(|&p| parity_of(p, assignment))
            .collect();
        let forest: LocalForest = match cell.spec {
            TileSpec::Variable { .. } => {
                let value = assignment[variable_index(grid, cell)];
                variable_pattern(&cell.spec, grid.alpha, value)
            }
            _ => pattern(&cell.spec, grid.alpha, &in_parities),
        };
        debug_assert_eq!(
            validate_forest(&cell.spec, grid.alpha, &in_parities, &forest),
            Ok(()),
            "pattern invalid for {:?}",
            cell.spec
        );
        let origin = Point::new(cell.col as i64 * tile, cell.row as i64 * tile);
        let mut map: Vec<Option<usize>> = vec![None; forest.nodes.len()];
        for (lid, node) in forest.nodes.iter().enumerate() {
            let gpos = Point::new(origin.x + node.pos.x, origin.y + node.pos.y);
            match node.leaf {
                Some(PatLeaf::Terminal(t)) => {
                    let tid = cell.term_base + t;
                    debug_assert_eq!(inst.terminals[tid].position, gpos);
                    nodes.push(SolNode {
                        kind: NodeKind::Terminal(tid),
                        position: gpos,
                        children: Vec::new(),
                    });
                    map[lid] = Some(nodes.len() - 1);
                }
                Some(PatLeaf::Input(_)) => {
                    // Resolved to the producer's root vertex later.
                }
                None => {
                    nodes.push(SolNode {
                        kind: NodeKind::Steiner,
                        position: gpos,
                        children: Vec::new(),
                    });
                    map[lid] = Some(nodes.len() - 1);
                }
            }
        }
        for (lid, node) in forest.nodes.iter().enumerate() {
            let Some(gid) = map[lid] else { continue };
            for &c in &node.children {
                match map[c] {
                    Some(cgid) => nodes[gid].children.push(cgid),
                    None => {
                        let leaf = &forest.nodes[c];
                        let Some(PatLeaf::Input(side)) = leaf.leaf else {
                            unreachable!()
                        };
                        let gpos = Point::new(origin.x + leaf.pos.x, origin.y + leaf.pos.y);
                        pending.push((gid, (cell.col, cell.row), side, gpos, leaf.depth));
                    }
                }
            }
        }
        for tree in &forest.trees {
            let gid = map[tree.root].expect("tree roots are never input leaves");
            match tree.attach {
                TreeAttach::Output(side, _) => {
                    let key = match side {
                        Side::Left => 0u8,
                        Side::Bottom => 1,
                        _ => unreachable!("outputs are left or bottom"),
                    };
                    produced.insert(((cell.col, cell.row), key), gid);
                }
                TreeAttach::Root => root_child = Some(gid),
            }
        }
    }

    for (parent, (col, row), side, want_pos, _depth) in pending {
        let (producer, out_key) = match side {
            Side::Right => ((col + 1, row), 0u8),
            Side::Top => ((col, row + 1), 1u8),
            _ => unreachable!(),
        };
        let gid = *produced.get(&(producer, out_key)).ok_or_else(|| {
            RealizeError::WiringBug(format!(
                "no producer for cell ({},{}) side {:?}",
                col, row, side
            ))
        })?;
        if nodes[gid].position != want_pos {
            return Err(RealizeError::WiringBug(format!(
                "border mismatch at cell ({},{}): producer root {} vs expected {}",
                col, row, nodes[gid].position, want_pos
            )));
        }
        nodes[parent].children.push(gid);
    }

    let root_child = root_child.ok_or_else(|| RealizeError::WiringBug("no root cell".into()))?;
    nodes[0].children.push(root_child);

    let mut solution = EmbeddedSolution {
        nodes,
        root: 0,
        length: 0,
    };
    solution.length = solution.computed_length();

    let unsatisfied = grid
        .clauses
        .iter()
        .filter(|&&(a, b)| !Lit(a).value(assignment) && !Lit(b).value(assignment))
        .count() as u32;

    Ok(Realization {
        assignment: assignment.to_vec(),
        length: solution.length,
        solution,
        unsatisfied,
    })
}
