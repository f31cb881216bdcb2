//! Independent exhaustive solver used to check `solve_exact`.
//!
//! Enumerates every topology and, for each, every placement of its Steiner
//! nodes on the Hanan grid of the terminals and the origin, keeping the
//! shortest feasible embedding. Placements are filtered by the feasibility
//! condition alone (every edge must run weakly up-right, which is exactly
//! the shortest-path requirement for first-quadrant instances); the
//! componentwise-minimum rule is never consulted.

use crate::enumerate::enumerate_topologies;
use crate::feas::FeasError;
use crate::geom::{hanan_grid, Point};
use crate::model::Instance;
use crate::topology::{TopoNode, Topology};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("infeasible: {0}")]
    Infeasible(#[from] FeasError),
    #[error("budget-exceeded: oracle limited to {0} placements")]
    BudgetExceeded(u64),
}

/// Exhaustive minimum length over all topologies and all Hanan-grid
/// placements. `budget` caps the number of placement evaluations.
pub fn exhaustive_minimum(inst: &Instance, budget: u64) -> Result<i64, OracleError> {
    let topologies = enumerate_topologies(&inst.depths())?;
    let grid = hanan_grid(&inst.hanan_points()).expect("nonempty");
    let mut best: Option<i64> = None;
    let mut evals: u64 = 0;
    for topo in &topologies {
        place(topo, inst, &grid, &mut best, &mut evals, budget)?;
    }
    Ok(best.expect("feasible instance has at least one embedding"))
}

fn place(
    topo: &Topology,
    inst: &Instance,
    grid: &[Point],
    best: &mut Option<i64>,
    evals: &mut u64,
    budget: u64,
) -> Result<(), OracleError> {
    // Children before parents so candidate positions can be filtered by
    // the up-right edge condition.
    let order = post_order(topo);
    let mut positions: Vec<Option<Point>> = vec![None; topo.nodes.len()];
    rec(topo, inst, grid, &order, 0, &mut positions, 0, best, evals, budget)
}

fn post_order(topo: &Topology) -> Vec<usize> {
    let mut order = Vec::new();
    let mut stack = vec![(topo.top, false)];
    while let Some((id, expanded)) = stack.pop() {
        if expanded {
            order.push(id);
            continue;
        }
        stack.push((id, true));
        if let TopoNode::Steiner { children } = topo.nodes[id] {
            stack.push((children[0], false));
            stack.push((children[1], false));
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn rec(
    topo: &Topology,
    inst: &Instance,
    grid: &[Point],
    order: &[usize],
    step: usize,
    positions: &mut Vec<Option<Point>>,
    partial: i64,
    best: &mut Option<i64>,
    evals: &mut u64,
    budget: u64,
) -> Result<(), OracleError> {
    if best.is_some_and(|b| partial >= b) {
        return Ok(());
    }
    if step == order.len() {
        // All nodes placed; account for the root edge.
        let top_pos = positions[topo.top].unwrap();
        let total = partial + top_pos.norm();
        if best.is_none() || total < best.unwrap() {
            *best = Some(total);
        }
        return Ok(());
    }
    let id = order[step];
    match topo.nodes[id] {
        TopoNode::Leaf { slot } => {
            positions[id] = Some(inst.terminals[topo.assignment[slot]].position);
            rec(topo, inst, grid, order, step + 1, positions, partial, best, evals, budget)?;
            positions[id] = None;
        }
        TopoNode::Steiner { children } => {
            let a = positions[children[0]].unwrap();
            let b = positions[children[1]].unwrap();
            for &g in grid {
                if !(g.dominates_below(&a) && g.dominates_below(&b)) {
                    continue;
                }
                *evals += 1;
                if *evals > budget {
                    return Err(OracleError::BudgetExceeded(budget));
                }
                let cost = g.l1(&a) + g.l1(&b);
                positions[id] = Some(g);
                rec(
                    topo,
                    inst,
                    grid,
                    order,
                    step + 1,
                    positions,
                    partial + cost,
                    best,
                    evals,
                    budget,
                )?;
                positions[id] = None;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::{solve_exact, DEFAULT_BUDGET};

    #[test]
    fn oracle_matches_known_cases() {
        let cases = [
            (vec![(2, 0, 1), (0, 2, 1)], 4),
            (vec![(2, 2, 2), (2, 0, 2), (0, 2, 1)], 6),
            (vec![(3, 5, 0)], 8),
        ];
        for (terms, want) in cases {
            let inst = Instance::from_triples(&terms);
            assert_eq!(exhaustive_minimum(&inst, 1 << 40).unwrap(), want);
            assert_eq!(solve_exact(&inst, DEFAULT_BUDGET).unwrap().length, want);
        }
    }
}
