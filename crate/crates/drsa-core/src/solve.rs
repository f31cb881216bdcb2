//! Exact minimum solver: enumerate topologies, embed each optimally, keep
//! the shortest. Intended for small instances; a topology budget guards
//! against combinatorial blowups.

use crate::embed::optimal_embed;
use crate::enumerate::{count_topologies, enumerate_topologies};
use crate::feas::FeasError;
use crate::geom::Point;
use crate::model::{validate_instance, Instance};
use crate::solution::EmbeddedSolution;
use thiserror::Error;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("infeasible: {0}")]
    Infeasible(#[from] FeasError),
    #[error("budget-exceeded: {count} topologies exceed the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
    #[error("invalid instance: {0}")]
    Invalid(String),
}

/// Canonical tie-break key: the sorted list of embedded edges.
fn edge_key(sol: &EmbeddedSolution) -> Vec<(Point, Point)> {
    let mut edges = Vec::new();
    for node in &sol.nodes {
        for &c in &node.children {
            edges.push((node.position, sol.nodes[c].position));
        }
    }
    edges.sort_unstable();
    edges
}

/// Exact minimum-length solution over all topologies, each embedded with
/// the componentwise-minimum rule. Ties are broken by the lexicographically
/// smallest sorted edge list, so reruns give identical output.
pub fn solve_exact(inst: &Instance, budget: u128) -> Result<EmbeddedSolution, SolveError> {
    let report = validate_instance(inst);
    if !report.ok() {
        return Err(SolveError::Invalid(report.to_string()));
    }
    let depths = inst.depths();
    let count = count_topologies(&depths)?;
    if count > budget {
        return Err(SolveError::BudgetExceeded { count, budget });
    }
    let topologies = enumerate_topologies(&depths)?;
    let mut best: Option<(i64, Vec<(Point, Point)>, EmbeddedSolution)> = None;
    for topo in &topologies {
        let sol = optimal_embed(inst, topo).expect("enumerated topology must bind");
        let key = (sol.length, edge_key(&sol));
        let better = match &best {
            None => true,
            Some((len, edges, _)) => key.0 < *len || (key.0 == *len && key.1 < *edges),
        };
        if better {
            best = Some((key.0, key.1, sol));
        }
    }
    Ok(best.expect("feasible multiset yields at least one topology").2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feas::trivial_solution;
    use crate::solution::verify_solution;

    #[test]
    fn unique_topology_pair() {
        let inst = Instance::from_triples(&[(2, 0, 1), (0, 2, 1)]);
        let sol = solve_exact(&inst, DEFAULT_BUDGET).unwrap();
        assert_eq!(sol.length, 4);
        assert!(verify_solution(&inst, &sol).unwrap().ok());
    }

    #[test]
    fn three_terminal_case() {
        let inst = Instance::from_triples(&[(2, 2, 2), (2, 0, 2), (0, 2, 1)]);
        let sol = solve_exact(&inst, DEFAULT_BUDGET).unwrap();
        assert_eq!(sol.length, 6);
    }

    #[test]
    fn single_terminal() {
        let inst = Instance::from_triples(&[(3, 5, 0)]);
        let sol = solve_exact(&inst, DEFAULT_BUDGET).unwrap();
        assert_eq!(sol.length, 8);
    }

    #[test]
    fn never_longer_than_trivial() {
        let inst = Instance::from_triples(&[(3, 1, 2), (1, 4, 2), (2, 2, 2), (5, 0, 3), (0, 5, 3)]);
        let exact = solve_exact(&inst, DEFAULT_BUDGET).unwrap();
        let trivial = trivial_solution(&inst).unwrap();
        assert!(exact.length <= trivial.length);
    }

    #[test]
    fn budget_is_enforced() {
        let inst = Instance::from_triples(&[
            (1, 1, 3),
            (2, 1, 3),
            (1, 2, 3),
            (2, 2, 3),
            (3, 1, 3),
            (1, 3, 3),
            (3, 2, 3),
            (2, 3, 3),
        ]);
        match solve_exact(&inst, 2) {
            Err(SolveError::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {:?}", other.map(|s| s.length)),
        }
    }

    #[test]
    fn deterministic_output() {
        let inst = Instance::from_triples(&[(2, 1, 2), (1, 2, 2), (3, 3, 2), (4, 4, 2)]);
        let a = solve_exact(&inst, DEFAULT_BUDGET).unwrap();
        let b = solve_exact(&inst, DEFAULT_BUDGET).unwrap();
        assert_eq!(edge_key(&a), edge_key(&b));
    }
}
