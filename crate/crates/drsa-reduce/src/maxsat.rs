//! Exhaustive Max-2-Sat optimum, the acceptance oracle for the reduction.

use crate::dimacs::Max2SatInstance;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MaxSatError {
    #[error("budget-exceeded: {0} variables is too many for exhaustive search")]
    BudgetExceeded(usize),
}

/// Exhaustive optimum over all 2^n assignments, returning the
/// lexicographically smallest optimal assignment (x1 first).
pub fn max2sat_bruteforce(inst: &Max2SatInstance) -> Result<(Vec<bool>, usize), MaxSatError> {
    if inst.num_vars > 24 {
        return Err(MaxSatError::BudgetExceeded(inst.num_vars));
    }
    let n = inst.num_vars;
    let mut best: Option<(Vec<bool>, usize)> = None;
    for mask in 0u64..(1u64 << n) {
        let assignment: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let sat = inst.satisfied(&assignment);
        let better = match &best {
            None => true,
            Some((b, s)) => sat > *s || (sat == *s && assignment < *b),
        };
        if better {
            best = Some((assignment, sat));
        }
    }
    Ok(best.expect("at least the empty assignment"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimacs::{parse_dimacs, Lit};

    #[test]
    fn two_clause_example() {
        let inst = parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n").unwrap();
        let (a, s) = max2sat_bruteforce(&inst).unwrap();
        assert_eq!(s, 2);
        assert!(a[1], "x2 = true satisfies both");
    }

    #[test]
    fn five_clause_example_optimum_is_four() {
        // No assignment satisfies all five: the first four clauses force
        // x2 views that clash with the last. The quoted assignment
        // x1 = x3 = true, x2 = false reaches the optimum of 4.
        let text = "p cnf 3 5\n1 2 0\n1 -2 0\n-1 2 0\n-1 3 0\n-2 -3 0\n";
        let inst = parse_dimacs(text).unwrap();
        let (a, s) = max2sat_bruteforce(&inst).unwrap();
        assert_eq!(s, 4);
        assert_eq!(inst.satisfied(&[true, false, true]), 4);
        assert_eq!(inst.satisfied(&a), 4);
    }

    #[test]
    fn duplicate_literal_clause() {
        let inst = Max2SatInstance::new(1, vec![(Lit(1), Lit(1))]);
        let (_, s) = max2sat_bruteforce(&inst).unwrap();
        assert_eq!(s, 1);
    }

    #[test]
    fn too_many_vars_rejected() {
        let inst = Max2SatInstance::new(25, vec![(Lit(1), Lit(2))]);
        assert!(max2sat_bruteforce(&inst).is_err());
    }
}
