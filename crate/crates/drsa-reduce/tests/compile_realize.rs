//! End-to-end compile and realize checks on desk-scale instances.

use drsa_core::feas::kraft_check;
use drsa_core::model::validate_instance;
use drsa_core::solution::verify_solution;
use drsa_reduce::compile::compile_reduction;
use drsa_reduce::dimacs::parse_dimacs;
use drsa_reduce::params::Parameters;
use drsa_reduce::realize::build_realization;

#[test]
fn tautology_compiles_feasible() {
    // Single clause (x1 or not-x1) with a moderate alpha override.
    let sat = parse_dimacs("p cnf 1 1\n1 -1 0\n").unwrap();
    let params = Parameters::with_overrides(50, 8, 3, 64).unwrap();
    let (grid, inst) = compile_reduction(&sat, &params).unwrap();
    assert!(validate_instance(&inst).ok());
    let kraft = kraft_check(&inst.depths()).unwrap();
    assert!(kraft.feasible, "dyadic sum {}", kraft);
    assert_eq!(grid.side, 4);

    // Both assignments satisfy the tautology; each realization verifies.
    for assignment in [[false], [true]] {
        let real = build_realization(&grid, &inst, &assignment).unwrap();
        assert_eq!(real.unsatisfied, 0);
        let report = verify_solution(&inst, &real.solution).unwrap();
        assert!(report.ok(), "assignment {:?}: {}", assignment, report);
    }
}

#[test]
fn two_by_two_compiles_and_realizes() {
    let sat = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n").unwrap();
    let params = Parameters::with_overrides(4096, 320, 450, 1500).unwrap();
    let (grid, inst) = compile_reduction(&sat, &params).unwrap();
    assert!(validate_instance(&inst).ok());
    assert!(kraft_check(&inst.depths()).unwrap().feasible);
    assert_eq!(grid.side, 7);

    let mut lengths = Vec::new();
    for mask in 0..4u32 {
        let assignment = [mask & 1 == 1, mask & 2 == 2];
        let real = build_realization(&grid, &inst, &assignment).unwrap();
        let report = verify_solution(&inst, &real.solution).unwrap();
        assert!(report.ok(), "assignment {:?}: {}", assignment, report);
        lengths.push((real.unsatisfied, real.length));
    }
    // The instance is satisfiable, so some realization has u = 0, and
    // lengths must increase with the number of unsatisfied clauses.
    let best = lengths.iter().min_by_key(|&&(_, l)| l).unwrap();
    assert_eq!(best.0, 0, "{:?}", lengths);
}

#[test]
fn grid_sidecar_round_trips() {
    let sat = parse_dimacs("p cnf 1 1\n1 -1 0\n").unwrap();
    let params = Parameters::with_overrides(50, 8, 3, 64).unwrap();
    let (grid, _) = compile_reduction(&sat, &params).unwrap();
    let json = grid.to_json();
    let back = drsa_reduce::compile::TileGrid::from_json(&json).unwrap();
    assert_eq!(back.cells.len(), grid.cells.len());
    assert_eq!(back.k_var, grid.k_var);
    assert_eq!(back.to_json(), json);
}
