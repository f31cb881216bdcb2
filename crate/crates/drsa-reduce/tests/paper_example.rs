//! The 3-variable, 5-clause example at the full default schedule.

use drsa_core::feas::kraft_check;
use drsa_core::solution::verify_solution;
use drsa_reduce::bands::length_bands;
use drsa_reduce::compile::compile_reduction;
use drsa_reduce::dimacs::parse_dimacs;
use drsa_reduce::gadgets::tile_min;
use drsa_reduce::maxsat::max2sat_bruteforce;
use drsa_reduce::params::Parameters;
use drsa_reduce::realize::build_realization;

#[test]
fn paper_example_full_schedule() {
    let sat =
        parse_dimacs("p cnf 3 5\n1 2 0\n1 -2 0\n-1 2 0\n-1 3 0\n-2 -3 0\n").unwrap();
    let params = Parameters::default_schedule(3, 5).unwrap();
    assert_eq!(params.alpha, 50625);
    let (grid, inst) = compile_reduction(&sat, &params).unwrap();
    println!(
        "side {} cells {} terminals {} k_var {} doubles {}",
        grid.side,
        grid.cells.len(),
        inst.terminals.len(),
        grid.k_var,
        grid.num_doubles
    );
    assert!(kraft_check(&inst.depths()).unwrap().feasible);

    let l: i64 = grid
        .cells
        .iter()
        .map(|c| tile_min(&c.spec, grid.alpha).unwrap())
        .sum();
    println!("L = {}", l);

    let (_, best_sat) = max2sat_bruteforce(&sat).unwrap();
    assert_eq!(best_sat, 4);

    let mut by_u: Vec<(u32, i64)> = Vec::new();
    for mask in 0..8u32 {
        let assignment: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
        let real = build_realization(&grid, &inst, &assignment).unwrap();
        let rep = verify_solution(&inst, &real.solution).unwrap();
        assert!(rep.ok(), "assignment {:?}: {}", assignment, rep);
        let (lo, hi) = length_bands(real.unsatisfied, l, 3, 5, params.beta);
        println!(
            "assignment {:?} u {} length {} band [{}, {}] slack {}",
            assignment,
            real.unsatisfied,
            real.length,
            lo,
            hi,
            real.length - lo
        );
        assert!(
            real.length >= lo && real.length <= hi,
            "length {} outside band [{}, {}]",
            real.length,
            lo,
            hi
        );
        by_u.push((real.unsatisfied, real.length));
    }
    let best = by_u.iter().min_by_key(|&&(_, l)| l).unwrap();
    assert_eq!(u32::from(5 - best_sat as u32), best.0);
}
