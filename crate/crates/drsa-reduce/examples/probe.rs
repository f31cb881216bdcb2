use drsa_reduce::compile::compile_reduction;
use drsa_reduce::dimacs::parse_dimacs;
use drsa_reduce::gadgets::tile_min;
use drsa_reduce::params::Parameters;
use drsa_reduce::realize::build_realization;

fn main() {
    for (name, text, params) in [
        ("2x2", "p cnf 2 2\n1 2 0\n-1 -2 0\n", Parameters::with_overrides(4096, 320, 450, 2000).unwrap()),
        ("3x5", "p cnf 3 5\n1 2 0\n1 -2 0\n-1 2 0\n-1 3 0\n-2 -3 0\n", Parameters::default_schedule(3, 5).unwrap()),
    ] {
        let sat = parse_dimacs(text).unwrap();
        let (grid, inst) = compile_reduction(&sat, &params).unwrap();
        let n = sat.num_vars;
        let l: i64 = grid.cells.iter().map(|c| tile_min(&c.spec, grid.alpha).unwrap()).sum();
        let sum_gamma: i64 = grid.gammas.iter().sum();
        let min_gamma: i64 = *grid.gammas.iter().min().unwrap();
        let k = grid.num_doubles as i64;
        let mut best = i64::MAX; let mut worst = 0i64;
        for mask in 0..(1u32 << n) {
            let a: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let r = build_realization(&grid, &inst, &a).unwrap();
            best = best.min(r.length); worst = worst.max(r.length);
        }
        println!("{}: alpha {} k {} 2ka {} best {} worst {} L {} sum_gamma {} min_gamma {} gammas {:?}", name, grid.alpha, k, 2*k*grid.alpha, best, worst, l, sum_gamma, min_gamma, grid.gammas);
        println!("  assumption1: best {} < (2k+1)a {} : {}", best, (2*k+1)*grid.alpha, best < (2*k+1)*grid.alpha);
        println!("  assumption2: best {} < 2ka+sum+min {} : {}", best, 2*k*grid.alpha+sum_gamma+min_gamma, best < 2*k*grid.alpha+sum_gamma+min_gamma);
        println!("  prop2: 2ka {} <= best {} : {}", 2*k*grid.alpha, best, 2*k*grid.alpha <= best);
        println!("  band slack of worst vs L: best-L {} worst-L {}", best - l, worst - l);
    }
}
