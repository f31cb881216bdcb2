use drsa_core::tile::solve_tile_branching;
use drsa_reduce::pattern::{pattern, variable_pattern};
use drsa_reduce::template::TileSpec::{self, *};

fn dp_min_pinned(spec: &TileSpec, alpha: i64, ins: &[u8], pins: &[Option<u8>]) -> i64 {
    let prob = spec.tile_problem(alpha, ins, pins);
    solve_tile_branching(&prob).unwrap().length
}

fn main() {
    let a = 8;
    let w = 60;
    let combos1 = [vec![1u8], vec![0u8]];
    let combos2 = [vec![1u8, 1], vec![1, 0], vec![0, 1], vec![0, 0]];
    let cases: Vec<(&str, TileSpec, Vec<Vec<u8>>)> = vec![
        ("conn-h", ConnH { w }, combos1.to_vec()),
        ("elbow-tl", ElbowTL { w }, combos1.to_vec()),
        ("elbow-rb", ElbowRB { w }, combos1.to_vec()),
        ("splitter-h", SplitterH { w, gamma: 3 }, combos1.to_vec()),
        ("splitter-v", SplitterV { w, gamma: 3 }, combos1.to_vec()),
        ("clause", Clause { w, beta: 3 }, combos2.to_vec()),
        ("merge-h", MergeH { w_top: w, w_right: w - 2 }, combos2.to_vec()),
        ("merge-v", MergeV { w_top: w - 2, w_right: w }, combos2.to_vec()),
        ("crossing", Crossing { wh: w, wv: w - 12 }, combos2.to_vec()),
        ("root", Root { w_top: 30, w_right: 32 }, combos2.to_vec()),
    ];
    for (name, spec, combos) in cases {
        for ins in combos {
            let f = pattern(&spec, a, &ins);
            let pat = f.total_length();
            // Pin outputs to the pattern's own parities for a fair floor.
            let pins: Vec<Option<u8>> = f
                .output_parities(&spec)
                .into_iter()
                .map(Some)
                .collect();
            let dp = dp_min_pinned(&spec, a, &ins, &pins);
            let dp_free = dp_min_pinned(&spec, a, &ins, &vec![None; pins.len()]);
            println!("{}\tins={:?}\tpattern={}\tdp_pinned={}\tdp_free={}\texcess={}", name, ins, pat, dp, dp_free, pat - dp_free);
        }
    }
    // Variable tile.
    let spec = Variable { k: w };
    for v in [true, false] {
        let f = variable_pattern(&spec, a, v);
        let dp = dp_min_pinned(&spec, a, &[], &[None, None]);
        println!("variable\tv={}\tpattern={}\tdp_free={}\texcess={}", v, f.total_length(), dp, f.total_length() - dp);
    }
}
