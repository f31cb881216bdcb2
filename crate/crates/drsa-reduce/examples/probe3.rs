use drsa_core::tile::{solve_tile_branching, LeafRef};
use drsa_reduce::template::TileSpec::{self, *};

fn show(name: &str, spec: &TileSpec, alpha: i64, ins: &[u8]) {
    let pins = vec![None; spec.outputs().len()];
    let prob = spec.tile_problem(alpha, ins, &pins);
    let res = solve_tile_branching(&prob).unwrap();
    println!("== {} ins={:?} len={} out_parities={:?}", name, ins, res.length, res.output_parities);
    for tree in &res.trees {
        println!("  tree rooted at node {} (port {:?})", tree.root, tree.output_port);
        for (i, n) in tree.nodes.iter().enumerate() {
            println!("    [{}] {:?} d={} children={:?} leaf={:?}", i, n.position, n.depth, n.children, n.leaf.map(|l| match l { LeafRef::Terminal(t) => format!("T{}", t), LeafRef::Input(i) => format!("I{}", i) }));
        }
    }
}

fn main() {
    let a = 4; // keep trees small
    show("merge-h", &MergeH { w_top: 30, w_right: 28 }, a, &[1, 1]);
    show("merge-h", &MergeH { w_top: 30, w_right: 28 }, a, &[1, 0]);
    show("root", &Root { w_top: 12, w_right: 14 }, a, &[1, 1]);
}
