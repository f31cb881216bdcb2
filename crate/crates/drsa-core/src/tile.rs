//! Exact minimum tile branchings by dynamic programming.
//!
//! A tile branching is a forest of depth-consistent arborescences inside one
//! tile: one tree per output port, with leaves exactly the tile terminals
//! plus one pinned leaf per input port. Input leaves sit at the port
//! position selected by the input's parity (1 = at the port terminal,
//! 0 = one unit toward the tile center). Every edge must run weakly
//! up-right from parent to child, the shape every root-terminal shortest
//! path has when the root is at the origin, so subtree roots only ever move
//! down-left. Steiner vertices live on the Hanan grid of the tile's points.
//!
//! The DP state is (leaf subset, grid vertex). A subset is realizable only
//! if its dyadic depth mass is a power of two, which also fixes the depth of
//! its subtree root; merges combine two subsets whose root depths match, and
//! a cone relaxation accounts for the edge walked from the parent.

use crate::geom::Point;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortRole {
    Input,
    Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Bottom,
    Right,
    Top,
}

/// Boundary port of a tile. `primary` hosts the port at parity 1 and
/// `secondary` at parity 0. For inputs `depth` is the pinned leaf depth; for
/// outputs it is the depth of the port terminal, one more than the depth of
/// the tree root placed on the border.
#[derive(Debug, Clone)]
pub struct TilePort {
    pub role: PortRole,
    pub side: Side,
    pub primary: Point,
    pub secondary: Point,
    pub depth: i64,
    /// Required for inputs. For outputs `None` lets the solver choose.
    pub parity: Option<u8>,
}

impl TilePort {
    pub fn position(&self, parity: u8) -> Point {
        if parity == 1 {
            self.primary
        } else {
            self.secondary
        }
    }
}

#[derive(Debug, Clone)]
pub struct TileProblem {
    /// Tile terminals (position, depth), including output port terminals.
    pub terminals: Vec<(Point, i64)>,
    pub ports: Vec<TilePort>,
    /// When set, the tile has no output ports and instead hangs one tree of
    /// the given root depth from the given point (used for the cell that
    /// carries the global root).
    pub root_attach: Option<(Point, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafRef {
    Terminal(usize),
    /// Index into the tile's input ports, in port order.
    Input(usize),
}

#[derive(Debug, Clone)]
pub struct BranchNode {
    pub position: Point,
    pub depth: i64,
    pub children: Vec<usize>,
    pub leaf: Option<LeafRef>,
}

#[derive(Debug, Clone)]
pub struct BranchTree {
    pub nodes: Vec<BranchNode>,
    pub root: usize,
    /// Output port this tree is rooted on; `None` for a root-attach tree.
    pub output_port: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct BranchingResult {
    pub length: i64,
    pub trees: Vec<BranchTree>,
    /// Chosen parity per output port, aligned with the output ports in port
    /// order.
    pub output_parities: Vec<u8>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TileError {
    #[error("no-connection")]
    NoConnection,
    #[error("tile problem too large: {0}")]
    TooLarge(String),
    #[error("invalid tile problem: {0}")]
    Invalid(String),
}

const INF: i64 = i64::MAX / 4;

struct Dp {
    xs: Vec<i64>,
    ys: Vec<i64>,
    leaves: Vec<(Point, i64)>,
    num_terminals: usize,
    max_d: i64,
    /// Dense tables per valid subset.
    index_of: Vec<u32>,
    d_tab: Vec<Vec<i64>>,
    c_tab: Vec<Vec<i64>>,
    d_back: Vec<Vec<DChoice>>,
    c_back: Vec<Vec<u8>>, // 0 = here, 1 = step +x, 2 = step +y
}

#[derive(Debug, Clone, Copy)]
enum DChoice {
    None,
    Leaf(u16),
    Merge(u32),
}

impl Dp {
    fn grid_index(&self, i: usize, j: usize) -> usize {
        i * self.ys.len() + j
    }

    fn point_index(&self, p: Point) -> Option<usize> {
        let i = self.xs.binary_search(&p.x).ok()?;
        let j = self.ys.binary_search(&p.y).ok()?;
        Some(self.grid_index(i, j))
    }
}

/// Exact minimum tile branching for the problem's input parities. Output
/// parities are taken from the pins when present and chosen freely
/// otherwise.
pub fn solve_tile_branching(prob: &TileProblem) -> Result<BranchingResult, TileError> {
    let inputs: Vec<(usize, &TilePort)> = prob
        .ports
        .iter()
        .enumerate()
        .filter(|(_, p)| p.role == PortRole::Input)
        .collect();
    let outputs: Vec<(usize, &TilePort)> = prob
        .ports
        .iter()
        .enumerate()
        .filter(|(_, p)| p.role == PortRole::Output)
        .collect();
    for (i, p) in &inputs {
        if p.parity.is_none() {
            return Err(TileError::Invalid(format!("input port {} has no parity", i)));
        }
    }
    if prob.root_attach.is_some() && !outputs.is_empty() {
        return Err(TileError::Invalid(
            "root-attach tiles cannot have output ports".into(),
        ));
    }
    if prob.root_attach.is_none() && !(1..=2).contains(&outputs.len()) {
        return Err(TileError::Invalid(format!(
            "{} output ports unsupported",
            outputs.len()
        )));
    }

    // Leaves: terminals, then input leaves in port order.
    let mut leaves: Vec<(Point, i64)> = prob.terminals.clone();
    for (_, p) in &inputs {
        leaves.push((p.position(p.parity.unwrap()), p.depth));
    }
    let nleaves = leaves.len();
    if nleaves == 0 {
        return Err(TileError::Invalid("no leaves".into()));
    }
    if nleaves > 20 {
        return Err(TileError::TooLarge(format!("{} leaves", nleaves)));
    }
    let max_d = leaves.iter().map(|&(_, d)| d).max().unwrap();
    let min_relevant = prob
        .root_attach
        .map(|(_, d)| d)
        .into_iter()
        .chain(outputs.iter().map(|(_, p)| p.depth - 1))
        .chain(leaves.iter().map(|&(_, d)| d))
        .min()
        .unwrap();
    if max_d - min_relevant > 100 {
        return Err(TileError::TooLarge(format!(
            "depth range {}",
            max_d - min_relevant
        )));
    }

    // Hanan grid over leaves, port positions and the attach point.
    let mut xs: Vec<i64> = leaves.iter().map(|&(p, _)| p.x).collect();
    let mut ys: Vec<i64> = leaves.iter().map(|&(p, _)| p.y).collect();
    for p in &prob.ports {
        xs.push(p.primary.x);
        xs.push(p.secondary.x);
        ys.push(p.primary.y);
        ys.push(p.secondary.y);
    }
    if let Some((p, _)) = prob.root_attach {
        xs.push(p.x);
        ys.push(p.y);
    }
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let (nx, ny) = (xs.len(), ys.len());
    let ncells = nx * ny;

    // Subset masses in units of 2^-(max_d); valid subsets have a
    // power-of-two mass, which fixes the root depth.
    let full: u32 = (1u32 << nleaves) - 1;
    let leaf_mass: Vec<u128> = leaves
        .iter()
        .map(|&(_, d)| 1u128 << (max_d - d) as u32)
        .collect();
    let mut mass = vec![0u128; (full as usize) + 1];
    for m in 1..=full as usize {
        let low = m & m.wrapping_neg();
        mass[m] = mass[m ^ low] + leaf_mass[low.trailing_zeros() as usize];
    }
    let depth_of = |m: usize| -> Option<i64> {
        let v = mass[m];
        if v.is_power_of_two() {
            Some(max_d - i64::from(v.trailing_zeros()))
        } else {
            None
        }
    };

    let mut valid: Vec<u32> = (1..=full)
        .filter(|&m| depth_of(m as usize).is_some())
        .collect();
    valid.sort_by_key(|m| m.count_ones());
    let mut index_of = vec![u32::MAX; full as usize + 1];
    for (i, &m) in valid.iter().enumerate() {
        index_of[m as usize] = i as u32;
    }

    let mut dp = Dp {
        xs,
        ys,
        leaves,
        num_terminals: prob.terminals.len(),
        max_d,
        index_of,
        d_tab: vec![Vec::new(); valid.len()],
        c_tab: vec![Vec::new(); valid.len()],
        d_back: vec![Vec::new(); valid.len()],
        c_back: vec![Vec::new(); valid.len()],
    };

    for (vi, &s) in valid.iter().enumerate() {
        let mut d_tab = vec![INF; ncells];
        let mut d_back = vec![DChoice::None; ncells];
        if s.count_ones() == 1 {
            let leaf = s.trailing_zeros() as usize;
            if let Some(g) = dp.point_index(dp.leaves[leaf].0) {
                d_tab[g] = 0;
                d_back[g] = DChoice::Leaf(leaf as u16);
            }
        } else {
            let low = s & s.wrapping_neg();
            let mut sub = (s - 1) & s;
            while sub != 0 {
                if sub & low != 0 {
                    let rest = s ^ sub;
                    let (a, b) = (dp.index_of[sub as usize], dp.index_of[rest as usize]);
                    if a != u32::MAX && b != u32::MAX {
                        let ca = &dp.c_tab[a as usize];
                        let cb = &dp.c_tab[b as usize];
                        for g in 0..ncells {
                            if ca[g] < INF && cb[g] < INF {
                                let cand = ca[g] + cb[g];
                                if cand < d_tab[g] {
                                    d_tab[g] = cand;
                                    d_back[g] = DChoice::Merge(sub);
                                }
                            }
                        }
                    }
                }
                sub = (sub - 1) & s;
            }
        }
        // Cone relaxation: a subtree root walks weakly down-left toward its
        // parent, paying rectilinear distance.
        let mut c_tab = d_tab.clone();
        let mut c_back = vec![0u8; ncells];
        for i in (0..nx).rev() {
            for j in (0..ny).rev() {
                let g = dp.grid_index(i, j);
                if i + 1 < nx {
                    let cand = c_tab[dp.grid_index(i + 1, j)]
                        .saturating_add(dp.xs[i + 1] - dp.xs[i]);
                    if cand < c_tab[g] {
                        c_tab[g] = cand;
                        c_back[g] = 1;
                    }
                }
                if j + 1 < ny {
                    let cand = c_tab[dp.grid_index(i, j + 1)]
                        .saturating_add(dp.ys[j + 1] - dp.ys[j]);
                    if cand < c_tab[g] {
                        c_tab[g] = cand;
                        c_back[g] = 2;
                    }
                }
            }
        }
        dp.d_tab[vi] = d_tab;
        dp.c_tab[vi] = c_tab;
        dp.d_back[vi] = d_back;
        dp.c_back[vi] = c_back;
    }

    // Assemble the forest.
    if let Some((attach, root_depth)) = prob.root_attach {
        let fi = dp.index_of[full as usize];
        if fi == u32::MAX || depth_of(full as usize) != Some(root_depth) {
            return Err(TileError::NoConnection);
        }
        let g = dp
            .point_index(attach)
            .ok_or_else(|| TileError::Invalid("attach point off grid".into()))?;
        let length = dp.c_tab[fi as usize][g];
        if length >= INF {
            return Err(TileError::NoConnection);
        }
        let mut tree = BranchTree {
            nodes: Vec::new(),
            root: 0,
            output_port: None,
        };
        let root = expand_c(&dp, full, g, &mut tree);
        tree.root = root;
        return Ok(BranchingResult {
            length,
            trees: vec![tree],
            output_parities: Vec::new(),
        });
    }

    let parity_options = |port: &TilePort| -> Vec<u8> {
        match port.parity {
            Some(p) => vec![p],
            None => vec![1, 0],
        }
    };

    let mut best: Option<(i64, Vec<(u32, usize, u8)>)> = None; // (subset, grid, parity) per output
    if outputs.len() == 1 {
        let (_, port) = outputs[0];
        if depth_of(full as usize) == Some(port.depth - 1) {
            let fi = dp.index_of[full as usize];
            if fi != u32::MAX {
                for parity in parity_options(port) {
                    if let Some(g) = dp.point_index(port.position(parity)) {
                        let len = dp.d_tab[fi as usize][g];
                        if len < INF && best.as_ref().map_or(true, |(b, _)| len < *b) {
                            best = Some((len, vec![(full, g, parity)]));
                        }
                    }
                }
            }
        }
    } else {
        let (_, p0) = outputs[0];
        let (_, p1) = outputs[1];
        for &s in &valid {
            if depth_of(s as usize) != Some(p0.depth - 1) {
                continue;
            }
            let rest = full ^ s;
            if rest == 0 {
                continue;
            }
            let ri = dp.index_of[rest as usize];
            if ri == u32::MAX || depth_of(rest as usize) != Some(p1.depth - 1) {
                continue;
            }
            let si = dp.index_of[s as usize];
            for par0 in parity_options(p0) {
                let g0 = match dp.point_index(p0.position(par0)) {
                    Some(g) => g,
                    None => continue,
                };
                let l0 = dp.d_tab[si as usize][g0];
                if l0 >= INF {
                    continue;
                }
                for par1 in parity_options(p1) {
                    let g1 = match dp.point_index(p1.position(par1)) {
                        Some(g) => g,
                        None => continue,
                    };
                    let l1 = dp.d_tab[ri as usize][g1];
                    if l1 >= INF {
                        continue;
                    }
                    let len = l0 + l1;
                    if best.as_ref().map_or(true, |(b, _)| len < *b) {
                        best = Some((len, vec![(s, g0, par0), (rest, g1, par1)]));
                    }
                }
            }
        }
    }

    let (length, picks) = best.ok_or(TileError::NoConnection)?;
    let mut trees = Vec::new();
    let mut output_parities = Vec::new();
    for (k, &(s, g, parity)) in picks.iter().enumerate() {
        let mut tree = BranchTree {
            nodes: Vec::new(),
            root: 0,
            output_port: Some(outputs[k].0),
        };
        let root = expand_d(&dp, s, g, &mut tree);
        tree.root = root;
        trees.push(tree);
        output_parities.push(parity);
    }
    Ok(BranchingResult {
        length,
        trees,
        output_parities,
    })
}

fn expand_c(dp: &Dp, s: u32, g: usize, tree: &mut BranchTree) -> usize {
    let vi = dp.index_of[s as usize] as usize;
    let ny = dp.ys.len();
    let mut i = g / ny;
    let mut j = g % ny;
    loop {
        match dp.c_back[vi][dp.grid_index(i, j)] {
            1 => i += 1,
            2 => j += 1,
            _ => break,
        }
    }
    expand_d(dp, s, dp.grid_index(i, j), tree)
}

fn expand_d(dp: &Dp, s: u32, g: usize, tree: &mut BranchTree) -> usize {
    let vi = dp.index_of[s as usize] as usize;
    let ny = dp.ys.len();
    let position = Point::new(dp.xs[g / ny], dp.ys[g % ny]);
    match dp.d_back[vi][g] {
        DChoice::Leaf(l) => {
            let l = l as usize;
            let leaf = if l < dp.num_terminals {
                LeafRef::Terminal(l)
            } else {
                LeafRef::Input(l - dp.num_terminals)
            };
            tree.nodes.push(BranchNode {
                position: dp.leaves[l].0,
                depth: dp.leaves[l].1,
                children: Vec::new(),
                leaf: Some(leaf),
            });
            tree.nodes.len() - 1
        }
        DChoice::Merge(sub) => {
            let rest = s ^ sub;
            let depth = {
                let m = mass_of(dp, s);
                dp.max_d - i64::from(m.trailing_zeros())
            };
            let id = tree.nodes.len();
            tree.nodes.push(BranchNode {
                position,
                depth,
                children: Vec::new(),
                leaf: None,
            });
            let a = expand_c(dp, sub, g, tree);
            let b = expand_c(dp, rest, g, tree);
            tree.nodes[id].children = vec![a, b];
            id
        }
        DChoice::None => unreachable!("expanding an unreachable DP state"),
    }
}

fn mass_of(dp: &Dp, s: u32) -> u128 {
    let mut m = 0u128;
    let mut bits = s;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        m += 1u128 << (dp.max_d - dp.leaves[i].1) as u32;
        bits &= bits - 1;
    }
    m
}

impl BranchingResult {
    /// Structural validation: binary Steiner nodes, parent depth one less
    /// than child depth, monotone edges, exact leaf coverage, and length.
    pub fn validate(&self, prob: &TileProblem) -> Result<(), String> {
        let mut total = 0i64;
        let mut seen_terms = vec![false; prob.terminals.len()];
        let n_inputs = prob
            .ports
            .iter()
            .filter(|p| p.role == PortRole::Input)
            .count();
        let mut seen_inputs = vec![false; n_inputs];
        for tree in &self.trees {
            for (id, node) in tree.nodes.iter().enumerate() {
                match node.leaf {
                    Some(LeafRef::Terminal(t)) => {
                        if seen_terms[t] {
                            return Err(format!("terminal {} used twice", t));
                        }
                        seen_terms[t] = true;
                        if !node.children.is_empty() {
                            return Err("leaf with children".into());
                        }
                    }
                    Some(LeafRef::Input(i)) => {
                        if seen_inputs[i] {
                            return Err(format!("input {} used twice", i));
                        }
                        seen_inputs[i] = true;
                    }
                    None => {
                        if node.children.len() != 2 {
                            return Err(format!(
                                "Steiner node {} has {} children",
                                id,
                                node.children.len()
                            ));
                        }
                    }
                }
                for &c in &node.children {
                    let child = &tree.nodes[c];
                    if child.depth != node.depth + 1 {
                        return Err("child depth is not parent depth + 1".into());
                    }
                    if !node.position.dominates_below(&child.position) {
                        return Err("edge runs down-left".into());
                    }
                    total += node.position.l1(&child.position);
                }
            }
        }
        if seen_terms.iter().any(|&s| !s) || seen_inputs.iter().any(|&s| !s) {
            return Err("not all leaves covered".into());
        }
        if total != self.length {
            return Err(format!("edges sum to {}, result says {}", total, self.length));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn port(role: PortRole, side: Side, primary: Point, secondary: Point, depth: i64, parity: Option<u8>) -> TilePort {
        TilePort {
            role,
            side,
            primary,
            secondary,
            depth,
            parity,
        }
    }

    #[test]
    fn two_leaf_bridge() {
        // One interior terminal plus one input, joined at the output root.
        let prob = TileProblem {
            terminals: vec![(Point::new(5, 5), 2)],
            ports: vec![
                port(PortRole::Output, Side::Left, Point::new(0, 5), Point::new(0, 4), 2, Some(1)),
                port(PortRole::Input, Side::Right, Point::new(10, 5), Point::new(10, 4), 2, Some(1)),
            ],
            root_attach: None,
        };
        let res = solve_tile_branching(&prob).unwrap();
        assert_eq!(res.length, 15);
        res.validate(&prob).unwrap();
    }

    #[test]
    fn cascade_passthrough() {
        // Cascade of depths 2 and 3 at (3,3); the deeper chain continues to
        // the input so one cascade edge is free.
        let prob = TileProblem {
            terminals: vec![(Point::new(3, 3), 2), (Point::new(3, 3), 3)],
            ports: vec![
                port(PortRole::Output, Side::Left, Point::new(0, 3), Point::new(0, 2), 2, Some(1)),
                port(PortRole::Input, Side::Right, Point::new(6, 3), Point::new(6, 2), 3, Some(1)),
            ],
            root_attach: None,
        };
        let res = solve_tile_branching(&prob).unwrap();
        assert_eq!(res.length, 9);
        res.validate(&prob).unwrap();
    }

    #[test]
    fn parity_zero_input_pins_the_root_below() {
        // With the input leaf on the lower line, a root on the upper line
        // cannot reach it monotonically, so the output parity flips to 0.
        let prob = TileProblem {
            terminals: vec![(Point::new(5, 5), 2)],
            ports: vec![
                port(PortRole::Output, Side::Left, Point::new(0, 5), Point::new(0, 4), 2, None),
                port(PortRole::Input, Side::Right, Point::new(10, 5), Point::new(10, 4), 2, Some(0)),
            ],
            root_attach: None,
        };
        let res = solve_tile_branching(&prob).unwrap();
        assert_eq!(res.output_parities, vec![0]);
        assert_eq!(res.length, 16);
        res.validate(&prob).unwrap();
    }

    #[test]
    fn depth_mismatch_is_no_connection() {
        let prob = TileProblem {
            terminals: vec![(Point::new(5, 5), 3)],
            ports: vec![
                port(PortRole::Output, Side::Left, Point::new(0, 5), Point::new(0, 4), 2, Some(1)),
                port(PortRole::Input, Side::Right, Point::new(10, 5), Point::new(10, 4), 2, Some(1)),
            ],
            root_attach: None,
        };
        assert!(matches!(
            solve_tile_branching(&prob),
            Err(TileError::NoConnection)
        ));
    }

    #[test]
    fn root_attach_chain() {
        // A root cascade of depths 1 and 2 at the origin plus an input at
        // depth 2: everything chains at the origin, paying only the input
        // edge.
        let prob = TileProblem {
            terminals: vec![(Point::new(0, 0), 1), (Point::new(0, 0), 2)],
            ports: vec![port(
                PortRole::Input,
                Side::Right,
                Point::new(4, 1),
                Point::new(4, 0),
                2,
                Some(1),
            )],
            root_attach: Some((Point::ORIGIN, 0)),
        };
        let res = solve_tile_branching(&prob).unwrap();
        assert_eq!(res.length, 5);
        res.validate(&prob).unwrap();
    }
}
