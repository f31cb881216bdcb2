//! Closed-form tile branchings used to stitch realizations.
//!
//! For every tile kind and input-parity combination there is one fixed
//! branching shape, valid at any scale and cascade size. Patterns follow
//! the minimum connections of the gadget analysis: wires of parity 1 run
//! along the port-terminal lines at zero riser cost, parity-0 wires run one
//! unit inside with unit risers for each terminal left on the port line.
//! Bus-facing tiles (elbows, merges, the root cell) always emit parity 0.

use crate::template::{Bp, TileSpec};
use drsa_core::geom::Point;
use drsa_core::tile::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatLeaf {
    /// Index into the tile's template terminal list.
    Terminal(usize),
    /// Pinned input leaf on the given side.
    Input(Side),
}

#[derive(Debug, Clone)]
pub struct LocalNode {
    pub pos: Point,
    pub depth: i64,
    pub children: Vec<usize>,
    pub leaf: Option<PatLeaf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeAttach {
    /// Tree rooted on an output port at the given parity.
    Output(Side, u8),
    /// Tree hangs from the global root vertex at the cell origin.
    Root,
}

#[derive(Debug, Clone)]
pub struct LocalTree {
    pub root: usize,
    pub attach: TreeAttach,
}

#[derive(Debug, Clone)]
pub struct LocalForest {
    pub nodes: Vec<LocalNode>,
    pub trees: Vec<LocalTree>,
}

impl LocalForest {
    pub fn total_length(&self) -> i64 {
        let mut total = 0;
        for n in &self.nodes {
            for &c in &n.children {
                total += n.pos.l1(&self.nodes[c].pos);
            }
        }
        total
    }

    /// Parity of each output port, in `spec.outputs()` order.
    pub fn output_parities(&self, spec: &TileSpec) -> Vec<u8> {
        spec.outputs()
            .iter()
            .map(|&(side, _)| {
                self.trees
                    .iter()
                    .find_map(|t| match t.attach {
                        TreeAttach::Output(s, p) if s == side => Some(p),
                        _ => None,
                    })
                    .expect("output side missing from forest")
            })
            .collect()
    }
}

/// Structural check of a pattern forest against its template: exact leaf
/// coverage, pinned input and root positions, binary Steiner nodes,
/// unit depth steps and monotone edges.
pub fn validate_forest(
    spec: &TileSpec,
    alpha: i64,
    in_parities: &[u8],
    forest: &LocalForest,
) -> Result<(), String> {
    let bp = Bp::new(alpha);
    let terms = spec.terminals(alpha);
    let inputs = spec.inputs();
    let outputs = spec.outputs();

    let mut seen_terms = vec![0usize; terms.len()];
    let mut seen_inputs = vec![0usize; inputs.len()];
    for (id, n) in forest.nodes.iter().enumerate() {
        match n.leaf {
            Some(PatLeaf::Terminal(t)) => {
                if t >= terms.len() {
                    return Err(format!("node {}: unknown terminal {}", id, t));
                }
                seen_terms[t] += 1;
                if (n.pos, n.depth) != terms[t] {
                    return Err(format!(
                        "terminal {} at {:?}/{} but template says {:?}",
                        t, n.pos, n.depth, terms[t]
                    ));
                }
                if !n.children.is_empty() {
                    return Err(format!("terminal leaf {} has children", t));
                }
            }
            Some(PatLeaf::Input(side)) => {
                let slot = inputs.iter().position(|&(s, _)| s == side);
                let Some(slot) = slot else {
                    return Err(format!("input leaf on unexpected side {:?}", side));
                };
                seen_inputs[slot] += 1;
                let (primary, secondary) = bp.port(side);
                let want = if in_parities[slot] == 1 { primary } else { secondary };
                if n.pos != want || n.depth != inputs[slot].1 {
                    return Err(format!(
                        "input {:?} at {:?}/{} but expected {:?}/{}",
                        side, n.pos, n.depth, want, inputs[slot].1
                    ));
                }
                if !n.children.is_empty() {
                    return Err("input leaf has children".into());
                }
            }
            None => {
                if n.children.len() != 2 {
                    return Err(format!(
                        "Steiner node {} has {} children",
                        id,
                        n.children.len()
                    ));
                }
            }
        }
        for &c in &n.children {
            let child = &forest.nodes[c];
            if child.depth != n.depth + 1 {
                return Err(format!("edge {}->{} skips depths", id, c));
            }
            if !n.pos.dominates_below(&child.pos) {
                return Err(format!("edge {}->{} runs down-left", id, c));
            }
        }
    }
    if seen_terms.iter().any(|&c| c != 1) {
        return Err("terminal coverage is not exactly once each".into());
    }
    if seen_inputs.iter().any(|&c| c != 1) {
        return Err("input coverage is not exactly once each".into());
    }

    let mut seen_outputs = vec![false; outputs.len()];
    for tree in &forest.trees {
        let root = &forest.nodes[tree.root];
        match tree.attach {
            TreeAttach::Output(side, parity) => {
                let slot = outputs
                    .iter()
                    .position(|&(s, _)| s == side)
                    .ok_or_else(|| format!("tree on unexpected output {:?}", side))?;
                if seen_outputs[slot] {
                    return Err("two trees on one output".into());
                }
                seen_outputs[slot] = true;
                let (primary, secondary) = bp.port(side);
                let want = if parity == 1 { primary } else { secondary };
                if root.pos != want || root.depth != outputs[slot].1 - 1 {
                    return Err(format!(
                        "root on {:?} at {:?}/{} but expected {:?}/{}",
                        side,
                        root.pos,
                        root.depth,
                        want,
                        outputs[slot].1 - 1
                    ));
                }
            }
            TreeAttach::Root => {
                if !spec.is_root() {
                    return Err("root attach on non-root tile".into());
                }
                if root.pos != Point::ORIGIN || root.depth != 0 {
                    return Err("root chain must start at the origin at depth 0".into());
                }
            }
        }
    }
    if !spec.is_root() && seen_outputs.iter().any(|&s| !s) {
        return Err("missing output tree".into());
    }

    // Reachability: every node in exactly one tree.
    let mut seen = vec![false; forest.nodes.len()];
    for tree in &forest.trees {
        let mut stack = vec![tree.root];
        while let Some(id) = stack.pop() {
            if seen[id] {
                return Err(format!("node {} reached twice", id));
            }
            seen[id] = true;
            stack.extend(forest.nodes[id].children.iter().copied());
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err("orphan nodes in pattern".into());
    }
    Ok(())
}

struct Fb<'a> {
    terms: &'a [(Point, i64)],
    nodes: Vec<LocalNode>,
}

impl<'a> Fb<'a> {
    fn new(terms: &'a [(Point, i64)]) -> Self {
        Fb {
            terms,
            nodes: Vec::new(),
        }
    }

    fn steiner(&mut self, pos: Point, depth: i64) -> usize {
        self.nodes.push(LocalNode {
            pos,
            depth,
            children: Vec::new(),
            leaf: None,
        });
        self.nodes.len() - 1
    }

    fn term(&mut self, idx: usize) -> usize {
        let (pos, depth) = self.terms[idx];
        self.nodes.push(LocalNode {
            pos,
            depth,
            children: Vec::new(),
            leaf: Some(PatLeaf::Terminal(idx)),
        });
        self.nodes.len() - 1
    }

    fn input(&mut self, side: Side, pos: Point, depth: i64) -> usize {
        self.nodes.push(LocalNode {
            pos,
            depth,
            children: Vec::new(),
            leaf: Some(PatLeaf::Input(side)),
        });
        self.nodes.len() - 1
    }

    fn link(&mut self, parent: usize, child: usize) {
        debug_assert_eq!(self.nodes[child].depth, self.nodes[parent].depth + 1);
        self.nodes[parent].children.push(child);
    }

    /// One Steiner per stop, placed at the stop position, picking up the
    /// given terminal; returns the last Steiner, which still owes its
    /// second child.
    fn spine(&mut self, mut parent: usize, stops: &[(Point, usize)]) -> usize {
        for &(pos, idx) in stops {
            let depth = self.terms[idx].1 - 1;
            let s = self.steiner(pos, depth);
            self.link(parent, s);
            let leaf = self.term(idx);
            self.link(s, leaf);
            parent = s;
        }
        parent
    }

    /// Cascade chain: all Steiners at `at`, picking terminals
    /// `base..base+count` in template order.
    fn chain(&mut self, parent: usize, at: Point, base: usize, count: i64) -> usize {
        let stops: Vec<(Point, usize)> = (0..count as usize).map(|i| (at, base + i)).collect();
        self.spine(parent, &stops)
    }
}

/// The pattern branching for a tile under the given input parities
/// (aligned with `spec.inputs()`).
pub fn pattern(spec: &TileSpec, alpha: i64, in_parities: &[u8]) -> LocalForest {
    let terms = spec.terminals(alpha);
    let bp = Bp::new(alpha);
    match *spec {
        TileSpec::ConnH { w } => conn_h(&terms, bp, w, in_parities[0]),
        TileSpec::ConnV { w } => transpose(conn_h(
            &transpose_terms(&terms),
            bp,
            w,
            in_parities[0],
        )),
        TileSpec::Crossing { wh, wv } => {
            let h = conn_h(&terms[..6], bp, wh, in_parities[0]);
            let v = transpose(conn_h(
                &transpose_terms(&terms[6..]),
                bp,
                wv,
                in_parities[1],
            ));
            union(h, v, 6)
        }
        TileSpec::Variable { .. } => unreachable!("variable patterns take a truth value"),
        TileSpec::Clause { w, beta } => clause(&terms, bp, w, beta, in_parities[0], in_parities[1]),
        TileSpec::SplitterH { w, gamma } => splitter_h(&terms, bp, w, gamma, in_parities[0]),
        TileSpec::SplitterV { w, gamma } => transpose(splitter_h(
            &transpose_terms(&terms),
            bp,
            w,
            gamma,
            in_parities[0],
        )),
        TileSpec::ElbowTL { w } => elbow_tl(&terms, bp, w, in_parities[0]),
        TileSpec::ElbowRB { w } => transpose(elbow_tl(
            &transpose_terms(&terms),
            bp,
            w,
            in_parities[0],
        )),
        TileSpec::MergeH { w_top, w_right } => merge(
            &terms, bp, w_top, w_right, in_parities[1], in_parities[0], Side::Left,
        ),
        TileSpec::MergeV { w_top, w_right } => merge(
            &terms, bp, w_top, w_right, in_parities[1], in_parities[0], Side::Bottom,
        ),
        TileSpec::Root { w_top, w_right } => root_cell(
            &terms, bp, w_top, w_right, in_parities[1], in_parities[0],
        ),
    }
}

/// Variable-tile pattern for a truth value: the positive output (left)
/// carries parity `value`, the negated output (bottom) its complement.
pub fn variable_pattern(spec: &TileSpec, alpha: i64, value: bool) -> LocalForest {
    let TileSpec::Variable { k } = *spec else {
        panic!("not a variable tile")
    };
    let terms = spec.terminals(alpha);
    let bp = Bp::new(alpha);
    variable(&terms, bp, k, value)
}

fn transpose_terms(terms: &[(Point, i64)]) -> Vec<(Point, i64)> {
    terms
        .iter()
        .map(|&(p, d)| (Point::new(p.y, p.x), d))
        .collect()
}

fn transpose_side(side: Side) -> Side {
    match side {
        Side::Left => Side::Bottom,
        Side::Bottom => Side::Left,
        Side::Right => Side::Top,
        Side::Top => Side::Right,
    }
}

fn transpose(mut f: LocalForest) -> LocalForest {
    for n in &mut f.nodes {
        n.pos = Point::new(n.pos.y, n.pos.x);
        if let Some(PatLeaf::Input(s)) = n.leaf {
            n.leaf = Some(PatLeaf::Input(transpose_side(s)));
        }
    }
    for t in &mut f.trees {
        if let TreeAttach::Output(s, p) = t.attach {
            t.attach = TreeAttach::Output(transpose_side(s), p);
        }
    }
    f
}

/// Disjoint union; terminal indices of `b` are shifted by `offset`.
fn union(mut a: LocalForest, b: LocalForest, offset: usize) -> LocalForest {
    let base = a.nodes.len();
    for mut n in b.nodes {
        n.children = n.children.into_iter().map(|c| c + base).collect();
        if let Some(PatLeaf::Terminal(t)) = n.leaf {
            n.leaf = Some(PatLeaf::Terminal(t + offset));
        }
        a.nodes.push(n);
    }
    for t in b.trees {
        a.trees.push(LocalTree {
            root: t.root + base,
            attach: t.attach,
        });
    }
    a
}

fn conn_h(terms: &[(Point, i64)], bp: Bp, w: i64, p: u8) -> LocalForest {
    let mut fb = Fb::new(terms);
    let y = if p == 1 { bp.D() } else { bp.C() };
    let root = fb.steiner(Point::new(bp.A(), y), w - 6);
    let o1 = fb.term(0);
    fb.link(root, o1);
    let last = fb.spine(
        root,
        &[
            (Point::new(bp.B(), y), 1),
            (Point::new(bp.B(), y), 2),
            (Point::new(bp.D(), y), 3),
            (Point::new(bp.E(), y), 4),
            (Point::new(bp.E(), y), 5),
        ],
    );
    let inp = fb.input(Side::Right, Point::new(bp.F(), y), w);
    fb.link(last, inp);
    LocalForest {
        nodes: fb.nodes,
        trees: vec![LocalTree {
            root,
            attach: TreeAttach::Output(Side::Left, p),
        }],
    }
}

fn variable(terms: &[(Point, i64)], bp: Bp, k: i64, value: bool) -> LocalForest {
    let mut fb = Fb::new(terms);
    let mut trees = Vec::new();
    if value {
        // Left tree rides the port line; bottom tree shifts inward.
        let r1 = fb.steiner(Point::new(bp.A(), bp.D()), k - 4);
        let o1 = fb.term(0);
        fb.link(r1, o1);
        let last = fb.spine(r1, &[(Point::new(bp.B(), bp.D()), 2), (Point::new(bp.B(), bp.D()), 3)]);
        let s = fb.steiner(Point::new(bp.C(), bp.D()), k - 1);
        fb.link(last, s);
        let a_cd = fb.term(8);
        fb.link(s, a_cd);
        let a_dd = fb.term(9);
        fb.link(s, a_dd);
        trees.push(LocalTree {
            root: r1,
            attach: TreeAttach::Output(Side::Left, 1),
        });

        let r2 = fb.steiner(Point::new(bp.C(), bp.A()), k - 4);
        let o2 = fb.term(1);
        fb.link(r2, o2);
        let last = fb.spine(r2, &[(Point::new(bp.C(), bp.B()), 4), (Point::new(bp.C(), bp.B()), 5)]);
        let s = fb.steiner(Point::new(bp.C(), bp.C()), k - 1);
        fb.link(last, s);
        let a_cc = fb.term(6);
        fb.link(s, a_cc);
        let a_dc = fb.term(7);
        fb.link(s, a_dc);
        trees.push(LocalTree {
            root: r2,
            attach: TreeAttach::Output(Side::Bottom, 0),
        });
    } else {
        let r1 = fb.steiner(Point::new(bp.A(), bp.C()), k - 4);
        let o1 = fb.term(0);
        fb.link(r1, o1);
        let last = fb.spine(r1, &[(Point::new(bp.B(), bp.C()), 2), (Point::new(bp.B(), bp.C()), 3)]);
        let s = fb.steiner(Point::new(bp.C(), bp.C()), k - 1);
        fb.link(last, s);
        let a_cc = fb.term(6);
        fb.link(s, a_cc);
        let a_cd = fb.term(8);
        fb.link(s, a_cd);
        trees.push(LocalTree {
            root: r1,
            attach: TreeAttach::Output(Side::Left, 0),
        });

        let r2 = fb.steiner(Point::new(bp.D(), bp.A()), k - 4);
        let o2 = fb.term(1);
        fb.link(r2, o2);
        let last = fb.spine(r2, &[(Point::new(bp.D(), bp.B()), 4), (Point::new(bp.D(), bp.B()), 5)]);
        let s = fb.steiner(Point::new(bp.D(), bp.C()), k - 1);
        fb.link(last, s);
        let a_dc = fb.term(7);
        fb.link(s, a_dc);
        let a_dd = fb.term(9);
        fb.link(s, a_dd);
        trees.push(LocalTree {
            root: r2,
            attach: TreeAttach::Output(Side::Bottom, 1),
        });
    }
    LocalForest {
        nodes: fb.nodes,
        trees,
    }
}

fn splitter_h(terms: &[(Point, i64)], bp: Bp, w: i64, gamma: i64, v: u8) -> LocalForest {
    let mut fb = Fb::new(terms);
    let g = gamma as usize;
    let mut trees = Vec::new();
    if v == 1 {
        // Straight tree: port line through the twin upper terminals.
        let r1 = fb.steiner(Point::new(bp.A(), bp.D()), w - 6);
        let o1 = fb.term(0);
        fb.link(r1, o1);
        let last = fb.spine(r1, &[(Point::new(bp.B(), bp.D()), 2), (Point::new(bp.B(), bp.D()), 3)]);
        let s = fb.steiner(Point::new(bp.C(), bp.DD()), w - 3);
        fb.link(last, s);
        let e1 = fb.term(6);
        fb.link(s, e1);
        let e2 = fb.term(7);
        fb.link(s, e2);
        trees.push(LocalTree {
            root: r1,
            attach: TreeAttach::Output(Side::Left, 1),
        });

        // Cascade tree: spine up the bottom port line, cascade at unit
        // distance, then out through the input triple.
        let r2 = fb.steiner(Point::new(bp.D(), bp.A()), w - gamma - 6);
        let o2 = fb.term(1);
        fb.link(r2, o2);
        let last = fb.spine(r2, &[(Point::new(bp.D(), bp.B()), 4), (Point::new(bp.D(), bp.B()), 5)]);
        let top = fb.chain(last, Point::new(bp.D(), bp.D()), 8, gamma);
        let v_node = fb.steiner(Point::new(bp.E(), bp.D()), w - 3);
        fb.link(top, v_node);
        let d3a = fb.term(8 + g);
        fb.link(v_node, d3a);
        let z = fb.steiner(Point::new(bp.E(), bp.D()), w - 2);
        fb.link(v_node, z);
        let d3b = fb.term(9 + g);
        fb.link(z, d3b);
        let wn = fb.steiner(Point::new(bp.E(), bp.D()), w - 1);
        fb.link(z, wn);
        let d3c = fb.term(10 + g);
        fb.link(wn, d3c);
        let inp = fb.input(Side::Right, Point::new(bp.F(), bp.D()), w);
        fb.link(wn, inp);
        trees.push(LocalTree {
            root: r2,
            attach: TreeAttach::Output(Side::Bottom, 1),
        });
    } else {
        // Straight tree takes the input triple; everything shifts inward.
        let r1 = fb.steiner(Point::new(bp.A(), bp.C()), w - 6);
        let o1 = fb.term(0);
        fb.link(r1, o1);
        let last = fb.spine(r1, &[(Point::new(bp.B(), bp.C()), 2), (Point::new(bp.B(), bp.C()), 3)]);
        let s = fb.steiner(Point::new(bp.E(), bp.C()), w - 3);
        fb.link(last, s);
        let d3a = fb.term(8 + g);
        fb.link(s, d3a);
        let z = fb.steiner(Point::new(bp.E(), bp.C()), w - 2);
        fb.link(s, z);
        let d3b = fb.term(9 + g);
        fb.link(z, d3b);
        let wn = fb.steiner(Point::new(bp.E(), bp.C()), w - 1);
        fb.link(z, wn);
        let d3c = fb.term(10 + g);
        fb.link(wn, d3c);
        let inp = fb.input(Side::Right, Point::new(bp.F(), bp.C()), w);
        fb.link(wn, inp);
        trees.push(LocalTree {
            root: r1,
            attach: TreeAttach::Output(Side::Left, 0),
        });

        // Cascade tree keeps the twin terminals above the cascade chain.
        let r2 = fb.steiner(Point::new(bp.C(), bp.A()), w - gamma - 6);
        let o2 = fb.term(1);
        fb.link(r2, o2);
        let last = fb.spine(r2, &[(Point::new(bp.C(), bp.B()), 4), (Point::new(bp.C(), bp.B()), 5)]);
        let top = fb.chain(last, Point::new(bp.C(), bp.DD()), 8, gamma);
        let s = fb.steiner(Point::new(bp.C(), bp.DD()), w - 3);
        fb.link(top, s);
        let e1 = fb.term(6);
        fb.link(s, e1);
        let e2 = fb.term(7);
        fb.link(s, e2);
        trees.push(LocalTree {
            root: r2,
            attach: TreeAttach::Output(Side::Bottom, 0),
        });
    }
    LocalForest {
        nodes: fb.nodes,
        trees,
    }
}

fn clause(terms: &[(Point, i64)], bp: Bp, w: i64, beta: i64, p_right: u8, p_top: u8) -> LocalForest {
    let mut fb = Fb::new(terms);
    let b = beta as usize;
    let s2_base = 3;
    let s1_base = 3 + b;
    let d3a = 3 + 2 * b;
    let d3b = d3a + 1;
    let d4a = d3a + 2;
    let d4b = d3a + 3;

    let root = fb.steiner(Point::new(bp.C(), bp.A()), w - beta - 6);
    let o2 = fb.term(0);
    fb.link(root, o2);
    let last = fb.spine(root, &[(Point::new(bp.C(), bp.B()), 1), (Point::new(bp.C(), bp.B()), 2)]);
    let j = fb.steiner(Point::new(bp.C(), bp.C()), w - beta - 3);
    fb.link(last, j);

    // Branch A always chains the lower-left cascade in place.
    let a_top = fb.chain(j, Point::new(bp.C(), bp.C()), s2_base, beta);
    // Branch B hosts the upper-right cascade; free when some input rides
    // the port lines, unit edges when both inputs sit inside.
    let b_chain_pos = if p_right == 0 && p_top == 0 {
        Point::new(bp.C(), bp.D())
    } else {
        Point::new(bp.D(), bp.D())
    };
    let b_top = fb.chain(j, b_chain_pos, s1_base, beta);

    // Attach the two input stacks: the parity-1 input (if any) hangs off
    // branch B along its port line; the other input comes off branch A.
    let attach_right = |fb: &mut Fb, parent: usize| {
        if p_right == 1 {
            let x = fb.steiner(Point::new(bp.E(), bp.D()), w - 2);
            fb.link(parent, x);
            let l = fb.term(d3a);
            fb.link(x, l);
            let wn = fb.steiner(Point::new(bp.E(), bp.D()), w - 1);
            fb.link(x, wn);
            let l = fb.term(d3b);
            fb.link(wn, l);
            let inp = fb.input(Side::Right, Point::new(bp.F(), bp.D()), w);
            fb.link(wn, inp);
        } else {
            let x = fb.steiner(Point::new(bp.E(), bp.C()), w - 2);
            fb.link(parent, x);
            let l = fb.term(d3a);
            fb.link(x, l);
            let wn = fb.steiner(Point::new(bp.E(), bp.C()), w - 1);
            fb.link(x, wn);
            let l = fb.term(d3b);
            fb.link(wn, l);
            let inp = fb.input(Side::Right, Point::new(bp.F(), bp.C()), w);
            fb.link(wn, inp);
        }
    };
    let attach_top = |fb: &mut Fb, parent: usize| {
        if p_top == 1 {
            let y = fb.steiner(Point::new(bp.D(), bp.E()), w - 2);
            fb.link(parent, y);
            let l = fb.term(d4a);
            fb.link(y, l);
            let wn = fb.steiner(Point::new(bp.D(), bp.E()), w - 1);
            fb.link(y, wn);
            let l = fb.term(d4b);
            fb.link(wn, l);
            let inp = fb.input(Side::Top, Point::new(bp.D(), bp.F()), w);
            fb.link(wn, inp);
        } else {
            let y = fb.steiner(Point::new(bp.C(), bp.E()), w - 2);
            fb.link(parent, y);
            let l = fb.term(d4a);
            fb.link(y, l);
            let wn = fb.steiner(Point::new(bp.C(), bp.E()), w - 1);
            fb.link(y, wn);
            let l = fb.term(d4b);
            fb.link(wn, l);
            let inp = fb.input(Side::Top, Point::new(bp.C(), bp.F()), w);
            fb.link(wn, inp);
        }
    };

    if p_right == 1 {
        attach_right(&mut fb, b_top);
        attach_top(&mut fb, a_top);
    } else {
        attach_top(&mut fb, b_top);
        attach_right(&mut fb, a_top);
    }

    LocalForest {
        nodes: fb.nodes,
        trees: vec![LocalTree {
            root,
            attach: TreeAttach::Output(Side::Bottom, 0),
        }],
    }
}

fn elbow_tl(terms: &[(Point, i64)], bp: Bp, w: i64, p: u8) -> LocalForest {
    let mut fb = Fb::new(terms);
    let root = fb.steiner(Point::new(bp.A(), bp.C()), w - 6);
    let o1 = fb.term(0);
    fb.link(root, o1);
    let last = fb.spine(root, &[(Point::new(bp.B(), bp.C()), 1), (Point::new(bp.B(), bp.C()), 2)]);
    if p == 1 {
        let s = fb.steiner(Point::new(bp.D(), bp.C()), w - 3);
        fb.link(last, s);
        let ctr = fb.term(3);
        fb.link(s, ctr);
        let s2 = fb.steiner(Point::new(bp.D(), bp.E()), w - 2);
        fb.link(s, s2);
        let l = fb.term(4);
        fb.link(s2, l);
        let wn = fb.steiner(Point::new(bp.D(), bp.E()), w - 1);
        fb.link(s2, wn);
        let l = fb.term(5);
        fb.link(wn, l);
        let inp = fb.input(Side::Top, Point::new(bp.D(), bp.F()), w);
        fb.link(wn, inp);
    } else {
        let s = fb.steiner(Point::new(bp.C(), bp.C()), w - 3);
        fb.link(last, s);
        let ctr = fb.term(3);
        fb.link(s, ctr);
        let s2 = fb.steiner(Point::new(bp.C(), bp.E()), w - 2);
        fb.link(s, s2);
        let l = fb.term(4);
        fb.link(s2, l);
        let wn = fb.steiner(Point::new(bp.C(), bp.E()), w - 1);
        fb.link(s2, wn);
        let l = fb.term(5);
        fb.link(wn, l);
        let inp = fb.input(Side::Top, Point::new(bp.C(), bp.F()), w);
        fb.link(wn, inp);
    }
    LocalForest {
        nodes: fb.nodes,
        trees: vec![LocalTree {
            root,
            attach: TreeAttach::Output(Side::Left, 0),
        }],
    }
}

/// Bus merge: shared input-branch structure under an output block on
/// `out_side`. Always emits parity 0.
fn merge(
    terms: &[(Point, i64)],
    bp: Bp,
    w_top: i64,
    w_right: i64,
    p_top: u8,
    p_right: u8,
    out_side: Side,
) -> LocalForest {
    let w_out = TileSpec::merge_out(w_top, w_right);
    let mut fb = Fb::new(terms);
    let (root_pos, d_stop) = match out_side {
        Side::Left => (Point::new(bp.A(), bp.C()), Point::new(bp.B(), bp.C())),
        Side::Bottom => (Point::new(bp.C(), bp.A()), Point::new(bp.C(), bp.B())),
        _ => unreachable!(),
    };
    let root = fb.steiner(root_pos, w_out - 1);
    let o_term = fb.term(0);
    fb.link(root, o_term);
    let last = fb.spine(root, &[(d_stop, 1), (d_stop, 2)]);
    let j = fb.steiner(Point::new(bp.C(), bp.C()), w_out + 2);
    fb.link(last, j);
    attach_branches(&mut fb, bp, j, w_top, w_right, p_top, p_right, 3);
    LocalForest {
        nodes: fb.nodes,
        trees: vec![LocalTree {
            root,
            attach: TreeAttach::Output(out_side, 0),
        }],
    }
}

fn root_cell(
    terms: &[(Point, i64)],
    bp: Bp,
    w_top: i64,
    w_right: i64,
    p_top: u8,
    p_right: u8,
) -> LocalForest {
    let d_j = TileSpec::root_junction(w_top, w_right);
    let mut fb = Fb::new(terms);
    let origin = Point::new(bp.A(), bp.A());
    // Cascade chain at the origin, then the two run doubles, then the
    // junction; every chain edge is a leg of the monotone run to (2a, 2a).
    let pos_of = |i: i64| {
        if i <= d_j - 5 {
            origin
        } else if i <= d_j - 3 {
            Point::new(bp.B(), bp.B())
        } else {
            Point::new(bp.C(), bp.C())
        }
    };
    let mut tree_root = None;
    let mut prev: Option<usize> = None;
    for i in 0..d_j {
        let s = fb.steiner(pos_of(i), i);
        if let Some(p) = prev {
            fb.link(p, s);
        } else {
            tree_root = Some(s);
        }
        let leaf = fb.term(i as usize);
        fb.link(s, leaf);
        prev = Some(s);
    }
    let j = fb.steiner(Point::new(bp.C(), bp.C()), d_j);
    fb.link(prev.expect("root junction at least 5 deep"), j);
    attach_branches(&mut fb, bp, j, w_top, w_right, p_top, p_right, d_j as usize);
    LocalForest {
        nodes: fb.nodes,
        trees: vec![LocalTree {
            root: tree_root.unwrap(),
            attach: TreeAttach::Root,
        }],
    }
}

/// The two input branches shared by merges and the root cell: equalizer
/// cascades absorbed in place, then the port double stacks.
#[allow(clippy::too_many_arguments)]
fn attach_branches(
    fb: &mut Fb,
    bp: Bp,
    j: usize,
    w_top: i64,
    w_right: i64,
    p_top: u8,
    p_right: u8,
    casc_base: usize,
) {
    let junction = fb.nodes[j].depth;
    let c_top = w_top - junction - 3;
    let c_right = w_right - junction - 3;

    // Top branch.
    let parent = if c_top > 0 {
        fb.chain(j, Point::new(bp.C(), bp.DD()), casc_base, c_top)
    } else {
        j
    };
    let d4a = casc_base + (c_top + c_right) as usize;
    if p_top == 1 {
        let s = fb.steiner(Point::new(bp.D(), bp.E()), w_top - 2);
        fb.link(parent, s);
        let l = fb.term(d4a);
        fb.link(s, l);
        let wn = fb.steiner(Point::new(bp.D(), bp.E()), w_top - 1);
        fb.link(s, wn);
        let l = fb.term(d4a + 1);
        fb.link(wn, l);
        let inp = fb.input(Side::Top, Point::new(bp.D(), bp.F()), w_top);
        fb.link(wn, inp);
    } else {
        let s = fb.steiner(Point::new(bp.C(), bp.E()), w_top - 2);
        fb.link(parent, s);
        let l = fb.term(d4a);
        fb.link(s, l);
        let wn = fb.steiner(Point::new(bp.C(), bp.E()), w_top - 1);
        fb.link(s, wn);
        let l = fb.term(d4a + 1);
        fb.link(wn, l);
        let inp = fb.input(Side::Top, Point::new(bp.C(), bp.F()), w_top);
        fb.link(wn, inp);
    }

    // Right branch.
    let parent = if c_right > 0 {
        fb.chain(j, Point::new(bp.DD(), bp.C()), casc_base + c_top as usize, c_right)
    } else {
        j
    };
    let d3a = d4a + 2;
    if p_right == 1 {
        let s = fb.steiner(Point::new(bp.E(), bp.D()), w_right - 2);
        fb.link(parent, s);
        let l = fb.term(d3a);
        fb.link(s, l);
        let wn = fb.steiner(Point::new(bp.E(), bp.D()), w_right - 1);
        fb.link(s, wn);
        let l = fb.term(d3a + 1);
        fb.link(wn, l);
        let inp = fb.input(Side::Right, Point::new(bp.F(), bp.D()), w_right);
        fb.link(wn, inp);
    } else {
        let s = fb.steiner(Point::new(bp.E(), bp.C()), w_right - 2);
        fb.link(parent, s);
        let l = fb.term(d3a);
        fb.link(s, l);
        let wn = fb.steiner(Point::new(bp.E(), bp.C()), w_right - 1);
        fb.link(s, wn);
        let l = fb.term(d3a + 1);
        fb.link(wn, l);
        let inp = fb.input(Side::Right, Point::new(bp.F(), bp.C()), w_right);
        fb.link(wn, inp);
    }
}
