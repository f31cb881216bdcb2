//! Compilation of a Max-2-Sat instance into a terminal instance plus its
//! tile grid.
//!
//! Three phases: the router places tiles (layout module), the depth solver
//! assigns wire labels and cascade sizes, and the emitter lays terminals
//! out on the global grid. Depth labels are solved relative to the
//! variable-tile depth and shifted at the end so every terminal depth is
//! positive. Per-clause equalization goes entirely onto the clause's two
//! private occurrence-splitter cascades; crossings are then separated
//! iteratively (the two wires through a crossing cell need depth ranges at
//! least 8 apart), bumping a shared turn cascade or a clause pair, both of
//! which keep every clause equalized after a re-equalization pass.

use crate::dimacs::{Lit, Max2SatInstance};
use crate::layout::{build_layout, BranchKind, Cell, Layout, LayoutError, Role};
use crate::params::{grid_side, ParamError, Parameters};
use crate::template::TileSpec;
use drsa_core::geom::Point;
use drsa_core::model::{Instance, Terminal};
use drsa_core::tile::Side;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

/// Where an input port's parity comes from in a realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PSrc {
    /// The wire carries this literal; parity = its truth value.
    Lit(i32),
    /// Infrastructure wire with a fixed parity.
    Fixed(u8),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridCell {
    pub col: usize,
    pub row: usize,
    pub spec: TileSpec,
    /// Parity source per input port, in `spec.inputs()` order.
    pub psrc: Vec<PSrc>,
    /// Id of this cell's first terminal in the emitted instance.
    pub term_base: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireEdge {
    pub from: Cell,
    pub from_side: Side2,
    pub to: Cell,
    pub label: i64,
    pub lit: Option<i32>,
}

/// Serializable side name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side2 {
    Left,
    Bottom,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TileGrid {
    pub version: u32,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub clauses: Vec<(i32, i32)>,
    pub alpha: i64,
    pub beta: i64,
    pub side: usize,
    pub k_var: i64,
    /// Cells sorted by (row, col); terminal emission order.
    pub cells: Vec<GridCell>,
    pub wires: Vec<WireEdge>,
    /// Splitter cascade sizes in cell order.
    pub gammas: Vec<i64>,
    /// Number of double-terminal anchor groups (each forces length 2a).
    pub num_doubles: usize,
}

impl TileGrid {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grid serializes")
    }

    pub fn from_json(text: &str) -> Result<TileGrid, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn cell(&self, col: usize, row: usize) -> Option<&GridCell> {
        self.cells
            .iter()
            .find(|c| c.col == col && c.row == row)
    }

    /// Re-emits the terminal instance this grid compiles to; identical to
    /// the instance produced alongside the grid.
    pub fn rebuild_instance(&self) -> Instance {
        let tile = 4 * self.alpha + 2;
        let mut terminals = Vec::new();
        for cell in &self.cells {
            debug_assert_eq!(cell.term_base, terminals.len());
            let origin = Point::new(cell.col as i64 * tile, cell.row as i64 * tile);
            for (p, d) in cell.spec.terminals(self.alpha) {
                terminals.push(Terminal {
                    position: Point::new(origin.x + p.x, origin.y + p.y),
                    depth: u32::try_from(d).expect("positive depth"),
                });
            }
        }
        Instance::new(terminals)
    }
}

#[derive(Debug, Error)]
pub enum CompileError {
    #[error("layout: {0}")]
    Layout(#[from] LayoutError),
    #[error("parameters: {0}")]
    Params(#[from] ParamError),
    #[error("depth-solve failed: {0}")]
    DepthSolve(String),
}

/// Anchor groups per tile kind: co-located terminal stacks that each force
/// connection length at least 2a in any feasible solution.
fn doubles_of(spec: &TileSpec) -> usize {
    match spec {
        TileSpec::ConnH { .. } | TileSpec::ConnV { .. } => 2,
        TileSpec::Crossing { .. } => 4,
        TileSpec::Variable { .. } => 2,
        TileSpec::Clause { .. } => 3,
        TileSpec::SplitterH { .. } | TileSpec::SplitterV { .. } => 3,
        TileSpec::ElbowTL { .. } | TileSpec::ElbowRB { .. } => 2,
        TileSpec::MergeH { .. } | TileSpec::MergeV { .. } => 3,
        // Two port doubles plus the two doubles on the origin-junction run.
        TileSpec::Root { .. } => 4,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Handle {
    /// Shift by bumping both occurrence cascades of a clause.
    ClausePair(usize),
    /// Shift by bumping a turn splitter's cascade.
    Turn(Cell),
}

/// One wire arrival at a cell input.
#[derive(Debug, Clone, Copy)]
struct Feed {
    cell: Cell,
    side: Side,
    label: i64,
    src: PSrc,
    handle: Option<Handle>,
}

#[derive(Debug, Default, Clone)]
struct WalkResult {
    /// (label, src, handle) per (cell, side).
    incoming: BTreeMap<(Cell, u8), (i64, PSrc, Option<Handle>)>,
    /// Clause input labels: [top/slot0, right/slot1].
    clause_in: Vec<[Option<i64>; 2]>,
    wires: Vec<WireEdge>,
}

fn side_key(side: Side) -> u8 {
    match side {
        Side::Right => 0,
        Side::Top => 1,
        _ => unreachable!("inputs arrive only from the right or above"),
    }
}

/// Propagates labels from the variables through every wire. `k = 0`;
/// labels are shifted globally afterwards.
fn walk(
    layout: &Layout,
    sat: &Max2SatInstance,
    gammas: &BTreeMap<Cell, i64>,
    beta: i64,
) -> Result<WalkResult, CompileError> {
    let mut res = WalkResult {
        clause_in: vec![[None; 2]; sat.clauses.len()],
        ..Default::default()
    };
    let mut queue: VecDeque<Feed> = VecDeque::new();
    let mut vars: Vec<(usize, Cell)> = layout
        .cells
        .iter()
        .filter_map(|(&cell, &role)| match role {
            Role::Variable { var } => Some((var, cell)),
            _ => None,
        })
        .collect();
    vars.sort_unstable();
    for (var, (col, row)) in vars {
        queue.push_back(Feed {
            cell: (col - 1, row),
            side: Side::Right,
            label: -4,
            src: PSrc::Lit(Lit::positive(var).0),
            handle: None,
        });
        queue.push_back(Feed {
            cell: (col, row - 1),
            side: Side::Top,
            label: -4,
            src: PSrc::Lit(Lit::negative(var).0),
            handle: None,
        });
    }

    while let Some(feed) = queue.pop_front() {
        let role = layout.cells.get(&feed.cell).ok_or_else(|| {
            CompileError::DepthSolve(format!("wire enters empty cell {:?}", feed.cell))
        })?;
        let prev = res
            .incoming
            .insert((feed.cell, side_key(feed.side)), (feed.label, feed.src, feed.handle));
        if prev.is_some() {
            return Err(CompileError::DepthSolve(format!(
                "two wires into {:?} side {:?}",
                feed.cell, feed.side
            )));
        }
        let (col, row) = feed.cell;
        let emit = |queue: &mut VecDeque<Feed>,
                        res: &mut WalkResult,
                        out_side: Side2,
                        out_label: i64,
                        src: PSrc,
                        handle: Option<Handle>| {
            let (to, side) = match out_side {
                Side2::Left => ((col - 1, row), Side::Right),
                Side2::Bottom => ((col, row - 1), Side::Top),
            };
            res.wires.push(WireEdge {
                from: (col, row),
                from_side: out_side,
                to,
                label: out_label,
                lit: match src {
                    PSrc::Lit(l) => Some(l),
                    PSrc::Fixed(_) => None,
                },
            });
            queue.push_back(Feed {
                cell: to,
                side,
                label: out_label - 1,
                src,
                handle,
            });
        };
        match *role {
            Role::ConnH | Role::ConnV | Role::Crossing => {
                let out = match feed.side {
                    Side::Right => Side2::Left,
                    Side::Top => Side2::Bottom,
                    _ => unreachable!(),
                };
                emit(&mut queue, &mut res, out, feed.label - 5, feed.src, feed.handle);
            }
            Role::ElbowTL => {
                emit(&mut queue, &mut res, Side2::Left, feed.label - 5, PSrc::Fixed(0), None);
            }
            Role::ElbowRB => {
                emit(&mut queue, &mut res, Side2::Bottom, feed.label - 5, PSrc::Fixed(0), None);
            }
            Role::SplitterH { lit, branch } => {
                debug_assert_eq!(feed.side, Side::Right);
                let gamma = gammas[&feed.cell];
                emit(&mut queue, &mut res, Side2::Left, feed.label - 5, feed.src, feed.handle);
                let handle = match branch {
                    BranchKind::Occ { clause, .. } => Some(Handle::ClausePair(clause)),
                    BranchKind::Turn => Some(Handle::Turn(feed.cell)),
                };
                let _ = lit;
                emit(&mut queue, &mut res, Side2::Bottom, feed.label - 5 - gamma, feed.src, handle);
            }
            Role::SplitterV { lit, branch } => {
                debug_assert_eq!(feed.side, Side::Top);
                let gamma = gammas[&feed.cell];
                emit(&mut queue, &mut res, Side2::Bottom, feed.label - 5, feed.src, feed.handle);
                let handle = match branch {
                    BranchKind::Occ { clause, .. } => Some(Handle::ClausePair(clause)),
                    BranchKind::Turn => Some(Handle::Turn(feed.cell)),
                };
                let _ = lit;
                emit(&mut queue, &mut res, Side2::Left, feed.label - 5 - gamma, feed.src, handle);
            }
            Role::Clause { clause } => {
                let slot = match feed.side {
                    Side::Top => 0,
                    Side::Right => 1,
                    _ => unreachable!(),
                };
                res.clause_in[clause][slot] = Some(feed.label);
                let both = res.clause_in[clause];
                if let [Some(a), Some(b)] = both {
                    // Feed onward with the top label; equalization makes
                    // them match before the final walk.
                    let w = a.min(b);
                    emit(
                        &mut queue,
                        &mut res,
                        Side2::Bottom,
                        w - beta - 5,
                        PSrc::Fixed(0),
                        Some(Handle::ClausePair(clause)),
                    );
                }
            }
            Role::MergeH | Role::MergeV => {
                let other = side_key(match feed.side {
                    Side::Right => Side::Top,
                    _ => Side::Right,
                });
                if let Some(&(other_label, _, _)) = res.incoming.get(&(feed.cell, other)) {
                    let w_out = TileSpec::merge_out(
                        if feed.side == Side::Top { feed.label } else { other_label },
                        if feed.side == Side::Right { feed.label } else { other_label },
                    );
                    let out = if matches!(role, Role::MergeH) {
                        Side2::Left
                    } else {
                        Side2::Bottom
                    };
                    emit(&mut queue, &mut res, out, w_out, PSrc::Fixed(0), None);
                }
            }
            Role::RootCell => {}
            Role::Variable { .. } => {
                return Err(CompileError::DepthSolve("wire into a variable cell".into()))
            }
        }
    }
    Ok(res)
}

/// Crossing separation required between the two depth ranges in one cell.
const CROSS_SEP: i64 = 8;

pub fn compile_reduction(
    sat: &Max2SatInstance,
    params: &Parameters,
) -> Result<(TileGrid, Instance), CompileError> {
    let layout = build_layout(sat)?;
    let m = sat.clauses.len();

    // Initial cascades: every splitter at the lower bound.
    let mut gammas: BTreeMap<Cell, i64> = layout
        .cells
        .iter()
        .filter(|(_, r)| matches!(r, Role::SplitterH { .. } | Role::SplitterV { .. }))
        .map(|(&c, _)| (c, params.gamma_lo))
        .collect();

    let mut walked = None;
    let mut clash_count: BTreeMap<Cell, u32> = BTreeMap::new();
    for round in 0..500 {
        // Equalize each clause on its private occurrence cascades.
        loop {
            let res = walk(&layout, sat, &gammas, params.beta)?;
            let mut changed = false;
            for ci in 0..m {
                let [top, right] = res.clause_in[ci];
                let (top, right) = (
                    top.ok_or_else(|| CompileError::DepthSolve(format!("clause {} top unfed", ci)))?,
                    right.ok_or_else(|| {
                        CompileError::DepthSolve(format!("clause {} right unfed", ci))
                    })?,
                );
                if top != right {
                    let (slot, diff) = if top > right { (0, top - right) } else { (1, right - top) };
                    let cell = layout.occ_splitters[ci][slot];
                    *gammas.get_mut(&cell).ok_or_else(|| {
                        CompileError::DepthSolve(format!("clause {} slot {} has no splitter", ci, slot))
                    })? += diff;
                    changed = true;
                }
            }
            if !changed {
                walked = Some(res);
                break;
            }
        }
        let res = walked.as_ref().unwrap();

        // Check crossing separations.
        let mut bump: Option<(Handle, i64)> = None;
        for (&cell, &role) in &layout.cells {
            if role != Role::Crossing {
                continue;
            }
            let h = res.incoming.get(&(cell, side_key(Side::Right)));
            let v = res.incoming.get(&(cell, side_key(Side::Top)));
            let (&(wh, _, hh), &(wv, _, hv)) = match (h, v) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(CompileError::DepthSolve(format!(
                        "crossing {:?} missing a wire",
                        cell
                    )))
                }
            };
            let diff = wh - wv;
            if diff.abs() >= CROSS_SEP {
                continue;
            }
            // Deepen one side; prefer the vertical wire's handle. Coupled
            // bumps can re-zero each other in lockstep, so the target
            // separation doubles each time the same cell clashes again.
            let count = clash_count.entry(cell).or_insert(0);
            let target = CROSS_SEP << (*count).min(12);
            *count += 1;
            let pick = if hv.is_some() {
                Some((hv.unwrap(), target - diff))
            } else {
                hh.map(|h| (h, target + diff))
            };
            match pick {
                Some((handle, delta)) => {
                    if std::env::var("DRSA_DEBUG_DEPTH").is_ok() {
                        eprintln!(
                            "round {}: crossing {:?} wh {} wv {} -> bump {:?} by {}",
                            round, cell, wh, wv, handle, delta
                        );
                    }
                    bump = Some((handle, delta.max(1)));
                    break;
                }
                None => {
                    return Err(CompileError::DepthSolve(format!(
                        "crossing {:?} has two unshiftable wires",
                        cell
                    )))
                }
            }
        }
        match bump {
            None => break,
            Some((Handle::Turn(cell), delta)) => {
                *gammas.get_mut(&cell).unwrap() += delta;
            }
            Some((Handle::ClausePair(ci), delta)) => {
                for slot in 0..2 {
                    let cell = layout.occ_splitters[ci][slot];
                    *gammas.get_mut(&cell).unwrap() += delta;
                }
            }
        }
        if round == 499 {
            return Err(CompileError::DepthSolve(
                "crossing separation did not converge".into(),
            ));
        }
    }
    let walked = walked.expect("walk ran");

    for (&cell, &g) in &gammas {
        if g > params.gamma_hi {
            return Err(CompileError::DepthSolve(format!(
                "splitter {:?} needs cascade {} above bound {}",
                cell, g, params.gamma_hi
            )));
        }
    }

    // Resolve per-cell specs at k = 0.
    let mut specs: BTreeMap<Cell, (TileSpec, Vec<PSrc>)> = BTreeMap::new();
    for (&cell, &role) in &layout.cells {
        let get = |side: Side| walked.incoming.get(&(cell, side_key(side))).copied();
        let right = get(Side::Right);
        let top = get(Side::Top);
        let spec_src = |label_src: Option<(i64, PSrc, Option<Handle>)>| -> PSrc {
            label_src.map(|(_, s, _)| s).unwrap_or(PSrc::Fixed(0))
        };
        let entry = match role {
            Role::Variable { .. } => (TileSpec::Variable { k: 0 }, vec![]),
            Role::Clause { .. } => {
                let (w, _, _) = top.ok_or_else(|| CompileError::DepthSolve("clause unfed".into()))?;
                (
                    TileSpec::Clause { w, beta: params.beta },
                    vec![spec_src(right), spec_src(top)],
                )
            }
            Role::ConnH => {
                let (w, _, _) = right.unwrap();
                (TileSpec::ConnH { w }, vec![spec_src(right)])
            }
            Role::ConnV => {
                let (w, _, _) = top.unwrap();
                (TileSpec::ConnV { w }, vec![spec_src(top)])
            }
            Role::Crossing => {
                let (wh, _, _) = right.unwrap();
                let (wv, _, _) = top.unwrap();
                (
                    TileSpec::Crossing { wh, wv },
                    vec![spec_src(right), spec_src(top)],
                )
            }
            Role::SplitterH { .. } => {
                let (w, _, _) = right.unwrap();
                (
                    TileSpec::SplitterH { w, gamma: gammas[&cell] },
                    vec![spec_src(right)],
                )
            }
            Role::SplitterV { .. } => {
                let (w, _, _) = top.unwrap();
                (
                    TileSpec::SplitterV { w, gamma: gammas[&cell] },
                    vec![spec_src(top)],
                )
            }
            Role::ElbowTL => {
                let (w, _, _) = top.unwrap();
                (TileSpec::ElbowTL { w }, vec![spec_src(top)])
            }
            Role::ElbowRB => {
                let (w, _, _) = right.unwrap();
                (TileSpec::ElbowRB { w }, vec![spec_src(right)])
            }
            Role::MergeH => {
                let (wr, _, _) = right.unwrap();
                let (wt, _, _) = top.unwrap();
                (
                    TileSpec::MergeH { w_top: wt, w_right: wr },
                    vec![spec_src(right), spec_src(top)],
                )
            }
            Role::MergeV => {
                let (wr, _, _) = right.unwrap();
                let (wt, _, _) = top.unwrap();
                (
                    TileSpec::MergeV { w_top: wt, w_right: wr },
                    vec![spec_src(right), spec_src(top)],
                )
            }
            Role::RootCell => {
                let (wr, _, _) = right.unwrap();
                let (wt, _, _) = top.unwrap();
                (
                    TileSpec::Root { w_top: wt, w_right: wr },
                    vec![spec_src(right), spec_src(top)],
                )
            }
        };
        specs.insert(cell, entry);
    }

    // Global depth shift: every terminal depth at least 1, and the root
    // junction at least 1.
    let mut min_rel = i64::MAX;
    for (spec, _) in specs.values() {
        match spec {
            TileSpec::Root { w_top, w_right } => {
                // The junction lands at min(inputs) - 3; the origin cascade
                // below the two run doubles needs depth for at least one
                // terminal.
                min_rel = min_rel.min(w_top.min(w_right) - 3 - 4);
            }
            other => {
                for (_, d) in other.terminals(params.alpha) {
                    min_rel = min_rel.min(d);
                }
            }
        }
    }
    let k_var = 1 - min_rel;

    // Emit cells sorted by (row, col) with shifted labels.
    let mut cells = Vec::new();
    let mut terminals: Vec<Terminal> = Vec::new();
    let tile = params.tile();
    let mut num_doubles = 0usize;
    let mut gammas_out = Vec::new();
    let mut by_row: Vec<(Cell, (TileSpec, Vec<PSrc>))> = specs.into_iter().collect();
    by_row.sort_by_key(|&((col, row), _)| (row, col));
    for ((col, row), (spec, psrc)) in by_row {
        let spec = shift_spec(&spec, k_var);
        num_doubles += doubles_of(&spec);
        if let TileSpec::SplitterH { gamma, .. } | TileSpec::SplitterV { gamma, .. } = spec {
            gammas_out.push(gamma);
        }
        let term_base = terminals.len();
        let origin = Point::new(col as i64 * tile, row as i64 * tile);
        for (p, d) in spec.terminals(params.alpha) {
            debug_assert!(d >= 1, "terminal depth {} below 1", d);
            terminals.push(Terminal {
                position: Point::new(origin.x + p.x, origin.y + p.y),
                depth: u32::try_from(d).expect("positive depth"),
            });
        }
        cells.push(GridCell {
            col,
            row,
            spec,
            psrc,
            term_base,
        });
    }

    let mut wires = walked.wires;
    for w in &mut wires {
        w.label += k_var;
    }
    wires.sort_by_key(|w| (w.from.1, w.from.0, w.from_side as u8));

    let grid = TileGrid {
        version: 1,
        num_vars: sat.num_vars,
        num_clauses: m,
        clauses: sat.clauses.iter().map(|&(a, b)| (a.0, b.0)).collect(),
        alpha: params.alpha,
        beta: params.beta,
        side: grid_side(sat.num_vars, m),
        k_var,
        cells,
        wires,
        gammas: gammas_out,
        num_doubles,
    };
    Ok((grid, Instance::new(terminals)))
}

fn shift_spec(spec: &TileSpec, k: i64) -> TileSpec {
    match *spec {
        TileSpec::ConnH { w } => TileSpec::ConnH { w: w + k },
        TileSpec::ConnV { w } => TileSpec::ConnV { w: w + k },
        TileSpec::Crossing { wh, wv } => TileSpec::Crossing { wh: wh + k, wv: wv + k },
        TileSpec::Variable { k: rel } => TileSpec::Variable { k: rel + k },
        TileSpec::Clause { w, beta } => TileSpec::Clause { w: w + k, beta },
        TileSpec::SplitterH { w, gamma } => TileSpec::SplitterH { w: w + k, gamma },
        TileSpec::SplitterV { w, gamma } => TileSpec::SplitterV { w: w + k, gamma },
        TileSpec::ElbowTL { w } => TileSpec::ElbowTL { w: w + k },
        TileSpec::ElbowRB { w } => TileSpec::ElbowRB { w: w + k },
        TileSpec::MergeH { w_top, w_right } => TileSpec::MergeH {
            w_top: w_top + k,
            w_right: w_right + k,
        },
        TileSpec::MergeV { w_top, w_right } => TileSpec::MergeV {
            w_top: w_top + k,
            w_right: w_right + k,
        },
        TileSpec::Root { w_top, w_right } => TileSpec::Root {
            w_top: w_top + k,
            w_right: w_right + k,
        },
    }
}
