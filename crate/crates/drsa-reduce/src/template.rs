//! Parametric tile templates.
//!
//! Every tile is a (4a+2) x (4a+2) square; terminals sit on the prototype
//! breakpoints {0, a, 2a, 2a+1, 2a+2, 3a+2, 4a+2}. Ports live mid-border:
//! outputs on the left/bottom, inputs on the right/top, each with a primary
//! position (the port terminal's spot) and a secondary position one unit
//! toward the tile center. A port's parity says which of the two hosts the
//! border Steiner point: 1 = primary, 0 = secondary.
//!
//! Wire depths are tracked as labels: a tile's input label is the depth of
//! its pinned input leaf, its output label the depth of the port terminal it
//! owns on that border (the border Steiner sits one above). Gluing matches
//! the producer's output label to the consumer's input label. Straight
//! connections shed 5 per tile; a splitter's cascade branch sheds 5 + gamma;
//! a clause sheds 5 + beta; merges shed 5 plus whatever their equalizer
//! cascades absorb.

use drsa_core::geom::Point;
use drsa_core::tile::{PortRole, Side, TilePort, TileProblem};
use serde::{Deserialize, Serialize};

/// Local breakpoint coordinates for tile scale `a`.
#[derive(Debug, Clone, Copy)]
pub struct Bp {
    pub a: i64,
}

#[allow(non_snake_case)]
impl Bp {
    pub fn new(alpha: i64) -> Bp {
        Bp { a: alpha }
    }
    pub fn A(&self) -> i64 {
        0
    }
    pub fn B(&self) -> i64 {
        self.a
    }
    pub fn C(&self) -> i64 {
        2 * self.a
    }
    pub fn D(&self) -> i64 {
        2 * self.a + 1
    }
    pub fn DD(&self) -> i64 {
        2 * self.a + 2
    }
    pub fn E(&self) -> i64 {
        3 * self.a + 2
    }
    pub fn F(&self) -> i64 {
        4 * self.a + 2
    }

    /// (primary, secondary) port positions for a side.
    pub fn port(&self, side: Side) -> (Point, Point) {
        match side {
            Side::Left => (Point::new(self.A(), self.D()), Point::new(self.A(), self.C())),
            Side::Bottom => (Point::new(self.D(), self.A()), Point::new(self.C(), self.A())),
            Side::Right => (Point::new(self.F(), self.D()), Point::new(self.F(), self.C())),
            Side::Top => (Point::new(self.D(), self.F()), Point::new(self.C(), self.F())),
        }
    }
}

/// Resolved tile content for one grid cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TileSpec {
    /// Horizontal connection: input right, output left.
    ConnH { w: i64 },
    /// Vertical connection: input top, output bottom.
    ConnV { w: i64 },
    /// Independent horizontal and vertical connections in one cell.
    Crossing { wh: i64, wv: i64 },
    /// Variable gadget: outputs left (positive literal) and bottom
    /// (negated literal).
    Variable { k: i64 },
    /// Clause gadget: inputs right and top at equal depth, output bottom.
    Clause { w: i64, beta: i64 },
    /// Splitter, input right: straight output left, cascade branch bottom.
    SplitterH { w: i64, gamma: i64 },
    /// Splitter, input top: straight output bottom, cascade branch left.
    SplitterV { w: i64, gamma: i64 },
    /// Corner: input top, output left.
    ElbowTL { w: i64 },
    /// Corner: input right, output bottom.
    ElbowRB { w: i64 },
    /// Bus merge: inputs top and right, output left.
    MergeH { w_top: i64, w_right: i64 },
    /// Bus merge: inputs top and right, output bottom.
    MergeV { w_top: i64, w_right: i64 },
    /// Root cell: inputs top and right, chained into the root at the
    /// origin through the root cascade.
    Root { w_top: i64, w_right: i64 },
}

pub use TileSpec::*;

fn transpose_terms(terms: Vec<(Point, i64)>) -> Vec<(Point, i64)> {
    terms
        .into_iter()
        .map(|(p, d)| (Point::new(p.y, p.x), d))
        .collect()
}

impl TileSpec {
    /// Merge output label: the shallower input shifted by the base shed.
    pub fn merge_out(w_top: i64, w_right: i64) -> i64 {
        w_top.min(w_right) - 5
    }

    /// Root-cell junction depth.
    pub fn root_junction(w_top: i64, w_right: i64) -> i64 {
        w_top.min(w_right) - 3
    }

    /// Tile terminals in template order (local coordinates).
    pub fn terminals(&self, alpha: i64) -> Vec<(Point, i64)> {
        let bp = Bp::new(alpha);
        let (a, b, c, d, dd, e) = (bp.A(), bp.B(), bp.C(), bp.D(), bp.DD(), bp.E());
        match *self {
            ConnH { w } => vec![
                (Point::new(a, d), w - 5),
                (Point::new(b, d), w - 4),
                (Point::new(b, d), w - 3),
                (Point::new(d, d), w - 2),
                (Point::new(e, d), w - 1),
                (Point::new(e, d), w),
            ],
            ConnV { w } => transpose_terms(ConnH { w }.terminals(alpha)),
            Crossing { wh, wv } => {
                let mut t = ConnH { w: wh }.terminals(alpha);
                t.extend(ConnV { w: wv }.terminals(alpha));
                t
            }
            Variable { k } => vec![
                (Point::new(a, d), k - 3),
                (Point::new(d, a), k - 3),
                (Point::new(b, d), k - 2),
                (Point::new(b, d), k - 1),
                (Point::new(d, b), k - 2),
                (Point::new(d, b), k - 1),
                (Point::new(c, c), k),
                (Point::new(d, c), k),
                (Point::new(c, d), k),
                (Point::new(d, d), k),
            ],
            Clause { w, beta } => {
                let mut t = vec![
                    (Point::new(d, a), w - beta - 5),
                    (Point::new(d, b), w - beta - 4),
                    (Point::new(d, b), w - beta - 3),
                ];
                for i in 0..beta {
                    t.push((Point::new(c, c), w - beta - 1 + i));
                }
                for i in 0..beta {
                    t.push((Point::new(d, d), w - beta - 1 + i));
                }
                t.extend([
                    (Point::new(e, d), w - 1),
                    (Point::new(e, d), w),
                    (Point::new(d, e), w - 1),
                    (Point::new(d, e), w),
                ]);
                t
            }
            SplitterH { w, gamma } => {
                let mut t = vec![
                    (Point::new(a, d), w - 5),
                    (Point::new(d, a), w - gamma - 5),
                    (Point::new(b, d), w - 4),
                    (Point::new(b, d), w - 3),
                    (Point::new(d, b), w - gamma - 4),
                    (Point::new(d, b), w - gamma - 3),
                    (Point::new(c, dd), w - 2),
                    (Point::new(c, dd), w - 2),
                ];
                for i in 0..gamma {
                    t.push((Point::new(d, dd), w - gamma - 2 + i));
                }
                t.extend([
                    (Point::new(e, d), w - 2),
                    (Point::new(e, d), w - 1),
                    (Point::new(e, d), w),
                ]);
                t
            }
            SplitterV { w, gamma } => transpose_terms(SplitterH { w, gamma }.terminals(alpha)),
            ElbowTL { w } => vec![
                (Point::new(a, d), w - 5),
                (Point::new(b, d), w - 4),
                (Point::new(b, d), w - 3),
                (Point::new(d, d), w - 2),
                (Point::new(d, e), w - 1),
                (Point::new(d, e), w),
            ],
            ElbowRB { w } => transpose_terms(ElbowTL { w }.terminals(alpha)),
            MergeH { w_top, w_right } => {
                let w_out = Self::merge_out(w_top, w_right);
                let mut t = vec![
                    (Point::new(a, d), w_out),
                    (Point::new(b, d), w_out + 1),
                    (Point::new(b, d), w_out + 2),
                ];
                t.extend(merge_branch_terms(bp, w_out + 2, w_top, w_right));
                t
            }
            MergeV { w_top, w_right } => {
                let w_out = Self::merge_out(w_top, w_right);
                let mut t = vec![
                    (Point::new(d, a), w_out),
                    (Point::new(d, b), w_out + 1),
                    (Point::new(d, b), w_out + 2),
                ];
                t.extend(merge_branch_terms(bp, w_out + 2, w_top, w_right));
                t
            }
            Root { w_top, w_right } => {
                // Root cascade at the origin, then two double terminals on
                // the diagonal run to the junction so the run's length is
                // carried by double-terminal accounting like every other
                // tile.
                let d_j = Self::root_junction(w_top, w_right);
                assert!(d_j >= 5, "root junction too shallow: {}", d_j);
                let mut t = Vec::new();
                for i in 0..d_j - 4 {
                    t.push((Point::new(a, a), 1 + i));
                }
                t.push((Point::new(b, b), d_j - 3));
                t.push((Point::new(b, b), d_j - 2));
                t.push((Point::new(c, c), d_j - 1));
                t.push((Point::new(c, c), d_j));
                t.extend(merge_branch_terms(bp, d_j, w_top, w_right));
                t
            }
        }
    }

    /// Input ports as (side, label); right before top.
    pub fn inputs(&self) -> Vec<(Side, i64)> {
        match *self {
            ConnH { w } | SplitterH { w, .. } | ElbowRB { w } => vec![(Side::Right, w)],
            ConnV { w } | SplitterV { w, .. } | ElbowTL { w } => vec![(Side::Top, w)],
            Crossing { wh, wv } => vec![(Side::Right, wh), (Side::Top, wv)],
            Variable { .. } => vec![],
            Clause { w, .. } => vec![(Side::Right, w), (Side::Top, w)],
            MergeH { w_top, w_right } | MergeV { w_top, w_right } | Root { w_top, w_right } => {
                vec![(Side::Right, w_right), (Side::Top, w_top)]
            }
        }
    }

    /// Output ports as (side, label); left before bottom.
    pub fn outputs(&self) -> Vec<(Side, i64)> {
        match *self {
            ConnH { w } | ElbowTL { w } => vec![(Side::Left, w - 5)],
            ConnV { w } | ElbowRB { w } => vec![(Side::Bottom, w - 5)],
            Crossing { wh, wv } => vec![(Side::Left, wh - 5), (Side::Bottom, wv - 5)],
            Variable { k } => vec![(Side::Left, k - 3), (Side::Bottom, k - 3)],
            Clause { w, beta } => vec![(Side::Bottom, w - beta - 5)],
            SplitterH { w, gamma } => vec![(Side::Left, w - 5), (Side::Bottom, w - gamma - 5)],
            SplitterV { w, gamma } => vec![(Side::Left, w - gamma - 5), (Side::Bottom, w - 5)],
            MergeH { w_top, w_right } => vec![(Side::Left, Self::merge_out(w_top, w_right))],
            MergeV { w_top, w_right } => vec![(Side::Bottom, Self::merge_out(w_top, w_right))],
            Root { .. } => vec![],
        }
    }

    pub fn output_label(&self, side: Side) -> Option<i64> {
        self.outputs()
            .into_iter()
            .find(|&(s, _)| s == side)
            .map(|(_, w)| w)
    }

    pub fn is_root(&self) -> bool {
        matches!(self, Root { .. })
    }

    /// Cascade sizes used by this tile (for probing and reporting).
    pub fn cascade_sizes(&self) -> Vec<i64> {
        match *self {
            SplitterH { gamma, .. } | SplitterV { gamma, .. } => vec![gamma],
            Clause { beta, .. } => vec![beta, beta],
            MergeH { w_top, w_right } | MergeV { w_top, w_right } => {
                let w_out = Self::merge_out(w_top, w_right);
                vec![w_top - w_out - 5, w_right - w_out - 5]
            }
            Root { w_top, w_right } => {
                let d_j = Self::root_junction(w_top, w_right);
                vec![d_j - 4, w_top - d_j - 3, w_right - d_j - 3]
            }
            _ => vec![],
        }
    }

    /// DP problem for given input parities (aligned with [`Self::inputs`])
    /// and optional output parity pins (aligned with [`Self::outputs`]).
    pub fn tile_problem(
        &self,
        alpha: i64,
        in_parities: &[u8],
        out_pins: &[Option<u8>],
    ) -> TileProblem {
        let bp = Bp::new(alpha);
        let inputs = self.inputs();
        let outputs = self.outputs();
        assert_eq!(in_parities.len(), inputs.len());
        assert_eq!(out_pins.len(), outputs.len());
        let mut ports = Vec::new();
        for ((side, label), pin) in outputs.into_iter().zip(out_pins) {
            let (primary, secondary) = bp.port(side);
            ports.push(TilePort {
                role: PortRole::Output,
                side,
                primary,
                secondary,
                depth: label,
                parity: *pin,
            });
        }
        for ((side, label), parity) in inputs.into_iter().zip(in_parities) {
            let (primary, secondary) = bp.port(side);
            ports.push(TilePort {
                role: PortRole::Input,
                side,
                primary,
                secondary,
                depth: label,
                parity: Some(*parity),
            });
        }
        let root_attach = if self.is_root() {
            Some((Point::ORIGIN, 0))
        } else {
            None
        };
        TileProblem {
            terminals: self.terminals(alpha),
            ports,
            root_attach,
        }
    }

    /// Same tile with all cascade sizes replaced (probe scale for the DP).
    pub fn with_cascades(&self, sizes: &[i64]) -> TileSpec {
        match *self {
            SplitterH { w, .. } => SplitterH {
                w,
                gamma: sizes[0],
            },
            SplitterV { w, .. } => SplitterV {
                w,
                gamma: sizes[0],
            },
            Clause { w, .. } => Clause {
                w,
                beta: sizes[0],
            },
            MergeH { w_top, w_right } => {
                // Keep the deeper/shallower relation; rebuild labels from
                // probe cascade sizes around a fixed output label.
                let w_out = Self::merge_out(w_top, w_right);
                MergeH {
                    w_top: w_out + 5 + sizes[0],
                    w_right: w_out + 5 + sizes[1],
                }
            }
            MergeV { w_top, w_right } => {
                let w_out = Self::merge_out(w_top, w_right);
                MergeV {
                    w_top: w_out + 5 + sizes[0],
                    w_right: w_out + 5 + sizes[1],
                }
            }
            Root { .. } => Root {
                w_top: sizes[0] + 4 + 3 + sizes[1],
                w_right: sizes[0] + 4 + 3 + sizes[2],
            },
            ref other => (*other).clone(),
        }
    }
}

/// Shared input-branch terminals of merge and root cells: two equalizer
/// cascades plus the port doubles. `junction` is the depth of the vertex
/// where the two branches meet.
fn merge_branch_terms(bp: Bp, junction: i64, w_top: i64, w_right: i64) -> Vec<(Point, i64)> {
    let c_top = w_top - junction - 3;
    let c_right = w_right - junction - 3;
    assert!(c_top >= 0 && c_right >= 0, "branch cascade sizes negative");
    let mut t = Vec::new();
    for i in 0..c_top {
        t.push((Point::new(bp.C(), bp.DD()), junction + 2 + i));
    }
    for i in 0..c_right {
        t.push((Point::new(bp.DD(), bp.C()), junction + 2 + i));
    }
    t.extend([
        (Point::new(bp.D(), bp.E()), w_top - 1),
        (Point::new(bp.D(), bp.E()), w_top),
        (Point::new(bp.E(), bp.D()), w_right - 1),
        (Point::new(bp.E(), bp.D()), w_right),
    ]);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_check::dyadic_ok;

    /// Dyadic feasibility of a tile's leaf multiset against its roots:
    /// sum over leaves of 2^-d must equal sum over roots of 2^-(label-1)
    /// (or 2^0 for the root cell).
    mod num_check {
        pub fn dyadic_ok(leaves: &[i64], roots: &[i64]) -> bool {
            let min = leaves
                .iter()
                .chain(roots.iter())
                .copied()
                .min()
                .unwrap_or(0);
            let max = leaves
                .iter()
                .chain(roots.iter())
                .copied()
                .max()
                .unwrap_or(0);
            if max - min > 100 {
                return false;
            }
            let mass = |d: i64| 1u128 << (max - d) as u32;
            let lhs: u128 = leaves.iter().map(|&d| mass(d)).sum();
            let rhs: u128 = roots.iter().map(|&d| mass(d)).sum();
            lhs == rhs
        }
    }

    fn leaf_depths(spec: &TileSpec, alpha: i64) -> Vec<i64> {
        let mut ds: Vec<i64> = spec
            .terminals(alpha)
            .iter()
            .map(|&(_, d)| d)
            .collect();
        ds.extend(spec.inputs().iter().map(|&(_, w)| w));
        ds
    }

    fn root_depths(spec: &TileSpec) -> Vec<i64> {
        if spec.is_root() {
            vec![0]
        } else {
            spec.outputs().iter().map(|&(_, w)| w - 1).collect()
        }
    }

    #[test]
    fn all_tiles_are_dyadically_balanced() {
        let specs = vec![
            ConnH { w: 50 },
            ConnV { w: 50 },
            Crossing { wh: 50, wv: 30 },
            Variable { k: 50 },
            Clause { w: 50, beta: 4 },
            SplitterH { w: 50, gamma: 5 },
            SplitterV { w: 50, gamma: 5 },
            ElbowTL { w: 50 },
            ElbowRB { w: 50 },
            MergeH {
                w_top: 50,
                w_right: 40,
            },
            MergeV {
                w_top: 40,
                w_right: 50,
            },
            Root {
                w_top: 20,
                w_right: 24,
            },
        ];
        for spec in specs {
            assert!(
                dyadic_ok(&leaf_depths(&spec, 8), &root_depths(&spec)),
                "unbalanced: {:?}",
                spec
            );
        }
    }

    #[test]
    fn terminals_fit_in_the_tile() {
        let alpha = 8;
        let side = 4 * alpha + 2;
        for spec in [
            ConnH { w: 50 },
            Variable { k: 50 },
            Clause { w: 50, beta: 4 },
            SplitterH { w: 50, gamma: 5 },
            MergeH {
                w_top: 50,
                w_right: 44,
            },
            Root {
                w_top: 20,
                w_right: 20,
            },
        ] {
            for (p, _) in spec.terminals(alpha) {
                assert!(p.x >= 0 && p.x <= side && p.y >= 0 && p.y <= side);
            }
        }
    }

    #[test]
    fn splitter_sheds_are_consistent() {
        let s = SplitterH { w: 50, gamma: 5 };
        assert_eq!(
            s.outputs(),
            vec![(Side::Left, 45), (Side::Bottom, 40)]
        );
        let v = SplitterV { w: 50, gamma: 5 };
        assert_eq!(
            v.outputs(),
            vec![(Side::Left, 40), (Side::Bottom, 45)]
        );
    }
}
