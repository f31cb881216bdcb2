//! Deterministic SVG rendering of instances, solutions and tile grids.
//!
//! Terminals draw as filled squares, double terminals as nested squares,
//! longer cascades as rhombs, Steiner points as dots and edges as
//! orthogonal polylines (horizontal leg first). Geometry is emitted in
//! problem coordinates inside a scaled viewport, so output bytes depend
//! only on the inputs and options. Coincident Steiner markers fan out on a
//! small pixel ring; the underlying geometry is never perturbed.

use drsa_core::geom::Point;
use drsa_core::model::Instance;
use drsa_core::solution::{EmbeddedSolution, NodeKind};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy)]
pub struct Layers {
    pub terminals: bool,
    pub steiner: bool,
    pub edges: bool,
    pub tile_borders: bool,
    pub depth_labels: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Layers {
            terminals: true,
            steiner: true,
            edges: true,
            tile_borders: true,
            depth_labels: false,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    /// Pixels per grid unit.
    pub scale: f64,
    pub layers: Layers,
    /// Explicit viewport (x, y, width, height) in grid units; the default
    /// covers everything drawn with a margin.
    pub viewport: Option<(i64, i64, i64, i64)>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 4.0,
            layers: Layers::default(),
            viewport: None,
        }
    }
}

/// Tile-grid overlay: cells of `tile` units per side on a `side x side`
/// board.
#[derive(Debug, Clone, Copy)]
pub struct GridInfo {
    pub side: usize,
    pub tile: i64,
}

pub fn render_svg(
    inst: &Instance,
    sol: Option<&EmbeddedSolution>,
    grid: Option<GridInfo>,
    opts: &RenderOptions,
) -> String {
    assert!(opts.scale > 0.0, "scale must be positive");
    let mut xs: Vec<i64> = vec![0];
    let mut ys: Vec<i64> = vec![0];
    for t in &inst.terminals {
        xs.push(t.position.x);
        ys.push(t.position.y);
    }
    if let Some(sol) = sol {
        for n in &sol.nodes {
            xs.push(n.position.x);
            ys.push(n.position.y);
        }
    }
    if let Some(g) = grid {
        xs.push(g.side as i64 * g.tile);
        ys.push(g.side as i64 * g.tile);
    }
    let (x0, y0, w, h) = opts.viewport.unwrap_or_else(|| {
        let (min_x, max_x) = (xs.iter().min().unwrap(), xs.iter().max().unwrap());
        let (min_y, max_y) = (ys.iter().min().unwrap(), ys.iter().max().unwrap());
        let margin = ((max_x - min_x).max(max_y - min_y) / 20).max(2);
        (
            min_x - margin,
            min_y - margin,
            (max_x - min_x) + 2 * margin,
            (max_y - min_y) + 2 * margin,
        )
    });
    let px_w = (w as f64 * opts.scale).ceil() as i64;
    let px_h = (h as f64 * opts.scale).ceil() as i64;
    // Flip the y axis so larger y draws upward.
    let fy = |y: i64| y0 + h - (y - y0);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        px_w, px_h, x0, y0, w, h
    );
    let marker = (w.max(h) as f64 / 160.0).max(0.4);
    let stroke = marker / 3.0;

    if let (Some(g), true) = (grid, opts.layers.tile_borders) {
        let _ = writeln!(out, "<g stroke=\"#bbbbbb\" stroke-width=\"{:.4}\" fill=\"none\">", stroke);
        for i in 0..=g.side {
            let c = i as i64 * g.tile;
            let span = g.side as i64 * g.tile;
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                c,
                fy(0),
                c,
                fy(span)
            );
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                0,
                fy(c),
                span,
                fy(c)
            );
        }
        let _ = writeln!(out, "</g>");
    }

    if let (Some(sol), true) = (sol, opts.layers.edges) {
        let _ = writeln!(
            out,
            "<g stroke=\"#1f4e9c\" stroke-width=\"{:.4}\" fill=\"none\" stroke-linecap=\"round\">",
            stroke * 2.0
        );
        for node in &sol.nodes {
            for &c in &node.children {
                let a = node.position;
                let b = sol.nodes[c].position;
                // Orthogonal route, horizontal leg first.
                if a.x != b.x && a.y != b.y {
                    let _ = writeln!(
                        out,
                        "<polyline points=\"{},{} {},{} {},{}\"/>",
                        a.x,
                        fy(a.y),
                        b.x,
                        fy(a.y),
                        b.x,
                        fy(b.y)
                    );
                } else if a != b {
                    let _ = writeln!(
                        out,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                        a.x,
                        fy(a.y),
                        b.x,
                        fy(b.y)
                    );
                }
            }
        }
        let _ = writeln!(out, "</g>");
    }

    if opts.layers.terminals {
        // Group coincident terminals: 1 = square, 2 = nested squares,
        // 3+ = rhomb (a cascade).
        let mut groups: BTreeMap<Point, usize> = BTreeMap::new();
        for t in &inst.terminals {
            *groups.entry(t.position).or_insert(0) += 1;
        }
        let _ = writeln!(out, "<g fill=\"#111111\" stroke=\"none\">");
        let _ = writeln!(
            out,
            "<rect x=\"{:.4}\" y=\"{:.4}\" width=\"{:.4}\" height=\"{:.4}\" fill=\"#b02020\"/>",
            -marker,
            fy(0) as f64 - marker,
            marker * 2.0,
            marker * 2.0
        );
        for (&p, &count) in &groups {
            let (cx, cy) = (p.x as f64, fy(p.y) as f64);
            if count >= 3 {
                let m = marker * 1.4;
                let _ = writeln!(
                    out,
                    "<polygon points=\"{:.4},{:.4} {:.4},{:.4} {:.4},{:.4} {:.4},{:.4}\"/>",
                    cx,
                    cy - m,
                    cx + m,
                    cy,
                    cx,
                    cy + m,
                    cx - m,
                    cy
                );
            } else if count == 2 {
                let _ = writeln!(
                    out,
                    "<rect x=\"{:.4}\" y=\"{:.4}\" width=\"{:.4}\" height=\"{:.4}\"/>",
                    cx - marker,
                    cy - marker,
                    marker * 2.0,
                    marker * 2.0
                );
                let _ = writeln!(
                    out,
                    "<rect x=\"{:.4}\" y=\"{:.4}\" width=\"{:.4}\" height=\"{:.4}\" fill=\"none\" stroke=\"#ffffff\" stroke-width=\"{:.4}\"/>",
                    cx - marker * 0.5,
                    cy - marker * 0.5,
                    marker,
                    marker,
                    stroke
                );
            } else {
                let _ = writeln!(
                    out,
                    "<rect x=\"{:.4}\" y=\"{:.4}\" width=\"{:.4}\" height=\"{:.4}\"/>",
                    cx - marker,
                    cy - marker,
                    marker * 2.0,
                    marker * 2.0
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }

    if let (Some(sol), true) = (sol, opts.layers.steiner) {
        let _ = writeln!(out, "<g fill=\"#1f4e9c\">");
        let mut seen: BTreeMap<Point, usize> = BTreeMap::new();
        for node in &sol.nodes {
            if !matches!(node.kind, NodeKind::Steiner) {
                continue;
            }
            let stack = seen.entry(node.position).or_insert(0);
            // Coincident markers fan out on a small ring; the geometry
            // itself is untouched.
            let (dx, dy) = ring_offset(*stack, marker * 0.5);
            *stack += 1;
            let _ = writeln!(
                out,
                "<circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"{:.4}\"/>",
                node.position.x as f64 + dx,
                fy(node.position.y) as f64 + dy,
                marker * 0.6
            );
        }
        let _ = writeln!(out, "</g>");
    }

    if opts.layers.depth_labels {
        let _ = writeln!(
            out,
            "<g font-size=\"{:.4}\" fill=\"#333333\" font-family=\"monospace\">",
            marker * 2.5
        );
        for t in &inst.terminals {
            let _ = writeln!(
                out,
                "<text x=\"{:.4}\" y=\"{:.4}\">{}</text>",
                t.position.x as f64 + marker,
                fy(t.position.y) as f64 - marker,
                t.depth
            );
        }
        let _ = writeln!(out, "</g>");
    }

    out.push_str("</svg>\n");
    out
}

fn ring_offset(stack: usize, radius: f64) -> (f64, f64) {
    match stack {
        0 => (0.0, 0.0),
        n => {
            // Eight fixed compass offsets, then grow the ring.
            let dirs = [
                (1.0, 0.0),
                (0.0, 1.0),
                (-1.0, 0.0),
                (0.0, -1.0),
                (0.7, 0.7),
                (-0.7, 0.7),
                (-0.7, -0.7),
                (0.7, -0.7),
            ];
            let (dx, dy) = dirs[(n - 1) % 8];
            let r = radius * (1.0 + ((n - 1) / 8) as f64 * 0.5);
            (dx * r, dy * r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use drsa_core::feas::trivial_solution;

    #[test]
    fn renders_markers_for_each_terminal_and_root() {
        let inst = Instance::from_triples(&[(2, 0, 1), (0, 2, 1)]);
        let svg = render_svg(&inst, None, None, &RenderOptions::default());
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<rect").count(), 3); // root + 2 terminals
    }

    #[test]
    fn byte_deterministic() {
        let inst = Instance::from_triples(&[(2, 0, 2), (0, 2, 2), (3, 3, 2), (3, 1, 2)]);
        let sol = trivial_solution(&inst).unwrap();
        let a = render_svg(&inst, Some(&sol), None, &RenderOptions::default());
        let b = render_svg(&inst, Some(&sol), None, &RenderOptions::default());
        assert_eq!(a, b);
    }

    #[test]
    fn edges_are_axis_parallel() {
        let inst = Instance::from_triples(&[(2, 3, 1), (4, 1, 1)]);
        let sol = trivial_solution(&inst).unwrap();
        let svg = render_svg(&inst, Some(&sol), None, &RenderOptions::default());
        for line in svg.lines().filter(|l| l.starts_with("<polyline")) {
            let pts: Vec<(f64, f64)> = line
                .split('"')
                .nth(1)
                .unwrap()
                .split(' ')
                .map(|p| {
                    let mut it = p.split(',');
                    (
                        it.next().unwrap().parse().unwrap(),
                        it.next().unwrap().parse().unwrap(),
                    )
                })
                .collect();
            for pair in pts.windows(2) {
                assert!(pair[0].0 == pair[1].0 || pair[0].1 == pair[1].1);
            }
        }
    }
}
