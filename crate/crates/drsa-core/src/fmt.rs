//! Line-oriented text formats for instances and solutions.
//!
//! Instance (`DRSA 1`): one `t <x> <y> <depth>` line per terminal; `#`
//! starts a comment. Terminal ids are the 0-based order of the `t` lines.
//!
//! Solution (`SOL 1`): `n <id> <x> <y>` per vertex and `e <parent> <child>`
//! per edge, then `len <value>`. Terminals reuse their instance ids, the
//! root vertex is named `r`, and Steiner vertices get fresh ids (`s0`,
//! `s1`, ... when emitted by this crate).

use crate::geom::Point;
use crate::model::{Instance, Terminal};
use crate::solution::{EmbeddedSolution, NodeKind, SolNode};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        msg: msg.into(),
    }
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::from("DRSA 1\n");
    for t in &inst.terminals {
        let _ = writeln!(out, "t {} {} {}", t.position.x, t.position.y, t.depth);
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let (lno, header) = lines
        .next()
        .ok_or_else(|| err(0, "empty instance file"))?;
    if header.trim() != "DRSA 1" {
        return Err(err(lno, format!("expected header 'DRSA 1', got '{}'", header.trim())));
    }
    let mut terminals = Vec::new();
    for (lno, line) in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("t") => {
                let x = parse_num(parts.next(), lno, "x")?;
                let y = parse_num(parts.next(), lno, "y")?;
                let d: i64 = parse_num(parts.next(), lno, "depth")?;
                if d < 0 {
                    return Err(err(lno, "depth must be non-negative"));
                }
                if parts.next().is_some() {
                    return Err(err(lno, "trailing tokens on terminal line"));
                }
                terminals.push(Terminal::new(x, y, d as u32));
            }
            Some(other) => return Err(err(lno, format!("unknown record '{}'", other))),
            None => {}
        }
    }
    Ok(Instance::new(terminals))
}

pub fn write_solution(sol: &EmbeddedSolution) -> String {
    let mut out = String::from("SOL 1\n");
    // Stable ids: terminals by instance id, root as `r`, Steiner vertices
    // numbered in node order.
    let mut names: Vec<String> = Vec::with_capacity(sol.nodes.len());
    let mut steiner_count = 0usize;
    for node in &sol.nodes {
        names.push(match node.kind {
            NodeKind::Root => "r".to_string(),
            NodeKind::Terminal(t) => t.to_string(),
            NodeKind::Steiner => {
                let name = format!("s{}", steiner_count);
                steiner_count += 1;
                name
            }
        });
    }
    for (id, node) in sol.nodes.iter().enumerate() {
        let _ = writeln!(out, "n {} {} {}", names[id], node.position.x, node.position.y);
    }
    for (id, node) in sol.nodes.iter().enumerate() {
        for &c in &node.children {
            let _ = writeln!(out, "e {} {}", names[id], names[c]);
        }
    }
    let _ = writeln!(out, "len {}", sol.length);
    out
}

pub fn parse_solution(text: &str, inst: &Instance) -> Result<EmbeddedSolution, ParseError> {
    let mut lines = content_lines(text);
    let (lno, header) = lines
        .next()
        .ok_or_else(|| err(0, "empty solution file"))?;
    if header.trim() != "SOL 1" {
        return Err(err(lno, format!("expected header 'SOL 1', got '{}'", header.trim())));
    }
    let mut nodes: Vec<SolNode> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(String, String, usize)> = Vec::new();
    let mut length: Option<i64> = None;
    let mut root: Option<usize> = None;
    for (lno, line) in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("n") => {
                let id = parts
                    .next()
                    .ok_or_else(|| err(lno, "missing node id"))?
                    .to_string();
                let x = parse_num(parts.next(), lno, "x")?;
                let y = parse_num(parts.next(), lno, "y")?;
                if ids.contains_key(&id) {
                    return Err(err(lno, format!("duplicate node id '{}'", id)));
                }
                let kind = if id == "r" {
                    root = Some(nodes.len());
                    NodeKind::Root
                } else if let Ok(t) = id.parse::<usize>() {
                    if t < inst.terminals.len() {
                        NodeKind::Terminal(t)
                    } else {
                        NodeKind::Steiner
                    }
                } else {
                    NodeKind::Steiner
                };
                ids.insert(id, nodes.len());
                nodes.push(SolNode {
                    kind,
                    position: Point::new(x, y),
                    children: Vec::new(),
                });
            }
            Some("e") => {
                let a = parts.next().ok_or_else(|| err(lno, "missing edge parent"))?;
                let b = parts.next().ok_or_else(|| err(lno, "missing edge child"))?;
                edges.push((a.to_string(), b.to_string(), lno));
            }
            Some("len") => {
                length = Some(parse_num(parts.next(), lno, "length")?);
            }
            Some(other) => return Err(err(lno, format!("unknown record '{}'", other))),
            None => {}
        }
    }
    for (a, b, lno) in edges {
        let pa = *ids
            .get(&a)
            .ok_or_else(|| err(lno, format!("edge references unknown node '{}'", a)))?;
        let pb = *ids
            .get(&b)
            .ok_or_else(|| err(lno, format!("edge references unknown node '{}'", b)))?;
        nodes[pa].children.push(pb);
    }
    let root = root.ok_or_else(|| err(0, "solution has no root node 'r'"))?;
    Ok(EmbeddedSolution {
        nodes,
        root,
        length: length.ok_or_else(|| err(0, "solution has no 'len' record"))?,
    })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = match l.find('#') {
            Some(pos) => &l[..pos],
            None => l,
        };
        if l.trim().is_empty() {
            None
        } else {
            Some((i + 1, l))
        }
    })
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<i64, ParseError> {
    tok.ok_or_else(|| err(line, format!("missing {}", what)))?
        .parse()
        .map_err(|_| err(line, format!("invalid {}", what)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feas::trivial_solution;
    use crate::solution::verify_solution;

    #[test]
    fn instance_round_trip() {
        let inst = Instance::from_triples(&[(2, 0, 1), (0, 2, 1), (5, 7, 3)]);
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "DRSA 1\n# a comment\n\nt 1 2 1  # trailing\nt 3 4 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.terminals.len(), 2);
    }

    #[test]
    fn solution_round_trip_verifies() {
        let inst = Instance::from_triples(&[(2, 0, 1), (0, 2, 1)]);
        let sol = trivial_solution(&inst).unwrap();
        let text = write_solution(&sol);
        let back = parse_solution(&text, &inst).unwrap();
        assert!(verify_solution(&inst, &back).unwrap().ok());
        assert_eq!(back.length, sol.length);
    }

    #[test]
    fn bad_header_reports_line() {
        assert!(parse_instance("DRSA 2\n").is_err());
    }
}
