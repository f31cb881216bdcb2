//! Instance model and validation.
//!
//! An instance consists of a root pinned at the origin and a list of
//! terminals, each with an integer position in the first quadrant and a
//! required depth: the number of Steiner points on the root-terminal path of
//! any feasible arborescence.

use crate::geom::Point;

/// Index of a terminal within its instance.
pub type TermId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Terminal {
    pub position: Point,
    pub depth: u32,
}

impl Terminal {
    pub fn new(x: i64, y: i64, depth: u32) -> Self {
        Terminal {
            position: Point::new(x, y),
            depth,
        }
    }
}

/// A problem instance. The root is implicit at (0,0); terminal ids are the
/// indices into `terminals`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Instance {
    pub terminals: Vec<Terminal>,
}

impl Instance {
    pub fn new(terminals: Vec<Terminal>) -> Self {
        Instance { terminals }
    }

    pub fn from_triples(ts: &[(i64, i64, u32)]) -> Self {
        Instance {
            terminals: ts.iter().map(|&(x, y, d)| Terminal::new(x, y, d)).collect(),
        }
    }

    pub fn depths(&self) -> Vec<u32> {
        self.terminals.iter().map(|t| t.depth).collect()
    }

    /// Terminal positions plus the origin, the point set whose Hanan grid
    /// hosts all Steiner points of optimal solutions.
    pub fn hanan_points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = self.terminals.iter().map(|t| t.position).collect();
        pts.push(Point::ORIGIN);
        pts
    }
}

/// Stable identifiers for the conditions checked by validation and
/// verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Nonempty,
    FirstQuadrant,
    Degree,
    Leaf,
    Pinned,
    ShortestPath,
    Depth,
    Length,
}

impl Condition {
    pub fn id(&self) -> &'static str {
        match self {
            Condition::Nonempty => "nonempty",
            Condition::FirstQuadrant => "first-quadrant",
            Condition::Degree => "degree",
            Condition::Leaf => "leaf",
            Condition::Pinned => "pinned",
            Condition::ShortestPath => "shortest-path",
            Condition::Depth => "depth",
            Condition::Length => "length",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

/// Result of a validation pass: `ok` iff no violations.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, condition: Condition, detail: impl Into<String>) {
        self.violations.push(Violation {
            condition,
            detail: detail.into(),
        });
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok() {
            write!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "{}: {}", v.condition.id(), v.detail)?;
            }
            Ok(())
        }
    }
}

/// Checks the instance invariants: at least one terminal, every terminal in
/// the first quadrant, and no terminal sitting on the root with depth 0
/// unless it is the only terminal (such a terminal forces a zero-length
/// root edge that leaves no room for a binary tree over the rest).
pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let mut report = ValidationReport::default();
    if inst.terminals.is_empty() {
        report.push(Condition::Nonempty, "instance has no terminals");
        return report;
    }
    for (id, t) in inst.terminals.iter().enumerate() {
        if !t.position.in_first_quadrant() {
            report.push(
                Condition::FirstQuadrant,
                format!("terminal {} at {} outside the first quadrant", id, t.position),
            );
        }
        if t.position == Point::ORIGIN && t.depth == 0 && inst.terminals.len() > 1 {
            report.push(
                Condition::Depth,
                format!("terminal {} occupies the root with depth 0", id),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_two_terminal_instance() {
        let inst = Instance::from_triples(&[(2, 0, 1), (0, 2, 1)]);
        assert!(validate_instance(&inst).ok());
    }

    #[test]
    fn negative_coordinate_flagged() {
        let inst = Instance::from_triples(&[(-1, 3, 2)]);
        let rep = validate_instance(&inst);
        assert!(!rep.ok());
        assert_eq!(rep.violations[0].condition.id(), "first-quadrant");
    }

    #[test]
    fn empty_instance_flagged() {
        let rep = validate_instance(&Instance::default());
        assert!(!rep.ok());
        assert_eq!(rep.violations[0].condition.id(), "nonempty");
    }

    #[test]
    fn sole_origin_terminal_is_fine() {
        let inst = Instance::from_triples(&[(0, 0, 0)]);
        assert!(validate_instance(&inst).ok());
        let two = Instance::from_triples(&[(0, 0, 0), (1, 1, 1)]);
        assert!(!validate_instance(&two).ok());
    }
}
