//! Max-2-Sat instances and DIMACS CNF parsing.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A literal: positive `v+1` or negative `-(v+1)` for 0-based variable `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lit(pub i32);

impl Lit {
    pub fn positive(var: usize) -> Lit {
        Lit(var as i32 + 1)
    }

    pub fn negative(var: usize) -> Lit {
        Lit(-(var as i32 + 1))
    }

    pub fn var(&self) -> usize {
        (self.0.unsigned_abs() as usize) - 1
    }

    pub fn is_positive(&self) -> bool {
        self.0 > 0
    }

    /// Truth value under an assignment.
    pub fn value(&self, assignment: &[bool]) -> bool {
        let v = assignment[self.var()];
        if self.is_positive() {
            v
        } else {
            !v
        }
    }
}

impl std::fmt::Display for Lit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A clause of exactly two literals.
pub type Clause = (Lit, Lit);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Max2SatInstance {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
}

impl Max2SatInstance {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Self {
        Max2SatInstance { num_vars, clauses }
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Number of clauses satisfied by `assignment`.
    pub fn satisfied(&self, assignment: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|(a, b)| a.value(assignment) || b.value(assignment))
            .count()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("not 2-CNF: clause on line {line} has {width} literals")]
    NotTwoCnf { line: usize, width: usize },
    #[error("missing 'p cnf' header")]
    MissingHeader,
}

/// Parses DIMACS CNF text, requiring every clause to have exactly two
/// literals. Clause order is preserved.
pub fn parse_dimacs(text: &str) -> Result<Max2SatInstance, DimacsError> {
    let mut num_vars: Option<usize> = None;
    let mut declared_clauses = 0usize;
    let mut clauses = Vec::new();
    for (lno, raw) in text.lines().enumerate() {
        let line = lno + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        if l.starts_with('p') {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 4 || toks[1] != "cnf" {
                return Err(DimacsError::Line {
                    line,
                    msg: format!("malformed problem line '{}'", l),
                });
            }
            num_vars = Some(toks[2].parse().map_err(|_| DimacsError::Line {
                line,
                msg: "invalid variable count".into(),
            })?);
            declared_clauses = toks[3].parse().map_err(|_| DimacsError::Line {
                line,
                msg: "invalid clause count".into(),
            })?;
            continue;
        }
        let n = num_vars.ok_or(DimacsError::MissingHeader)?;
        let mut lits = Vec::new();
        for tok in l.split_whitespace() {
            let v: i32 = tok.parse().map_err(|_| DimacsError::Line {
                line,
                msg: format!("invalid literal '{}'", tok),
            })?;
            if v == 0 {
                break;
            }
            if v.unsigned_abs() as usize > n {
                return Err(DimacsError::Line {
                    line,
                    msg: format!("literal {} out of range (n={})", v, n),
                });
            }
            lits.push(Lit(v));
        }
        if lits.len() != 2 {
            return Err(DimacsError::NotTwoCnf {
                line,
                width: lits.len(),
            });
        }
        clauses.push((lits[0], lits[1]));
    }
    let num_vars = num_vars.ok_or(DimacsError::MissingHeader)?;
    let _ = declared_clauses; // informative only; the clause list is authoritative
    Ok(Max2SatInstance { num_vars, clauses })
}

pub fn write_dimacs(inst: &Max2SatInstance) -> String {
    let mut out = format!("p cnf {} {}\n", inst.num_vars, inst.clauses.len());
    for (a, b) in &inst.clauses {
        out.push_str(&format!("{} {} 0\n", a, b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_clause_instance() {
        let inst = parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n").unwrap();
        assert_eq!(inst.num_vars, 2);
        assert_eq!(
            inst.clauses,
            vec![(Lit(1), Lit(2)), (Lit(-1), Lit(2))]
        );
    }

    #[test]
    fn rejects_wider_clauses() {
        let err = parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap_err();
        assert!(matches!(err, DimacsError::NotTwoCnf { width: 3, .. }));
    }

    #[test]
    fn five_clause_example() {
        let text = "c example\np cnf 3 5\n1 2 0\n1 -2 0\n-1 2 0\n-1 3 0\n-2 -3 0\n";
        let inst = parse_dimacs(text).unwrap();
        assert_eq!(inst.num_vars, 3);
        assert_eq!(inst.num_clauses(), 5);
    }
}
