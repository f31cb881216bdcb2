//! Cell-level layout of a reduction.
//!
//! Clauses sit on the diagonal at (i+1, i+1), variable j at
//! (m+2j+2, m+2j+2) (0-based j). A variable's positive literal leaves to
//! the left along its row, the negated literal downward along its column.
//! A clause receives its first literal from above (its column) and its
//! second from the right (its row). Occurrence splitters branch a literal
//! rail toward its clause; a turn splitter starts the perpendicular second
//! rail when the literal has occurrences in the other slot. Leftover rail
//! ends and clause outputs run to the buses in column 0 and row 0, which
//! merge everything into the root cell at (0,0).

use crate::dimacs::{Lit, Max2SatInstance};
use std::collections::BTreeMap;
use thiserror::Error;

pub type Cell = (usize, usize); // (col, row)

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    /// Branch drops toward a clause input; `slot` 0 means the clause's
    /// first literal (top input), 1 the second (right input).
    Occ { clause: usize, slot: u8 },
    /// Branch starts the literal's perpendicular rail.
    Turn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Variable { var: usize },
    Clause { clause: usize },
    /// Input right; straight output left; branch output bottom.
    SplitterH { lit: Lit, branch: BranchKind },
    /// Input top; straight output bottom; branch output left.
    SplitterV { lit: Lit, branch: BranchKind },
    ConnH,
    ConnV,
    Crossing,
    ElbowTL,
    ElbowRB,
    MergeH,
    MergeV,
    RootCell,
}

#[derive(Debug, Clone)]
pub struct Layout {
    pub side: usize,
    pub cells: BTreeMap<Cell, Role>,
    /// Occurrence-splitter cell per (clause, slot).
    pub occ_splitters: Vec<[Cell; 2]>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LayoutError {
    #[error("cell ({0}, {1}) used twice")]
    Collision(usize, usize),
    #[error("instance has no clauses or no variables")]
    Empty,
}

struct Builder {
    anchors: BTreeMap<Cell, Role>,
    h_marks: BTreeMap<Cell, ()>,
    v_marks: BTreeMap<Cell, ()>,
}

impl Builder {
    fn anchor(&mut self, cell: Cell, role: Role) -> Result<(), LayoutError> {
        if self.anchors.insert(cell, role).is_some() {
            return Err(LayoutError::Collision(cell.0, cell.1));
        }
        Ok(())
    }
    fn mark_h(&mut self, cell: Cell) {
        self.h_marks.insert(cell, ());
    }
    fn mark_v(&mut self, cell: Cell) {
        self.v_marks.insert(cell, ());
    }
}

pub fn build_layout(sat: &Max2SatInstance) -> Result<Layout, LayoutError> {
    let n = sat.num_vars;
    let m = sat.clauses.len();
    if n == 0 || m == 0 {
        return Err(LayoutError::Empty);
    }
    let side = 1 + m + 2 * n;
    let mut b = Builder {
        anchors: BTreeMap::new(),
        h_marks: BTreeMap::new(),
        v_marks: BTreeMap::new(),
    };
    let mut occ_splitters = vec![[(usize::MAX, usize::MAX); 2]; m];
    let mut col0_entries: Vec<usize> = Vec::new(); // rows entering the left bus
    let mut row0_entries: Vec<usize> = Vec::new(); // cols entering the bottom bus

    for ci in 0..m {
        let c = ci + 1;
        b.anchor((c, c), Role::Clause { clause: ci })?;
        // Output drop to the bottom bus.
        for y in 1..c {
            b.mark_v((c, y));
        }
        row0_entries.push(c);
    }

    for var in 0..n {
        let v = m + 2 * (var + 1);
        let r = v;
        b.anchor((v, r), Role::Variable { var })?;
        for (lit, positive) in [(Lit::positive(var), true), (Lit::negative(var), false)] {
            let first: Vec<usize> = (0..m).filter(|&i| sat.clauses[i].0 == lit).collect();
            let second: Vec<usize> = (0..m).filter(|&i| sat.clauses[i].1 == lit).collect();
            if positive {
                // Rail A: row r leftward. Occurrence splitters for first
                // slots; a turn at column v-1 when second slots exist.
                let turn = !second.is_empty();
                for x in (1..v).rev() {
                    if turn && x == v - 1 {
                        b.anchor((x, r), Role::SplitterH { lit, branch: BranchKind::Turn })?;
                    } else if let Some(&ci) = first.iter().find(|&&ci| ci + 1 == x) {
                        b.anchor((x, r), Role::SplitterH { lit, branch: BranchKind::Occ { clause: ci, slot: 0 } })?;
                        occ_splitters[ci][0] = (x, r);
                    } else {
                        b.mark_h((x, r));
                    }
                }
                col0_entries.push(r);
                // Drops from rail A to clause tops.
                for &ci in &first {
                    for y in (ci + 2)..r {
                        b.mark_v((ci + 1, y));
                    }
                }
                // Rail B: column v-1 downward for second occurrences.
                if turn {
                    for y in (1..r).rev() {
                        if let Some(&ci) = second.iter().find(|&&ci| ci + 1 == y) {
                            b.anchor((v - 1, y), Role::SplitterV { lit, branch: BranchKind::Occ { clause: ci, slot: 1 } })?;
                            occ_splitters[ci][1] = (v - 1, y);
                        } else {
                            b.mark_v((v - 1, y));
                        }
                    }
                    row0_entries.push(v - 1);
                    for &ci in &second {
                        for x in (ci + 2)..(v - 1) {
                            b.mark_h((x, ci + 1));
                        }
                    }
                }
            } else {
                // Rail A: column v downward; occurrence splitters for
                // second slots; a turn at row r-1 when first slots exist.
                let turn = !first.is_empty();
                for y in (1..r).rev() {
                    if turn && y == r - 1 {
                        b.anchor((v, y), Role::SplitterV { lit, branch: BranchKind::Turn })?;
                    } else if let Some(&ci) = second.iter().find(|&&ci| ci + 1 == y) {
                        b.anchor((v, y), Role::SplitterV { lit, branch: BranchKind::Occ { clause: ci, slot: 1 } })?;
                        occ_splitters[ci][1] = (v, y);
                    } else {
                        b.mark_v((v, y));
                    }
                }
                row0_entries.push(v);
                for &ci in &second {
                    for x in (ci + 2)..v {
                        b.mark_h((x, ci + 1));
                    }
                }
                // Rail B: row r-1 leftward for first occurrences.
                if turn {
                    for x in (1..v).rev() {
                        if let Some(&ci) = first.iter().find(|&&ci| ci + 1 == x) {
                            b.anchor((x, r - 1), Role::SplitterH { lit, branch: BranchKind::Occ { clause: ci, slot: 0 } })?;
                            occ_splitters[ci][0] = (x, r - 1);
                        } else {
                            b.mark_h((x, r - 1));
                        }
                    }
                    col0_entries.push(r - 1);
                    for &ci in &first {
                        for y in (ci + 2)..(r - 1) {
                            b.mark_v((ci + 1, y));
                        }
                    }
                }
            }
        }
    }

    // Bottom bus: rightmost drop turns left, the rest merge, gaps pass.
    row0_entries.sort_unstable();
    row0_entries.dedup();
    let &x_max = row0_entries.last().expect("at least one clause drop");
    for &x in &row0_entries {
        if x == x_max {
            b.anchor((x, 0), Role::ElbowTL)?;
        } else {
            b.anchor((x, 0), Role::MergeH)?;
        }
    }
    for x in 1..x_max {
        if !row0_entries.contains(&x) {
            b.mark_h((x, 0));
        }
    }
    // Left bus: topmost entry turns down, the rest merge.
    col0_entries.sort_unstable();
    col0_entries.dedup();
    let &y_max = col0_entries.last().expect("at least one rail end");
    for &y in &col0_entries {
        if y == y_max {
            b.anchor((0, y), Role::ElbowRB)?;
        } else {
            b.anchor((0, y), Role::MergeV)?;
        }
    }
    for y in 1..y_max {
        if !col0_entries.contains(&y) {
            b.mark_v((0, y));
        }
    }
    b.anchor((0, 0), Role::RootCell)?;

    // Resolve pass-through cells; anchors must be free of stray marks.
    let mut cells = b.anchors.clone();
    for (&cell, _) in &b.h_marks {
        if b.anchors.contains_key(&cell) {
            return Err(LayoutError::Collision(cell.0, cell.1));
        }
        let role = if b.v_marks.contains_key(&cell) {
            Role::Crossing
        } else {
            Role::ConnH
        };
        cells.insert(cell, role);
    }
    for (&cell, _) in &b.v_marks {
        if b.anchors.contains_key(&cell) {
            return Err(LayoutError::Collision(cell.0, cell.1));
        }
        cells.entry(cell).or_insert(Role::ConnV);
    }

    Ok(Layout {
        side,
        cells,
        occ_splitters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimacs::parse_dimacs;

    fn paper_example() -> Max2SatInstance {
        parse_dimacs("p cnf 3 5\n1 2 0\n1 -2 0\n-1 2 0\n-1 3 0\n-2 -3 0\n").unwrap()
    }

    #[test]
    fn paper_example_matches_the_drawn_overview() {
        let layout = build_layout(&paper_example()).unwrap();
        assert_eq!(layout.side, 12);
        let count = |f: &dyn Fn(&Role) -> bool| layout.cells.values().filter(|r| f(r)).count();
        assert_eq!(count(&|r| matches!(r, Role::Variable { .. })), 3);
        assert_eq!(count(&|r| matches!(r, Role::Clause { .. })), 5);
        assert_eq!(
            count(&|r| matches!(r, Role::SplitterH { .. } | Role::SplitterV { .. })),
            14
        );
        assert_eq!(count(&|r| matches!(r, Role::RootCell)), 1);
        // Spot positions from the drawn overview.
        assert!(matches!(layout.cells.get(&(7, 6)), Some(Role::SplitterV { .. })));
        assert!(matches!(layout.cells.get(&(2, 7)), Some(Role::SplitterH { .. })));
        assert!(matches!(layout.cells.get(&(8, 9)), Some(Role::SplitterH { .. })));
        assert!(matches!(layout.cells.get(&(9, 8)), Some(Role::SplitterV { .. })));
        assert!(matches!(layout.cells.get(&(8, 8)), Some(Role::Crossing)));
        assert!(matches!(layout.cells.get(&(5, 7)), Some(Role::Crossing)));
    }

    #[test]
    fn single_tautology_layout() {
        let sat = parse_dimacs("p cnf 1 1\n1 -1 0\n").unwrap();
        let layout = build_layout(&sat).unwrap();
        assert_eq!(layout.side, 4);
        assert!(matches!(layout.cells.get(&(1, 1)), Some(Role::Clause { .. })));
        assert!(matches!(layout.cells.get(&(3, 3)), Some(Role::Variable { .. })));
        assert!(matches!(layout.cells.get(&(0, 0)), Some(Role::RootCell)));
    }

    #[test]
    fn every_occurrence_has_a_splitter() {
        for text in [
            "p cnf 2 2\n1 2 0\n-1 -2 0\n",
            "p cnf 1 1\n1 1 0\n",
            "p cnf 3 5\n1 2 0\n1 -2 0\n-1 2 0\n-1 3 0\n-2 -3 0\n",
        ] {
            let sat = parse_dimacs(text).unwrap();
            let layout = build_layout(&sat).unwrap();
            for (ci, cells) in layout.occ_splitters.iter().enumerate() {
                for (slot, cell) in cells.iter().enumerate() {
                    assert_ne!(cell.0, usize::MAX, "clause {} slot {}", ci, slot);
                    assert!(layout.cells.contains_key(cell));
                }
            }
        }
    }
}
