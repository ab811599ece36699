use std::fmt;

use serde::Serialize;

use super::{minimal_idempotents, GreenClasses, TransitionMonoid};
use crate::error::Result;

/// One H-class of an eggbox.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EggboxCell {
    /// Shortlex-least witness word of the class.
    pub witness: String,
    pub size: usize,
    /// Whether the class contains an idempotent (a group).
    pub group: bool,
}

/// A D-class drawn as a grid: rows are R-classes, columns L-classes.
/// Supports list 1-based states with a nonzero row (resp. column).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eggbox {
    pub regular: bool,
    pub row_supports: Vec<Vec<usize>>,
    pub column_supports: Vec<Vec<usize>>,
    pub cells: Vec<Vec<EggboxCell>>,
}

impl Eggbox {
    pub fn num_groups(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.group).count()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.row_supports.len(), self.column_supports.len())
    }
}

fn support_label(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(usize::to_string).collect();
    parts.join(",")
}

impl fmt::Display for Eggbox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |c: &EggboxCell| format!("{}{}", if c.group { "*" } else { " " }, c.witness);
        let mut width = self
            .cells
            .iter()
            .flatten()
            .map(|c| cell(c).chars().count())
            .chain(self.column_supports.iter().map(|s| support_label(s).chars().count()))
            .max()
            .unwrap_or(1);
        width = width.max(1);
        let head = self
            .row_supports
            .iter()
            .map(|s| support_label(s).chars().count())
            .max()
            .unwrap_or(0);
        write!(f, "{:head$} ", "")?;
        for s in &self.column_supports {
            write!(f, "| {:width$} ", support_label(s))?;
        }
        writeln!(f, "|")?;
        let rule = format!("{:head$} {}|", "", format!("+{}", "-".repeat(width + 2)).repeat(self.column_supports.len()));
        writeln!(f, "{rule}")?;
        for (s, row) in self.row_supports.iter().zip(&self.cells) {
            write!(f, "{:>head$} ", support_label(s))?;
            for c in row {
                write!(f, "| {:width$} ", cell(c))?;
            }
            writeln!(f, "|")?;
        }
        write!(f, "{rule}")
    }
}

/// The eggbox of the D-class with the given id.
pub fn eggbox(m: &TransitionMonoid, green: &GreenClasses, d: usize) -> Eggbox {
    let members = green.d_members(d);
    let mut r_classes: Vec<usize> = Vec::new();
    let mut l_classes: Vec<usize> = Vec::new();
    for &x in &members {
        if !r_classes.contains(&green.r_class(x)) {
            r_classes.push(green.r_class(x));
        }
        if !l_classes.contains(&green.l_class(x)) {
            l_classes.push(green.l_class(x));
        }
    }
    let first = |pred: &dyn Fn(usize) -> bool| members.iter().copied().find(|&x| pred(x)).expect("class member");
    let row_supports = r_classes
        .iter()
        .map(|&r| {
            let x = first(&|x| green.r_class(x) == r);
            m.element(x).nonzero_rows().iter().map(|p| p + 1).collect()
        })
        .collect();
    let column_supports = l_classes
        .iter()
        .map(|&l| {
            let x = first(&|x| green.l_class(x) == l);
            m.element(x).nonzero_columns().iter().map(|q| q + 1).collect()
        })
        .collect();
    let cells = r_classes
        .iter()
        .map(|&r| {
            l_classes
                .iter()
                .map(|&l| {
                    let h: Vec<usize> = members
                        .iter()
                        .copied()
                        .filter(|&x| green.r_class(x) == r && green.l_class(x) == l)
                        .collect();
                    EggboxCell {
                        witness: m.format_witness(h[0]),
                        size: h.len(),
                        group: h.iter().any(|&x| m.element(x).is_idempotent()),
                    }
                })
                .collect()
        })
        .collect();
    Eggbox {
        regular: green.is_regular(d),
        row_supports,
        column_supports,
        cells,
    }
}

/// The eggbox of the D-class of minimal nonzero rank.
pub fn minimal_eggbox(m: &TransitionMonoid, green: &GreenClasses) -> Result<Eggbox> {
    let (_, idempotents) = minimal_idempotents(m)?;
    Ok(eggbox(m, green, green.d_class(idempotents[0])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::flower_automaton;
    use crate::relmonoid::{enumerate_monoid, green_relations};
    use crate::words::FiniteWordSet;

    #[test]
    fn rank_one_class_of_a_ab_ba() {
        let x = FiniteWordSet::from_strs(&["a", "ab", "ba"]).unwrap();
        let m = enumerate_monoid(&flower_automaton(&x)).unwrap();
        let g = green_relations(&m);
        let egg = minimal_eggbox(&m, &g).unwrap();
        // all 16 rank-one elements; abb (row 1, column 3) is one of them
        assert_eq!(egg.shape(), (4, 4));
        assert_eq!(egg.num_groups(), 11);
        assert_eq!(egg.cells[0][0].witness, "aa");
        assert!(egg.regular);
        // the nine classes drawn in the paper keep their group markers
        let rows = [vec![1, 3], vec![1, 2], vec![2]];
        let cols = [vec![1, 2], vec![1, 3], vec![3]];
        let stars = [[true, true, true], [true, true, false], [true, false, false]];
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in cols.iter().enumerate() {
                let ri = egg.row_supports.iter().position(|s| s == r).unwrap();
                let cj = egg.column_supports.iter().position(|s| s == c).unwrap();
                assert_eq!(egg.cells[ri][cj].group, stars[i][j]);
            }
        }
        assert!(egg.to_string().contains("*aa "));
    }
}
