use std::fmt;

use crate::error::{Error, Result};

/// A binary relation on {0, …, n-1}, stored as a packed boolean matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanRelation {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BooleanRelation {
    pub fn zero(n: usize) -> Self {
        let stride = n.div_ceil(64).max(1);
        BooleanRelation {
            n,
            stride,
            bits: vec![0; stride * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn full(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::zero(n);
        for (p, q) in pairs {
            m.set(p, q, true);
        }
        m
    }

    /// Rows written as strings of `0`/`1`, e.g. `["110", "010", "001"]`.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            let row: Vec<char> = row.as_ref().chars().filter(|c| !c.is_whitespace()).collect();
            if row.len() != n {
                return Err(Error::input(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, c) in row.iter().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => return Err(Error::input(format!("bad matrix entry {c:?}"))),
                }
            }
        }
        Ok(m)
    }

    /// Rebuilds a relation from the bits of a small matrix (row-major,
    /// entry (i, j) at bit i·n + j). Used to enumerate all relations on a
    /// few points.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                if mask >> (i * n + j) & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> bool {
        self.bits[p * self.stride + q / 64] >> (q % 64) & 1 == 1
    }

    pub fn set(&mut self, p: usize, q: usize, value: bool) {
        let word = &mut self.bits[p * self.stride + q / 64];
        if value {
            *word |= 1 << (q % 64);
        } else {
            *word &= !(1 << (q % 64));
        }
    }

    fn row(&self, p: usize) -> &[u64] {
        &self.bits[p * self.stride..(p + 1) * self.stride]
    }

    /// Columns q with (p, q) in the relation.
    pub fn row_ones(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&q| self.get(p, q))
    }

    /// Rows p with (p, q) in the relation.
    pub fn column_ones(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&p| self.get(p, q))
    }

    pub fn row_is_zero(&self, p: usize) -> bool {
        self.row(p).iter().all(|&w| w == 0)
    }

    pub fn mul(&self, other: &BooleanRelation) -> BooleanRelation {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            let base = i * self.stride;
            for (w, &word) in self.row(i).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let k = w * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    for (dst, src) in out.bits[base..base + self.stride]
                        .iter_mut()
                        .zip(other.row(k))
                    {
                        *dst |= src;
                    }
                }
            }
        }
        out
    }

    pub fn union(&self, other: &BooleanRelation) -> BooleanRelation {
        assert_eq!(self.n, other.n, "dimension mismatch");
        BooleanRelation {
            n: self.n,
            stride: self.stride,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn transpose(&self) -> BooleanRelation {
        let mut t = Self::zero(self.n);
        for p in 0..self.n {
            for q in self.row_ones(p) {
                t.set(q, p, true);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.n)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// States q with (q, q) in the relation.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.get(q, q)).collect()
    }

    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..self.n).filter(|&p| !self.row_is_zero(p)).collect()
    }

    pub fn nonzero_columns(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&q| (0..self.n).any(|p| self.get(p, q)))
            .collect()
    }

    /// Rank one test: nonzero with all nonzero rows equal.
    pub fn has_rank_one(&self) -> bool {
        let rows = self.nonzero_rows();
        match rows.split_first() {
            None => false,
            Some((&first, rest)) => rest.iter().all(|&p| self.row(p) == self.row(first)),
        }
    }

    pub fn is_permutation(&self) -> bool {
        (0..self.n).all(|p| self.row_ones(p).count() == 1)
            && (0..self.n).all(|q| self.column_ones(q).count() == 1)
    }

    /// The submatrix on the given states, in the given order.
    pub fn restrict(&self, states: &[usize]) -> BooleanRelation {
        let mut m = Self::zero(states.len());
        for (i, &p) in states.iter().enumerate() {
            for (j, &q) in states.iter().enumerate() {
                if self.get(p, q) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.n)
            .map(|p| {
                (0..self.n)
                    .map(|q| if self.get(p, q) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for BooleanRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_row_strings().join("/"))
    }
}

impl fmt::Display for BooleanRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_row_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.chars().map(String::from).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Boolean product of a rectangular relation given as rows of column sets.
/// Used for column-row decompositions, where the middle dimension differs
/// from n.
pub(crate) fn compose_rect(left: &[Vec<bool>], right: &[Vec<bool>], n: usize) -> BooleanRelation {
    let mut m = BooleanRelation::zero(n);
    for (p, lrow) in left.iter().enumerate() {
        for (k, &l) in lrow.iter().enumerate() {
            if l {
                for (q, &r) in right[k].iter().enumerate() {
                    if r {
                        m.set(p, q, true);
                    }
                }
            }
        }
    }
    m
}
