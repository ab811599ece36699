use super::{BooleanRelation, GreenClasses, RelationMonoid};
use crate::error::{Error, Result};

/// Largest n for which the monoid of all relations is materialized.
pub const FULL_MONOID_LIMIT: usize = 4;

/// The monoid of all 2^(n²) binary relations on n ≤ 4 points. Element i is
/// the relation whose pair (p, q) is bit p·n + q of i.
#[derive(Debug, Clone)]
pub struct FullRelationMonoid {
    n: usize,
    elements: Vec<BooleanRelation>,
}

/// The set of all unions of the given vectors (each a bitmask over ≤ 4
/// points), as a bitmask over the 16 possible vectors.
fn span(vectors: impl Iterator<Item = u16>) -> u16 {
    let mut set: u16 = 1; // the empty union
    for v in vectors {
        let mut next = set;
        for u in 0..16u16 {
            if set >> u & 1 == 1 {
                next |= 1 << (u | v);
            }
        }
        set = next;
    }
    set
}

impl FullRelationMonoid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > FULL_MONOID_LIMIT {
            return Err(Error::resource(format!(
                "the full relation monoid is only built for 1..={FULL_MONOID_LIMIT} points"
            )));
        }
        let elements = (0..1u64 << (n * n))
            .map(|mask| BooleanRelation::from_mask(n, mask))
            .collect();
        Ok(FullRelationMonoid { n, elements })
    }

    fn row_mask(m: &BooleanRelation, p: usize) -> u16 {
        m.row_ones(p).fold(0, |acc, q| acc | 1 << q)
    }

    fn column_mask(m: &BooleanRelation, q: usize) -> u16 {
        m.column_ones(q).fold(0, |acc, p| acc | 1 << p)
    }

    /// Green's relations: m R n iff m and n have the same column space,
    /// m L n iff they have the same row space.
    pub fn green(&self) -> GreenClasses {
        let r: Vec<usize> = self
            .elements
            .iter()
            .map(|m| span((0..self.n).map(|q| Self::column_mask(m, q))) as usize)
            .collect();
        let l: Vec<usize> = self
            .elements
            .iter()
            .map(|m| span((0..self.n).map(|p| Self::row_mask(m, p))) as usize)
            .collect();
        let idempotent: Vec<bool> = self.elements.iter().map(|m| m.is_idempotent()).collect();
        GreenClasses::from_partitions(&r, &l, &idempotent)
    }
}

impl RelationMonoid for FullRelationMonoid {
    fn dim(&self) -> usize {
        self.n
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    fn element(&self, i: usize) -> &BooleanRelation {
        &self.elements[i]
    }

    fn index_of(&self, m: &BooleanRelation) -> Option<usize> {
        if m.dim() != self.n {
            return None;
        }
        let mut mask = 0usize;
        for p in 0..self.n {
            for q in m.row_ones(p) {
                mask |= 1 << (p * self.n + q);
            }
        }
        Some(mask)
    }

    fn name(&self, i: usize) -> String {
        format!("{:?}", self.elements[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relmonoid::h_class_group;

    /// Brute force: m R n iff m = n·x and n = m·y for some x, y.
    #[test]
    fn spaces_match_ideals_on_two_points() {
        let m = FullRelationMonoid::new(2).unwrap();
        let g = m.green();
        let right_ideal = |a: usize| -> Vec<bool> {
            let mut hit = vec![false; m.len()];
            for x in 0..m.len() {
                hit[m.product(a, x)] = true;
            }
            hit
        };
        let left_ideal = |a: usize| -> Vec<bool> {
            let mut hit = vec![false; m.len()];
            for x in 0..m.len() {
                hit[m.product(x, a)] = true;
            }
            hit
        };
        for a in 0..m.len() {
            for b in 0..m.len() {
                assert_eq!(g.r_equivalent(a, b), right_ideal(a) == right_ideal(b));
                assert_eq!(g.l_equivalent(a, b), left_ideal(a) == left_ideal(b));
            }
        }
    }

    #[test]
    fn paper_examples_on_two_points() {
        let m = FullRelationMonoid::new(2).unwrap();
        let g = m.green();
        let idx = |rows: &[&str]| m.index_of(&BooleanRelation::from_rows(rows).unwrap()).unwrap();
        let upper = idx(&["11", "01"]);
        assert_eq!(h_class_group(&m, &g, upper).unwrap().order(), 1);
        let e = idx(&["10", "00"]);
        let full = idx(&["11", "11"]);
        assert!(g.d_equivalent(e, full));
        assert_eq!(m.element(e).fixed_points().len(), 1);
        assert_eq!(m.element(full).fixed_points().len(), 2);
    }

    #[test]
    fn limits() {
        assert!(FullRelationMonoid::new(5).is_err());
        assert_eq!(FullRelationMonoid::new(3).unwrap().len(), 512);
    }
}
