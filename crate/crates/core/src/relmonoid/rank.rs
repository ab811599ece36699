use std::collections::BTreeSet;

use super::BooleanRelation;
use crate::error::{Error, Result};

/// Largest dimension accepted by [`boolean_rank`].
pub const RANK_DIMENSION_LIMIT: usize = 16;

/// Cap on search nodes of the cover search.
const RANK_NODE_BUDGET: usize = 1 << 24;

type Cells = Vec<u64>;

fn cell_set(n: usize, rows: u64, cols: u64) -> Cells {
    let mut cells = vec![0u64; (n * n).div_ceil(64)];
    for p in (0..n).filter(|p| rows >> p & 1 == 1) {
        for q in (0..n).filter(|q| cols >> q & 1 == 1) {
            let k = p * n + q;
            cells[k / 64] |= 1 << (k % 64);
        }
    }
    cells
}

fn covers(a: &Cells, k: usize) -> bool {
    a[k / 64] >> (k % 64) & 1 == 1
}

struct Search<'a> {
    concepts: &'a [Cells],
    nodes: usize,
}

impl Search<'_> {
    /// Can the uncovered cells be covered with at most `k` concepts?
    fn cover(&mut self, uncovered: &Cells, k: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > RANK_NODE_BUDGET {
            return Err(Error::resource("boolean rank search exceeded its node budget"));
        }
        let cells: Vec<usize> = uncovered
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
            .collect();
        if cells.is_empty() {
            return Ok(true);
        }
        if k == 0 {
            return Ok(false);
        }
        // branch on the cell with the fewest covering concepts
        let (_, options) = cells
            .iter()
            .map(|&c| {
                let opts: Vec<usize> = (0..self.concepts.len())
                    .filter(|&i| covers(&self.concepts[i], c))
                    .collect();
                (opts.len(), opts)
            })
            .min_by_key(|(len, _)| *len)
            .expect("nonempty");
        for i in options {
            let rest: Cells = uncovered
                .iter()
                .zip(&self.concepts[i])
                .map(|(u, c)| u & !c)
                .collect();
            if self.cover(&rest, k - 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Exact boolean (Schein) rank: the least number of rectangles R×C ⊆ m
/// covering every pair of m. The zero relation has rank 0.
///
/// Rectangles may be taken maximal, so only concepts (C the intersection of
/// some rows, R all rows containing C) are considered; the cover is found by
/// iterative deepening.
pub fn boolean_rank(m: &BooleanRelation) -> Result<usize> {
    let n = m.dim();
    if n > RANK_DIMENSION_LIMIT {
        return Err(Error::resource(format!(
            "boolean rank is limited to dimension {RANK_DIMENSION_LIMIT}, got {n}"
        )));
    }
    if m.is_zero() {
        return Ok(0);
    }
    let row_masks: Vec<u64> = (0..n)
        .map(|p| m.row_ones(p).fold(0u64, |acc, q| acc | 1 << q))
        .collect();
    let mut intents: BTreeSet<u64> = row_masks.iter().copied().filter(|&r| r != 0).collect();
    loop {
        let mut added = Vec::new();
        for &a in &intents {
            for &r in &row_masks {
                let c = a & r;
                if c != 0 && !intents.contains(&c) {
                    added.push(c);
                }
            }
        }
        if added.is_empty() {
            break;
        }
        intents.extend(added);
    }
    let concepts: Vec<Cells> = intents
        .iter()
        .map(|&cols| {
            let rows = (0..n)
                .filter(|&p| row_masks[p] & cols == cols)
                .fold(0u64, |acc, p| acc | 1 << p);
            cell_set(n, rows, cols)
        })
        .collect();
    let all = cell_set_of(m);
    let distinct_rows: BTreeSet<u64> = row_masks.iter().copied().filter(|&r| r != 0).collect();
    let distinct_cols: BTreeSet<Vec<usize>> = (0..n)
        .map(|q| m.column_ones(q).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    let upper = distinct_rows.len().min(distinct_cols.len());
    let mut search = Search {
        concepts: &concepts,
        nodes: 0,
    };
    for k in 1..upper {
        if search.cover(&all, k)? {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn cell_set_of(m: &BooleanRelation) -> Cells {
    let n = m.dim();
    let mut cells = vec![0u64; (n * n).div_ceil(64)];
    for p in 0..n {
        for q in m.row_ones(p) {
            let k = p * n + q;
            cells[k / 64] |= 1 << (k % 64);
        }
    }
    cells
}
