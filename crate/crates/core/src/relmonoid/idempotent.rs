use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use super::relation::compose_rect;
use super::BooleanRelation;
use crate::error::{Error, Result};

/// Column-row decomposition e = ℓr of an idempotent relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentStructure {
    #[serde(skip)]
    e: BooleanRelation,
    fixed_points: Vec<usize>,
    components: Vec<Vec<usize>>,
    ell: Vec<Vec<bool>>,
    r: Vec<Vec<bool>>,
}

impl IdempotentStructure {
    pub fn e(&self) -> &BooleanRelation {
        &self.e
    }

    /// S, the fixed points of e.
    pub fn fixed_points(&self) -> &[usize] {
        &self.fixed_points
    }

    /// Γ, the strongly connected components of e restricted to S, each
    /// sorted and ordered by least element.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// The component containing q, if q is a fixed point.
    pub fn component_of(&self, q: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&q))
    }

    /// ℓ as a Q×Γ boolean array.
    pub fn ell(&self) -> &[Vec<bool>] {
        &self.ell
    }

    /// r as a Γ×Q boolean array.
    pub fn r(&self) -> &[Vec<bool>] {
        &self.r
    }

    /// ℓ·r, which equals e.
    pub fn reconstruct(&self) -> BooleanRelation {
        compose_rect(&self.ell, &self.r, self.e.dim())
    }
}

/// Strongly connected components of the graph of m on the given vertices.
pub(crate) fn components_on(m: &BooleanRelation, vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = vertices.iter().map(|&v| g.add_node(v)).collect();
    for (i, &p) in vertices.iter().enumerate() {
        for (j, &q) in vertices.iter().enumerate() {
            if m.get(p, q) {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|v| g[v]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort();
    comps
}

pub fn idempotent_structure(e: &BooleanRelation) -> Result<IdempotentStructure> {
    if !e.is_idempotent() {
        return Err(Error::input(format!("{e:?} is not idempotent")));
    }
    let n = e.dim();
    let fixed_points = e.fixed_points();
    let components = components_on(e, &fixed_points);
    let ell = (0..n)
        .map(|p| components.iter().map(|c| c.iter().any(|&s| e.get(p, s))).collect())
        .collect();
    let r = components
        .iter()
        .map(|c| (0..n).map(|q| c.iter().any(|&s| e.get(s, q))).collect())
        .collect();
    let st = IdempotentStructure {
        e: e.clone(),
        fixed_points,
        components,
        ell,
        r,
    };
    if st.reconstruct() != *e {
        return Err(Error::invariant(format!("column-row decomposition fails for {e:?}")));
    }
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_rank_one_idempotent() {
        let e = BooleanRelation::from_rows(&["1110", "1110", "0000", "1110"]).unwrap();
        let st = idempotent_structure(&e).unwrap();
        assert_eq!(st.fixed_points(), [0, 1]);
        assert_eq!(st.components(), [vec![0, 1]]);
        let col: Vec<bool> = st.ell().iter().map(|row| row[0]).collect();
        assert_eq!(col, [true, true, false, true]);
        assert_eq!(st.r()[0], [true, true, true, false]);
    }

    #[test]
    fn identity_has_singletons() {
        let st = idempotent_structure(&BooleanRelation::identity(3)).unwrap();
        assert_eq!(st.components(), [vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn upper_triangular() {
        let e = BooleanRelation::from_rows(&["11", "01"]).unwrap();
        let st = idempotent_structure(&e).unwrap();
        assert_eq!(st.fixed_points(), [0, 1]);
        assert_eq!(st.num_components(), 2);
    }

    #[test]
    fn rejects_non_idempotent() {
        let m = BooleanRelation::from_rows(&["01", "10"]).unwrap();
        assert!(idempotent_structure(&m).is_err());
    }
}
