use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::TransitionMonoid;

/// Green's R, L, H and D classes of a finite monoid, as class ids per
/// element. Class ids are numbered by the first element met.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenClasses {
    r: Vec<usize>,
    l: Vec<usize>,
    h: Vec<usize>,
    d: Vec<usize>,
    regular: Vec<bool>,
}

fn renumber(keys: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    keys.iter()
        .map(|k| {
            let next = map.len();
            *map.entry(*k).or_insert(next)
        })
        .collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl GreenClasses {
    /// Builds H as R ∧ L and D as the join of R and L.
    pub(crate) fn from_partitions(r: &[usize], l: &[usize], idempotent: &[bool]) -> Self {
        let n = r.len();
        let r = renumber(r);
        let l = renumber(l);
        let pairs: Vec<usize> = (0..n).map(|i| r[i] * n + l[i]).collect();
        let h = renumber(&pairs);
        let mut parent: Vec<usize> = (0..n).collect();
        let mut first_r = vec![usize::MAX; n];
        let mut first_l = vec![usize::MAX; n];
        for i in 0..n {
            for (first, class) in [(&mut first_r, r[i]), (&mut first_l, l[i])] {
                if first[class] == usize::MAX {
                    first[class] = i;
                } else {
                    let (a, b) = (find(&mut parent, first[class]), find(&mut parent, i));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        let d = renumber(&roots);
        let num_d = d.iter().max().map_or(0, |m| m + 1);
        let mut regular = vec![false; num_d];
        for i in 0..n {
            if idempotent[i] {
                regular[d[i]] = true;
            }
        }
        GreenClasses { r, l, h, d, regular }
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn r_class(&self, m: usize) -> usize {
        self.r[m]
    }

    pub fn l_class(&self, m: usize) -> usize {
        self.l[m]
    }

    pub fn h_class(&self, m: usize) -> usize {
        self.h[m]
    }

    pub fn d_class(&self, m: usize) -> usize {
        self.d[m]
    }

    pub fn r_equivalent(&self, a: usize, b: usize) -> bool {
        self.r[a] == self.r[b]
    }

    pub fn l_equivalent(&self, a: usize, b: usize) -> bool {
        self.l[a] == self.l[b]
    }

    pub fn h_equivalent(&self, a: usize, b: usize) -> bool {
        self.h[a] == self.h[b]
    }

    pub fn d_equivalent(&self, a: usize, b: usize) -> bool {
        self.d[a] == self.d[b]
    }

    pub fn num_d_classes(&self) -> usize {
        self.regular.len()
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.regular[d]
    }

    /// Elements H-equivalent to m, in index order.
    pub fn h_members(&self, m: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.h[i] == self.h[m]).collect()
    }

    pub fn d_members(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.d[i] == d).collect()
    }
}

fn scc_ids(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    let mut id = vec![0; n];
    for (k, comp) in tarjan_scc(&g).into_iter().enumerate() {
        for v in comp {
            id[v.index()] = k;
        }
    }
    id
}

/// R classes are the strongly connected components of the right Cayley
/// graph (mM = nM), L classes those of the left one.
pub fn green_relations(m: &TransitionMonoid) -> GreenClasses {
    let n = m.len();
    let letters: Vec<_> = m.alphabet().letters().collect();
    let r = scc_ids(
        n,
        (0..n).flat_map(|i| letters.iter().map(move |&a| (i, a))).map(|(i, a)| (i, m.right(i, a))),
    );
    let l = scc_ids(
        n,
        (0..n).flat_map(|i| letters.iter().map(move |&a| (i, a))).map(|(i, a)| (i, m.left(a, i))),
    );
    let idempotent: Vec<bool> = (0..n).map(|i| m.element(i).is_idempotent()).collect();
    GreenClasses::from_partitions(&r, &l, &idempotent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::flower_automaton;
    use crate::relmonoid::{enumerate_monoid, BooleanRelation};
    use crate::words::FiniteWordSet;

    #[test]
    fn trivial_monoid() {
        let m = enumerate_monoid(&flower_automaton(&FiniteWordSet::from_strs(&["a"]).unwrap())).unwrap();
        let g = green_relations(&m);
        assert_eq!(g.num_d_classes(), 1);
        assert!(g.is_regular(0));
    }

    #[test]
    fn cayley_classes_match_ideal_definition() {
        let x = FiniteWordSet::from_strs(&["a", "ab", "ba"]).unwrap();
        let m = enumerate_monoid(&flower_automaton(&x)).unwrap();
        let g = green_relations(&m);
        let ideal = |i: usize, right: bool| -> std::collections::BTreeSet<BooleanRelation> {
            (0..m.len())
                .map(|j| {
                    if right {
                        m.element(i).mul(m.element(j))
                    } else {
                        m.element(j).mul(m.element(i))
                    }
                })
                .collect()
        };
        let rights: Vec<_> = (0..m.len()).map(|i| ideal(i, true)).collect();
        let lefts: Vec<_> = (0..m.len()).map(|i| ideal(i, false)).collect();
        for i in 0..m.len() {
            for j in 0..m.len() {
                assert_eq!(g.r_equivalent(i, j), rights[i] == rights[j]);
                assert_eq!(g.l_equivalent(i, j), lefts[i] == lefts[j]);
            }
        }
    }
}
