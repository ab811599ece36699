use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::idempotent::{idempotent_structure, IdempotentStructure};
use super::{boolean_rank, BooleanRelation, GreenClasses, RelationMonoid, TransitionMonoid};
use crate::error::{Error, Result};
use crate::words::Word;

/// Largest domain for which [`groups_equivalent`] searches bijections.
pub const EQUIVALENCE_DOMAIN_LIMIT: usize = 8;

/// Largest dimension for which minimal ranks are cross-checked against the
/// exact boolean rank.
pub const RANK_CROSS_CHECK_LIMIT: usize = 12;

/// A permutation as the list of images: `p[i]` is the image of `i`.
pub type Permutation = Vec<usize>;

/// p then q.
pub fn compose(p: &[usize], q: &[usize]) -> Permutation {
    p.iter().map(|&i| q[i]).collect()
}

pub fn inverse(p: &[usize]) -> Permutation {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut i = p[start];
        while i != start {
            seen[i] = true;
            cycle.push(i);
            i = p[i];
        }
        out.push(cycle);
    }
    out
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = cycles(p).iter().map(Vec::len).collect();
    t.sort_unstable();
    t
}

fn closure(n: usize, generators: &[Permutation]) -> BTreeSet<Permutation> {
    let identity: Permutation = (0..n).collect();
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let next = compose(&p, g);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// A permutation group on a labelled finite domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationGroupRep {
    domain: Vec<String>,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PermutationGroupRep {
    /// The group generated by the given permutations.
    pub fn generated_by(domain: Vec<String>, generators: &[Permutation]) -> Result<Self> {
        let n = domain.len();
        for g in generators {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(Error::input(format!("{g:?} is not a permutation of {n} points")));
            }
        }
        let elements = closure(n, generators).into_iter().collect();
        Ok(Self::from_closed(domain, elements))
    }

    /// From a set of permutations already closed under composition. The
    /// generators are picked greedily in lexicographic order.
    fn from_closed(domain: Vec<String>, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span = closure(domain.len(), &generators);
        for p in &elements {
            if !span.contains(p) {
                generators.push(p.clone());
                span = closure(domain.len(), &generators);
            }
        }
        PermutationGroupRep {
            domain,
            elements,
            generators,
        }
    }

    pub fn trivial(domain: Vec<String>) -> Self {
        let n = domain.len();
        Self::from_closed(domain, vec![(0..n).collect()])
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn degree(&self) -> usize {
        self.domain.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(p)).is_ok()
    }

    pub fn with_domain(mut self, domain: Vec<String>) -> Self {
        assert_eq!(domain.len(), self.domain.len(), "domain size changes");
        self.domain = domain;
        self
    }

    pub fn orbit(&self, point: usize) -> BTreeSet<usize> {
        self.elements.iter().map(|p| p[point]).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() == 0 || self.orbit(0).len() == self.degree()
    }

    pub fn stabilizer_order(&self, point: usize) -> usize {
        self.elements.iter().filter(|p| p[point] == point).count()
    }

    /// Cycle notation over the domain labels, `()` for the identity.
    pub fn cycle_notation(&self, p: &[usize]) -> String {
        let cs: Vec<String> = cycles(p)
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let labels: Vec<&str> = c.iter().map(|&i| self.domain[i].as_str()).collect();
                format!("({})", labels.join(" "))
            })
            .collect();
        if cs.is_empty() {
            "()".into()
        } else {
            cs.concat()
        }
    }

    /// A short structural name: `1`, `C2`, `S3`, `A4`, or the order.
    pub fn name(&self) -> String {
        let order = self.order();
        if order == 1 {
            return "1".into();
        }
        let element_order = |p: &Permutation| {
            let mut q = p.clone();
            let mut k = 1;
            while q.iter().enumerate().any(|(i, &j)| i != j) {
                q = compose(&q, p);
                k += 1;
            }
            k
        };
        if self.elements.iter().any(|p| element_order(p) == order) {
            return format!("C{order}");
        }
        let n = self.degree();
        let factorial: usize = (1..=n).product();
        if order == factorial {
            return format!("S{n}");
        }
        let even = |p: &Permutation| cycles(p).iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0;
        if 2 * order == factorial && self.elements.iter().all(even) {
            return format!("A{n}");
        }
        format!("group of order {order}")
    }

    fn cycle_type_profile(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut profile = BTreeMap::new();
        for p in &self.elements {
            *profile.entry(cycle_type(p)).or_insert(0) += 1;
        }
        profile
    }
}

impl fmt::Display for PermutationGroupRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| self.cycle_notation(g)).collect();
        write!(f, "{} of order {} on {} points", self.name(), self.order(), self.degree())?;
        if !gens.is_empty() {
            write!(f, ", generated by {}", gens.join(", "))?;
        }
        Ok(())
    }
}

/// Whether some bijection of the domains conjugates one group onto the
/// other. Searches all bijections up to [`EQUIVALENCE_DOMAIN_LIMIT`] points
/// after cheap invariant filters.
pub fn groups_equivalent(g: &PermutationGroupRep, h: &PermutationGroupRep) -> Result<bool> {
    if g.degree() != h.degree() || g.order() != h.order() {
        return Ok(false);
    }
    if g.cycle_type_profile() != h.cycle_type_profile() {
        return Ok(false);
    }
    let n = g.degree();
    if n > EQUIVALENCE_DOMAIN_LIMIT {
        return Err(Error::resource(format!(
            "permutation-group equivalence is limited to {EQUIVALENCE_DOMAIN_LIMIT} points, got {n}"
        )));
    }
    let targets: HashSet<&Permutation> = h.elements.iter().collect();
    let mut pi: Vec<usize> = (0..n).collect();
    let mut found = false;
    permute(&mut pi, 0, &mut |pi| {
        let inv = inverse(pi);
        // π⁻¹ g π, read as: leave h's domain through π⁻¹, act by g, return
        let ok = g.generators.iter().all(|gen| {
            let conj = compose(&compose(&inv, gen), pi);
            targets.contains(&conj)
        });
        found |= ok;
        ok
    });
    Ok(found)
}

/// Recursive enumeration of permutations; stops when `visit` returns true.
fn permute(a: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == a.len() {
        return visit(a);
    }
    for i in k..a.len() {
        a.swap(k, i);
        if permute(a, k + 1, visit) {
            a.swap(k, i);
            return true;
        }
        a.swap(k, i);
    }
    false
}

/// The group H(e) of an idempotent, with its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HClassGroup {
    /// Monoid indices of the members; `members[identity]` is e.
    pub members: Vec<usize>,
    pub identity: usize,
    /// `table[i][j]` is the position of members[i]·members[j].
    pub table: Vec<Vec<usize>>,
    /// Position of the inverse of each member.
    pub inverses: Vec<usize>,
}

impl HClassGroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }
}

pub fn h_class_group<M: RelationMonoid>(m: &M, green: &GreenClasses, e: usize) -> Result<HClassGroup> {
    if !m.element(e).is_idempotent() {
        return Err(Error::input(format!("{} is not idempotent", m.name(e))));
    }
    let members = green.h_members(e);
    let position = |k: usize| members.iter().position(|&x| x == k);
    let mut table = Vec::with_capacity(members.len());
    for &a in &members {
        let mut row = Vec::with_capacity(members.len());
        for &b in &members {
            let ab = m.product(a, b);
            row.push(position(ab).ok_or_else(|| {
                Error::invariant(format!("H({}) is not closed under product", m.name(e)))
            })?);
        }
        table.push(row);
    }
    let identity = position(e).expect("e lies in its own H-class");
    let mut inverses = Vec::with_capacity(members.len());
    for i in 0..members.len() {
        // m^{k-1} where m^k = e
        let mut power = i;
        let mut prev = identity;
        let mut steps = 0;
        while power != identity {
            prev = power;
            power = table[power][i];
            steps += 1;
            if steps > members.len() {
                return Err(Error::invariant("an element of H(e) has no power equal to e"));
            }
        }
        inverses.push(if i == identity { identity } else { prev });
    }
    Ok(HClassGroup {
        members,
        identity,
        table,
        inverses,
    })
}

/// γ_e together with the data it was computed from.
#[derive(Debug, Clone)]
pub struct GammaRepresentation {
    pub structure: IdempotentStructure,
    pub group: HClassGroup,
    /// γ_e of each member of H(e), aligned with `group.members`.
    pub images: Vec<Permutation>,
    pub rep: PermutationGroupRep,
}

/// Computes γ_e(m) = {(ρ,σ) : r -m-> s -m⁻¹-> r for some r∈ρ, s∈σ} on the
/// components Γ of e, and checks it is an injective morphism into the
/// permutations of Γ.
pub fn gamma_representation<M: RelationMonoid>(
    m: &M,
    green: &GreenClasses,
    e: usize,
) -> Result<GammaRepresentation> {
    let structure = idempotent_structure(m.element(e))?;
    let group = h_class_group(m, green, e)?;
    let comps = structure.components();
    let k = comps.len();
    let mut images = Vec::with_capacity(group.order());
    for (i, &x) in group.members.iter().enumerate() {
        let mx = m.element(x);
        let inv = m.element(group.members[group.inverses[i]]);
        let mut perm = Vec::with_capacity(k);
        for rho in comps {
            let targets: Vec<usize> = (0..k)
                .filter(|&s| {
                    rho.iter()
                        .any(|&r| comps[s].iter().any(|&t| mx.get(r, t) && inv.get(t, r)))
                })
                .collect();
            match targets[..] {
                [t] => perm.push(t),
                _ => {
                    return Err(Error::invariant(format!(
                        "γ_e({}) is not a map on the components",
                        m.name(x)
                    )))
                }
            }
        }
        if perm.iter().collect::<BTreeSet<_>>().len() != k {
            return Err(Error::invariant(format!("γ_e({}) is not a permutation", m.name(x))));
        }
        images.push(perm);
    }
    for i in 0..group.order() {
        for j in 0..group.order() {
            if images[group.table[i][j]] != compose(&images[i], &images[j]) {
                return Err(Error::invariant("γ_e is not a morphism"));
            }
        }
    }
    let distinct: BTreeSet<&Permutation> = images.iter().collect();
    if distinct.len() != group.order() {
        return Err(Error::invariant("γ_e is not injective"));
    }
    let domain = comps
        .iter()
        .map(|c| {
            let labels: Vec<String> = c.iter().map(|q| (q + 1).to_string()).collect();
            labels.join(",")
        })
        .collect();
    let rep = PermutationGroupRep::from_closed(domain, images.clone());
    Ok(GammaRepresentation {
        structure,
        group,
        images,
        rep,
    })
}

/// r(M) with a witnessing idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalRank {
    pub rank: usize,
    pub idempotent: usize,
    pub witness: Word,
    /// Whether the exact boolean rank was computed and agreed.
    pub cross_checked: bool,
}

/// Nonzero idempotents with the least number of components, in index order.
pub fn minimal_idempotents(m: &TransitionMonoid) -> Result<(usize, Vec<usize>)> {
    let mut best = usize::MAX;
    let mut found = Vec::new();
    for e in m.idempotents() {
        let el = m.element(e);
        if el.is_zero() {
            continue;
        }
        let k = idempotent_structure(el)?.num_components();
        if k < best {
            best = k;
            found.clear();
        }
        if k == best {
            found.push(e);
        }
    }
    if found.is_empty() {
        return Err(Error::hypothesis("the monoid has no nonzero element"));
    }
    Ok((best, found))
}

/// The minimal rank of a monoid, computed as the least |Γ| over nonzero
/// idempotents and cross-checked with the exact boolean rank on small
/// dimensions.
pub fn minimal_rank(m: &TransitionMonoid) -> Result<MinimalRank> {
    let (rank, idempotents) = minimal_idempotents(m)?;
    let e = idempotents[0];
    let cross_checked = m.dim() <= RANK_CROSS_CHECK_LIMIT;
    if cross_checked {
        let exact = boolean_rank(m.element(e))?;
        if exact != rank {
            return Err(Error::invariant(format!(
                "idempotent {} has {rank} components but boolean rank {exact}",
                m.format_witness(e)
            )));
        }
    }
    Ok(MinimalRank {
        rank,
        idempotent: e,
        witness: m.witness(e).clone(),
        cross_checked,
    })
}

/// Every pair of states is joined by some element of the monoid.
pub fn is_transitive<M: RelationMonoid>(m: &M) -> bool {
    let n = m.dim();
    let mut union = BooleanRelation::zero(n);
    for i in 0..m.len() {
        union = union.union(m.element(i));
    }
    union.is_full()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::flower_automaton;
    use crate::relmonoid::{enumerate_monoid, green_relations};
    use crate::words::FiniteWordSet;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn naming() {
        let c2 = PermutationGroupRep::generated_by(labels(2), &[vec![1, 0]]).unwrap();
        assert_eq!(c2.name(), "C2");
        assert_eq!(c2.cycle_notation(&[1, 0]), "(1 2)");
        let s3 = PermutationGroupRep::generated_by(labels(3), &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.name(), "S3");
        assert!(s3.is_transitive());
        let a4 = PermutationGroupRep::generated_by(labels(4), &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]]).unwrap();
        assert_eq!(a4.name(), "A4");
        assert_eq!(PermutationGroupRep::trivial(labels(1)).name(), "1");
    }

    #[test]
    fn equivalence() {
        let c2 = PermutationGroupRep::generated_by(labels(2), &[vec![1, 0]]).unwrap();
        let t2 = PermutationGroupRep::trivial(labels(2));
        assert!(groups_equivalent(&c2, &c2).unwrap());
        assert!(!groups_equivalent(&c2, &t2).unwrap());
        // ⟨(1 2)⟩ and ⟨(3 4)⟩ on 4 points are conjugate; ⟨(1 2)(3 4)⟩ is not
        let a = PermutationGroupRep::generated_by(labels(4), &[vec![1, 0, 2, 3]]).unwrap();
        let b = PermutationGroupRep::generated_by(labels(4), &[vec![0, 1, 3, 2]]).unwrap();
        let c = PermutationGroupRep::generated_by(labels(4), &[vec![1, 0, 3, 2]]).unwrap();
        assert!(groups_equivalent(&a, &b).unwrap());
        assert!(!groups_equivalent(&a, &c).unwrap());
        let big = PermutationGroupRep::generated_by(labels(9), &[]).unwrap();
        assert!(groups_equivalent(&big, &big).is_err());
    }

    #[test]
    fn swap_group_of_a2() {
        let x = FiniteWordSet::from_strs(&["aa"]).unwrap();
        let m = enumerate_monoid(&flower_automaton(&x)).unwrap();
        let g = green_relations(&m);
        let gamma = gamma_representation(&m, &g, 0).unwrap();
        assert_eq!(gamma.group.order(), 2);
        assert_eq!(gamma.images[0], vec![0, 1]);
        assert_eq!(gamma.images[1], vec![1, 0]);
        assert_eq!(gamma.rep.name(), "C2");
        assert_eq!(minimal_rank(&m).unwrap().rank, 2);
    }

    #[test]
    fn aba_minimal_rank() {
        let x = FiniteWordSet::from_strs(&["a", "ab", "ba"]).unwrap();
        let m = enumerate_monoid(&flower_automaton(&x)).unwrap();
        let r = minimal_rank(&m).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(m.format_witness(r.idempotent), "aa");
        assert!(r.cross_checked);
        assert!(is_transitive(&m));
    }

    #[test]
    fn identity_monoid_is_not_transitive() {
        let m = TransitionMonoid::from_generators(
            crate::words::Alphabet::from_chars("a").unwrap(),
            vec![BooleanRelation::identity(2)],
        )
        .unwrap();
        assert!(!is_transitive(&m));
    }
}
