use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::{flower_automaton, recognizes_with_multiplicities, MultiplicityAutomaton};
use crate::error::{Error, Result};
use crate::relmonoid::{BooleanRelation, TransitionMonoid};
use crate::words::{minimal_generating_set, FiniteWordSet, Letter, Word};

/// Cap on visited (target state, source subset) pairs in the lifting search.
pub const REDUCTION_SEARCH_BUDGET: usize = 1 << 20;

/// A surjective state map ρ: P → Q between two automata over one alphabet,
/// sending initial to initial and terminal to terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    source: MultiplicityAutomaton,
    target: MultiplicityAutomaton,
    map: Vec<usize>,
}

impl ReductionMap {
    pub fn new(
        source: MultiplicityAutomaton,
        target: MultiplicityAutomaton,
        map: Vec<usize>,
    ) -> Result<Self> {
        if source.alphabet().symbols() != target.alphabet().symbols() {
            return Err(Error::input("source and target automata use different alphabets"));
        }
        if map.len() != source.num_states() {
            return Err(Error::input(format!(
                "the map has {} entries for {} source states",
                map.len(),
                source.num_states()
            )));
        }
        let mut hit = vec![false; target.num_states()];
        for &q in &map {
            if q >= target.num_states() {
                return Err(Error::input(format!("image state #{q} out of range")));
            }
            hit[q] = true;
        }
        if let Some(q) = hit.iter().position(|&h| !h) {
            return Err(Error::input(format!(
                "the map is not surjective: {} has no preimage",
                target.state_label(q)
            )));
        }
        if map[source.initial()] != target.initial() || map[source.terminal()] != target.terminal() {
            return Err(Error::input(
                "the map must send initial to initial and terminal to terminal",
            ));
        }
        Ok(ReductionMap { source, target, map })
    }

    /// Builds the map from (source label, target label) pairs.
    pub fn from_labels(
        source: MultiplicityAutomaton,
        target: MultiplicityAutomaton,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let mut map = vec![usize::MAX; source.num_states()];
        for (p, q) in pairs {
            let pi = source
                .state_index(p)
                .ok_or_else(|| Error::input(format!("unknown source state {p:?}")))?;
            let qi = target
                .state_index(q)
                .ok_or_else(|| Error::input(format!("unknown target state {q:?}")))?;
            map[pi] = qi;
        }
        if let Some(p) = map.iter().position(|&q| q == usize::MAX) {
            return Err(Error::input(format!(
                "no image given for {}",
                source.state_label(p)
            )));
        }
        ReductionMap::new(source, target, map)
    }

    pub fn source(&self) -> &MultiplicityAutomaton {
        &self.source
    }

    pub fn target(&self) -> &MultiplicityAutomaton {
        &self.target
    }

    pub fn image(&self, p: usize) -> usize {
        self.map[p]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn fiber(&self, q: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&p| self.map[p] == q).collect()
    }

    pub fn is_sharp_shape(&self) -> bool {
        self.fiber(self.target.initial()).len() == 1 && self.fiber(self.target.terminal()).len() == 1
    }
}

/// Why a map fails to be a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionFailure {
    /// A source edge p -a-> p' whose image ρ(p) -a-> ρ(p') is missing.
    Unprojected { witness: Word, from: usize, to: usize },
    /// A target path q -w-> q' with no source path between the fibers.
    Unlifted { witness: Word, from: usize, to: usize },
}

impl ReductionFailure {
    pub fn witness(&self) -> &Word {
        match self {
            ReductionFailure::Unprojected { witness, .. } | ReductionFailure::Unlifted { witness, .. } => witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionVerdict {
    NotReduction(ReductionFailure),
    Reduction,
    SharpReduction,
}

impl ReductionVerdict {
    pub fn is_reduction(&self) -> bool {
        !matches!(self, ReductionVerdict::NotReduction(_))
    }

    pub fn is_sharp(&self) -> bool {
        matches!(self, ReductionVerdict::SharpReduction)
    }
}

/// Decides the two-sided path condition defining a reduction.
///
/// Projection of paths reduces to projection of edges. Lifting is decided
/// by a breadth-first search over pairs (q', S) where S is the set of source
/// states reached from the fiber of the start state; a pair whose S misses
/// the fiber of q' is a counterexample. Words are explored shortest first.
pub fn check_reduction(rho: &ReductionMap) -> Result<ReductionVerdict> {
    let (a, b) = (&rho.source, &rho.target);
    for (p, l, p2) in a.edges() {
        if !b.has_edge(rho.map[p], l, rho.map[p2]) {
            return Ok(ReductionVerdict::NotReduction(ReductionFailure::Unprojected {
                witness: Word::from(vec![l]),
                from: p,
                to: p2,
            }));
        }
    }

    let np = a.num_states();
    let fibers: Vec<FixedBitSet> = (0..b.num_states())
        .map(|q| {
            let mut s = FixedBitSet::with_capacity(np);
            for p in rho.fiber(q) {
                s.insert(p);
            }
            s
        })
        .collect();
    // node -> (parent node, letter, start state)
    let mut nodes: Vec<(usize, FixedBitSet)> = Vec::new();
    let mut parent: Vec<Option<(usize, Letter)>> = Vec::new();
    let mut origin: Vec<usize> = Vec::new();
    let mut index: HashMap<(usize, FixedBitSet), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for q in 0..b.num_states() {
        let key = (q, fibers[q].clone());
        if !index.contains_key(&key) {
            index.insert(key.clone(), nodes.len());
            queue.push_back(nodes.len());
            nodes.push(key);
            parent.push(None);
            origin.push(q);
        }
    }
    while let Some(id) = queue.pop_front() {
        let (q, set) = nodes[id].clone();
        if set.is_disjoint(&fibers[q]) {
            let mut letters = Vec::new();
            let mut cur = id;
            while let Some((prev, l)) = parent[cur] {
                letters.push(l);
                cur = prev;
            }
            letters.reverse();
            return Ok(ReductionVerdict::NotReduction(ReductionFailure::Unlifted {
                witness: Word::from(letters),
                from: origin[id],
                to: q,
            }));
        }
        for l in a.alphabet().letters() {
            let mut next = FixedBitSet::with_capacity(np);
            for p in set.ones() {
                for &p2 in a.successors(p, l) {
                    next.insert(p2);
                }
            }
            for &q2 in b.successors(q, l) {
                let key = (q2, next.clone());
                if index.contains_key(&key) {
                    continue;
                }
                if nodes.len() >= REDUCTION_SEARCH_BUDGET {
                    return Err(Error::resource(format!(
                        "reduction search exceeded {REDUCTION_SEARCH_BUDGET} states"
                    )));
                }
                index.insert(key.clone(), nodes.len());
                queue.push_back(nodes.len());
                nodes.push(key);
                parent.push(Some((id, l)));
                origin.push(origin[id]);
            }
        }
    }
    Ok(if rho.is_sharp_shape() {
        ReductionVerdict::SharpReduction
    } else {
        ReductionVerdict::Reduction
    })
}

/// The sharp reduction from the flower automaton of X onto a trim
/// automaton `b` recognizing X* with multiplicities: ω ↦ i and
/// (u,v) ↦ the unique q with i -u-> q -v-> i.
pub fn canonical_sharp_reduction(x: &FiniteWordSet, b: &MultiplicityAutomaton) -> Result<ReductionMap> {
    if minimal_generating_set(x).len() != x.len() {
        return Err(Error::hypothesis(format!(
            "{x} is not the minimal generating set of its submonoid"
        )));
    }
    if b.initial() != b.terminal() {
        return Err(Error::hypothesis("the automaton must have equal initial and terminal states"));
    }
    let x = x.reinterpret(b.alphabet())?;
    if !recognizes_with_multiplicities(b, &x)? {
        return Err(Error::hypothesis(format!(
            "the automaton does not recognize {x}* with multiplicities"
        )));
    }
    let flower = flower_automaton(&x);
    let i = b.initial();
    let mut map = vec![i];
    for w in x.words() {
        let letters = w.letters();
        for k in 1..letters.len() {
            let reach = b.phi(&Word::from(&letters[..k]))?;
            let back = b.phi(&Word::from(&letters[k..]))?;
            let mids: Vec<usize> = (0..b.num_states())
                .filter(|&q| reach.get(i, q) && back.get(q, i))
                .collect();
            match mids[..] {
                [q] => map.push(q),
                _ => {
                    return Err(Error::invariant(format!(
                        "{} middle states for the split {}|{} of {}",
                        mids.len(),
                        x.format_word(&Word::from(&letters[..k])),
                        x.format_word(&Word::from(&letters[k..])),
                        x.format_word(w)
                    )))
                }
            }
        }
    }
    let rho = ReductionMap::new(flower, b.clone(), map)?;
    match check_reduction(&rho)? {
        ReductionVerdict::SharpReduction => Ok(rho),
        other => Err(Error::invariant(format!(
            "the canonical map is not a sharp reduction: {other:?}"
        ))),
    }
}

/// ρ̂(φ_A(w)) = φ_B(w).
pub fn induced_morphism(rho: &ReductionMap, w: &Word) -> Result<BooleanRelation> {
    rho.target.phi(w)
}

/// ρ̂ on every element of the transition monoid of the source, indexed like
/// the monoid. Checks ρ̂(m·a) = ρ̂(m)·φ_B(a) for all m and letters a, which
/// shows ρ̂ does not depend on the chosen witnesses.
pub fn induced_morphism_table(rho: &ReductionMap, monoid: &TransitionMonoid) -> Result<Vec<BooleanRelation>> {
    if monoid.dim() != rho.source.num_states() {
        return Err(Error::input("the monoid does not act on the source automaton"));
    }
    let table: Vec<BooleanRelation> = (0..monoid.len())
        .map(|m| induced_morphism(rho, monoid.witness(m)))
        .collect::<Result<_>>()?;
    for m in 0..monoid.len() {
        for l in rho.source.alphabet().letters() {
            let ma = monoid.right(m, l);
            let expected = table[m].mul(&rho.target.letter_relation(l));
            if table[ma] != expected {
                return Err(Error::invariant(format!(
                    "the induced morphism is not well defined at {}",
                    rho.source.alphabet().format_word(monoid.witness(ma))
                )));
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::prefix_automaton;
    use crate::words::Alphabet;

    fn set(words: &[&str]) -> FiniteWordSet {
        FiniteWordSet::from_strs(words).unwrap()
    }

    #[test]
    fn identity_is_sharp() {
        let f = flower_automaton(&set(&["a", "ab", "ba"]));
        let rho = ReductionMap::new(f.clone(), f.clone(), (0..f.num_states()).collect()).unwrap();
        assert_eq!(check_reduction(&rho).unwrap(), ReductionVerdict::SharpReduction);
    }

    #[test]
    fn fibonacci_onto_one_state_is_not_sharp() {
        let x = set(&["a", "aa"]);
        let f = flower_automaton(&x);
        let one = MultiplicityAutomaton::single_state(x.alphabet().clone(), &[Letter(0)]).unwrap();
        let rho = ReductionMap::new(f, one, vec![0, 0]).unwrap();
        assert_eq!(check_reduction(&rho).unwrap(), ReductionVerdict::Reduction);
    }

    #[test]
    fn a2_flower_onto_three_state_pair_fails() {
        let x = set(&["aa"]);
        let f = flower_automaton(&x);
        let a = Alphabet::from_chars("a").unwrap();
        let pair = MultiplicityAutomaton::from_labels(
            a,
            &["1", "2", "3"],
            "1",
            "1",
            &[("1", "a", "2"), ("2", "a", "1"), ("1", "a", "3"), ("3", "a", "1")],
        )
        .unwrap();
        // two states cannot cover three, so no surjection exists at all
        assert!(ReductionMap::new(f, pair, vec![0, 1]).is_err());
    }

    #[test]
    fn unlifted_path_is_reported() {
        // target has an a-loop at 1 that the source cannot follow
        let a = Alphabet::from_chars("a").unwrap();
        let src = MultiplicityAutomaton::from_labels(
            a.clone(),
            &["1", "2"],
            "1",
            "1",
            &[("1", "a", "2"), ("2", "a", "1")],
        )
        .unwrap();
        let tgt = MultiplicityAutomaton::from_labels(
            a,
            &["1", "2"],
            "1",
            "1",
            &[("1", "a", "2"), ("2", "a", "1"), ("1", "a", "1")],
        )
        .unwrap();
        let rho = ReductionMap::new(src, tgt, vec![0, 1]).unwrap();
        match check_reduction(&rho).unwrap() {
            ReductionVerdict::NotReduction(ReductionFailure::Unlifted { witness, from, to }) => {
                assert_eq!(witness.len(), 1);
                assert_eq!((from, to), (0, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn canonical_onto_prefix() {
        let x = set(&["aa", "aaa"]);
        let p = prefix_automaton(&x);
        let rho = canonical_sharp_reduction(&x, &p).unwrap();
        let labels: Vec<&str> = rho.map().iter().map(|&q| p.state_label(q)).collect();
        assert_eq!(labels, ["1", "a", "a", "aa"]);
        assert!(check_reduction(&rho).unwrap().is_sharp());
    }

    #[test]
    fn canonical_requires_minimal_set() {
        let x = set(&["a", "aa"]);
        let p = prefix_automaton(&x);
        assert!(matches!(
            canonical_sharp_reduction(&x, &p),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn induced_morphism_is_well_defined() {
        let x = set(&["aa", "aaa"]);
        let p = prefix_automaton(&x);
        let rho = canonical_sharp_reduction(&x, &p).unwrap();
        let m = TransitionMonoid::of_automaton(rho.source()).unwrap();
        let table = induced_morphism_table(&rho, &m).unwrap();
        for (k, img) in table.iter().enumerate() {
            if m.element(k).is_idempotent() {
                assert!(img.is_idempotent());
            }
        }
    }
}
