use serde::Serialize;

use crate::automata::{flower_automaton, recognizes_with_multiplicities, MultiplicityAutomaton};
use crate::error::{Error, Result};
use crate::relmonoid::{
    enumerate_monoid, gamma_representation, green_relations, groups_equivalent, minimal_rank,
    PermutationGroupRep,
};
use crate::words::{is_minimal_generating_set, minimal_generating_set, FiniteWordSet, Word};

/// Which automaton a degree was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AutomatonTag {
    Flower,
    Prefix,
    Supplied,
}

/// d(X) and G(X), read off a minimal idempotent of a transition monoid.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    /// The set the degree refers to, after reduction to the minimal
    /// generating set of X*.
    pub set: Vec<String>,
    pub degree: usize,
    pub group: PermutationGroupRep,
    /// Shortlex-least word whose image is the chosen minimal idempotent.
    pub witness: String,
    pub automaton: AutomatonTag,
    #[serde(skip)]
    pub witness_word: Word,
    #[serde(skip)]
    pub normalized: FiniteWordSet,
}

/// Degree and group computed on a given automaton recognizing X*.
pub fn degree_of_automaton(
    x: &FiniteWordSet,
    a: &MultiplicityAutomaton,
    tag: AutomatonTag,
) -> Result<DegreeReport> {
    let monoid = enumerate_monoid(a)?;
    let green = green_relations(&monoid);
    let r = minimal_rank(&monoid)?;
    let gamma = gamma_representation(&monoid, &green, r.idempotent)?;
    if gamma.rep.degree() != r.rank {
        return Err(Error::invariant("group domain differs from the minimal rank"));
    }
    Ok(DegreeReport {
        set: x.to_strings(),
        degree: r.rank,
        group: gamma.rep,
        witness: a.alphabet().format_word(&r.witness),
        automaton: tag,
        witness_word: r.witness,
        normalized: x.clone(),
    })
}

/// d(X) on the flower automaton of the minimal generating set of X*.
pub fn degree(x: &FiniteWordSet) -> Result<DegreeReport> {
    if x.is_empty() {
        return Err(Error::input("the degree of an empty set is undefined"));
    }
    let x = minimal_generating_set(x);
    degree_of_automaton(&x, &flower_automaton(&x), AutomatonTag::Flower)
}

/// Compares degree and group on `a` with those on the flower automaton.
/// `a` must be trim and recognize X* with multiplicities.
pub fn degree_invariance_check(x: &FiniteWordSet, a: &MultiplicityAutomaton) -> Result<bool> {
    if !is_minimal_generating_set(x) {
        return Err(Error::hypothesis("X is not the minimal generating set of X*"));
    }
    if !recognizes_with_multiplicities(a, x)? {
        return Err(Error::hypothesis("the automaton does not recognize X* with multiplicities"));
    }
    let flower = degree(x)?;
    let other = degree_of_automaton(x, a, AutomatonTag::Supplied)?;
    Ok(flower.degree == other.degree && groups_equivalent(&flower.group, &other.group)?)
}

/// X is synchronized exactly when d(X) = 1.
pub fn is_synchronized(x: &FiniteWordSet) -> Result<bool> {
    Ok(degree(x)?.degree == 1)
}
