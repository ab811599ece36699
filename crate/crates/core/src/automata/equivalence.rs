use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{prefix_automaton, MultiplicityAutomaton};
use crate::error::{Error, Result};
use crate::words::{FiniteWordSet, Letter, Word};

/// Outcome of comparing two ℕ-behaviors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// A word on which the two path counts differ.
    Differ(Word),
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

/// Row vector of the joint automaton (left block for `a`, right for `b`).
type Vector = Vec<BigRational>;

struct Basis {
    /// Reduced rows, each with its pivot column.
    rows: Vec<(usize, Vector)>,
}

impl Basis {
    /// Reduces `v` against the basis; inserts it when independent.
    fn insert(&mut self, v: &Vector) -> bool {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[pivot].clone();
        for x in v.iter_mut() {
            *x /= &lead;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Decides whether the two automata have the same ℕ-behavior, exactly.
///
/// Letters are matched by symbol; a letter unknown to one automaton acts as
/// the zero matrix there. The reachable subspace of the joint row vector
/// (α_a μ_a(w), α_b μ_b(w)) has dimension at most |Q_a| + |Q_b|, and the
/// behaviors agree iff every spanning vector is orthogonal to (t_a, −t_b).
pub fn behaviors_equal(a: &MultiplicityAutomaton, b: &MultiplicityAutomaton) -> Equivalence {
    let (na, nb) = (a.num_states(), b.num_states());
    let n = na + nb;
    let mut symbols: Vec<&str> = a
        .alphabet()
        .symbols()
        .iter()
        .chain(b.alphabet().symbols())
        .map(String::as_str)
        .collect();
    symbols.sort_unstable();
    symbols.dedup();
    // successors in the joint automaton, per joint letter
    let step = |v: &Vector, sym: &str| -> Vector {
        let mut out = vec![BigRational::zero(); n];
        if let Some(l) = a.alphabet().letter(sym) {
            for p in 0..na {
                if v[p].is_zero() {
                    continue;
                }
                for &q in a.successors(p, l) {
                    out[q] += &v[p];
                }
            }
        }
        if let Some(l) = b.alphabet().letter(sym) {
            for p in 0..nb {
                if v[na + p].is_zero() {
                    continue;
                }
                for &q in b.successors(p, l) {
                    out[na + q] += &v[na + p];
                }
            }
        }
        out
    };
    let value = |v: &Vector| &v[a.terminal()] - &v[na + b.terminal()];

    let mut start = vec![BigRational::zero(); n];
    start[a.initial()] = BigRational::one();
    start[na + b.initial()] = BigRational::one();
    let mut basis = Basis { rows: Vec::new() };
    basis.insert(&start);
    let mut queue = VecDeque::from([(start, Vec::<usize>::new())]);
    while let Some((v, word)) = queue.pop_front() {
        if !value(&v).is_zero() {
            return Equivalence::Differ(joint_word(a, b, &symbols, &word));
        }
        for (k, sym) in symbols.iter().enumerate() {
            let next = step(&v, sym);
            if basis.insert(&next) {
                let mut w = word.clone();
                w.push(k);
                queue.push_back((next, w));
            }
        }
    }
    Equivalence::Equal
}

fn joint_word(
    a: &MultiplicityAutomaton,
    b: &MultiplicityAutomaton,
    symbols: &[&str],
    word: &[usize],
) -> Word {
    // Report the word over `a`'s alphabet when possible, else over `b`'s.
    let over = |m: &MultiplicityAutomaton| -> Option<Word> {
        word.iter()
            .map(|&k| m.alphabet().letter(symbols[k]))
            .collect::<Option<Vec<Letter>>>()
            .map(Word::from)
    };
    over(a).or_else(|| over(b)).unwrap_or_default()
}

/// Whether the trim automaton `m` has behavior u(X)*, i.e. counts exactly
/// the factorizations over X of every word.
pub fn recognizes_with_multiplicities(m: &MultiplicityAutomaton, x: &FiniteWordSet) -> Result<bool> {
    if !m.is_trim() {
        return Err(Error::hypothesis(
            "the automaton is not trim; trim it before comparing behaviors",
        ));
    }
    Ok(behaviors_equal(m, &prefix_automaton(x)).is_equal())
}
