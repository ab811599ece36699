use std::collections::HashMap;

use super::BooleanRelation;
use crate::automata::MultiplicityAutomaton;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// Default cap on the number of enumerated monoid elements.
pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;

/// Element budget, overridable through `SUBMONOID_MAX_ELEMENTS`.
pub fn max_elements() -> usize {
    std::env::var("SUBMONOID_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ELEMENTS)
}

/// A finite monoid of relations on {0, …, n-1} with indexed elements.
pub trait RelationMonoid {
    fn dim(&self) -> usize;
    fn len(&self) -> usize;
    fn element(&self, i: usize) -> &BooleanRelation;
    fn index_of(&self, m: &BooleanRelation) -> Option<usize>;
    /// A printable name for the element (a witness word when available).
    fn name(&self, i: usize) -> String;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn product(&self, i: usize, j: usize) -> usize {
        let m = self.element(i).mul(self.element(j));
        self.index_of(&m).expect("monoid closed under product")
    }
}

/// The transition monoid φ(A*) generated by one relation per letter.
///
/// Elements are numbered in breadth-first order from the identity, so the
/// witness of each element is its shortlex-least word.
#[derive(Debug, Clone)]
pub struct TransitionMonoid {
    alphabet: Alphabet,
    generators: Vec<BooleanRelation>,
    elements: Vec<BooleanRelation>,
    witnesses: Vec<Word>,
    index: HashMap<BooleanRelation, usize>,
    right: Vec<usize>,
    left: Vec<usize>,
}

impl TransitionMonoid {
    pub fn from_generators(alphabet: Alphabet, generators: Vec<BooleanRelation>) -> Result<Self> {
        Self::with_budget(alphabet, generators, max_elements())
    }

    pub fn with_budget(
        alphabet: Alphabet,
        generators: Vec<BooleanRelation>,
        budget: usize,
    ) -> Result<Self> {
        if generators.len() != alphabet.len() {
            return Err(Error::input("one generator per letter is required"));
        }
        let n = match generators.first() {
            Some(g) => g.dim(),
            None => return Err(Error::input("no generators")),
        };
        if generators.iter().any(|g| g.dim() != n) {
            return Err(Error::input("generators of different dimensions"));
        }
        let k = generators.len();
        let identity = BooleanRelation::identity(n);
        let mut elements = vec![identity.clone()];
        let mut witnesses = vec![Word::empty()];
        let mut index = HashMap::from([(identity, 0)]);
        let mut right = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            for (a, g) in generators.iter().enumerate() {
                let next = elements[head].mul(g);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= budget {
                            return Err(Error::resource(format!(
                                "transition monoid exceeds {budget} elements"
                            )));
                        }
                        let mut w = witnesses[head].clone();
                        w.push(Letter(a as u16));
                        index.insert(next.clone(), elements.len());
                        elements.push(next);
                        witnesses.push(w);
                        elements.len() - 1
                    }
                };
                right.push(id);
            }
            head += 1;
        }
        let mut left = Vec::with_capacity(elements.len() * k);
        for m in &elements {
            for g in &generators {
                let gm = g.mul(m);
                left.push(*index.get(&gm).ok_or_else(|| {
                    Error::invariant("left product escaped the enumerated monoid")
                })?);
            }
        }
        Ok(TransitionMonoid {
            alphabet,
            generators,
            elements,
            witnesses,
            index,
            right,
            left,
        })
    }

    pub fn of_automaton(a: &MultiplicityAutomaton) -> Result<Self> {
        let generators = a.alphabet().letters().map(|l| a.letter_relation(l)).collect();
        Self::from_generators(a.alphabet().clone(), generators)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &BooleanRelation {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &BooleanRelation) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn generators(&self) -> &[BooleanRelation] {
        &self.generators
    }

    pub fn elements(&self) -> &[BooleanRelation] {
        &self.elements
    }

    /// Shortlex-least word mapping to the element.
    pub fn witness(&self, i: usize) -> &Word {
        &self.witnesses[i]
    }

    pub fn format_witness(&self, i: usize) -> String {
        self.alphabet.format_word(&self.witnesses[i])
    }

    /// Index of m·φ(a).
    pub fn right(&self, i: usize, a: Letter) -> usize {
        self.right[i * self.generators.len() + a.index()]
    }

    /// Index of φ(a)·m.
    pub fn left(&self, a: Letter, i: usize) -> usize {
        self.left[i * self.generators.len() + a.index()]
    }

    /// Index of the image of a word.
    pub fn evaluate(&self, w: &Word) -> usize {
        w.iter().fold(0, |m, a| self.right(m, a))
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn zero(&self) -> Option<usize> {
        self.elements.iter().position(|m| m.is_zero())
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.elements[i].is_idempotent())
            .collect()
    }
}

impl RelationMonoid for TransitionMonoid {
    fn dim(&self) -> usize {
        TransitionMonoid::dim(self)
    }

    fn len(&self) -> usize {
        TransitionMonoid::len(self)
    }

    fn element(&self, i: usize) -> &BooleanRelation {
        TransitionMonoid::element(self, i)
    }

    fn index_of(&self, m: &BooleanRelation) -> Option<usize> {
        TransitionMonoid::index_of(self, m)
    }

    fn name(&self, i: usize) -> String {
        self.format_witness(i)
    }
}

/// The transition monoid of an automaton.
pub fn enumerate_monoid(a: &MultiplicityAutomaton) -> Result<TransitionMonoid> {
    TransitionMonoid::of_automaton(a)
}
