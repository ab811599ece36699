//! Automata with a single initial and a single terminal state, read with
//! multiplicities (number of paths) or as boolean transition relations.

mod equivalence;
mod reduction;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::relmonoid::BooleanRelation;
use crate::words::{Alphabet, FiniteWordSet, Letter, Word};

pub use equivalence::{behaviors_equal, recognizes_with_multiplicities, Equivalence};
pub use reduction::{
    canonical_sharp_reduction, check_reduction, induced_morphism, induced_morphism_table,
    ReductionFailure, ReductionMap, ReductionVerdict, REDUCTION_SEARCH_BUDGET,
};

/// A finite automaton (Q, i, t) whose edges form a set of triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityAutomaton {
    alphabet: Alphabet,
    states: Vec<String>,
    initial: usize,
    terminal: usize,
    edges: BTreeSet<(usize, Letter, usize)>,
    delta: Vec<Vec<Vec<usize>>>,
    trim: bool,
}

impl MultiplicityAutomaton {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        terminal: usize,
        edges: impl IntoIterator<Item = (usize, Letter, usize)>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::input("an automaton needs at least one state"));
        }
        if initial >= n || terminal >= n {
            return Err(Error::input("initial or terminal state out of range"));
        }
        let mut labels = BTreeSet::new();
        for s in &states {
            if !labels.insert(s.as_str()) {
                return Err(Error::input(format!("duplicate state label {s:?}")));
            }
        }
        let edges: BTreeSet<_> = edges.into_iter().collect();
        let mut delta = vec![vec![Vec::new(); alphabet.len()]; n];
        for &(p, a, q) in &edges {
            if p >= n || q >= n {
                return Err(Error::input(format!("edge ({p}, {q}) uses an unknown state")));
            }
            if !alphabet.contains(a) {
                return Err(Error::input(format!("edge label #{} outside the alphabet", a.0)));
            }
            delta[p][a.index()].push(q);
        }
        let mut automaton = MultiplicityAutomaton {
            alphabet,
            states,
            initial,
            terminal,
            edges,
            delta,
            trim: false,
        };
        let useful = automaton.useful_states();
        automaton.trim = useful.len() == n;
        Ok(automaton)
    }

    /// Builds an automaton from state labels and edges given by label.
    pub fn from_labels(
        alphabet: Alphabet,
        states: &[&str],
        initial: &str,
        terminal: &str,
        edges: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let find = |label: &str| {
            states
                .iter()
                .position(|s| s == label)
                .ok_or_else(|| Error::input(format!("unknown state {label:?}")))
        };
        let mut triples = Vec::new();
        for (p, a, q) in edges {
            let letter = alphabet
                .letter(a)
                .ok_or_else(|| Error::input(format!("unknown letter {a:?}")))?;
            triples.push((find(p)?, letter, find(q)?));
        }
        let (i, t) = (find(initial)?, find(terminal)?);
        MultiplicityAutomaton::new(alphabet, states, i, t, triples)
    }

    /// One state, initial and terminal, with a loop on each given letter.
    pub fn single_state(alphabet: Alphabet, loops: &[Letter]) -> Result<Self> {
        let edges: Vec<_> = loops.iter().map(|&a| (0, a, 0)).collect();
        MultiplicityAutomaton::new(alphabet, vec!["1".into()], 0, 0, edges)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_label(&self, p: usize) -> &str {
        &self.states[p]
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn terminal(&self) -> usize {
        self.terminal
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, p: usize, a: Letter, q: usize) -> bool {
        self.edges.contains(&(p, a, q))
    }

    pub fn successors(&self, p: usize, a: Letter) -> &[usize] {
        &self.delta[p][a.index()]
    }

    /// Every state is reachable from the initial state and co-reachable to
    /// the terminal state.
    pub fn is_trim(&self) -> bool {
        self.trim
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for targets in &self.delta[p] {
                for &q in targets {
                    if !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        seen
    }

    fn coreachable_to(&self, end: usize) -> Vec<bool> {
        let n = self.num_states();
        let mut back = vec![Vec::new(); n];
        for &(p, _, q) in &self.edges {
            back[q].push(p);
        }
        let mut seen = vec![false; n];
        seen[end] = true;
        let mut queue = VecDeque::from([end]);
        while let Some(q) = queue.pop_front() {
            for &p in &back[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    fn useful_states(&self) -> Vec<usize> {
        let fwd = self.reachable_from(self.initial);
        let bwd = self.coreachable_to(self.terminal);
        (0..self.num_states()).filter(|&p| fwd[p] && bwd[p]).collect()
    }

    /// The trim part, with the list of kept original states (in order).
    /// Fails when no path joins the initial and terminal states.
    pub fn trim_part(&self) -> Result<(MultiplicityAutomaton, Vec<usize>)> {
        let kept = self.useful_states();
        if !kept.contains(&self.initial) || !kept.contains(&self.terminal) {
            return Err(Error::input("the automaton recognizes the empty language"));
        }
        let mut renumber = BTreeMap::new();
        for (new, &old) in kept.iter().enumerate() {
            renumber.insert(old, new);
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter_map(|&(p, a, q)| Some((*renumber.get(&p)?, a, *renumber.get(&q)?)))
            .collect();
        let states = kept.iter().map(|&p| self.states[p].clone()).collect();
        let trimmed = MultiplicityAutomaton::new(
            self.alphabet.clone(),
            states,
            renumber[&self.initial],
            renumber[&self.terminal],
            edges,
        )?;
        Ok((trimmed, kept))
    }

    /// Boolean transition relation of a single letter.
    pub fn letter_relation(&self, a: Letter) -> BooleanRelation {
        let n = self.num_states();
        BooleanRelation::from_pairs(
            n,
            (0..n).flat_map(|p| self.successors(p, a).iter().map(move |&q| (p, q))),
        )
    }

    pub fn letter_matrix(&self, a: Letter) -> IntegerMatrix {
        let n = self.num_states();
        let mut m = IntegerMatrix::zero(n);
        for p in 0..n {
            for &q in self.successors(p, a) {
                m.entries[p * n + q] = BigUint::one();
            }
        }
        m
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.iter().find(|&l| !self.alphabet.contains(l)) {
            Some(l) => Err(Error::input(format!("letter #{} outside the alphabet", l.0))),
            None => Ok(()),
        }
    }

    /// μ(w): entry (p, q) counts the paths p → q labelled w.
    pub fn mu(&self, w: &Word) -> Result<IntegerMatrix> {
        self.check_word(w)?;
        Ok(w.iter().fold(IntegerMatrix::identity(self.num_states()), |acc, a| {
            acc.mul(&self.letter_matrix(a))
        }))
    }

    /// φ(w): the boolean transition relation of w.
    pub fn phi(&self, w: &Word) -> Result<BooleanRelation> {
        self.check_word(w)?;
        Ok(w.iter().fold(BooleanRelation::identity(self.num_states()), |acc, a| {
            acc.mul(&self.letter_relation(a))
        }))
    }

    /// Number of paths from the initial to the terminal state labelled w,
    /// i.e. the (i, t) entry of μ(w), propagated as a row vector.
    pub fn behavior_count(&self, w: &Word) -> Result<BigUint> {
        self.check_word(w)?;
        let n = self.num_states();
        let mut row = vec![BigUint::zero(); n];
        row[self.initial] = BigUint::one();
        for a in w.iter() {
            let mut next = vec![BigUint::zero(); n];
            for (p, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &q in self.successors(p, a) {
                    next[q] += c;
                }
            }
            row = next;
        }
        Ok(row.swap_remove(self.terminal))
    }

    /// Whether some path from the initial to the terminal state is labelled w.
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        Ok(self.phi(w)?.get(self.initial, self.terminal))
    }
}

/// Square matrix of nonnegative integers indexed by the states of an
/// automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    n: usize,
    entries: Vec<BigUint>,
}

impl IntegerMatrix {
    pub fn zero(n: usize) -> Self {
        IntegerMatrix {
            n,
            entries: vec![BigUint::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigUint::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.entries[i * n + j] = BigUint::from(v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> &BigUint {
        &self.entries[p * self.n + q]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn to_boolean(&self) -> BooleanRelation {
        let n = self.n;
        BooleanRelation::from_pairs(
            n,
            (0..n)
                .flat_map(|p| (0..n).map(move |q| (p, q)))
                .filter(|&(p, q)| !self.get(p, q).is_zero()),
        )
    }

    /// Row-major text with state labels as row and column headers.
    pub fn render(&self, labels: &[String]) -> String {
        let cells: Vec<Vec<String>> = (0..self.n)
            .map(|p| (0..self.n).map(|q| self.get(p, q).to_string()).collect())
            .collect();
        render_table(labels, &cells)
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|p| {
                let row: Vec<String> = (0..self.n).map(|q| self.get(p, q).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub(crate) fn render_table(labels: &[String], cells: &[Vec<String>]) -> String {
    let width = labels
        .iter()
        .map(|s| s.chars().count())
        .chain(cells.iter().flatten().map(|s| s.chars().count()))
        .max()
        .unwrap_or(1);
    let pad = |s: &str| format!("{s:>width$}");
    let mut out = String::new();
    out.push_str(&pad(""));
    for l in labels {
        out.push(' ');
        out.push_str(&pad(l));
    }
    for (l, row) in labels.iter().zip(cells) {
        out.push('\n');
        out.push_str(&pad(l));
        for c in row {
            out.push(' ');
            out.push_str(&pad(c));
        }
    }
    out
}

fn pair_label(alphabet: &Alphabet, u: &Word, v: &Word) -> String {
    format!("({},{})", alphabet.format_word(u), alphabet.format_word(v))
}

/// Label of the hub state (1,1) of a flower automaton.
pub const OMEGA: &str = "ω";

/// The flower automaton of X: states ω = (1,1) and the pairs (u,v) of
/// nonempty words with uv ∈ X; ω is initial and terminal.
///
/// States after ω are ordered by the word uv (shortlex), then by |u|.
pub fn flower_automaton(x: &FiniteWordSet) -> MultiplicityAutomaton {
    let alphabet = x.alphabet().clone();
    let mut states = vec![OMEGA.to_string()];
    // id of the state reached after reading k letters of the word
    let mut ids: Vec<Vec<usize>> = Vec::new();
    for w in x.words() {
        let letters = w.letters();
        let mut row = vec![0; letters.len() + 1];
        for k in 1..letters.len() {
            row[k] = states.len();
            states.push(pair_label(
                &alphabet,
                &Word::from(&letters[..k]),
                &Word::from(&letters[k..]),
            ));
        }
        ids.push(row);
    }
    let mut edges = Vec::new();
    for (w, row) in x.words().zip(&ids) {
        for (k, a) in w.iter().enumerate() {
            // row[0] and row[len] are both ω
            edges.push((row[k], a, row[k + 1]));
        }
    }
    MultiplicityAutomaton::new(alphabet, states, 0, 0, edges).expect("flower automaton is well formed")
}

/// The prefix automaton of X on the proper prefixes of X (1 first, then
/// shortlex): p → pa when pa is a proper prefix, p → 1 when pa ∈ X.
pub fn prefix_automaton(x: &FiniteWordSet) -> MultiplicityAutomaton {
    let (states, edges) = prefix_skeleton(x);
    let labels = states.iter().map(|p| x.format_word(p)).collect();
    MultiplicityAutomaton::new(
        x.alphabet().clone(),
        labels,
        0,
        0,
        edges.into_iter().map(|(p, a, q, _)| (p, a, q)),
    )
    .expect("prefix automaton is well formed")
}

/// Proper prefixes of X in shortlex order and the edges of the prefix
/// automaton, each tagged with the completed word of X when it returns to 1.
pub(crate) fn prefix_skeleton(
    x: &FiniteWordSet,
) -> (Vec<Word>, Vec<(usize, Letter, usize, Option<Word>)>) {
    let mut prefixes = BTreeSet::new();
    for w in x.words() {
        for k in 0..w.len() {
            prefixes.insert(Word::from(&w.letters()[..k]));
        }
    }
    let prefixes: Vec<Word> = prefixes.into_iter().collect();
    let index: BTreeMap<&Word, usize> = prefixes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (i, p) in prefixes.iter().enumerate() {
        for a in x.alphabet().letters() {
            let mut pa = p.clone();
            pa.push(a);
            if let Some(&j) = index.get(&pa) {
                edges.push((i, a, j, None));
            }
            if x.contains(&pa) {
                edges.push((i, a, 0, Some(pa)));
            }
        }
    }
    (prefixes, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(words: &[&str]) -> FiniteWordSet {
        FiniteWordSet::from_strs(words).unwrap()
    }

    fn edge_strings(m: &MultiplicityAutomaton) -> Vec<String> {
        m.edges()
            .map(|(p, a, q)| {
                format!(
                    "{}-{}->{}",
                    m.state_label(p),
                    m.alphabet().symbol(a),
                    m.state_label(q)
                )
            })
            .collect()
    }

    #[test]
    fn flower_of_a_ab_ba() {
        let f = flower_automaton(&set(&["a", "ab", "ba"]));
        assert_eq!(f.states(), ["ω", "(a,b)", "(b,a)"]);
        assert_eq!(f.num_edges(), 5);
        assert!(f.has_edge(0, Letter(0), 0));
        assert!(f.is_trim());
    }

    #[test]
    fn flower_of_a2_a3() {
        let f = flower_automaton(&set(&["aa", "aaa"]));
        assert_eq!(f.states(), ["ω", "(a,a)", "(a,aa)", "(aa,a)"]);
        let f = flower_automaton(&set(&["a"]));
        assert_eq!(f.num_states(), 1);
        assert_eq!(edge_strings(&f), ["ω-a->ω"]);
    }

    #[test]
    fn prefix_examples() {
        let p = prefix_automaton(&set(&["aa", "aaa"]));
        assert_eq!(p.states(), ["1", "a", "aa"]);
        assert_eq!(edge_strings(&p), ["1-a->a", "a-a->1", "a-a->aa", "aa-a->1"]);
        let p = prefix_automaton(&set(&["a", "ab"]));
        assert_eq!(p.states(), ["1", "a"]);
        assert_eq!(edge_strings(&p), ["1-a->1", "1-a->a", "a-b->1"]);
        let p = prefix_automaton(&set(&["a"]));
        assert_eq!(edge_strings(&p), ["1-a->1"]);
    }

    #[test]
    fn mu_fibonacci() {
        let x = set(&["a", "aa"]);
        let f = flower_automaton(&x);
        let m = f.mu(&x.parse_word("aaa").unwrap()).unwrap();
        assert_eq!(m, IntegerMatrix::from_rows(&[vec![3, 2], vec![2, 1]]));
        assert_eq!(f.mu(&Word::empty()).unwrap(), IntegerMatrix::identity(2));
        let w5 = x.parse_word("aaaaa").unwrap();
        assert_eq!(f.behavior_count(&w5).unwrap(), BigUint::from(8u32));
        assert_eq!(
            prefix_automaton(&x).behavior_count(&w5).unwrap(),
            BigUint::from(8u32)
        );
    }

    #[test]
    fn mu_counts_aba_paths() {
        let x = set(&["a", "ab", "ba"]);
        let f = flower_automaton(&x);
        let m = f.mu(&x.parse_word("aba").unwrap()).unwrap();
        assert_eq!(m.get(0, 0), &BigUint::from(2u32));
    }

    #[test]
    fn phi_examples() {
        let x = set(&["a", "ab", "ba"]);
        let f = flower_automaton(&x);
        let m = f.phi(&x.parse_word("aa").unwrap()).unwrap();
        assert_eq!(m, BooleanRelation::from_rows(&["110", "000", "110"]).unwrap());
        assert_eq!(f.phi(&Word::empty()).unwrap(), BooleanRelation::identity(3));
        let x = set(&["aa"]);
        let f = flower_automaton(&x);
        let m = f.phi(&x.parse_word("a").unwrap()).unwrap();
        assert_eq!(m, BooleanRelation::from_rows(&["01", "10"]).unwrap());
    }

    #[test]
    fn trim_part_drops_dead_states() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let m = MultiplicityAutomaton::from_labels(
            ab,
            &["0", "1", "2"],
            "0",
            "0",
            &[("0", "a", "0"), ("0", "b", "1"), ("2", "a", "0")],
        )
        .unwrap();
        assert!(!m.is_trim());
        let (t, kept) = m.trim_part().unwrap();
        assert_eq!(kept, [0]);
        assert!(t.is_trim());
        assert_eq!(t.num_edges(), 1);
    }

    #[test]
    fn rejects_bad_states() {
        let a = Alphabet::from_chars("a").unwrap();
        assert!(MultiplicityAutomaton::new(a.clone(), vec![], 0, 0, []).is_err());
        assert!(MultiplicityAutomaton::new(a, vec!["x".into()], 0, 0, [(0, Letter(0), 1)]).is_err());
    }
}
