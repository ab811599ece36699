//! Literal transducers, the flower and prefix decoders of a coding morphism,
//! polynomial transition matrices and the wreath product ℬ∘𝒯.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::automata::{render_table, MultiplicityAutomaton};
use crate::error::{Error, Result};
use crate::relmonoid::BooleanRelation;
use crate::words::{Alphabet, CodingMorphism, FiniteWordSet, Letter, Word, DECODE_BUDGET};

/// A transducer whose edges read one input letter and write one output
/// letter or nothing (`None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralTransducer {
    input: Alphabet,
    output: Alphabet,
    states: Vec<String>,
    initial: usize,
    terminal: usize,
    edges: BTreeSet<(usize, Letter, Option<Letter>, usize)>,
}

impl LiteralTransducer {
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        states: Vec<String>,
        initial: usize,
        terminal: usize,
        edges: impl IntoIterator<Item = (usize, Letter, Option<Letter>, usize)>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 || initial >= n || terminal >= n {
            return Err(Error::input("transducer states out of range"));
        }
        let edges: BTreeSet<_> = edges.into_iter().collect();
        for &(p, a, out, q) in &edges {
            if p >= n || q >= n || !input.contains(a) || out.is_some_and(|b| !output.contains(b)) {
                return Err(Error::input(format!("malformed transducer edge ({p}, {q})")));
            }
        }
        Ok(LiteralTransducer {
            input,
            output,
            states,
            initial,
            terminal,
            edges,
        })
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn terminal(&self) -> usize {
        self.terminal
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, Letter, Option<Letter>, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn format_output(&self, out: Option<Letter>) -> String {
        match out {
            Some(b) => self.output.symbol(b).to_string(),
            None => "1".into(),
        }
    }

    /// The automaton obtained by erasing outputs.
    pub fn input_automaton(&self) -> MultiplicityAutomaton {
        MultiplicityAutomaton::new(
            self.input.clone(),
            self.states.clone(),
            self.initial,
            self.terminal,
            self.edges.iter().map(|&(p, a, _, q)| (p, a, q)),
        )
        .expect("transducer is well formed")
    }

    fn letter_matrix(&self, a: Letter) -> PolyMatrix {
        let n = self.num_states();
        let mut m = PolyMatrix::zero(n);
        for &(p, b, out, q) in &self.edges {
            if b == a {
                let w = Word::from(out.into_iter().collect::<Vec<_>>());
                m.entries[p * n + q].add_term(w, BigUint::one());
            }
        }
        m
    }
}

/// A finite formal sum of output words with positive integer coefficients,
/// kept sorted by word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Word, BigUint>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term(Word::empty(), BigUint::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: BigUint) {
        if !c.is_zero() {
            *self.terms.entry(w).or_insert_with(BigUint::zero) += c;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigUint)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigUint {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                out.add_term(u.concat(v), c * d);
            }
        }
        out
    }

    pub fn add(&mut self, other: &Polynomial) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let w = alphabet.format_word(w);
                if c.is_one() {
                    w
                } else {
                    format!("{c}{w}")
                }
            })
            .collect();
        parts.join("+")
    }
}

/// Square matrix of polynomials indexed by transducer states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![Polynomial::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> &Polynomial {
        &self.entries[p * self.n + q]
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
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
                        let prod = a.mul(b);
                        out.entries[i * n + j].add(&prod);
                    }
                }
            }
        }
        out
    }

    /// Entries written over `alphabet`, one row per line.
    pub fn render(&self, labels: &[String], alphabet: &Alphabet) -> String {
        let cells: Vec<Vec<String>> = (0..self.n)
            .map(|p| (0..self.n).map(|q| self.get(p, q).format(alphabet)).collect())
            .collect();
        render_table(labels, &cells)
    }
}

/// φ_𝒯(u): entry (p, q) sums the outputs of the paths p → q reading u.
pub fn phi_t(t: &LiteralTransducer, u: &Word) -> Result<PolyMatrix> {
    if let Some(l) = u.iter().find(|&l| !t.input.contains(l)) {
        return Err(Error::input(format!("letter #{} outside the input alphabet", l.0)));
    }
    Ok(u.iter().fold(PolyMatrix::identity(t.num_states()), |acc, a| {
        acc.mul(&t.letter_matrix(a))
    }))
}

/// Outputs of the initial-to-terminal paths reading u, with path counts.
pub fn decode(t: &LiteralTransducer, u: &Word) -> Result<BTreeMap<Word, BigUint>> {
    if let Some(l) = u.iter().find(|&l| !t.input.contains(l)) {
        return Err(Error::input(format!("letter #{} outside the input alphabet", l.0)));
    }
    let mut layer: BTreeMap<(usize, Word), BigUint> = BTreeMap::new();
    layer.insert((t.initial, Word::empty()), BigUint::one());
    for a in u.iter() {
        let mut next: BTreeMap<(usize, Word), BigUint> = BTreeMap::new();
        for ((p, w), c) in &layer {
            for &(p2, b, out, q) in t.edges.range((*p, a, None, 0)..) {
                if p2 != *p || b != a {
                    break;
                }
                let mut w2 = w.clone();
                if let Some(o) = out {
                    w2.push(o);
                }
                *next.entry((q, w2)).or_insert_with(BigUint::zero) += c;
                if next.len() > DECODE_BUDGET {
                    return Err(Error::resource(format!(
                        "decoding produced more than {DECODE_BUDGET} partial outputs"
                    )));
                }
            }
        }
        layer = next;
    }
    Ok(layer
        .into_iter()
        .filter(|((q, _), _)| *q == t.terminal)
        .map(|((_, w), c)| (w, c))
        .collect())
}

fn check_image(x: &FiniteWordSet, beta: &CodingMorphism) -> Result<FiniteWordSet> {
    let image = beta.image_set();
    let x = x.reinterpret(image.alphabet())?;
    if x.to_strings() != image.to_strings() {
        return Err(Error::input(format!("the morphism maps onto {image}, not onto {x}")));
    }
    Ok(x)
}

/// The flower automaton of X with output 1 inside petals and output b on
/// the edge completing β(b).
pub fn flower_transducer(x: &FiniteWordSet, beta: &CodingMorphism) -> Result<LiteralTransducer> {
    let x = check_image(x, beta)?;
    let flower = crate::automata::flower_automaton(&x);
    // Walk the petals in the same order as the flower construction.
    let mut edges = Vec::new();
    let mut next_state = 1;
    for w in x.words() {
        let b = beta.preimage_letter(w).expect("β maps onto X");
        let len = w.len();
        let ids: Vec<usize> = (0..=len)
            .map(|k| {
                if k == 0 || k == len {
                    0
                } else {
                    next_state + k - 1
                }
            })
            .collect();
        next_state += len - 1;
        for (k, a) in w.iter().enumerate() {
            let out = (k + 1 == len).then_some(b);
            edges.push((ids[k], a, out, ids[k + 1]));
        }
    }
    debug_assert_eq!(next_state, flower.num_states());
    LiteralTransducer::new(
        x.alphabet().clone(),
        beta.source().clone(),
        flower.states().to_vec(),
        0,
        0,
        edges,
    )
}

/// The prefix automaton of X with output 1 on p → pa and b on p → 1 when
/// pa = β(b).
pub fn prefix_transducer(x: &FiniteWordSet, beta: &CodingMorphism) -> Result<LiteralTransducer> {
    let x = check_image(x, beta)?;
    let (prefixes, skeleton) = crate::automata::prefix_skeleton(&x);
    let edges = skeleton.into_iter().map(|(p, a, q, done)| {
        let out = done.map(|w| beta.preimage_letter(&w).expect("β maps onto X"));
        (p, a, out, q)
    });
    LiteralTransducer::new(
        x.alphabet().clone(),
        beta.source().clone(),
        prefixes.iter().map(|p| x.format_word(p)).collect(),
        0,
        0,
        edges,
    )
}

/// ℬ∘𝒯 restricted to its trim part, with the block view of the full product.
#[derive(Debug, Clone)]
pub struct WreathProduct {
    automaton: MultiplicityAutomaton,
    pairs: Vec<(usize, usize)>,
    outer: MultiplicityAutomaton,
    inner: LiteralTransducer,
}

impl WreathProduct {
    /// The trimmed automaton on pairs (q, p).
    pub fn automaton(&self) -> &MultiplicityAutomaton {
        &self.automaton
    }

    /// The pair (q, p) of each trimmed state.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn full_dimensions(&self) -> (usize, usize) {
        (self.outer.num_states(), self.inner.num_states())
    }

    pub fn full_state_count(&self) -> usize {
        self.outer.num_states() * self.inner.num_states()
    }

    /// φ(a) on all of Q×P, ordered p-major: blocks are indexed by
    /// transducer states and each block is a Q×Q relation.
    pub fn full_phi(&self, a: Letter) -> BooleanRelation {
        let (nq, np) = self.full_dimensions();
        let mut m = BooleanRelation::zero(nq * np);
        for (p, b, out, p2) in self.inner.edges() {
            if b != a {
                continue;
            }
            let block = match out {
                None => BooleanRelation::identity(nq),
                Some(o) => self.outer.letter_relation(o),
            };
            for q in 0..nq {
                for q2 in block.row_ones(q) {
                    m.set(p * nq + q, p2 * nq + q2, true);
                }
            }
        }
        m
    }

    /// The Q×Q block (p, p') of the full p-major matrix of a.
    pub fn block(&self, a: Letter, p: usize, p2: usize) -> BooleanRelation {
        let nq = self.outer.num_states();
        let states: Vec<usize> = (0..nq).collect();
        let full = self.full_phi(a);
        let mut out = BooleanRelation::zero(nq);
        for &q in &states {
            for &q2 in &states {
                if full.get(p * nq + q, p2 * nq + q2) {
                    out.set(q, q2, true);
                }
            }
        }
        out
    }
}

/// The wreath product ℬ∘𝒯: states Q×P, and φ(a) is φ_𝒯(a) with each output
/// word w replaced by φ_ℬ(w). The initial and terminal state is (j, i).
pub fn wreath_product(b: &MultiplicityAutomaton, t: &LiteralTransducer) -> Result<WreathProduct> {
    if b.alphabet().symbols() != t.output.symbols() {
        return Err(Error::input(
            "the automaton's alphabet differs from the transducer's output alphabet",
        ));
    }
    let (nq, np) = (b.num_states(), t.num_states());
    let mut edges = BTreeSet::new();
    for &(p, a, out, p2) in &t.edges {
        match out {
            None => {
                for q in 0..nq {
                    edges.insert((q * np + p, a, q * np + p2));
                }
            }
            Some(o) => {
                for q in 0..nq {
                    for &q2 in b.successors(q, o) {
                        edges.insert((q * np + p, a, q2 * np + p2));
                    }
                }
            }
        }
    }
    let start = b.initial() * np + t.initial;
    let end = b.terminal() * np + t.terminal;
    // initial state first, the rest in q-major order
    let mut order: Vec<usize> = vec![start];
    order.extend((0..nq * np).filter(|&s| s != start));
    let position: Vec<usize> = {
        let mut pos = vec![0; nq * np];
        for (i, &s) in order.iter().enumerate() {
            pos[s] = i;
        }
        pos
    };
    let label = |s: usize| format!("({},{})", b.state_label(s / np), t.states[s % np]);
    let full = MultiplicityAutomaton::new(
        t.input.clone(),
        order.iter().map(|&s| label(s)).collect(),
        0,
        position[end],
        edges.iter().map(|&(s, a, s2)| (position[s], a, position[s2])),
    )?;
    let (automaton, kept) = full.trim_part()?;
    let pairs = kept
        .iter()
        .map(|&i| (order[i] / np, order[i] % np))
        .collect();
    Ok(WreathProduct {
        automaton,
        pairs,
        outer: b.clone(),
        inner: t.clone(),
    })
}

impl fmt::Display for LiteralTransducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {}", self.states.join(" "))?;
        writeln!(f, "initial: {}", self.states[self.initial])?;
        write!(f, "terminal: {}", self.states[self.terminal])?;
        for &(p, a, out, q) in &self.edges {
            write!(
                f,
                "\n{} -{}|{}-> {}",
                self.states[p],
                self.input.symbol(a),
                self.format_output(out),
                self.states[q]
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{flower_automaton, prefix_automaton, recognizes_with_multiplicities};
    use crate::words::{decode_preimages, factorization_count};

    fn beta_aba() -> CodingMorphism {
        CodingMorphism::from_pairs(&[("u", "a"), ("v", "ab"), ("w", "ba")]).unwrap()
    }

    fn edge_strings(t: &LiteralTransducer) -> Vec<String> {
        t.edges()
            .map(|(p, a, out, q)| {
                format!(
                    "{}-{}|{}->{}",
                    t.states()[p],
                    t.input_alphabet().symbol(a),
                    t.format_output(out),
                    t.states()[q]
                )
            })
            .collect()
    }

    #[test]
    fn flower_transducer_of_aba() {
        let beta = beta_aba();
        let x = beta.image_set();
        let t = flower_transducer(&x, &beta).unwrap();
        assert_eq!(
            edge_strings(&t),
            ["ω-a|1->(a,b)", "ω-a|u->ω", "ω-b|1->(b,a)", "(a,b)-b|v->ω", "(b,a)-a|w->ω"]
        );
        assert_eq!(t.input_automaton(), flower_automaton(&x));
        let a = x.parse_word("a").unwrap();
        let b = x.parse_word("b").unwrap();
        let out = beta.source();
        let pa = phi_t(&t, &a).unwrap();
        let cells: Vec<String> = (0..3)
            .flat_map(|p| (0..3).map(move |q| (p, q)))
            .map(|(p, q)| pa.get(p, q).format(out))
            .collect();
        assert_eq!(cells, ["u", "1", "0", "0", "0", "0", "w", "0", "0"]);
        let pb = phi_t(&t, &b).unwrap();
        let cells: Vec<String> = (0..3)
            .flat_map(|p| (0..3).map(move |q| (p, q)))
            .map(|(p, q)| pb.get(p, q).format(out))
            .collect();
        assert_eq!(cells, ["0", "0", "1", "v", "0", "0", "0", "0", "0"]);
        let ab = phi_t(&t, &x.parse_word("ab").unwrap()).unwrap();
        assert_eq!(ab.get(0, 0).format(out), "v");
        assert_eq!(ab, pa.mul(&pb));
    }

    #[test]
    fn decode_examples() {
        let beta = beta_aba();
        let x = beta.image_set();
        let t = flower_transducer(&x, &beta).unwrap();
        let out = decode(&t, &x.parse_word("aba").unwrap()).unwrap();
        let words: Vec<String> = out.keys().map(|w| beta.source().format_word(w)).collect();
        assert_eq!(words, ["uw", "vu"]);
        assert_eq!(decode(&t, &Word::empty()).unwrap().len(), 1);
        assert!(decode(&t, &x.parse_word("b").unwrap()).unwrap().is_empty());
        let w = x.parse_word("abaab").unwrap();
        let total: BigUint = decode(&t, &w).unwrap().values().sum();
        assert_eq!(total, factorization_count(&x, &w).unwrap());
        let set: BTreeSet<Word> = decode(&t, &w).unwrap().into_keys().collect();
        assert_eq!(set, decode_preimages(&beta, &w).unwrap());
    }

    #[test]
    fn prefix_transducers() {
        let beta = CodingMorphism::from_pairs(&[("u", "a"), ("v", "ab")]).unwrap();
        let x = beta.image_set();
        let t = prefix_transducer(&x, &beta).unwrap();
        assert_eq!(edge_strings(&t), ["1-a|1->a", "1-a|u->1", "a-b|v->1"]);
        assert_eq!(t.input_automaton(), prefix_automaton(&x));
        let beta = CodingMorphism::from_pairs(&[("u", "aa"), ("v", "aaa")]).unwrap();
        let t = prefix_transducer(&beta.image_set(), &beta).unwrap();
        assert_eq!(
            edge_strings(&t),
            ["1-a|1->a", "a-a|1->aa", "a-a|u->1", "aa-a|v->1"]
        );
    }

    #[test]
    fn wrong_image_is_rejected() {
        let beta = beta_aba();
        let x = FiniteWordSet::from_strs(&["a", "ab"]).unwrap();
        assert!(flower_transducer(&x, &beta).is_err());
    }

    #[test]
    fn wreath_of_paper_example() {
        let y = FiniteWordSet::from_strs(&["u", "uv"]).unwrap();
        let beta = CodingMorphism::from_pairs(&[("u", "a"), ("v", "ab")]).unwrap();
        let z = beta.image_set();
        let b = flower_automaton(&y.reinterpret(beta.source()).unwrap());
        let t = prefix_transducer(&z, &beta).unwrap();
        let w = wreath_product(&b, &t).unwrap();
        assert_eq!(w.full_state_count(), 4);
        assert_eq!(w.automaton().states(), ["(ω,1)", "((u,v),1)", "((u,v),a)"]);
        let x = FiniteWordSet::from_strs(&["a", "aab"]).unwrap();
        assert!(recognizes_with_multiplicities(w.automaton(), &x.reinterpret(z.alphabet()).unwrap()).unwrap());
        let (a, bl) = (Letter(0), Letter(1));
        let phi_u = b.letter_relation(Letter(0));
        let phi_v = b.letter_relation(Letter(1));
        let nq = b.num_states();
        assert_eq!(w.block(a, 0, 0), phi_u);
        assert_eq!(w.block(a, 0, 1), BooleanRelation::identity(nq));
        assert!(w.block(a, 1, 0).is_zero() && w.block(a, 1, 1).is_zero());
        assert_eq!(w.block(bl, 1, 0), phi_v);
        assert!(w.block(bl, 0, 0).is_zero() && w.block(bl, 0, 1).is_zero() && w.block(bl, 1, 1).is_zero());
    }

    #[test]
    fn identity_transducer_copies_automaton() {
        let x = FiniteWordSet::from_strs(&["a", "ab", "ba"]).unwrap();
        let b = flower_automaton(&x);
        let ab = x.alphabet().clone();
        let t = LiteralTransducer::new(
            ab.clone(),
            ab.clone(),
            vec!["1".into()],
            0,
            0,
            ab.letters().map(|l| (0, l, Some(l), 0)),
        )
        .unwrap();
        let w = wreath_product(&b, &t).unwrap();
        assert_eq!(w.automaton().num_states(), b.num_states());
        assert_eq!(w.automaton().num_edges(), b.num_edges());
        assert!(recognizes_with_multiplicities(w.automaton(), &x).unwrap());
    }
}
