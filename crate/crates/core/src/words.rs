//! Words over a finite alphabet, finite sets of words, coding morphisms and
//! the predicates on word sets (code, complete, minimal generating set).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::automata::flower_automaton;
use crate::error::{Error, Result};
use crate::search::shortest_path_word;

/// Upper bound on the number of subsets visited by the completeness test.
pub const COMPLETENESS_SUBSET_BUDGET: usize = 1 << 18;
/// Upper bound on the number of preimages enumerated by [`decode_preimages`].
pub const DECODE_BUDGET: usize = 1 << 20;

/// A letter, identified by its position in an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered set of distinct symbols. The order is the one used for every
/// tie-break in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::input("alphabet must not be empty"));
        }
        if symbols.len() > u16::MAX as usize {
            return Err(Error::input("alphabet too large"));
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == ',') {
                return Err(Error::input(format!("invalid symbol {s:?}")));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::input(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// One symbol per character, in the given order.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.symbols.len() as u16).map(Letter)
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter.index()]
    }

    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| Letter(i as u16))
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.symbols.len()
    }

    fn single_chars(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. `""` and `"1"` (when `1` is not a symbol) denote the
    /// empty word. Whitespace-separated input is read token by token;
    /// otherwise symbols are matched greedily, longest first.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || (text == "1" && self.letter("1").is_none()) {
            return Ok(Word::empty());
        }
        if text.chars().any(char::is_whitespace) {
            return text
                .split_whitespace()
                .map(|tok| {
                    self.letter(tok)
                        .ok_or_else(|| Error::input(format!("symbol {tok:?} is not in the alphabet")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Word::from);
        }
        let mut letters = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.as_str()))
                .max_by_key(|(_, s)| s.len());
            match best {
                Some((i, s)) => {
                    letters.push(Letter(i as u16));
                    rest = &rest[s.len()..];
                }
                None => {
                    let c = rest.chars().next().unwrap_or_default();
                    return Err(Error::input(format!(
                        "symbol {c:?} in {text:?} is not in the alphabet"
                    )));
                }
            }
        }
        Ok(Word(letters))
    }

    /// Renders a word: juxtaposed for one-character symbols, space separated
    /// otherwise, `1` for the empty word.
    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let sep = if self.single_chars() { "" } else { " " };
        word.iter()
            .map(|l| self.symbol(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Infers an alphabet from textual words: the sorted set of symbols used.
    pub fn infer<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let mut symbols = BTreeSet::new();
        for t in texts {
            let t = t.trim();
            if t.chars().any(char::is_whitespace) {
                symbols.extend(t.split_whitespace().map(str::to_string));
            } else {
                symbols.extend(t.chars().map(String::from));
            }
        }
        Alphabet::new(symbols)
    }
}

/// A finite word. Words are ordered by length first, then lexicographically
/// by letter index (shortlex).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite nonempty set X of nonempty words over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteWordSet {
    alphabet: Alphabet,
    words: BTreeSet<Word>,
}

impl FiniteWordSet {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for w in words {
            if w.is_empty() {
                return Err(Error::input("a word set may not contain the empty word"));
            }
            if let Some(l) = w.iter().find(|l| !alphabet.contains(*l)) {
                return Err(Error::input(format!("letter #{} outside the alphabet", l.0)));
            }
            set.insert(w);
        }
        if set.is_empty() {
            return Err(Error::input("a word set must contain at least one word"));
        }
        Ok(FiniteWordSet {
            alphabet,
            words: set,
        })
    }

    /// Builds a set from textual words, inferring the alphabet.
    pub fn from_strs(words: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::infer(words.iter().copied())?;
        FiniteWordSet::with_alphabet(alphabet, words)
    }

    pub fn with_alphabet(alphabet: Alphabet, words: &[&str]) -> Result<Self> {
        let parsed = words
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        FiniteWordSet::new(alphabet, parsed)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The words in shortlex order.
    pub fn words(&self) -> impl Iterator<Item = &Word> + Clone {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.alphabet.format_word(w)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.words.iter().map(|w| self.alphabet.format_word(w)).collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    /// The same words read over another alphabet that contains every symbol
    /// used here.
    pub fn reinterpret(&self, alphabet: &Alphabet) -> Result<FiniteWordSet> {
        let words = self
            .words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|l| {
                        let s = self.alphabet.symbol(l);
                        alphabet
                            .letter(s)
                            .ok_or_else(|| Error::input(format!("symbol {s:?} missing from alphabet")))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(Word::from)
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteWordSet::new(alphabet.clone(), words)
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.iter().find(|l| !self.alphabet.contains(*l)) {
            Some(l) => Err(Error::input(format!("letter #{} outside the alphabet", l.0))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for FiniteWordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_strings().join(", "))
    }
}

/// Number of factorizations of `w` as a product of words of `x`.
pub fn factorization_count(x: &FiniteWordSet, w: &Word) -> Result<BigUint> {
    x.check_word(w)?;
    let letters = w.letters();
    let mut counts = vec![BigUint::zero(); letters.len() + 1];
    counts[0] = BigUint::one();
    for end in 1..=letters.len() {
        let mut total = BigUint::zero();
        for word in x.words() {
            let n = word.len();
            if n <= end && &letters[end - n..end] == word.letters() {
                total += &counts[end - n];
            }
        }
        counts[end] = total;
    }
    Ok(counts.pop().unwrap_or_else(BigUint::one))
}

/// Outcome of [`is_code`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeVerdict {
    Code,
    /// Shortest word with two factorizations, least in alphabet order.
    NotCode(Word),
}

impl CodeVerdict {
    pub fn is_code(&self) -> bool {
        matches!(self, CodeVerdict::Code)
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            CodeVerdict::Code => None,
            CodeVerdict::NotCode(w) => Some(w),
        }
    }
}

/// Sardinas–Patterson test: closes the set of dangling suffixes and reports
/// whether the empty suffix shows up.
pub fn sardinas_patterson(x: &FiniteWordSet) -> bool {
    let words: Vec<&[Letter]> = x.words().map(Word::letters).collect();
    let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut pending: Vec<Vec<Letter>> = Vec::new();
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            if i != j && v.len() > u.len() && v.starts_with(u) {
                let rest = v[u.len()..].to_vec();
                if seen.insert(rest.clone()) {
                    pending.push(rest);
                }
            }
        }
    }
    while let Some(rem) = pending.pop() {
        for w in &words {
            let next = if rem.starts_with(w) {
                rem[w.len()..].to_vec()
            } else if w.starts_with(&rem) {
                w[rem.len()..].to_vec()
            } else {
                continue;
            };
            if next.is_empty() {
                return false;
            }
            if seen.insert(next.clone()) {
                pending.push(next);
            }
        }
    }
    true
}

/// Shortest (then least) nonempty word labelling two distinct paths
/// ω → ω in the flower automaton, i.e. having two factorizations.
fn ambiguity_witness(x: &FiniteWordSet) -> Option<Word> {
    let flower = flower_automaton(x);
    let n = flower.num_states();
    let omega = flower.initial();
    let node = |p: usize, q: usize, diverged: bool| (p * n + q) * 2 + diverged as usize;
    let mut edges = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for d in [false, true] {
                for a in x.alphabet().letters() {
                    for &p2 in flower.successors(p, a) {
                        for &q2 in flower.successors(q, a) {
                            let d2 = d || p2 != q2;
                            edges.push((node(p, q, d), a, node(p2, q2, d2)));
                        }
                    }
                }
            }
        }
    }
    let target = node(omega, omega, true);
    shortest_path_word(n * n * 2, &edges, &[node(omega, omega, false)], |v| v == target)
        .map(Word::from)
}

/// Decides unique decipherability. The decision comes from the
/// Sardinas–Patterson procedure; the witness from a shortest-path search in
/// the square of the flower automaton. The two must agree.
pub fn is_code(x: &FiniteWordSet) -> Result<CodeVerdict> {
    let code = sardinas_patterson(x);
    match (code, ambiguity_witness(x)) {
        (true, None) => Ok(CodeVerdict::Code),
        (false, Some(w)) => Ok(CodeVerdict::NotCode(w)),
        (sp, w) => Err(Error::invariant(format!(
            "Sardinas-Patterson says code={sp} but witness search found {:?}",
            w.map(|w| x.format_word(&w))
        ))),
    }
}

/// Removes every word that is a product of two or more words of `x`.
pub fn minimal_generating_set(x: &FiniteWordSet) -> FiniteWordSet {
    let kept: Vec<Word> = x
        .words()
        .filter(|w| {
            let others = x.words().filter(|y| y != w).cloned();
            match FiniteWordSet::new(x.alphabet().clone(), others) {
                Ok(rest) => factorization_count(&rest, w).map_or(true, |c| c.is_zero()),
                Err(_) => true,
            }
        })
        .cloned()
        .collect();
    FiniteWordSet::new(x.alphabet().clone(), kept).expect("the shortest word is never decomposable")
}

pub fn is_minimal_generating_set(x: &FiniteWordSet) -> bool {
    minimal_generating_set(x).len() == x.len()
}

/// Outcome of [`is_complete`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletenessVerdict {
    Complete,
    /// Shortest word (least in alphabet order) that is not a factor of X*.
    Incomplete(Word),
}

impl CompletenessVerdict {
    pub fn is_complete(&self) -> bool {
        matches!(self, CompletenessVerdict::Complete)
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            CompletenessVerdict::Complete => None,
            CompletenessVerdict::Incomplete(w) => Some(w),
        }
    }
}

/// Decides whether every word is a factor of a word of X*.
///
/// The factor language is recognized by the trim flower automaton with all
/// states initial and final; the subset construction is explored breadth
/// first in letter order until the empty subset (the complement) is reached.
pub fn is_complete(x: &FiniteWordSet) -> Result<CompletenessVerdict> {
    let flower = flower_automaton(x);
    let n = flower.num_states();
    let mut start = FixedBitSet::with_capacity(n);
    start.insert_range(..);
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None];
    let mut subsets = vec![start.clone()];
    index.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        for a in x.alphabet().letters() {
            let mut next = FixedBitSet::with_capacity(n);
            for p in subsets[id].ones() {
                for &q in flower.successors(p, a) {
                    next.insert(q);
                }
            }
            if index.contains_key(&next) {
                continue;
            }
            if next.is_clear() {
                let mut letters = vec![a];
                let mut cur = id;
                while let Some((prev, l)) = parent[cur] {
                    letters.push(l);
                    cur = prev;
                }
                letters.reverse();
                return Ok(CompletenessVerdict::Incomplete(Word(letters)));
            }
            if subsets.len() >= COMPLETENESS_SUBSET_BUDGET {
                return Err(Error::resource(format!(
                    "completeness test visited more than {COMPLETENESS_SUBSET_BUDGET} subsets"
                )));
            }
            index.insert(next.clone(), subsets.len());
            parent.push(Some((id, a)));
            subsets.push(next);
            queue.push_back(subsets.len() - 1);
        }
    }
    Ok(CompletenessVerdict::Complete)
}

/// A morphism β: B* → A* whose restriction to B is a bijection onto its
/// image Z = β(B).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingMorphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl CodingMorphism {
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::input(format!(
                "morphism gives {} images for {} source letters",
                images.len(),
                source.len()
            )));
        }
        let mut seen = BTreeMap::new();
        for (b, img) in source.letters().zip(&images) {
            if img.is_empty() {
                return Err(Error::input(format!(
                    "image of {} is empty",
                    source.symbol(b)
                )));
            }
            if img.iter().any(|l| !target.contains(l)) {
                return Err(Error::input(format!(
                    "image of {} uses a letter outside the target alphabet",
                    source.symbol(b)
                )));
            }
            if let Some(prev) = seen.insert(img.clone(), b) {
                return Err(Error::input(format!(
                    "letters {} and {} have the same image {}",
                    source.symbol(prev),
                    source.symbol(b),
                    target.format_word(img)
                )));
            }
        }
        Ok(CodingMorphism {
            source,
            target,
            images,
        })
    }

    /// Builds a morphism from `(source symbol, image text)` pairs; the
    /// source alphabet follows the pair order and the target alphabet is
    /// inferred from the images.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self> {
        let source = Alphabet::new(pairs.iter().map(|(b, _)| *b))?;
        let target = Alphabet::infer(pairs.iter().map(|(_, w)| *w))?;
        let images = pairs
            .iter()
            .map(|(_, w)| target.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        CodingMorphism::new(source, target, images)
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, b: Letter) -> &Word {
        &self.images[b.index()]
    }

    pub fn apply(&self, v: &Word) -> Word {
        Word(v.iter().flat_map(|b| self.image(b).iter()).collect())
    }

    /// Z = β(B).
    pub fn image_set(&self) -> FiniteWordSet {
        FiniteWordSet::new(self.target.clone(), self.images.iter().cloned())
            .expect("images are nonempty and distinct")
    }

    /// The letter whose image is `w`, if any.
    pub fn preimage_letter(&self, w: &Word) -> Option<Letter> {
        self.images
            .iter()
            .position(|img| img == w)
            .map(|i| Letter(i as u16))
    }
}

/// X = β(Y) together with a trim subset of Y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionResult {
    pub composed: FiniteWordSet,
    pub trimmed_y: FiniteWordSet,
    /// Whether β was already injective on Y.
    pub was_trim: bool,
    /// For every x with several preimages: (x, kept preimage, removed ones).
    pub collisions: Vec<(Word, Word, Vec<Word>)>,
}

/// Composition X = Y ∘_β Z. When several words of Y share an image, the
/// shortlex-least preimage is kept.
pub fn compose(y: &FiniteWordSet, beta: &CodingMorphism) -> Result<CompositionResult> {
    let y = if y.alphabet() == beta.source() {
        y.clone()
    } else {
        y.reinterpret(beta.source())?
    };
    for b in beta.source().letters() {
        if !y.words().any(|w| w.iter().any(|l| l == b)) {
            return Err(Error::hypothesis(format!(
                "Y and Z are not composable: letter {} does not occur in Y",
                beta.source().symbol(b)
            )));
        }
    }
    let mut preimages: BTreeMap<Word, Vec<Word>> = BTreeMap::new();
    for w in y.words() {
        preimages.entry(beta.apply(w)).or_default().push(w.clone());
    }
    let mut kept = Vec::new();
    let mut collisions = Vec::new();
    for (x, mut ys) in preimages.iter().map(|(x, ys)| (x.clone(), ys.clone())) {
        ys.sort();
        let first = ys.remove(0);
        if !ys.is_empty() {
            collisions.push((x, first.clone(), ys));
        }
        kept.push(first);
    }
    Ok(CompositionResult {
        composed: FiniteWordSet::new(beta.target().clone(), preimages.into_keys())?,
        trimmed_y: FiniteWordSet::new(beta.source().clone(), kept)?,
        was_trim: collisions.is_empty(),
        collisions,
    })
}

/// All v ∈ B* with β(v) = w.
pub fn decode_preimages(beta: &CodingMorphism, w: &Word) -> Result<BTreeSet<Word>> {
    if w.iter().any(|l| !beta.target().contains(l)) {
        return Err(Error::input("word uses a letter outside the target alphabet"));
    }
    let letters = w.letters();
    let mut table: Vec<Vec<Word>> = vec![Vec::new(); letters.len() + 1];
    table[0].push(Word::empty());
    for end in 1..=letters.len() {
        let mut here = Vec::new();
        for b in beta.source().letters() {
            let img = beta.image(b);
            let n = img.len();
            if n <= end && &letters[end - n..end] == img.letters() {
                for v in &table[end - n] {
                    let mut v = v.clone();
                    v.push(b);
                    here.push(v);
                }
            }
        }
        if here.len() > DECODE_BUDGET {
            return Err(Error::resource(format!(
                "more than {DECODE_BUDGET} partial preimages"
            )));
        }
        table[end] = here;
    }
    Ok(table.pop().unwrap_or_default().into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(words: &[&str]) -> FiniteWordSet {
        FiniteWordSet::from_strs(words).unwrap()
    }

    #[test]
    fn shortlex_order() {
        let a = Alphabet::from_chars("ab").unwrap();
        let mut ws: Vec<Word> = ["ba", "b", "aa", "a", ""]
            .iter()
            .map(|w| a.parse_word(w).unwrap())
            .collect();
        ws.sort();
        let shown: Vec<String> = ws.iter().map(|w| a.format_word(w)).collect();
        assert_eq!(shown, ["1", "a", "b", "aa", "ba"]);
    }

    #[test]
    fn parse_tokens_and_greedy() {
        let a = Alphabet::new(["x", "xy", "z"]).unwrap();
        let w = a.parse_word("xyzx").unwrap();
        assert_eq!(w.letters(), &[Letter(1), Letter(2), Letter(0)]);
        let w = a.parse_word("x xy").unwrap();
        assert_eq!(w.letters(), &[Letter(0), Letter(1)]);
        assert!(a.parse_word("q").is_err());
        assert!(a.parse_word("1").unwrap().is_empty());
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn word_set_rejects_empty_word() {
        let a = Alphabet::from_chars("a").unwrap();
        assert!(FiniteWordSet::new(a, [Word::empty()]).is_err());
    }

    #[test]
    fn counts_fibonacci_and_aba() {
        let x = set(&["a", "aa"]);
        let w = x.parse_word("aaa").unwrap();
        assert_eq!(factorization_count(&x, &w).unwrap(), BigUint::from(3u32));
        let x = set(&["a", "ab", "ba"]);
        let w = x.parse_word("aba").unwrap();
        assert_eq!(factorization_count(&x, &w).unwrap(), BigUint::from(2u32));
        assert_eq!(
            factorization_count(&x, &Word::empty()).unwrap(),
            BigUint::one()
        );
    }

    #[test]
    fn count_rejects_foreign_letter() {
        let x = set(&["a"]);
        assert!(factorization_count(&x, &Word::from(vec![Letter(3)])).is_err());
    }

    #[test]
    fn count_does_not_overflow() {
        let x = set(&["a", "aa"]);
        let w = x.parse_word(&"a".repeat(100)).unwrap();
        // F_101
        let f101: BigUint = "573147844013817084101".parse().unwrap();
        assert_eq!(factorization_count(&x, &w).unwrap(), f101);
    }

    #[test]
    fn code_examples() {
        let x = set(&["a", "ab", "ba"]);
        assert_eq!(
            is_code(&x).unwrap(),
            CodeVerdict::NotCode(x.parse_word("aba").unwrap())
        );
        assert!(is_code(&set(&["a", "ab"])).unwrap().is_code());
        let x = set(&["aa", "aaa"]);
        assert_eq!(
            is_code(&x).unwrap(),
            CodeVerdict::NotCode(x.parse_word("aaaaa").unwrap())
        );
    }

    #[test]
    fn code_witness_tie_break() {
        // ab = a·b and ba = b·a; ab is the least.
        let x = set(&["a", "b", "ab", "ba"]);
        assert_eq!(
            is_code(&x).unwrap().witness().map(|w| x.format_word(w)),
            Some("ab".to_string())
        );
    }

    #[test]
    fn minimal_generating_examples() {
        assert_eq!(minimal_generating_set(&set(&["a", "aa"])), set(&["a"]));
        let x = set(&["a", "ab", "ba"]);
        assert_eq!(minimal_generating_set(&x), x);
        assert_eq!(
            minimal_generating_set(&set(&["aa", "aaa", "aaaaa"])),
            set(&["aa", "aaa"])
        );
    }

    #[test]
    fn completeness_examples() {
        let x = set(&["uu", "uv", "uw", "vu", "vv", "vw", "wu", "wv", "ww"]);
        assert!(is_complete(&x).unwrap().is_complete());
        let x = set(&["a", "ab", "ba"]);
        assert_eq!(
            is_complete(&x).unwrap(),
            CompletenessVerdict::Incomplete(x.parse_word("bbb").unwrap())
        );
        let ab = Alphabet::from_chars("ab").unwrap();
        let x = FiniteWordSet::with_alphabet(ab, &["a"]).unwrap();
        assert_eq!(
            is_complete(&x).unwrap(),
            CompletenessVerdict::Incomplete(x.parse_word("b").unwrap())
        );
    }

    fn beta_uvw() -> CodingMorphism {
        CodingMorphism::from_pairs(&[("u", "a"), ("v", "ab"), ("w", "ba")]).unwrap()
    }

    #[test]
    fn compose_paper_example() {
        let beta = beta_uvw();
        let y = FiniteWordSet::with_alphabet(beta.source().clone(), &["u", "uw", "vu"]).unwrap();
        let r = compose(&y, &beta).unwrap();
        assert_eq!(r.composed.to_strings(), ["a", "aba"]);
        assert_eq!(r.trimmed_y.to_strings(), ["u", "uw"]);
        assert!(!r.was_trim);
    }

    #[test]
    fn compose_trim_and_trivial() {
        let beta = CodingMorphism::from_pairs(&[("u", "a"), ("v", "ab")]).unwrap();
        let y = FiniteWordSet::with_alphabet(beta.source().clone(), &["u", "uv"]).unwrap();
        let r = compose(&y, &beta).unwrap();
        assert_eq!(r.composed.to_strings(), ["a", "aab"]);
        assert!(r.was_trim);
        let beta = CodingMorphism::from_pairs(&[("u", "a")]).unwrap();
        let y = FiniteWordSet::with_alphabet(beta.source().clone(), &["u"]).unwrap();
        assert_eq!(compose(&y, &beta).unwrap().composed.to_strings(), ["a"]);
    }

    #[test]
    fn compose_requires_every_letter() {
        let beta = beta_uvw();
        let y = FiniteWordSet::with_alphabet(beta.source().clone(), &["u", "uv"]).unwrap();
        match compose(&y, &beta) {
            Err(Error::Hypothesis(msg)) => assert!(msg.contains('w')),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn decode_examples() {
        let beta = beta_uvw();
        let w = beta.target().parse_word("aba").unwrap();
        let got: Vec<String> = decode_preimages(&beta, &w)
            .unwrap()
            .iter()
            .map(|v| beta.source().format_word(v))
            .collect();
        assert_eq!(got, ["uw", "vu"]);
        let empty = decode_preimages(&beta, &Word::empty()).unwrap();
        assert_eq!(empty.into_iter().collect::<Vec<_>>(), [Word::empty()]);
        let beta = CodingMorphism::from_pairs(&[("u", "a"), ("v", "ab")]).unwrap();
        let w = beta.target().parse_word("aab").unwrap();
        let got: Vec<String> = decode_preimages(&beta, &w)
            .unwrap()
            .iter()
            .map(|v| beta.source().format_word(v))
            .collect();
        assert_eq!(got, ["uv"]);
    }

    #[test]
    fn morphism_rejects_collisions() {
        assert!(CodingMorphism::from_pairs(&[("u", "a"), ("v", "a")]).is_err());
    }
}
