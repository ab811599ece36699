//! Seeded random word sets and decompositions for property testing.
//!
//! Every generator draws from a `ChaCha8Rng`, so a seed fixes the stream on
//! every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::words::{compose, factorization_count, is_complete, Alphabet, CodingMorphism, FiniteWordSet, Word};

/// Size limits of generated sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusLimits {
    pub max_alphabet: usize,
    pub max_words: usize,
    pub max_len: usize,
}

impl Default for CorpusLimits {
    fn default() -> Self {
        CorpusLimits {
            max_alphabet: 3,
            max_words: 4,
            max_len: 4,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_word(rng: &mut impl Rng, k: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::from(
        (0..len)
            .map(|_| crate::words::Letter(rng.gen_range(0..k) as u16))
            .collect::<Vec<_>>(),
    )
}

fn alphabet(symbols: &str, k: usize) -> Alphabet {
    Alphabet::new(symbols.chars().take(k).map(String::from)).expect("fixed symbols")
}

/// A random set over {a, b, c} (first k letters), where every letter of the
/// alphabet occurs in some word.
pub fn random_word_set(rng: &mut impl Rng, limits: CorpusLimits) -> FiniteWordSet {
    loop {
        let k = rng.gen_range(1..=limits.max_alphabet);
        let size = rng.gen_range(1..=limits.max_words);
        let words: Vec<Word> = (0..size).map(|_| random_word(rng, k, limits.max_len)).collect();
        let used = (0..k).all(|l| words.iter().any(|w| w.iter().any(|x| x.index() == l)));
        if used {
            return FiniteWordSet::new(alphabet("abc", k), words).expect("nonempty words");
        }
    }
}

/// `count` word sets from one seed.
pub fn word_sets(seed: u64, count: usize, limits: CorpusLimits) -> Vec<FiniteWordSet> {
    let mut r = rng(seed);
    (0..count).map(|_| random_word_set(&mut r, limits)).collect()
}

/// A random complete set over B: either B^n or a complete prefix code grown
/// from B by expanding leaves.
fn complete_set(rng: &mut impl Rng, b: &Alphabet, max_words: usize) -> FiniteWordSet {
    let k = b.len();
    let mut leaves: Vec<Word> = b.letters().map(|l| Word::from(vec![l])).collect();
    if rng.gen_bool(0.3) && k * k <= max_words.max(k) {
        leaves = leaves
            .iter()
            .flat_map(|w| b.letters().map(move |l| {
                let mut w = w.clone();
                w.push(l);
                w
            }))
            .collect();
    } else {
        let expansions = rng.gen_range(0..=2);
        for _ in 0..expansions {
            if leaves.len() + k - 1 > max_words {
                break;
            }
            let i = rng.gen_range(0..leaves.len());
            let w = leaves.swap_remove(i);
            for l in b.letters() {
                let mut w = w.clone();
                w.push(l);
                leaves.push(w);
            }
        }
    }
    FiniteWordSet::new(b.clone(), leaves).expect("nonempty words")
}

/// A composable pair (Y, β) with Y complete and β: B* → A* injective on
/// letters. The decomposition X = Y ∘_β Z is trim: every x ∈ X has a single
/// factorization in words of Z, which also makes β injective on Y.
pub fn random_complete_decomposition(rng: &mut impl Rng, limits: CorpusLimits) -> (FiniteWordSet, CodingMorphism) {
    loop {
        let kb = rng.gen_range(1..=limits.max_alphabet.min(3));
        let ka = rng.gen_range(1..=limits.max_alphabet);
        let b = alphabet("uvw", kb);
        let a = alphabet("abc", ka);
        let mut images: Vec<Word> = Vec::new();
        let mut attempts = 0;
        while images.len() < kb && attempts < 50 {
            attempts += 1;
            let w = random_word(rng, ka, limits.max_len.min(3));
            if !images.contains(&w) {
                images.push(w);
            }
        }
        if images.len() < kb {
            continue;
        }
        images.shuffle(rng);
        let Ok(beta) = CodingMorphism::new(b.clone(), a, images) else {
            continue;
        };
        // every letter of A must occur in Z for the prefix automaton of Z
        // to use the whole alphabet
        let z = beta.image_set();
        let covered = z.alphabet().letters().all(|l| z.words().any(|w| w.iter().any(|x| x == l)));
        if !covered {
            continue;
        }
        let y = complete_set(rng, &b, 9);
        let Ok(composed) = compose(&y, &beta) else {
            continue;
        };
        let unique = composed
            .composed
            .words()
            .all(|x| factorization_count(&z, x).is_ok_and(|c| c == 1u32.into()));
        if !unique {
            continue;
        }
        let y = composed.trimmed_y;
        if is_complete(&y).map(|v| v.is_complete()).unwrap_or(false) {
            return (y, beta);
        }
    }
}

/// `count` decompositions from one seed.
pub fn complete_decompositions(
    seed: u64,
    count: usize,
    limits: CorpusLimits,
) -> Vec<(FiniteWordSet, CodingMorphism)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_complete_decomposition(&mut r, limits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible_and_bounded() {
        let a = word_sets(7, 50, CorpusLimits::default());
        assert_eq!(a, word_sets(7, 50, CorpusLimits::default()));
        assert_ne!(a, word_sets(8, 50, CorpusLimits::default()));
        for x in &a {
            assert!(x.alphabet().len() <= 3 && x.len() <= 4 && x.max_len() <= 4);
        }
    }

    #[test]
    fn decompositions_are_complete_and_trim() {
        for (y, beta) in complete_decompositions(3, 40, CorpusLimits::default()) {
            assert!(is_complete(&y).unwrap().is_complete());
            assert!(compose(&y, &beta).unwrap().was_trim);
        }
    }
}
