use std::collections::BTreeMap;

use serde::Serialize;

use super::degree::degree;
use crate::automata::{check_reduction, flower_automaton, induced_morphism, prefix_automaton, ReductionMap};
use crate::error::{Error, Result};
use crate::relmonoid::{
    enumerate_monoid, gamma_representation, green_relations, groups_equivalent, idempotent_structure,
    minimal_idempotents, Permutation, PermutationGroupRep,
};
use crate::transducers::{prefix_transducer, wreath_product};
use crate::words::{compose, factorization_count, is_code, is_complete, CodingMorphism, FiniteWordSet};

/// The imprimitivity structure behind d(X) = d(Y)·d(Z).
#[derive(Debug, Clone, Serialize)]
pub struct CompositionDegreeReport {
    pub y: Vec<String>,
    pub z: Vec<String>,
    pub beta: Vec<(String, String)>,
    pub x: Vec<String>,
    /// Whether β was injective on Y; otherwise `y_used` is the trimmed set.
    pub was_trim: bool,
    pub y_used: Vec<String>,
    /// Whether every x ∈ X has a single factorization in words of Z. This
    /// is stronger than injectivity of β on Y when Z is not a code, and the
    /// product law can fail without it.
    pub unique_z_factorizations: bool,
    /// States of ℬ∘𝒯 before and after trimming.
    pub product_states: usize,
    pub trim_states: usize,
    pub d_x: usize,
    pub d_y: usize,
    pub d_z: usize,
    /// d(X) from the flower automaton of X, for comparison.
    pub d_x_flower: usize,
    /// Witness of the minimal idempotent e of φ_𝒜(X*).
    pub idempotent: String,
    /// Components Γ of e, grouped into θ-classes.
    pub theta: Vec<Vec<String>>,
    pub theta_compatible: bool,
    pub group_x: PermutationGroupRep,
    pub g_theta: PermutationGroupRep,
    pub g_upper_theta: PermutationGroupRep,
    pub group_y: PermutationGroupRep,
    pub group_z: PermutationGroupRep,
    pub g_theta_matches_z: bool,
    pub g_upper_theta_matches_y: bool,
    pub product_law_holds: bool,
}

fn induced(perm: &[usize], class_of: &[usize], classes: usize) -> Option<Permutation> {
    let mut out = vec![usize::MAX; classes];
    for (s, &t) in perm.iter().enumerate() {
        let (c, d) = (class_of[s], class_of[t]);
        if out[c] == usize::MAX {
            out[c] = d;
        } else if out[c] != d {
            return None;
        }
    }
    Some(out)
}

/// Builds 𝒜 = ℬ∘𝒯 with ℬ the flower automaton of Y and 𝒯 the prefix
/// transducer of Z = β(B), checks the reduction (q,p) ↦ p onto the prefix
/// automaton of Z, and compares the groups acting on and within the
/// classes of θ with G(Z) and G(Y).
///
/// Y must be complete. A non-trim decomposition is first trimmed with
/// [`compose`].
pub fn composition_degree_report(y: &FiniteWordSet, beta: &CodingMorphism) -> Result<CompositionDegreeReport> {
    let y = y.reinterpret(beta.source())?;
    if let Some(w) = is_complete(&y)?.witness() {
        return Err(Error::hypothesis(format!(
            "Y is not complete: {} is not a factor of Y*",
            y.format_word(w)
        )));
    }
    let composed = compose(&y, beta)?;
    let y_used = composed.trimmed_y.clone();
    let z = beta.image_set();
    let x = composed.composed.clone();
    let mut unique_z_factorizations = true;
    for w in x.words() {
        unique_z_factorizations &= factorization_count(&z, w)? == 1u32.into();
    }

    let b = flower_automaton(&y_used);
    let t = prefix_transducer(&z, beta)?;
    let product = wreath_product(&b, &t)?;
    let a = product.automaton();
    let target = prefix_automaton(&z);
    let map: Vec<usize> = product.pairs().iter().map(|&(_, p)| p).collect();
    let rho = ReductionMap::new(a.clone(), target.clone(), map)?;
    let verdict = check_reduction(&rho)?;
    if !verdict.is_reduction() {
        return Err(Error::invariant(format!("(q,p) ↦ p is not a reduction: {verdict:?}")));
    }

    let monoid = enumerate_monoid(a)?;
    let green = green_relations(&monoid);
    let init = a.initial();
    let (d_x, minimal) = minimal_idempotents(&monoid)?;
    let e = minimal
        .iter()
        .copied()
        .find(|&e| monoid.element(e).get(init, init))
        .ok_or_else(|| Error::invariant("no minimal idempotent lies in φ(X*)"))?;
    let gamma = gamma_representation(&monoid, &green, e)?;
    let comps = gamma.structure.components();

    // θ: σ ≡ σ′ when ρ̄(σ) = ρ̄(σ′)
    let e_hat = induced_morphism(&rho, monoid.witness(e))?;
    let hat = idempotent_structure(&e_hat)?;
    let mut class_key = Vec::with_capacity(comps.len());
    for c in comps {
        let key = hat
            .component_of(rho.image(c[0]))
            .ok_or_else(|| Error::invariant("ρ of a fixed point is not fixed by ρ̂(e)"))?;
        if c.iter().any(|&s| hat.component_of(rho.image(s)) != Some(key)) {
            return Err(Error::invariant("ρ̄ is not well defined on a component"));
        }
        class_key.push(key);
    }
    let mut renumber = BTreeMap::new();
    for &k in &class_key {
        let next = renumber.len();
        renumber.entry(k).or_insert(next);
    }
    let class_of: Vec<usize> = class_key.iter().map(|k| renumber[k]).collect();
    let num_classes = renumber.len();
    let classes: Vec<Vec<usize>> = (0..num_classes)
        .map(|c| (0..comps.len()).filter(|&s| class_of[s] == c).collect())
        .collect();

    let g = &gamma.rep;
    let mut on_classes = Vec::new();
    let mut theta_compatible = true;
    for p in g.elements() {
        match induced(p, &class_of, num_classes) {
            Some(q) => on_classes.push(q),
            None => theta_compatible = false,
        }
    }
    if !theta_compatible {
        on_classes.clear();
    }
    let label = |s: usize| g.domain()[s].clone();
    let class_labels: Vec<String> = classes
        .iter()
        .map(|c| {
            let parts: Vec<String> = c.iter().map(|&s| format!("{{{}}}", label(s))).collect();
            parts.join(" ")
        })
        .collect();
    let g_theta = PermutationGroupRep::generated_by(class_labels, &on_classes)?;

    let sigma = gamma
        .structure
        .component_of(init)
        .ok_or_else(|| Error::invariant("the initial state is not a fixed point of e"))?;
    let initial_class = &classes[class_of[sigma]];
    let within: Vec<Permutation> = if theta_compatible {
        g.elements()
            .iter()
            .filter(|p| initial_class.contains(&p[initial_class[0]]))
            .map(|p| {
                initial_class
                    .iter()
                    .map(|s| initial_class.iter().position(|t| *t == p[*s]).expect("class is stabilized"))
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    let g_upper_theta =
        PermutationGroupRep::generated_by(initial_class.iter().map(|&s| label(s)).collect(), &within)?;

    let report_y = degree(&y)?;
    let report_z = degree(&z)?;
    let report_x = degree(&x)?;
    let g_theta_matches_z = theta_compatible && groups_equivalent(&g_theta, &report_z.group)?;
    let g_upper_theta_matches_y = theta_compatible && groups_equivalent(&g_upper_theta, &report_y.group)?;
    let product_law_holds = d_x == report_y.degree * report_z.degree;

    Ok(CompositionDegreeReport {
        y: y.to_strings(),
        z: z.to_strings(),
        beta: beta
            .source()
            .letters()
            .map(|l| (beta.source().symbol(l).to_string(), beta.target().format_word(beta.image(l))))
            .collect(),
        x: x.to_strings(),
        was_trim: composed.was_trim,
        y_used: y_used.to_strings(),
        unique_z_factorizations,
        product_states: product.full_state_count(),
        trim_states: a.num_states(),
        d_x,
        d_y: report_y.degree,
        d_z: report_z.degree,
        d_x_flower: report_x.degree,
        idempotent: monoid.format_witness(e),
        theta: classes
            .iter()
            .map(|c| c.iter().map(|&s| label(s)).collect())
            .collect(),
        theta_compatible,
        group_x: gamma.rep.clone(),
        g_theta,
        g_upper_theta,
        group_y: report_y.group,
        group_z: report_z.group,
        g_theta_matches_z,
        g_upper_theta_matches_y,
        product_law_holds,
    })
}

/// For a trim decomposition with Y complete: whether "X is a code implies
/// Z is a code" holds on this instance.
pub fn code_preservation_check(y: &FiniteWordSet, beta: &CodingMorphism) -> Result<bool> {
    let y = y.reinterpret(beta.source())?;
    if !is_complete(&y)?.is_complete() {
        return Err(Error::hypothesis("Y is not complete"));
    }
    let composed = compose(&y, beta)?;
    if !composed.was_trim {
        return Err(Error::hypothesis(
            "the decomposition is not trim; trim Y with compose() first",
        ));
    }
    Ok(!is_code(&composed.composed)?.is_code() || is_code(&beta.image_set())?.is_code())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn all_words(alphabet: &Alphabet, len: usize) -> FiniteWordSet {
        let mut words = vec![String::new()];
        for _ in 0..len {
            words = words
                .iter()
                .flat_map(|w| alphabet.symbols().iter().map(move |s| format!("{w}{s}")))
                .collect();
        }
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        FiniteWordSet::with_alphabet(alphabet.clone(), &refs).unwrap()
    }

    #[test]
    fn square_of_a_ab_ba() {
        let beta = CodingMorphism::from_pairs(&[("u", "a"), ("v", "ab"), ("w", "ba")]).unwrap();
        let y = all_words(beta.source(), 2);
        let r = composition_degree_report(&y, &beta).unwrap();
        assert!(!r.was_trim);
        assert_eq!(r.x.len(), 8);
        assert_eq!((r.d_x, r.d_y, r.d_z, r.d_x_flower), (2, 2, 1, 2));
        assert!(r.product_law_holds && r.theta_compatible);
        assert!(r.g_theta_matches_z && r.g_upper_theta_matches_y);
        assert_eq!(r.theta.len(), 1);
        assert_eq!(r.group_x.order(), 2);
    }

    #[test]
    fn renaming_keeps_the_degree() {
        let beta = CodingMorphism::from_pairs(&[("u", "a"), ("v", "b")]).unwrap();
        let y = all_words(beta.source(), 2);
        let r = composition_degree_report(&y, &beta).unwrap();
        assert!(r.was_trim);
        assert_eq!((r.d_x, r.d_y, r.d_z), (2, 2, 1));
        assert_eq!(r.theta.len(), 1);
        assert!(r.product_law_holds && r.g_theta_matches_z && r.g_upper_theta_matches_y);
    }

    #[test]
    fn injective_beta_is_not_enough() {
        // β is injective on Y = B², yet ba ∈ X factors as b·a and as ba in Z
        let beta = CodingMorphism::from_pairs(&[("u", "a"), ("v", "ba"), ("w", "b")]).unwrap();
        let y = all_words(beta.source(), 2);
        let r = composition_degree_report(&y, &beta).unwrap();
        assert!(r.was_trim && !r.unique_z_factorizations);
        assert_eq!((r.d_x, r.d_y, r.d_z, r.d_x_flower), (1, 2, 1, 1));
        assert!(!r.product_law_holds);

        // d(X) = 1 independently: ba is synchronizing, checked by brute force
        let x = FiniteWordSet::from_strs(&r.x.iter().map(String::as_str).collect::<Vec<_>>()).unwrap();
        let inside = |s: &str| s.is_empty() || factorization_count(&x, &x.parse_word(s).unwrap()).unwrap() > 0u32.into();
        let mut short = vec![String::new()];
        for _ in 0..5 {
            let next: Vec<String> = short.iter().flat_map(|w| ["a", "b"].map(|c| format!("{w}{c}"))).collect();
            short.extend(next.into_iter().filter(|w| w.len() <= 5));
            short.sort();
            short.dedup();
        }
        for u in &short {
            for v in &short {
                if inside(&format!("{u}ba{v}")) {
                    assert!(inside(&format!("{u}ba")) && inside(&format!("ba{v}")), "u={u} v={v}");
                }
            }
        }
    }

    #[test]
    fn degree_of_z_carries_over() {
        // Y = B, so X = Z and all of the degree comes from Z
        let beta = CodingMorphism::from_pairs(&[("u", "aa"), ("v", "b")]).unwrap();
        let y = all_words(beta.source(), 1);
        let r = composition_degree_report(&y, &beta).unwrap();
        assert_eq!((r.d_x, r.d_y, r.d_z), (r.d_z, 1, r.d_x));
        assert!(r.product_law_holds && r.g_theta_matches_z && r.g_upper_theta_matches_y);
    }

    #[test]
    fn incomplete_y_is_refused() {
        let beta = CodingMorphism::from_pairs(&[("u", "a"), ("v", "ab"), ("w", "ba")]).unwrap();
        let y = FiniteWordSet::with_alphabet(beta.source().clone(), &["u", "uw", "vu"]).unwrap();
        assert!(matches!(composition_degree_report(&y, &beta), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn code_preservation() {
        let beta = CodingMorphism::from_pairs(&[("u", "a"), ("v", "ba")]).unwrap();
        let y = all_words(beta.source(), 2);
        assert!(code_preservation_check(&y, &beta).unwrap());
        let beta = CodingMorphism::from_pairs(&[("u", "a"), ("v", "ab"), ("w", "ba")]).unwrap();
        let y = all_words(beta.source(), 2);
        assert!(matches!(code_preservation_check(&y, &beta), Err(Error::Hypothesis(_))));
    }
}
