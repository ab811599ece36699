use rayon::prelude::*;
use serde_json::{json, Value};

use submonoid::analysis::{
    check_synchronizing_word, composition_degree_report, degree as degree_report, find_synchronizing_word,
    SyncCheck,
};
use submonoid::automata::{
    check_reduction as reduction_verdict, flower_automaton, prefix_automaton, recognizes_with_multiplicities,
    ReductionFailure, ReductionMap, ReductionVerdict,
};
use submonoid::corpus::{word_sets, CorpusLimits};
use submonoid::formats::{
    automaton_dot, automaton_json, automaton_text, parse_automaton, parse_morphism, parse_state_map,
    transducer_dot, transducer_json,
};
use submonoid::relmonoid::{enumerate_monoid, green_relations, minimal_eggbox, PermutationGroupRep};
use submonoid::transducers::{flower_transducer, prefix_transducer};
use submonoid::words::{factorization_count, is_code, is_complete, FiniteWordSet, Word};
use submonoid::Error;

use crate::{read_input, read_set, Format, Outcome, TransducerKind};

type Res = Result<Outcome, Error>;

fn no_dot(f: Format) -> Result<(), Error> {
    if f == Format::Dot {
        return Err(Error::Input(
            "dot output is only available for flower, prefix and transducer".into(),
        ));
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// A JSON number when it fits in u64, a decimal string otherwise.
fn number(n: &impl ToString) -> Value {
    let text = n.to_string();
    match text.parse::<u64>() {
        Ok(k) => json!(k),
        Err(_) => json!(text),
    }
}

fn generators(g: &PermutationGroupRep) -> Vec<String> {
    g.generators().iter().map(|p| g.cycle_notation(p)).collect()
}

fn group_json(g: &PermutationGroupRep) -> Value {
    json!({
        "name": g.name(),
        "order": g.order(),
        "degree": g.degree(),
        "domain": g.domain(),
        "generators": generators(g),
    })
}

pub fn automaton(x: &FiniteWordSet, prefix: bool, f: Format) -> Res {
    let a = if prefix { prefix_automaton(x) } else { flower_automaton(x) };
    Ok(Outcome::ok(match f {
        Format::Text => automaton_text(&a),
        Format::Json => automaton_json(&a),
        Format::Dot => automaton_dot(&a),
    }))
}

pub fn transducer(beta: &str, kind: TransducerKind, f: Format) -> Res {
    let beta = parse_morphism(&read_input(beta)?)?;
    let z = beta.image_set();
    let t = match kind {
        TransducerKind::Flower => flower_transducer(&z, &beta)?,
        TransducerKind::Prefix => prefix_transducer(&z, &beta)?,
    };
    Ok(Outcome::ok(match f {
        Format::Text => t.to_string(),
        Format::Json => transducer_json(&t),
        Format::Dot => transducer_dot(&t),
    }))
}

pub fn count(x: &FiniteWordSet, word: &str, f: Format) -> Res {
    no_dot(f)?;
    let w = x.parse_word(word)?;
    let dp = factorization_count(x, &w)?;
    let mu = flower_automaton(x).behavior_count(&w)?;
    if dp != mu {
        return Err(Error::Invariant(format!(
            "factorization count {dp} differs from the flower automaton's {mu}"
        )));
    }
    Ok(Outcome::ok(match f {
        Format::Json => pretty(&json!({"word": x.format_word(&w), "count": number(&dp)})),
        _ => dp.to_string(),
    }))
}

pub fn degree(x: &FiniteWordSet, f: Format) -> Res {
    no_dot(f)?;
    let r = degree_report(x)?;
    Ok(Outcome::ok(match f {
        Format::Json => pretty(&json!({
            "set": r.set,
            "degree": r.degree,
            "group": group_json(&r.group),
            "witness": r.witness,
            "automaton": r.automaton,
        })),
        _ => format!("d={}, G ≅ {}\nwitness: {}", r.degree, r.group.name(), r.witness),
    }))
}

pub fn group(x: &FiniteWordSet, f: Format) -> Res {
    no_dot(f)?;
    let r = degree_report(x)?;
    let g = &r.group;
    Ok(Outcome::ok(match f {
        Format::Json => pretty(&group_json(g)),
        _ => {
            let mut out = format!("{g}\nacting on the components of {}:", r.witness);
            for (i, d) in g.domain().iter().enumerate() {
                out.push_str(&format!("\n  {}: {{{d}}}", i + 1));
            }
            out.push_str(&format!("\norder {}, generators: {}", g.order(), {
                let gens = generators(g);
                if gens.is_empty() {
                    "none".to_string()
                } else {
                    gens.join(" ")
                }
            }));
            out
        }
    }))
}

pub fn sync(x: &FiniteWordSet, check: Option<&str>, f: Format) -> Res {
    no_dot(f)?;
    if let Some(text) = check {
        let w = x.parse_word(text)?;
        let verdict = check_synchronizing_word(x, &w)?;
        let (name, u, v) = match &verdict {
            SyncCheck::Certified => ("certified", None, None),
            SyncCheck::Refuted { u, v } => ("refuted", Some(x.format_word(u)), Some(x.format_word(v))),
            SyncCheck::Unknown => ("unknown", None, None),
        };
        return Ok(Outcome::ok(match f {
            Format::Json => pretty(&json!({"word": x.format_word(&w), "verdict": name, "u": u, "v": v})),
            _ => match (u, v) {
                (Some(u), Some(v)) => format!("refuted: u={u}, v={v}"),
                _ => name.to_string(),
            },
        }));
    }
    let w = find_synchronizing_word(x)?;
    let shown = w.as_ref().map(|w| x.format_word(w));
    Ok(Outcome::ok(match f {
        Format::Json => pretty(&json!({"synchronizing_word": shown})),
        _ => shown.unwrap_or_else(|| "none".into()),
    }))
}

fn tick(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

pub fn compose(y: &str, beta: &str, f: Format) -> Res {
    no_dot(f)?;
    let beta = parse_morphism(&read_input(beta)?)?;
    let y = read_set(y)?.reinterpret(beta.source())?;
    let composed = submonoid::words::compose(&y, &beta)?;
    let b = beta.source();
    let collisions: Vec<String> = composed
        .collisions
        .iter()
        .map(|(x, kept, removed)| {
            let mut parts = vec![format!("β({})", b.format_word(kept))];
            parts.extend(removed.iter().map(|r| format!("β({})", b.format_word(r))));
            format!("{} = {}; kept {}", beta.target().format_word(x), parts.join(" = "), b.format_word(kept))
        })
        .collect();
    let complete = is_complete(&y)?;
    let report = if complete.is_complete() {
        Some(composition_degree_report(&y, &beta)?)
    } else {
        None
    };
    let status = if complete.is_complete() { 0 } else { 4 };
    let output = match f {
        Format::Json => pretty(&json!({
            "x": composed.composed.to_strings(),
            "was_trim": composed.was_trim,
            "collisions": collisions,
            "y_complete": complete.is_complete(),
            "report": report,
        })),
        _ => {
            let mut out = format!("X = {}", composed.composed);
            if composed.was_trim {
                out.push_str("\ntrim");
            } else {
                for c in &collisions {
                    out.push_str(&format!("\nnot trim: {c}"));
                }
            }
            match (&report, complete.witness()) {
                (_, Some(w)) => {
                    out.push_str(&format!(
                        "\nY is not complete ({} is not a factor of Y*); no degree report",
                        y.format_word(w)
                    ));
                }
                (Some(r), None) => {
                    out.push_str(&format!(
                        "\nd(X)={} = d(Y)·d(Z) = {}·{} {}",
                        r.d_x,
                        r.d_y,
                        r.d_z,
                        tick(r.product_law_holds)
                    ));
                    if !r.unique_z_factorizations {
                        out.push_str("\nsome x ∈ X has several factorizations in Z");
                    }
                    out.push_str(&format!("\nG(X) ≅ {} on {} points", r.group_x.name(), r.group_x.degree()));
                    let classes: Vec<String> = r
                        .theta
                        .iter()
                        .map(|c| format!("[{}]", c.iter().map(|s| format!("{{{s}}}")).collect::<Vec<_>>().join(" ")))
                        .collect();
                    out.push_str(&format!("\nθ-classes: {}", classes.join(" ")));
                    out.push_str(&format!(
                        "\nG_θ ≅ {} = G(Z) {}",
                        r.g_theta.name(),
                        tick(r.g_theta_matches_z)
                    ));
                    out.push_str(&format!(
                        "\nG^θ ≅ {} = G(Y) {}",
                        r.g_upper_theta.name(),
                        tick(r.g_upper_theta_matches_y)
                    ));
                }
                (None, None) => {}
            }
            out
        }
    };
    Ok(Outcome { output, status })
}

pub fn monoid(x: &FiniteWordSet, automaton: Option<&str>, f: Format) -> Res {
    no_dot(f)?;
    let a = match automaton {
        None => flower_automaton(x),
        Some(path) => {
            let a = parse_automaton(&read_input(path)?)?;
            if !recognizes_with_multiplicities(&a, x)? {
                return Err(Error::Hypothesis(
                    "the automaton does not recognize X* with multiplicities".into(),
                ));
            }
            a
        }
    };
    let m = enumerate_monoid(&a)?;
    let green = green_relations(&m);
    let egg = minimal_eggbox(&m, &green)?;
    let (rows, cols) = egg.shape();
    Ok(Outcome::ok(match f {
        Format::Json => pretty(&json!({
            "elements": m.len(),
            "d_classes": green.num_d_classes(),
            "minimal_d_class": egg,
        })),
        _ => {
            let sizes: std::collections::BTreeSet<usize> = egg.cells.iter().flatten().map(|c| c.size).collect();
            let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
            format!(
                "{} elements, {} D-classes\nminimal D-class: {rows}×{cols}, {} group H-classes (*), H-classes of size {}\n{egg}",
                m.len(),
                green.num_d_classes(),
                egg.num_groups(),
                sizes.join(", ")
            )
        }
    }))
}

pub fn check_code(x: &FiniteWordSet, f: Format) -> Res {
    no_dot(f)?;
    let v = is_code(x)?;
    let w = v.witness().map(|w| x.format_word(w));
    Ok(Outcome::ok(match f {
        Format::Json => pretty(&json!({"code": v.is_code(), "witness": w})),
        _ => match w {
            None => "code".into(),
            Some(w) => format!("not a code: {w}"),
        },
    }))
}

pub fn check_complete(x: &FiniteWordSet, f: Format) -> Res {
    no_dot(f)?;
    let v = is_complete(x)?;
    let w = v.witness().map(|w| x.format_word(w));
    Ok(Outcome::ok(match f {
        Format::Json => pretty(&json!({"complete": v.is_complete(), "witness": w})),
        _ => match w {
            None => "complete".into(),
            Some(w) => format!("incomplete: {w}"),
        },
    }))
}

pub fn check_reduction(source: &str, target: &str, map: &str, f: Format) -> Res {
    no_dot(f)?;
    let a = parse_automaton(&read_input(source)?)?;
    let b = parse_automaton(&read_input(target)?)?;
    let map = parse_state_map(&read_input(map)?, &a, &b)?;
    let rho = ReductionMap::new(a.clone(), b.clone(), map)?;
    let verdict = reduction_verdict(&rho)?;
    let word = |w: &Word| a.alphabet().format_word(w);
    let (kind, detail) = match &verdict {
        ReductionVerdict::SharpReduction => ("sharp reduction", None),
        ReductionVerdict::Reduction => ("reduction (not sharp)", None),
        ReductionVerdict::NotReduction(ReductionFailure::Unprojected { witness, from, to }) => (
            "not a reduction",
            Some(format!(
                "edge {} -{}-> {} maps to {} -{}-> {}, which is not an edge",
                a.state_label(*from),
                word(witness),
                a.state_label(*to),
                b.state_label(rho.image(*from)),
                word(witness),
                b.state_label(rho.image(*to))
            )),
        ),
        ReductionVerdict::NotReduction(ReductionFailure::Unlifted { witness, from, to }) => (
            "not a reduction",
            Some(format!(
                "path {} -{}-> {} does not lift",
                b.state_label(*from),
                word(witness),
                b.state_label(*to)
            )),
        ),
    };
    Ok(Outcome::ok(match f {
        Format::Json => pretty(&json!({
            "reduction": verdict.is_reduction(),
            "sharp": verdict.is_sharp(),
            "witness": match &verdict {
                ReductionVerdict::NotReduction(r) => Some(word(r.witness())),
                _ => None,
            },
            "detail": detail,
        })),
        _ => match detail {
            Some(d) => format!("{kind}: {d}"),
            None => kind.to_string(),
        },
    }))
}

fn corpus_row(i: usize, x: &FiniteWordSet) -> Result<Value, Error> {
    let code = is_code(x)?;
    let complete = is_complete(x)?;
    let d = degree_report(x)?;
    let sync = find_synchronizing_word(x)?;
    Ok(json!({
        "index": i,
        "set": x.to_strings(),
        "code": code.is_code(),
        "code_witness": code.witness().map(|w| x.format_word(w)),
        "complete": complete.is_complete(),
        "degree": d.degree,
        "group": d.group.name(),
        "synchronizing_word": sync.map(|w| x.format_word(&w)),
    }))
}

pub fn corpus(seed: u64, count: usize, jobs: usize, f: Format) -> Res {
    no_dot(f)?;
    let sets = word_sets(seed, count, CorpusLimits::default());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Resource(e.to_string()))?;
    let rows: Vec<Value> = pool.install(|| {
        sets.par_iter()
            .enumerate()
            .map(|(i, x)| corpus_row(i, x))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(Outcome::ok(match f {
        Format::Json => pretty(&Value::Array(rows)),
        _ => rows
            .iter()
            .map(|r| {
                let words: Vec<&str> = r["set"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
                format!(
                    "{:>3}  {{{}}}  code={} complete={} d={} G={} sync={}",
                    r["index"],
                    words.join(", "),
                    if r["code"].as_bool().unwrap() { "yes" } else { "no" },
                    if r["complete"].as_bool().unwrap() { "yes" } else { "no" },
                    r["degree"],
                    r["group"].as_str().unwrap(),
                    r["synchronizing_word"].as_str().unwrap_or("none"),
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }))
}
