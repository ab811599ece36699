//! Text, JSON and DOT formats for word sets, morphisms, automata,
//! transducers and state maps.
//!
//! Word sets are one word per line (or comma separated), with `#` comments
//! and an optional `alphabet:` header fixing the symbol order. Morphisms are
//! `b -> word` lines. Automata and transducers use JSON with states named by
//! label. Maps are `p -> q` lines.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::automata::MultiplicityAutomaton;
use crate::error::{Error, Result};
use crate::transducers::LiteralTransducer;
use crate::words::{Alphabet, CodingMorphism, FiniteWordSet};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(n, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((n + 1, line))
    })
}

fn header<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let (k, rest) = line.split_once(':')?;
    (k.trim() == key).then(|| rest.trim())
}

/// Parses a word set file (or an inline list such as `a,ab,ba`).
pub fn parse_word_set(text: &str) -> Result<FiniteWordSet> {
    let mut alphabet = None;
    let mut words: Vec<String> = Vec::new();
    for (n, line) in content_lines(text) {
        if let Some(rest) = header(line, "alphabet") {
            if alphabet.is_some() || !words.is_empty() {
                return Err(Error::Parse(format!("line {n}: misplaced alphabet header")));
            }
            alphabet = Some(Alphabet::new(rest.split_whitespace())?);
            continue;
        }
        words.extend(line.split(',').map(str::trim).filter(|w| !w.is_empty()).map(String::from));
    }
    if words.is_empty() {
        return Err(Error::Parse("no words".into()));
    }
    let refs: Vec<&str> = words.iter().map(String::as_str).collect();
    match alphabet {
        Some(a) => FiniteWordSet::with_alphabet(a, &refs),
        None => FiniteWordSet::from_strs(&refs),
    }
}

/// The word set file format, with an explicit alphabet header.
pub fn word_set_text(x: &FiniteWordSet) -> String {
    let mut out = format!("alphabet: {}\n", x.alphabet().symbols().join(" "));
    for w in x.to_strings() {
        out.push_str(&w);
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSetJson {
    pub alphabet: Vec<String>,
    pub words: Vec<String>,
}

impl From<&FiniteWordSet> for WordSetJson {
    fn from(x: &FiniteWordSet) -> Self {
        WordSetJson {
            alphabet: x.alphabet().symbols().to_vec(),
            words: x.to_strings(),
        }
    }
}

impl WordSetJson {
    pub fn to_set(&self) -> Result<FiniteWordSet> {
        let refs: Vec<&str> = self.words.iter().map(String::as_str).collect();
        FiniteWordSet::with_alphabet(Alphabet::new(self.alphabet.iter().cloned())?, &refs)
    }
}

/// Parses `b -> word` lines; the source alphabet follows the line order.
/// An optional `target:` header fixes the target alphabet.
pub fn parse_morphism(text: &str) -> Result<CodingMorphism> {
    let mut target = None;
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (n, line) in content_lines(text) {
        if let Some(rest) = header(line, "target") {
            target = Some(Alphabet::new(rest.split_whitespace())?);
            continue;
        }
        let (b, w) = line
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("line {n}: expected `letter -> word`")))?;
        pairs.push((b.trim().to_string(), w.trim().to_string()));
    }
    if pairs.is_empty() {
        return Err(Error::Parse("no morphism lines".into()));
    }
    let source = Alphabet::new(pairs.iter().map(|(b, _)| b.clone()))?;
    let target = match target {
        Some(t) => t,
        None => Alphabet::infer(pairs.iter().map(|(_, w)| w.as_str()))?,
    };
    let images = pairs
        .iter()
        .map(|(_, w)| target.parse_word(w))
        .collect::<Result<Vec<_>>>()?;
    CodingMorphism::new(source, target, images)
}

pub fn morphism_text(beta: &CodingMorphism) -> String {
    beta.source()
        .letters()
        .map(|b| format!("{} -> {}\n", beta.source().symbol(b), beta.target().format_word(beta.image(b))))
        .collect()
}

/// Automaton JSON. The alphabet may be omitted, in which case it is the
/// sorted set of edge letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    pub states: Vec<String>,
    pub initial: String,
    pub terminal: String,
    pub edges: Vec<(String, String, String)>,
}

impl From<&MultiplicityAutomaton> for AutomatonJson {
    fn from(a: &MultiplicityAutomaton) -> Self {
        AutomatonJson {
            alphabet: Some(a.alphabet().symbols().to_vec()),
            states: a.states().to_vec(),
            initial: a.state_label(a.initial()).to_string(),
            terminal: a.state_label(a.terminal()).to_string(),
            edges: a
                .edges()
                .map(|(p, l, q)| {
                    (
                        a.state_label(p).to_string(),
                        a.alphabet().symbol(l).to_string(),
                        a.state_label(q).to_string(),
                    )
                })
                .collect(),
        }
    }
}

fn alphabet_or_inferred(given: &Option<Vec<String>>, used: impl Iterator<Item = String>) -> Result<Alphabet> {
    match given {
        Some(symbols) => Alphabet::new(symbols.iter().cloned()),
        None => Alphabet::new(used.collect::<BTreeSet<_>>()),
    }
}

impl AutomatonJson {
    pub fn to_automaton(&self) -> Result<MultiplicityAutomaton> {
        let alphabet = alphabet_or_inferred(&self.alphabet, self.edges.iter().map(|e| e.1.clone()))?;
        let edges: Vec<(&str, &str, &str)> = self
            .edges
            .iter()
            .map(|(p, a, q)| (p.as_str(), a.as_str(), q.as_str()))
            .collect();
        let states: Vec<&str> = self.states.iter().map(String::as_str).collect();
        MultiplicityAutomaton::from_labels(alphabet, &states, &self.initial, &self.terminal, &edges)
    }
}

pub fn parse_automaton(text: &str) -> Result<MultiplicityAutomaton> {
    let json: AutomatonJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    json.to_automaton()
}

pub fn automaton_json(a: &MultiplicityAutomaton) -> String {
    serde_json::to_string_pretty(&AutomatonJson::from(a)).expect("serializable")
}

/// Transducer JSON: edges are `[p, a, out, q]` with `out = "1"` for the
/// empty output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransducerJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Vec<String>>,
    pub states: Vec<String>,
    pub initial: String,
    pub terminal: String,
    pub edges: Vec<(String, String, String, String)>,
}

impl From<&LiteralTransducer> for TransducerJson {
    fn from(t: &LiteralTransducer) -> Self {
        let s = t.states();
        TransducerJson {
            input: Some(t.input_alphabet().symbols().to_vec()),
            output: Some(t.output_alphabet().symbols().to_vec()),
            states: s.to_vec(),
            initial: s[t.initial()].clone(),
            terminal: s[t.terminal()].clone(),
            edges: t
                .edges()
                .map(|(p, a, out, q)| {
                    (
                        s[p].clone(),
                        t.input_alphabet().symbol(a).to_string(),
                        t.format_output(out),
                        s[q].clone(),
                    )
                })
                .collect(),
        }
    }
}

impl TransducerJson {
    pub fn to_transducer(&self) -> Result<LiteralTransducer> {
        let input = alphabet_or_inferred(&self.input, self.edges.iter().map(|e| e.1.clone()))?;
        let output = alphabet_or_inferred(
            &self.output,
            self.edges.iter().map(|e| e.2.clone()).filter(|o| o != "1"),
        )?;
        let state = |label: &str| {
            self.states
                .iter()
                .position(|s| s == label)
                .ok_or_else(|| Error::Parse(format!("unknown state {label:?}")))
        };
        let mut edges = Vec::new();
        for (p, a, out, q) in &self.edges {
            let a = input.letter(a).ok_or_else(|| Error::Parse(format!("unknown input {a:?}")))?;
            let out = if out == "1" && output.letter("1").is_none() {
                None
            } else {
                Some(output.letter(out).ok_or_else(|| Error::Parse(format!("unknown output {out:?}")))?)
            };
            edges.push((state(p)?, a, out, state(q)?));
        }
        LiteralTransducer::new(
            input,
            output,
            self.states.clone(),
            state(&self.initial)?,
            state(&self.terminal)?,
            edges,
        )
    }
}

pub fn parse_transducer(text: &str) -> Result<LiteralTransducer> {
    let json: TransducerJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    json.to_transducer()
}

pub fn transducer_json(t: &LiteralTransducer) -> String {
    serde_json::to_string_pretty(&TransducerJson::from(t)).expect("serializable")
}

/// Parses `p -> q` lines into a map from source to target state labels.
/// Every source state must appear exactly once.
pub fn parse_state_map(
    text: &str,
    source: &MultiplicityAutomaton,
    target: &MultiplicityAutomaton,
) -> Result<Vec<usize>> {
    let mut map = vec![None; source.num_states()];
    for (n, line) in content_lines(text) {
        let (p, q) = line
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("line {n}: expected `state -> state`")))?;
        let (p, q) = (p.trim(), q.trim());
        let pi = source
            .state_index(p)
            .ok_or_else(|| Error::Parse(format!("line {n}: unknown source state {p:?}")))?;
        let qi = target
            .state_index(q)
            .ok_or_else(|| Error::Parse(format!("line {n}: unknown target state {q:?}")))?;
        if map[pi].replace(qi).is_some() {
            return Err(Error::Parse(format!("line {n}: state {p:?} mapped twice")));
        }
    }
    map.iter()
        .enumerate()
        .map(|(p, q)| q.ok_or_else(|| Error::Parse(format!("state {:?} is not mapped", source.state_label(p)))))
        .collect()
}

/// Plain listing: states, initial and terminal states, one edge per line.
pub fn automaton_text(a: &MultiplicityAutomaton) -> String {
    let mut out = format!(
        "states: {}\ninitial: {}\nterminal: {}\n",
        a.states().join(" "),
        a.state_label(a.initial()),
        a.state_label(a.terminal())
    );
    for (p, l, q) in a.edges() {
        out.push_str(&format!(
            "{} -{}-> {}\n",
            a.state_label(p),
            a.alphabet().symbol(l),
            a.state_label(q)
        ));
    }
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dot(
    states: &[String],
    initial: usize,
    terminal: usize,
    edges: impl Iterator<Item = (usize, String, usize)>,
) -> String {
    let mut out = String::from("digraph {\n  rankdir=LR;\n  __start [shape=point];\n");
    for (i, s) in states.iter().enumerate() {
        let shape = if i == terminal { "doublecircle" } else { "circle" };
        out.push_str(&format!("  n{i} [label={}, shape={shape}];\n", dot_id(s)));
    }
    out.push_str(&format!("  __start -> n{initial};\n"));
    let mut edges: Vec<_> = edges.collect();
    edges.sort();
    for (p, label, q) in edges {
        out.push_str(&format!("  n{p} -> n{q} [label={}];\n", dot_id(&label)));
    }
    out.push_str("}\n");
    out
}

/// DOT with nodes in state order and edges sorted.
pub fn automaton_dot(a: &MultiplicityAutomaton) -> String {
    dot(
        a.states(),
        a.initial(),
        a.terminal(),
        a.edges().map(|(p, l, q)| (p, a.alphabet().symbol(l).to_string(), q)),
    )
}

/// DOT with edges labelled `a|out`.
pub fn transducer_dot(t: &LiteralTransducer) -> String {
    dot(
        t.states(),
        t.initial(),
        t.terminal(),
        t.edges().map(|(p, a, out, q)| {
            (p, format!("{}|{}", t.input_alphabet().symbol(a), t.format_output(out)), q)
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{flower_automaton, prefix_automaton};
    use crate::transducers::prefix_transducer;

    #[test]
    fn word_sets() {
        let x = parse_word_set("# Z\na\nab\n\nba # trailing\n").unwrap();
        assert_eq!(x.to_strings(), ["a", "ab", "ba"]);
        let inline = parse_word_set("a,ab,ba").unwrap();
        assert_eq!(inline, x);
        let y = parse_word_set("alphabet: u v w\nu\nu w\nv u\n").unwrap();
        assert_eq!(y.alphabet().symbols(), ["u", "v", "w"]);
        assert_eq!(y.to_strings(), ["u", "uw", "vu"]);
        assert_eq!(parse_word_set(&word_set_text(&y)).unwrap(), y);
        assert!(matches!(parse_word_set("# nothing\n"), Err(Error::Parse(_))));
        let json = WordSetJson::from(&y);
        assert_eq!(json.to_set().unwrap(), y);
    }

    #[test]
    fn morphisms() {
        let beta = parse_morphism("u -> a\nv -> ab\nw -> ba\n").unwrap();
        assert_eq!(beta.image_set().to_strings(), ["a", "ab", "ba"]);
        assert_eq!(parse_morphism(&morphism_text(&beta)).unwrap(), beta);
        assert!(matches!(parse_morphism("u a"), Err(Error::Parse(_))));
        assert!(parse_morphism("u -> a\nv -> a").is_err());
    }

    #[test]
    fn automaton_round_trip() {
        let a = flower_automaton(&FiniteWordSet::from_strs(&["a", "ab", "ba"]).unwrap());
        assert_eq!(parse_automaton(&automaton_json(&a)).unwrap(), a);
        let text = r#"{"states":["1","2"],"initial":"1","terminal":"1","edges":[["1","a","2"],["2","b","1"]]}"#;
        let b = parse_automaton(text).unwrap();
        assert_eq!(b.num_edges(), 2);
        assert_eq!(automaton_text(&b), "states: 1 2\ninitial: 1\nterminal: 1\n1 -a-> 2\n2 -b-> 1\n");
        assert!(matches!(parse_automaton("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn transducer_round_trip() {
        let beta = parse_morphism("u -> a\nv -> ab").unwrap();
        let t = prefix_transducer(&beta.image_set(), &beta).unwrap();
        let json = transducer_json(&t);
        assert!(json.contains("\"1\""));
        assert_eq!(parse_transducer(&json).unwrap(), t);
        assert!(transducer_dot(&t).contains("label=\"b|v\""));
    }

    #[test]
    fn state_maps() {
        let x = FiniteWordSet::from_strs(&["aa", "aaa"]).unwrap();
        let (f, p) = (flower_automaton(&x), prefix_automaton(&x));
        let map = parse_state_map("ω -> 1\n(a,a) -> a\n(a,aa) -> a\n(aa,a) -> aa\n", &f, &p).unwrap();
        assert_eq!(map, [0, 1, 1, 2]);
        assert!(parse_state_map("ω -> 1", &f, &p).is_err());
    }

    #[test]
    fn dot_is_sorted() {
        let a = prefix_automaton(&FiniteWordSet::from_strs(&["aa", "aaa"]).unwrap());
        let d = automaton_dot(&a);
        assert!(d.starts_with("digraph {"));
        assert_eq!(d.matches(" -> n").count(), 5);
    }
}
