//! Shortest-word searches in explicit labelled graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::words::Letter;

/// Shortest label of a path from one of `starts` to a node satisfying
/// `is_target`; among shortest labels the least in letter order is returned.
pub(crate) fn shortest_path_word(
    num_nodes: usize,
    edges: &[(usize, Letter, usize)],
    starts: &[usize],
    is_target: impl Fn(usize) -> bool,
) -> Option<Vec<Letter>> {
    let mut forward: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); num_nodes];
    let mut backward: Vec<Vec<usize>> = vec![Vec::new(); num_nodes];
    for &(p, a, q) in edges {
        forward[p].push((a, q));
        backward[q].push(p);
    }
    let mut dist = vec![usize::MAX; num_nodes];
    let mut queue = VecDeque::new();
    for v in 0..num_nodes {
        if is_target(v) {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &p in &backward[v] {
            if dist[p] == usize::MAX {
                dist[p] = dist[v] + 1;
                queue.push_back(p);
            }
        }
    }
    let best = starts.iter().map(|&s| dist[s]).min()?;
    if best == usize::MAX {
        return None;
    }
    let mut current: BTreeSet<usize> = starts.iter().copied().filter(|&s| dist[s] == best).collect();
    let mut word = Vec::with_capacity(best);
    for remaining in (1..=best).rev() {
        let mut by_letter: BTreeMap<Letter, BTreeSet<usize>> = BTreeMap::new();
        for &v in &current {
            for &(a, q) in &forward[v] {
                if dist[q] == remaining - 1 {
                    by_letter.entry(a).or_default().insert(q);
                }
            }
        }
        let (a, next) = by_letter.into_iter().next()?;
        word.push(a);
        current = next;
    }
    Some(word)
}
