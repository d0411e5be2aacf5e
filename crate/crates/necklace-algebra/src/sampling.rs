//! Seeded random generation and small-case enumeration of quivers,
//! necklaces, and links, shared by the property suites and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use crate::heightlink::Link;
use crate::necklace::Necklace;
use crate::quiver::{Arrow, Edge, Quiver, VertexId};
use crate::Result;

/// The deterministic generator used everywhere randomness is needed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every necklace with at most `max_len` edges: all vertex necklaces plus
/// every composable cyclic word, deduplicated up to rotation.
pub fn enumerate_necklaces(q: &Quiver, max_len: usize) -> Vec<Necklace> {
    let mut out: BTreeSet<Necklace> = (0..q.vertices().len()).map(Necklace::vertex).collect();
    let edges: Vec<Edge> = q.edges().collect();
    let mut stack: Vec<(VertexId, Vec<Edge>)> = Vec::new();
    for start in 0..q.vertices().len() {
        stack.push((start, Vec::new()));
        while let Some((at, walk)) = stack.pop() {
            for &e in &edges {
                if q.source(e) != at {
                    continue;
                }
                let mut next = walk.clone();
                next.push(e);
                let to = q.target(e);
                if to == start {
                    out.insert(
                        Necklace::cycle(q, next.clone()).expect("walk is composable"),
                    );
                }
                if next.len() < max_len {
                    stack.push((to, next));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Random quiver with 1–3 vertices and 1–4 arrows (arrows named `e1`, … so
/// names never collide with the reserved scalar names).
pub fn random_quiver(rng: &mut ChaCha8Rng) -> Quiver {
    let nv = rng.gen_range(1..=3usize);
    let na = rng.gen_range(1..=4usize);
    let vertices: Vec<String> = (1..=nv).map(|i| format!("v{i}")).collect();
    let arrows: Vec<Arrow> = (1..=na)
        .map(|i| Arrow {
            name: format!("e{i}"),
            source: rng.gen_range(0..nv),
            target: rng.gen_range(0..nv),
        })
        .collect();
    Quiver::from_parts(vertices, arrows).expect("generated quiver is well-formed")
}

/// Random composable closed walk with at most `max_edges` edges, as a
/// necklace. Falls back to a lone vertex when no short cycle is found.
pub fn random_necklace(q: &Quiver, rng: &mut ChaCha8Rng, max_edges: usize) -> Necklace {
    if max_edges >= 1 {
        for _ in 0..200 {
            let target_len = rng.gen_range(1..=max_edges);
            if let Some(word) = random_closed_walk(q, rng, target_len) {
                return Necklace::cycle(q, word).expect("walk is composable");
            }
        }
    }
    Necklace::vertex(rng.gen_range(0..q.vertices().len()))
}

/// One attempt at a closed walk of exactly `len` edges.
fn random_closed_walk(q: &Quiver, rng: &mut ChaCha8Rng, len: usize) -> Option<Vec<Edge>> {
    let start = rng.gen_range(0..q.vertices().len());
    let mut at = start;
    let mut word: Vec<Edge> = Vec::with_capacity(len);
    for _ in 0..len {
        let outgoing: Vec<Edge> = q.edges().filter(|&e| q.source(e) == at).collect();
        if outgoing.is_empty() {
            return None;
        }
        let e = outgoing[rng.gen_range(0..outgoing.len())];
        at = q.target(e);
        word.push(e);
    }
    (at == start).then_some(word)
}

/// Random link: one or two knots (random closed walks within the edge
/// budget), sometimes a lone vertex, with a uniformly random assignment of
/// heights across all occurrences.
pub fn random_link(q: &Quiver, rng: &mut ChaCha8Rng, max_edges: usize) -> Result<Link> {
    let mut words: Vec<Vec<Edge>> = Vec::new();
    let mut budget = max_edges;
    let n_knots = rng.gen_range(0..=2usize);
    for _ in 0..n_knots {
        if budget == 0 {
            break;
        }
        if let Necklace::Cycle(word) = random_necklace(q, rng, budget) {
            budget -= word.len();
            words.push(word);
        }
    }
    let mut vertices: Vec<VertexId> = Vec::new();
    if rng.gen_bool(0.3) || words.is_empty() {
        vertices.push(rng.gen_range(0..q.vertices().len()));
    }
    // Scatter heights: a random permutation of 1..=N over the occurrences.
    let total: usize = words.iter().map(|w| w.len()).sum();
    let mut heights: Vec<u32> = (1..=total as u32).collect();
    for i in (1..heights.len()).rev() {
        heights.swap(i, rng.gen_range(0..=i));
    }
    let mut it = heights.into_iter();
    let knots: Vec<Vec<(Edge, u32)>> = words
        .into_iter()
        .map(|w| w.into_iter().map(|e| (e, it.next().expect("counted"))).collect())
        .collect();
    Link::new(q, knots, vertices)
}
