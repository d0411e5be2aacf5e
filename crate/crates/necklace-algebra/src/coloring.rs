//! Matchings and colorings of a height-labeled link, their weights, and
//! the induced family of coproducts.
//!
//! A matching pairs an occurrence of an arrow with an occurrence of its
//! reverse, all pairs disjoint. Deleting the matched occurrences and
//! rerouting each one into the successor of its partner decomposes the
//! occurrences into orbits; every orbit inherits the unmatched letters (in
//! traversal order, heights riding along) as a new knot, or degenerates to
//! a lone vertex when all of its letters are matched. An `n`-coloring
//! assigns each orbit and each lone vertex one of `n` colors such that for
//! every matched pair the orbit of the higher occurrence gets a strictly
//! larger color than the orbit of the lower one. Grouping components by
//! color splits the link into an ordered `n`-tuple of links, and the
//! coproduct is the weighted sum of these splittings over all colorings.

use crate::heightlink::{normalize_with, EngineParams, Link, NElement};
use crate::quiver::{Edge, Quiver, VertexId};
use crate::scalars::{rat_int, LinComb, Poly2};
use crate::{Error, Result};

/// An edge occurrence: (knot index, offset within the knot).
pub type Pos = (usize, usize);

/// Disjoint pairs (unstarred occurrence, occurrence of its reverse).
#[derive(Clone, Debug, Default)]
pub struct Matching {
    pub pairs: Vec<(Pos, Pos)>,
}

/// The orbit decomposition of a link's occurrences under a matching.
#[derive(Clone, Debug)]
pub struct Orbits {
    orbit_of: Vec<Vec<usize>>,
    /// Unmatched entries of each orbit in traversal order.
    pub words: Vec<Vec<(Edge, u32)>>,
    /// The common source vertex of a fully matched orbit.
    pub vertex: Vec<Option<VertexId>>,
}

impl Orbits {
    pub fn orbit_of(&self, p: Pos) -> usize {
        self.orbit_of[p.0][p.1]
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn entry(link: &Link, p: Pos) -> (Edge, u32) {
    link.knots()[p.0].entries()[p.1]
}

/// All pairs (p, p') with `p` an unstarred occurrence and `p'` an
/// occurrence of its reverse.
fn candidate_pairs(link: &Link) -> Vec<(Pos, Pos)> {
    let mut positions: Vec<Pos> = Vec::new();
    for (ki, knot) in link.knots().iter().enumerate() {
        for oi in 0..knot.len() {
            positions.push((ki, oi));
        }
    }
    let mut out = Vec::new();
    for &p in &positions {
        let (e, _) = entry(link, p);
        if e.starred {
            continue;
        }
        for &p2 in &positions {
            if entry(link, p2).0 == e.star() {
                out.push((p, p2));
            }
        }
    }
    out
}

/// Visit every matching (including the empty one) exactly once.
pub fn for_each_matching<F>(link: &Link, f: &mut F) -> Result<()>
where
    F: FnMut(&Matching) -> Result<()>,
{
    let candidates = candidate_pairs(link);
    let mut used: Vec<Pos> = Vec::new();
    let mut current = Matching::default();
    fn rec<F>(
        candidates: &[(Pos, Pos)],
        idx: usize,
        used: &mut Vec<Pos>,
        current: &mut Matching,
        f: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&Matching) -> Result<()>,
    {
        if idx == candidates.len() {
            return f(current);
        }
        rec(candidates, idx + 1, used, current, f)?;
        let (p, p2) = candidates[idx];
        if !used.contains(&p) && !used.contains(&p2) {
            used.push(p);
            used.push(p2);
            current.pairs.push((p, p2));
            rec(candidates, idx + 1, used, current, f)?;
            current.pairs.pop();
            used.pop();
            used.pop();
        }
        Ok(())
    }
    rec(&candidates, 0, &mut used, &mut current, f)
}

/// Decompose the occurrences into orbits: each occurrence flows to its
/// cyclic successor, except that a matched occurrence first jumps to its
/// partner.
pub fn orbits(q: &Quiver, link: &Link, matching: &Matching) -> Orbits {
    let lens: Vec<usize> = link.knots().iter().map(|k| k.len()).collect();
    let mut partner: Vec<Vec<Option<Pos>>> = lens.iter().map(|&l| vec![None; l]).collect();
    for &(p, p2) in &matching.pairs {
        partner[p.0][p.1] = Some(p2);
        partner[p2.0][p2.1] = Some(p);
    }
    let step = |p: Pos| -> Pos {
        let q2 = partner[p.0][p.1].unwrap_or(p);
        (q2.0, (q2.1 + 1) % lens[q2.0])
    };
    let mut orbit_of: Vec<Vec<usize>> = lens.iter().map(|&l| vec![usize::MAX; l]).collect();
    let mut words: Vec<Vec<(Edge, u32)>> = Vec::new();
    let mut vertex: Vec<Option<VertexId>> = Vec::new();
    for ki in 0..lens.len() {
        for oi in 0..lens[ki] {
            if orbit_of[ki][oi] != usize::MAX {
                continue;
            }
            let id = words.len();
            let start = (ki, oi);
            let mut word: Vec<(Edge, u32)> = Vec::new();
            let mut all_matched = true;
            let mut p = start;
            loop {
                orbit_of[p.0][p.1] = id;
                if partner[p.0][p.1].is_none() {
                    word.push(entry(link, p));
                    all_matched = false;
                }
                p = step(p);
                if p == start {
                    break;
                }
            }
            // Every source along a fully matched orbit coincides, so the
            // orbit degenerates to that vertex.
            vertex.push(all_matched.then(|| q.source(entry(link, start).0)));
            words.push(word);
        }
    }
    Orbits { orbit_of, words, vertex }
}

/// The color constraints of a matching: for each pair, the orbit of the
/// higher occurrence must exceed the orbit of the lower one. `None` when a
/// pair lands in a single orbit, which no coloring satisfies.
pub(crate) fn constraints(
    link: &Link,
    matching: &Matching,
    orbs: &Orbits,
) -> Option<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for &(p, p2) in &matching.pairs {
        let (lo, hi) = if entry(link, p).1 < entry(link, p2).1 { (p, p2) } else { (p2, p) };
        let (lo, hi) = (orbs.orbit_of(lo), orbs.orbit_of(hi));
        if lo == hi {
            return None;
        }
        out.push((lo, hi));
    }
    Some(out)
}

/// Visit every `n`-coloring of the link: a matching together with
/// constraint-respecting colors for the orbits and free colors for the
/// lone vertices.
pub fn for_each_coloring<F>(q: &Quiver, link: &Link, n: u32, f: &mut F) -> Result<()>
where
    F: FnMut(&Matching, &Orbits, &[u32], &[u32]) -> Result<()>,
{
    for_each_matching(link, &mut |matching| {
        let orbs = orbits(q, link, matching);
        let Some(cons) = constraints(link, matching, &orbs) else {
            return Ok(());
        };
        let mut orbit_colors: Vec<u32> = vec![0; orbs.len()];
        let mut vertex_colors: Vec<u32> = vec![0; link.vertices().len()];
        #[allow(clippy::too_many_arguments)] // recursion state, not an API
        fn color_orbits<F>(
            k: usize,
            n: u32,
            cons: &[(usize, usize)],
            orbit_colors: &mut Vec<u32>,
            vertex_colors: &mut Vec<u32>,
            matching: &Matching,
            orbs: &Orbits,
            f: &mut F,
        ) -> Result<()>
        where
            F: FnMut(&Matching, &Orbits, &[u32], &[u32]) -> Result<()>,
        {
            if k == orbit_colors.len() {
                return color_vertices(0, n, orbit_colors, vertex_colors, matching, orbs, f);
            }
            'next: for c in 1..=n {
                orbit_colors[k] = c;
                for &(lo, hi) in cons {
                    let (cl, ch) = (orbit_colors[lo], orbit_colors[hi]);
                    if lo <= k && hi <= k && cl >= ch {
                        continue 'next;
                    }
                }
                color_orbits(k + 1, n, cons, orbit_colors, vertex_colors, matching, orbs, f)?;
            }
            orbit_colors[k] = 0;
            Ok(())
        }
        fn color_vertices<F>(
            k: usize,
            n: u32,
            orbit_colors: &mut Vec<u32>,
            vertex_colors: &mut Vec<u32>,
            matching: &Matching,
            orbs: &Orbits,
            f: &mut F,
        ) -> Result<()>
        where
            F: FnMut(&Matching, &Orbits, &[u32], &[u32]) -> Result<()>,
        {
            if k == vertex_colors.len() {
                return f(matching, orbs, orbit_colors, vertex_colors);
            }
            for c in 1..=n {
                vertex_colors[k] = c;
                color_vertices(k + 1, n, orbit_colors, vertex_colors, matching, orbs, f)?;
            }
            vertex_colors[k] = 0;
            Ok(())
        }
        color_orbits(0, n, &cons, &mut orbit_colors, &mut vertex_colors, matching, &orbs, f)
    })
}

/// Group the orbits and lone vertices by color into an ordered tuple of
/// links (heights compressed per part).
pub fn split_parts(
    q: &Quiver,
    link: &Link,
    orbs: &Orbits,
    orbit_colors: &[u32],
    vertex_colors: &[u32],
    n: u32,
) -> Result<Vec<Link>> {
    let mut parts = Vec::with_capacity(n as usize);
    for t in 1..=n {
        let mut knots: Vec<Vec<(Edge, u32)>> = Vec::new();
        let mut vertices: Vec<VertexId> = Vec::new();
        for (o, &c) in orbit_colors.iter().enumerate() {
            if c != t {
                continue;
            }
            match orbs.vertex[o] {
                Some(v) => vertices.push(v),
                None => knots.push(orbs.words[o].clone()),
            }
        }
        for (i, &c) in vertex_colors.iter().enumerate() {
            if c == t {
                vertices.push(link.vertices()[i]);
            }
        }
        parts.push(Link::new(q, knots, vertices)?);
    }
    Ok(parts)
}

/// The weight of a coloring. With `p` pairs, sign `(-1)^{c_-}` (one minus
/// per pair whose unstarred occurrence sits above its partner), and
/// `norm = #components(X) - Σ #components(part)`, the weight is
/// `± h^{(p+norm)/2} ħ^{(p-norm)/2}`; both exponents must come out as
/// non-negative integers.
pub fn coloring_weight(
    link: &Link,
    matching: &Matching,
    parts: &[Link],
    params: &EngineParams,
) -> Result<Poly2> {
    let p = matching.pairs.len() as i64;
    let c_minus = matching
        .pairs
        .iter()
        .filter(|&&(pu, ps)| entry(link, pu).1 > entry(link, ps).1)
        .count();
    let norm = link.n_components() as i64
        - parts.iter().map(|l| l.n_components() as i64).sum::<i64>();
    let (num_h, num_hb) = (p + norm, p - norm);
    if num_h < 0 || num_hb < 0 || num_h % 2 != 0 || num_hb % 2 != 0 {
        return Err(Error::Invariant(format!(
            "coloring weight exponents ({num_h}/2, {num_hb}/2) are not non-negative integers"
        )));
    }
    let sign = if c_minus % 2 == 0 { 1 } else { -1 };
    Ok(params
        .join_scale
        .pow((num_h / 2) as u32)
        * params.split_scale.pow((num_hb / 2) as u32)
        .mul_rat(&rat_int(sign)))
}

/// Number of `n`-colorings of one link.
pub fn count_colorings(q: &Quiver, link: &Link, n: u32) -> Result<usize> {
    let mut count = 0usize;
    for_each_coloring(q, link, n, &mut |_, _, _, _| {
        count += 1;
        Ok(())
    })?;
    Ok(count)
}

/// The `n`-fold coproduct with explicit engine parameters (the parameters
/// scale the weights and normalize the parts).
pub fn coproduct_with(
    q: &Quiver,
    x: &LinComb<Link>,
    n: u32,
    params: &EngineParams,
) -> Result<LinComb<Vec<Link>>> {
    let mut out: LinComb<Vec<Link>> = LinComb::zero();
    for (link, coeff) in x.iter() {
        for_each_coloring(q, link, n, &mut |matching, orbs, ocols, vcols| {
            let parts = split_parts(q, link, orbs, ocols, vcols, n)?;
            let weight = coloring_weight(link, matching, &parts, params)?;
            let mut acc: Vec<(Vec<Link>, Poly2)> = vec![(Vec::new(), coeff * &weight)];
            for part in &parts {
                let normalized: NElement =
                    normalize_with(q, &LinComb::from_basis(part.clone()), params, None)?;
                let mut next = Vec::new();
                for (prefix, c) in &acc {
                    for (l, cl) in normalized.iter() {
                        let mut slots = prefix.clone();
                        slots.push(l.clone());
                        next.push((slots, c * cl));
                    }
                }
                acc = next;
            }
            for (slots, c) in acc {
                out.add_term(slots, c);
            }
            Ok(())
        })?;
    }
    Ok(out)
}

/// The `n`-fold coproduct (`n = 2` is the comultiplication itself); every
/// slot of every term is in standard height form.
pub fn coproduct(q: &Quiver, x: &LinComb<Link>, n: u32) -> Result<LinComb<Vec<Link>>> {
    coproduct_with(q, x, n, &EngineParams::default())
}

/// The comultiplication as a combination of pairs.
pub fn coproduct2(q: &Quiver, x: &LinComb<Link>) -> Result<LinComb<(Link, Link)>> {
    coproduct(q, x, 2)?.try_map_basis(|slots| {
        let [a, b]: [Link; 2] = slots
            .clone()
            .try_into()
            .map_err(|_| Error::Invariant("two-fold coproduct arity".to_string()))?;
        Ok(LinComb::from_basis((a, b)))
    })
}
