//! Height-labeled links and the two-parameter algebra they span.
//!
//! A link is a disjoint union of knots — cyclic words of composable edges,
//! each occurrence carrying a distinct height — plus lone vertices. Links
//! are identified up to order-preserving relabeling of heights, so
//! construction always compresses heights to `1..N`.
//!
//! Two rewrite rules exchange adjacent heights `t, t+1`:
//!
//! * different components: `X = X' + h·⟨e_low, e_up⟩·X_join`, where the join
//!   deletes the two paired occurrences and splices the remainders (arc
//!   after the lower edge, then arc after the upper edge) into one knot;
//! * same component: `X = X' + ħ·⟨e_low, e_up⟩·X_split`, where the split
//!   cuts the knot at the two occurrences into the arc after the upper edge
//!   and the arc after the lower edge.
//!
//! An empty remainder degenerates to a lone vertex (the source of the
//! deleted lower edge for the first arc, of the upper edge for the second).
//!
//! `normalize` rewrites any combination of links into the canonical span:
//! components sorted, each knot starting at the canonical rotation of its
//! word, heights increasing in reading order. Each link bubbles its heights
//! toward that target by adjacent exchanges (each one strictly reducing the
//! inversion count), and every correction term has two fewer edges, so the
//! recursion terminates. Whether the resulting normal forms are genuinely
//! free coordinates is tested empirically: the schedule of exchanges is
//! arbitrary, and the confluence suite checks many random schedules agree.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lexer::{Cursor, Tok};
use crate::necklace::{canonical_rotation, parse_coefficient_prefix, Necklace};
use crate::quiver::{Edge, Quiver, VertexId};
use crate::scalars::{LinComb, Poly2};
use crate::{Error, Result};

/// One knot: a cyclic word of (edge, height) entries, stored starting at
/// its minimum height.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Knot {
    entries: Vec<(Edge, u32)>,
}

impl Knot {
    fn new(entries: Vec<(Edge, u32)>) -> Self {
        let min_at = entries
            .iter()
            .enumerate()
            .min_by_key(|(_, &(_, h))| h)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let n = entries.len();
        let rotated = (0..n).map(|i| entries[(min_at + i) % n]).collect();
        Knot { entries: rotated }
    }

    pub fn entries(&self) -> &[(Edge, u32)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The underlying edge word in stored order.
    pub fn word(&self) -> Vec<Edge> {
        self.entries.iter().map(|&(e, _)| e).collect()
    }

    /// The underlying necklace (canonical rotation of the word).
    pub fn necklace(&self, q: &Quiver) -> Result<Necklace> {
        Necklace::cycle(q, self.word())
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.entries
            .iter()
            .map(|&(e, h)| format!("({},{h})", q.edge_name(e)))
            .collect::<String>()
    }
}

/// A height-labeled link: knots plus lone vertices, heights `1..N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    knots: Vec<Knot>,
    vertices: Vec<VertexId>,
}

impl Link {
    /// The empty link (the unit of the algebra).
    pub fn empty() -> Self {
        Link { knots: Vec::new(), vertices: Vec::new() }
    }

    /// A single lone vertex.
    pub fn vertex(v: VertexId) -> Self {
        Link { knots: Vec::new(), vertices: vec![v] }
    }

    /// Build from raw knot words and vertices: validates composability and
    /// height distinctness, compresses heights to `1..N`, and sorts the
    /// components into canonical storage order.
    pub fn new(
        q: &Quiver,
        raw_knots: Vec<Vec<(Edge, u32)>>,
        mut vertices: Vec<VertexId>,
    ) -> Result<Self> {
        let mut heights: Vec<u32> = Vec::new();
        for entries in &raw_knots {
            if entries.is_empty() {
                return Err(Error::Invariant("empty knot".to_string()));
            }
            let n = entries.len();
            for i in 0..n {
                let (e, h) = entries[i];
                let (f, _) = entries[(i + 1) % n];
                if q.target(e) != q.source(f) {
                    return Err(Error::NotComposable(format!(
                        "`{}` does not compose into `{}` in a knot",
                        q.edge_name(e),
                        q.edge_name(f)
                    )));
                }
                heights.push(h);
            }
        }
        let mut sorted = heights.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != heights.len() {
            return Err(Error::BadHeights("duplicate height label".to_string()));
        }
        // Compress heights to 1..N preserving relative order.
        let rank = |h: u32| -> u32 {
            (sorted.binary_search(&h).unwrap() + 1) as u32
        };
        let mut knots: Vec<Knot> = raw_knots
            .into_iter()
            .map(|entries| {
                Knot::new(entries.into_iter().map(|(e, h)| (e, rank(h))).collect())
            })
            .collect();
        knots.sort();
        vertices.sort_unstable();
        Ok(Link { knots, vertices })
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Total number of edge occurrences (= the top height).
    pub fn n_positions(&self) -> usize {
        self.knots.iter().map(|k| k.len()).sum()
    }

    /// Number of components, knots and lone vertices each counting one.
    pub fn n_components(&self) -> usize {
        self.knots.len() + self.vertices.len()
    }

    pub fn is_unit(&self) -> bool {
        self.knots.is_empty() && self.vertices.is_empty()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = self.knots.iter().map(|k| k.display(q)).collect();
        parts.extend(self.vertices.iter().map(|&v| format!("[{}]", q.vertex_name(v))));
        parts.join(" & ")
    }
}

/// Linear combination of links; the normal-form constructors keep every
/// key in standard height form.
pub type NElement = LinComb<Link>;
/// Element of the tensor square of the link span.
pub type NPair = LinComb<(Link, Link)>;

/// Scalars attached to the two rewrite rules. The defaults are the formal
/// parameters; specializing them runs the engine in a quotient (for
/// example `h = 1` gives the one-parameter specialization).
#[derive(Clone, Debug)]
pub struct EngineParams {
    /// Multiplier for a different-component (join) correction.
    pub join_scale: Poly2,
    /// Multiplier for a same-component (split) correction.
    pub split_scale: Poly2,
}

impl Default for EngineParams {
    fn default() -> Self {
        EngineParams { join_scale: Poly2::h(), split_scale: Poly2::hbar() }
    }
}

/// Per-knot target heights realizing the standard form of `link`:
/// components sorted by (underlying necklace, current minimum height),
/// each knot's heights consecutive and increasing from the canonical
/// rotation start of its word.
fn standard_target(q: &Quiver, link: &Link) -> Result<Vec<Vec<u32>>> {
    let mut order: Vec<usize> = (0..link.knots.len()).collect();
    let keys: Vec<(Necklace, u32)> = link
        .knots
        .iter()
        .map(|k| Ok((k.necklace(q)?, k.entries()[0].1)))
        .collect::<Result<_>>()?;
    order.sort_by(|&i, &j| keys[i].cmp(&keys[j]));

    let mut target: Vec<Vec<u32>> = link.knots.iter().map(|k| vec![0; k.len()]).collect();
    let mut base: u32 = 0;
    for &ki in &order {
        let knot = &link.knots[ki];
        let word = knot.word();
        let canon = canonical_rotation(&word);
        let k = word.len();
        let start = (0..k)
            .find(|&s| (0..k).all(|t| word[(s + t) % k] == canon[t]))
            .expect("canonical rotation is a rotation");
        for t in 0..k {
            target[ki][(start + t) % k] = base + t as u32 + 1;
        }
        base += k as u32;
    }
    Ok(target)
}

/// True when `link` is in standard height form.
pub fn is_standard(q: &Quiver, link: &Link) -> Result<bool> {
    let target = standard_target(q, link)?;
    for (ki, knot) in link.knots.iter().enumerate() {
        for (oi, &(_, h)) in knot.entries().iter().enumerate() {
            if h != target[ki][oi] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Mutable working state for one bubble phase.
struct Working {
    knots: Vec<Vec<(Edge, u32)>>,
    vertices: Vec<VertexId>,
}

impl Working {
    /// Knot entries cyclically from `start+1`, `count` of them, dropping
    /// nothing else; heights ride along.
    fn arc(&self, ki: usize, after: usize, count: usize) -> Vec<(Edge, u32)> {
        let knot = &self.knots[ki];
        let n = knot.len();
        (1..=count).map(|i| knot[(after + i) % n]).collect()
    }

    /// The correction link for exchanging heights at the two positions,
    /// with the paired occurrences deleted. `low`/`up` carry the lower and
    /// upper height respectively.
    fn correction(
        &self,
        q: &Quiver,
        low: (usize, usize),
        up: (usize, usize),
    ) -> Result<Link> {
        let (ci, oi) = low;
        let (cj, oj) = up;
        let mut knots: Vec<Vec<(Edge, u32)>> = Vec::new();
        let mut vertices = self.vertices.clone();
        if ci != cj {
            // Join: arc after the lower edge, then arc after the upper edge.
            let mut joined = self.arc(ci, oi, self.knots[ci].len() - 1);
            joined.extend(self.arc(cj, oj, self.knots[cj].len() - 1));
            for (k, knot) in self.knots.iter().enumerate() {
                if k != ci && k != cj {
                    knots.push(knot.clone());
                }
            }
            if joined.is_empty() {
                vertices.push(q.source(self.knots[ci][oi].0));
            } else {
                knots.push(joined);
            }
        } else {
            // Split: arc after the upper edge, and arc after the lower edge.
            let k = self.knots[ci].len();
            let first = self.arc(ci, oj, (oi + k - oj - 1) % k);
            let second = self.arc(ci, oi, (oj + k - oi - 1) % k);
            for (kk, knot) in self.knots.iter().enumerate() {
                if kk != ci {
                    knots.push(knot.clone());
                }
            }
            if first.is_empty() {
                vertices.push(q.source(self.knots[ci][oi].0));
            } else {
                knots.push(first);
            }
            if second.is_empty() {
                vertices.push(q.source(self.knots[ci][oj].0));
            } else {
                knots.push(second);
            }
        }
        Link::new(q, knots, vertices)
    }
}

/// Bubble one link to its standard form against a fixed target, emitting
/// correction terms along the way.
fn bubble_phase(
    q: &Quiver,
    link: &Link,
    params: &EngineParams,
    rng: &mut Option<&mut ChaCha8Rng>,
) -> Result<(Link, Vec<(Poly2, Link)>)> {
    let target = standard_target(q, link)?;
    let n = link.n_positions();
    let mut w = Working {
        knots: link.knots.iter().map(|k| k.entries().to_vec()).collect(),
        vertices: link.vertices.clone(),
    };
    // pos[t] = position carrying height t+1; pi[t] = its target height.
    let mut pos: Vec<(usize, usize)> = vec![(0, 0); n];
    let mut pi: Vec<u32> = vec![0; n];
    for (ki, knot) in w.knots.iter().enumerate() {
        for (oi, &(_, h)) in knot.iter().enumerate() {
            pos[(h - 1) as usize] = (ki, oi);
            pi[(h - 1) as usize] = target[ki][oi];
        }
    }
    let mut corrections: Vec<(Poly2, Link)> = Vec::new();
    loop {
        let eligible: Vec<usize> = (0..n.saturating_sub(1))
            .filter(|&t| pi[t] > pi[t + 1])
            .collect();
        let Some(&t) = (match rng {
            Some(r) => {
                if eligible.is_empty() {
                    None
                } else {
                    eligible.get(r.gen_range(0..eligible.len()))
                }
            }
            None => eligible.first(),
        }) else {
            break;
        };
        let low = pos[t];
        let up = pos[t + 1];
        let e_low = w.knots[low.0][low.1].0;
        let e_up = w.knots[up.0][up.1].0;
        let s = q.pairing(e_low, e_up);
        if s != 0 {
            let scale = if low.0 == up.0 { &params.split_scale } else { &params.join_scale };
            let corr = w.correction(q, low, up)?;
            corrections.push((scale.mul_rat(&crate::scalars::rat_int(s)), corr));
        }
        w.knots[low.0][low.1].1 = (t + 2) as u32;
        w.knots[up.0][up.1].1 = (t + 1) as u32;
        pos.swap(t, t + 1);
        pi.swap(t, t + 1);
    }
    let standard = Link::new(q, w.knots, w.vertices)?;
    debug_assert!(is_standard(q, &standard)?);
    Ok((standard, corrections))
}

/// Normalize a combination of links with explicit engine parameters and an
/// optional random exchange schedule.
pub fn normalize_with(
    q: &Quiver,
    x: &LinComb<Link>,
    params: &EngineParams,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<NElement> {
    let mut out: NElement = LinComb::zero();
    let mut worklist: Vec<(Poly2, Link)> =
        x.iter().map(|(l, c)| (c.clone(), l.clone())).collect();
    while let Some((coeff, link)) = worklist.pop() {
        if coeff.is_zero() {
            continue;
        }
        let (standard, corrections) = bubble_phase(q, &link, params, &mut rng)?;
        out.add_term(standard, coeff.clone());
        for (scale, corr) in corrections {
            debug_assert!(corr.n_positions() + 2 == link.n_positions());
            worklist.push((&coeff * &scale, corr));
        }
    }
    Ok(out)
}

/// Normalize into the standard height span.
pub fn normalize(q: &Quiver, x: &LinComb<Link>) -> Result<NElement> {
    normalize_with(q, x, &EngineParams::default(), None)
}

/// Stack `y` above `x` (shift all of `y`'s heights past `x`'s), without
/// normalizing.
pub fn link_product_raw(q: &Quiver, x: &Link, y: &Link) -> Result<Link> {
    let shift = x.n_positions() as u32;
    let mut knots: Vec<Vec<(Edge, u32)>> =
        x.knots.iter().map(|k| k.entries().to_vec()).collect();
    knots.extend(y.knots.iter().map(|k| {
        k.entries().iter().map(|&(e, h)| (e, h + shift)).collect::<Vec<_>>()
    }));
    let mut vertices = x.vertices.clone();
    vertices.extend(y.vertices.iter().copied());
    Link::new(q, knots, vertices)
}

/// Product on the link algebra with explicit engine parameters.
pub fn n_product_with(
    q: &Quiver,
    x: &LinComb<Link>,
    y: &LinComb<Link>,
    params: &EngineParams,
) -> Result<NElement> {
    let mut raw: LinComb<Link> = LinComb::zero();
    for (lx, cx) in x.iter() {
        for (ly, cy) in y.iter() {
            raw.add_term(link_product_raw(q, lx, ly)?, cx * cy);
        }
    }
    normalize_with(q, &raw, params, None)
}

/// Product on the link algebra: stack, then normalize.
pub fn n_product(q: &Quiver, x: &LinComb<Link>, y: &LinComb<Link>) -> Result<NElement> {
    n_product_with(q, x, y, &EngineParams::default())
}

/// Kill every coefficient term involving `hbar` (the normal form is kept).
pub fn reduce_mod_hbar(x: &NElement) -> NElement {
    x.map_coeff(|c| c.set_hbar_zero())
}

/// Parse a linear combination of links: terms like
/// `(a,1)(a*,2) & [v1]`, the unit `1`, with optional coefficient prefixes.
pub fn parse_nelement_raw(q: &Quiver, input: &str) -> Result<LinComb<Link>> {
    let mut cur = Cursor::lex(input)?;
    let mut out = LinComb::zero();
    let mut negate = cur.eat(&Tok::Minus);
    loop {
        let coeff = parse_coefficient_prefix(&mut cur)?;
        let link = parse_link_body(q, &mut cur)?;
        let coeff = if negate { -coeff } else { coeff };
        out.add_term(link, coeff);
        if cur.eat(&Tok::Plus) {
            negate = false;
        } else if cur.eat(&Tok::Minus) {
            negate = true;
        } else {
            break;
        }
    }
    cur.expect_end()?;
    Ok(out)
}

/// Parse the components of one link; no components at all is the unit.
fn parse_link_body(q: &Quiver, cur: &mut Cursor) -> Result<Link> {
    let mut knots: Vec<Vec<(Edge, u32)>> = Vec::new();
    let mut vertices: Vec<VertexId> = Vec::new();
    if !matches!(cur.peek(), Some(Tok::LParen) | Some(Tok::LBracket)) {
        // Bare coefficient: the unit link.
        return Ok(Link::empty());
    }
    loop {
        match cur.peek() {
            Some(Tok::LParen) => {
                let mut entries: Vec<(Edge, u32)> = Vec::new();
                while cur.eat(&Tok::LParen) {
                    let e = q.parse_edge_token(cur)?;
                    cur.expect(&Tok::Comma, "`,` between edge and height")?;
                    let h = match cur.next() {
                        Some(Tok::Int(n)) => u32::try_from(n.clone()).map_err(|_| {
                            Error::Parse(format!("height {n} out of range"))
                        })?,
                        other => {
                            return Err(Error::Parse(format!(
                                "expected a height, found {other:?}"
                            )))
                        }
                    };
                    if h == 0 {
                        return Err(Error::BadHeights("heights start at 1".to_string()));
                    }
                    cur.expect(&Tok::RParen, "`)` closing an entry")?;
                    entries.push((e, h));
                }
                knots.push(entries);
            }
            Some(Tok::LBracket) => {
                cur.next();
                let v = match cur.next() {
                    Some(Tok::Ident(name)) => q.vertex_id(&name)?,
                    other => {
                        return Err(Error::Parse(format!(
                            "expected a vertex name, found {other:?}"
                        )))
                    }
                };
                cur.expect(&Tok::RBracket, "`]` closing a vertex")?;
                vertices.push(v);
            }
            _ => {
                return Err(Error::Parse(format!(
                    "expected a link component, found {}",
                    cur.describe_here()
                )))
            }
        }
        if !cur.eat(&Tok::Amp) {
            break;
        }
    }
    Link::new(q, knots, vertices)
}

/// Parse and normalize.
pub fn parse_nelement(q: &Quiver, input: &str) -> Result<NElement> {
    normalize(q, &parse_nelement_raw(q, input)?)
}

/// Render a combination of links.
pub fn nelement_to_string(q: &Quiver, x: &LinComb<Link>) -> String {
    x.display_with(|l| l.display(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::framed_jordan;

    fn link(q: &Quiver, s: &str) -> Link {
        let l = parse_nelement_raw(q, s).unwrap();
        assert_eq!(l.len(), 1);
        let (link, c) = l.iter().next().unwrap();
        assert!(c.is_one());
        link.clone()
    }

    #[test]
    fn construction_compresses_and_sorts() {
        let q = framed_jordan();
        assert_eq!(link(&q, "(a,5)(a*,9)"), link(&q, "(a,1)(a*,2)"));
        assert_eq!(
            link(&q, "(b*,3)(b,4) & (a,1)(a*,2)"),
            link(&q, "(a,1)(a*,2) & (b*,3)(b,4)")
        );
        assert_eq!(link(&q, "[v2] & [v1]"), link(&q, "[v1] & [v2]"));
    }

    #[test]
    fn construction_rejects_bad_links() {
        let q = framed_jordan();
        assert!(parse_nelement_raw(&q, "(a,1)(a*,1)").is_err());
        assert!(parse_nelement_raw(&q, "(a,1)(b,2)").is_err());
        assert!(parse_nelement_raw(&q, "(b,1)").is_err());
        assert!(parse_nelement_raw(&q, "(a,0)(a*,1)").is_err());
    }

    #[test]
    fn parse_display_round_trip() {
        let q = framed_jordan();
        for s in [
            "(a,1)(a*,2)",
            "(a,1)(a*,2) & (b*,3)(b,4)",
            "(a,1)(a*,2) & [v1]",
            "1",
            "2 * (a,1)(a*,2) - hbar * [v1] & [v1]",
            "(1 + h) * 1",
            "(b*,1)(b,2)(a*,3)(a*,4)",
        ] {
            let x = parse_nelement_raw(&q, s).unwrap();
            let printed = nelement_to_string(&q, &x);
            assert_eq!(parse_nelement_raw(&q, &printed).unwrap(), x, "via `{printed}`");
        }
    }

    #[test]
    fn standardness_detection() {
        let q = framed_jordan();
        assert!(is_standard(&q, &link(&q, "(a,1)(a*,2)")).unwrap());
        assert!(is_standard(&q, &Link::empty()).unwrap());
        assert!(is_standard(&q, &link(&q, "[v1] & [v2]")).unwrap());
        // Stored word starts at a*, but the canonical rotation starts at a.
        assert!(!is_standard(&q, &link(&q, "(a,2)(a*,1)")).unwrap());
        // Blocks must follow the component order (shorter necklace first).
        assert!(!is_standard(&q, &link(&q, "(a,3)(a*,4) & (b,1)(b*,2)")).unwrap());
        assert!(is_standard(&q, &link(&q, "(a,1)(a*,2) & (b,3)(b*,4)")).unwrap());
        // The lone two-cycle reads `b b*` canonically, not `b* b`.
        assert!(!is_standard(&q, &link(&q, "(a,1)(a*,2) & (b*,3)(b,4)")).unwrap());
    }

    /// Frozen rewrite: `(a*,1)(a,2) = (a,1)(a*,2) − ħ·([v1] & [v1])`.
    #[test]
    fn normalize_two_cycle_split() {
        let q = framed_jordan();
        let x = parse_nelement_raw(&q, "(a,2)(a*,1)").unwrap();
        let got = normalize(&q, &x).unwrap();
        let want =
            parse_nelement_raw(&q, "(a,1)(a*,2) - hbar * [v1] & [v1]").unwrap();
        assert_eq!(got, want);
    }

    /// Frozen rewrite: rotating the framed 4-cycle to its canonical start
    /// needs only exchanges with zero pairing, so no corrections appear.
    #[test]
    fn normalize_framed_cycle_is_free() {
        let q = framed_jordan();
        let y = parse_nelement_raw(&q, "(b*,1)(b,2)(a*,3)(a*,4)").unwrap();
        let got = normalize(&q, &y).unwrap();
        let want = parse_nelement_raw(&q, "(a*,1)(a*,2)(b*,3)(b,4)").unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn normalize_is_idempotent_and_linear() {
        let q = framed_jordan();
        let x = parse_nelement_raw(&q, "(a,2)(a*,1) & (b*,3)(b,4) - 2 * (a,1)(a*,2)")
            .unwrap();
        let once = normalize(&q, &x).unwrap();
        let twice = normalize(&q, &once).unwrap();
        assert_eq!(once, twice);
        for (l, _) in once.iter() {
            assert!(is_standard(&q, l).unwrap());
        }
    }

    #[test]
    fn unit_is_neutral_for_the_product() {
        let q = framed_jordan();
        let x = parse_nelement(&q, "(a,1)(a*,2) & [v2]").unwrap();
        let unit = parse_nelement(&q, "1").unwrap();
        assert_eq!(n_product(&q, &x, &unit).unwrap(), x);
        assert_eq!(n_product(&q, &unit, &x).unwrap(), x);
    }

    #[test]
    fn product_stacks_heights() {
        let q = framed_jordan();
        let v = parse_nelement(&q, "[v1]").unwrap();
        let x = parse_nelement(&q, "(a,1)(a*,2)").unwrap();
        let got = n_product(&q, &v, &x).unwrap();
        assert_eq!(got, parse_nelement(&q, "(a,1)(a*,2) & [v1]").unwrap());
    }

    /// The product of the two-cycle with itself: the cross-component
    /// corrections of stacking appear with `h`.
    #[test]
    fn product_of_loop_with_itself() {
        let q = framed_jordan();
        let x = parse_nelement(&q, "(a,1)(a*,2)").unwrap();
        let got = n_product(&q, &x, &x).unwrap();
        // x*x is symmetric, so its commutator vanishes; sanity-check shape:
        // the standard two-component stack plus corrections.
        let back = n_product(&q, &x, &x).unwrap();
        assert_eq!(got, back);
        let top = link(&q, "(a,1)(a*,2) & (a,3)(a*,4)");
        assert!(!got.coeff_of(&top).is_zero());
    }

    #[test]
    fn random_schedules_agree_on_small_cases() {
        let q = framed_jordan();
        let samples = [
            "(a,2)(a*,1)",
            "(a,4)(a*,1)(a,2)(a*,3)",
            "(b*,4)(b,1)(a*,3)(a*,2)",
            "(a,3)(a*,6)(a,5)(a*,2) & (b*,4)(b,1)",
        ];
        for s in samples {
            let x = parse_nelement_raw(&q, s).unwrap();
            let reference = normalize(&q, &x).unwrap();
            for seed in 0..25u64 {
                let mut rng = crate::sampling::rng(seed);
                let got =
                    normalize_with(&q, &x, &EngineParams::default(), Some(&mut rng))
                        .unwrap();
                assert_eq!(got, reference, "schedule seed {seed} diverged on {s}");
            }
        }
    }

    #[test]
    fn reduce_mod_hbar_drops_split_corrections() {
        let q = framed_jordan();
        let x = parse_nelement_raw(&q, "(a,2)(a*,1)").unwrap();
        let reduced = reduce_mod_hbar(&normalize(&q, &x).unwrap());
        assert_eq!(reduced, parse_nelement(&q, "(a,1)(a*,2)").unwrap());
    }
}
