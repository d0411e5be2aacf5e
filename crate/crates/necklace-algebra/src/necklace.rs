//! Necklaces — cyclic words of composable edges in the double quiver — and
//! the Lie bialgebra they span.
//!
//! A necklace is stored in its canonical rotation (the lexicographically
//! least one under the edge order), so structural equality is equality of
//! cyclic words. Lone vertices count as necklaces of length zero.
//!
//! The bracket pairs one edge occurrence of each operand and splices the
//! remainders into one cycle; the cobracket pairs two occurrences inside a
//! single necklace and cuts it into two. An arc that comes up empty
//! degenerates to the vertex the splice rests at. Both operations extend to
//! the symmetric algebra: the bracket by the Leibniz rule, the cobracket by
//! the coproduct-Leibniz rule, giving the classical bi-Poisson structure.

use std::cmp::Ordering;

use crate::lexer::{Cursor, Tok};
use crate::quiver::{Edge, Quiver, VertexId};
use crate::scalars::{LinComb, Poly2};
use crate::{Error, Result};

/// A cyclic word of composable edges, or a lone vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Necklace {
    Vertex(VertexId),
    /// Nonempty cyclic word, stored in its canonical rotation.
    Cycle(Vec<Edge>),
}

impl Necklace {
    pub fn vertex(v: VertexId) -> Self {
        Necklace::Vertex(v)
    }

    /// Build a cyclic word, checking composability and canonicalizing the
    /// rotation.
    pub fn cycle(q: &Quiver, edges: Vec<Edge>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::NotComposable("empty cyclic word".to_string()));
        }
        let n = edges.len();
        for i in 0..n {
            let e = edges[i];
            let f = edges[(i + 1) % n];
            if q.target(e) != q.source(f) {
                return Err(Error::NotComposable(format!(
                    "`{}` does not compose into `{}`",
                    q.edge_name(e),
                    q.edge_name(f)
                )));
            }
        }
        Ok(Necklace::Cycle(canonical_rotation(&edges)))
    }

    /// Number of edges (zero for a vertex). There is no `is_empty`: a
    /// vertex is a perfectly good necklace, not an empty one.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            Necklace::Vertex(_) => 0,
            Necklace::Cycle(edges) => edges.len(),
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, Necklace::Vertex(_))
    }

    /// Render using the quiver's edge and vertex names.
    pub fn display(&self, q: &Quiver) -> String {
        match self {
            Necklace::Vertex(v) => format!("[{}]", q.vertex_name(*v)),
            Necklace::Cycle(edges) => edges
                .iter()
                .map(|&e| q.edge_name(e))
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

/// Necklaces are ordered by length first (vertices, having length zero,
/// come before all cycles), then lexicographically. This is also the
/// ordering the enveloping algebra sorts words by.
impl Ord for Necklace {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Necklace::Vertex(v), Necklace::Vertex(w)) => v.cmp(w),
            (Necklace::Vertex(_), Necklace::Cycle(_)) => Ordering::Less,
            (Necklace::Cycle(_), Necklace::Vertex(_)) => Ordering::Greater,
            (Necklace::Cycle(u), Necklace::Cycle(w)) => {
                u.len().cmp(&w.len()).then_with(|| u.cmp(w))
            }
        }
    }
}

impl PartialOrd for Necklace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographically least rotation of a nonempty edge word.
pub(crate) fn canonical_rotation(edges: &[Edge]) -> Vec<Edge> {
    let n = edges.len();
    let mut best: Option<Vec<Edge>> = None;
    for s in 0..n {
        let rot: Vec<Edge> = (0..n).map(|i| edges[(s + i) % n]).collect();
        if best.as_ref().map(|b| rot < *b).unwrap_or(true) {
            best = Some(rot);
        }
    }
    best.unwrap()
}

/// `count` edges starting at index `start`, read cyclically.
fn arc(edges: &[Edge], start: usize, count: usize) -> Vec<Edge> {
    let n = edges.len();
    (0..count).map(|i| edges[(start + i) % n]).collect()
}

/// Linear combination of necklaces.
pub type LElement = LinComb<Necklace>;
/// Element of the tensor square of the necklace span.
pub type LPair = LinComb<(Necklace, Necklace)>;

/// The necklace Lie bracket of two basis necklaces.
///
/// For every pair of edge occurrences with nonzero pairing, the two cyclic
/// words are cut open at the paired occurrences, the paired edges deleted,
/// and the remainders concatenated into one cycle; if both remainders are
/// empty the result is the vertex the splice rests at.
pub fn bracket(q: &Quiver, x: &Necklace, y: &Necklace) -> Result<LElement> {
    let (xs, ys) = match (x, y) {
        (Necklace::Cycle(xs), Necklace::Cycle(ys)) => (xs, ys),
        _ => return Ok(LinComb::zero()),
    };
    let (k, l) = (xs.len(), ys.len());
    let mut out = LinComb::zero();
    for i in 0..k {
        for j in 0..l {
            let s = q.pairing(xs[i], ys[j]);
            if s == 0 {
                continue;
            }
            let mut spliced = arc(xs, (i + 1) % k, k - 1);
            spliced.extend(arc(ys, (j + 1) % l, l - 1));
            let neck = if spliced.is_empty() {
                Necklace::vertex(q.target(xs[i]))
            } else {
                Necklace::cycle(q, spliced)?
            };
            out.add_term(neck, Poly2::int(s));
        }
    }
    Ok(out)
}

/// The bracket, extended bilinearly.
pub fn bracket_lin(q: &Quiver, x: &LElement, y: &LElement) -> Result<LElement> {
    let mut out = LinComb::zero();
    for (nx, cx) in x.iter() {
        for (ny, cy) in y.iter() {
            for (n, c) in bracket(q, nx, ny)?.into_terms() {
                out.add_term(n, cx * cy * c);
            }
        }
    }
    Ok(out)
}

/// The necklace cobracket of a basis necklace.
///
/// Every internal pair of occurrences with nonzero pairing cuts the cycle
/// into the two arcs between them; each arc closes into a necklace (or
/// degenerates to the vertex at the cut), and the two factors enter
/// antisymmetrized: `P ∧ Q = P ⊗ Q − Q ⊗ P`.
pub fn cobracket(q: &Quiver, x: &Necklace) -> Result<LPair> {
    let xs = match x {
        Necklace::Cycle(xs) => xs,
        Necklace::Vertex(_) => return Ok(LinComb::zero()),
    };
    let k = xs.len();
    let mut out = LinComb::zero();
    for i in 0..k {
        for j in (i + 1)..k {
            let s = q.pairing(xs[i], xs[j]);
            if s == 0 {
                continue;
            }
            // Arc from after position j wrapping around to before i.
            let long = arc(xs, (j + 1) % k, k - 1 - (j - i));
            let first = if long.is_empty() {
                Necklace::vertex(q.target(xs[j]))
            } else {
                Necklace::cycle(q, long)?
            };
            // Arc strictly between i and j.
            let short = arc(xs, i + 1, j - i - 1);
            let second = if short.is_empty() {
                Necklace::vertex(q.target(xs[i]))
            } else {
                Necklace::cycle(q, short)?
            };
            let c = Poly2::int(s);
            out.add_term((first.clone(), second.clone()), c.clone());
            out.add_term((second, first), -c);
        }
    }
    Ok(out)
}

/// The cobracket, extended linearly.
pub fn cobracket_lin(q: &Quiver, x: &LElement) -> Result<LPair> {
    x.try_map_basis(|n| cobracket(q, n))
}

/// Commutative monomial: a multiset of necklaces, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymMonomial(Vec<Necklace>);

impl SymMonomial {
    /// The empty monomial (the unit of the symmetric algebra).
    pub fn one() -> Self {
        SymMonomial(Vec::new())
    }

    pub fn new(mut factors: Vec<Necklace>) -> Self {
        factors.sort();
        SymMonomial(factors)
    }

    pub fn single(n: Necklace) -> Self {
        SymMonomial(vec![n])
    }

    pub fn factors(&self) -> &[Necklace] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.0.clone();
        factors.extend(other.0.iter().cloned());
        SymMonomial::new(factors)
    }

    /// The monomial with the factor at `i` removed.
    fn without(&self, i: usize) -> Self {
        let mut factors = self.0.clone();
        factors.remove(i);
        SymMonomial(factors)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|n| n.display(q))
            .collect::<Vec<_>>()
            .join(" · ")
    }
}

/// Element of the symmetric algebra on necklaces.
pub type SymElement = LinComb<SymMonomial>;
/// Element of its tensor square.
pub type SymPair = LinComb<(SymMonomial, SymMonomial)>;

/// Product on the symmetric algebra.
pub fn sym_product(x: &SymElement, y: &SymElement) -> SymElement {
    let mut out = LinComb::zero();
    for (mx, cx) in x.iter() {
        for (my, cy) in y.iter() {
            out.add_term(mx.mul(my), cx * cy);
        }
    }
    out
}

/// Poisson bracket on the symmetric algebra, by the Leibniz rule in both
/// arguments.
pub fn sym_bracket(q: &Quiver, x: &SymElement, y: &SymElement) -> Result<SymElement> {
    let mut out = LinComb::zero();
    for (mx, cx) in x.iter() {
        for (my, cy) in y.iter() {
            for i in 0..mx.degree() {
                for j in 0..my.degree() {
                    let inner = bracket(q, &mx.factors()[i], &my.factors()[j])?;
                    let rest = mx.without(i).mul(&my.without(j));
                    for (n, c) in inner.into_terms() {
                        out.add_term(rest.mul(&SymMonomial::single(n)), cx * cy * c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Coproduct on the symmetric algebra: necklaces are primitive, and the
/// coproduct is multiplicative, so a monomial sums over subset splits.
pub fn sym_delta(x: &SymElement) -> SymPair {
    x.map_basis(|m| {
        let d = m.degree();
        let mut out = LinComb::zero();
        for mask in 0u32..(1 << d) {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (i, n) in m.factors().iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(n.clone());
                } else {
                    right.push(n.clone());
                }
            }
            out.add_term(
                (SymMonomial::new(left), SymMonomial::new(right)),
                Poly2::one(),
            );
        }
        out
    })
}

/// Componentwise product on the tensor square of the symmetric algebra.
pub fn sym_pair_product(x: &SymPair, y: &SymPair) -> SymPair {
    let mut out = LinComb::zero();
    for ((xl, xr), cx) in x.iter() {
        for ((yl, yr), cy) in y.iter() {
            out.add_term((xl.mul(yl), xr.mul(yr)), cx * cy);
        }
    }
    out
}

/// Cobracket on the symmetric algebra, extended from necklaces by
/// `ν(a·w) = ν(a)·Δ(w) + Δ(a)·ν(w)`.
pub fn sym_cobracket(q: &Quiver, x: &SymElement) -> Result<SymPair> {
    x.try_map_basis(|m| sym_cobracket_monomial(q, m))
}

fn sym_cobracket_monomial(q: &Quiver, m: &SymMonomial) -> Result<SymPair> {
    if m.degree() == 0 {
        return Ok(LinComb::zero());
    }
    let head = &m.factors()[0];
    let tail = SymMonomial(m.factors()[1..].to_vec());

    let nu_head: SymPair = cobracket(q, head)?.map_basis(|(a, b)| {
        LinComb::from_basis((SymMonomial::single(a.clone()), SymMonomial::single(b.clone())))
    });
    let delta_head: SymPair = sym_delta(&LinComb::from_basis(SymMonomial::single(head.clone())));
    let delta_tail: SymPair = sym_delta(&LinComb::from_basis(tail.clone()));
    let nu_tail = sym_cobracket_monomial(q, &tail)?;

    Ok(sym_pair_product(&nu_head, &delta_tail) + sym_pair_product(&delta_head, &nu_tail))
}

/// Poisson bracket on the tensor square:
/// `{x⊗y, u⊗w} = {x,u}⊗yw + xu⊗{y,w}`.
pub fn sym_pair_bracket(q: &Quiver, x: &SymPair, y: &SymPair) -> Result<SymPair> {
    let mut out = LinComb::zero();
    for ((xl, xr), cx) in x.iter() {
        for ((yl, yr), cy) in y.iter() {
            let c = cx * cy;
            let left = sym_bracket(
                q,
                &LinComb::from_basis(xl.clone()),
                &LinComb::from_basis(yl.clone()),
            )?;
            for (m, cb) in left.into_terms() {
                out.add_term((m, xr.mul(yr)), &c * &cb);
            }
            let right = sym_bracket(
                q,
                &LinComb::from_basis(xr.clone()),
                &LinComb::from_basis(yr.clone()),
            )?;
            for (m, cb) in right.into_terms() {
                out.add_term((xl.mul(yl), m), &c * &cb);
            }
        }
    }
    Ok(out)
}

/// Parse a linear combination of necklaces:
/// `['-'] term (('+'|'-') term)*`, `term := [coeff '*'] basis`,
/// `basis := '[' vertex ']' | edge+`.
pub fn parse_lelement(q: &Quiver, input: &str) -> Result<LElement> {
    let mut cur = Cursor::lex(input)?;
    let mut out = LinComb::zero();
    let mut negate = cur.eat(&Tok::Minus);
    loop {
        let (coeff, basis) = parse_necklace_term(q, &mut cur)?;
        let coeff = if negate { -coeff } else { coeff };
        out.add_term(basis, coeff);
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

fn parse_necklace_term(q: &Quiver, cur: &mut Cursor) -> Result<(Poly2, Necklace)> {
    let coeff = parse_coefficient_prefix(cur)?;
    let basis = parse_necklace_basis(q, cur)?;
    Ok((coeff, basis))
}

/// Parse an optional coefficient followed by `*`; with no coefficient the
/// result is 1. Shared by the necklace and link grammars.
pub(crate) fn parse_coefficient_prefix(cur: &mut Cursor) -> Result<Poly2> {
    let looks_scalar = match cur.peek() {
        Some(Tok::Int(_)) => true,
        Some(Tok::Ident(name)) => crate::lexer::is_scalar_name(name),
        // `(` opens a coefficient only when a scalar follows; otherwise it
        // opens a link knot like `(a,1)`.
        Some(Tok::LParen) => crate::scalars::paren_opens_scalar(cur.peek2()),
        _ => false,
    };
    if !looks_scalar {
        return Ok(Poly2::one());
    }
    let coeff = crate::scalars::parse_poly_product(cur)?;
    // The separating `*`, when the coefficient prefixes a basis element.
    cur.eat(&Tok::Star);
    Ok(coeff)
}

fn parse_necklace_basis(q: &Quiver, cur: &mut Cursor) -> Result<Necklace> {
    if cur.eat(&Tok::LBracket) {
        let v = match cur.next() {
            Some(Tok::Ident(name)) => q.vertex_id(&name)?,
            other => {
                return Err(Error::Parse(format!(
                    "expected a vertex name, found {other:?}"
                )))
            }
        };
        cur.expect(&Tok::RBracket, "`]` closing a vertex")?;
        return Ok(Necklace::vertex(v));
    }
    let mut edges = Vec::new();
    while matches!(cur.peek(), Some(Tok::Ident(_)) | Some(Tok::Starred(_))) {
        edges.push(q.parse_edge_token(cur)?);
    }
    if edges.is_empty() {
        return Err(Error::Parse(format!(
            "expected a necklace, found {}",
            cur.describe_here()
        )));
    }
    Necklace::cycle(q, edges)
}

/// Render a linear combination of necklaces.
pub fn lelement_to_string(q: &Quiver, x: &LElement) -> String {
    x.display_with(|n| n.display(q))
}
