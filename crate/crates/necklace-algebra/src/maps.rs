//! The four projections between the two-parameter link algebra, its
//! one-parameter shadows, and the classical symmetric algebra — together
//! with the congruence checks tying the square together.
//!
//! * `q_map` — collapse a single-component link to its necklace (zero on
//!   everything else), killing the join parameter.
//! * `j_map` — the full tensor-coalgebra expansion: the join-free part of
//!   every iterated coproduct, one grade per splitting arity.
//! * `p_hbar_map` — symmetrized `j_map`; lands in the symmetric algebra
//!   with split-parameter coefficients.
//! * `p_h_map` — reduce mod the split parameter and read each standard
//!   link as an ordered word in the enveloping algebra.
//! * `p_map` — both reductions at once (the classical limit).
//! * `xi_map` — the multiplicative lift of the symmetric algebra back into
//!   the link algebra mod the join parameter; `ξ∘p̃ − id` is nilpotent,
//!   which is what makes those coordinates usable.

use crate::coloring::{self, coproduct2};
use crate::envelope::{self, pbw_normalize, v_cobracket, UEWord, VElement, VPair};
use crate::heightlink::{n_product, normalize, Link, NElement};
use crate::necklace::{LElement, Necklace, SymElement, SymMonomial};
use crate::quiver::Quiver;
use crate::scalars::{rat_int, LinComb, Poly2};
use crate::tensoralg::{f_bracket, symm, FElement, TensorWord};
use crate::Result;

/// Collapse single-component links to their necklaces; kill the join
/// parameter.
pub fn q_map(q: &Quiver, x: &LinComb<Link>) -> Result<LElement> {
    let mut out: LElement = LinComb::zero();
    for (link, c) in x.iter() {
        let c = c.set_h_zero();
        if c.is_zero() {
            continue;
        }
        if link.knots().len() == 1 && link.vertices().is_empty() {
            out.add_term(link.knots()[0].necklace(q)?, c);
        } else if link.knots().is_empty() && link.vertices().len() == 1 {
            out.add_term(Necklace::vertex(link.vertices()[0]), c);
        }
    }
    Ok(out)
}

/// The tensor-coalgebra expansion. For each matching whose orbit count
/// reaches `#knots + #pairs` (exactly the join-free colorings), every
/// constraint-respecting bijection from orbits and lone vertices onto the
/// slots `1..n` contributes its word with weight `±ħ^pairs`; summed over
/// all splitting arities this is the series of join-free iterated
/// coproduct terms with single-component slots.
pub fn j_map(q: &Quiver, x: &LinComb<Link>) -> Result<FElement> {
    let mut out: FElement = LinComb::zero();
    for (link, coeff) in x.iter() {
        let base = coeff.set_h_zero();
        if base.is_zero() {
            continue;
        }
        coloring::for_each_matching(link, &mut |matching| {
            let orbs = coloring::orbits(q, link, matching);
            let p = matching.pairs.len();
            if orbs.len() != link.knots().len() + p {
                return Ok(());
            }
            let Some(cons) = coloring::constraints(link, matching, &orbs) else {
                return Ok(());
            };
            let mut letters: Vec<Necklace> = Vec::with_capacity(orbs.len());
            for o in 0..orbs.len() {
                letters.push(match orbs.vertex[o] {
                    Some(v) => Necklace::vertex(v),
                    None => Necklace::cycle(
                        q,
                        orbs.words[o].iter().map(|&(e, _)| e).collect(),
                    )?,
                });
            }
            for &v in link.vertices() {
                letters.push(Necklace::vertex(v));
            }
            let c_minus = matching
                .pairs
                .iter()
                .filter(|&&((ki, oi), (kj, oj))| {
                    link.knots()[ki].entries()[oi].1 > link.knots()[kj].entries()[oj].1
                })
                .count();
            let sign = if c_minus % 2 == 0 { 1 } else { -1 };
            let weight = base
                .mul_rat(&rat_int(sign))
                * Poly2::hbar().pow(p as u32);
            // Assign distinct slots to the letters; constraints only bind
            // the orbit letters.
            let n = letters.len();
            let mut slot_of: Vec<usize> = vec![usize::MAX; n];
            #[allow(clippy::too_many_arguments)] // recursion state, not an API
            fn assign(
                k: usize,
                n: usize,
                cons: &[(usize, usize)],
                slot_of: &mut Vec<usize>,
                used: &mut Vec<bool>,
                letters: &[Necklace],
                weight: &Poly2,
                out: &mut FElement,
            ) {
                if k == n {
                    let mut word = vec![letters[0].clone(); n];
                    for (item, &s) in slot_of.iter().enumerate() {
                        word[s] = letters[item].clone();
                    }
                    out.add_term(TensorWord(word), weight.clone());
                    return;
                }
                'slots: for s in 0..n {
                    if used[s] {
                        continue;
                    }
                    slot_of[k] = s;
                    for &(lo, hi) in cons {
                        if lo <= k && hi <= k && slot_of[lo] >= slot_of[hi] {
                            slot_of[k] = usize::MAX;
                            continue 'slots;
                        }
                    }
                    used[s] = true;
                    assign(k + 1, n, cons, slot_of, used, letters, weight, out);
                    used[s] = false;
                    slot_of[k] = usize::MAX;
                }
            }
            if n == 0 {
                // The empty link contributes the empty word: the unit.
                out.add_term(TensorWord::one(), weight);
            } else {
                let mut used = vec![false; n];
                assign(0, n, &cons, &mut slot_of, &mut used, &letters, &weight, &mut out);
            }
            Ok(())
        })?;
    }
    Ok(out)
}

/// Symmetrized expansion into the symmetric algebra (split-parameter
/// coefficients).
pub fn p_hbar_map(q: &Quiver, x: &LinComb<Link>) -> Result<SymElement> {
    Ok(symm(&j_map(q, x)?))
}

/// The letters of a standard link in reading order: knots by ascending
/// height block, then lone vertices.
fn standard_word(q: &Quiver, link: &Link) -> Result<Vec<Necklace>> {
    let mut idx: Vec<usize> = (0..link.knots().len()).collect();
    idx.sort_by_key(|&i| link.knots()[i].entries()[0].1);
    let mut letters: Vec<Necklace> = idx
        .into_iter()
        .map(|i| link.knots()[i].necklace(q))
        .collect::<Result<_>>()?;
    letters.extend(link.vertices().iter().map(|&v| Necklace::vertex(v)));
    Ok(letters)
}

/// Reduce mod the split parameter and read standard links as ordered
/// words in the enveloping algebra.
pub fn p_h_map(q: &Quiver, x: &LinComb<Link>) -> Result<VElement> {
    let nx = normalize(q, x)?;
    let mut raw: LinComb<UEWord> = LinComb::zero();
    for (link, c) in nx.iter() {
        let c = c.set_hbar_zero();
        if c.is_zero() {
            continue;
        }
        raw.add_term(UEWord(standard_word(q, link)?), c);
    }
    pbw_normalize(q, &raw)
}

/// The classical limit: both parameters to zero, components as a
/// commutative monomial.
pub fn p_map(q: &Quiver, x: &LinComb<Link>) -> Result<SymElement> {
    let nx = normalize(q, x)?;
    let mut out: SymElement = LinComb::zero();
    for (link, c) in nx.iter() {
        let c = c.set_h_zero().set_hbar_zero();
        if c.is_zero() {
            continue;
        }
        out.add_term(SymMonomial::new(standard_word(q, link)?), c);
    }
    Ok(out)
}

/// Kill the split parameter on the symmetric algebra.
pub fn q_h_map(x: &SymElement) -> SymElement {
    x.map_coeff(|c| c.set_hbar_zero())
}

/// Lift a necklace to the link with heights increasing along its
/// canonical rotation.
pub fn lift_necklace(q: &Quiver, n: &Necklace) -> Result<Link> {
    match n {
        Necklace::Vertex(v) => Ok(Link::vertex(*v)),
        Necklace::Cycle(word) => Link::new(
            q,
            vec![word.iter().enumerate().map(|(i, &e)| (e, (i + 1) as u32)).collect()],
            Vec::new(),
        ),
    }
}

/// Multiplicative lift of the symmetric algebra into the link algebra mod
/// the join parameter.
pub fn xi_map(q: &Quiver, x: &SymElement) -> Result<NElement> {
    let mut out: NElement = LinComb::zero();
    for (mono, c) in x.iter() {
        let mut acc: NElement = LinComb::from_basis(Link::empty());
        for factor in mono.factors() {
            let lifted = LinComb::from_basis(lift_necklace(q, factor)?);
            acc = n_product(q, &acc, &lifted)?;
        }
        out = out + acc.scale(c);
    }
    Ok(out.map_coeff(|c| c.set_h_zero()))
}

/// Both sides of the bracket congruence: the expansion of the commutator
/// divided by the join parameter against the induced tensor bracket of the
/// expansions.
pub fn check_quantization(
    q: &Quiver,
    x: &NElement,
    y: &NElement,
) -> Result<(FElement, FElement)> {
    let comm = n_product(q, x, y)? - n_product(q, y, x)?;
    let divided = comm.try_map_coeff(|c| c.div_exact_h())?;
    let lhs = j_map(q, &divided)?;
    let rhs = f_bracket(q, &j_map(q, x)?, &j_map(q, y)?)?;
    Ok((lhs, rhs))
}

/// Both sides of the cobracket congruence: the antisymmetrized coproduct
/// divided by the split parameter, pushed into the enveloping algebra on
/// each slot, against the cobracket of the envelope image.
pub fn check_coquantization(q: &Quiver, x: &NElement) -> Result<(VPair, VPair)> {
    let d = coproduct2(q, x)?;
    let perm = d.map_basis(|(a, b)| LinComb::from_basis((b.clone(), a.clone())));
    let divided = (d - perm).try_map_coeff(|c| c.div_exact_hbar())?;
    let mut lhs: VPair = LinComb::zero();
    for ((a, b), c) in divided.iter() {
        let c = c.set_hbar_zero();
        if c.is_zero() {
            continue;
        }
        let na = pbw_normalize(q, &LinComb::from_basis(UEWord(standard_word(q, a)?)))?;
        let nb = pbw_normalize(q, &LinComb::from_basis(UEWord(standard_word(q, b)?)))?;
        for (ka, ca) in na.iter() {
            for (kb, cb) in nb.iter() {
                lhs.add_term((ka.clone(), kb.clone()), &c * ca * cb);
            }
        }
    }
    let rhs = v_cobracket(q, &p_h_map(q, x)?)?;
    Ok((lhs, rhs))
}

/// The three ways around the square: reduce the symmetrized expansion,
/// reduce the envelope image, and the direct classical limit.
pub fn check_diagram(
    q: &Quiver,
    x: &LinComb<Link>,
) -> Result<(SymElement, SymElement, SymElement)> {
    let via_hbar = q_h_map(&p_hbar_map(q, x)?);
    let via_h = envelope::q_hbar_map(&p_h_map(q, x)?);
    let direct = p_map(q, x)?;
    Ok((via_hbar, via_h, direct))
}

/// Check that `ξ∘p̃ − id` kills the class of `link` mod the join parameter
/// after at most (crossing bound) iterations.
pub fn check_xi_nilpotent(q: &Quiver, link: &Link) -> Result<bool> {
    let x0 = normalize(q, &LinComb::from_basis(link.clone()))?
        .map_coeff(|c| c.set_h_zero());
    let n = link.n_positions();
    let cap = n * n / 2 + 2;
    let mut d = defect(q, &x0)?;
    for _ in 0..cap {
        if d.is_zero() {
            return Ok(true);
        }
        d = defect(q, &d)?;
    }
    Ok(d.is_zero())
}

/// `ξ(p̃(y)) − y` on join-free elements.
fn defect(q: &Quiver, y: &NElement) -> Result<NElement> {
    let lifted = xi_map(q, &p_hbar_map(q, y)?)?;
    Ok(lifted - y.clone())
}
