//! The tensor coalgebra on necklaces: deconcatenation, shuffles, the
//! induced bracket, letter transpositions, and the ladder condition that
//! carves out the image of the link algebra.
//!
//! Elements here carry coefficients in the split parameter only (`hbar`);
//! the join parameter never reaches this side.

use crate::necklace::{bracket, cobracket, Necklace, SymElement, SymMonomial};
use crate::quiver::Quiver;
use crate::scalars::{rat, LinComb, Poly2};
use crate::{Error, Result};

/// A pure tensor of necklaces; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord(pub Vec<Necklace>);

impl TensorWord {
    pub fn one() -> Self {
        TensorWord(Vec::new())
    }

    pub fn single(n: Necklace) -> Self {
        TensorWord(vec![n])
    }

    pub fn grade(&self) -> usize {
        self.0.len()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|n| {
                let s = n.display(q);
                if n.len() > 1 { format!("({s})") } else { s }
            })
            .collect::<Vec<_>>()
            .join(" (x) ")
    }
}

/// Linear combination of tensor words, coefficients free of the join
/// parameter.
pub type FElement = LinComb<TensorWord>;

/// Error unless every coefficient avoids the join parameter `h`.
pub fn assert_h_free(x: &FElement) -> Result<()> {
    for (w, c) in x.iter() {
        if !c.is_h_free() {
            return Err(Error::BadCoefficient(format!(
                "tensor coefficient {c} involves h (word of grade {})",
                w.grade()
            )));
        }
    }
    Ok(())
}

/// Deconcatenation coproduct.
pub fn diag(x: &FElement) -> LinComb<(TensorWord, TensorWord)> {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        for i in 0..=w.0.len() {
            out.add_term(
                (TensorWord(w.0[..i].to_vec()), TensorWord(w.0[i..].to_vec())),
                c.clone(),
            );
        }
    }
    out
}

/// All interleavings of two letter sequences.
fn shuffles(u: &[Necklace], v: &[Necklace]) -> Vec<Vec<Necklace>> {
    if u.is_empty() {
        return vec![v.to_vec()];
    }
    if v.is_empty() {
        return vec![u.to_vec()];
    }
    let mut out = Vec::new();
    for mut tail in shuffles(&u[1..], v) {
        tail.insert(0, u[0].clone());
        out.push(tail);
    }
    for mut tail in shuffles(u, &v[1..]) {
        tail.insert(0, v[0].clone());
        out.push(tail);
    }
    out
}

/// The shuffle product.
pub fn shuffle(x: &FElement, y: &FElement) -> FElement {
    let mut out = LinComb::zero();
    for (u, cu) in x.iter() {
        for (v, cv) in y.iter() {
            for w in shuffles(&u.0, &v.0) {
                out.add_term(TensorWord(w), cu * cv);
            }
        }
    }
    out
}

/// The bracket induced on tensor words: bracket one letter of each word
/// and shuffle the untouched prefixes and suffixes around it.
pub fn f_bracket(q: &Quiver, x: &FElement, y: &FElement) -> Result<FElement> {
    let mut out = LinComb::zero();
    for (u, cu) in x.iter() {
        for (v, cv) in y.iter() {
            for i in 0..u.0.len() {
                for j in 0..v.0.len() {
                    let mid = bracket(q, &u.0[i], &v.0[j])?;
                    if mid.is_zero() {
                        continue;
                    }
                    let prefixes = shuffles(&u.0[..i], &v.0[..j]);
                    let suffixes = shuffles(&u.0[i + 1..], &v.0[j + 1..]);
                    for (m, cm) in mid.iter() {
                        for p in &prefixes {
                            for s in &suffixes {
                                let mut w = p.clone();
                                w.push(m.clone());
                                w.extend(s.iter().cloned());
                                out.add_term(TensorWord(w), cu * cv * cm);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Transpose the letters at (1-based) positions `i` and `i+1` of every
/// word long enough to have them.
pub fn sigma(x: &FElement, i: usize) -> FElement {
    x.map_basis(|w| {
        let mut w = w.clone();
        if i >= 1 && w.0.len() > i {
            w.0.swap(i - 1, i);
        }
        LinComb::from_basis(w)
    })
}

/// Replace the (1-based) `i`-th letter of every word by its cobracket,
/// raising the grade by one. Words too short to have an `i`-th letter
/// contribute nothing.
pub fn nu_letter(q: &Quiver, x: &FElement, i: usize) -> Result<FElement> {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        if i < 1 || w.0.len() < i {
            continue;
        }
        let inner = cobracket(q, &w.0[i - 1])?;
        for ((p1, p2), ci) in inner.iter() {
            let mut word = w.0[..i - 1].to_vec();
            word.push(p1.clone());
            word.push(p2.clone());
            word.extend(w.0[i..].iter().cloned());
            out.add_term(TensorWord(word), c * ci);
        }
    }
    Ok(out)
}

/// The grade-`n` component.
pub fn grade_part(x: &FElement, n: usize) -> FElement {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        if w.grade() == n {
            out.add_term(w.clone(), c.clone());
        }
    }
    out
}

/// Highest grade with a nonzero component.
pub fn max_grade(x: &FElement) -> usize {
    x.iter().map(|(w, _)| w.grade()).max().unwrap_or(0)
}

/// Membership in the ladder subspace: for every `n ≥ 2` and `1 ≤ i < n`,
/// transposing the grade-`n` component at `i` must cost exactly the split
/// parameter times the cobracket of the grade-`n−1` component at `i`.
pub fn is_in_ladder(q: &Quiver, x: &FElement) -> Result<bool> {
    assert_h_free(x)?;
    let top = max_grade(x) + 1;
    for n in 2..=top {
        let xn = grade_part(x, n);
        let xprev = grade_part(x, n - 1);
        for i in 1..n {
            let lhs = &xn - &sigma(&xn, i);
            let rhs = nu_letter(q, &xprev, i)?.scale(&Poly2::hbar());
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Symmetrize: a word of `m` letters becomes `1/m!` times the commutative
/// monomial on the same letters.
pub fn symm(x: &FElement) -> SymElement {
    let mut out: SymElement = LinComb::zero();
    for (w, c) in x.iter() {
        let m = w.0.len() as i64;
        let mut fact = 1i64;
        for k in 2..=m {
            fact *= k;
        }
        out.add_term(
            SymMonomial::new(w.0.clone()),
            c.mul_rat(&rat(1, fact)),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::parse_lelement;
    use crate::testutil::framed_jordan;

    fn letter(q: &Quiver, s: &str) -> Necklace {
        let l = parse_lelement(q, s).unwrap();
        assert_eq!(l.len(), 1);
        l.into_terms().into_keys().next().unwrap()
    }

    fn word(q: &Quiver, letters: &[&str]) -> TensorWord {
        TensorWord(letters.iter().map(|s| letter(q, s)).collect())
    }

    #[test]
    fn diag_deconcatenates() {
        let q = framed_jordan();
        let w = word(&q, &["a a*", "[v1]"]);
        let got = diag(&LinComb::from_basis(w.clone()));
        assert_eq!(got.len(), 3);
        let one = TensorWord::one();
        assert!(got.coeff_of(&(one.clone(), w.clone())).is_one());
        assert!(got.coeff_of(&(w.clone(), one)).is_one());
        assert!(got
            .coeff_of(&(word(&q, &["a a*"]), word(&q, &["[v1]"])))
            .is_one());
    }

    #[test]
    fn shuffle_is_commutative_and_unital() {
        let q = framed_jordan();
        let x: FElement = LinComb::from_basis(word(&q, &["a a*", "a"]));
        let y: FElement = LinComb::from_basis(word(&q, &["[v2]"]));
        assert_eq!(shuffle(&x, &y), shuffle(&y, &x));
        let unit: FElement = LinComb::from_basis(TensorWord::one());
        assert_eq!(shuffle(&x, &unit), x);
        // Shuffling two single letters gives both orders.
        let a: FElement = LinComb::from_basis(word(&q, &["a"]));
        let b: FElement = LinComb::from_basis(word(&q, &["[v1]"]));
        let s = shuffle(&a, &b);
        assert_eq!(s.len(), 2);
    }

    /// On single-letter words the induced bracket is the necklace bracket.
    #[test]
    fn bracket_on_single_letters() {
        let q = framed_jordan();
        let x: FElement = LinComb::from_basis(word(&q, &["a a*"]));
        let y: FElement = LinComb::from_basis(word(&q, &["a* a* b* b"]));
        let got = f_bracket(&q, &x, &y).unwrap();
        let mut want: FElement = LinComb::zero();
        want.add_term(word(&q, &["a* a* b* b"]), Poly2::int(2));
        assert_eq!(got, want);
    }

    #[test]
    fn bracket_drops_the_grade_by_one() {
        let q = framed_jordan();
        let x: FElement = LinComb::from_basis(word(&q, &["a a*", "a"]));
        let y: FElement = LinComb::from_basis(word(&q, &["a* a*", "[v1]"]));
        let got = f_bracket(&q, &x, &y).unwrap();
        for (w, _) in got.iter() {
            assert_eq!(w.grade(), 3);
        }
        let anti = f_bracket(&q, &y, &x).unwrap();
        assert_eq!(got, -anti);
    }

    #[test]
    fn sigma_is_an_involution() {
        let q = framed_jordan();
        let x: FElement = LinComb::from_basis(word(&q, &["a a*", "a* a*", "[v1]"]));
        assert_eq!(sigma(&sigma(&x, 1), 1), x);
        assert_eq!(sigma(&sigma(&x, 2), 2), x);
        assert_ne!(sigma(&x, 1), x);
    }

    /// Frozen ladder member: the loop word plus the split-parameter vertex
    /// correction (the image of the two-cycle link).
    #[test]
    fn ladder_membership_positive() {
        let q = framed_jordan();
        let mut x: FElement = LinComb::from_basis(word(&q, &["a a*"]));
        x.add_term(word(&q, &["[v1]", "[v1]"]), Poly2::hbar());
        assert!(is_in_ladder(&q, &x).unwrap());
        // The framed cycle with its vertex correction (note the sign).
        let mut y: FElement = LinComb::from_basis(word(&q, &["a* a* b* b"]));
        y.add_term(word(&q, &["a* a*", "[v2]"]), -Poly2::hbar());
        assert!(is_in_ladder(&q, &y).unwrap());
    }

    #[test]
    fn ladder_membership_negative() {
        let q = framed_jordan();
        // A bare non-symmetric grade-2 word transposes to a different word
        // with no grade-1 correction available.
        let x: FElement = LinComb::from_basis(word(&q, &["a a*", "a* a*"]));
        assert!(!is_in_ladder(&q, &x).unwrap());
        // The bare framed cycle misses its correction term, and adding the
        // correction with the wrong sign does not help.
        let y: FElement = LinComb::from_basis(word(&q, &["a* a* b* b"]));
        assert!(!is_in_ladder(&q, &y).unwrap());
        let mut y_plus = y.clone();
        y_plus.add_term(word(&q, &["a* a*", "[v2]"]), Poly2::hbar());
        assert!(!is_in_ladder(&q, &y_plus).unwrap());
    }

    #[test]
    fn rejects_join_parameter_coefficients() {
        let q = framed_jordan();
        let mut x: FElement = LinComb::zero();
        x.add_term(word(&q, &["a a*"]), Poly2::h());
        assert!(assert_h_free(&x).is_err());
        assert!(is_in_ladder(&q, &x).is_err());
    }

    #[test]
    fn symm_divides_by_the_factorial() {
        let q = framed_jordan();
        let x: FElement = LinComb::from_basis(word(&q, &["a a*", "[v1]"]));
        let got = symm(&x);
        assert_eq!(got.len(), 1);
        let (mono, c) = got.iter().next().unwrap();
        assert_eq!(mono.degree(), 2);
        assert_eq!(c, &Poly2::constant(rat(1, 2)));
    }
}
