//! Exact scalar arithmetic: rationals, sparse polynomials in the two
//! deformation parameters `h` and `hbar`, and generic linear combinations
//! over them.
//!
//! Every coefficient in the library is a [`Poly2`]: an element of
//! ℚ[h, ħ] stored sparsely by exponent pair. Contexts that work over a
//! smaller ring (ℚ, ℚ[h], or ℚ[ħ]) enforce the restriction with
//! [`Poly2::is_constant`], [`Poly2::is_hbar_free`], and
//! [`Poly2::is_h_free`] at their boundaries.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

use crate::lexer::{is_scalar_name, Cursor, Tok};
use crate::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// The rational `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Sparse polynomial in `h` and `hbar` with rational coefficients.
///
/// Keys are exponent pairs `(h_degree, hbar_degree)`; zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly2::monomial(c, 0, 0)
    }

    pub fn int(n: i64) -> Self {
        Poly2::constant(rat_int(n))
    }

    /// The monomial `c · h^i · hbar^j`.
    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        let mut p = Poly2::zero();
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    /// The parameter `h`.
    pub fn h() -> Self {
        Poly2::monomial(Rat::one(), 1, 0)
    }

    /// The parameter `hbar`.
    pub fn hbar() -> Self {
        Poly2::monomial(Rat::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// True when no term involves `h`.
    pub fn is_h_free(&self) -> bool {
        self.terms.keys().all(|&(i, _)| i == 0)
    }

    /// True when no term involves `hbar`.
    pub fn is_hbar_free(&self) -> bool {
        self.terms.keys().all(|&(_, j)| j == 0)
    }

    /// True when the polynomial is a rational constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert_add(&mut self, key: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    /// Substitute rational values for `h` and/or `hbar`; `None` keeps the
    /// variable symbolic.
    pub fn specialize(&self, h: Option<&Rat>, hbar: Option<&Rat>) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            let mut c = c.clone();
            let mut key = (i, j);
            if let Some(hv) = h {
                c *= pow_rat(hv, i);
                key.0 = 0;
            }
            if let Some(hbv) = hbar {
                c *= pow_rat(hbv, j);
                key.1 = 0;
            }
            out.insert_add(key, c);
        }
        out
    }

    /// Substitute `h = 0`.
    pub fn set_h_zero(&self) -> Poly2 {
        let zero = Rat::zero();
        self.specialize(Some(&zero), None)
    }

    /// Substitute `hbar = 0`.
    pub fn set_hbar_zero(&self) -> Poly2 {
        let zero = Rat::zero();
        self.specialize(None, Some(&zero))
    }

    /// Exact division by `h`; errors unless every term is divisible.
    pub fn div_exact_h(&self) -> Result<Poly2> {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                return Err(Error::NotDivisible(format!("{self} is not divisible by h")));
            }
            out.insert_add((i - 1, j), c.clone());
        }
        Ok(out)
    }

    /// Exact division by `hbar`; errors unless every term is divisible.
    pub fn div_exact_hbar(&self) -> Result<Poly2> {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                return Err(Error::NotDivisible(format!(
                    "{self} is not divisible by hbar"
                )));
            }
            out.insert_add((i, j - 1), c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly2 {
        let mut out = Poly2::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn mul_rat(&self, r: &Rat) -> Poly2 {
        if r.is_zero() {
            return Poly2::zero();
        }
        let mut out = Poly2::zero();
        for (&k, c) in &self.terms {
            out.terms.insert(k, c * r);
        }
        out
    }

    /// Parse the textual form: terms like `3`, `-1/2`, `h`, `2*h^2*hbar`,
    /// joined by `+` and `-`; `ħ` and `hbar` are interchangeable;
    /// parenthesized sums are allowed inside products.
    pub fn parse(input: &str) -> Result<Poly2> {
        let mut cur = Cursor::lex(input)?;
        let p = parse_poly_sum(&mut cur)?;
        cur.expect_end()?;
        Ok(p)
    }
}

fn pow_rat(r: &Rat, e: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e {
        out *= r;
    }
    out
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(mut self, rhs: Poly2) -> Poly2 {
        for (k, c) in rhs.terms {
            self.insert_add(k, c);
        }
        self
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        self.clone() + rhs.clone()
    }
}

impl AddAssign for Poly2 {
    fn add_assign(&mut self, rhs: Poly2) {
        for (k, c) in rhs.terms {
            self.insert_add(k, c);
        }
    }
}

impl Sub for Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: Poly2) -> Poly2 {
        self + (-rhs)
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self.clone() - rhs.clone()
    }
}

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(mut self) -> Poly2 {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -self.clone()
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.insert_add((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Add<&Poly2> for Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        self + rhs.clone()
    }
}

impl Add<Poly2> for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: Poly2) -> Poly2 {
        rhs + self
    }
}

impl Sub<&Poly2> for Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self - rhs.clone()
    }
}

impl Sub<Poly2> for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: Poly2) -> Poly2 {
        self.clone() - rhs
    }
}

impl Mul<&Poly2> for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        &self * rhs
    }
}

impl Mul<Poly2> for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        self * &rhs
    }
}

/// Render one monomial without a leading sign; the sign is returned
/// separately so sums can fold it into `+`/`-` separators.
fn fmt_monomial(key: (u32, u32), coeff: &Rat) -> (bool, String) {
    let negative = coeff.is_negative();
    let mag = coeff.abs();
    let mut parts: Vec<String> = Vec::new();
    let (i, j) = key;
    if !mag.is_one() || (i == 0 && j == 0) {
        parts.push(mag.to_string());
    }
    if i == 1 {
        parts.push("h".to_string());
    } else if i > 1 {
        parts.push(format!("h^{i}"));
    }
    if j == 1 {
        parts.push("hbar".to_string());
    } else if j > 1 {
        parts.push(format!("hbar^{j}"));
    }
    (negative, parts.join("*"))
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in &self.terms {
            let (neg, body) = fmt_monomial(k, c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if neg { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

/// `poly_sum := ['-'] product (('+'|'-') product)*`
pub(crate) fn parse_poly_sum(cur: &mut Cursor) -> Result<Poly2> {
    let mut acc;
    let negate = cur.eat(&Tok::Minus);
    acc = parse_poly_product(cur)?;
    if negate {
        acc = -acc;
    }
    loop {
        if cur.eat(&Tok::Plus) {
            acc += parse_poly_product(cur)?;
        } else if cur.eat(&Tok::Minus) {
            acc = acc - parse_poly_product(cur)?;
        } else {
            break;
        }
    }
    Ok(acc)
}

/// True when `tok` can start a polynomial atom. A bare `(` is ambiguous
/// (it may open a knot); callers resolve it with [`paren_opens_scalar`].
pub(crate) fn poly_atom_start(tok: Option<&Tok>) -> bool {
    match tok {
        Some(Tok::Int(_)) => true,
        Some(Tok::Ident(name)) => is_scalar_name(name),
        Some(Tok::LParen) => true,
        _ => false,
    }
}

/// Whether a `(` opens a parenthesized coefficient rather than a knot like
/// `(a,1)`, decided by the token following it: knots start with an edge
/// name, which is never a scalar name, a sign, or a digit.
pub(crate) fn paren_opens_scalar(after_paren: Option<&Tok>) -> bool {
    after_paren == Some(&Tok::Minus) || poly_atom_start(after_paren)
}

/// True when a `*` at the cursor separates two scalar factors rather than
/// a coefficient from a basis element.
fn scalar_follows_star(cur: &Cursor) -> bool {
    match cur.peek2() {
        Some(Tok::LParen) => paren_opens_scalar(cur.peek_at(2)),
        other => poly_atom_start(other),
    }
}

/// `product := atom ('*' atom)*`, where the `*` is consumed only when an
/// atom follows it — a `*` followed by a basis element is a coefficient
/// separator and is left for the caller.
pub(crate) fn parse_poly_product(cur: &mut Cursor) -> Result<Poly2> {
    let mut acc = parse_poly_atom(cur)?;
    while cur.peek() == Some(&Tok::Star) && scalar_follows_star(cur) {
        cur.next();
        acc = acc * parse_poly_atom(cur)?;
    }
    Ok(acc)
}

/// `atom := int ['/' int] | 'h' ['^' int] | 'hbar' ['^' int] | '(' sum ')'`
fn parse_poly_atom(cur: &mut Cursor) -> Result<Poly2> {
    match cur.next() {
        Some(Tok::Int(n)) => {
            if cur.eat(&Tok::Slash) {
                match cur.next() {
                    Some(Tok::Int(d)) if !d.is_zero() => {
                        Ok(Poly2::constant(Rat::new(n, d)))
                    }
                    other => Err(Error::Parse(format!(
                        "expected nonzero denominator, found {other:?}"
                    ))),
                }
            } else {
                Ok(Poly2::constant(Rat::from_integer(n)))
            }
        }
        Some(Tok::Ident(name)) if is_scalar_name(&name) => {
            let exp = parse_opt_exponent(cur)?;
            let (i, j) = if name == "h" { (exp, 0) } else { (0, exp) };
            Ok(Poly2::monomial(Rat::one(), i, j))
        }
        Some(Tok::LParen) => {
            let p = parse_poly_sum(cur)?;
            cur.expect(&Tok::RParen, "`)` closing a coefficient")?;
            Ok(p)
        }
        other => Err(Error::Parse(format!(
            "expected a scalar, found {other:?}"
        ))),
    }
}

fn parse_opt_exponent(cur: &mut Cursor) -> Result<u32> {
    if cur.eat(&Tok::Caret) {
        match cur.next() {
            Some(Tok::Int(n)) => u32::try_from(n.clone()).map_err(|_| {
                Error::Parse(format!("exponent {n} out of range"))
            }),
            other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        }
    } else {
        Ok(1)
    }
}

/// Finite linear combination of basis elements `B` with [`Poly2`]
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinComb<B: Ord + Clone> {
    terms: BTreeMap<B, Poly2>,
}

impl<B: Ord + Clone> Default for LinComb<B> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term `c · b`.
    pub fn term(b: B, c: Poly2) -> Self {
        let mut l = Self::zero();
        l.add_term(b, c);
        l
    }

    /// The basis element `b` with coefficient 1.
    pub fn from_basis(b: B) -> Self {
        Self::term(b, Poly2::one())
    }

    pub fn add_term(&mut self, b: B, c: Poly2) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Poly2)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<B, Poly2> {
        self.terms
    }

    /// Coefficient of `b` (zero when absent).
    pub fn coeff_of(&self, b: &B) -> Poly2 {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Poly2) -> Self {
        let mut out = Self::zero();
        for (b, k) in &self.terms {
            out.add_term(b.clone(), k * c);
        }
        out
    }

    /// Apply a linear map given on basis elements.
    pub fn map_basis<C: Ord + Clone>(&self, f: impl Fn(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            for (b2, c2) in f(b).terms {
                out.add_term(b2, c * &c2);
            }
        }
        out
    }

    /// Apply a fallible linear map given on basis elements.
    pub fn try_map_basis<C: Ord + Clone>(
        &self,
        mut f: impl FnMut(&B) -> Result<LinComb<C>>,
    ) -> Result<LinComb<C>> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            for (b2, c2) in f(b)?.terms {
                out.add_term(b2, c * &c2);
            }
        }
        Ok(out)
    }

    /// Transform every coefficient (dropping the ones that become zero).
    pub fn map_coeff(&self, f: impl Fn(&Poly2) -> Poly2) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c));
        }
        out
    }

    /// Transform every coefficient, failing fast.
    pub fn try_map_coeff(&self, f: impl Fn(&Poly2) -> Result<Poly2>) -> Result<Self> {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Render with a caller-supplied basis printer, folding signs of
    /// single-monomial coefficients into the `+`/`-` separators.
    pub fn display_with(&self, print_basis: impl Fn(&B) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (b, c) in &self.terms {
            let (neg, coeff_body) = render_coeff(c);
            let basis = print_basis(b);
            let piece = match (coeff_body.as_str(), basis.as_str()) {
                ("", "") => "1".to_string(),
                ("", _) => basis,
                (_, "") => coeff_body,
                _ => format!("{coeff_body} * {basis}"),
            };
            if first {
                if neg {
                    out.push('-');
                }
                out.push_str(&piece);
                first = false;
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&piece);
            }
        }
        out
    }
}

/// Split a coefficient into (is_negative, coefficient text); the text is
/// empty for ±1 so the basis element prints bare, and multi-term
/// polynomials are parenthesized.
fn render_coeff(c: &Poly2) -> (bool, String) {
    let monomials: Vec<_> = c.iter().collect();
    if monomials.len() == 1 {
        let (&key, coeff) = (monomials[0].0, monomials[0].1);
        let (neg, body) = fmt_monomial(key, coeff);
        if key == (0, 0) && coeff.abs().is_one() {
            (neg, String::new())
        } else {
            (neg, body)
        }
    } else {
        (false, format!("({c})"))
    }
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = LinComb<B>;
    fn add(mut self, rhs: LinComb<B>) -> LinComb<B> {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: &LinComb<B>) -> LinComb<B> {
        self.clone() + rhs.clone()
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: LinComb<B>) -> LinComb<B> {
        self + (-rhs)
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: &LinComb<B>) -> LinComb<B> {
        self.clone() - rhs.clone()
    }
}

impl<B: Ord + Clone> Neg for LinComb<B> {
    type Output = LinComb<B>;
    fn neg(mut self) -> LinComb<B> {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        -self.clone()
    }
}
