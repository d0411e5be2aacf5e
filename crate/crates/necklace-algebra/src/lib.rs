//! Exact computer algebra for the necklace Lie bialgebra of a finite quiver
//! and its two-parameter quantization by height-labeled links.
//!
//! The library is organized bottom-up:
//!
//! * [`scalars`] — exact rationals, sparse polynomials in the two deformation
//!   parameters `h` and `hbar`, and generic linear combinations.
//! * [`quiver`] — quivers, the double quiver with starred reverse arrows, and
//!   the antisymmetric pairing on edges.
//! * [`necklace`] — cyclic words (necklaces) up to rotation, the necklace Lie
//!   bracket and cobracket, and the induced bi-Poisson structure on the
//!   symmetric algebra.
//! * [`heightlink`] — height-labeled links, the stacking product, the two
//!   crossing-exchange rewrite rules, and normalization to a canonical
//!   height form.
//! * [`coloring`] — matchings and colorings of a link, the splitting weight,
//!   and the resulting coproducts.
//! * [`tensoralg`] — the tensor (co)algebra on necklaces: deconcatenation,
//!   shuffles, the induced bracket, letter transpositions, and the
//!   symmetrization map.
//! * [`envelope`] — the one-parameter enveloping algebra with its ordered
//!   rewriting, primitive coproduct, and cobracket.
//! * [`maps`] — the four projections between the link algebra and its two
//!   classical shadows, together with the congruence checks that tie the
//!   square together.
//! * [`sampling`] — seeded random generation of quivers, necklaces, and links
//!   for the property suites.
//! * [`verify`] — the property suites themselves, with JSON-serializable
//!   reports.

pub mod coloring;
pub mod envelope;
pub mod heightlink;
pub mod maps;
pub mod necklace;
pub mod quiver;
pub mod sampling;
pub mod scalars;
pub mod tensoralg;
pub mod verify;

mod lexer;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::quiver::Quiver;

    /// One loop `a` at `v1` plus a framing arrow `b: v2 -> v1`. The running
    /// example for most unit tests.
    pub fn framed_jordan() -> Quiver {
        Quiver::parse(
            "vertex v1\n\
             vertex v2\n\
             arrow a: v1 -> v1\n\
             arrow b: v2 -> v1\n",
        )
        .unwrap()
    }

    /// Six vertices and seven arrows arranged around an octagonal diagram;
    /// exercises colorings that split one knot into two triangles.
    pub fn octagon() -> Quiver {
        Quiver::parse(
            "vertex lu\n\
             vertex ld\n\
             vertex ml\n\
             vertex mr\n\
             vertex ru\n\
             vertex rd\n\
             arrow g: lu -> ld\n\
             arrow e: ml -> ld\n\
             arrow f: ml -> lu\n\
             arrow a: ml -> mr\n\
             arrow d: rd -> mr\n\
             arrow b: mr -> ru\n\
             arrow c: ru -> rd\n",
        )
        .unwrap()
    }
}

use thiserror::Error;

/// Errors produced by parsing and algebraic operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Text input that does not match the expected grammar.
    #[error("parse error: {0}")]
    Parse(String),
    /// A quiver declaration that is internally inconsistent.
    #[error("quiver error: {0}")]
    Quiver(String),
    /// An edge sequence that does not close up into a cyclic path.
    #[error("not composable: {0}")]
    NotComposable(String),
    /// A link whose height labels are not distinct.
    #[error("bad heights: {0}")]
    BadHeights(String),
    /// Division that was expected to be exact but is not.
    #[error("not divisible: {0}")]
    NotDivisible(String),
    /// A coefficient outside the scalar ring declared for the context.
    #[error("coefficient not in the declared scalar ring: {0}")]
    BadCoefficient(String),
    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
