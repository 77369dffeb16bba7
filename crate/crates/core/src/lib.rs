//! Exact computer algebra for Whittaker modules `W_ε(ψ, c)` over the N=1
//! super-Virasoro algebras (Neveu-Schwarz `ε = 1/2`, Ramond `ε = 0`).
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: generators, parity, grading and the super-bracket.
//! - [`basis`]: pseudopartitions, PBW monomials `L_{-λ}G_{ε-μ}w` and sparse
//!   module vectors.
//! - [`module`]: the Whittaker module itself and the straightening action of
//!   generators on the PBW basis.
//! - [`solver`]: finite truncations, exact Whittaker-vector kernels and
//!   cyclicity / simplicity probes.
//! - [`findim`]: the `(1|1)`-dimensional modules `A_ε(ψ)` over `SVir_ε⁺`.
//! - [`expr`]: a small parser and printer for generator expressions.
//! - [`checks`]: exhaustive and seeded property sweeps.
//! - [`report`]: serialisable report records.
//!
//! All scalars are exact [`Rational`]s; nothing in the crate uses floating
//! point.

pub mod algebra;
pub mod basis;
pub mod checks;
pub mod expr;
pub mod findim;
pub mod linalg;
pub mod module;
pub mod report;
pub mod solver;

use num_bigint::BigInt;
use thiserror::Error;

pub use algebra::{bracket, Generator, Kind, LieElement, Parity, Sector};
pub use basis::{ModuleVector, Monomial, Pseudopartition, StrictPseudopartition};
pub use module::{WhittakerData, WhittakerModule};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("sector mismatch: {0} vs {1}")]
    SectorMismatch(Sector, Sector),
    #[error("doubled index {doubled} is not valid for {kind:?} in the {sector} sector")]
    InvalidIndex { kind: Kind, doubled: i64, sector: Sector },
    #[error("invalid basis monomial: {0}")]
    InvalidMonomial(String),
    #[error("operation requires a nonzero vector")]
    ZeroVector,
    #[error("truncation bound {bound} is below the minimum {min} for the {sector} sector")]
    TruncationBound { bound: i64, min: i64, sector: Sector },
    #[error("psi is trivial (a = b = 0); that is the Verma-module case, which is not handled")]
    TrivialPsi,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
