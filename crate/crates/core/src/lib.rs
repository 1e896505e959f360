//! Zeta functions of arithmetic schemes built from finite fields, curves,
//! rings of integers of abelian number fields, and the bundle/decomposition
//! operations that preserve them.
//!
//! The core algorithms are generic over the scalar type (exact integers,
//! rationals, or floating reals); the aliases below fix the concrete types
//! used throughout the public API.

pub mod archimedean;
pub mod arith;
pub mod detcomplex;
pub mod error;
pub mod ffengine;
pub mod intlinalg;
pub mod lfunctions;
pub mod numeric;
pub mod poly;
pub mod scheme_algebra;
mod ser;
pub mod zetarep;

pub use error::{Error, Result};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type Real = numeric::BigReal;
pub type Complex = num_complex::Complex<numeric::BigReal>;
pub type IntMatrix = intlinalg::Matrix<Integer>;
pub type FinGenAbGroup = intlinalg::AbGroup<Integer>;
pub type SmithDecomposition = intlinalg::SmithDecomposition<Integer>;
pub type ZPoly = poly::Poly<Integer>;
pub type QPoly = poly::Poly<Rational>;

/// Default number of significant decimal digits for numeric values.
pub const DEFAULT_PRECISION: u32 = 50;
