//! Symmetric signatures of two-dimensional quotient singularities.
//!
//! The crate computes, exactly, the multiplicities of irreducible
//! representations in symmetric powers of a finite group G ⊂ GL_2, and
//! from them the asymptotic share of free summands in the symmetric
//! powers of the syzygy module of the invariant ring.

pub mod bundles;
pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod groups;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod polyverify;
pub mod scalar;
pub mod signature;
pub mod sympow;

pub use cyclotomic::{cyclotomic_polynomial, CycloError, Cyclotomic};
pub use matrix::Matrix;
pub use poly::MultiPoly;

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Elements of a cyclotomic field with rational coefficients.
pub type CycloNum = Cyclotomic<Rational>;
/// Algebraic integers of a cyclotomic field with machine-word coefficients.
pub type IntCyclo = Cyclotomic<i64>;
pub type CycloMatrix = Matrix<CycloNum>;
pub type RationalMatrix = Matrix<Rational>;
pub type CycloPoly = MultiPoly<CycloNum>;
pub type RationalPoly = MultiPoly<Rational>;
