//! Anti-spherical Kazhdan–Lusztig polynomials for Hermitian symmetric pairs.
//!
//! Two independent routes compute the light-leaves matrix `Δ` and its
//! factorisation `Δ = N × B`: a dynamic programme over paths in the extended
//! Bruhat graph ([`pathdelta`]) and closed formulas read off oriented
//! Temperley–Lieb diagrams ([`tangles`]).

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod cosetdiag;
pub mod coxeter;
pub mod error;
pub mod families;
pub mod heaps;
pub mod laurent;
pub mod pathdelta;
pub mod render;
pub mod tangles;
pub mod verify;

pub use error::{Error, Result};

/// Coefficients are arbitrary precision by default.
pub type Integer = num_bigint::BigInt;
pub type LaurentPoly = laurent::Laurent<Integer>;
pub type Matrix = laurent::SqMatrix<Integer>;
pub type KLMatrices = laurent::KLMatrices<Integer>;

/// Machine-word coefficients, for callers who know the entries are small.
pub type LaurentI64 = laurent::Laurent<i64>;
pub type MatrixI64 = laurent::SqMatrix<i64>;
