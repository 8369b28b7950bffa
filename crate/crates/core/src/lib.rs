//! Exact computation of the index obstruction for diagonals of normal
//! operators whose spectrum is the vertex set of a convex polygon.
//!
//! Given the vertex set `X = {λ_1, …, λ_N}` of a convex polygon and a
//! sequence `d` with values in the polygon that accumulates summably fast
//! onto `X`, the crate computes the renormalized sum `s(d)` as an element
//! of `Γ_X = ℂ / K_X`, where `K_X` is the group of integer combinations
//! `Σ ν_k λ_k` with `Σ ν_k = 0`. A nonzero `s(d)` proves that `d` is not the
//! diagonal of any normal operator with spectrum `X` of uniformly infinite
//! multiplicity.
//!
//! All decision procedures run in exact Gaussian-rational arithmetic. Square
//! roots are avoided by comparing squared moduli, or, where a construction
//! genuinely needs them (diagonal realization by rotations), carried exactly
//! as [`Surd`] values.
//!
//! Modules:
//!
//! * [`geometry`]: vertex sets, distances, the vanishing polynomial.
//! * [`sequence`]: head + periodic tail encoding of infinite sequences.
//! * [`lattice`]: `K_X` in Hermite normal form, `Γ_X` cosets, verdicts.
//! * [`decomposition`]: barycentric X-decompositions and the simplex constant.
//! * [`matrix`]: the finite-dimensional verification bench.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// Errors carry exact witnesses (separating half-planes) by value.
#![allow(clippy::result_large_err)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod decomposition;
pub mod error;
pub mod gaussian;
pub mod geometry;
pub mod lattice;
pub mod matrix;
pub mod parse;
pub mod sequence;
pub mod surd;

pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use surd::Surd;

pub use decomposition::{
    barycentric, decompose, simplex_constant, verify_xd_theorem, SimplexConstant, XDecomposition,
    XdTheoremReport,
};
pub use geometry::{FloatVertexSet, HalfPlane, VertexSet};
pub use lattice::{
    obstruction_verdict, renormalized_sum, surjectivity_witness, Certificate, GammaElement,
    KxLattice, RenormalizedSum, Verdict, VerdictReport,
};
pub use matrix::{DenseMatrix, Scalar};
pub use sequence::{
    lim1_diagnostic, nearest_assignment, Lim1Diagnostic, TailedSequence, VertexAssignment,
};
