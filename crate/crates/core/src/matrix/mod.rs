//! Small dense matrices and the finite-dimensional checks built on them.
//!
//! [`DenseMatrix`] is generic over [`Scalar`], implemented for `Complex64`
//! (randomized float trials), [`GaussianRational`] and [`Surd`] (exact
//! constructions).

mod counterexample;
mod kadison;
mod orthostochastic;
mod projection;
mod realize;
mod svd;

pub use counterexample::{cvprop1_counterexample, CounterexampleReport};
pub use kadison::{kadison_classifier, KadisonReport};
pub use orthostochastic::{orthostochastic_test_3x3, OrthostochasticVerdict, UnitaryWitness};
pub use projection::{
    check_pllem1, fredholm_identity, pair_index, ExpectationIdentity, FredholmReport,
    PairIndexReport, ProjectionPair, RankTolerance,
};
pub use realize::{realize_diagonal_01, Realization, RealizedProjection};
pub use svd::{numerical_rank, numerical_rank_at_scale, singular_values, NumericalRank};

use alloc::vec::Vec;
use core::fmt::Debug;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::surd::Surd;

/// Field operations needed by the generic matrix code.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for Surd {
    fn zero() -> Self {
        Surd::zero()
    }
    fn one() -> Self {
        Surd::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
    }
}

/// Row-major `rows × cols` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: (r, c),
                found: (r, bad.len()),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal_matrix(d: &[T]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                d[i].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: (self.cols, other.cols),
                found: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: (self.rows, self.cols),
                found: (other.rows, other.cols),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, T::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, T::sub)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Keeps the diagonal and zeroes everything else.
    pub fn conditional_expectation(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(Self::diagonal_matrix(&self.diagonal()))
    }

    /// `P² = P = P*`, decided exactly for exact scalars.
    pub fn is_exact_projection(&self) -> bool {
        self.is_square()
            && self.adjoint() == *self
            && self.mul(self).map(|sq| sq == *self).unwrap_or(false)
    }
}

impl DenseMatrix<Complex64> {
    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(Complex64::norm_sqr).sum())
    }

    /// `(‖P² − P‖_F, ‖P − P*‖_F)`.
    pub fn projection_defects(&self) -> (f64, f64) {
        let sq = self.mul(self).expect("square");
        let idem = sq.sub(self).expect("same shape").frobenius_norm();
        let herm = self
            .sub(&self.adjoint())
            .expect("same shape")
            .frobenius_norm();
        (idem, herm)
    }

    pub fn is_projection(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let (idem, herm) = self.projection_defects();
        idem <= tol && herm <= tol
    }

    /// Orthogonal projection onto the span of the given orthonormal columns.
    pub fn projection_onto(columns: &[Vec<Complex64>], n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            columns.iter().map(|c| c[i] * c[j].conj()).sum()
        })
    }
}

impl DenseMatrix<GaussianRational> {
    pub fn to_complex(&self) -> DenseMatrix<Complex64> {
        self.map(GaussianRational::to_complex64)
    }
}

impl DenseMatrix<Surd> {
    pub fn to_complex(&self) -> DenseMatrix<Complex64> {
        self.map(|s| Complex64::new(s.to_f64(), 0.0))
    }
}

/// Modified Gram–Schmidt with one reorthogonalization pass. Columns that
/// are numerically dependent are dropped.
pub fn orthonormalize(vectors: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        let original = libm::sqrt(w.iter().map(Complex64::norm_sqr).sum());
        for _ in 0..2 {
            for q in &out {
                let dot: Complex64 = q.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= dot * qi;
                }
            }
        }
        let norm = libm::sqrt(w.iter().map(Complex64::norm_sqr).sum());
        if norm > 1e-10 * original.max(f64::MIN_POSITIVE) {
            out.push(w.into_iter().map(|x| x / norm).collect());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_products_and_projections() {
        let half = GaussianRational::real(q(1, 2));
        let p = DenseMatrix::from_rows(vec![
            vec![half.clone(), half.clone()],
            vec![half.clone(), half],
        ])
        .unwrap();
        assert!(p.is_exact_projection());
        assert_eq!(p.trace(), GaussianRational::one());
        let e = p.conditional_expectation().unwrap();
        assert_eq!(e.get(0, 1), &GaussianRational::zero());
        assert_eq!(e.trace(), p.trace());
        let not_p = DenseMatrix::<GaussianRational>::identity(2)
            .add(&p)
            .unwrap();
        assert!(!not_p.is_exact_projection());
        assert!(DenseMatrix::<GaussianRational>::zeros(2, 3)
            .mul(&p)
            .is_err());
    }

    #[test]
    fn float_helpers() {
        let cols = orthonormalize(&[
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(2.0, 2.0),
                Complex64::new(0.0, 0.0),
            ],
            vec![
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(3.0, 0.0),
            ],
        ]);
        assert_eq!(cols.len(), 2);
        let p = DenseMatrix::projection_onto(&cols, 3);
        assert!(p.is_projection(1e-12));
        assert!((p.trace().re - 2.0).abs() < 1e-12);
    }
}
