//! Singular values by one-sided (Hestenes) Jacobi rotations.
//!
//! One-sided Jacobi orthogonalizes the columns directly, so tiny singular
//! values come out with high relative accuracy; going through `A*A` would
//! square the condition number and blur rank decisions near `1e-8`.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::DenseMatrix;

const MAX_SWEEPS: usize = 60;

/// Singular values in decreasing order.
pub fn singular_values(a: &DenseMatrix<Complex64>) -> Vec<f64> {
    // work on the orientation with fewer columns
    let m = if a.cols() > a.rows() {
        a.adjoint()
    } else {
        a.clone()
    };
    let (rows, cols) = (m.rows(), m.cols());
    let mut columns: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..rows).map(|i| *m.get(i, j)).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&columns[p], &columns[q]);
                    let alpha: f64 = cp.iter().map(Complex64::norm_sqr).sum();
                    let beta: f64 = cq.iter().map(Complex64::norm_sqr).sum();
                    let gamma: Complex64 = cp.iter().zip(cq).map(|(x, y)| x.conj() * y).sum();
                    (alpha, beta, gamma)
                };
                let g = gamma.norm();
                if g <= f64::EPSILON * libm::sqrt(alpha * beta) || g == 0.0 {
                    continue;
                }
                rotated = true;
                // rotate (a_p, e^{-iφ} a_q), whose inner product is real
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = libm::copysign(1.0, zeta) / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                let (left, right) = columns.split_at_mut(q);
                for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let yq = *y * phase.conj();
                    let xp = *x;
                    *x = xp * c - yq * s;
                    *y = xp * s + yq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = columns
        .iter()
        .map(|c| libm::sqrt(c.iter().map(Complex64::norm_sqr).sum()))
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Rank with a relative cutoff and an ambiguity band.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericalRank {
    pub rank: usize,
    /// `min(rows, cols) − rank`
    pub rank_deficiency: usize,
    /// Some singular value lies in `[zero_tol, ambiguous_tol) · σ_max`.
    pub indeterminate: bool,
    pub singular_values: Vec<f64>,
}

/// Singular values below `zero_tol · σ_max` count as zero.
pub fn numerical_rank(
    a: &DenseMatrix<Complex64>,
    zero_tol: f64,
    ambiguous_tol: f64,
) -> NumericalRank {
    numerical_rank_at_scale(a, 0.0, zero_tol, ambiguous_tol)
}

/// As [`numerical_rank`] with the cutoffs relative to `max(σ_max, scale)`.
/// A known lower bound on the norm of a nonzero matrix keeps rounding noise
/// in a matrix that is exactly zero from counting as rank.
pub fn numerical_rank_at_scale(
    a: &DenseMatrix<Complex64>,
    scale: f64,
    zero_tol: f64,
    ambiguous_tol: f64,
) -> NumericalRank {
    let sv = singular_values(a);
    let reference = sv.first().copied().unwrap_or(0.0).max(scale);
    let (rank, indeterminate) = if reference == 0.0 {
        (0, false)
    } else {
        let rank = sv.iter().filter(|&&s| s >= zero_tol * reference).count();
        let ambiguous = sv
            .iter()
            .any(|&s| s >= zero_tol * reference && s < ambiguous_tol * reference);
        (rank, ambiguous)
    };
    NumericalRank {
        rank,
        rank_deficiency: a.rows().min(a.cols()) - rank,
        indeterminate,
        singular_values: sv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_and_rank_one() {
        let d = DenseMatrix::from_rows(vec![
            vec![c(3.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, -4.0)],
        ])
        .unwrap();
        let sv = singular_values(&d);
        assert!((sv[0] - 4.0).abs() < 1e-14 && (sv[1] - 3.0).abs() < 1e-14);

        // u v* with |u| = √2, |v| = √3
        let u = [c(1.0, 0.0), c(0.0, 1.0)];
        let v = [c(1.0, 1.0), c(0.0, 0.0), c(-1.0, 0.0)];
        let a = DenseMatrix::from_fn(2, 3, |i, j| u[i] * v[j].conj());
        let r = numerical_rank(&a, 1e-8, 1e-6);
        assert_eq!(r.rank, 1);
        assert_eq!(r.rank_deficiency, 1);
        assert!(!r.indeterminate);
        assert!((r.singular_values[0] - libm::sqrt(6.0)).abs() < 1e-13);
    }

    #[test]
    fn ambiguity_band() {
        let a = DenseMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1e-7, 0.0)],
        ])
        .unwrap();
        let r = numerical_rank(&a, 1e-8, 1e-6);
        assert!(r.indeterminate);
        assert_eq!(
            numerical_rank(&DenseMatrix::zeros(3, 3), 1e-8, 1e-6).rank,
            0
        );

        // rounding noise alone has full relative rank, but not at unit scale
        let noise = DenseMatrix::from_fn(3, 3, |i, j| c(if i == j { 1e-16 } else { 0.0 }, 0.0));
        assert_eq!(numerical_rank(&noise, 1e-8, 1e-6).rank, 3);
        assert_eq!(numerical_rank_at_scale(&noise, 1.0, 1e-8, 1e-6).rank, 0);
    }

    #[test]
    fn complex_nonnormal() {
        // [[1, i], [0, 1]]: σ² are roots of x² − 3x + 1
        let a = DenseMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let sv = singular_values(&a);
        let big = libm::sqrt((3.0 + libm::sqrt(5.0)) / 2.0);
        assert!((sv[0] - big).abs() < 1e-14);
        assert!((sv[0] * sv[1] - 1.0).abs() < 1e-14);
    }
}
