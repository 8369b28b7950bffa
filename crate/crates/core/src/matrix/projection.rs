//! Projections, the diagonal conditional expectation, and the index of a
//! pair of projections.

use num_complex::Complex64;

use super::svd::{numerical_rank, numerical_rank_at_scale};
use super::{DenseMatrix, Scalar};
use crate::error::{Error, Result};

/// Relative singular-value thresholds for rank decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankTolerance {
    /// Below `zero · σ_max` a singular value is zero.
    pub zero: f64,
    /// In `[zero, ambiguous) · σ_max` the rank is indeterminate.
    pub ambiguous: f64,
}

impl Default for RankTolerance {
    fn default() -> Self {
        Self {
            zero: 1e-8,
            ambiguous: 1e-6,
        }
    }
}

/// Both sides of `tr((P − E(P))²) = tr(E(P) − E(P)²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationIdentity<T> {
    pub lhs: T,
    pub rhs: T,
    pub difference: T,
}

pub fn check_pllem1<T: Scalar>(p: &DenseMatrix<T>) -> Result<ExpectationIdentity<T>> {
    let e = p.conditional_expectation()?;
    let off = p.sub(&e)?;
    let lhs = off.mul(&off)?.trace();
    let rhs = e.sub(&e.mul(&e)?)?.trace();
    let difference = lhs.sub(&rhs);
    Ok(ExpectationIdentity {
        lhs,
        rhs,
        difference,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionPair {
    p: DenseMatrix<Complex64>,
    q: DenseMatrix<Complex64>,
}

impl ProjectionPair {
    /// Accepts `P`, `Q` when both are square of the same size and
    /// `‖X² − X‖_F`, `‖X − X*‖_F` are at most `tol`.
    pub fn new(p: DenseMatrix<Complex64>, q: DenseMatrix<Complex64>, tol: f64) -> Result<Self> {
        for (which, m) in [("P", &p), ("Q", &q)] {
            if !m.is_square() {
                return Err(Error::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            let (idempotence, hermiticity) = m.projection_defects();
            if idempotence > tol || hermiticity > tol {
                return Err(Error::NotProjection {
                    which,
                    idempotence,
                    hermiticity,
                });
            }
        }
        if p.rows() != q.rows() {
            return Err(Error::DimensionMismatch {
                expected: (p.rows(), p.cols()),
                found: (q.rows(), q.cols()),
            });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &DenseMatrix<Complex64> {
        &self.p
    }

    pub fn q(&self) -> &DenseMatrix<Complex64> {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairIndexReport {
    pub n: usize,
    /// `tr(QPQ + Q⊥PQ⊥ − Q)`
    pub trace: f64,
    /// `dim(M ∩ N⊥)`, the nullity of `(1 − P) + Q`.
    pub dim_m_cap_n_perp: usize,
    /// `dim(N ∩ M⊥)`, the nullity of `(1 − Q) + P`.
    pub dim_n_cap_m_perp: usize,
    /// Distance of the trace to the nearest integer.
    pub integer_defect: f64,
    /// `|trace − (dim(M∩N⊥) − dim(N∩M⊥))|`
    pub identity_defect: f64,
    pub indeterminate: bool,
}

impl PairIndexReport {
    pub fn index(&self) -> i64 {
        self.dim_m_cap_n_perp as i64 - self.dim_n_cap_m_perp as i64
    }

    pub fn passed(&self, tol: f64) -> bool {
        !self.indeterminate && self.integer_defect <= tol && self.identity_defect <= tol
    }
}

pub fn pair_index(pair: &ProjectionPair, tol: RankTolerance) -> PairIndexReport {
    let n = pair.dim();
    let (p, q) = (&pair.p, &pair.q);
    let one = DenseMatrix::<Complex64>::identity(n);
    let q_perp = one.sub(q).expect("same shape");
    let p_perp = one.sub(p).expect("same shape");
    let sandwich =
        |a: &DenseMatrix<Complex64>| a.mul(p).and_then(|m| m.mul(a)).expect("same shape");
    let t = sandwich(q)
        .add(&sandwich(&q_perp))
        .and_then(|m| m.sub(q))
        .expect("same shape");
    let trace = t.trace().re;

    // a nonzero sum of two projections has norm in [1, 2]
    let r1 = numerical_rank_at_scale(
        &p_perp.add(q).expect("same shape"),
        1.0,
        tol.zero,
        tol.ambiguous,
    );
    let r2 = numerical_rank_at_scale(
        &q_perp.add(p).expect("same shape"),
        1.0,
        tol.zero,
        tol.ambiguous,
    );
    let dim_m_cap_n_perp = r1.rank_deficiency;
    let dim_n_cap_m_perp = r2.rank_deficiency;
    let index = dim_m_cap_n_perp as f64 - dim_n_cap_m_perp as f64;
    PairIndexReport {
        n,
        trace,
        dim_m_cap_n_perp,
        dim_n_cap_m_perp,
        integer_defect: (trace - libm::round(trace)).abs(),
        identity_defect: (trace - index).abs(),
        indeterminate: r1.indeterminate || r2.indeterminate,
    }
}

/// `tr(1_H − A*A) − tr(1_K − AA*)` against `dim ker A − dim ker A*` for
/// `A: ℂⁿ → ℂᵐ`; in finite dimensions both equal `n − m`.
#[derive(Clone, Debug, PartialEq)]
pub struct FredholmReport {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub trace_side: f64,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    pub defect: f64,
    pub indeterminate: bool,
}

impl FredholmReport {
    pub fn index(&self) -> i64 {
        self.kernel_dim as i64 - self.cokernel_dim as i64
    }
}

pub fn fredholm_identity(a: &DenseMatrix<Complex64>, tol: RankTolerance) -> FredholmReport {
    let (m, n) = (a.rows(), a.cols());
    let star = a.adjoint();
    let tr_h = n as f64 - star.mul(a).expect("shapes agree").trace().re;
    let tr_k = m as f64 - a.mul(&star).expect("shapes agree").trace().re;
    let trace_side = tr_h - tr_k;
    let r = numerical_rank(a, tol.zero, tol.ambiguous);
    let kernel_dim = n - r.rank;
    let cokernel_dim = m - r.rank;
    FredholmReport {
        domain_dim: n,
        codomain_dim: m,
        trace_side,
        kernel_dim,
        cokernel_dim,
        defect: (trace_side - (kernel_dim as f64 - cokernel_dim as f64)).abs(),
        indeterminate: r.indeterminate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::GaussianRational;
    use alloc::vec;
    use num_rational::BigRational;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn expectation_identity_examples() {
        let id = DenseMatrix::<GaussianRational>::identity(3);
        let r = check_pllem1(&id).unwrap();
        assert!(r.lhs.is_zero() && r.rhs.is_zero());

        let half = GaussianRational::real(BigRational::new(1.into(), 2.into()));
        let p = DenseMatrix::from_rows(vec![
            vec![half.clone(), half.clone()],
            vec![half.clone(), half.clone()],
        ])
        .unwrap();
        let r = check_pllem1(&p).unwrap();
        assert_eq!(r.lhs, half);
        assert_eq!(r.rhs, half);
        assert!(r.difference.is_zero());
        let e = p.conditional_expectation().unwrap();
        assert_eq!(e.diagonal(), vec![half.clone(), half]);
    }

    #[test]
    fn index_examples() {
        let id = DenseMatrix::<Complex64>::identity(2);
        let q = DenseMatrix::diagonal_matrix(&[c(1.0), c(0.0)]);
        let same = pair_index(
            &ProjectionPair::new(q.clone(), q.clone(), 1e-10).unwrap(),
            RankTolerance::default(),
        );
        assert_eq!((same.trace, same.index()), (0.0, 0));

        let r = pair_index(
            &ProjectionPair::new(id, q, 1e-10).unwrap(),
            RankTolerance::default(),
        );
        assert!((r.trace - 1.0).abs() < 1e-15);
        assert_eq!((r.dim_m_cap_n_perp, r.dim_n_cap_m_perp), (1, 0));
        assert!(r.passed(1e-6));

        // P = 1 up to rounding, Q = 0: (1 − P) + Q is pure noise
        let wobble = c(1e-17);
        let p = DenseMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                c(1.0)
            } else if i + j == 1 {
                wobble
            } else {
                c(0.0)
            }
        });
        let r = pair_index(
            &ProjectionPair::new(p, DenseMatrix::zeros(3, 3), 1e-10).unwrap(),
            RankTolerance::default(),
        );
        assert_eq!(
            (r.dim_m_cap_n_perp, r.dim_n_cap_m_perp, r.index()),
            (3, 0, 3)
        );
        assert!(r.passed(1e-6));

        let not_p = DenseMatrix::diagonal_matrix(&[c(2.0), c(0.0)]);
        assert!(matches!(
            ProjectionPair::new(not_p, DenseMatrix::identity(2), 1e-10),
            Err(Error::NotProjection { which: "P", .. })
        ));
    }

    #[test]
    fn fredholm_examples() {
        let r = fredholm_identity(&DenseMatrix::identity(3), RankTolerance::default());
        assert_eq!((r.trace_side, r.index()), (0.0, 0));
        let zero = DenseMatrix::<Complex64>::zeros(3, 2);
        let r = fredholm_identity(&zero, RankTolerance::default());
        assert_eq!((r.kernel_dim, r.cokernel_dim), (2, 3));
        assert_eq!(r.trace_side, -1.0);
        assert_eq!(r.defect, 0.0);
    }
}
