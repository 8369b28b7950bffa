//! Exact projections with a prescribed diagonal.
//!
//! A diagonal `d ∈ [0,1]ⁿ` is the diagonal of a projection iff `Σ d_i` is
//! an integer. The construction pairs the two lowest-index fractional
//! entries `x, y` and rewrites them as `(0, x+y)` or `(1, x+y−1)`; a plane
//! rotation on those coordinates carries a projection with the new diagonal
//! to one with the old diagonal. Rotation entries are square roots of
//! rationals, so the result is carried exactly as [`Surd`] entries.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::surd::Surd;

/// `G = [[c, −s], [s, c]]` acting on coordinates `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rotation {
    pub i: usize,
    pub j: usize,
    pub c: Surd,
    pub s: Surd,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizedProjection {
    /// `P = U · diag(basis) · Uᵀ`
    pub matrix: DenseMatrix<Surd>,
    pub unitary: DenseMatrix<Surd>,
    /// The 0/1 diagonal the rotations start from.
    pub basis: Vec<bool>,
    pub rotations: Vec<Rotation>,
    pub rank: usize,
}

impl RealizedProjection {
    pub fn diagonal_matches(&self, d: &[BigRational]) -> bool {
        self.matrix.rows() == d.len()
            && self
                .matrix
                .diagonal()
                .iter()
                .zip(d)
                .all(|(p, q)| p.as_rational().as_ref() == Some(q))
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.transpose() == self.matrix
    }

    /// `UᵀU = I`, which together with the 0/1 middle factor makes `P` an
    /// exact projection of rank [`Self::rank`].
    pub fn unitary_is_orthogonal(&self) -> bool {
        self.unitary
            .transpose()
            .mul(&self.unitary)
            .map(|m| m == DenseMatrix::identity(self.unitary.rows()))
            .unwrap_or(false)
    }

    /// All of the above plus `P² = P` checked directly.
    pub fn verify(&self, d: &[BigRational]) -> bool {
        self.diagonal_matches(d)
            && self.is_symmetric()
            && self.unitary_is_orthogonal()
            && self.matrix.is_exact_projection()
            && self.matrix.trace().as_rational()
                == Some(BigRational::from_integer(self.rank.into()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Realization {
    Projection(RealizedProjection),
    /// `Σ d_i` is not an integer; `defect = Σ d_i mod 1`.
    Obstructed {
        sum: BigRational,
        defect: BigRational,
    },
}

pub fn realize_diagonal_01(d: &[BigRational]) -> Result<Realization> {
    let one = BigRational::one();
    if let Some(index) = d.iter().position(|x| x.is_negative() || *x > one) {
        return Err(Error::DiagonalOutOfRange { index });
    }
    let sum: BigRational = d.iter().sum();
    if !sum.is_integer() {
        let defect = &sum - sum.floor();
        return Ok(Realization::Obstructed { sum, defect });
    }

    let mut current = d.to_vec();
    let mut rotations = Vec::new();
    loop {
        let mut fractional = (0..current.len()).filter(|&k| !current[k].is_integer());
        let (Some(i), Some(j)) = (fractional.next(), fractional.next()) else {
            break;
        };
        let (x, y) = (current[i].clone(), current[j].clone());
        let total = &x + &y;
        let (c2, s2) = if total <= one {
            current[i] = BigRational::zero();
            current[j] = total.clone();
            (&y / &total, &x / &total)
        } else {
            let denom = BigRational::from_integer(2.into()) - &total;
            current[i] = one.clone();
            current[j] = &total - &one;
            ((&one - &y) / &denom, (&one - &x) / &denom)
        };
        rotations.push(Rotation {
            i,
            j,
            c: Surd::sqrt(&c2)?,
            s: Surd::sqrt(&s2)?,
        });
    }

    let n = d.len();
    let mut unitary = DenseMatrix::<Surd>::identity(n);
    for g in &rotations {
        for r in 0..n {
            let ui = unitary.get(r, g.i).clone();
            let uj = unitary.get(r, g.j).clone();
            unitary.set(r, g.i, &(&ui * &g.c) + &(&uj * &g.s));
            unitary.set(r, g.j, &(&uj * &g.c) - &(&ui * &g.s));
        }
    }
    let basis: Vec<bool> = current.iter().map(|v| v.is_one()).collect();
    let ones: Vec<usize> = (0..n).filter(|&k| basis[k]).collect();
    let matrix = DenseMatrix::from_fn(n, n, |a, b| {
        ones.iter().fold(Surd::zero(), |acc, &r| {
            &acc + &(unitary.get(a, r) * unitary.get(b, r))
        })
    });
    Ok(Realization::Projection(RealizedProjection {
        matrix,
        unitary,
        rank: ones.len(),
        basis,
        rotations,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::check_pllem1;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn realized(d: &[BigRational]) -> RealizedProjection {
        match realize_diagonal_01(d).unwrap() {
            Realization::Projection(p) => p,
            other => panic!("expected a projection, got {other:?}"),
        }
    }

    #[test]
    fn examples() {
        let d = [q(1, 1), q(0, 1), q(1, 1)];
        let p = realized(&d);
        assert!(p.rotations.is_empty());
        assert_eq!(
            p.matrix,
            DenseMatrix::diagonal_matrix(&[Surd::one(), Surd::zero(), Surd::one()])
        );

        let d = [q(1, 2), q(1, 2)];
        let p = realized(&d);
        assert!(p.verify(&d));
        let off = p.matrix.get(0, 1).as_rational().unwrap();
        assert_eq!(&off * &off, q(1, 4));

        assert_eq!(
            realize_diagonal_01(&[q(1, 2), q(1, 2), q(1, 2)]).unwrap(),
            Realization::Obstructed {
                sum: q(3, 2),
                defect: q(1, 2)
            }
        );
        assert_eq!(
            realize_diagonal_01(&[q(1, 2), q(3, 2)]).unwrap_err(),
            Error::DiagonalOutOfRange { index: 1 }
        );
    }

    #[test]
    fn irrational_entries() {
        // |P_12|² = (1/4)(3/4)
        let d = [q(1, 4), q(3, 4)];
        let p = realized(&d);
        assert!(p.verify(&d));
        let off = p.matrix.get(0, 1);
        assert!(off.as_rational().is_none());
        assert_eq!(off * off, Surd::from_rational(q(3, 16)));
        assert!(check_pllem1(&p.matrix).unwrap().difference.is_zero());
    }

    #[test]
    fn longer_chains() {
        let d = [q(1, 3), q(2, 5), q(0, 1), q(7, 9), q(1, 1), q(22, 45)];
        assert_eq!(d.iter().sum::<BigRational>(), q(3, 1));
        let p = realized(&d);
        assert_eq!(p.rank, 3);
        assert!(p.rotations.len() < d.len());
        assert!(p.verify(&d));
    }
}
