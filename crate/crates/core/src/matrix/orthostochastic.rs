//! Whether a 3×3 doubly stochastic matrix is `|u_ij|²` for a unitary `U`.
//!
//! Two rows `u_i`, `u_j` of such a `U` are orthogonal, so the three
//! complex numbers `conj(u_ik) u_jk` close up to a triangle whose side
//! lengths are `√(a_ik a_jk)`. Conversely if the lengths from rows 1 and 2
//! satisfy the triangle inequality, phases can be chosen to make those two
//! rows orthonormal, and the third row is forced to be their cross product,
//! whose moduli squared are the remaining entries.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::gaussian::rational_to_f64;
use crate::surd::Surd;

#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryWitness {
    pub unitary: DenseMatrix<Complex64>,
    /// `‖U*U − I‖_F`
    pub unitarity_defect: f64,
    /// `max_ij ||u_ij|² − a_ij|`
    pub modulus_defect: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum OrthostochasticVerdict {
    Orthostochastic(UnitaryWitness),
    /// The side lengths for `rows` (0-based) violate the triangle inequality.
    NotOrthostochastic {
        rows: (usize, usize),
        /// `a_ik a_jk`
        products: [BigRational; 3],
        /// `√(a_ik a_jk)`
        lengths: [Surd; 3],
    },
}

impl OrthostochasticVerdict {
    pub fn is_orthostochastic(&self) -> bool {
        matches!(self, Self::Orthostochastic(_))
    }
}

/// `√p1 ≤ √p2 + √p3`, decided exactly.
fn side_fits(p1: &BigRational, p2: &BigRational, p3: &BigRational) -> bool {
    let excess = p1 - p2 - p3;
    if !excess.is_positive() {
        return true;
    }
    let four = BigRational::from_integer(4.into());
    &excess * &excess <= four * p2 * p3
}

fn triangle(products: &[BigRational; 3]) -> bool {
    let [a, b, c] = products;
    side_fits(a, b, c) && side_fits(b, a, c) && side_fits(c, a, b)
}

pub fn orthostochastic_test_3x3(a: &[[BigRational; 3]; 3]) -> Result<OrthostochasticVerdict> {
    let one = BigRational::one();
    for (i, row) in a.iter().enumerate() {
        if let Some(j) = row.iter().position(Signed::is_negative) {
            return Err(Error::NotDoublyStochastic {
                reason: format!("entry ({}, {}) is negative", i + 1, j + 1),
            });
        }
        if row.iter().sum::<BigRational>() != one {
            return Err(Error::NotDoublyStochastic {
                reason: format!("row {} does not sum to 1", i + 1),
            });
        }
    }
    for j in 0..3 {
        if a.iter().map(|row| &row[j]).sum::<BigRational>() != one {
            return Err(Error::NotDoublyStochastic {
                reason: format!("column {} does not sum to 1", j + 1),
            });
        }
    }

    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let products: [BigRational; 3] = core::array::from_fn(|k| &a[i][k] * &a[j][k]);
        if !triangle(&products) {
            let lengths = products.clone().map(|p| Surd::sqrt(&p));
            let lengths = match lengths {
                [Ok(x), Ok(y), Ok(z)] => [x, y, z],
                _ => return Err(Error::RadicandTooLarge),
            };
            return Ok(OrthostochasticVerdict::NotOrthostochastic {
                rows: (i, j),
                products,
                lengths,
            });
        }
    }
    Ok(OrthostochasticVerdict::Orthostochastic(witness(a)))
}

fn witness(a: &[[BigRational; 3]; 3]) -> UnitaryWitness {
    let f: [[f64; 3]; 3] =
        core::array::from_fn(|i| core::array::from_fn(|j| rational_to_f64(&a[i][j])));
    let u1: [Complex64; 3] = core::array::from_fn(|k| Complex64::new(libm::sqrt(f[0][k]), 0.0));
    let l: [f64; 3] = core::array::from_fn(|k| libm::sqrt(f[0][k] * f[1][k]));

    // v_k = l_k e^{iφ_k} with v_1 + v_2 + v_3 = 0 and φ_1 = 0
    let mut phases = [0.0f64; 3];
    if l[0] == 0.0 {
        phases[2] = core::f64::consts::PI;
    } else {
        let theta = if l[1] == 0.0 {
            0.0
        } else {
            let cos = (l[2] * l[2] - l[0] * l[0] - l[1] * l[1]) / (2.0 * l[0] * l[1]);
            libm::acos(cos.clamp(-1.0, 1.0))
        };
        phases[1] = theta;
        let v3 = -(Complex64::new(l[0], 0.0) + Complex64::from_polar(l[1], theta));
        phases[2] = if l[2] == 0.0 { 0.0 } else { v3.arg() };
    }
    let u2: [Complex64; 3] =
        core::array::from_fn(|k| Complex64::from_polar(libm::sqrt(f[1][k]), phases[k]));
    let cross = [
        u1[1] * u2[2] - u1[2] * u2[1],
        u1[2] * u2[0] - u1[0] * u2[2],
        u1[0] * u2[1] - u1[1] * u2[0],
    ];
    let u3 = cross.map(|z| z.conj());
    let rows: Vec<Vec<Complex64>> = [u1, u2, u3].iter().map(|r| r.to_vec()).collect();
    let unitary = DenseMatrix::from_rows(rows).expect("3×3");

    let gram = unitary.adjoint().mul(&unitary).expect("3×3");
    let unitarity_defect = gram
        .sub(&DenseMatrix::identity(3))
        .expect("3×3")
        .frobenius_norm();
    let modulus_defect = (0..9)
        .map(|k| (unitary.get(k / 3, k % 3).norm_sqr() - f[k / 3][k % 3]).abs())
        .fold(0.0f64, f64::max);
    UnitaryWitness {
        unitary,
        unitarity_defect,
        modulus_defect,
    }
}
