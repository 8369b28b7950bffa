//! Exact complex numbers `a + bi` with rational `a`, `b`.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::parse::{format_rational, parse_rational, ParseRationalError};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    /// `(re_num/re_den) + (im_num/im_den) i`.
    pub fn from_fracs(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    /// Real dot product of `self` and `other` viewed as vectors in ℚ².
    pub fn dot(&self, other: &Self) -> BigRational {
        &self.re * &other.re + &self.im * &other.im
    }

    /// `Im(conj(self) · other)`: the 2-D cross product.
    pub fn cross(&self, other: &Self) -> BigRational {
        &self.re * &other.im - &self.im * &other.re
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn parse(re: &str, im: &str) -> Result<Self, ParseRationalError> {
        Ok(Self::new(parse_rational(re)?, parse_rational(im)?))
    }

    pub fn re_string(&self) -> String {
        format_rational(&self.re)
    }

    pub fn im_string(&self) -> String {
        format_rational(&self.im)
    }
}

/// Nearest-double conversion that survives huge numerators and denominators.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both to ~64 significant bits before dividing.
    let nbits = q.numer().bits() as i64;
    let dbits = q.denom().bits() as i64;
    let shift = nbits - dbits;
    let scaled: BigInt = if shift > 64 {
        q.numer() / (q.denom() << ((shift - 64) as usize))
    } else {
        (q.numer() << ((64 - shift) as usize)) / q.denom()
    };
    let mantissa = scaled.to_f64().unwrap_or(0.0);
    libm::ldexp(mantissa, (shift - 64) as i32)
}

impl fmt::Display for GaussianRational {
    /// `1+1i`, `1/2-3/4i`, `0+0i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}i",
            format_rational(&self.re),
            sign,
            format_rational(&self.im.abs())
        )
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational::new(
    &a.re + &b.re,
    &a.im + &b.im
));
forward_binop!(Sub, sub, |a, b| GaussianRational::new(
    &a.re - &b.re,
    &a.im - &b.im
));
forward_binop!(Mul, mul, |a, b| GaussianRational::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl core::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, z| acc + z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn arithmetic_is_exact() {
        let a = GaussianRational::from_fracs((1, 2), (1, 3));
        let b = GaussianRational::from_fracs((-1, 4), (2, 1));
        // (1/2 + i/3)(-1/4 + 2i) = -1/8 - 2/3 + (1 - 1/12) i
        assert_eq!(&a * &b, GaussianRational::from_fracs((-19, 24), (11, 12)));
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(a.norm_sqr(), BigRational::new(13.into(), 36.into()));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_matches_report_format() {
        assert_eq!(GaussianRational::from_ints(1, 1).to_string(), "1+1i");
        assert_eq!(
            GaussianRational::from_fracs((1, 2), (-3, 4)).to_string(),
            "1/2-3/4i"
        );
        assert_eq!(GaussianRational::zero().to_string(), "0+0i");
    }

    #[test]
    fn float_conversion_of_huge_rationals() {
        let big = BigInt::from(10u8).pow(400u32);
        let q = BigRational::new(big.clone() * 3, big * 4);
        assert_eq!(rational_to_f64(&q), 0.75);
        let tiny = BigRational::new(1.into(), BigInt::from(2u8).pow(1100u32));
        assert_eq!(rational_to_f64(&tiny), 0.0);
        let third = BigRational::new(
            BigInt::from(10u8).pow(330u32),
            BigInt::from(10u8).pow(330u32) * 3,
        );
        assert!((rational_to_f64(&third) - 1.0 / 3.0).abs() < 1e-16);
    }
}
