//! Exact real numbers of the form `Σ q_i √m_i` with rational `q_i` and
//! distinct squarefree positive integers `m_i`.
//!
//! Square roots of distinct squarefree integers are linearly independent
//! over ℚ, so the sparse representation is canonical and the zero test is
//! exact. Products only need gcds; factorization is needed once, when a
//! square root of a rational is introduced.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gaussian::rational_to_f64;
use crate::parse::format_rational;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Surd {
    /// squarefree radicand -> nonzero coefficient
    terms: BTreeMap<BigUint, BigRational>,
}

impl Surd {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = Self::zero();
        s.push(BigUint::one(), q);
        s
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()))
    }

    /// `√q` for a nonnegative rational `q`.
    pub fn sqrt(q: &BigRational) -> Result<Self> {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(p/d) = √(p·d) / d
        let p = q.numer().magnitude();
        let d = q.denom().magnitude();
        let (sp, mp) = squarefree_split(p)?;
        let (sd, md) = squarefree_split(d)?;
        // p·d = (sp·sd)² · mp·md, and mp·md = g²·(mp/g)(md/g)
        let g = mp.gcd(&md);
        let radicand = (&mp / &g) * (&md / &g);
        let coeff = BigRational::new(
            BigInt::from_biguint(Sign::Plus, sp * sd * g),
            BigInt::from_biguint(Sign::Plus, d.clone()),
        );
        let mut s = Self::zero();
        s.push(radicand, coeff);
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, q)| rational_to_f64(q) * sqrt_biguint_f64(m))
            .sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }

    fn push(&mut self, radicand: BigUint, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let remove = {
            let entry = self.terms.entry(radicand).or_insert_with(BigRational::zero);
            *entry += coeff;
            entry.is_zero()
        };
        if remove {
            self.terms.retain(|_, q| !q.is_zero());
        }
    }

    fn scale_term(&self, radicand: &BigUint, coeff: &BigRational) -> Self {
        let mut out = Self::zero();
        for (m, q) in &self.terms {
            let g = m.gcd(radicand);
            let r = (m / &g) * (radicand / &g);
            let k = q * coeff * BigRational::from_integer(BigInt::from_biguint(Sign::Plus, g));
            out.push(r, k);
        }
        out
    }
}

fn sqrt_biguint_f64(m: &BigUint) -> f64 {
    match m.to_f64() {
        Some(x) if x.is_finite() => libm::sqrt(x),
        _ => f64::INFINITY,
    }
}

impl fmt::Display for Surd {
    /// `0`, `1/2`, `-1/3*sqrt(2)+1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let qs = format_rational(q);
            if i > 0 && !q.is_negative() {
                out.push('+');
            }
            if m.is_one() {
                out.push_str(&qs);
            } else if q.is_one() {
                out.push_str(&alloc::format!("sqrt({m})"));
            } else if (-q).is_one() {
                out.push_str(&alloc::format!("-sqrt({m})"));
            } else {
                out.push_str(&alloc::format!("{qs}*sqrt({m})"));
            }
        }
        f.write_str(&out)
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, rhs: &'a Surd) -> Surd {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.push(m.clone(), q.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, rhs: &'a Surd) -> Surd {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.push(m.clone(), -q);
        }
        out
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, rhs: &'a Surd) -> Surd {
        let mut out = Surd::zero();
        for (m, q) in &rhs.terms {
            for (r, k) in self.scale_term(m, q).terms {
                out.push(r, k);
            }
        }
        out
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect(),
        }
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        &self + &rhs
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        &self - &rhs
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        &self * &rhs
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

/// Writes `n = s² · m` with `m` squarefree.
pub fn squarefree_split(n: &BigUint) -> Result<(BigUint, BigUint)> {
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut rest = n.clone();
    if rest.is_zero() {
        return Ok((BigUint::zero(), BigUint::one()));
    }
    let absorb = |p: BigUint, e: u32, square: &mut BigUint, free: &mut BigUint| {
        for _ in 0..e / 2 {
            *square *= &p;
        }
        if e % 2 == 1 {
            *free *= &p;
        }
    };
    // Trial division by 2 and odd numbers below 2^12.
    let mut p = 2u64;
    while p < 4096 {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            absorb(bp, e, &mut square, &mut free);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok((square, free));
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        // Every prime factor of `rest` exceeds 4095, so `root` is squarefree
        // up to its own square part; `s² · 1` is a valid split either way.
        square *= root;
        return Ok((square, free));
    }
    let Some(r) = rest.to_u64() else {
        return Err(Error::RadicandTooLarge);
    };
    let mut factors = Vec::new();
    factor_u64(r, &mut factors);
    factors.sort_unstable();
    let mut i = 0;
    while i < factors.len() {
        let mut j = i;
        while j < factors.len() && factors[j] == factors[i] {
            j += 1;
        }
        absorb(
            BigUint::from(factors[i]),
            (j - i) as u32,
            &mut square,
            &mut free,
        );
        i = j;
    }
    Ok((square, free))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard's rho; returns a nontrivial factor of an odd
/// composite `n`.
fn rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..core::cmp::min(128, r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if n.is_multiple_of(2) {
        out.push(2);
        factor_u64(n / 2, out);
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_roots_simplify() {
        assert_eq!(Surd::sqrt(&q(1, 4)).unwrap().as_rational(), Some(q(1, 2)));
        assert_eq!(Surd::sqrt(&q(8, 1)).unwrap().to_string(), "2*sqrt(2)");
        // √(2/9) = √2/3
        assert_eq!(Surd::sqrt(&q(2, 9)).unwrap().to_string(), "1/3*sqrt(2)");
        // √(3/16) = √3/4
        let s = Surd::sqrt(&q(3, 16)).unwrap();
        assert_eq!(s.to_string(), "1/4*sqrt(3)");
        assert_eq!((&s * &s).as_rational(), Some(q(3, 16)));
    }

    #[test]
    fn independent_radicals_do_not_cancel() {
        let r2 = Surd::sqrt(&q(2, 1)).unwrap();
        let r3 = Surd::sqrt(&q(3, 1)).unwrap();
        let r6 = Surd::sqrt(&q(6, 1)).unwrap();
        assert!(!(&r2 + &r3).is_zero());
        assert_eq!(&r2 * &r3, r6);
        let e = &(&r2 + &r3) * &(&r2 - &r3);
        assert_eq!(e.as_rational(), Some(q(-1, 1)));
        assert!((e.to_f64() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn factorization_of_large_semiprimes() {
        // 1_000_003 * 1_000_033 has no factor below 4096
        let n = BigUint::from(1_000_003u64 * 1_000_033u64 * 4);
        let (s, m) = squarefree_split(&n).unwrap();
        assert_eq!(s, BigUint::from(2u8));
        assert_eq!(m, BigUint::from(1_000_003u64 * 1_000_033u64));
        let sq = BigUint::from(1_000_003u64 * 1_000_003u64 * 7);
        let (s, m) = squarefree_split(&sq).unwrap();
        assert_eq!((s, m), (BigUint::from(1_000_003u64), BigUint::from(7u8)));
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751));
    }
}
