//! Exact parsing of rationals written as `"p/q"` or as decimal strings.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    input: String,
    reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot parse {:?} as a rational: {}",
            self.input, self.reason
        )
    }
}

impl core::error::Error for ParseRationalError {}

fn fail(input: &str, reason: &'static str) -> ParseRationalError {
    ParseRationalError {
        input: input.to_string(),
        reason,
    }
}

/// Parses `"3"`, `"-7/4"`, `"0.125"`, `"-1.5e-3"` exactly.
pub fn parse_rational(input: &str) -> Result<BigRational, ParseRationalError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(fail(input, "empty string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| fail(input, "bad numerator"))?;
        let den = BigInt::from_str(den.trim()).map_err(|_| fail(input, "bad denominator"))?;
        if den.is_zero() {
            return Err(fail(input, "zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(s).ok_or_else(|| fail(input, "expected p/q or a decimal number"))
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], i64::from_str(&s[pos + 1..]).ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let mut all = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    let mut numer = BigInt::from_str(&all).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent.checked_sub(frac_part.len() as i64)?;
    if scale.unsigned_abs() > 100_000 {
        return None;
    }
    let ten = BigInt::from(10u8);
    let power: BigInt = Pow::pow(&ten, scale.unsigned_abs());
    Some(if scale >= 0 {
        BigRational::from_integer(numer * power)
    } else {
        BigRational::new(numer, power)
    })
}

/// Formats `p/q`, or `p` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fractions_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational(" -6/8 ").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5e-3").unwrap(), q(-3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), q(200, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1.2.3", "-", "1e", "0x10", "."] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&q(3, 1)), "3");
        assert_eq!(format_rational(&q(-1, 2)), "-1/2");
    }
}
