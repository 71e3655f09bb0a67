//! Exact rational scalars and decimal-string conversion.
//!
//! Coefficients, strategy points, and weights in game files are decimal
//! strings; they parse exactly into [`Rat`] so that rank and reduction can
//! run in exact arithmetic. Fractions like `"2/3"` are accepted for values
//! with no finite decimal expansion, and the formatter emits a finite
//! decimal whenever the denominator is of the form 2^a·5^b, falling back to
//! `p/q` otherwise.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite `f64`.
pub fn from_f64_exact(x: f64) -> Result<Rat> {
    Rat::from_float(x).ok_or_else(|| Error::Validation(format!("non-finite value {x}")))
}

/// Parse a decimal string (optionally signed, optional fraction part and
/// exponent) or a `p/q` fraction into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty numeric string".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_plain_decimal(num)?;
        let d = parse_plain_decimal(den)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        return Ok(n / d);
    }
    parse_plain_decimal(s)
}

fn parse_plain_decimal(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid decimal '{s}'"));

    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };

    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };

    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }

    let joined = format!("{int_part}{frac_part}");
    let numer: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| bad())?
    };
    let scale = frac_part.len() as i64 - exp;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rat::new(numer, ten.pow(scale as u32))
    } else {
        Rat::from_integer(numer * ten.pow((-scale) as u32))
    };
    Ok(if sign < 0 { -value } else { value })
}

/// Render exactly: a finite decimal when the denominator is 2^a·5^b,
/// otherwise `p/q`.
pub fn format_exact(x: &Rat) -> String {
    let denom = x.denom();
    if denom.is_one() {
        return x.numer().to_string();
    }
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let mut d = denom.clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", x.numer(), x.denom());
    }
    // scale to 10^k with k = max(twos, fives)
    let k = twos.max(fives);
    let scale = two.pow(k - twos) * five.pow(k - fives);
    let scaled = (x.numer() * scale).abs().to_string();
    let k = k as usize;
    let digits = if scaled.len() <= k {
        format!("0.{}{}", "0".repeat(k - scaled.len()), scaled)
    } else {
        format!("{}.{}", &scaled[..scaled.len() - k], &scaled[scaled.len() - k..])
    };
    let digits = digits.trim_end_matches('0').trim_end_matches('.').to_string();
    if x.is_negative() {
        format!("-{digits}")
    } else {
        digits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_decimal("0.5532").unwrap(), rat(5532, 10000));
        assert_eq!(parse_decimal("-1").unwrap(), rat_i64(-1));
        assert_eq!(parse_decimal("+3.").unwrap(), rat_i64(3));
        assert_eq!(parse_decimal(".25").unwrap(), rat(1, 4));
        assert_eq!(parse_decimal("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_decimal("2.5e2").unwrap(), rat_i64(250));
        assert_eq!(parse_decimal("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_decimal("-7/2").unwrap(), rat(-7, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1.2.3", "1/0", "--4", "1e", "."] {
            assert!(parse_decimal(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn formats_round_trip() {
        for s in ["0.5532", "-1", "0.0001", "3", "-0.75", "12.125"] {
            let r = parse_decimal(s).unwrap();
            assert_eq!(parse_decimal(&format_exact(&r)).unwrap(), r);
        }
        assert_eq!(format_exact(&rat(1, 3)), "1/3");
        assert_eq!(format_exact(&rat(-1, 6)), "-1/6");
        assert_eq!(format_exact(&rat(1, 4)), "0.25");
        assert_eq!(format_exact(&rat_i64(0)), "0");
    }
}
