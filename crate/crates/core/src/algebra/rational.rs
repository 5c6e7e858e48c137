//! Helpers around [`BigRational`]: parsing, canonical formatting, decimal
//! rendering and simplest-rational search.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always kept in lowest terms with a positive
/// denominator by `num_rational`.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole_digits}{frac}").parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let r = Rational::new(digits, scale);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Canonical `"numerator/denominator"` rendering (the denominator is always
/// printed, so integers come out as `"3/1"`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Least common multiple of the denominators of `rs` (1 for an empty input).
pub fn common_denominator<'a>(rs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    rs.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// The rational with the smallest denominator (then smallest magnitude) in
/// the closed interval `[lo, hi]`.
pub fn simplest_in_closed(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_in_closed(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_in_closed(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// The simplest rational strictly inside `(lo, hi)`; `hi = None` means +∞.
pub fn simplest_in_open(lo: &Rational, hi: Option<&Rational>) -> Rational {
    if let Some(h) = hi {
        assert!(lo < h, "empty interval");
        if lo.is_negative() && h.is_positive() {
            return Rational::zero();
        }
        if !h.is_positive() {
            return -simplest_in_open(&-h, Some(&-lo));
        }
    } else if lo.is_negative() {
        return Rational::zero();
    }
    let fl = lo.floor();
    let next = &fl + Rational::one();
    match hi {
        None => next,
        Some(h) if &next < h => next,
        Some(h) => {
            // (lo, h) sits inside [fl, fl + 1]
            let gap = lo - &fl;
            let upper = if gap.is_zero() { None } else { Some(gap.recip()) };
            let inner = simplest_in_open(&(h - &fl).recip(), upper.as_ref());
            fl + inner.recip()
        }
    }
}

/// Decimal rendering of `r` rounded to `digits` significant digits.
/// Uses plain notation for moderate exponents and `e` notation otherwise.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e = estimate_exponent(&a);
    let ten = Rational::from_integer(BigInt::from(10));
    while pow_rat(&ten, e) > a {
        e -= 1;
    }
    while pow_rat(&ten, e + 1) <= a {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow_rat(&ten, shift);
    let mut m = round_half_up(&scaled);
    if m.to_string().len() > digits {
        // rounding carried into a new digit
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let body = if (-6..=15).contains(&e) {
        if e >= 0 {
            let e = e as usize;
            if s.len() > e + 1 {
                format!("{}.{}", &s[..=e], &s[e + 1..])
            } else {
                format!("{}{}", s, "0".repeat(e + 1 - s.len()))
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
        }
    } else if s.len() > 1 {
        format!("{}.{}e{}", &s[..1], &s[1..], e)
    } else {
        format!("{s}e{e}")
    };
    let body = trim_fraction(body);
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: String) -> String {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), Some(e.to_string())),
        None => (s, None),
    };
    let mant = if mant.contains('.') {
        mant.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        mant
    };
    match exp {
        Some(e) => format!("{mant}e{e}"),
        None => mant,
    }
}

fn estimate_exponent(a: &Rational) -> i64 {
    let nb = a.numer().bits() as i64;
    let db = a.denom().bits() as i64;
    ((nb - db) as f64 * std::f64::consts::LOG10_2).floor() as i64
}

fn pow_rat(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

fn round_half_up(r: &Rational) -> BigInt {
    let two = BigInt::from(2);
    (r.numer() * &two + r.denom()).div_floor(&(r.denom() * &two))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("0.57735").unwrap(), rat(57735, 100000));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&int(3)), "3/1");
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_in_closed(&rat(-1, 3), &rat(1, 5)), int(0));
        assert_eq!(simplest_in_closed(&rat(3, 10), &rat(2, 5)), rat(1, 3));
        assert_eq!(simplest_in_closed(&rat(-2, 5), &rat(-3, 10)), rat(-1, 3));
        assert_eq!(simplest_in_closed(&rat(7, 3), &rat(7, 3)), rat(7, 3));
        assert_eq!(simplest_in_open(&int(0), Some(&int(1))), rat(1, 2));
        assert_eq!(simplest_in_open(&int(1), Some(&int(2))), rat(3, 2));
        assert_eq!(simplest_in_open(&int(1), Some(&int(3))), int(2));
        assert_eq!(simplest_in_open(&rat(1, 3), Some(&rat(1, 2))), rat(2, 5));
        assert_eq!(simplest_in_open(&int(-2), Some(&int(0))), int(-1));
        assert_eq!(simplest_in_open(&rat(5, 2), None), int(3));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(format_decimal(&rat(2, 3), 3), "0.667");
        assert_eq!(format_decimal(&int(-1), 12), "-1");
        assert_eq!(format_decimal(&rat(99999, 100000), 3), "1");
        assert_eq!(format_decimal(&rat(12345, 1), 3), "12300");
        assert_eq!(format_decimal(&rat(1, 1000), 4), "0.001");
        assert_eq!(format_decimal(&Rational::from_integer(BigInt::from(10).pow(20)), 3), "1e20");
        assert_eq!(format_decimal(&rat(5, 4), 12), "1.25");
    }
}
