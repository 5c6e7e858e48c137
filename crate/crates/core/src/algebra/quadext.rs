//! Elements `a + b√d` of a real quadratic field with one fixed radicand.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, sign, to_f64, Rational};
use crate::error::{Error, Result};

/// `a + b·√d` with `d` a positive squarefree integer; `d = 1` with `b = 0`
/// encodes a plain rational.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders as `(a,b)`, the pair of rational coordinates over `{1, √d}`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Splits `n > 0` as `s² · r` with `r` squarefree; returns `(s, r)`.
fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut r = BigInt::one();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while m.is_multiple_of(&p) {
            m /= &p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= &p;
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    (s, r * m)
}

impl QuadExt {
    pub fn from_rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: BigInt::one(),
        }
    }

    /// `a + b√d` for any positive rational `d`, normalised so the stored
    /// radicand is a squarefree integer.
    pub fn new(a: Rational, b: Rational, d: &Rational) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "radicand must be positive, got {}",
                format_rational(d)
            )));
        }
        // √(n/m) = √(n m) / m
        let nm = d.numer() * d.denom();
        let (s, r) = square_split(&nm);
        let scale = Rational::new(s, d.denom().clone());
        let b = b * scale;
        if r.is_one() {
            return Ok(QuadExt::from_rational(a + b));
        }
        Ok(QuadExt::norm(a, b, r))
    }

    /// `√q` for a nonnegative rational `q`.
    pub fn sqrt_of(q: &Rational) -> Result<Self> {
        if q.is_zero() {
            return Ok(QuadExt::from_rational(Rational::zero()));
        }
        QuadExt::new(Rational::zero(), Rational::one(), q)
    }

    fn norm(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() {
            QuadExt::from_rational(a)
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Squarefree radicand, `1` for a rational element.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The radicand shared by `self` and `o`, or an error if both carry
    /// different radicals.
    fn common_d(&self, o: &QuadExt) -> Result<BigInt> {
        match (self.is_rational(), o.is_rational()) {
            (true, _) => Ok(o.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == o.d => Ok(self.d.clone()),
            _ => Err(Error::MixedRadicals(
                format!("sqrt({})", self.d),
                format!("sqrt({})", o.d),
            )),
        }
    }

    pub fn try_add(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.common_d(o)?;
        Ok(QuadExt::norm(&self.a + &o.a, &self.b + &o.b, d))
    }

    pub fn try_sub(&self, o: &QuadExt) -> Result<QuadExt> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.common_d(o)?;
        let dr = Rational::from_integer(d.clone());
        let a = &self.a * &o.a + &self.b * &o.b * dr;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(QuadExt::norm(a, b, d))
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt::norm(self.a.clone(), -&self.b, self.d.clone())
    }

    /// Field norm `a² − d b²`.
    pub fn field_norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    pub fn inv(&self) -> Result<QuadExt> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        let n = self.field_norm();
        let c = self.conj();
        Ok(QuadExt::norm(&c.a / &n, &c.b / &n, c.d))
    }

    pub fn try_div(&self, o: &QuadExt) -> Result<QuadExt> {
        self.try_mul(&o.inv()?)
    }

    pub fn pow(&self, e: u32) -> QuadExt {
        let mut acc = QuadExt::from_rational(Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign of the real number `a + b√d`.
    pub fn signum(&self) -> i8 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with d b²
        let n = self.field_norm();
        if n.is_positive() {
            sa
        } else {
            sb
        }
    }

    pub fn to_f64(&self) -> f64 {
        let d = Rational::from_integer(self.d.clone());
        to_f64(&self.a) + to_f64(&self.b) * to_f64(&d).sqrt()
    }

    /// Name of the field the element lives in, `"Q"` or `"Q(sqrt(d))"`.
    pub fn field_name(&self) -> String {
        if self.is_rational() {
            "Q".into()
        } else {
            format!("Q(sqrt({}))", self.d)
        }
    }
}

/// Integer square root of a perfect square, if it is one.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Add for &QuadExt {
    type Output = QuadExt;
    /// Panics on mixed radicals; use [`QuadExt::try_add`] to handle them.
    fn add(self, o: &QuadExt) -> QuadExt {
        self.try_add(o).expect("mixed radicals")
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        self.try_sub(o).expect("mixed radicals")
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        self.try_mul(o).expect("mixed radicals")
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::norm(-&self.a, -&self.b, self.d.clone())
    }
}
