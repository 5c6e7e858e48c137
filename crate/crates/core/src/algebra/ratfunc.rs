//! Univariate rational functions over ℚ in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;
use super::unipoly::UniPoly;

/// `num / den` with `den` monic and coprime to `num`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl RatFunc {
    /// Builds `num / den` and reduces it. Panics when `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let l = den.lc();
        if !l.is_one() {
            let inv = l.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The polynomial this function equals, if it is one.
    pub fn as_poly(&self) -> Option<&UniPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn inv(&self) -> Option<RatFunc> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, k: &Rational) -> RatFunc {
        if k.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    /// `(n/d)' = (n'd − nd') / d²`.
    pub fn derivative(&self) -> RatFunc {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(top, &self.den * &self.den)
    }

    /// Value at `t`, or `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t) / d)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.num.eval_f64(t) / self.den.eval_f64(t)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e as usize),
            den: self.den.pow(e as usize),
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero.
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.inv().expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn reduces_to_lowest_terms() {
        // (x² − 1) / (2x + 2) = (x − 1)/2
        let r = RatFunc::new(UniPoly::from_i64(&[-1, 0, 1]), UniPoly::from_i64(&[2, 2]));
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &UniPoly::new(vec![rat(-1, 2), rat(1, 2)]));
    }

    #[test]
    fn alpha_derivative() {
        // α = 1/(1 − 2x), α' = 2α²
        let a = RatFunc::new(UniPoly::one(), UniPoly::from_i64(&[1, -2]));
        assert_eq!(a.derivative(), (&a * &a).scale(&int(2)));
        assert_eq!(a.den(), &UniPoly::from_i64(&[-1, 2]).monic());
        assert_eq!(a.eval(&int(1)), Some(int(-1)));
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(UniPoly::from_i64(&[1, 1]), UniPoly::from_i64(&[0, 1]));
        let b = RatFunc::new(UniPoly::from_i64(&[3]), UniPoly::from_i64(&[-1, 1]));
        let s = &(&a + &b) - &b;
        assert_eq!(s, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a / &a, RatFunc::one());
    }
}
