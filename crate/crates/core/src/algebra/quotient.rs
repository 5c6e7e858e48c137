//! The ring `ℚ(x)[s] / (s² − g(x))`, with `s` standing for `√g`, i.e. the
//! function field of `y² = g`.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::ratfunc::RatFunc;
use super::rational::Rational;
use super::unipoly::UniPoly;

/// `a + b·s` with `s² = g`. Every value is stored reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientElem {
    a: RatFunc,
    b: RatFunc,
    g: Arc<UniPoly>,
}

impl QuotientElem {
    pub fn new(a: RatFunc, b: RatFunc, g: Arc<UniPoly>) -> Self {
        QuotientElem { a, b, g }
    }

    /// Reduces `Σ_k c_k s^k` using `s² → g`.
    pub fn from_s_powers(coeffs: &[RatFunc], g: Arc<UniPoly>) -> Self {
        let gf = RatFunc::from_poly((*g).clone());
        let mut a = RatFunc::zero();
        let mut b = RatFunc::zero();
        let mut gk = RatFunc::one();
        for (k, c) in coeffs.iter().enumerate() {
            if k >= 2 && k % 2 == 0 {
                gk = &gk * &gf;
            }
            let term = c * &gk;
            if k % 2 == 0 {
                a = &a + &term;
            } else {
                b = &b + &term;
            }
        }
        QuotientElem { a, b, g }
    }

    pub fn zero(g: Arc<UniPoly>) -> Self {
        Self::new(RatFunc::zero(), RatFunc::zero(), g)
    }

    /// The element `s` itself.
    pub fn s(g: Arc<UniPoly>) -> Self {
        Self::new(RatFunc::zero(), RatFunc::one(), g)
    }

    pub fn from_ratfunc(a: RatFunc, g: Arc<UniPoly>) -> Self {
        Self::new(a, RatFunc::zero(), g)
    }

    pub fn a(&self) -> &RatFunc {
        &self.a
    }

    pub fn b(&self) -> &RatFunc {
        &self.b
    }

    pub fn modulus(&self) -> &Arc<UniPoly> {
        &self.g
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Representatives are always reduced, so this is the identity; it
    /// exists to make that contract explicit.
    pub fn reduce(&self) -> Self {
        self.clone()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.a.scale(k), self.b.scale(k), self.g.clone())
    }

    /// Multiplies both coordinates by a rational function.
    pub fn scale_by(&self, r: &RatFunc) -> Self {
        Self::new(&self.a * r, &self.b * r, self.g.clone())
    }

    /// Derivation `d/dx` with `s' = g'/(2g) · s`.
    pub fn derivative(&self) -> Self {
        let g = RatFunc::from_poly((*self.g).clone());
        let dg = RatFunc::from_poly(self.g.derivative());
        let log_half = (&dg / &g).scale(&Rational::new(1.into(), 2.into()));
        let b = &self.b.derivative() + &(&self.b * &log_half);
        Self::new(self.a.derivative(), b, self.g.clone())
    }

    fn same_ring(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.g, &o.g) || self.g == o.g,
            "quotient elements over different moduli"
        );
    }
}

impl Add for &QuotientElem {
    type Output = QuotientElem;
    fn add(self, o: &QuotientElem) -> QuotientElem {
        self.same_ring(o);
        QuotientElem::new(&self.a + &o.a, &self.b + &o.b, self.g.clone())
    }
}

impl Sub for &QuotientElem {
    type Output = QuotientElem;
    fn sub(self, o: &QuotientElem) -> QuotientElem {
        self + &(-o)
    }
}

impl Neg for &QuotientElem {
    type Output = QuotientElem;
    fn neg(self) -> QuotientElem {
        QuotientElem::new(-&self.a, -&self.b, self.g.clone())
    }
}

impl Mul for &QuotientElem {
    type Output = QuotientElem;
    /// `(a + bs)(c + ds) = (ac + bd·g) + (ad + bc)s`.
    fn mul(self, o: &QuotientElem) -> QuotientElem {
        self.same_ring(o);
        let g = RatFunc::from_poly((*self.g).clone());
        let bd = &self.b * &o.b;
        let a = &(&self.a * &o.a) + &(if bd.is_zero() { bd } else { &bd * &g });
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        QuotientElem::new(a, b, self.g.clone())
    }
}
