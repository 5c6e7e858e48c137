//! Sparse polynomials in `(x, λ)` over ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intpoly::IntPoly;
use super::rational::{common_denominator, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// One of the two variables of a [`BiPoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Lambda,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Lambda,
            Var::Lambda => Var::X,
        }
    }
}

/// The two affine maps that act on key polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftMode {
    /// `p(x + 1, λ + 1)`
    ShiftPlusOne,
    /// `p(-x, -λ)`
    Negate,
}

/// Map from exponent pair `(i, j)` of `x^i λ^j` to a nonzero coefficient.
/// Terms iterate in lexicographic order of `(i, j)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                let mut s = format!("({c})");
                if i > 0 {
                    s.push_str(&format!("*x^{i}"));
                }
                if j > 0 {
                    s.push_str(&format!("*l^{j}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn lambda() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `c · x^i λ^j`.
    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = BiPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Polynomial in `x` only.
    pub fn from_x_poly(p: &UniPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
    }

    /// Polynomial in `λ` only.
    pub fn from_lambda_poly(p: &UniPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(j, c)| ((0, j as u32), c.clone())))
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_lambda(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        match v {
            Var::X => self.deg_x(),
            Var::Lambda => self.deg_lambda(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn scale(&self, k: &Rational) -> BiPoly {
        if k.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: Var) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X if i > 0 => out.add_term(i - 1, j, c * Rational::from_integer(i.into())),
                Var::Lambda if j > 0 => {
                    out.add_term(i, j - 1, c * Rational::from_integer(j.into()))
                }
                _ => {}
            }
        }
        out
    }

    /// Exchanges the roles of `x` and `λ`.
    pub fn swap_vars(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &Rational, l: &Rational) -> Rational {
        self.eval_lambda(l).eval(x)
    }

    /// `p(x, λ0)` as a polynomial in `x`.
    pub fn eval_lambda(&self, l: &Rational) -> UniPoly {
        self.eval_var(Var::Lambda, l)
    }

    /// `p(x0, λ)` as a polynomial in `λ`.
    pub fn eval_x(&self, x: &Rational) -> UniPoly {
        self.eval_var(Var::X, x)
    }

    /// Specialises variable `v` to `t`; the result is a polynomial in the
    /// other variable.
    pub fn eval_var(&self, v: Var, t: &Rational) -> UniPoly {
        let rows = self.rows(v.other());
        // rows[k] is the coefficient of (other)^k as a polynomial in v
        UniPoly::new(rows.iter().map(|r| r.eval(t)).collect())
    }

    /// Views the polynomial as `Σ_k rows[k] · v^k`, each `rows[k]` a
    /// polynomial in the other variable.
    pub fn rows(&self, v: Var) -> Vec<UniPoly> {
        let Some(d) = self.degree_in(v) else {
            return Vec::new();
        };
        let other_deg = self.degree_in(v.other()).unwrap_or(0) as usize;
        let mut dense = vec![vec![Rational::zero(); other_deg + 1]; d as usize + 1];
        for (&(i, j), c) in &self.terms {
            let (k, m) = match v {
                Var::X => (i, j),
                Var::Lambda => (j, i),
            };
            dense[k as usize][m as usize] = c.clone();
        }
        dense.into_iter().map(UniPoly::new).collect()
    }

    /// Inverse of [`BiPoly::rows`].
    pub fn from_rows(v: Var, rows: &[UniPoly]) -> BiPoly {
        let mut out = BiPoly::zero();
        for (k, r) in rows.iter().enumerate() {
            for (m, c) in r.coeffs().iter().enumerate() {
                let (i, j) = match v {
                    Var::X => (k as u32, m as u32),
                    Var::Lambda => (m as u32, k as u32),
                };
                out.add_term(i, j, c.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to `v`, a polynomial in the other
    /// variable.
    pub fn lc_in(&self, v: Var) -> UniPoly {
        self.rows(v).pop().unwrap_or_default()
    }

    /// Integer rows for elimination: `self = (1/den) · Σ rows[k] v^k` with
    /// every row in ℤ[other].
    pub fn integer_rows(&self, v: Var) -> (Vec<IntPoly>, BigInt) {
        let den = common_denominator(self.terms.values());
        let k = Rational::from_integer(den.clone());
        let rows = self
            .rows(v)
            .iter()
            .map(|r| {
                IntPoly::new(r.coeffs().iter().map(|c| (c * &k).to_integer()).collect())
            })
            .collect();
        (rows, den)
    }

    /// `p(x + a, λ + b)`.
    pub fn translate(&self, a: &Rational, b: &Rational) -> BiPoly {
        let xa = &BiPoly::x() + &BiPoly::constant(a.clone());
        let lb = &BiPoly::lambda() + &BiPoly::constant(b.clone());
        self.substitute(&xa, &lb)
    }

    /// `p(sx · x, sl · λ)`.
    pub fn rescale(&self, sx: &Rational, sl: &Rational) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j), c * num_traits::pow(sx.clone(), i as usize) * num_traits::pow(sl.clone(), j as usize)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// `p(X, Λ)` for polynomials `X`, `Λ` in `(x, λ)`.
    pub fn substitute(&self, xs: &BiPoly, ls: &BiPoly) -> BiPoly {
        let rows = self.rows(Var::Lambda);
        // Horner in λ, inner Horner in x
        let mut acc = BiPoly::zero();
        for r in rows.iter().rev() {
            let mut inner = BiPoly::zero();
            for c in r.coeffs().iter().rev() {
                inner = &(&inner * xs) + &BiPoly::constant(c.clone());
            }
            acc = &(&acc * ls) + &inner;
        }
        acc
    }

    /// Applies one of the two maps of [`ShiftMode`].
    pub fn affine_shift(&self, mode: ShiftMode) -> BiPoly {
        match mode {
            ShiftMode::ShiftPlusOne => self.translate(&Rational::one(), &Rational::one()),
            ShiftMode::Negate => self.rescale(&-Rational::one(), &-Rational::one()),
        }
    }

    /// Homogenises with a third variable `z` to `total_degree`, then
    /// dehomogenises at `λ = 1`. The result is returned as a polynomial in
    /// `(x, z)` with `z` stored in the second slot: `x^i λ^j ↦ x^i z^(D-i-j)`.
    pub fn homogenize_swap(&self, total_degree: u32) -> Result<BiPoly> {
        if let Some(t) = self.total_degree() {
            if t > total_degree {
                return Err(Error::InvalidArgument(format!(
                    "total degree {total_degree} is below the polynomial's degree {t}"
                )));
            }
        }
        Ok(BiPoly::from_terms(
            self.terms
                .iter()
                .map(|(&(i, j), c)| ((i, total_degree - i - j), c.clone())),
        ))
    }

    /// Exact quotient by `d` (lexicographic division with `x` dominant),
    /// or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let (&lead_e, lead_c) = d.terms.iter().next_back()?;
        let mut r = self.clone();
        let mut q = BiPoly::zero();
        while let Some((&(i, j), c)) = r.terms.iter().next_back() {
            if i < lead_e.0 || j < lead_e.1 {
                return None;
            }
            let qc = c / lead_c;
            let (qi, qj) = (i - lead_e.0, j - lead_e.1);
            for (&(di, dj), dc) in &d.terms {
                r.add_term(di + qi, dj + qj, -(&qc * dc));
            }
            q.add_term(qi, qj, qc);
        }
        Some(q)
    }

    /// Largest absolute coefficient, used as a scale for numeric checks.
    pub fn max_abs_coeff(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn eval_f64(&self, x: f64, l: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| super::rational::to_f64(c) * x.powi(i as i32) * l.powi(j as i32))
            .sum()
    }

    /// `Σ |c_ij| |x|^i |λ|^j`, the natural magnitude against which a float
    /// residual is judged.
    pub fn abs_scale_f64(&self, x: f64, l: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| {
                super::rational::to_f64(c).abs() * x.abs().powi(i as i32) * l.abs().powi(j as i32)
            })
            .sum()
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        // Accumulate over a common integer denominator to keep the inner
        // loop free of rational normalisation.
        let da = common_denominator(self.terms.values());
        let db = common_denominator(o.terms.values());
        let ia: Vec<((u32, u32), BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, (c * Rational::from_integer(da.clone())).to_integer()))
            .collect();
        let ib: Vec<((u32, u32), BigInt)> = o
            .terms
            .iter()
            .map(|(e, c)| (*e, (c * Rational::from_integer(db.clone())).to_integer()))
            .collect();
        let mut acc: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for ((ai, aj), ac) in &ia {
            for ((bi, bj), bc) in &ib {
                *acc.entry((ai + bi, aj + bj)).or_default() += ac * bc;
            }
        }
        let den = da * db;
        BiPoly {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, Rational::new(c, den.clone())))
                .collect(),
        }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: BiPoly) -> BiPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Legendre cubic `x(x-1)(x-λ)`.
pub fn legendre_cubic() -> BiPoly {
    let x = BiPoly::x();
    let one = BiPoly::one();
    &(&x * &(&x - &one)) * &(&x - &BiPoly::lambda())
}

/// Returns `true` when every coefficient is an integer.
pub fn has_integer_coeffs(p: &BiPoly) -> bool {
    p.terms().all(|(_, c)| c.is_integer())
}

/// Sign of the coefficient of the lexicographically largest term.
pub fn leading_sign(p: &BiPoly) -> i8 {
    match p.terms.values().next_back() {
        Some(c) if c.is_positive() => 1,
        Some(c) if c.is_negative() => -1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn p1() -> BiPoly {
        // (3x² − 2(1+λ)x + λ)/2
        BiPoly::from_terms([
            ((2, 0), rat(3, 2)),
            ((1, 0), int(-1)),
            ((1, 1), int(-1)),
            ((0, 1), rat(1, 2)),
        ])
    }

    #[test]
    fn cancellation_and_expansion() {
        let x = BiPoly::x();
        let l = BiPoly::lambda();
        assert_eq!(&(&x + &l) + &(&x - &l), x.scale(&int(2)));
        let expected = BiPoly::from_terms([
            ((3, 0), int(1)),
            ((2, 0), int(-1)),
            ((2, 1), int(-1)),
            ((1, 1), int(1)),
        ]);
        assert_eq!(legendre_cubic(), expected);
        // x((x-1)^2 + λ^2)
        let one = BiPoly::one();
        let conj = &x * &(&(&x - &one).pow(2) + &l.pow(2));
        let expected = BiPoly::from_terms([
            ((3, 0), int(1)),
            ((2, 0), int(-2)),
            ((1, 0), int(1)),
            ((1, 2), int(1)),
        ]);
        assert_eq!(conj, expected);
    }

    #[test]
    fn derivatives_of_legendre() {
        let f = legendre_cubic();
        let fx = BiPoly::from_terms([
            ((2, 0), int(3)),
            ((1, 0), int(-2)),
            ((1, 1), int(-2)),
            ((0, 1), int(1)),
        ]);
        assert_eq!(f.derivative(Var::X), fx);
        let fl = BiPoly::from_terms([((2, 0), int(-1)), ((1, 0), int(1))]);
        assert_eq!(f.derivative(Var::Lambda), fl);
        assert!(BiPoly::constant(int(7)).derivative(Var::X).is_zero());
    }

    #[test]
    fn affine_shift_examples() {
        let expected = BiPoly::from_terms([
            ((2, 0), rat(3, 2)),
            ((1, 0), int(1)),
            ((1, 1), int(-1)),
            ((0, 1), rat(-1, 2)),
        ]);
        assert_eq!(p1().affine_shift(ShiftMode::ShiftPlusOne), expected);
        assert_eq!(p1().affine_shift(ShiftMode::Negate), expected);
        let f = legendre_cubic();
        assert_eq!(
            f.affine_shift(ShiftMode::ShiftPlusOne),
            -&f.affine_shift(ShiftMode::Negate)
        );
    }

    #[test]
    fn homogenize_swap_examples() {
        // P1 is fixed: H(x, λ, z) is symmetric in λ and z.
        assert_eq!(p1().homogenize_swap(2).unwrap(), p1());
        let x2 = BiPoly::monomial(int(1), 2, 0);
        assert_eq!(x2.homogenize_swap(2).unwrap(), x2);
        // λ ↦ 1 and 1 ↦ z at degree one
        assert_eq!(BiPoly::lambda().homogenize_swap(1).unwrap(), BiPoly::one());
        assert_eq!(BiPoly::one().homogenize_swap(1).unwrap(), BiPoly::lambda());
        assert!(x2.homogenize_swap(1).is_err());
    }

    #[test]
    fn exact_division() {
        let f = legendre_cubic();
        let g = &p1() * &f;
        assert_eq!(g.div_exact(&f), Some(p1()));
        assert_eq!(g.div_exact(&p1()), Some(f.clone()));
        assert_eq!(p1().div_exact(&f), None);
        assert_eq!((&g + &BiPoly::one()).div_exact(&f), None);
    }

    #[test]
    fn rows_round_trip() {
        let f = legendre_cubic();
        for v in [Var::X, Var::Lambda] {
            assert_eq!(BiPoly::from_rows(v, &f.rows(v)), f);
        }
        assert_eq!(f.eval_lambda(&int(2)), UniPoly::from_i64(&[0, 2, -3, 1]));
        assert_eq!(f.eval_x(&int(2)), UniPoly::from_i64(&[4, -2]));
    }
}
