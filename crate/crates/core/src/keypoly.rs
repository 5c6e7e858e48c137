//! Curve families, key polynomials `P_n`, generalized key polynomials
//! `P_{μ,n}` and the quotient-ring Wronskian oracle.
//!
//! With `y² = f`, the `n`-th derivative is `y^(n) = f^(-n) · y · P_n`, and the
//! Wronskian of `y, xy, …, x^(μ-1) y` at orders `n, …, n+μ-1` equals
//! `(f^(-n) y)^μ · P_{μ,n}`.

use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::bipoly::{BiPoly, Var};
use crate::algebra::intpoly::resultant;
use crate::algebra::quotient::QuotientElem;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::rational::{format_rational, int, Rational};
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};

/// The cubic `f` defining `y² = f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveFamily {
    /// `x(x − 1)(x − λ)`
    Legendre,
    /// `x((x − 1)² + λ²)`, the real form of `x(x − (1+λi))(x − (1−λi))`
    ConjugatePair,
    /// A fixed separable cubic in `x` alone.
    FixedCubic(UniPoly),
}

impl CurveFamily {
    /// A fixed cubic, checked to have degree three and no repeated root.
    pub fn fixed_cubic(f: UniPoly) -> Result<Self> {
        if f.degree() != Some(3) {
            return Err(Error::InvalidArgument(format!("not a cubic: {f}")));
        }
        if f.gcd(&f.derivative()).degree() != Some(0) {
            return Err(Error::DegenerateCurve(format!("{f} has a repeated root")));
        }
        Ok(CurveFamily::FixedCubic(f))
    }

    pub fn name(&self) -> &'static str {
        match self {
            CurveFamily::Legendre => "legendre",
            CurveFamily::ConjugatePair => "conjugate-pair",
            CurveFamily::FixedCubic(_) => "fixed-cubic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "legendre" => Ok(CurveFamily::Legendre),
            "conjugate" | "conjugate-pair" | "conjugate_pair" | "conj" => Ok(CurveFamily::ConjugatePair),
            _ => Err(Error::InvalidArgument(format!(
                "unknown family {s:?} (expected legendre or conjugate-pair)"
            ))),
        }
    }

    /// `f(x, λ)`.
    pub fn cubic(&self) -> BiPoly {
        match self {
            CurveFamily::Legendre => BiPoly::from_terms([
                ((3, 0), int(1)),
                ((2, 0), int(-1)),
                ((2, 1), int(-1)),
                ((1, 1), int(1)),
            ]),
            CurveFamily::ConjugatePair => BiPoly::from_terms([
                ((3, 0), int(1)),
                ((2, 0), int(-2)),
                ((1, 0), int(1)),
                ((1, 2), int(1)),
            ]),
            CurveFamily::FixedCubic(f) => BiPoly::from_x_poly(f),
        }
    }

    /// `f(x, λ0)`, rejecting parameters at which the cubic has a repeated
    /// root.
    pub fn specialize(&self, lambda0: &Rational) -> Result<UniPoly> {
        let g = self.cubic().eval_lambda(lambda0);
        let (gi, _) = g.to_int();
        let d = resultant(gi.coeffs(), gi.derivative().coeffs());
        if d.is_zero() {
            return Err(Error::DegenerateCurve(format!(
                "{} cubic is inseparable at lambda = {}",
                self.name(),
                format_rational(lambda0)
            )));
        }
        Ok(g)
    }
}

/// Memoised key polynomials of one family. The cache only grows.
#[derive(Debug)]
pub struct KeyFamily {
    family: CurveFamily,
    f: BiPoly,
    fx: BiPoly,
    cache: RwLock<Vec<Arc<BiPoly>>>,
}

impl KeyFamily {
    pub fn new(family: CurveFamily) -> Self {
        let f = family.cubic();
        let fx = f.derivative(Var::X);
        KeyFamily {
            family,
            f,
            fx,
            cache: RwLock::new(vec![Arc::new(BiPoly::one())]),
        }
    }

    pub fn family(&self) -> &CurveFamily {
        &self.family
    }

    pub fn cubic(&self) -> &BiPoly {
        &self.f
    }

    /// `P_n`, extending the cache as needed.
    pub fn key_poly(&self, n: usize) -> Arc<BiPoly> {
        if let Some(p) = self.cache.read().unwrap().get(n) {
            return p.clone();
        }
        let mut cache = self.cache.write().unwrap();
        while cache.len() <= n {
            let m = cache.len() - 1;
            let next = self.step(&cache[m], m);
            cache.push(Arc::new(next));
        }
        cache[n].clone()
    }

    /// `P_{m+1}` from `P_m`. Starting from `P_0 = 1` this also yields the
    /// seed `P_1 = f'/2`.
    fn step(&self, p: &BiPoly, m: usize) -> BiPoly {
        let k = Rational::new(BigInt::one(), BigInt::from(2)) - Rational::from_integer(m.into());
        &(&p.derivative(Var::X) * &self.f) + &(p * &self.fx).scale(&k)
    }

    /// Closed forms of `P_{2,n}` (n ≥ 1) and `P_{3,n}` (n ≥ 2).
    pub fn gen_key_poly_closed(&self, mu: usize, n: usize) -> Result<BiPoly> {
        let p = |k: usize| self.key_poly(k);
        let r = |v: usize| Rational::from_integer(v.into());
        match mu {
            2 => {
                if n < 1 {
                    return Err(Error::InvalidArgument("P_{2,n} needs n >= 1".into()));
                }
                let a = p(n).pow(2).scale(&r(n + 1));
                let b = (&*p(n - 1) * &*p(n + 1)).scale(&r(n));
                Ok(&a - &b)
            }
            3 => {
                if n < 2 {
                    return Err(Error::InvalidArgument("P_{3,n} needs n >= 2".into()));
                }
                let (pm2, pm1, p0, p1, p2) = (p(n - 2), p(n - 1), p(n), p(n + 1), p(n + 2));
                let t1 = p0.pow(3).scale(&r((n + 1) * (n + 1) * (n + 2)));
                let inner = &(&*pm1 * &*p1).scale(&r(2 * (n + 2)))
                    + &(&*pm2 * &*p2).scale(&r(n - 1));
                let t2 = (&*p0 * &inner).scale(&r(n * (n + 1)));
                let t3 = &(&*pm2 * &p1.pow(2)).scale(&r(n * n + n - 2))
                    + &(&pm1.pow(2) * &*p2).scale(&r(n * (n + 1)));
                Ok(&(&t1 - &t2) + &t3.scale(&r(n)))
            }
            _ => Err(Error::InvalidArgument(format!(
                "closed forms exist for mu in {{2, 3}}, got {mu}"
            ))),
        }
    }

    /// `P_{μ,n} = det(Q) / f^(μ(μ-1)/2)` with
    /// `Q[j][c] = Σ_i C(n+c, i) (j)_i x^(j-i) f^i P_{n+c-i}`.
    pub fn gen_key_poly_det(&self, mu: usize, n: usize) -> Result<BiPoly> {
        if mu == 0 || n + 1 < mu {
            return Err(Error::InvalidArgument(format!(
                "determinant construction needs mu >= 1 and n >= mu - 1 (mu = {mu}, n = {n})"
            )));
        }
        let fpow: Vec<BiPoly> = (0..mu).map(|i| self.f.pow(i as u32)).collect();
        let mut q = vec![vec![BiPoly::zero(); mu]; mu];
        for (j, row) in q.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                let m = n + c;
                let mut acc = BiPoly::zero();
                for i in 0..=j.min(m) {
                    let k = binomial(m, i) * falling(j, i);
                    let term = &(&BiPoly::monomial(Rational::from_integer(k), (j - i) as u32, 0)
                        * &fpow[i])
                        * &*self.key_poly(m - i);
                    acc = &acc + &term;
                }
                *entry = acc;
            }
        }
        let det = determinant(&q, BiPoly::zero, |a, b| a + b, |a, b| a - b, |a, b| a * b);
        let divisor = self.f.pow((mu * (mu - 1) / 2) as u32);
        det.div_exact(&divisor).ok_or_else(|| {
            Error::Internal(format!(
                "det(Q) is not divisible by f^{} for mu = {mu}, n = {n}",
                mu * (mu - 1) / 2
            ))
        })
    }

    /// `P_{μ,n}`, by the closed form when one exists.
    pub fn gen_key_poly(&self, mu: usize, n: usize) -> Result<BiPoly> {
        match mu {
            1 => Ok((*self.key_poly(n)).clone()),
            2 | 3 => self.gen_key_poly_closed(mu, n),
            _ => self.gen_key_poly_det(mu, n),
        }
    }
}

/// `P_n` for a family, computed without a shared cache.
pub fn key_poly(family: &CurveFamily, n: usize) -> BiPoly {
    (*KeyFamily::new(family.clone()).key_poly(n)).clone()
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial `(j)_i = j (j-1) … (j-i+1)`.
pub fn falling(j: usize, i: usize) -> BigInt {
    if i > j {
        return BigInt::zero();
    }
    (0..i).fold(BigInt::one(), |acc, t| acc * BigInt::from(j - t))
}

/// Determinant by expansion over column subsets: `minor[S]` is the
/// determinant of the first `|S|` rows restricted to the columns in `S`.
/// Uses only ring operations, so it works over any commutative ring.
pub fn determinant<T: Clone>(
    m: &[Vec<T>],
    zero: impl Fn() -> T,
    add: impl Fn(&T, &T) -> T,
    sub: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
) -> T {
    let k = m.len();
    assert!(k < 24 && m.iter().all(|r| r.len() == k), "square matrix expected");
    if k == 0 {
        panic!("determinant of an empty matrix");
    }
    let mut minors: Vec<Option<T>> = vec![None; 1 << k];
    for c in 0..k {
        minors[1 << c] = Some(m[0][c].clone());
    }
    for size in 2..=k {
        let row = size - 1;
        for set in 1usize..(1 << k) {
            if set.count_ones() as usize != size {
                continue;
            }
            let mut acc: Option<T> = None;
            // expand along the last row; the sign follows the position of
            // column c inside the set
            for (pos, c) in (0..k).filter(|c| set >> c & 1 == 1).enumerate() {
                let sub_minor = minors[set & !(1 << c)].as_ref().unwrap();
                let term = mul(&m[row][c], sub_minor);
                let negative = (size - 1 - pos) % 2 == 1;
                acc = Some(match (acc, negative) {
                    (None, false) => term,
                    (None, true) => sub(&zero(), &term),
                    (Some(a), false) => add(&a, &term),
                    (Some(a), true) => sub(&a, &term),
                });
            }
            minors[set] = acc;
        }
    }
    minors[(1 << k) - 1].take().unwrap()
}

/// Independent check of `P_{μ,n}(x, λ0)`: differentiates `x^j y` inside
/// `ℚ(x)[y]/(y² − f(x, λ0))`, takes the Wronskian and strips the factor
/// `(f^(-n) y)^μ`.
pub fn wronskian_oracle(
    family: &CurveFamily,
    mu: usize,
    n: usize,
    lambda0: &Rational,
) -> Result<UniPoly> {
    if mu == 0 || n + 1 < mu {
        return Err(Error::InvalidArgument(format!(
            "Wronskian oracle needs mu >= 1 and n >= mu - 1 (mu = {mu}, n = {n})"
        )));
    }
    let g = Arc::new(family.specialize(lambda0)?);
    let mut w = vec![vec![QuotientElem::zero(g.clone()); mu]; mu];
    for (j, row) in w.iter_mut().enumerate() {
        let xj = RatFunc::from_poly(UniPoly::monomial(Rational::one(), j));
        let mut e = QuotientElem::new(RatFunc::zero(), xj, g.clone());
        for order in 0..n + mu {
            if order >= n {
                row[order - n] = e.clone();
            }
            e = e.derivative();
        }
    }
    let det = determinant(
        &w,
        || QuotientElem::zero(g.clone()),
        |a, b| a + b,
        |a, b| a - b,
        |a, b| a * b,
    );
    // y^μ = g^(μ/2) for even μ and g^((μ-1)/2) · y for odd μ
    let (part, other, half) = if mu % 2 == 0 {
        (det.a(), det.b(), mu / 2)
    } else {
        (det.b(), det.a(), (mu - 1) / 2)
    };
    if !other.is_zero() {
        return Err(Error::Internal("Wronskian has the wrong parity in y".into()));
    }
    let scale = RatFunc::from_poly(g.pow(n * mu - half));
    let p = part * &scale;
    p.as_poly().cloned().ok_or_else(|| {
        Error::Internal(format!("Wronskian quotient is not a polynomial for mu = {mu}, n = {n}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bipoly::ShiftMode;
    use crate::algebra::rational::rat;

    fn legendre() -> KeyFamily {
        KeyFamily::new(CurveFamily::Legendre)
    }

    #[test]
    fn seed_and_second_key_polynomial() {
        let k = legendre();
        let p1 = BiPoly::from_terms([
            ((2, 0), rat(3, 2)),
            ((1, 0), int(-1)),
            ((1, 1), int(-1)),
            ((0, 1), rat(1, 2)),
        ]);
        assert_eq!(*k.key_poly(1), p1);
        let p2 = BiPoly::from_terms([
            ((4, 0), rat(3, 4)),
            ((3, 0), int(-1)),
            ((3, 1), int(-1)),
            ((2, 1), rat(3, 2)),
            ((0, 2), rat(-1, 4)),
        ]);
        assert_eq!(*k.key_poly(2), p2);
        assert_eq!(*k.key_poly(0), BiPoly::one());
    }

    #[test]
    fn p5_leading_lambda_coefficient() {
        let p5 = legendre().key_poly(5);
        assert_eq!(p5.coeff(0, 5), rat(105, 32));
        assert_eq!(p5.coeff(1, 5), rat(-225, 16));
        assert_eq!(p5.coeff(2, 5), rat(45, 2));
        assert_eq!(p5.coeff(3, 5), int(-15));
        assert_eq!(p5.coeff(4, 5), int(0));
    }

    #[test]
    fn p5_on_the_diagonal() {
        let p5 = legendre().key_poly(5);
        let diag = p5.substitute(&BiPoly::x(), &BiPoly::x());
        let expected = BiPoly::from_terms([
            ((5, 0), rat(-105, 32)),
            ((6, 0), rat(525, 32)),
            ((7, 0), rat(-525, 16)),
            ((8, 0), rat(525, 16)),
            ((9, 0), rat(-525, 32)),
            ((10, 0), rat(105, 32)),
        ]);
        assert_eq!(diag, expected);
        // the expanded form is (105/32) x^5 (x − 1)^5
        let x = BiPoly::x();
        let factored = (&x.pow(5) * &(&x - &BiPoly::one()).pow(5)).scale(&rat(105, 32));
        assert_eq!(diag, factored);
    }

    #[test]
    fn degrees_and_symmetries() {
        let k = legendre();
        for n in 1..=8usize {
            let p = k.key_poly(n);
            assert_eq!(p.deg_x(), Some(2 * n as u32));
            assert_eq!(p.deg_lambda(), Some(n as u32));
            assert_eq!(p.homogenize_swap(2 * n as u32).unwrap(), *p);
            assert_eq!(
                p.affine_shift(ShiftMode::ShiftPlusOne),
                p.affine_shift(ShiftMode::Negate)
            );
        }
    }

    #[test]
    fn leading_coefficient_recursion() {
        // a_{n+1} = −x(x−1) a_n' + (1/2 − n)(1 − 2x) a_n
        let k = legendre();
        let xx1 = UniPoly::from_i64(&[0, -1, 1]);
        let one_m_2x = UniPoly::from_i64(&[1, -2]);
        for n in 1..8usize {
            let a = k.key_poly(n).lc_in(Var::Lambda);
            let b = k.key_poly(n + 1).lc_in(Var::Lambda);
            let c = rat(1, 2) - Rational::from_integer(n.into());
            let rhs = &(-&(&xx1 * &a.derivative())) + &(&one_m_2x * &a).scale(&c);
            assert_eq!(b, rhs, "n = {n}");
        }
    }

    #[test]
    fn closed_form_instances() {
        let k = legendre();
        let p21 = k.gen_key_poly_closed(2, 1).unwrap();
        let expected = &k.key_poly(1).pow(2).scale(&int(2)) - &*k.key_poly(2);
        assert_eq!(p21, expected);
        assert!(k.gen_key_poly_closed(2, 0).is_err());
        assert!(k.gen_key_poly_closed(3, 1).is_err());
        assert!(k.gen_key_poly_closed(4, 5).is_err());
    }

    #[test]
    fn determinant_matches_closed_forms() {
        let k = legendre();
        for n in 0..=5 {
            assert_eq!(k.gen_key_poly_det(1, n).unwrap(), *k.key_poly(n));
        }
        for n in 1..=5 {
            assert_eq!(k.gen_key_poly_det(2, n).unwrap(), k.gen_key_poly_closed(2, n).unwrap());
        }
        for n in 2..=4 {
            assert_eq!(k.gen_key_poly_det(3, n).unwrap(), k.gen_key_poly_closed(3, n).unwrap());
        }
        assert!(k.gen_key_poly_det(3, 1).is_err());
    }

    #[test]
    fn oracle_matches_p2_at_two() {
        let w = wronskian_oracle(&CurveFamily::Legendre, 1, 2, &int(2)).unwrap();
        let expected = UniPoly::new(vec![int(-1), int(0), int(3), int(-3), rat(3, 4)]);
        assert_eq!(w, expected);
    }

    #[test]
    fn oracle_matches_determinant() {
        let k = legendre();
        let l = rat(1, 2);
        let w = wronskian_oracle(&CurveFamily::Legendre, 2, 3, &l).unwrap();
        assert_eq!(w, k.gen_key_poly_closed(2, 3).unwrap().eval_lambda(&l));
        let l = int(-1);
        let w = wronskian_oracle(&CurveFamily::Legendre, 3, 3, &l).unwrap();
        assert_eq!(w, k.gen_key_poly_closed(3, 3).unwrap().eval_lambda(&l));
    }

    #[test]
    fn degenerate_parameters_rejected() {
        for l in [int(0), int(1)] {
            assert!(matches!(
                wronskian_oracle(&CurveFamily::Legendre, 1, 2, &l),
                Err(Error::DegenerateCurve(_))
            ));
        }
        assert!(CurveFamily::ConjugatePair.specialize(&int(0)).is_err());
        assert!(CurveFamily::ConjugatePair.specialize(&int(1)).is_ok());
        assert!(CurveFamily::fixed_cubic(UniPoly::from_i64(&[0, 0, -1, 1])).is_err());
        assert!(CurveFamily::fixed_cubic(UniPoly::from_i64(&[0, -1, 0, 1])).is_ok());
    }

    #[test]
    fn small_determinants() {
        let m = vec![vec![2i64, 3], vec![5, 7]];
        let d = determinant(&m, || 0, |a, b| a + b, |a, b| a - b, |a, b| a * b);
        assert_eq!(d, -1);
        let m = vec![vec![2i64, 0, 1], vec![1, 3, 2], vec![1, 1, 1]];
        let d = determinant(&m, || 0, |a, b| a + b, |a, b| a - b, |a, b| a * b);
        assert_eq!(d, 2 * (3 - 2) - 0 + (1 - 3));
    }
}
