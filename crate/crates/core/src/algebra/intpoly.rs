//! Dense polynomials over ℤ, and a subresultant engine generic over any
//! commutative ring with exact division (ℤ itself, or ℤ[t] for bivariate
//! elimination).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// A commutative ring in which exact quotients can be computed.
pub trait ExactRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_add(&self, other: &Self) -> Self;
    fn r_sub(&self, other: &Self) -> Self;
    fn r_mul(&self, other: &Self) -> Self;
    fn r_neg(&self) -> Self;
    /// `self / other` when the division is exact, `None` otherwise.
    fn r_div_exact(&self, other: &Self) -> Option<Self>;

    fn r_pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::r_one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.r_mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.r_mul(&base);
            }
        }
        acc
    }
}

impl ExactRing for BigInt {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn r_add(&self, other: &Self) -> Self {
        self + other
    }
    fn r_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn r_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
}

/// Drops trailing zero coefficients.
pub fn trim<R: ExactRing>(v: &mut Vec<R>) {
    while v.last().is_some_and(|c| c.r_is_zero()) {
        v.pop();
    }
}

fn degree_of<R>(v: &[R]) -> Option<usize> {
    v.len().checked_sub(1)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a  mod  b`.
pub fn prem<R: ExactRing>(a: &[R], b: &[R]) -> Vec<R> {
    let db = degree_of(b).expect("pseudo-division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    let Some(da) = degree_of(&r) else {
        return r;
    };
    if da < db {
        return r;
    }
    let lb = b[db].clone();
    let mut steps = da - db + 1;
    while let Some(dr) = degree_of(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.r_mul(&lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].r_sub(&lr.r_mul(bc));
        }
        r.pop();
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.r_pow(steps);
        for c in r.iter_mut() {
            *c = c.r_mul(&f);
        }
    }
    r
}

/// The polynomials produced by a subresultant remainder sequence, together
/// with the degree drop at each step.
#[derive(Debug, Clone)]
pub struct PrsTrace<R> {
    pub sequence: Vec<Vec<R>>,
    pub defects: Vec<usize>,
}

/// Resultant of two nonzero polynomials by the subresultant PRS.
pub fn resultant<R: ExactRing>(a: &[R], b: &[R]) -> R {
    subresultant_prs(a, b).0
}

/// Resultant plus the remainder sequence that produced it.
pub fn subresultant_prs<R: ExactRing>(a: &[R], b: &[R]) -> (R, PrsTrace<R>) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    let mut trace = PrsTrace {
        sequence: Vec::new(),
        defects: Vec::new(),
    };
    let (Some(mut da), Some(mut db)) = (degree_of(&a), degree_of(&b)) else {
        return (R::r_zero(), trace);
    };
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            negate = true;
        }
    }
    trace.sequence.push(a.clone());
    trace.sequence.push(b.clone());
    if db == 0 {
        let r = b[0].r_pow(da);
        return (if negate { r.r_neg() } else { r }, trace);
    }
    let mut g = R::r_one();
    let mut h = R::r_one();
    loop {
        let delta = da - db;
        trace.defects.push(delta);
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b);
        a = b;
        da = db;
        if r.is_empty() {
            return (R::r_zero(), trace);
        }
        let divisor = g.r_mul(&h.r_pow(delta));
        b = r
            .iter()
            .map(|c| c.r_div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        db = b.len() - 1;
        trace.sequence.push(b.clone());
        g = a[da].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .r_pow(d)
                .r_div_exact(&h.r_pow(d - 1))
                .expect("subresultant scaling is exact"),
        };
        if db == 0 {
            break;
        }
    }
    let lb = b[0].clone();
    let r = if da == 1 {
        lb
    } else {
        lb.r_pow(da)
            .r_div_exact(&h.r_pow(da - 1))
            .expect("final subresultant scaling is exact")
    };
    (if negate { r.r_neg() } else { r }, trace)
}

/// Dense polynomial with integer coefficients, ascending order, no trailing
/// zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        degree_of(&self.coeffs)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `p(-t)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_rational(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + Rational::from_integer(c.clone()))
    }

    /// Sign of `p(t)` computed without forming fractions: the numerator of
    /// `p(n/d)·d^deg` has the same sign because `d > 0`.
    pub fn sign_at(&self, t: &Rational) -> i8 {
        let n = t.numer();
        let d = t.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // Σ c_i n^i d^(deg-i), Horner from the top
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        sign_of(&acc)
    }

    /// Sign of the leading coefficient times `(-1)^deg` for `-∞`, or of the
    /// leading coefficient for `+∞`.
    pub fn sign_at_infinity(&self, positive: bool) -> i8 {
        let Some(deg) = self.degree() else {
            return 0;
        };
        let s = sign_of(&self.lc());
        if positive || deg % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// Power of two strictly larger than the absolute value of every root.
    pub fn root_bound(&self) -> BigInt {
        let lc = self.lc().abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        let ratio = (max + &lc - BigInt::one()) / &lc + BigInt::one();
        let mut b = BigInt::one();
        while b <= ratio {
            b <<= 1;
        }
        b
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`
    /// in ℤ[t].
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::default());
        }
        let ds = self.degree()?;
        if ds < dd {
            return None;
        }
        let ld = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); ds - dd + 1];
        for k in (0..=ds - dd).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(&ld);
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qc * c;
            }
            q[k] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Greatest common divisor, normalised to positive leading coefficient
    /// and with the gcd of the contents as its content.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let c = self.content().gcd(&other.content());
        let a = self.primitive();
        let b = other.primitive();
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return IntPoly::constant(c);
        }
        let g = heuristic_gcd(&a, &b).unwrap_or_else(|| prs_gcd(&a, &b));
        g.scale(&c)
    }

    fn normalized_sign(&self) -> IntPoly {
        if self.lc().is_negative() {
            self.scale(&BigInt::from(-1))
        } else {
            self.clone()
        }
    }

    /// Product of the distinct irreducible factors, primitive.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return IntPoly::constant(BigInt::one());
        }
        let p = self.primitive();
        let g = p.gcd(&p.derivative()).primitive();
        p.div_exact(&g).expect("gcd divides").primitive()
    }

    /// Yun's squarefree decomposition: pairwise coprime primitive factors
    /// `s_i` with `self = c · Π s_i^i`. Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let a = self.primitive();
        let b = a.derivative();
        let c = a.gcd(&b).primitive();
        let mut w = a.div_exact(&c).expect("gcd divides").primitive();
        let mut y = b.div_exact(&c).expect("gcd divides derivative");
        let mut z = &y - &w.derivative();
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let g = w.gcd(&z).primitive();
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            w = w.div_exact(&g).expect("gcd divides").primitive();
            y = z.div_exact(&g).expect("gcd divides");
            z = &y - &w.derivative();
            i += 1;
        }
        out
    }
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Euclid over the subresultant PRS; returns the primitive gcd.
fn prs_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        let r = IntPoly::new(prem(a.coeffs(), b.coeffs()));
        if r.is_zero() {
            return b.primitive();
        }
        if r.degree() == Some(0) {
            return IntPoly::constant(BigInt::one());
        }
        a = b;
        b = r.primitive();
    }
}

/// GCDHEU (Char–Geddes–Gonnet): evaluate at a large integer, take the
/// integer gcd and read the polynomial back from its balanced digits.
/// Inputs are primitive; the answer is verified by trial division.
fn heuristic_gcd(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let norm = |p: &IntPoly| p.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default();
    let mut xi = BigInt::from(2) * norm(a).min(norm(b)) + BigInt::from(29);
    let max_deg = a.degree()?.max(b.degree()?) as u64;
    for _ in 0..6 {
        if xi.bits() * max_deg > 8_000_000 {
            return None;
        }
        let ga = a.eval(&xi);
        let gb = b.eval(&xi);
        let gamma = ga.gcd(&gb);
        if !gamma.is_zero() {
            let cand = IntPoly::new(balanced_digits(gamma, &xi)).primitive();
            if cand.degree().is_some()
                && a.div_exact(&cand).is_some()
                && b.div_exact(&cand).is_some()
            {
                return Some(cand);
            }
        }
        xi = xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

fn balanced_digits(mut v: BigInt, base: &BigInt) -> Vec<BigInt> {
    let half = base / 2;
    let mut out = Vec::new();
    while !v.is_zero() {
        let mut d = v.mod_floor(base);
        if d > half {
            d -= base;
        }
        v = (v - &d) / base;
        out.push(d);
    }
    out
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl ExactRing for IntPoly {
    fn r_zero() -> Self {
        IntPoly::default()
    }
    fn r_one() -> Self {
        IntPoly::constant(BigInt::one())
    }
    fn r_is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn r_add(&self, other: &Self) -> Self {
        self + other
    }
    fn r_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn r_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn r_neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn r_div_exact(&self, other: &Self) -> Option<Self> {
        IntPoly::div_exact(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64(cs)
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 3, x - 5) = 3 - 5
        let r = resultant(ip(&[-3, 1]).coeffs(), ip(&[-5, 1]).coeffs());
        assert_eq!(r, BigInt::from(-2));
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(a, b) = lc(a)^deg b · Π b(roots of a); a = (x-1)(x-2), b = x^2 + 1
        let a = ip(&[2, -3, 1]);
        let b = ip(&[1, 0, 1]);
        assert_eq!(resultant(a.coeffs(), b.coeffs()), BigInt::from(2 * 5));
        // symmetry with sign (-1)^(2·2)
        assert_eq!(resultant(b.coeffs(), a.coeffs()), BigInt::from(10));
        // odd degrees flip the sign
        let c = ip(&[0, 1]);
        let d = ip(&[-2, 0, 0, 1]);
        assert_eq!(resultant(c.coeffs(), d.coeffs()), BigInt::from(-2));
        assert_eq!(resultant(d.coeffs(), c.coeffs()), BigInt::from(2));
    }

    #[test]
    fn sign_evaluation_matches_rational_evaluation() {
        let p = ip(&[-7, 3, 0, 2, -1]);
        for (n, d) in [(1, 3), (-5, 2), (7, 4), (0, 1), (22, 7)] {
            let t = Rational::new(BigInt::from(n), BigInt::from(d));
            let v = p.eval_rational(&t);
            assert_eq!(p.sign_at(&t), super::super::rational::sign(&v), "at {t}");
        }
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^3 (x+2)^2 (x^2+1)
        let f1 = ip(&[-1, 1]);
        let f2 = ip(&[2, 1]);
        let f3 = ip(&[1, 0, 1]);
        let p = &(&(&(&f1 * &f1) * &f1) * &(&f2 * &f2)) * &f3;
        let g = p.gcd(&p.derivative());
        assert_eq!(g, &(&f1 * &f1) * &f2);
        assert_eq!(p.squarefree_part(), &(&f1 * &f2) * &f3);
        let dec = p.scale(&BigInt::from(6)).squarefree_decomposition();
        assert_eq!(dec, vec![(f3.clone(), 1), (f2.clone(), 2), (f1.clone(), 3)]);
    }

    #[test]
    fn prs_gcd_agrees_with_heuristic() {
        let a = &ip(&[3, -1, 4, 1]) * &ip(&[-5, 9, 2]);
        let b = &ip(&[6, 5, -3]) * &ip(&[-5, 9, 2]);
        assert_eq!(prs_gcd(&a.primitive(), &b.primitive()), ip(&[-5, 9, 2]));
        assert_eq!(heuristic_gcd(&a.primitive(), &b.primitive()), Some(ip(&[-5, 9, 2])));
    }

    #[test]
    fn root_bound_dominates_roots() {
        let p = ip(&[-100, 0, 1]);
        assert!(p.root_bound() > BigInt::from(10));
    }
}
