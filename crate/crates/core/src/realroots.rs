//! Exact real-root isolation with Sturm sequences, the sign of `f` at the
//! roots of a key polynomial, and the singular points of `P_n = 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::bipoly::{BiPoly, Var};
use crate::algebra::intpoly::{prem, IntPoly};
use crate::algebra::json::{unipoly_json, PolyJson};
use crate::algebra::rational::{format_rational, simplest_in_closed, simplest_in_open, Rational};
use crate::algebra::unipoly::UniPoly;
use crate::elimination::{disc_lambda, discriminant_x, eliminate_singular_candidates};
use crate::error::{Error, Result};
use crate::keypoly::{CurveFamily, KeyFamily};

/// Iteration cap for interval refinement.
pub const REFINE_CAP: usize = 20_000;

/// Signed remainder sequence `p, p', −rem(p, p'), …` with every member
/// made primitive by a positive factor, so signs are preserved.
#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let p = p.primitive();
        let mut seq = vec![p.clone()];
        if p.degree().unwrap_or(0) == 0 {
            return SturmChain { seq };
        }
        seq.push(p.derivative().primitive());
        loop {
            let k = seq.len();
            let (a, b) = (&seq[k - 2], &seq[k - 1]);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            // prem = lc(b)^e · rem with e = deg a − deg b + 1
            let e = a.degree().unwrap() - b.degree().unwrap() + 1;
            let r = IntPoly::new(prem(a.coeffs(), b.coeffs()));
            if r.is_zero() {
                break;
            }
            let flip = b.lc().is_negative() && e % 2 == 1;
            let c = r.content();
            let mut next = IntPoly::new(r.coeffs().iter().map(|x| x / &c).collect());
            if !flip {
                next = next.scale(&-BigInt::one());
            }
            seq.push(next);
        }
        SturmChain { seq }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.seq[0]
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Sign variations at `t`; `None` with `positive` selects `±∞`.
    pub fn variations_at(&self, t: Option<&Rational>, positive: bool) -> usize {
        match t {
            Some(t) => Self::variations(self.seq.iter().map(|p| p.sign_at(t))),
            None => Self::variations(self.seq.iter().map(|p| p.sign_at_infinity(positive))),
        }
    }

    /// Distinct roots in `(lo, hi]`; `None` bounds are infinite.
    pub fn count(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
        let a = self.variations_at(lo, false);
        let b = self.variations_at(hi, true);
        a.saturating_sub(b)
    }

    /// Distinct roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
        let c = self.count(lo, hi);
        match hi {
            Some(h) if self.poly().sign_at(h) == 0 => c - 1,
            _ => c,
        }
    }
}

/// Sign of `f(γ, λ0)` at a root `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FSign {
    Positive,
    Negative,
    Zero,
}

impl FSign {
    fn from_i8(s: i8) -> Self {
        match s {
            1 => FSign::Positive,
            -1 => FSign::Negative,
            _ => FSign::Zero,
        }
    }
}

/// An isolating interval. Either `lo = hi` is an exact rational root, or
/// `lo < hi`, neither endpoint is a root, and exactly one root lies strictly
/// between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub sign_of_f: Option<FSign>,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn exact(r: Rational, multiplicity: usize) -> Self {
        RootInterval {
            lo: r.clone(),
            hi: r,
            sign_of_f: None,
            multiplicity,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        crate::algebra::rational::to_f64(&self.midpoint())
    }

    /// Whether the interval lies inside `[a, b]`.
    pub fn within(&self, a: &Rational, b: &Rational) -> bool {
        a <= &self.lo && &self.hi <= b
    }
}

/// Isolating intervals for the distinct real roots of a squarefree
/// primitive polynomial, sorted increasingly.
fn isolate_squarefree(p: &IntPoly, chain: &SturmChain) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    let Some(deg) = p.degree() else {
        return out;
    };
    if deg == 0 {
        return out;
    }
    let b = Rational::from_integer(p.root_bound());
    let total = chain.count(None, None);
    let mut stack = vec![(-b.clone(), b, total)];
    while let Some((lo, hi, c)) = stack.pop() {
        match c {
            0 => {}
            1 => out.push(finalize(p, chain, lo, hi)),
            _ => {
                let m = split_point(p, &lo, &hi);
                let left = chain.count(Some(&lo), Some(&m));
                stack.push((m.clone(), hi, c - left));
                stack.push((lo, m, left));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// A rational in the middle third of `(lo, hi)` at which `p` is nonzero.
fn split_point(p: &IntPoly, lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    let three = Rational::from_integer(3.into());
    let m = simplest_in_closed(&(lo + &w / &three), &(hi - &w / &three));
    if p.sign_at(&m) != 0 {
        return m;
    }
    // at most deg(p) of these candidates are roots
    let k = p.degree().unwrap() as i64 + 2;
    for i in 1..k {
        let c = lo + &w * (Rational::from_integer(k.into()) + Rational::from_integer(i.into()))
            / Rational::from_integer((3 * k).into());
        if p.sign_at(&c) != 0 {
            return c;
        }
    }
    unreachable!("every candidate split point is a root")
}

/// Bisection steps spent looking for a rational root inside a one-root
/// interval.
const FINALIZE_STEPS: usize = 160;

/// Shrinks a one-root interval, probing the simplest rational at each step,
/// until the root is found to be rational or no rational with a denominator
/// dividing the leading coefficient can remain inside.
fn finalize(p: &IntPoly, chain: &SturmChain, lo: Rational, hi: Rational) -> (Rational, Rational) {
    let lc = p.lc().abs();
    let mut iv = RootInterval {
        lo,
        hi,
        sign_of_f: None,
        multiplicity: 1,
    };
    for _ in 0..FINALIZE_STEPS {
        let s = simplest_in_open(&iv.lo, Some(&iv.hi));
        if p.sign_at(&s) == 0 {
            return (s.clone(), s);
        }
        if s.denom() > &lc {
            break;
        }
        bisect_step(p, chain, &mut iv);
        if iv.is_exact() {
            break;
        }
    }
    (iv.lo, iv.hi)
}

/// Isolates the real roots of `p` with multiplicities. Rational roots found
/// by the simplest-rational probe are reported exactly.
pub fn isolate_roots(p: &UniPoly) -> Vec<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let (ip, _) = p.to_int();
    let parts = ip.squarefree_decomposition();
    let sq = ip.squarefree_part();
    let chain = SturmChain::new(&sq);
    let part_chains: Vec<(SturmChain, usize)> =
        parts.iter().map(|(q, m)| (SturmChain::new(q), *m)).collect();
    isolate_squarefree(&sq, &chain)
        .into_iter()
        .map(|(lo, hi)| {
            let mult = part_chains
                .iter()
                .find(|(c, _)| {
                    if lo == hi {
                        c.poly().sign_at(&lo) == 0
                    } else {
                        c.count(Some(&lo), Some(&hi)) == 1
                    }
                })
                .map(|(_, m)| *m)
                .unwrap_or(1);
            RootInterval {
                lo,
                hi,
                sign_of_f: None,
                multiplicity: mult,
            }
        })
        .collect()
}

/// Bisects until the interval is narrower than `width`.
pub fn refine(p: &UniPoly, iv: &RootInterval, width: &Rational) -> Result<RootInterval> {
    if iv.is_exact() {
        return Ok(iv.clone());
    }
    let (ip, _) = p.to_int();
    let sq = ip.squarefree_part();
    let chain = SturmChain::new(&sq);
    let mut out = iv.clone();
    let mut steps = 0;
    while &out.width() >= width {
        steps += 1;
        if steps > REFINE_CAP {
            return Err(Error::Precision(REFINE_CAP));
        }
        bisect_step(&sq, &chain, &mut out);
        if out.is_exact() {
            break;
        }
    }
    Ok(out)
}

fn bisect_step(sq: &IntPoly, chain: &SturmChain, iv: &mut RootInterval) {
    let m = iv.midpoint();
    if sq.sign_at(&m) == 0 {
        iv.lo = m.clone();
        iv.hi = m;
        return;
    }
    if chain.count(Some(&iv.lo), Some(&m)) == 1 {
        iv.hi = m;
    } else {
        iv.lo = m;
    }
}

/// All rational roots of `p`, found by isolating and shrinking each interval
/// below `1/lc²`, where at most one rational with denominator dividing the
/// leading coefficient fits.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    let (ip, _) = p.to_int();
    let sq = ip.squarefree_part();
    let lc = Rational::from_integer(sq.lc().abs());
    let width = (&lc * &lc).recip();
    let mut out = Vec::new();
    for iv in isolate_roots(p) {
        let r = refine(p, &iv, &width)?;
        if r.is_exact() {
            out.push(r.lo);
            continue;
        }
        let s = simplest_in_closed(&r.lo, &r.hi);
        if sq.sign_at(&s) == 0 {
            out.push(s);
        }
    }
    Ok(out)
}

/// Decides the sign of `f` at the root enclosed by `iv` (a root of `sq`).
/// Roots shared with `f` are detected through `g = gcd(sq, f)`.
fn sign_of_f_at(
    sq: &IntPoly,
    chain: &SturmChain,
    f: &IntPoly,
    f_chain: &SturmChain,
    g_chain: Option<&SturmChain>,
    iv: &mut RootInterval,
) -> Result<FSign> {
    if iv.is_exact() {
        return Ok(FSign::from_i8(f.sign_at(&iv.lo)));
    }
    if let Some(gc) = g_chain {
        if gc.count_open(Some(&iv.lo), Some(&iv.hi)) == 1 {
            return Ok(FSign::Zero);
        }
    }
    for _ in 0..REFINE_CAP {
        if f_chain.count_open(Some(&iv.lo), Some(&iv.hi)) == 0 {
            return Ok(FSign::from_i8(f.sign_at(&iv.midpoint())));
        }
        bisect_step(sq, chain, iv);
        if iv.is_exact() {
            return Ok(FSign::from_i8(f.sign_at(&iv.lo)));
        }
    }
    Err(Error::Precision(REFINE_CAP))
}

/// Roots of `p` classified by the sign of `f` there.
#[derive(Debug, Clone)]
pub struct RootClassification {
    pub roots: Vec<RootInterval>,
    pub positive: usize,
    pub negative: usize,
    pub ramification: usize,
    /// Degree of the squarefree part of `p`.
    pub squarefree_degree: usize,
}

/// Isolates the roots of `p` and decides the sign of `f` at each.
pub fn classify_roots(p: &UniPoly, f: &UniPoly) -> Result<RootClassification> {
    let mut roots = isolate_roots(p);
    let (ip, _) = p.to_int();
    let sq = ip.squarefree_part();
    let chain = SturmChain::new(&sq);
    let (fi, _) = f.to_int();
    let f_chain = SturmChain::new(&fi.squarefree_part());
    let g = sq.gcd(&fi);
    let g_chain = (g.degree().unwrap_or(0) > 0).then(|| SturmChain::new(&g));
    let (mut pos, mut neg, mut ram) = (0, 0, 0);
    for iv in roots.iter_mut() {
        let s = sign_of_f_at(&sq, &chain, &fi, &f_chain, g_chain.as_ref(), iv)?;
        match s {
            FSign::Positive => pos += 1,
            FSign::Negative => neg += 1,
            FSign::Zero => ram += 1,
        }
        iv.sign_of_f = Some(s);
    }
    Ok(RootClassification {
        roots,
        positive: pos,
        negative: neg,
        ramification: ram,
        squarefree_degree: sq.degree().unwrap_or(0),
    })
}

/// `P_{μ,n}(x, λ0)` for a family.
pub fn specialized_gen_key_poly(
    family: &CurveFamily,
    mu: usize,
    n: usize,
    lambda0: &Rational,
) -> Result<UniPoly> {
    family.specialize(lambda0)?;
    let kf = KeyFamily::new(family.clone());
    Ok(kf.gen_key_poly(mu, n)?.eval_lambda(lambda0))
}

/// Number of real roots `γ` of `P_{μ,n}(x, λ0)` with `f(γ, λ0) > 0`.
pub fn count_positive_f_roots(
    family: &CurveFamily,
    mu: usize,
    n: usize,
    lambda0: &Rational,
) -> Result<usize> {
    let f = family.specialize(lambda0)?;
    let p = specialized_gen_key_poly(family, mu, n, lambda0)?;
    Ok(classify_roots(&p, &f)?.positive)
}

/// Independent count: Sturm counts of the squarefree part of `p` on the open
/// intervals where `f > 0`, whose endpoints are the rational roots of `f`.
/// Returns `None` for families whose real roots may be irrational.
pub fn positive_region_count(
    family: &CurveFamily,
    p: &UniPoly,
    lambda0: &Rational,
) -> Option<usize> {
    let regions: Vec<(Option<Rational>, Option<Rational>)> = match family {
        CurveFamily::Legendre => {
            let mut r = vec![Rational::zero(), Rational::one(), lambda0.clone()];
            r.sort();
            vec![(Some(r[0].clone()), Some(r[1].clone())), (Some(r[2].clone()), None)]
        }
        CurveFamily::ConjugatePair => vec![(Some(Rational::zero()), None)],
        CurveFamily::FixedCubic(_) => return None,
    };
    let (ip, _) = p.to_int();
    let chain = SturmChain::new(&ip.squarefree_part());
    Some(
        regions
            .iter()
            .map(|(a, b)| chain.count_open(a.as_ref(), b.as_ref()))
            .sum(),
    )
}

/// Whether `P_n(·, λ0)` has no repeated root.
pub fn separability_check(family: &CurveFamily, n: usize, lambda0: &Rational) -> bool {
    let kf = KeyFamily::new(family.clone());
    let p = kf.key_poly(n).eval_lambda(lambda0);
    if p.degree().unwrap_or(0) == 0 {
        return true;
    }
    p.gcd(&p.derivative()).degree() == Some(0)
}

/// Which discriminant of `P_n` to examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscDirection {
    /// `disc_x(P_n)`, a polynomial in `λ`.
    XDiscInLambda,
    /// `disc_λ(P_n)`, a polynomial in `x`.
    LambdaDiscInX,
}

#[derive(Debug, Clone)]
pub struct DiscRoots {
    pub disc: UniPoly,
    pub roots: Vec<RootInterval>,
}

impl DiscRoots {
    /// The real root set is exactly `{0, 1}`.
    pub fn is_zero_one(&self) -> bool {
        let exact: Vec<Option<&Rational>> = self.roots.iter().map(|r| r.exact_value()).collect();
        exact.len() == 2
            && exact[0] == Some(&Rational::zero())
            && exact[1] == Some(&Rational::one())
    }
}

pub fn disc_real_roots(family: &CurveFamily, n: usize, which: DiscDirection) -> Result<DiscRoots> {
    if n < 1 || (which == DiscDirection::LambdaDiscInX && n < 2) {
        return Err(Error::InvalidArgument(format!("n = {n} is too small")));
    }
    let kf = KeyFamily::new(family.clone());
    let p = kf.key_poly(n);
    let disc = match which {
        DiscDirection::XDiscInLambda => discriminant_x(&p)?,
        DiscDirection::LambdaDiscInX => disc_lambda(&p)?,
    };
    let roots = isolate_roots(&disc);
    Ok(DiscRoots { disc, roots })
}

/// A real singular point of `P = 0`. Coordinates are exact when the
/// intervals are degenerate; otherwise the point is reported as a box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub x: RootInterval,
    /// `None` when `x` is irrational and the `λ`-coordinate was not resolved.
    pub lambda: Option<RootInterval>,
}

impl SingularPoint {
    pub fn exact(&self) -> Option<(Rational, Rational)> {
        let x = self.x.exact_value()?;
        let l = self.lambda.as_ref()?.exact_value()?;
        Some((x.clone(), l.clone()))
    }
}

/// Real affine singular points of `p(x, λ) = 0`.
pub fn singular_points_of(p: &BiPoly) -> Result<Vec<SingularPoint>> {
    let (r1, r2) = eliminate_singular_candidates(p)?;
    let px = p.derivative(Var::X);
    let pl = p.derivative(Var::Lambda);
    let candidates = r1.squarefree_part().gcd(&r2.squarefree_part());
    let mut out = Vec::new();
    for xr in isolate_roots(&candidates) {
        match xr.exact_value() {
            Some(x0) => {
                let g = p.eval_x(x0).gcd(&px.eval_x(x0)).gcd(&pl.eval_x(x0));
                for lr in isolate_roots(&g) {
                    out.push(SingularPoint {
                        x: RootInterval::exact(x0.clone(), 1),
                        lambda: Some(lr),
                    });
                }
            }
            None => out.push(SingularPoint { x: xr, lambda: None }),
        }
    }
    Ok(out)
}

/// Real affine singular points of the curve `P_n(x, λ) = 0`.
pub fn singular_points_affine(family: &CurveFamily, n: usize) -> Result<Vec<SingularPoint>> {
    if n < 2 {
        return Err(Error::InvalidArgument("singular points need n >= 2".into()));
    }
    let kf = KeyFamily::new(family.clone());
    singular_points_of(&kf.key_poly(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootJson {
    pub lo: String,
    pub hi: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_of_f: Option<FSign>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub poly: PolyJson,
    pub roots: Vec<RootJson>,
}

impl From<&RootInterval> for RootJson {
    fn from(r: &RootInterval) -> Self {
        RootJson {
            lo: format_rational(&r.lo),
            hi: format_rational(&r.hi),
            sign_of_f: r.sign_of_f,
            multiplicity: r.multiplicity,
        }
    }
}

pub fn root_report(p: &UniPoly, v: Var, roots: &[RootInterval]) -> RootReport {
    RootReport {
        poly: unipoly_json(p, v),
        roots: roots.iter().map(RootJson::from).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    /// Brute-force oracle: sign changes of `p` on a fine float grid.
    fn grid_sign_changes(p: &UniPoly, a: f64, b: f64, steps: usize) -> usize {
        let mut count = 0;
        let mut last = p.eval_f64(a).signum();
        for i in 1..=steps {
            let t = a + (b - a) * i as f64 / steps as f64;
            let s = p.eval_f64(t).signum();
            if s != last && s != 0.0 {
                if last != 0.0 {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    #[test]
    fn cubic_with_three_roots() {
        let p = UniPoly::from_i64(&[0, -1, 0, 1]);
        let r = isolate_roots(&p);
        let exact: Vec<Rational> = r.iter().map(|i| i.exact_value().unwrap().clone()).collect();
        assert_eq!(exact, vec![int(-1), int(0), int(1)]);
        assert!(isolate_roots(&UniPoly::from_i64(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn p2_at_two_has_two_roots() {
        let p = UniPoly::new(vec![int(-1), int(0), int(3), int(-3), rat(3, 4)]);
        let r = isolate_roots(&p);
        assert_eq!(r.len(), 2);
        assert_eq!(grid_sign_changes(&p, -20.0, 20.0, 200_000), 2);
    }

    #[test]
    fn multiplicities_and_irrational_roots() {
        // (x − 1/3)² (x² − 2)
        let a = UniPoly::new(vec![rat(-1, 3), int(1)]);
        let p = &a.pow(2) * &UniPoly::from_i64(&[-2, 0, 1]);
        let r = isolate_roots(&p);
        assert_eq!(r.len(), 3);
        assert_eq!(r[1].multiplicity, 2);
        assert_eq!(r[0].multiplicity, 1);
        let fine = refine(&p, &r[2], &rat(1, 1_000_000)).unwrap();
        assert!(fine.lo < rat(1414214, 1_000_000) && fine.hi > rat(1414213, 1_000_000));
        assert_eq!(rational_roots(&p).unwrap(), vec![rat(1, 3)]);
    }

    #[test]
    fn sturm_counts_match_grid() {
        let p = UniPoly::from_i64(&[6, -5, -5, 5, 1, -1]);
        let (ip, _) = p.to_int();
        let c = SturmChain::new(&ip);
        assert_eq!(c.count(Some(&int(-10)), Some(&int(10))), grid_sign_changes(&p, -10.0, 10.0, 100_000));
    }

    #[test]
    fn positive_f_counts() {
        let l = CurveFamily::Legendre;
        assert_eq!(count_positive_f_roots(&l, 1, 3, &int(2)).unwrap(), 2);
        assert_eq!(count_positive_f_roots(&l, 1, 4, &rat(1, 2)).unwrap(), 1);
        assert_eq!(count_positive_f_roots(&l, 2, 4, &int(-1)).unwrap(), 4);
        assert!(matches!(count_positive_f_roots(&l, 1, 3, &int(1)), Err(Error::DegenerateCurve(_))));
    }

    #[test]
    fn region_count_agrees() {
        let l = CurveFamily::Legendre;
        for lam in [int(-2), rat(1, 4), int(3)] {
            for n in 2..=5 {
                let p = specialized_gen_key_poly(&l, 1, n, &lam).unwrap();
                let f = l.specialize(&lam).unwrap();
                let c = classify_roots(&p, &f).unwrap();
                assert_eq!(Some(c.positive), positive_region_count(&l, &p, &lam));
                assert_eq!(c.positive + c.negative + c.ramification, c.roots.len());
            }
        }
    }

    #[test]
    fn separability_examples() {
        assert!(separability_check(&CurveFamily::Legendre, 4, &rat(1, 2)));
        assert!(separability_check(&CurveFamily::ConjugatePair, 4, &rat(57735, 100000)));
        assert!(separability_check(&CurveFamily::Legendre, 1, &int(3)));
    }

    #[test]
    fn legendre_disc_roots_are_zero_and_one() {
        let d = disc_real_roots(&CurveFamily::Legendre, 4, DiscDirection::XDiscInLambda).unwrap();
        assert!(d.is_zero_one());
    }

    #[test]
    fn singular_points_small() {
        for n in [2, 3] {
            let pts = singular_points_affine(&CurveFamily::Legendre, n).unwrap();
            let exact: Vec<_> = pts.iter().map(|p| p.exact().unwrap()).collect();
            assert_eq!(exact, vec![(int(0), int(0)), (int(1), int(1))]);
        }
    }

    #[test]
    fn report_json_shape() {
        let p = UniPoly::from_i64(&[0, -1, 0, 1]);
        let rep = root_report(&p, Var::X, &isolate_roots(&p));
        let s = serde_json::to_string(&rep).unwrap();
        assert!(s.contains(r#""roots":[{"lo":"-1/1","hi":"-1/1","multiplicity":1}"#));
    }
}
