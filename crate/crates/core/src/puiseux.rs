//! Newton polygons and Puiseux branches `λ = λ(x)` of a plane curve at one
//! of its points.
//!
//! A branch is written with a uniformizer `t > 0`:
//! `x − x0 = s · t^q`, `λ − λ0 = t^p (c1 + c2 t + c3 t² + …)`, where
//! `s = ±1` picks the side of the center and `γ = p/q` is the initial
//! exponent read off a polygon edge.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::bipoly::BiPoly;
use crate::algebra::quadext::QuadExt;
use crate::algebra::rational::Rational;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::realroots::{isolate_roots, rational_roots};

/// One edge of the lower hull, from `start` (smaller `x`-exponent) to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub start: (u32, u32),
    pub end: (u32, u32),
}

impl Edge {
    fn di(&self) -> i64 {
        self.end.0 as i64 - self.start.0 as i64
    }

    /// Drop in the `λ`-exponent along the edge.
    pub fn height(&self) -> u32 {
        self.start.1 - self.end.1
    }

    /// `Δj / Δi`, negative on the hull segments facing the origin.
    pub fn slope(&self) -> Rational {
        Rational::new((-(self.height() as i64)).into(), self.di().into())
    }

    /// Initial exponent `γ = −1/slope`, so that `λ ~ c · x^γ`.
    pub fn gamma(&self) -> Rational {
        Rational::new(self.di().into(), (self.height() as i64).into())
    }

    pub fn lattice_length(&self) -> u32 {
        (self.di() as u32).gcd(&self.height())
    }

    /// Whether `(i, j)` lies on the supporting line of the edge.
    pub fn contains(&self, (i, j): (u32, u32)) -> bool {
        (i as i64 - self.start.0 as i64) * self.height() as i64
            == (self.start.1 as i64 - j as i64) * self.di()
    }
}

/// Lower hull of the support of a polynomial translated to its center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub center: (Rational, Rational),
    /// Translated polynomial, with the center moved to the origin.
    pub local: BiPoly,
    pub support: Vec<(u32, u32)>,
    pub vertices: Vec<(u32, u32)>,
    pub edges: Vec<Edge>,
}

fn cross(o: (u32, u32), a: (u32, u32), b: (u32, u32)) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

/// The polygon of `p` at `center`, which must be a point of the curve.
pub fn newton_polygon(p: &BiPoly, center: (&Rational, &Rational)) -> Result<NewtonPolygon> {
    if !p.eval(center.0, center.1).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "({}, {}) is not on the curve",
            center.0, center.1
        )));
    }
    let local = p.translate(center.0, center.1);
    let support: Vec<(u32, u32)> = local.terms().map(|(&e, _)| e).collect();
    if support.is_empty() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    // lowest point in each column, then the lower convex chain
    let mut cols: Vec<(u32, u32)> = Vec::new();
    for &(i, j) in &support {
        match cols.last_mut() {
            Some(last) if last.0 == i => last.1 = last.1.min(j),
            _ => cols.push((i, j)),
        }
    }
    let mut hull: Vec<(u32, u32)> = Vec::new();
    for &pt in &cols {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    // keep the descending part, up to the first point of minimal height
    let min_j = hull.iter().map(|v| v.1).min().unwrap();
    let stop = hull.iter().position(|v| v.1 == min_j).unwrap();
    hull.truncate(stop + 1);
    let edges = hull
        .windows(2)
        .map(|w| Edge {
            start: w[0],
            end: w[1],
        })
        .collect();
    Ok(NewtonPolygon {
        center: (center.0.clone(), center.1.clone()),
        local,
        support,
        vertices: hull,
        edges,
    })
}

/// Side of the center on which a half-branch lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    fn sign(self) -> i64 {
        match self {
            Side::Positive => 1,
            Side::Negative => -1,
        }
    }
}

/// `Σ a_ij s^i c^j` over the support points on the edge, for the local
/// polynomial. With `s = 1` this is the coefficient of the lowest power of
/// `x` after substituting `λ = c x^γ`.
pub fn edge_polynomial_on(local: &BiPoly, edge: &Edge, side: Side) -> UniPoly {
    let deg = edge.start.1 as usize;
    let mut cs = vec![Rational::zero(); deg + 1];
    for (&(i, j), a) in local.terms() {
        if edge.contains((i, j)) {
            let v = if side == Side::Negative && i % 2 == 1 { -a } else { a.clone() };
            cs[j as usize] += v;
        }
    }
    UniPoly::new(cs)
}

pub fn edge_polynomial(poly: &NewtonPolygon, edge: &Edge) -> UniPoly {
    edge_polynomial_on(&poly.local, edge, Side::Positive)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reality {
    Real,
    ComplexPair,
    /// An edge factor of degree ≥ 3 with no rational root.
    Unresolved,
}

/// A truncated Puiseux branch; see the module documentation for the
/// parametrization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxBranch {
    pub center: (Rational, Rational),
    pub side: Side,
    pub gamma: Rational,
    pub coeffs: Vec<QuadExt>,
    pub reality: Reality,
    /// Edge factor carrying the roots of a complex or unresolved marker.
    pub factor: Option<UniPoly>,
}

impl PuiseuxBranch {
    /// `(p, q)` with `γ = p/q` in lowest terms.
    pub fn exponents(&self) -> (u32, u32) {
        (
            self.gamma.numer().to_u32().unwrap(),
            self.gamma.denom().to_u32().unwrap(),
        )
    }

    pub fn field_name(&self) -> String {
        self.coeffs
            .iter()
            .find(|c| !c.is_rational())
            .map(|c| c.field_name())
            .unwrap_or_else(|| "Q".into())
    }

    /// `λ − λ0` at `x − x0 = s t^q`, evaluated in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let (p, q) = self.exponents();
        let dx = x - crate::algebra::rational::to_f64(&self.center.0);
        let t = (dx * self.side.sign() as f64).max(0.0).powf(1.0 / q as f64);
        let series: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64() * t.powi(k as i32))
            .sum();
        crate::algebra::rational::to_f64(&self.center.1) + t.powi(p as i32) * series
    }
}

fn qe(r: &Rational) -> QuadExt {
    QuadExt::from_rational(r.clone())
}

/// Roots of an edge polynomial, as branch seeds.
fn seeds(
    e: &UniPoly,
    center: &(Rational, Rational),
    side: Side,
    gamma: &Rational,
) -> Result<Vec<PuiseuxBranch>> {
    let mk = |coeffs: Vec<QuadExt>, reality, factor| PuiseuxBranch {
        center: center.clone(),
        side,
        gamma: gamma.clone(),
        coeffs,
        reality,
        factor,
    };
    let low = e.order().unwrap_or(0);
    let mut rest = e
        .div_exact(&UniPoly::monomial(Rational::one(), low))
        .expect("monomial factor divides");
    let mut out = Vec::new();
    for r in rational_roots(&rest)? {
        let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
        }
        if !r.is_zero() {
            out.push(mk(vec![qe(&r)], Reality::Real, None));
        }
    }
    match rest.degree() {
        None | Some(0) => {}
        Some(2) => {
            let (c, b, a) = (rest.coeff(0), rest.coeff(1), rest.coeff(2));
            let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
            if disc.is_negative() {
                out.push(mk(Vec::new(), Reality::ComplexPair, Some(rest.monic())));
            } else {
                let two_a = Rational::from_integer(2.into()) * &a;
                let sq = QuadExt::sqrt_of(&disc)?;
                let base = qe(&(-&b / &two_a));
                let k = qe(&two_a.recip());
                let mut roots = vec![&base + &(&sq * &k), &base - &(&sq * &k)];
                roots.sort_by(|x, y| {
                    x.try_sub(y)
                        .map(|d| d.signum().cmp(&0))
                        .unwrap_or(Ordering::Equal)
                });
                for r in roots {
                    out.push(mk(vec![r], Reality::Real, None));
                }
            }
        }
        Some(_) => out.push(mk(Vec::new(), Reality::Unresolved, Some(rest.monic()))),
    }
    Ok(out)
}

/// First-order branches on one side of the center, one per edge root.
pub fn initial_branches_on(
    p: &BiPoly,
    center: (&Rational, &Rational),
    side: Side,
) -> Result<Vec<PuiseuxBranch>> {
    let poly = newton_polygon(p, center)?;
    let mut out = Vec::new();
    for e in &poly.edges {
        let ep = edge_polynomial_on(&poly.local, e, side);
        out.extend(seeds(&ep, &poly.center, side, &e.gamma())?);
    }
    Ok(out)
}

/// First-order branches for `x > x0`.
pub fn initial_branches(p: &BiPoly, center: (&Rational, &Rational)) -> Result<Vec<PuiseuxBranch>> {
    initial_branches_on(p, center, Side::Positive)
}

fn series_mul(a: &[QuadExt], b: &[QuadExt], len: usize) -> Vec<QuadExt> {
    let zero = qe(&Rational::zero());
    let mut out = vec![zero; len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `local(s t^q, Σ c_k t^(p+k-1))` as a series in `t`, truncated to `len`
/// coefficients.
fn substitute(local: &BiPoly, b: &PuiseuxBranch, len: usize) -> Vec<QuadExt> {
    let (p, q) = b.exponents();
    let zero = qe(&Rational::zero());
    let mut lam = vec![zero.clone(); len];
    for (k, c) in b.coeffs.iter().enumerate() {
        let idx = p as usize + k;
        if idx < len {
            lam[idx] = c.clone();
        }
    }
    let deg_l = local.deg_lambda().unwrap_or(0) as usize;
    let mut powers = vec![{
        let mut one = vec![zero.clone(); len];
        if len > 0 {
            one[0] = qe(&Rational::one());
        }
        one
    }];
    for k in 1..=deg_l {
        let next = series_mul(&powers[k - 1], &lam, len);
        powers.push(next);
    }
    let mut out = vec![zero; len];
    let s = b.side.sign();
    for (&(i, j), a) in local.terms() {
        let shift = (q * i) as usize;
        if shift >= len {
            continue;
        }
        let a = if s < 0 && i % 2 == 1 { -a } else { a.clone() };
        let a = qe(&a);
        for (k, v) in powers[j as usize].iter().enumerate().take(len - shift) {
            if !v.is_zero() {
                out[k + shift] = &out[k + shift] + &(&a * v);
            }
        }
    }
    out
}

/// `t`-order of the lowest terms: `q·i + p·j` on the edge.
fn edge_valuation(local: &BiPoly, b: &PuiseuxBranch) -> Result<usize> {
    let (p, q) = b.exponents();
    local
        .terms()
        .map(|(&(i, j), _)| (q * i + p * j) as usize)
        .min()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))
}

/// Extends a real branch to `terms` coefficients by linear lifting.
/// Fails with `IrregularBranch` when `c1` is a multiple root of its edge
/// polynomial, since the lifting step then has no linear part.
pub fn continue_branch(p: &BiPoly, branch: &PuiseuxBranch, terms: usize) -> Result<PuiseuxBranch> {
    if branch.reality != Reality::Real || branch.coeffs.is_empty() {
        return Err(Error::InvalidArgument("only real seeded branches continue".into()));
    }
    let local = p.translate(&branch.center.0, &branch.center.1);
    let v = edge_valuation(&local, branch)?;
    // R_u(0, 0): derivative of the edge polynomial at c1, read off the series
    // of ∂λ local along the leading term
    let mut probe = branch.clone();
    probe.coeffs.truncate(1);
    let (p_exp, _) = probe.exponents();
    let dl = local.derivative(crate::algebra::bipoly::Var::Lambda);
    let lin_series = substitute(&dl, &probe, v + 1);
    // ∂λ local contributes at t-order v − p
    let lin = lin_series
        .get(v - p_exp as usize)
        .cloned()
        .unwrap_or_else(|| qe(&Rational::zero()));
    if lin.is_zero() {
        return Err(Error::IrregularBranch(format!(
            "c1 = {} is a multiple root of its edge polynomial",
            branch.coeffs[0]
        )));
    }
    let inv = lin.inv()?;
    let mut out = branch.clone();
    while out.coeffs.len() < terms {
        let k = out.coeffs.len();
        let series = substitute(&local, &out, v + k + 1);
        if let Some(bad) = series[..v + k].iter().position(|c| !c.is_zero()) {
            return Err(Error::Internal(format!(
                "branch residual has a nonzero term of t-order {bad}"
            )));
        }
        let next = -&(&series[v + k] * &inv);
        out.coeffs.push(next);
    }
    Ok(out)
}

/// `x`-order of `p` along a truncated branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidualOrder {
    Finite(Rational),
    /// The truncated series is an exact solution.
    Infinite,
}

impl ResidualOrder {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ResidualOrder::Infinite => serde_json::Value::String("inf".into()),
            ResidualOrder::Finite(r) if r.is_integer() => {
                serde_json::Value::from(r.to_integer().to_i64().unwrap_or(i64::MAX))
            }
            ResidualOrder::Finite(r) => serde_json::Value::String(r.to_string()),
        }
    }
}

/// Substitutes the truncated branch into `p` and returns the `x`-order of
/// what remains.
pub fn branch_residual_order(p: &BiPoly, branch: &PuiseuxBranch) -> Result<ResidualOrder> {
    if branch.coeffs.is_empty() {
        return Err(Error::InvalidArgument("branch has no coefficients".into()));
    }
    let local = p.translate(&branch.center.0, &branch.center.1);
    let (pe, q) = branch.exponents();
    let len = (q * local.deg_x().unwrap_or(0)
        + (pe + branch.coeffs.len() as u32) * local.deg_lambda().unwrap_or(0)) as usize
        + 1;
    let series = substitute(&local, branch, len);
    Ok(match series.iter().position(|c| !c.is_zero()) {
        None => ResidualOrder::Infinite,
        Some(k) => ResidualOrder::Finite(Rational::new(BigInt::from(k), BigInt::from(q))),
    })
}

/// Real half-branches on each side of a center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HalfBranchCounts {
    pub positive: usize,
    pub negative: usize,
    /// A nonzero real edge root is multiple, so its half-branches were not
    /// counted.
    pub unresolved: bool,
}

impl HalfBranchCounts {
    pub fn total(&self) -> usize {
        self.positive + self.negative
    }
}

/// Counts real half-branches through `center` on both sides: each simple
/// nonzero real root of a (signed) edge polynomial carries exactly one.
pub fn half_branch_counts(p: &BiPoly, center: (&Rational, &Rational)) -> Result<HalfBranchCounts> {
    let poly = newton_polygon(p, center)?;
    let mut out = HalfBranchCounts::default();
    for e in &poly.edges {
        for side in [Side::Positive, Side::Negative] {
            let ep = edge_polynomial_on(&poly.local, e, side);
            let mut simple = 0;
            for r in isolate_roots(&ep) {
                if r.exact_value().is_some_and(|v| v.is_zero()) {
                    continue;
                }
                if r.multiplicity == 1 {
                    simple += 1;
                } else {
                    out.unresolved = true;
                }
            }
            match side {
                Side::Positive => out.positive += simple,
                Side::Negative => out.negative += simple,
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchJson {
    pub center: [String; 2],
    pub side: Side,
    pub gamma1: String,
    pub field: String,
    pub coeffs: Vec<String>,
    pub reality: Reality,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_order: Option<serde_json::Value>,
}

pub fn branch_json(b: &PuiseuxBranch, residual: Option<&ResidualOrder>) -> BranchJson {
    BranchJson {
        center: [b.center.0.to_string(), b.center.1.to_string()],
        side: b.side,
        gamma1: b.gamma.to_string(),
        field: b.field_name(),
        coeffs: b.coeffs.iter().map(|c| c.to_string()).collect(),
        reality: b.reality,
        factor: b.factor.as_ref().map(|f| f.to_string()),
        residual_order: residual.map(|r| r.to_json()),
    }
}
