//! Resultants and discriminants of bivariate polynomials.
//!
//! Two engines compute the same resultant: the subresultant remainder
//! sequence over `ℤ[t]`, and evaluation at integer nodes followed by
//! interpolation. The second is much faster once the degrees grow, and each
//! serves as an oracle for the other.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::bipoly::{BiPoly, Var};
use crate::algebra::intpoly::{resultant as int_resultant, IntPoly};
use crate::algebra::rational::Rational;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::keypoly::{CurveFamily, KeyFamily};

/// Which algorithm computes a bivariate resultant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Subresultant PRS with polynomial coefficients.
    Prs,
    /// Evaluation at integer nodes and interpolation.
    Interpolation,
    /// PRS for small inputs, interpolation otherwise.
    #[default]
    Auto,
}

/// Degree in the eliminated variable above which `Auto` interpolates.
const AUTO_THRESHOLD: u32 = 8;

/// `Res_v(p, q)`, a polynomial in the other variable, by subresultant PRS.
pub fn resultant(p: &BiPoly, q: &BiPoly, v: Var) -> Result<UniPoly> {
    resultant_with(p, q, v, Engine::Prs)
}

pub fn resultant_with(p: &BiPoly, q: &BiPoly, v: Var, engine: Engine) -> Result<UniPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::InvalidArgument("resultant of two zero polynomials".into()));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(UniPoly::zero());
    }
    let (rp, dp) = p.integer_rows(v);
    let (rq, dq) = q.integer_rows(v);
    let use_prs = match engine {
        Engine::Prs => true,
        Engine::Interpolation => false,
        Engine::Auto => p.degree_in(v).unwrap().max(q.degree_in(v).unwrap()) <= AUTO_THRESHOLD,
    };
    let r = if use_prs {
        UniPoly::from_int(&int_resultant(&rp, &rq))
    } else {
        resultant_interpolated(&rp, &rq)
    };
    // Res(p/dp, q/dq) = Res(p, q) / (dp^deg q · dq^deg p)
    let scale = num_traits::pow(Rational::from_integer(dp), rq.len() - 1)
        * num_traits::pow(Rational::from_integer(dq), rp.len() - 1);
    Ok(r.scale(&scale.recip()))
}

/// Bound on the degree of `Res_v(a, b)` in the other variable.
fn degree_bound(a: &[IntPoly], b: &[IntPoly]) -> usize {
    let other = |rows: &[IntPoly]| rows.iter().filter_map(|r| r.degree()).max().unwrap_or(0);
    (b.len() - 1) * other(a) + (a.len() - 1) * other(b)
}

/// Integer nodes 0, 1, −1, 2, −2, …
fn node(i: usize) -> BigInt {
    let k = (i as i64 + 1) / 2;
    BigInt::from(if i % 2 == 1 { k } else { -k })
}

fn resultant_interpolated(a: &[IntPoly], b: &[IntPoly]) -> UniPoly {
    let bound = degree_bound(a, b);
    let needed = bound + 1;
    let lead_a = a.last().unwrap();
    let lead_b = b.last().unwrap();
    // a node is bad when a leading coefficient vanishes there; there are at
    // most deg(lead_a) + deg(lead_b) of those
    let spare = lead_a.degree().unwrap_or(0) + lead_b.degree().unwrap_or(0);
    let nodes: Vec<BigInt> = (0..needed + spare)
        .map(node)
        .filter(|t| !lead_a.eval(t).is_zero() && !lead_b.eval(t).is_zero())
        .take(needed)
        .collect();
    assert_eq!(nodes.len(), needed, "not enough interpolation nodes");
    let values: Vec<BigInt> = nodes
        .par_iter()
        .map(|t| {
            let ea: Vec<BigInt> = a.iter().map(|r| r.eval(t)).collect();
            let eb: Vec<BigInt> = b.iter().map(|r| r.eval(t)).collect();
            int_resultant(&ea, &eb)
        })
        .collect();
    interpolate(&nodes, &values)
}

/// Newton interpolation through integer points, returned in monomial form.
pub fn interpolate(nodes: &[BigInt], values: &[BigInt]) -> UniPoly {
    let n = nodes.len();
    let xs: Vec<Rational> = nodes.iter().cloned().map(Rational::from_integer).collect();
    let mut dd: Vec<Rational> = values.iter().cloned().map(Rational::from_integer).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form
    let mut acc = vec![Rational::zero(); n];
    let mut len = 0usize;
    for i in (0..n).rev() {
        // acc = acc · (t − x_i) + dd[i]
        let mut next = vec![Rational::zero(); len + 1];
        for k in 0..len {
            next[k + 1] += &acc[k];
            next[k] -= &acc[k] * &xs[i];
        }
        next[0] += &dd[i];
        len += 1;
        acc[..len].clone_from_slice(&next);
    }
    acc.truncate(len);
    UniPoly::new(acc)
}

/// `(−1)^(d(d−1)/2) · Res_v(p, ∂_v p) / lc_v(p)`, a polynomial in the other
/// variable.
pub fn discriminant(p: &BiPoly, v: Var, engine: Engine) -> Result<UniPoly> {
    let d = match p.degree_in(v) {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "discriminant needs positive degree in {v:?}"
            )))
        }
    };
    let r = resultant_with(p, &p.derivative(v), v, engine)?;
    let lc = p.lc_in(v);
    let q = r
        .div_exact(&lc)
        .ok_or_else(|| Error::Internal("resultant not divisible by the leading coefficient".into()))?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -&q } else { q })
}

/// Discriminant with respect to `x`, as a polynomial in `λ`.
pub fn discriminant_x(p: &BiPoly) -> Result<UniPoly> {
    discriminant(p, Var::X, Engine::Auto)
}

/// Discriminant with respect to `λ`, as a polynomial in `x`.
pub fn disc_lambda(p: &BiPoly) -> Result<UniPoly> {
    discriminant(p, Var::Lambda, Engine::Auto)
}

/// Predicted `λ`-degree of `disc_x(P_n)`.
pub fn predicted_disc_degree(family: &CurveFamily, n: usize) -> Option<usize> {
    match family {
        CurveFamily::Legendre => Some(3 * n * n - 3 * n + 2),
        CurveFamily::ConjugatePair => Some(4 * n * n - 2 * n),
        CurveFamily::FixedCubic(_) => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscDegreeRow {
    pub n: usize,
    pub observed: usize,
    pub predicted: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscDegreeReport {
    pub family: String,
    pub rows: Vec<DiscDegreeRow>,
}

impl DiscDegreeReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

/// Observed against predicted discriminant degrees for `n = n_min..=n_max`.
pub fn disc_degree_report(
    family: &CurveFamily,
    n_min: usize,
    n_max: usize,
) -> Result<DiscDegreeReport> {
    if n_min < 1 || n_max < n_min {
        return Err(Error::InvalidArgument("need 1 <= n_min <= n_max".into()));
    }
    if matches!(family, CurveFamily::FixedCubic(_)) {
        return Err(Error::InvalidArgument(
            "discriminant degrees are defined for the one-parameter families".into(),
        ));
    }
    let kf = KeyFamily::new(family.clone());
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let d = discriminant_x(&kf.key_poly(n))?;
        let observed = d.degree().unwrap_or(0);
        let predicted = predicted_disc_degree(family, n).unwrap();
        rows.push(DiscDegreeRow {
            n,
            observed,
            predicted,
            matches: observed == predicted,
        });
    }
    Ok(DiscDegreeReport {
        family: family.name().into(),
        rows,
    })
}

/// `R1 = Res_λ(p, ∂x p)` and `R2 = Res_λ(p, ∂λ p)` as polynomials in `x`.
/// The `x`-coordinate of any affine singular point is a common root.
pub fn eliminate_singular_candidates(p: &BiPoly) -> Result<(UniPoly, UniPoly)> {
    if p.total_degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidArgument("polynomial is constant".into()));
    }
    let px = p.derivative(Var::X);
    let pl = p.derivative(Var::Lambda);
    let r1 = resultant_with(p, &px, Var::Lambda, Engine::Auto)?;
    let r2 = resultant_with(p, &pl, Var::Lambda, Engine::Auto)?;
    Ok((r1, r2))
}

/// Removes the content of a polynomial with integer coefficients and makes
/// the leading coefficient positive; used to print discriminants compactly.
pub fn primitive_part(p: &UniPoly) -> UniPoly {
    let (ip, _) = p.to_int();
    let ip = if ip.lc().is_negative() { ip.scale(&-BigInt::one()) } else { ip };
    UniPoly::from_int(&ip)
}
