//! Topological profile of the real locus of `P_n(x, λ) = 0` over the three
//! intervals cut out by the singular points `x = 0` and `x = 1`.
//!
//! Inside an interval the number of real `λ`-roots can only change where the
//! `λ`-discriminant vanishes or the leading coefficient drops degree. The
//! profile certifies the first never happens, splits the interval at the
//! real roots of the leading coefficient (vertical asymptotes), and counts
//! roots by Sturm sequences at rational samples in each piece.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_decimal, format_rational, int, Rational};
use crate::algebra::{BiPoly, UniPoly, Var};
use crate::elimination::{disc_lambda, resultant};
use crate::error::{Error, Result};
use crate::keypoly::{CurveFamily, KeyFamily};
use crate::puiseux::half_branch_counts;
use crate::realroots::{isolate_roots, refine, RootInterval, SturmChain};

/// `(−∞, 0)`, `(0, 1)`, `(1, ∞)`.
pub const BASE_INTERVALS: [(Option<i64>, Option<i64>); 3] =
    [(None, Some(0)), (Some(0), Some(1)), (Some(1), None)];

/// Real half-branches of one interval ending at a singular point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub point: [String; 2],
    pub half_branches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalProfile {
    pub interval: String,
    /// Number of distinct real arcs over the interval.
    pub branch_count: usize,
    /// Real `λ`-root counts on each piece between vertical asymptotes.
    pub segment_counts: Vec<usize>,
    /// No arc has a horizontal tangent: `Res_λ(P, ∂x P)` has no real root
    /// in the interval.
    pub monotone: bool,
    pub asymptote_at_half: bool,
    pub incidences: Vec<Incidence>,
    /// `(above, below)` the line `λ = x`, per piece.
    pub order_pattern: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSignature {
    pub intervals: Vec<IntervalProfile>,
}

fn label(lo: Option<i64>, hi: Option<i64>) -> String {
    let f = |v: Option<i64>, inf: &str| v.map_or(inf.to_string(), |v| v.to_string());
    format!("({},{})", f(lo, "-inf"), f(hi, "inf"))
}

fn sturm(p: &UniPoly) -> SturmChain {
    let (ip, _) = p.to_int();
    SturmChain::new(&ip.squarefree_part())
}

/// Roots strictly inside `(lo, hi)`.
fn roots_inside(p: &UniPoly, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
    sturm(p).count_open(lo, hi)
}

/// `k` rational points strictly inside `(lo, hi)`.
fn samples(lo: Option<&Rational>, hi: Option<&Rational>, k: usize) -> Vec<Rational> {
    let den = Rational::from_integer((k as i64 + 1).into());
    (1..=k)
        .map(|i| {
            let t = Rational::from_integer((i as i64).into()) / &den;
            match (lo, hi) {
                (Some(a), Some(b)) => a + (b - a) * t,
                (None, Some(b)) => b - &t / (Rational::one() - &t),
                (Some(a), None) => a + &t / (Rational::one() - &t),
                (None, None) => (t - Rational::new(1.into(), 2.into())) * int(2 * k as i64),
            }
        })
        .collect()
}

struct Curve {
    p: BiPoly,
    lc: UniPoly,
    disc: UniPoly,
    r1: UniPoly,
    diag: UniPoly,
}

impl Curve {
    fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("profiles need n >= 2".into()));
        }
        let p = (*KeyFamily::new(CurveFamily::Legendre).key_poly(n)).clone();
        let lc = p.lc_in(Var::Lambda);
        let disc = disc_lambda(&p)?;
        let r1 = resultant(&p, &p.derivative(Var::X), Var::Lambda)?;
        let diag = p.substitute(&BiPoly::x(), &BiPoly::x()).eval_lambda(&Rational::zero());
        Ok(Curve { p, lc, disc, r1, diag })
    }

    /// Distinct real roots of `P(x0, ·)`, and how many lie above `λ = x0`.
    fn count_at(&self, x0: &Rational) -> (usize, usize) {
        let chain = sturm(&self.p.eval_x(x0));
        (chain.count(None, None), chain.count_open(Some(x0), None))
    }
}

fn interval(
    c: &Curve,
    lo: Option<Rational>,
    hi: Option<Rational>,
    name: String,
    samples_per_piece: usize,
    incidences: Vec<Incidence>,
) -> Result<IntervalProfile> {
    let (lo, hi) = (lo.as_ref(), hi.as_ref());
    // vertical asymptotes inside the interval
    let mut asymptotes = Vec::new();
    for r in isolate_roots(&c.lc) {
        let inside = lo.map_or(true, |a| &r.hi > a) && hi.map_or(true, |b| &r.lo < b);
        if !inside {
            continue;
        }
        match r.exact_value() {
            Some(v) if lo.map_or(true, |a| v > a) && hi.map_or(true, |b| v < b) => {
                asymptotes.push(v.clone())
            }
            Some(_) => {}
            None => {
                return Err(Error::Profile(format!(
                    "irrational vertical asymptote in ({}, {}) on {name}",
                    r.lo, r.hi
                )))
            }
        }
    }
    if roots_inside(&c.disc, lo, hi) != 0 {
        return Err(Error::Profile(format!(
            "uncertified: the lambda-discriminant has a real root on {name}"
        )));
    }
    if roots_inside(&c.diag, lo, hi) != 0 {
        return Err(Error::Profile(format!(
            "uncertified: the curve meets the diagonal inside {name}"
        )));
    }
    let monotone = roots_inside(&c.r1, lo, hi) == 0;
    let mut cuts: Vec<Option<&Rational>> = vec![lo];
    cuts.extend(asymptotes.iter().map(Some));
    cuts.push(hi);
    let mut segment_counts = Vec::new();
    let mut order_pattern = Vec::new();
    for w in cuts.windows(2) {
        let mut seen: Option<(usize, usize)> = None;
        for x0 in samples(w[0], w[1], samples_per_piece) {
            let (total, above) = c.count_at(&x0);
            let here = (total, above);
            match seen {
                None => seen = Some(here),
                Some(s) if s != here => {
                    return Err(Error::Profile(format!(
                        "falsified: branch count changes on {name} near x = {}",
                        format_rational(&x0)
                    )))
                }
                _ => {}
            }
        }
        let (total, above) = seen.unwrap_or((0, 0));
        segment_counts.push(total);
        order_pattern.push((above, total - above));
    }
    // arcs that cross an asymptote continuously are counted on both sides
    let finite: usize = asymptotes.iter().map(|a| c.count_at(a).0).sum();
    let branch_count = segment_counts.iter().sum::<usize>() - finite;
    let half = Rational::new(1.into(), 2.into());
    Ok(IntervalProfile {
        interval: name,
        branch_count,
        segment_counts,
        monotone,
        asymptote_at_half: asymptotes.contains(&half),
        incidences,
        order_pattern,
    })
}

/// Profile of `C(n)` over the three base intervals.
pub fn profile_extract(n: usize, samples_per_interval: usize) -> Result<ProfileSignature> {
    if samples_per_interval == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let c = Curve::new(n)?;
    let (z, o) = (Rational::zero(), Rational::one());
    let h0 = half_branch_counts(&c.p, (&z, &z))?;
    let h1 = half_branch_counts(&c.p, (&o, &o))?;
    if h0.unresolved || h1.unresolved {
        return Err(Error::Profile(
            "half-branches at a singular point are not resolved by the Newton polygon".into(),
        ));
    }
    let inc = |pt: i64, k: usize| {
        (k > 0).then(|| Incidence {
            point: [pt.to_string(), pt.to_string()],
            half_branches: k,
        })
    };
    let incidences = [
        vec![inc(0, h0.negative)],
        vec![inc(0, h0.positive), inc(1, h1.negative)],
        vec![inc(1, h1.positive)],
    ];
    let mut intervals = Vec::new();
    for ((lo, hi), inc) in BASE_INTERVALS.iter().zip(incidences) {
        intervals.push(interval(
            &c,
            lo.map(int),
            hi.map(int),
            label(*lo, *hi),
            samples_per_interval,
            inc.into_iter().flatten().collect(),
        )?);
    }
    Ok(ProfileSignature { intervals })
}

/// Sample count used by [`profile_compare`].
pub const COMPARE_SAMPLES: usize = 50;

/// Whether `C(n)` and `C(n mod 2 + 2)` have the same profile.
pub fn profile_compare(n: usize) -> Result<bool> {
    let a = profile_extract(n, COMPARE_SAMPLES)?;
    let b = profile_extract(n % 2 + 2, COMPARE_SAMPLES)?;
    Ok(a == b)
}

/// One real root of `P_n(x0, ·)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRow {
    pub x: Rational,
    pub branch_index: usize,
    pub lambda: RootInterval,
}

impl ProfileRow {
    /// `λ` to `digits` significant digits.
    pub fn lambda_decimal(&self, p: &UniPoly, digits: usize) -> Result<String> {
        let iv = refine_relative(p, &self.lambda, digits)?;
        Ok(format_decimal(&iv.midpoint(), digits))
    }
}

fn refine_relative(p: &UniPoly, iv: &RootInterval, digits: usize) -> Result<RootInterval> {
    let tenth = Rational::new(1.into(), 10.into());
    let mut w = num_traits::pow(tenth.clone(), digits + 2);
    let mut iv = refine(p, iv, &w)?;
    for _ in 0..64 {
        if iv.is_exact() {
            break;
        }
        let scale = if iv.lo.is_positive() {
            iv.lo.clone()
        } else if iv.hi.is_negative() {
            -iv.hi.clone()
        } else {
            Rational::zero()
        };
        if !scale.is_zero() && iv.width() < &scale * num_traits::pow(tenth.clone(), digits + 2) {
            break;
        }
        w = &w * num_traits::pow(tenth.clone(), 4);
        iv = refine(p, &iv, &w)?;
    }
    Ok(iv)
}

/// Branch table of `C(n)` at `samples` equally spaced rational `x`; with
/// `open`, the endpoints are excluded.
pub fn profile_rows(
    n: usize,
    x_min: &Rational,
    x_max: &Rational,
    samples: usize,
    open: bool,
) -> Result<Vec<(UniPoly, Vec<ProfileRow>)>> {
    if x_min >= x_max {
        return Err(Error::InvalidArgument("need x_min < x_max".into()));
    }
    if samples < 2 && !open {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let p = KeyFamily::new(CurveFamily::Legendre).key_poly(n);
    let xs: Vec<Rational> = if open {
        self::samples(Some(x_min), Some(x_max), samples)
    } else {
        let step = (x_max - x_min) / Rational::from_integer((samples as i64 - 1).into());
        (0..samples)
            .map(|k| x_min + &step * Rational::from_integer((k as i64).into()))
            .collect()
    };
    Ok(xs
        .into_iter()
        .map(|x0| {
            let q = p.eval_x(&x0);
            let rows = isolate_roots(&q)
                .into_iter()
                .enumerate()
                .map(|(i, r)| ProfileRow {
                    x: x0.clone(),
                    branch_index: i,
                    lambda: r,
                })
                .collect();
            (q, rows)
        })
        .collect())
}
