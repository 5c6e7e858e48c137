//! Floating-point checks of the closed-form real solutions of `P_3 = 0`
//! (trigonometric form of Cardano) and `P_4 = 0` (Ferrari).

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use serde_json::json;

use crate::algebra::{BiPoly, Var};
use crate::keypoly::{CurveFamily, KeyFamily};

use super::{ReportRow, VerificationReport};

const SAMPLES_PER_REGION: usize = 20;

fn region_samples(lo: Option<f64>, hi: Option<f64>) -> Vec<f64> {
    (0..SAMPLES_PER_REGION)
        .map(|k| {
            let t = (k as f64 + 0.5) / SAMPLES_PER_REGION as f64;
            match (lo, hi) {
                (Some(a), Some(b)) => a + (b - a) * t,
                (None, Some(b)) => b - t / (1.0 - t),
                (Some(a), None) => a + t / (1.0 - t),
                (None, None) => unreachable!(),
            }
        })
        .collect()
}

/// 20 samples in each region where the closed forms are real: for `n = 3`
/// the four intervals cut out by `0, 1/2, 1`; for `n = 4` the two outer
/// intervals plus `(0, 1)`, where only the sign claims are checked.
pub fn default_samples(n: usize) -> Vec<f64> {
    let regions: &[(Option<f64>, Option<f64>)] = match n {
        3 => &[(None, Some(0.0)), (Some(0.0), Some(0.5)), (Some(0.5), Some(1.0)), (Some(1.0), None)],
        4 => &[(None, Some(0.0)), (Some(0.0), Some(1.0)), (Some(1.0), None)],
        _ => &[],
    };
    regions.iter().flat_map(|&(a, b)| region_samples(a, b)).collect()
}

/// The three real roots of `P_3(x, ·)` for `x ∉ {0, 1/2, 1}`.
pub(crate) fn trig_roots_n3(x: f64) -> [f64; 3] {
    let xs = x - 0.5;
    let v = Complex64::new(xs * xs / 6.0 - 1.0 / 216.0, x * (x - 1.0) * xs / (3.0 * 3f64.sqrt()));
    let u = v.cbrt() * (x * (x - 1.0) / xs);
    let shift = 5.0 * xs / 6.0 + 0.5 + 1.0 / (24.0 * xs);
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let zeta = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 3.0);
        *o = 2.0 * (zeta * u).re + shift;
    }
    out
}

/// Ferrari data for `P_4(x, ·)`.
pub(crate) struct Ferrari {
    pub b3: f64,
    pub p: f64,
    pub q: f64,
    pub m: f64,
}

impl Ferrari {
    pub fn new(p4: &BiPoly, x: f64) -> Self {
        let rows: Vec<f64> = p4.rows(Var::Lambda).iter().map(|r| r.eval_f64(x)).collect();
        let b: Vec<f64> = rows.iter().map(|r| r / rows[4]).collect();
        let p = b[2] - 3.0 / 8.0 * b[3].powi(2);
        let q = b[3].powi(3) / 8.0 - b[2] * b[3] / 2.0 + b[1];
        let xs = x - 0.5;
        let beta = 1.0 / (xs * xs + 1.0 / 16.0);
        let u1 = xs.powi(4) + 5.0 / 6.0 * xs * xs + 11.0 / 432.0;
        let u2 = (x * (x - 1.0)).powi(3) * (xs * xs + 5.0 / 108.0);
        let r2 = Complex64::new(u2, 0.0).sqrt();
        let gamma = ((r2 + u1).cbrt() + (-r2 + u1).cbrt()).re;
        let m0 = beta / 4.0 * (x * (x - 1.0)).powi(2) * gamma;
        Ferrari { b3: b[3], p, q, m: m0 - p / 3.0 }
    }

    /// `−(√(2m)(p+m) − q)` and `−(√(2m)(p+m) + q)`.
    pub fn sign_quantities(&self) -> (f64, f64) {
        let a = (2.0 * self.m).sqrt() * (self.p + self.m);
        (-(a - self.q), -(a + self.q))
    }

    /// The real pair selected by `±₁`: `−` for `x ≥ 1`, `+` for `x ≤ 0`.
    pub fn real_pair(&self, x: f64) -> [f64; 2] {
        let s1 = if x >= 1.0 { -1.0 } else { 1.0 };
        let sm = (2.0 * self.m).sqrt();
        let inner = -(2.0 * self.p + 2.0 * self.m + s1 * 2f64.sqrt() * self.q / self.m.sqrt());
        let r = inner.max(0.0).sqrt();
        [(s1 * sm + r) / 2.0 - self.b3 / 4.0, (s1 * sm - r) / 2.0 - self.b3 / 4.0]
    }
}

fn residual(p: &BiPoly, x: f64, l: f64) -> f64 {
    p.eval_f64(x, l).abs() / (1.0 + p.abs_scale_f64(x, l))
}

/// Residuals `|P_n(x, λ(x))| / (1 + Σ|a_ij x^i λ^j|)` of the closed-form
/// solutions, and the sign claims for `n = 4`.
pub fn numeric_parametrization_check(n: usize, x_samples: &[f64], tol: f64) -> VerificationReport {
    let started = Instant::now();
    let bounds = json!({ "n": n, "samples": x_samples.len(), "tol": tol });
    let kf = KeyFamily::new(CurveFamily::Legendre);
    let p = kf.key_poly(n.max(1));
    let mut rows = Vec::new();
    for &x in x_samples {
        let params = json!({ "n": n, "x": x });
        let bad = |why: &str| {
            ReportRow::rejected(
                "parametrization",
                params.clone(),
                &crate::Error::InvalidArgument(why.into()),
            )
        };
        match n {
            3 => {
                if [0.0, 0.5, 1.0].contains(&x) {
                    rows.push(bad("sample at 0, 1/2 or 1"));
                    continue;
                }
                let res = trig_roots_n3(x).map(|l| residual(&p, x, l));
                let worst = res.iter().cloned().fold(0.0, f64::max);
                rows.push(ReportRow::new(
                    "n3_trig",
                    params,
                    json!(format!("< {tol:e}")),
                    json!(res),
                    worst < tol,
                ));
            }
            4 => {
                if x == 0.0 || x == 1.0 {
                    rows.push(bad("sample at 0 or 1"));
                    continue;
                }
                let fe = Ferrari::new(&p, x);
                let (a, b) = fe.sign_quantities();
                let claims = (a >= 0.0) == (x >= 1.0) && (b >= 0.0) == (x <= 0.0);
                rows.push(ReportRow::new(
                    "n4_sign_claims",
                    params.clone(),
                    json!({ "i": x >= 1.0, "ii": x <= 0.0 }),
                    json!({ "i": a, "ii": b }),
                    claims,
                ));
                if x > 0.0 && x < 1.0 {
                    continue;
                }
                let res = fe.real_pair(x).map(|l| residual(&p, x, l));
                let worst = res.iter().cloned().fold(0.0, f64::max);
                rows.push(ReportRow::new(
                    "n4_ferrari",
                    params,
                    json!(format!("< {tol:e}")),
                    json!(res),
                    worst < tol,
                ));
            }
            _ => {
                rows.push(bad("closed forms exist for n = 3 and n = 4"));
                break;
            }
        }
    }
    VerificationReport::new("numeric", bounds, rows, started)
}
