//! Real roots of generalized key polynomials where `f > 0`: `μ` of them when
//! `n − μ` is odd and `2μ` when it is even.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::algebra::rational::{format_rational, rat, Rational};
use crate::keypoly::{CurveFamily, KeyFamily};
use crate::realroots::{classify_roots, positive_region_count};

use super::{ReportRow, VerificationReport};

const CHECK: &str = "numerology";

/// The 14-point λ grid, avoiding 0 and 1.
pub fn default_grid() -> Vec<Rational> {
    [
        (-5, 1),
        (-2, 1),
        (-1, 1),
        (-1, 2),
        (-1, 10),
        (1, 10),
        (1, 4),
        (1, 2),
        (3, 4),
        (9, 10),
        (11, 10),
        (3, 2),
        (2, 1),
        (5, 1),
    ]
    .iter()
    .map(|&(n, d)| rat(n, d))
    .collect()
}

fn expected_count(mu: usize, n: usize) -> usize {
    if (n - mu) % 2 == 1 {
        mu
    } else {
        2 * mu
    }
}

/// `(μ, n)` with `1 ≤ μ ≤ mu_max` and `μ + 2 ≤ n ≤ μ + span`.
pub fn numerology_pairs(mu_max: usize, span: usize) -> Vec<(usize, usize)> {
    (1..=mu_max)
        .flat_map(|mu| (mu + 2..=mu + span).map(move |n| (mu, n)))
        .collect()
}

/// Every `μ ≤ mu_max` and `μ + 2 ≤ n ≤ n_max`.
pub fn verify_numerology(mu_max: usize, n_max: usize, grid: &[Rational]) -> VerificationReport {
    let pairs: Vec<(usize, usize)> = (1..=mu_max)
        .flat_map(|mu| (mu + 2..=n_max).map(move |n| (mu, n)))
        .collect();
    let mut r = verify_numerology_pairs(&pairs, grid);
    r.bounds = json!({ "mu_max": mu_max, "n_max": n_max, "grid": grid_json(grid) });
    r
}

fn grid_json(grid: &[Rational]) -> Vec<String> {
    grid.iter().map(format_rational).collect()
}

/// Numerology rows for explicit `(μ, n)` pairs on the Legendre family.
pub fn verify_numerology_pairs(pairs: &[(usize, usize)], grid: &[Rational]) -> VerificationReport {
    let started = Instant::now();
    let family = CurveFamily::Legendre;
    let kf = KeyFamily::new(family.clone());
    let rows: Vec<Vec<ReportRow>> = pairs
        .par_iter()
        .map(|&(mu, n)| {
            let gp = kf.gen_key_poly(mu, n);
            grid.iter()
                .map(|l0| {
                    let params = json!({ "mu": mu, "n": n, "lambda": format_rational(l0) });
                    let gp = match &gp {
                        Ok(gp) => gp,
                        Err(e) => return ReportRow::rejected(CHECK, params, e),
                    };
                    let f = match family.specialize(l0) {
                        Ok(f) => f,
                        Err(e) => return ReportRow::rejected(CHECK, params, &e),
                    };
                    let p = gp.eval_lambda(l0);
                    let expected = expected_count(mu, n);
                    match classify_roots(&p, &f) {
                        Ok(c) => {
                            let oracle = positive_region_count(&family, &p, l0);
                            let agree = oracle.map_or(true, |o| o == c.positive);
                            let row = ReportRow::new(
                                CHECK,
                                params,
                                json!(expected),
                                json!(c.positive),
                                agree && c.positive == expected,
                            );
                            if agree {
                                row
                            } else {
                                row.with_note(format!(
                                    "region oracle counted {}",
                                    oracle.unwrap_or_default()
                                ))
                            }
                        }
                        Err(e) => ReportRow::new(
                            CHECK,
                            params,
                            json!(expected),
                            json!(e.to_string()),
                            false,
                        ),
                    }
                })
                .collect()
        })
        .collect();
    let bounds = json!({ "pairs": pairs, "grid": grid_json(grid) });
    VerificationReport::new(CHECK, bounds, rows.into_iter().flatten().collect(), started)
}
