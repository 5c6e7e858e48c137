//! The consolidated verification run.

use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::rational::{format_rational, int, rat, Rational};
use crate::algebra::{QuadExt, ShiftMode};
use crate::elimination::disc_degree_report;
use crate::error::Result;
use crate::keypoly::{CurveFamily, KeyFamily};
use crate::puiseux::{
    branch_residual_order, continue_branch, edge_polynomial, initial_branches_on,
    newton_polygon, Reality, ResidualOrder, Side,
};
use crate::realroots::{
    disc_real_roots, separability_check, singular_points_affine, DiscDirection,
};

use super::{
    casework_identities, default_samples, inflection_budget, numeric_parametrization_check,
    omega_real, profile_compare, verify_numerology, Budget, ReportRow, SectionSummary, Verdict,
    VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyBounds {
    pub n_max: usize,
    pub mu_max: usize,
    #[serde(with = "rational_list")]
    pub grid: Vec<Rational>,
}

mod rational_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| crate::algebra::rational::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl Default for VerifyBounds {
    fn default() -> Self {
        VerifyBounds {
            n_max: 6,
            mu_max: 3,
            grid: super::default_grid(),
        }
    }
}

fn degrees(kf: &KeyFamily, n_max: usize) -> Vec<ReportRow> {
    (1..=n_max)
        .map(|n| {
            let p = kf.key_poly(n);
            let obs = (p.deg_x(), p.deg_lambda());
            ReportRow::new(
                "degrees",
                json!({ "n": n }),
                json!([2 * n, n]),
                json!([obs.0, obs.1]),
                obs == (Some(2 * n as u32), Some(n as u32)),
            )
        })
        .collect()
}

fn symmetry(kf: &KeyFamily, n_max: usize) -> Vec<ReportRow> {
    (1..=n_max)
        .map(|n| {
            let p = kf.key_poly(n);
            let shift = p.affine_shift(ShiftMode::ShiftPlusOne) == p.affine_shift(ShiftMode::Negate);
            let swap = p.homogenize_swap(2 * n as u32).map_or(false, |q| q == *p);
            ReportRow::new(
                "symmetry",
                json!({ "n": n }),
                json!({ "shift": true, "swap": true }),
                json!({ "shift": shift, "swap": swap }),
                shift && swap,
            )
        })
        .collect()
}

fn separability(n_max: usize, grid: &[Rational]) -> Vec<ReportRow> {
    let fam = CurveFamily::Legendre;
    let cells: Vec<(usize, &Rational)> =
        (1..=n_max).flat_map(|n| grid.iter().map(move |l| (n, l))).collect();
    cells
        .par_iter()
        .map(|&(n, l0)| {
            let params = json!({ "n": n, "lambda": format_rational(l0) });
            if let Err(e) = fam.specialize(l0) {
                return ReportRow::rejected("separability", params, &e);
            }
            let ok = separability_check(&fam, n, l0);
            ReportRow::new("separability", params, json!(true), json!(ok), ok)
        })
        .collect()
}

fn disc_degrees(n_max: usize) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for fam in [CurveFamily::Legendre, CurveFamily::ConjugatePair] {
        for r in disc_degree_report(&fam, 1, n_max)?.rows {
            rows.push(ReportRow::new(
                "disc_degree",
                json!({ "family": fam.name(), "n": r.n }),
                json!(r.predicted),
                json!(r.observed),
                r.matches,
            ));
        }
    }
    Ok(rows)
}

fn root_strings(d: &crate::realroots::DiscRoots) -> Vec<String> {
    d.roots
        .iter()
        .map(|r| match r.exact_value() {
            Some(v) => format_rational(v),
            None => format!("({}, {})", format_rational(&r.lo), format_rational(&r.hi)),
        })
        .collect()
}

fn disc_roots(n_max: usize) -> Result<Vec<ReportRow>> {
    let cases: Vec<(usize, DiscDirection, &str)> = (2..=n_max)
        .flat_map(|n| {
            [
                (n, DiscDirection::XDiscInLambda, "disc_x"),
                (n, DiscDirection::LambdaDiscInX, "disc_lambda"),
            ]
        })
        .collect();
    cases
        .par_iter()
        .map(|&(n, dir, name)| {
            let d = disc_real_roots(&CurveFamily::Legendre, n, dir)?;
            Ok(ReportRow::new(
                "disc_real_roots",
                json!({ "n": n, "discriminant": name }),
                json!(["0", "1"]),
                json!(root_strings(&d)),
                d.is_zero_one(),
            ))
        })
        .collect()
}

fn singular(n_max: usize) -> Result<Vec<ReportRow>> {
    (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let pts = singular_points_affine(&CurveFamily::Legendre, n)?;
            let exact: Vec<Option<(Rational, Rational)>> = pts.iter().map(|p| p.exact()).collect();
            let want = vec![
                Some((Rational::zero(), Rational::zero())),
                Some((Rational::one(), Rational::one())),
            ];
            let shown: Vec<String> = pts
                .iter()
                .map(|p| match p.exact() {
                    Some((x, l)) => format!("({}, {})", format_rational(&x), format_rational(&l)),
                    None => format!("x in ({}, {})", p.x.lo, p.x.hi),
                })
                .collect();
            Ok(ReportRow::new(
                "singular_points",
                json!({ "n": n }),
                json!(["(0, 0)", "(1, 1)"]),
                json!(shown),
                exact == want,
            ))
        })
        .collect()
}

fn profiles(n_max: usize) -> Vec<ReportRow> {
    (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let params = json!({ "n": n, "reference": n % 2 + 2 });
            match profile_compare(n) {
                Ok(eq) => ReportRow::new("profile", params, json!(true), json!(eq), eq),
                Err(e) => ReportRow::new("profile", params, json!(true), json!(e.to_string()), false),
            }
        })
        .collect()
}

/// Newton polygon, edge polynomials and branch data of `P_5` at the origin.
fn newton_p5(kf: &KeyFamily) -> Result<Vec<ReportRow>> {
    let p = kf.key_poly(5);
    let z = Rational::zero();
    let np = newton_polygon(&p, (&z, &z))?;
    let mut rows = Vec::new();
    let verts = np.vertices.clone();
    rows.push(ReportRow::new(
        "newton_p5",
        json!({ "item": "vertices" }),
        json!([[0, 5], [3, 2], [9, 0]]),
        json!(verts),
        verts == vec![(0, 5), (3, 2), (9, 0)],
    ));
    let slopes: Vec<Rational> = np.edges.iter().map(|e| e.slope()).collect();
    rows.push(ReportRow::new(
        "newton_p5",
        json!({ "item": "slopes" }),
        json!(["-1", "-1/3"]),
        json!(slopes.iter().map(format_rational).collect::<Vec<_>>()),
        slopes == vec![int(-1), rat(-1, 3)],
    ));
    if np.edges.len() == 2 {
        use crate::algebra::UniPoly;
        let e1 = edge_polynomial(&np, &np.edges[0]);
        let want = (&(&UniPoly::from_i64(&[0, 0, 1]) * &UniPoly::from_i64(&[-2, 1]))
            * &UniPoly::from_i64(&[16, -16, 7]))
            .scale(&rat(15, 32));
        rows.push(ReportRow::new(
            "newton_p5",
            json!({ "item": "edge_l1" }),
            json!(want.to_string()),
            json!(e1.to_string()),
            e1 == want,
        ));
    }
    let real: Vec<_> = initial_branches_on(&p, (&z, &z), Side::Positive)?
        .into_iter()
        .filter(|b| b.reality == Reality::Real)
        .collect();
    let s5 = QuadExt::new(int(0), rat(1, 4), &int(5))?;
    let l2: Vec<String> = real
        .iter()
        .filter(|b| b.gamma == int(3))
        .map(|b| b.coeffs[0].to_string())
        .collect();
    let want_l2 = vec![(-&s5).to_string(), s5.to_string()];
    rows.push(ReportRow::new(
        "newton_p5",
        json!({ "item": "l2_roots" }),
        json!(want_l2),
        json!(l2),
        l2 == want_l2,
    ));
    if let Some(b) = real.iter().find(|b| b.gamma == int(1) && b.coeffs[0] == QuadExt::from_rational(int(2))) {
        for k in 1..=8 {
            let c = continue_branch(&p, b, k)?;
            let r = branch_residual_order(&p, &c)?;
            let want = ResidualOrder::Finite(int(5 + k as i64));
            rows.push(ReportRow::new(
                "newton_p5",
                json!({ "item": "l1_residual", "terms": k }),
                want.to_json(),
                r.to_json(),
                r == want,
            ));
        }
    } else {
        rows.push(ReportRow::new(
            "newton_p5",
            json!({ "item": "l1_branch" }),
            json!("c1 = 2"),
            json!("missing"),
            false,
        ));
    }
    Ok(rows)
}

fn counting() -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for (k, g, want) in [(2u64, 1u64, 8u64), (3, 1, 12), (3, 2, 18)] {
        let w = omega_real(k, g)?;
        rows.push(ReportRow::new("counting", json!({ "k": k, "g": g }), json!(want), json!(w), w == want));
    }
    for k in 2..=10u64 {
        let w = omega_real(k, 1)?;
        rows.push(ReportRow::new("counting", json!({ "k": k, "g": 1 }), json!(4 * k), json!(w), w == 4 * k));
    }
    let kf = KeyFamily::new(CurveFamily::Legendre);
    for g in 1..=6u64 {
        let b = inflection_budget(g)?;
        let deg = kf.key_poly(g as usize + 2).deg_x().unwrap_or(0) as u64;
        rows.push(ReportRow::new(
            "counting",
            json!({ "g": g, "item": "away" }),
            json!(2 * deg),
            json!(b.away),
            b.away == 2 * deg,
        ));
    }
    Ok(rows)
}

/// Section names accepted by [`verify_suite`], in the order
/// [`verify_all`] runs them.
pub const SUITES: [&str; 12] = [
    "degrees",
    "symmetry",
    "separability",
    "disc_degree",
    "numerology",
    "singular_points",
    "disc_real_roots",
    "profile",
    "casework",
    "numeric",
    "newton_p5",
    "counting",
];

fn section(name: &str, bounds: &VerifyBounds, kf: &KeyFamily) -> Result<Vec<ReportRow>> {
    let n = bounds.n_max;
    Ok(match name {
        "degrees" => degrees(kf, n),
        "symmetry" => symmetry(kf, n),
        "separability" => separability(n, &bounds.grid),
        "disc_degree" => disc_degrees(n)?,
        "numerology" => verify_numerology(bounds.mu_max, n, &bounds.grid).rows,
        "singular_points" => singular(n)?,
        "disc_real_roots" => disc_roots(n)?,
        "profile" => profiles(n),
        "casework" => casework_identities().rows,
        "numeric" => {
            let mut r = numeric_parametrization_check(3, &default_samples(3), 1e-9).rows;
            r.extend(numeric_parametrization_check(4, &default_samples(4), 1e-9).rows);
            r
        }
        "newton_p5" => newton_p5(kf)?,
        "counting" => counting()?,
        other => {
            return Err(crate::Error::InvalidArgument(format!(
                "unknown suite '{other}'; expected all or one of {}",
                SUITES.join(", ")
            )))
        }
    })
}

fn run(names: &[&str], suite: &str, bounds: &VerifyBounds, budget: &Budget) -> Result<VerificationReport> {
    let started = Instant::now();
    let kf = KeyFamily::new(CurveFamily::Legendre);
    let mut sections = Vec::new();
    for name in names {
        budget.check()?;
        sections.push((*name, section(name, bounds, &kf)?));
    }
    budget.check()?;
    let summaries = sections
        .iter()
        .map(|(name, rows)| SectionSummary {
            section: name.to_string(),
            rows: rows.len(),
            verdict: Verdict::of(rows),
            witness: rows.iter().find(|r| !r.passed()).cloned(),
        })
        .collect();
    let rows = sections.into_iter().flat_map(|(_, r)| r).collect();
    let mut report = VerificationReport::new(suite, serde_json::to_value(bounds).unwrap(), rows, started);
    report.sections = summaries;
    Ok(report)
}

/// Every suite at the given bounds. Sections run in a fixed order; the
/// budget is checked between them.
pub fn verify_all(bounds: &VerifyBounds, budget: &Budget) -> Result<VerificationReport> {
    run(&SUITES, "all", bounds, budget)
}

/// One named suite, or all of them for `"all"`.
pub fn verify_suite(name: &str, bounds: &VerifyBounds, budget: &Budget) -> Result<VerificationReport> {
    if name == "all" {
        return verify_all(bounds, budget);
    }
    let Some(known) = SUITES.iter().find(|s| **s == name) else {
        return Err(crate::Error::InvalidArgument(format!(
            "unknown suite '{name}'; expected all or one of {}",
            SUITES.join(", ")
        )));
    };
    run(&[known], name, bounds, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::RowStatus;
    use crate::Error;

    #[test]
    fn small_run_passes() {
        let b = VerifyBounds {
            n_max: 4,
            mu_max: 1,
            grid: vec![int(-1), rat(1, 2), int(2)],
        };
        let r = verify_all(&b, &Budget::unlimited()).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.sections.iter().any(|s| s.section == "newton_p5"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["verdict"], "VERIFIED-UP-TO-BOUND");
    }

    #[test]
    fn adversarial_grid_rejected() {
        let b = VerifyBounds {
            n_max: 3,
            mu_max: 1,
            grid: vec![int(0), int(2)],
        };
        let r = verify_all(&b, &Budget::unlimited()).unwrap();
        assert_eq!(r.verdict, Verdict::InputRejected);
        let rej: Vec<&ReportRow> = r.rows.iter().filter(|r| r.status == RowStatus::Rejected).collect();
        assert!(!rej.is_empty());
        assert!(rej.iter().all(|r| r.observed.as_str().unwrap().contains("degenerate")));
    }

    #[test]
    fn single_suite_with_218_row() {
        let b = VerifyBounds {
            n_max: 9,
            ..VerifyBounds::default()
        };
        let r = verify_suite("disc_degree", &b, &Budget::unlimited()).unwrap();
        let row = r
            .rows
            .iter()
            .find(|r| r.params["family"] == "legendre" && r.params["n"] == 9)
            .unwrap();
        assert_eq!(row.observed, json!(218));
        assert!(verify_suite("nonsense", &b, &Budget::unlimited()).is_err());
    }

    #[test]
    fn budget_exhausted() {
        let r = verify_all(&VerifyBounds::default(), &Budget::seconds(0.0));
        assert_eq!(r.unwrap_err(), Error::BudgetExceeded);
    }
}
