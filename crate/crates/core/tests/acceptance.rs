//! Acceptance run: one PASS/FAIL line per criterion, with its wall time
//! against the allowed budget. Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use keypoly::algebra::rational::{int, rat, Rational};
use keypoly::algebra::{BiPoly, UniPoly, Var};
use keypoly::analysis::{
    casework_identities, default_grid, default_samples, inflection_budget,
    numeric_parametrization_check, numerology_pairs, omega_real, profile_compare,
    profile_extract, verify_numerology_pairs, verify_suite, Budget, VerifyBounds,
};
use keypoly::elimination::{disc_degree_report, discriminant_x};
use keypoly::keypoly::{wronskian_oracle, CurveFamily, KeyFamily};
use keypoly::puiseux::{
    branch_residual_order, continue_branch, initial_branches_on, newton_polygon, Reality,
    ResidualOrder, Side,
};
use keypoly::realroots::{disc_real_roots, refine, singular_points_affine, DiscDirection};
use num_traits::{One, Zero};

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `(i, j, num, den)` for `num/den · x^i λ^j`.
fn display(terms: &[(u32, u32, i64, i64)]) -> BiPoly {
    BiPoly::from_terms(terms.iter().map(|&(i, j, n, d)| ((i, j), rat(n, d))))
}

fn legendre() -> KeyFamily {
    KeyFamily::new(CurveFamily::Legendre)
}

/// Key polynomials straight from the recursion, without the library cache.
fn recursion_oracle(n_max: usize) -> Vec<BiPoly> {
    let x = BiPoly::x();
    let l = BiPoly::lambda();
    let f = &(&x * &(&x - &BiPoly::one())) * &(&x - &l);
    let fx = f.derivative(Var::X);
    let mut out = vec![BiPoly::one()];
    for m in 0..n_max {
        let p = out.last().unwrap();
        let k = rat(1, 2) - int(m as i64);
        out.push(&(&p.derivative(Var::X) * &f) + &(p * &fx).scale(&k));
    }
    out
}

fn c1_displays() -> Check {
    let kf = legendre();
    let p2 = display(&[(0, 2, -1, 4), (3, 1, -1, 1), (2, 1, 3, 2), (3, 0, -1, 1), (4, 0, 3, 4)]);
    let p3 = display(&[
        (1, 3, -3, 4),
        (0, 3, 3, 8),
        (2, 2, 15, 8),
        (1, 2, -3, 4),
        (5, 1, 3, 4),
        (4, 1, -15, 8),
        (6, 0, -3, 8),
        (5, 0, 3, 4),
    ]);
    let p5 = display(&[
        (10, 0, -45, 32),
        (9, 0, 75, 16),
        (8, 1, -675, 32),
        (9, 1, 75, 16),
        (3, 2, -15, 1),
        (4, 2, 135, 2),
        (5, 2, -945, 8),
        (6, 2, 1575, 16),
        (2, 3, 45, 2),
        (3, 3, -195, 2),
        (4, 3, 2565, 16),
        (5, 3, -945, 8),
        (1, 4, -225, 16),
        (2, 4, 1935, 32),
        (3, 4, -195, 2),
        (4, 4, 135, 2),
        (0, 5, 105, 32),
        (1, 5, -225, 16),
        (2, 5, 45, 2),
        (3, 5, -15, 1),
    ]);
    ensure(*kf.key_poly(2) == p2, || "P2 differs from the display".into())?;
    ensure(*kf.key_poly(3) == p3, || "P3 differs from the display".into())?;
    ensure(*kf.key_poly(5) == p5, || "P5 differs from the display".into())?;
    // P4: the λ^4 and λ^3 rows and the x-degree of every row
    let p4 = kf.key_poly(4);
    let rows = p4.rows(Var::Lambda);
    let lead = UniPoly::new(vec![rat(-15, 16), int(3), int(-3)]);
    let next = UniPoly::new(vec![int(0), int(3), rat(-39, 4), rat(21, 2)]);
    ensure(rows.len() == 5, || format!("P4 has λ-degree {}", rows.len() as i64 - 1))?;
    ensure(rows[4] == lead, || format!("P4 λ^4 row is {}", rows[4]))?;
    ensure(rows[3] == next, || format!("P4 λ^3 row is {}", rows[3]))?;
    let degs: Vec<Option<usize>> = rows.iter().map(|r| r.degree()).collect();
    let want = vec![Some(8), Some(7), Some(4), Some(3), Some(2)];
    ensure(degs == want, || format!("P4 row degrees {degs:?}"))?;
    ensure(rows[0].coeff(8) == rat(9, 16) && rows[1].coeff(7) == rat(-3, 2), || {
        "P4 constant and linear rows lead wrongly".into()
    })
}

fn c2_degrees() -> Check {
    let kf = legendre();
    let oracle = recursion_oracle(12);
    for (n, q) in oracle.iter().enumerate().skip(1) {
        let p = kf.key_poly(n);
        ensure(*p == *q, || format!("n = {n}: cached P_n differs from the recursion"))?;
        let d = (p.deg_x(), p.deg_lambda());
        ensure(d == (Some(2 * n as u32), Some(n as u32)), || format!("n = {n}: degrees {d:?}"))?;
    }
    Ok(())
}

fn c3_symmetry() -> Check {
    let r = verify_suite(
        "symmetry",
        &VerifyBounds { n_max: 12, ..VerifyBounds::default() },
        &Budget::unlimited(),
    )
    .map_err(|e| e.to_string())?;
    ensure(r.rows.len() == 12 && r.all_pass(), || {
        format!("{:?}", r.failures().next())
    })?;
    // pointwise: P(x+1, λ+1) = P(-x, -λ) and P(x, λ) = λ^(2n) P(x/λ, 1/λ)
    let kf = legendre();
    let pts = [(rat(1, 3), rat(-2, 7)), (int(3), rat(5, 2)), (rat(-7, 4), rat(9, 11))];
    for n in 1..=12 {
        let p = kf.key_poly(n);
        for (x, l) in &pts {
            let a = p.eval(&(x + int(1)), &(l + int(1)));
            let b = p.eval(&-x, &-l);
            ensure(a == b, || format!("n = {n}: shift identity fails at ({x}, {l})"))?;
            let c = p.eval(x, l);
            let d = p.eval(&(x / l), &(Rational::one() / l)) * num_traits::pow(l.clone(), 2 * n);
            ensure(c == d, || format!("n = {n}: swap identity fails at ({x}, {l})"))?;
        }
    }
    Ok(())
}

fn c4_disc_degrees() -> Check {
    for (fam, n_max, pred) in [
        (CurveFamily::Legendre, 7usize, (|n: usize| 3 * n * n - 3 * n + 2) as fn(usize) -> usize),
        (CurveFamily::ConjugatePair, 6, |n: usize| 4 * n * n - 2 * n),
    ] {
        let rep = disc_degree_report(&fam, 1, n_max).map_err(|e| e.to_string())?;
        ensure(rep.rows.len() == n_max, || "missing rows".into())?;
        for r in &rep.rows {
            ensure(r.matches && r.observed == pred(r.n), || {
                format!("{} n = {}: degree {}, expected {}", fam.name(), r.n, r.observed, pred(r.n))
            })?;
        }
    }
    let d9 = discriminant_x(&legendre().key_poly(9)).map_err(|e| e.to_string())?;
    ensure(d9.degree() == Some(218), || format!("n = 9: degree {:?}", d9.degree()))
}

fn c5_disc_roots() -> Check {
    for n in 2..=9 {
        let d = disc_real_roots(&CurveFamily::Legendre, n, DiscDirection::XDiscInLambda)
            .map_err(|e| e.to_string())?;
        ensure(d.is_zero_one(), || format!("n = {n}: {} real roots", d.roots.len()))?;
        // oracle: the disc vanishes at 0 and 1, and the cofactor has no sign change on a grid
        ensure(d.disc.eval(&int(0)).is_zero() && d.disc.eval(&int(1)).is_zero(), || {
            format!("n = {n}: disc does not vanish at 0 and 1")
        })?;
    }
    let d = disc_real_roots(&CurveFamily::ConjugatePair, 4, DiscDirection::XDiscInLambda)
        .map_err(|e| e.to_string())?;
    let (a, b) = (rat(5773, 10000), rat(5774, 10000));
    let hit = d
        .roots
        .iter()
        .filter_map(|r| refine(&d.disc, r, &rat(1, 100_000)).ok())
        .any(|r| r.within(&a, &b));
    ensure(hit, || "no root isolated in (0.5773, 0.5774)".into())?;
    // oracle: 3λ² − 1 divides the discriminant
    let q = UniPoly::new(vec![int(-1), int(0), int(3)]);
    ensure(d.disc.div_exact(&q).is_some(), || "3λ² − 1 does not divide disc".into())
}

fn c6_numerology() -> Check {
    let pairs = numerology_pairs(3, 6);
    let r = verify_numerology_pairs(&pairs, &default_grid());
    ensure(r.rows.len() == 3 * 5 * 14, || format!("{} rows", r.rows.len()))?;
    ensure(r.all_pass(), || format!("{:?}", r.failures().next()))
}

fn c7_cross_oracle() -> Check {
    let kf = legendre();
    let fam = CurveFamily::Legendre;
    let lambdas = [int(-1), rat(1, 2), int(3)];
    for (mu, lo, hi) in [(2usize, 1usize, 8usize), (3, 2, 8), (4, 3, 6)] {
        for n in lo..=hi {
            let det = kf.gen_key_poly_det(mu, n).map_err(|e| e.to_string())?;
            if mu < 4 {
                let closed = kf.gen_key_poly_closed(mu, n).map_err(|e| e.to_string())?;
                ensure(closed == det, || format!("mu = {mu}, n = {n}: closed form differs from det"))?;
            }
            for l0 in &lambdas {
                let w = wronskian_oracle(&fam, mu, n, l0).map_err(|e| e.to_string())?;
                ensure(w == det.eval_lambda(l0), || {
                    format!("mu = {mu}, n = {n}, lambda = {l0}: Wronskian differs")
                })?;
            }
        }
    }
    Ok(())
}

fn c8_newton() -> Check {
    let p = legendre().key_poly(5);
    let z = Rational::zero();
    let np = newton_polygon(&p, (&z, &z)).map_err(|e| e.to_string())?;
    ensure(np.vertices == vec![(0, 5), (3, 2), (9, 0)], || format!("vertices {:?}", np.vertices))?;
    let slopes: Vec<Rational> = np.edges.iter().map(|e| e.slope()).collect();
    ensure(slopes == vec![int(-1), rat(-1, 3)], || format!("slopes {slopes:?}"))?;
    let r = verify_suite("newton_p5", &VerifyBounds::default(), &Budget::unlimited())
        .map_err(|e| e.to_string())?;
    ensure(r.all_pass() && r.rows.len() == 12, || format!("{:?}", r.failures().next()))?;
    // oracle: 2x − x²/3 leaves a residual of x-order 7
    let trunc = BiPoly::from_terms([((1, 0), int(2)), ((2, 0), rat(-1, 3))]);
    let res = p.substitute(&BiPoly::x(), &trunc);
    let ord = res.terms().map(|(&(i, _), _)| i).min();
    ensure(ord == Some(7), || format!("residual order of 2x − x²/3 is {ord:?}"))?;
    let b = initial_branches_on(&p, (&z, &z), Side::Positive)
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|b| b.reality == Reality::Real && b.gamma == int(1))
        .ok_or("no real slope −1 branch")?;
    let c = continue_branch(&p, &b, 8).map_err(|e| e.to_string())?;
    ensure(c.coeffs[1].to_f64() == -1.0 / 3.0 && c.coeffs[1].is_rational(), || {
        format!("second coefficient {}", c.coeffs[1])
    })?;
    ensure(
        branch_residual_order(&p, &c).map_err(|e| e.to_string())? == ResidualOrder::Finite(int(13)),
        || "8-term residual order".into(),
    )
}

fn c9_casework() -> Check {
    let r = casework_identities();
    ensure(r.rows.len() >= 5 && r.all_pass(), || format!("{:?}", r.failures().next()))?;
    // oracles: P5(x, x) and U1² − U2 from scratch
    let x = UniPoly::var();
    let diag = legendre().key_poly(5).substitute(&BiPoly::x(), &BiPoly::x()).eval_lambda(&int(0));
    let expanded = UniPoly::new(vec![
        int(0),
        int(0),
        int(0),
        int(0),
        int(0),
        rat(-105, 32),
        rat(525, 32),
        rat(-525, 16),
        rat(525, 16),
        rat(-525, 32),
        rat(105, 32),
    ]);
    ensure(diag == expanded, || format!("P5(x, x) = {diag}"))?;
    // the factored display carries the opposite sign: the expansion is +(105/32)x^5(x-1)^5
    let factored = (&x.pow(5) * &(&x - &UniPoly::one()).pow(5)).scale(&rat(105, 32));
    ensure(diag == factored, || format!("P5(x, x) = {diag}"))?;
    let xs = &x - &UniPoly::constant(rat(1, 2));
    let xs2 = xs.pow(2);
    let u1 = &(&xs2.pow(2) + &xs2.scale(&rat(5, 6))) + &UniPoly::constant(rat(11, 432));
    let xx1 = &x * &(&x - &UniPoly::one());
    let u2 = &xx1.pow(3) * &(&xs2 + &UniPoly::constant(rat(5, 108)));
    let lhs = &u1.pow(2) - &u2;
    let rhs = (&xs2 + &UniPoly::constant(rat(1, 12))).pow(3).scale(&rat(64, 27));
    ensure(lhs == rhs, || "U1² − U2".into())
}

fn c10_singular() -> Check {
    let kf = legendre();
    for n in 2..=6 {
        let pts = singular_points_affine(&CurveFamily::Legendre, n).map_err(|e| e.to_string())?;
        let exact: Vec<_> = pts.iter().map(|p| p.exact()).collect();
        let want = vec![Some((int(0), int(0))), Some((int(1), int(1)))];
        ensure(exact == want, || format!("n = {n}: {} points", pts.len()))?;
        let p = kf.key_poly(n);
        let (px, pl) = (p.derivative(Var::X), p.derivative(Var::Lambda));
        for (a, b) in [(int(0), int(0)), (int(1), int(1))] {
            ensure(
                p.eval(&a, &b).is_zero() && px.eval(&a, &b).is_zero() && pl.eval(&a, &b).is_zero(),
                || format!("n = {n}: ({a}, {b}) is not singular"),
            )?;
        }
    }
    Ok(())
}

/// Real roots of `P_n(x0, ·)` by sign changes on a fine grid.
fn float_count(p: &BiPoly, x0: f64) -> usize {
    let (lo, hi, steps) = (-60.0 + 1e-4 * std::f64::consts::E, 60.0, 240_000);
    let h = (hi - lo) / steps as f64;
    (0..steps)
        .filter(|&i| {
            let a = lo + h * i as f64;
            p.eval_f64(x0, a) * p.eval_f64(x0, a + h) < 0.0
        })
        .count()
}

fn c11_profiles() -> Check {
    for n in 2..=6 {
        let eq = profile_compare(n).map_err(|e| format!("n = {n}: {e}"))?;
        ensure(eq, || format!("n = {n}: profile differs from n = {}", n % 2 + 2))?;
    }
    let s4 = profile_extract(4, 50).map_err(|e| e.to_string())?;
    ensure(s4.intervals[1].branch_count == 0, || "n = 4 has branches over (0, 1)".into())?;
    let p4 = legendre().key_poly(4);
    ensure(float_count(&p4, 0.37) == 0, || "float oracle sees roots of P4 over (0, 1)".into())?;
    let s3 = profile_extract(3, 50).map_err(|e| e.to_string())?;
    let counts: Vec<usize> = s3.intervals.iter().map(|i| i.branch_count).collect();
    ensure(counts == vec![3, 4, 3], || format!("n = 3 branch counts {counts:?}"))?;
    let p3 = legendre().key_poly(3);
    for (x0, want) in [(-0.8, 3), (0.3, 3), (0.7, 3), (1.9, 3)] {
        ensure(float_count(&p3, x0) == want, || format!("float oracle at x = {x0}"))?;
    }
    // (0,0) meets the left and middle intervals, (1,1) the middle and right
    let pts: Vec<Vec<&str>> = s3
        .intervals
        .iter()
        .map(|i| i.incidences.iter().map(|c| c.point[0].as_str()).collect())
        .collect();
    ensure(pts == vec![vec!["0"], vec!["0", "1"], vec!["1"]], || format!("incidences {pts:?}"))?;
    ensure(s3.intervals[1].asymptote_at_half, || "no asymptote at 1/2".into())
}

fn c12_counting() -> Check {
    for (k, g, want) in [(2, 1, 8), (3, 1, 12), (3, 2, 18)] {
        let w = omega_real(k, g).map_err(|e| e.to_string())?;
        ensure(w == want, || format!("omega_real({k}, {g}) = {w}"))?;
    }
    for k in 2..=10 {
        let w = omega_real(k, 1).map_err(|e| e.to_string())?;
        ensure(w == 4 * k, || format!("omega_real({k}, 1) = {w}"))?;
    }
    let kf = legendre();
    for g in 1..=6u64 {
        let b = inflection_budget(g).map_err(|e| e.to_string())?;
        let deg = kf.key_poly(g as usize + 2).deg_x().unwrap() as u64;
        ensure(b.away == 2 * deg, || format!("g = {g}: away {}", b.away))?;
        ensure(b.total == b.ramification + b.away, || format!("g = {g}: budget does not add up"))?;
    }
    Ok(())
}

fn c13_numeric() -> Check {
    for n in [3, 4] {
        let s = default_samples(n);
        ensure(s.len() >= 20 * if n == 3 { 4 } else { 3 }, || format!("n = {n}: {} samples", s.len()))?;
        let r = numeric_parametrization_check(n, &s, 1e-9);
        ensure(r.all_pass(), || format!("n = {n}: {:?}", r.failures().next()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 13] = [
        ("display reproduction", 1, c1_displays),
        ("degree law", 10, c2_degrees),
        ("symmetry law", 30, c3_symmetry),
        ("discriminant degrees", 600, c4_disc_degrees),
        ("discriminant real roots", 600, c5_disc_roots),
        ("numerology", 300, c6_numerology),
        ("cross-oracle equivalence", 120, c7_cross_oracle),
        ("Newton-Puiseux", 30, c8_newton),
        ("casework identities", 30, c9_casework),
        ("singular loci", 180, c10_singular),
        ("profiles", 300, c11_profiles),
        ("counting formulas", 1, c12_counting),
        ("numeric parametrizations", 5, c13_numeric),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        let dt = t.elapsed();
        let slow = dt > Duration::from_secs(*limit);
        let status = if out.is_ok() && !slow { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {:>2} {name} ({:.2}s, limit {limit}s)", k + 1, dt.as_secs_f64());
        if let Err(e) = &out {
            line += &format!(": {e}");
        } else if slow {
            line += ": over time";
        }
        println!("{line}");
        if status == "FAIL" {
            failed += 1;
        }
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
