//! The `keypoly` command line.
//!
//! JSON goes to standard output (or `--out`, written atomically) unless
//! `--csv` is given; diagnostics go to standard error. Exit codes: 0 on
//! success, 1 when a verification fails, 2 on usage errors or rejected
//! input, 3 when the time budget runs out.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::json::{unipoly_json, PolyJson};
use crate::algebra::rational::{format_decimal, format_rational, parse_rational, Rational};
use crate::algebra::Var;
use crate::analysis::{
    default_grid, inflection_budget, omega_real, profile_extract, profile_rows, verify_suite,
    Budget, ProfileRow, Verdict, VerifyBounds,
};
use crate::elimination::{discriminant, predicted_disc_degree, Engine};
use crate::error::{Error, Result};
use crate::keypoly::{CurveFamily, KeyFamily};
use crate::puiseux::{
    branch_json, branch_residual_order, continue_branch, edge_polynomial, initial_branches,
    newton_polygon, Reality,
};
use crate::realroots::{classify_roots, isolate_roots, RootJson};

#[derive(Debug, Parser)]
#[command(name = "keypoly", version, about = "Key polynomials of real elliptic curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write output to FILE (atomically) instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel suites.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Significant digits of decimal approximations.
    #[arg(long, global = true, default_value_t = 12)]
    pub digits: usize,
    /// Wall-clock budget for verification suites.
    #[arg(long, global = true, value_name = "SECONDS")]
    pub budget_seconds: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Legendre,
    Conjugate,
}

impl From<FamilyArg> for CurveFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Legendre => CurveFamily::Legendre,
            FamilyArg::Conjugate => CurveFamily::ConjugatePair,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarArg {
    X,
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Auto,
    Prs,
    Interpolation,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn rational_pair(s: &str) -> Result<(Rational, Rational)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected two comma-separated rationals, got {s:?}")))?;
    Ok((parse_rational(a.trim())?, parse_rational(b.trim())?))
}

fn rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|t| parse_rational(t.trim())).collect()
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a key polynomial P_n, or P_{mu,n} with --mu.
    Gen {
        #[arg(long, value_enum, default_value = "legendre")]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mu: Option<usize>,
    },
    /// Discriminant of P_n with respect to --var.
    Disc {
        #[arg(long, value_enum, default_value = "legendre")]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Variable eliminated.
        #[arg(long, value_enum, default_value = "x")]
        var: VarArg,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        /// Also isolate the real roots.
        #[arg(long)]
        roots: bool,
    },
    /// Real roots of P_{mu,n}(x, lambda0), classified by the sign of f.
    Roots {
        #[arg(long, value_enum, default_value = "legendre")]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        mu: usize,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        lambda: Rational,
    },
    /// Run verification suites.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        mu_max: usize,
        /// Comma-separated rational lambda values.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Topological profile of C(n), or its branch table with --csv.
    Profile {
        #[arg(long)]
        n: usize,
        /// Open x-interval "a,b" for the branch table.
        #[arg(long, allow_hyphen_values = true)]
        interval: Option<String>,
        /// Closed x-range "a,b" for the branch table, endpoints included.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Newton polygon and Puiseux branches of P_n at a point.
    Puiseux {
        #[arg(long, value_enum, default_value = "legendre")]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Center "x0,lambda0".
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        center: String,
        #[arg(long, default_value_t = 4)]
        terms: usize,
    },
    /// Inflection counts: omega_real(k, g), or the budget for genus g.
    Counts {
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        g: u64,
    },
}

/// What a subcommand produced.
struct Output {
    body: String,
    code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, code: 0 }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn csv_line(fields: &[String]) -> String {
    let esc: Vec<String> = fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect();
    format!("{}\n", esc.join(","))
}

fn poly_csv(p: &PolyJson) -> String {
    let mut s = csv_line(&["i".into(), "j".into(), "coef".into()]);
    for t in &p.terms {
        s += &csv_line(&[t.exp[0].to_string(), t.exp[1].to_string(), t.coef.clone()]);
    }
    s
}

fn cmd_gen(cli: &Cli, family: FamilyArg, n: usize, mu: Option<usize>) -> Result<Output> {
    let kf = KeyFamily::new(family.into());
    let p = match mu {
        Some(mu) => kf.gen_key_poly(mu, n)?,
        None => (*kf.key_poly(n)).clone(),
    };
    let j = PolyJson::from(&p);
    Ok(Output::ok(if cli.csv {
        poly_csv(&j)
    } else {
        serde_json::to_string(&j).expect("serialisable") + "\n"
    }))
}

fn cmd_disc(cli: &Cli, family: FamilyArg, n: usize, var: VarArg, engine: EngineArg, roots: bool) -> Result<Output> {
    let family: CurveFamily = family.into();
    let p = KeyFamily::new(family.clone()).key_poly(n);
    let (v, rest) = match var {
        VarArg::X => (Var::X, Var::Lambda),
        VarArg::Lambda => (Var::Lambda, Var::X),
    };
    let engine = match engine {
        EngineArg::Auto => Engine::Auto,
        EngineArg::Prs => Engine::Prs,
        EngineArg::Interpolation => Engine::Interpolation,
    };
    let d = discriminant(&p, v, engine)?;
    if cli.csv {
        let mut s = csv_line(&["power".into(), "coef".into()]);
        for (k, c) in d.coeffs().iter().enumerate() {
            s += &csv_line(&[k.to_string(), format_rational(c)]);
        }
        return Ok(Output::ok(s));
    }
    let mut out = json!({
        "family": family.name(),
        "n": n,
        "eliminated": if v == Var::X { "x" } else { "lambda" },
        "degree": d.degree(),
        "poly": unipoly_json(&d, rest),
    });
    if v == Var::X {
        out["predicted_degree"] = json!(predicted_disc_degree(&family, n));
    }
    if roots {
        let r: Vec<RootJson> = isolate_roots(&d).iter().map(RootJson::from).collect();
        out["real_roots"] = json!(r);
    }
    Ok(Output::ok(to_json(&out)))
}

fn cmd_roots(cli: &Cli, family: FamilyArg, n: usize, mu: usize, lambda: &Rational) -> Result<Output> {
    let family: CurveFamily = family.into();
    let f = family.specialize(lambda)?;
    let p = KeyFamily::new(family.clone()).gen_key_poly(mu, n)?.eval_lambda(lambda);
    let c = classify_roots(&p, &f)?;
    if cli.csv {
        let mut s = csv_line(&["lo".into(), "hi".into(), "multiplicity".into(), "sign_of_f".into()]);
        for r in &c.roots {
            let j = RootJson::from(r);
            let sign = serde_json::to_value(j.sign_of_f).unwrap();
            s += &csv_line(&[j.lo, j.hi, j.multiplicity.to_string(), sign.as_str().unwrap_or("").into()]);
        }
        return Ok(Output::ok(s));
    }
    let out = json!({
        "family": family.name(),
        "n": n,
        "mu": mu,
        "lambda": format_rational(lambda),
        "poly": unipoly_json(&p, Var::X),
        "roots": c.roots.iter().map(RootJson::from).collect::<Vec<_>>(),
        "positive_f": c.positive,
        "negative_f": c.negative,
        "ramification": c.ramification,
    });
    Ok(Output::ok(to_json(&out)))
}

fn cmd_verify(cli: &Cli, suite: &str, n_max: usize, mu_max: usize, grid: Option<&str>) -> Result<Output> {
    let grid = match grid {
        Some(g) => rational_list(g)?,
        None => default_grid(),
    };
    let bounds = VerifyBounds { n_max, mu_max, grid };
    let budget = cli.budget_seconds.map_or(Budget::unlimited(), Budget::seconds);
    let r = verify_suite(suite, &bounds, &budget)?;
    let code = match r.verdict {
        Verdict::VerifiedUpToBound => 0,
        Verdict::Falsified => 1,
        Verdict::InputRejected => 2,
    };
    eprintln!("{}: {:?} in {:.2?}", r.suite, r.verdict, r.elapsed);
    let body = if cli.csv {
        let mut s = csv_line(&["check", "params", "expected", "observed", "status"].map(String::from));
        for row in &r.rows {
            let status = serde_json::to_value(row.status).unwrap();
            s += &csv_line(&[
                row.check.clone(),
                row.params.to_string(),
                value_text(&row.expected),
                value_text(&row.observed),
                status.as_str().unwrap_or("").into(),
            ]);
        }
        s
    } else {
        to_json(&r)
    };
    Ok(Output { body, code })
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn cmd_profile(cli: &Cli, n: usize, interval: Option<&str>, range: Option<&str>, samples: usize) -> Result<Output> {
    let window = match (interval, range) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidArgument("give --interval or --range, not both".into()))
        }
        (Some(i), None) => Some((rational_pair(i)?, true)),
        (None, Some(r)) => Some((rational_pair(r)?, false)),
        (None, None) => None,
    };
    if window.is_none() && !cli.csv {
        let sig = profile_extract(n, samples)?;
        return Ok(Output::ok(to_json(&json!({ "n": n, "samples": samples, "profile": sig }))));
    }
    let ((lo, hi), open) = window.unwrap_or(((Rational::from_integer((-2).into()), Rational::from_integer(3.into())), false));
    let table = profile_rows(n, &lo, &hi, samples, open)?;
    let mut rows: Vec<(String, usize, String, usize)> = Vec::new();
    for (q, rs) in &table {
        for r in rs {
            rows.push(row_fields(q, r, cli.digits)?);
        }
    }
    if cli.csv {
        let mut s = csv_line(&["x", "branch_index", "lambda", "multiplicity"].map(String::from));
        for (x, i, l, m) in rows {
            s += &csv_line(&[x, i.to_string(), l, m.to_string()]);
        }
        Ok(Output::ok(s))
    } else {
        let j: Vec<Value> = rows
            .into_iter()
            .map(|(x, i, l, m)| json!({ "x": x, "branch_index": i, "lambda": l, "multiplicity": m }))
            .collect();
        Ok(Output::ok(to_json(&j)))
    }
}

fn row_fields(q: &crate::algebra::UniPoly, r: &ProfileRow, digits: usize) -> Result<(String, usize, String, usize)> {
    Ok((
        format_decimal(&r.x, digits),
        r.branch_index,
        r.lambda_decimal(q, digits)?,
        r.lambda.multiplicity,
    ))
}

fn cmd_puiseux(cli: &Cli, family: FamilyArg, n: usize, center: &str, terms: usize) -> Result<Output> {
    let p = KeyFamily::new(family.into()).key_poly(n);
    let (x0, l0) = rational_pair(center)?;
    let poly = newton_polygon(&p, (&x0, &l0))?;
    let edges: Vec<Value> = poly
        .edges
        .iter()
        .map(|e| {
            json!({
                "start": e.start,
                "end": e.end,
                "slope": format_rational(&e.slope()),
                "gamma": format_rational(&e.gamma()),
                "edge_polynomial": edge_polynomial(&poly, e).to_string(),
            })
        })
        .collect();
    let mut branches = Vec::new();
    for b in initial_branches(&p, (&x0, &l0))? {
        if b.reality != Reality::Real {
            branches.push(serde_json::to_value(branch_json(&b, None)).unwrap());
            continue;
        }
        match continue_branch(&p, &b, terms.max(1)) {
            Ok(c) => {
                let r = branch_residual_order(&p, &c)?;
                branches.push(serde_json::to_value(branch_json(&c, Some(&r))).unwrap());
            }
            Err(e @ Error::IrregularBranch(_)) => {
                let mut v = serde_json::to_value(branch_json(&b, None)).unwrap();
                v["error"] = json!(e.to_string());
                branches.push(v);
            }
            Err(e) => return Err(e),
        }
    }
    if cli.csv {
        let mut s = csv_line(&["side", "gamma", "reality", "k", "coef"].map(String::from));
        for b in &branches {
            let coeffs = b["coeffs"].as_array().cloned().unwrap_or_default();
            for (k, c) in coeffs.iter().enumerate() {
                s += &csv_line(&[
                    value_text(&b["side"]),
                    value_text(&b["gamma1"]),
                    value_text(&b["reality"]),
                    (k + 1).to_string(),
                    value_text(c),
                ]);
            }
        }
        return Ok(Output::ok(s));
    }
    let out = json!({
        "n": n,
        "center": [format_rational(&x0), format_rational(&l0)],
        "vertices": poly.vertices,
        "edges": edges,
        "branches": branches,
    });
    Ok(Output::ok(to_json(&out)))
}

fn cmd_counts(cli: &Cli, k: Option<u64>, g: u64) -> Result<Output> {
    let (key, v) = match k {
        Some(k) => ("omega_real", json!(omega_real(k, g)?)),
        None => ("inflection_budget", serde_json::to_value(inflection_budget(g)?).unwrap()),
    };
    if cli.csv {
        let mut s = String::new();
        match &v {
            Value::Object(m) => {
                s += &csv_line(&m.keys().cloned().collect::<Vec<_>>());
                s += &csv_line(&m.values().map(value_text).collect::<Vec<_>>());
            }
            other => {
                s += &csv_line(&[key.to_string()]);
                s += &csv_line(&[value_text(other)]);
            }
        }
        return Ok(Output::ok(s));
    }
    Ok(Output::ok(match &v {
        Value::Object(_) => to_json(&json!({ key: v })),
        scalar => format!("{{\"{key}\": {scalar}}}\n"),
    }))
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Gen { family, n, mu } => cmd_gen(cli, *family, *n, *mu),
        Command::Disc { family, n, var, engine, roots } => cmd_disc(cli, *family, *n, *var, *engine, *roots),
        Command::Roots { family, n, mu, lambda } => cmd_roots(cli, *family, *n, *mu, lambda),
        Command::Verify { suite, n_max, mu_max, grid } => cmd_verify(cli, suite, *n_max, *mu_max, grid.as_deref()),
        Command::Profile { n, interval, range, samples } => {
            cmd_profile(cli, *n, interval.as_deref(), range.as_deref(), *samples)
        }
        Command::Puiseux { family, n, center, terms } => cmd_puiseux(cli, *family, *n, center, *terms),
        Command::Counts { k, g } => cmd_counts(cli, *k, *g),
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded => 3,
        Error::InvalidArgument(_) | Error::Parse(_) | Error::DegenerateCurve(_) => 2,
        _ => 1,
    }
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::InvalidArgument(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => write_atomic(path, &out.body),
                None => std::io::stdout().write_all(out.body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("keypoly: cannot write output: {e}");
                return 1;
            }
            out.code
        }
        Err(e) => {
            eprintln!("keypoly: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("keypoly").chain(args.iter().copied())).unwrap()
    }

    fn body(args: &[&str]) -> String {
        dispatch(&parse(args)).unwrap().body
    }

    #[test]
    fn counts_output() {
        assert_eq!(body(&["counts", "--k", "2", "--g", "1"]), "{\"omega_real\": 8}\n");
        assert!(body(&["counts", "--g", "2"]).contains("\"away\": 16"));
    }

    #[test]
    fn gen_p2() {
        let s = body(&["gen", "--family", "legendre", "--n", "2"]);
        let j: PolyJson = serde_json::from_str(&s).unwrap();
        let p = crate::algebra::BiPoly::try_from(&j).unwrap();
        assert_eq!(p, *KeyFamily::new(CurveFamily::Legendre).key_poly(2));
        assert!(s.contains("\"3/4\""));
    }

    #[test]
    fn empty_profile_table() {
        let s = body(&["profile", "--n", "4", "--interval", "0,1", "--samples", "200", "--csv"]);
        assert_eq!(s, "x,branch_index,lambda,multiplicity\n");
    }

    #[test]
    fn profile_table_rows() {
        let s = body(&["profile", "--n", "2", "--range", "-1,2", "--samples", "7", "--csv"]);
        for line in s.lines().skip(1) {
            let x: f64 = line.split(',').next().unwrap().parse().unwrap();
            assert!(x <= 0.0 || x >= 1.0, "{line}");
        }
        let s = body(&["profile", "--n", "3", "--range", "-1,0", "--samples", "2", "--csv"]);
        let rows: Vec<&str> = s.lines().skip(1).collect();
        assert_eq!(rows.iter().filter(|l| l.starts_with("-1,")).count(), 3);
        assert_eq!(rows.iter().filter(|l| l.starts_with("0,")).collect::<Vec<_>>(), vec![&"0,0,0,3"]);
    }

    #[test]
    fn rational_flags_and_usage_errors() {
        let s = body(&["roots", "--n", "3", "--lambda", "1/2"]);
        assert!(s.contains("\"positive_f\": 2"));
        assert_eq!(run(["keypoly", "roots", "--n", "3", "--lambda", "0"]), 2);
        assert_eq!(run(["keypoly", "gen", "--n", "2", "--bogus"]), 2);
        assert_eq!(run(["keypoly", "verify", "--suite", "nope"]), 2);
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let args = ["verify", "--suite", "numerology", "--n-max", "4", "--mu-max", "1"];
        let a = body(&args);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| body(&args));
        assert_eq!(a, b);
    }

    #[test]
    fn atomic_out_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p2.json");
        let code = run(["keypoly", "gen", "--n", "2", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        let s = std::fs::read_to_string(&path).unwrap();
        assert!(s.contains("lambda"));
    }
}
