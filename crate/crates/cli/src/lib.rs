//! Command-line front end for `zetaforge`: the expression reader, the
//! command implementations and their report types.

pub mod error;
pub mod parse;
mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use zetaforge::archimedean::{
    gamma_factor_order, hodge_equivariant_dims, secondary_euler_vo,
    vanishing_order_conjectural, HodgeData,
};
use zetaforge::arith::primes_up_to;
use zetaforge::detcomplex::BoundedFreeComplex;
use zetaforge::ffengine::{self, Verdict, VerificationReport};
use zetaforge::scheme_algebra::{validate, zeta_of, SchemeExpr, Severity};
use zetaforge::Error;

pub use error::CliError;
pub use parse::parse_expr;
pub use report::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "zetaforge",
    version,
    about = "Vanishing orders and special values of zeta functions of arithmetic schemes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Negative integer at which to evaluate.
    #[arg(short = 'n', global = true, allow_negative_numbers = true)]
    pub n: Option<i64>,

    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "ZETAFORGE_PRECISION", default_value_t = zetaforge::DEFAULT_PRECISION)]
    pub precision: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Number of Taylor coefficients compared by the trace formula.
    #[arg(long, global = true, default_value_t = 10)]
    pub series_order: usize,

    /// Restrict l-adic checks to this prime (default: all primes up to 50).
    #[arg(long, global = true)]
    pub ell: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factorization of the zeta function.
    Zeta { expr: String },
    /// Analytic and conjectural vanishing orders.
    Ord {
        expr: Option<String>,
        /// Hodge data as inline JSON, or @path to a JSON file.
        #[arg(long)]
        hodge: Option<String>,
    },
    /// Leading Taylor coefficient at s = n.
    Value { expr: String },
    /// Special-value theorem over a finite field.
    VerifyC { expr: String },
    /// Vanishing-order conjecture against the archimedean Euler characteristic.
    VerifyVo { expr: String },
    /// Zeta series against point counts.
    TraceCheck { expr: String },
    /// l-adic absolute values against cohomology orders.
    EllCheck { expr: String },
    /// Triviality of the p-part.
    PCheck { expr: String },
    /// Determinant and cohomology of a complex file.
    Det { file: PathBuf },
    /// Full verification battery over a manifest of (expr, n) pairs.
    Batch {
        #[arg(long)]
        manifest: PathBuf,
    },
}

/// A finished command: its JSON form, its text form, and whether every
/// verdict passed.
#[derive(Debug)]
pub struct Outcome {
    pub json: serde_json::Value,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn new<R: Serialize + Render>(r: &R, passed: bool) -> Result<Self, CliError> {
        Ok(Outcome {
            json: serde_json::to_value(r).map_err(|e| Error::Internal(e.to_string()))?,
            text: r.render(),
            passed,
        })
    }
}

fn need_n(cli: &Cli) -> Result<i64, CliError> {
    match cli.n {
        Some(n) if n < 0 => Ok(n),
        Some(n) => Err(Error::InvalidArgument(format!("n = {n} must be a negative integer")).into()),
        None => Err(CliError::Usage("this command requires -n <negative integer>".into())),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Parses and rejects expressions with structural errors.
pub fn load_expr(src: &str) -> Result<SchemeExpr, CliError> {
    let e = parse_expr(src)?;
    if let Some(d) = validate(&e).into_iter().find(|d| d.severity == Severity::Error) {
        return Err(Error::InvalidArgument(format!("{}: {}", d.at, d.message)).into());
    }
    Ok(e)
}

fn zeta_cmd(cli: &Cli, src: &str) -> Result<Outcome, CliError> {
    let e = load_expr(src)?;
    let z = zeta_of(&e)?;
    let base = if z.has_char_zero() { None } else { z.single_base()? };
    let (rational_function, series) = match &base {
        Some(q) => {
            let rf = z.rational_function(q);
            let series = rf.power_series(cli.series_order).iter().map(ToString::to_string).collect();
            (
                Some(RationalFunctionOut {
                    numerator: rf.numerator().to_string(),
                    denominator: rf.denominator().to_string(),
                }),
                Some(series),
            )
        }
        None => (None, None),
    };
    let r = ZetaReport {
        expr: e.to_string(),
        zeta: z.to_string(),
        base: base.map(|q| q.to_string()),
        factors: z,
        rational_function,
        series,
    };
    Outcome::new(&r, true)
}

fn parse_hodge(arg: &str) -> Result<HodgeData, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read_file(Path::new(path))?,
        None => arg.to_string(),
    };
    Ok(HodgeData::from_json(&text)?)
}

fn hodge_ord(h: HodgeData, n: i64) -> HodgeOrd {
    let dims = hodge_equivariant_dims(&h, n);
    let alternating_sum = dims
        .iter()
        .map(|(i, d)| if i.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) })
        .sum();
    let gamma_order = gamma_factor_order(&h, n);
    HodgeOrd {
        data: h,
        dims: dims.into_iter().map(|(i, d)| (i.to_string(), d)).collect(),
        alternating_sum,
        gamma_order,
        verdict: Verdict::from_bool(alternating_sum == gamma_order),
    }
}

/// Analytic, conjectural and (when available) secondary orders.
fn orders(e: &SchemeExpr, n: i64) -> Result<(i64, i64, Option<i64>), CliError> {
    let analytic = zeta_of(e)?.order_at(n)?;
    let conjectural = vanishing_order_conjectural(e, n)?;
    let secondary = match secondary_euler_vo(e, n) {
        Ok(v) => Some(v),
        Err(Error::EulerOnly) => None,
        Err(err) => return Err(err.into()),
    };
    Ok((analytic, conjectural, secondary))
}

fn ord_cmd(cli: &Cli, expr: Option<&str>, hodge: Option<&str>) -> Result<Outcome, CliError> {
    let n = need_n(cli)?;
    if expr.is_none() && hodge.is_none() {
        return Err(CliError::Usage("ord needs an expression, --hodge data, or both".into()));
    }
    let mut r = OrdReport {
        expr: None,
        n,
        analytic: None,
        conjectural: None,
        secondary: None,
        hodge: None,
        verdict: Verdict::Pass,
    };
    let mut ok = true;
    if let Some(src) = expr {
        let e = load_expr(src)?;
        let (a, c, s) = orders(&e, n)?;
        ok &= a == c && s.map_or(true, |s| s == c);
        r.expr = Some(e.to_string());
        r.analytic = Some(a);
        r.conjectural = Some(c);
        r.secondary = s;
    }
    if let Some(h) = hodge {
        let h = hodge_ord(parse_hodge(h)?, n);
        ok &= h.verdict == Verdict::Pass;
        r.hodge = Some(h);
    }
    r.verdict = Verdict::from_bool(ok);
    Outcome::new(&r, ok)
}

fn value_cmd(cli: &Cli, src: &str) -> Result<Outcome, CliError> {
    let n = need_n(cli)?;
    let e = load_expr(src)?;
    let v = zeta_of(&e)?.evaluate_at(n, cli.precision)?;
    let summary = v.summary();
    let r = ValueReport {
        expr: e.to_string(),
        n,
        order: v.order,
        exact: v.is_exact(),
        value: v.exact_string().unwrap_or_else(|| summary.value.clone()),
        numeric: v.exact_sci().unwrap_or_else(|| summary.value.clone()),
        error_bound: if v.is_exact() { "0".into() } else { summary.error_bound },
        precision: cli.precision,
    };
    Outcome::new(&r, true)
}

fn vo_report(e: &SchemeExpr, n: i64) -> Result<Vec<VerificationReport>, CliError> {
    let (a, c, s) = orders(e, n)?;
    let ctx = ffengine::ReportContext {
        expr: e.to_string(),
        n: Some(n),
        ..Default::default()
    };
    let mut out = vec![VerificationReport {
        claim: "vanishing-order".into(),
        left: a.to_string(),
        right: c.to_string(),
        verdict: Verdict::from_bool(a == c),
        context: ctx.clone(),
    }];
    if let Some(s) = s {
        out.push(VerificationReport {
            claim: "secondary-euler".into(),
            left: s.to_string(),
            right: c.to_string(),
            verdict: Verdict::from_bool(s == c),
            context: ctx,
        });
    }
    Ok(out)
}

/// Primes `l` for the l-adic check: `--ell` or every prime up to 50 other
/// than the characteristic.
fn ell_primes(cli: &Cli, e: &SchemeExpr) -> Result<Vec<BigInt>, CliError> {
    if let Some(l) = cli.ell {
        return Ok(vec![BigInt::from(l)]);
    }
    let p = ffengine::characteristic(e)?;
    Ok(primes_up_to(50)
        .into_iter()
        .map(BigInt::from)
        .filter(|l| Some(l) != p.as_ref())
        .collect())
}

fn checks(reports: Vec<VerificationReport>) -> Result<Outcome, CliError> {
    let passed = reports.iter().all(VerificationReport::passed);
    Outcome::new(
        &ChecksReport {
            reports,
            verdict: Verdict::from_bool(passed),
        },
        passed,
    )
}

fn det_cmd(file: &Path) -> Result<Outcome, CliError> {
    let c = BoundedFreeComplex::from_json(&read_file(file)?)?;
    let determinant = c.determinant();
    let by_divisors = c.determinant_by_divisors();
    let (chi, chi2) = c.euler_characteristics();
    let cohomology: BTreeMap<String, GroupOut> = c
        .cohomology_all()
        .into_iter()
        .map(|(i, g)| {
            (
                i.to_string(),
                GroupOut {
                    group: g.to_string(),
                    rank: g.rank(),
                    torsion: g.torsion().iter().map(ToString::to_string).collect(),
                },
            )
        })
        .collect();
    let ok = determinant == by_divisors;
    let r = DetReport {
        determinant,
        by_divisors,
        cohomology,
        euler_characteristic: chi,
        secondary_euler_characteristic: chi2,
        verdict: Verdict::from_bool(ok),
    };
    Outcome::new(&r, ok)
}

#[derive(Debug, Deserialize)]
struct ManifestEntry {
    expr: String,
    n: i64,
}

fn outcome_of(check: &str, r: Result<VerificationReport, CliError>) -> CheckOutcome {
    match r {
        Ok(r) => CheckOutcome {
            check: check.into(),
            status: if r.passed() { Status::Pass } else { Status::Fail },
            detail: format!("{} vs {}", r.left, r.right),
            code: None,
        },
        Err(e) => failure(check, e),
    }
}

fn failure(check: &str, e: CliError) -> CheckOutcome {
    let skip = matches!(
        e,
        CliError::Core(Error::GradedUnavailable(_) | Error::MixedBase(..) | Error::EulerOnly)
    );
    CheckOutcome {
        check: check.into(),
        status: if skip { Status::Skipped } else { Status::Error },
        detail: e.to_string(),
        code: Some(e.code().into()),
    }
}

fn battery(cli: &Cli, e: &SchemeExpr, n: i64) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    match vo_report(e, n) {
        Ok(rs) => out.extend(rs.into_iter().map(|r| outcome_of(&r.claim.clone(), Ok(r)))),
        Err(err) => out.push(failure("vanishing-order", err)),
    }
    out.push(match zeta_of(e).and_then(|z| z.evaluate_at(n, cli.precision)) {
        Ok(v) => CheckOutcome {
            check: "special-value".into(),
            status: Status::Pass,
            detail: match v.exact_string() {
                Some(x) => format!("order {} value {x}", v.order),
                None => {
                    let s = v.summary();
                    format!("order {} value {} +/- {}", v.order, s.value, s.error_bound)
                }
            },
            code: None,
        },
        Err(err) => failure("special-value", err.into()),
    });
    if e.contains_number_ring() {
        return out;
    }
    out.push(outcome_of("special-value-finite-field", ffengine::verify_c_finite_char(e, n).map_err(Into::into)));
    out.push(outcome_of("trace-formula", ffengine::trace_formula_check(e, cli.series_order).map_err(Into::into)));
    out.push(match ell_primes(cli, e) {
        Ok(primes) => {
            let rs: Result<Vec<_>, CliError> = primes
                .iter()
                .map(|l| ffengine::ell_adic_check(e, n, l).map_err(Into::into))
                .collect();
            match rs {
                Ok(rs) => {
                    let failed: Vec<&str> = rs
                        .iter()
                        .filter(|r| !r.passed())
                        .flat_map(|r| r.context.primes.iter().map(String::as_str))
                        .collect();
                    CheckOutcome {
                        check: "ell-adic".into(),
                        status: if failed.is_empty() { Status::Pass } else { Status::Fail },
                        detail: if failed.is_empty() {
                            format!("{} primes", rs.len())
                        } else {
                            format!("failed for l = {}", failed.join(", "))
                        },
                        code: None,
                    }
                }
                Err(err) => failure("ell-adic", err),
            }
        }
        Err(err) => failure("ell-adic", err),
    });
    out.push(outcome_of("p-part", ffengine::p_part_check(e, n).map_err(Into::into)));
    out
}

fn batch_cmd(cli: &Cli, manifest: &Path) -> Result<Outcome, CliError> {
    let entries: Vec<ManifestEntry> = serde_json::from_str(&read_file(manifest)?)
        .map_err(|e| Error::Parse(format!("manifest: {e}")))?;
    let results: Vec<BatchEntry> = entries
        .par_iter()
        .enumerate()
        .map(|(index, m)| {
            let checks = if m.n >= 0 {
                vec![failure(
                    "input",
                    Error::InvalidArgument(format!("n = {} must be a negative integer", m.n)).into(),
                )]
            } else {
                match load_expr(&m.expr) {
                    Ok(e) => battery(cli, &e, m.n),
                    Err(err) => vec![failure("parse", err)],
                }
            };
            let ok = checks
                .iter()
                .all(|c| matches!(c.status, Status::Pass | Status::Skipped));
            BatchEntry {
                index,
                expr: m.expr.clone(),
                n: m.n,
                checks,
                verdict: Verdict::from_bool(ok),
            }
        })
        .collect();
    let passed = results.iter().filter(|e| e.verdict == Verdict::Pass).count();
    let failed = results.len() - passed;
    let r = BatchReport {
        entries: results,
        passed,
        failed,
        verdict: Verdict::from_bool(failed == 0),
    };
    Outcome::new(&r, failed == 0)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Zeta { expr } => zeta_cmd(cli, expr),
        Command::Ord { expr, hodge } => ord_cmd(cli, expr.as_deref(), hodge.as_deref()),
        Command::Value { expr } => value_cmd(cli, expr),
        Command::VerifyC { expr } => {
            let n = need_n(cli)?;
            checks(vec![ffengine::verify_c_finite_char(&load_expr(expr)?, n)?])
        }
        Command::VerifyVo { expr } => {
            let n = need_n(cli)?;
            checks(vo_report(&load_expr(expr)?, n)?)
        }
        Command::TraceCheck { expr } => {
            checks(vec![ffengine::trace_formula_check(&load_expr(expr)?, cli.series_order)?])
        }
        Command::EllCheck { expr } => {
            let n = need_n(cli)?;
            let e = load_expr(expr)?;
            let rs = ell_primes(cli, &e)?
                .iter()
                .map(|l| ffengine::ell_adic_check(&e, n, l))
                .collect::<zetaforge::Result<Vec<_>>>()?;
            checks(rs)
        }
        Command::PCheck { expr } => {
            let n = need_n(cli)?;
            checks(vec![ffengine::p_part_check(&load_expr(expr)?, n)?])
        }
        Command::Det { file } => det_cmd(file),
        Command::Batch { manifest } => batch_cmd(cli, manifest),
    }
}

/// Exit status: 0 when every verdict passes, 1 on a failed verdict, 2 on error.
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Runs a full command line; returns (stdout, stderr, exit status).
pub fn run_args<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                (rendered, String::new(), 0)
            } else {
                (String::new(), rendered, code)
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let stdout = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).unwrap()),
                Format::Text => out.text,
            };
            (stdout, String::new(), if out.passed { 0 } else { EXIT_FAIL })
        }
        Err(err) => match cli.format {
            Format::Json => {
                let body = serde_json::json!({
                    "error": { "code": err.code(), "message": err.to_string() }
                });
                (
                    format!("{}\n", serde_json::to_string_pretty(&body).unwrap()),
                    String::new(),
                    EXIT_ERROR,
                )
            }
            Format::Text => (String::new(), format!("error[{}]: {err}\n", err.code()), EXIT_ERROR),
        },
    }
}

