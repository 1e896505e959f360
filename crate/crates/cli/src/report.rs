use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use zetaforge::archimedean::HodgeData;
use zetaforge::detcomplex::GradedLine;
use zetaforge::ffengine::{Verdict, VerificationReport};
use zetaforge::zetarep::ZetaProduct;

#[derive(Debug, Serialize)]
pub struct RationalFunctionOut {
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Serialize)]
pub struct ZetaReport {
    pub expr: String,
    pub zeta: String,
    pub factors: ZetaProduct,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_function: Option<RationalFunctionOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct HodgeOrd {
    pub data: HodgeData,
    pub dims: BTreeMap<String, u64>,
    pub alternating_sum: i64,
    pub gamma_order: i64,
    pub verdict: Verdict,
}

#[derive(Debug, Serialize)]
pub struct OrdReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    pub n: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjectural: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secondary: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeOrd>,
    pub verdict: Verdict,
}

#[derive(Debug, Serialize)]
pub struct ValueReport {
    pub expr: String,
    pub n: i64,
    pub order: i64,
    pub exact: bool,
    pub value: String,
    pub numeric: String,
    pub error_bound: String,
    pub precision: u32,
}

#[derive(Debug, Serialize)]
pub struct ChecksReport {
    pub reports: Vec<VerificationReport>,
    pub verdict: Verdict,
}

#[derive(Debug, Serialize)]
pub struct GroupOut {
    pub group: String,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct DetReport {
    pub determinant: GradedLine,
    pub by_divisors: GradedLine,
    pub cohomology: BTreeMap<String, GroupOut>,
    pub euler_characteristic: i64,
    pub secondary_euler_characteristic: i64,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Debug, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct BatchEntry {
    pub index: usize,
    pub expr: String,
    pub n: i64,
    pub checks: Vec<CheckOutcome>,
    pub verdict: Verdict,
}

#[derive(Debug, Serialize)]
pub struct BatchReport {
    pub entries: Vec<BatchEntry>,
    pub passed: usize,
    pub failed: usize,
    pub verdict: Verdict,
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
    }
}

pub trait Render {
    fn render(&self) -> String;
}

impl Render for ZetaReport {
    fn render(&self) -> String {
        let mut s = format!("expr: {}\nzeta: {}\n", self.expr, self.zeta);
        if let (Some(q), Some(rf)) = (&self.base, &self.rational_function) {
            let _ = writeln!(s, "Z(t) over F_{q}: ({}) / ({})", rf.numerator, rf.denominator);
        }
        if let Some(series) = &self.series {
            let _ = writeln!(s, "series: {}", series.join(", "));
        }
        s
    }
}

impl Render for OrdReport {
    fn render(&self) -> String {
        let mut s = String::new();
        if let Some(e) = &self.expr {
            let _ = writeln!(s, "expr: {e}");
        }
        let _ = writeln!(s, "n: {}", self.n);
        for (label, v) in [
            ("analytic order", self.analytic),
            ("conjectural order", self.conjectural),
            ("secondary Euler characteristic", self.secondary),
        ] {
            if let Some(v) = v {
                let _ = writeln!(s, "{label}: {v}");
            }
        }
        if let Some(h) = &self.hodge {
            let dims: Vec<String> = h.dims.values().map(ToString::to_string).collect();
            let _ = writeln!(
                s,
                "hodge dims: ({})  alternating sum: {}  gamma order: {}  [{}]",
                dims.join(", "),
                h.alternating_sum,
                h.gamma_order,
                verdict(h.verdict)
            );
        }
        let _ = writeln!(s, "VO: {}", verdict(self.verdict));
        s
    }
}

impl Render for ValueReport {
    fn render(&self) -> String {
        let mut s = format!("expr: {}\nn: {}\norder: {}\n", self.expr, self.n, self.order);
        if self.exact {
            let _ = writeln!(s, "value: {} (exact)\n       {}", self.value, self.numeric);
        } else {
            let _ = writeln!(s, "value: {} +/- {}", self.numeric, self.error_bound);
        }
        s
    }
}

impl Render for VerificationReport {
    fn render(&self) -> String {
        let mut ctx = self.context.expr.clone();
        if let Some(n) = self.context.n {
            let _ = write!(ctx, " n={n}");
        }
        if !self.context.primes.is_empty() {
            let _ = write!(ctx, " l={}", self.context.primes.join(","));
        }
        if let Some(k) = self.context.series_order {
            let _ = write!(ctx, " K={k}");
        }
        format!(
            "[{}] {} {}\n  left:  {}\n  right: {}\n",
            verdict(self.verdict),
            self.claim,
            ctx,
            self.left,
            self.right
        )
    }
}

impl Render for ChecksReport {
    fn render(&self) -> String {
        let mut s: String = self.reports.iter().map(Render::render).collect();
        let _ = writeln!(s, "overall: {}", verdict(self.verdict));
        s
    }
}

impl Render for DetReport {
    fn render(&self) -> String {
        let mut s = String::new();
        for (i, g) in &self.cohomology {
            let _ = writeln!(s, "H^{i} = {}", g.group);
        }
        let _ = writeln!(s, "det: {}", self.determinant);
        let _ = writeln!(s, "det (divisor route): {}", self.by_divisors);
        let _ = writeln!(
            s,
            "chi: {}  chi': {}",
            self.euler_characteristic, self.secondary_euler_characteristic
        );
        let _ = writeln!(s, "routes agree: {}", verdict(self.verdict));
        s
    }
}

impl Render for BatchReport {
    fn render(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let _ = writeln!(s, "#{} {} n={} [{}]", e.index, e.expr, e.n, verdict(e.verdict));
            for c in &e.checks {
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skip",
                    Status::Error => "ERROR",
                };
                let _ = writeln!(s, "  {status:5} {:22} {}", c.check, c.detail);
            }
        }
        let _ = writeln!(
            s,
            "{} passed, {} failed: {}",
            self.passed,
            self.failed,
            verdict(self.verdict)
        );
        s
    }
}
