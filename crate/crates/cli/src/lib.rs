//! Command-line front end: value evaluation, the three routes to C(a,b),
//! identity verification and integer relation searches.
//!
//! [`run`] takes the argument vector and two writers and returns the exit
//! code: 0 on success, 1 when a check fails, 2 on usage or domain errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tetra::feynman::{c_closed, c_direct, derive, q_values, r_values, stepwise, MassPair};
use tetra::identities::{catalog, conj_1_4_values, verify as verify_identity, Status, CONJ_1_4_COEFFS};
use tetra::mpcore::constant;
use tetra::polylog::{cl2, li2};
use tetra::pslq::{find_relation, find_relation_confirmed, Integer, RelationResult};
use tetra::{Complex, PrecisionCtx, Real};

mod number;

pub use number::parse_number;

#[derive(Parser, Debug)]
#[command(name = "tetra-cli", version, about = "Tetrahedral integral, Clausen identities and PSLQ")]
struct Cli {
    /// Output digits; working precision adds guard digits.
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,
    /// Seed for sampled identity parameters.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a special function or constant.
    Eval {
        #[command(subcommand)]
        what: EvalCommand,
    },
    /// Compute C(a, b).
    Feynman {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Quadrature tolerance; defaults to 10^(-digits+10).
        #[arg(long)]
        tol: Option<String>,
    },
    /// Check catalog identities.
    Verify {
        /// Identity name, comma-separated names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Search for integer relations.
    Pslq {
        #[arg(long, value_enum, conflicts_with = "values_from")]
        builtin: Option<Builtin>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// One number per line; `#` starts a comment.
        #[arg(long)]
        values_from: Option<PathBuf>,
        #[arg(long, default_value = "1e6")]
        max_norm: String,
    },
}

#[derive(Subcommand, Debug)]
enum EvalCommand {
    /// Clausen function Cl2(theta).
    Cl2 {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Dilogarithm Li2(z), z = re + i im.
    Li2 {
        #[arg(long, allow_hyphen_values = true)]
        re: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        im: String,
    },
    /// Named constant: pi, log2, catalan.
    Const { name: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Closed,
    Direct,
    Stepwise,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Builtin {
    R19,
    Conj14,
    Qs,
}

#[derive(Serialize, Debug, Clone)]
pub struct ResultEntry {
    pub name: String,
    pub status: &'static str,
    pub max_residual: String,
    pub samples: usize,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub tool: &'static str,
    pub digits: u32,
    pub seed: u64,
    pub results: Vec<ResultEntry>,
    pub values: serde_json::Map<String, serde_json::Value>,
}

impl Report {
    fn new(digits: u32, seed: u64) -> Report {
        Report { tool: "tetra-cli", digits, seed, results: vec![], values: serde_json::Map::new() }
    }

    fn value(&mut self, name: impl Into<String>, v: String) {
        self.values.insert(name.into(), serde_json::Value::String(v));
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, residual: &Real, samples: usize) {
        let status = if pass { "pass" } else { "fail" };
        self.results.push(ResultEntry { name: name.into(), status, max_residual: residual_string(residual), samples });
    }

    fn failed(&self) -> bool {
        self.results.iter().any(|r| r.status == "fail" || r.status == "conjecture-violated")
    }

    fn write_text(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (k, v) in &self.values {
            writeln!(out, "{k} = {}", v.as_str().unwrap_or_default())?;
        }
        for r in &self.results {
            writeln!(out, "{:<40} {:<20} max_residual={} samples={}", r.name, r.status, r.max_residual, r.samples)?;
        }
        if !self.results.is_empty() {
            let bad = self.results.iter().filter(|r| r.status == "fail" || r.status == "conjecture-violated").count();
            writeln!(out, "{} checks, {} failed", self.results.len(), bad)?;
        }
        Ok(())
    }
}

fn residual_string(r: &Real) -> String {
    r.abs().to_decimal(6)
}

/// A usage or domain error, reported on one line with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> UsageError {
        UsageError(e.to_string())
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "{}", line.trim());
            return 2;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let written = if cli.json {
                serde_json::to_string_pretty(&report)
                    .map_err(std::io::Error::other)
                    .and_then(|s| writeln!(out, "{s}"))
            } else {
                report.write_text(out)
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if report.failed() {
                1
            } else {
                0
            }
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {}", msg.lines().next().unwrap_or_default());
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, UsageError> {
    let ctx = PrecisionCtx::new(cli.digits)?;
    let mut report = Report::new(cli.digits, cli.seed);
    let out_digits = cli.digits as usize;
    match &cli.command {
        Command::Eval { what } => match what {
            EvalCommand::Cl2 { theta } => {
                let t = parse_number(theta, &ctx)?;
                report.value(format!("cl2({theta})"), cl2(&t, &ctx).to_decimal(out_digits));
            }
            EvalCommand::Li2 { re, im } => {
                let z = Complex::new(parse_number(re, &ctx)?, parse_number(im, &ctx)?);
                let v = li2(&z, &ctx);
                report.value("re li2", v.re().to_decimal(out_digits));
                report.value("im li2", v.im().to_decimal(out_digits));
            }
            EvalCommand::Const { name } => {
                report.value(name.clone(), constant(name, &ctx)?.to_decimal(out_digits));
            }
        },
        Command::Feynman { a, b, method, tol } => {
            let m = MassPair::new(parse_number(a, &ctx)?, parse_number(b, &ctx)?, &ctx)?;
            let tol = match tol {
                Some(t) => parse_number(t, &ctx)?,
                None => ctx.pow10(-(cli.digits as i32) + 10),
            };
            feynman(&mut report, &m, *method, &tol, &ctx)?;
        }
        Command::Verify { suite, samples } => {
            let names: Vec<String> = if suite == "all" {
                catalog().iter().map(|s| s.name.to_string()).collect()
            } else {
                suite.split(',').map(|s| s.trim().to_string()).collect()
            };
            for name in &names {
                let r = verify_identity(name, *samples, cli.seed, &ctx)?;
                let status = match (r.status, r.pass) {
                    (Status::Proven, true) => "pass",
                    (Status::Proven, false) => "fail",
                    (Status::Conjectural, true) => "conjecture-ok",
                    (Status::Conjectural, false) => "conjecture-violated",
                };
                report.results.push(ResultEntry {
                    name: r.name,
                    status,
                    max_residual: residual_string(&r.max_residual),
                    samples: r.samples,
                });
            }
        }
        Command::Pslq { builtin, a, b, values_from, max_norm } => {
            let max_norm = parse_number(max_norm, &ctx)?;
            match (builtin, values_from) {
                (Some(kind), None) => pslq_builtin(&mut report, *kind, a.as_deref(), b.as_deref(), &max_norm, &ctx)?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
                    let xs = parse_value_file(&text, &ctx)?;
                    let r = find_relation(&xs, &max_norm, &ctx)?;
                    let names: Vec<String> = (1..=xs.len()).map(|i| format!("x{i}")).collect();
                    relation_entry(&mut report, &names, &r);
                }
                _ => return Err(UsageError("pslq needs exactly one of --builtin or --values-from".into())),
            }
        }
    }
    Ok(report)
}

fn parse_value_file(text: &str, ctx: &PrecisionCtx) -> Result<Vec<Real>, UsageError> {
    let mut xs = vec![];
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or_default().trim();
        if body.is_empty() {
            continue;
        }
        xs.push(parse_number(body, ctx).map_err(|e| UsageError(format!("line {}: {e}", i + 1)))?);
    }
    Ok(xs)
}

fn feynman(report: &mut Report, m: &MassPair, method: Method, tol: &Real, ctx: &PrecisionCtx) -> Result<(), UsageError> {
    let d = ctx.digits() as usize;
    match method {
        Method::Closed => report.value("c_closed", c_closed(m, ctx)?.to_decimal(d)),
        Method::Direct => {
            let r = c_direct(m, tol, ctx)?;
            report.value("c_direct", r.value.to_decimal(d));
            report.value("c_direct_error", r.error_estimate.to_decimal(6));
        }
        Method::Stepwise | Method::All => {
            let s = stepwise(m, ctx)?;
            if method == Method::All {
                report.value("c_closed", s.c_closed.to_decimal(d));
                report.value("c_direct", s.c_direct.value.to_decimal(d));
            }
            report.value("c_stepwise", s.c_from_i3_i4.to_decimal(d));
            for i in &s.integrals {
                report.value(format!("{} closed", i.name), i.closed.to_decimal(d));
                report.value(format!("{} quadrature", i.name), i.quadrature.value.to_decimal(d));
            }
            for i in &s.integrals {
                report.check(format!("{} closed vs quadrature", i.name), i.pass, &i.residual, 1);
            }
            let t = &s.tolerance;
            report.check("I1 + I2 = 0", s.i1_plus_i2.abs() <= *t, &s.i1_plus_i2, 1);
            report.check("2d(I3 + I4) = s-bracket", s.s_bracket_residual.abs() <= *t, &s.s_bracket_residual, 1);
            let r = &s.c_from_i3_i4 - &s.c_closed;
            report.check("stepwise vs closed", r.abs() <= *t, &r, 1);
            if method == Method::All {
                let r = &s.c_direct.value - &s.c_closed;
                let allowed = t + &s.c_direct.error_estimate;
                report.check("direct vs closed", r.abs() <= allowed, &r, 1);
            }
        }
    }
    Ok(())
}

fn mass_pair(a: Option<&str>, b: Option<&str>, ctx: &PrecisionCtx) -> Result<MassPair, UsageError> {
    let (Some(a), Some(b)) = (a, b) else {
        return Err(UsageError("this builtin needs --a and --b".into()));
    };
    Ok(MassPair::new(parse_number(a, ctx)?, parse_number(b, ctx)?, ctx)?)
}

fn relation_text(names: &[String], coeffs: &[Integer]) -> String {
    let mut s = String::new();
    for (k, n) in coeffs.iter().zip(names) {
        if *k == 0 {
            continue;
        }
        let sign = if *k < 0 { "-" } else { "+" };
        let mag = k.clone().abs();
        if s.is_empty() {
            if *k < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        if mag != 1 {
            s.push_str(&format!("{mag}*"));
        }
        s.push_str(n);
    }
    s + " = 0"
}

fn relation_entry(report: &mut Report, names: &[String], r: &RelationResult) {
    match &r.coeffs {
        Some(c) => report.check(relation_text(names, c), true, &r.residual, 1),
        None => {
            let bound = r.exclusion_bound.as_ref().map(|b| b.to_decimal(6)).unwrap_or_else(|| "none".into());
            report.value("exclusion_bound", bound);
        }
    }
}

/// Pairwise scan: every pair `(xᵢ, xⱼ)` searched on its own, so that each
/// two-term relation is reported separately.
fn pairwise<F>(report: &mut Report, names: &[String], values: F, max_norm: &Real, ctx: &PrecisionCtx)
where
    F: Fn(&PrecisionCtx) -> Vec<Real> + Sync,
{
    let fine = ctx.refined(20);
    let (coarse, refined) = (values(ctx), values(&fine));
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let pick = |v: &Vec<Real>| vec![v[i].clone(), v[j].clone()];
            let r = find_relation_confirmed(
                |c: &PrecisionCtx| if c.digits() == fine.digits() { pick(&refined) } else { pick(&coarse) },
                max_norm,
                ctx,
            );
            if let Ok(r) = r {
                if let Some(c) = &r.coeffs {
                    let pair = [names[i].clone(), names[j].clone()];
                    report.check(relation_text(&pair, c), true, &r.residual, 1);
                }
            }
        }
    }
}

fn pslq_builtin(
    report: &mut Report,
    kind: Builtin,
    a: Option<&str>,
    b: Option<&str>,
    max_norm: &Real,
    ctx: &PrecisionCtx,
) -> Result<(), UsageError> {
    let d = ctx.digits() as usize;
    match kind {
        Builtin::R19 | Builtin::Qs => {
            let m = mass_pair(a, b, ctx)?;
            let prefix = if kind == Builtin::R19 { "r" } else { "q" };
            let values = |c: &PrecisionCtx| -> Vec<Real> {
                let g = derive(&m, c).expect("checked at construction");
                let v = if kind == Builtin::R19 { r_values(&g, c) } else { q_values(&g, c) };
                v.into_iter().map(|x| x.value).collect()
            };
            derive(&m, &ctx.refined(20))?;
            let base = values(ctx);
            let names: Vec<String> = (1..=base.len()).map(|i| format!("{prefix}{i}")).collect();
            for (n, v) in names.iter().zip(&base) {
                report.value(n.clone(), v.to_decimal(d));
            }
            pairwise(report, &names, values, max_norm, ctx);
        }
        Builtin::Conj14 => {
            let names: Vec<String> =
                ["Cl2(2b-2a)", "Cl2(pi-4a)", "Cl2(pi-2b)", "Cl2(pi+2a)", "Cl2(4a)"].map(String::from).to_vec();
            let values = conj_1_4_values(ctx);
            for (n, v) in names.iter().zip(&values) {
                report.value(n.clone(), v.to_decimal(d));
            }
            let r = find_relation_confirmed(conj_1_4_values, max_norm, ctx)?;
            let expected: Vec<i64> = CONJ_1_4_COEFFS.to_vec();
            let negated: Vec<i64> = expected.iter().map(|k| -k).collect();
            let found = r.coeffs_i64();
            let ok = found.as_ref().is_some_and(|v| *v == expected || *v == negated);
            let name = match &r.coeffs {
                Some(c) => relation_text(&names, c),
                None => "no relation found".to_string(),
            };
            report.results.push(ResultEntry {
                name,
                status: if ok { "conjecture-ok" } else { "conjecture-violated" },
                max_residual: residual_string(&r.residual),
                samples: 1,
            });
        }
    }
    Ok(())
}
