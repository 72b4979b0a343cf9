//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a property or a claims comparison fails,
//! 2 on usage errors. Big integers always travel as decimal strings.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::diophantine::{
    claims_for, run_search, Equation, Parity, SearchConfig, SearchResults, Verdict,
};
use crate::error::Error;
use crate::modular::period;
use crate::sequences::{self, balancer, SequenceKind, TermAccess};
use crate::suites::{all_passed, run_suite, Suite};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ballab",
    version,
    about = "Balancing numbers: sequences, identity checks and Diophantine searches"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a range of sequence terms.
    Seq(SeqArgs),
    /// Print one sequence term.
    Term(TermArgs),
    /// Run property suites.
    Verify(VerifyArgs),
    /// Period of the balancing sequence modulo an integer.
    Period(PeriodArgs),
    /// Bounded search for solutions of one equation.
    Search(SearchArgs),
    /// Balancer R of a balancing number B.
    Balancer(BalancerArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Balancing,
    LucasBalancing,
    Pell,
    AssociatedPell,
}

impl From<KindArg> for SequenceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Balancing => SequenceKind::Balancing,
            KindArg::LucasBalancing => SequenceKind::LucasBalancing,
            KindArg::Pell => SequenceKind::Pell,
            KindArg::AssociatedPell => SequenceKind::AssociatedPell,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Same,
    Opposite,
    Any,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Same => Parity::Same,
            ParityArg::Opposite => Parity::Opposite,
            ParityArg::Any => Parity::Any,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquationArg {
    SumPower,
    SquareDiff,
    CubeSumPlus,
    CubeSumMinus,
    SpecialForm,
    ProductForm,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[arg(long, value_enum, default_value = "balancing")]
    pub kind: KindArg,
    #[arg(long = "from", default_value_t = 0)]
    pub from: u64,
    #[arg(long = "to")]
    pub to: u64,
    /// Reduce every term modulo this value.
    #[arg(long = "mod")]
    pub modulus: Option<u64>,
    #[arg(long, value_enum, default_value = "json", env = "BALLAB_FORMAT")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TermArgs {
    #[arg(long, value_enum, default_value = "balancing")]
    pub kind: KindArg,
    #[arg(long)]
    pub n: u64,
    /// Indices above this use exponentiation in Z[√2].
    #[arg(long, default_value_t = sequences::DEFAULT_DOUBLING_THRESHOLD, env = "BALLAB_DOUBLING_THRESHOLD")]
    pub doubling_threshold: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    #[arg(long = "max-n", default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_n: u64,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    #[arg(long = "mod", value_parser = clap::value_parser!(u64).range(2..))]
    pub modulus: u64,
}

#[derive(Debug, Args)]
pub struct BalancerArgs {
    /// Candidate balancing number.
    pub b: BigInt,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub equation: EquationArg,
    #[arg(long = "max-index", env = "BALLAB_MAX_INDEX", value_parser = clap::value_parser!(u64).range(1..))]
    pub max_index: u64,
    /// Smallest exponent q considered (default: 3 for cube sums, else 2).
    #[arg(long = "min-exp", env = "BALLAB_MIN_EXP")]
    pub min_exp: Option<u32>,
    /// Index parity filter (default: same for sum-power, else any).
    #[arg(long, value_enum, env = "BALLAB_PARITY")]
    pub parity: Option<ParityArg>,
    /// Require gcd(B_n, B_m) = 1 (always on for square-diff and cube sums).
    #[arg(long)]
    pub coprime: bool,
    /// Admit a zero term when gcd(n + m, n - m) divides 2 (default for square-diff).
    #[arg(long, conflicts_with = "no_zero_exempt")]
    pub zero_exempt: bool,
    /// Use gcd(B_n, 0) = B_n (default for cube sums).
    #[arg(long)]
    pub no_zero_exempt: bool,
    #[arg(long, env = "BALLAB_NO_SIEVE")]
    pub no_sieve: bool,
    #[arg(long, env = "BALLAB_WORKERS")]
    pub workers: Option<usize>,
    /// Sequence for special-form searches.
    #[arg(long, value_enum, default_value = "balancing")]
    pub kind: KindArg,
    /// Prime for special-form searches.
    #[arg(long, default_value_t = 2)]
    pub prime: u64,
}

impl SearchArgs {
    pub fn equation(&self) -> Equation {
        match self.equation {
            EquationArg::SumPower => Equation::SumPower,
            EquationArg::SquareDiff => Equation::SquareDiff,
            EquationArg::CubeSumPlus => Equation::CubeSumPlus,
            EquationArg::CubeSumMinus => Equation::CubeSumMinus,
            EquationArg::SpecialForm => Equation::SpecialForm {
                kind: self.kind.into(),
                prime: self.prime,
            },
            EquationArg::ProductForm => Equation::ProductForm,
        }
    }

    pub fn config(&self) -> SearchConfig {
        let equation = self.equation();
        let mut cfg = equation.default_config(self.max_index);
        if let Some(q) = self.min_exp {
            cfg.min_exponent = q;
        }
        if let Some(p) = self.parity {
            cfg.parity = p.into();
        }
        if self.coprime {
            cfg.coprimality_required = true;
        }
        if self.zero_exempt {
            cfg.coprime_zero_exempt = true;
        }
        if self.no_zero_exempt {
            cfg.coprime_zero_exempt = false;
        }
        if self.no_sieve {
            cfg.sieve_enabled = false;
        }
        cfg
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Value,
    pub results: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_passed: Option<bool>,
    pub runtime_ms: u64,
    pub tool_version: &'static str,
}

impl Report {
    fn new(command: &str, config: Value, results: Vec<Value>, started: Instant) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            results,
            all_passed: None,
            runtime_ms: started.elapsed().as_millis() as u64,
            tool_version: TOOL_VERSION,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn emit(out: &mut dyn Write, v: &impl Serialize) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)
}

/// Parses `args` (program name first) and runs the command, writing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = e.print();
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAILED
        }
    }
}

enum CliError {
    Usage(String),
    Failed(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(_)
            | Error::InvalidRange { .. }
            | Error::NotPrime(_)
            | Error::BadModulus(_)
            | Error::ParityMismatch { .. }
            | Error::OracleBound(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let started = Instant::now();
    match command {
        Command::Seq(a) => cmd_seq(&a, started, out),
        Command::Term(a) => {
            let kind: SequenceKind = a.kind.into();
            let access = TermAccess {
                doubling_threshold: a.doubling_threshold,
            };
            let value = access.term(kind, a.n);
            let method = if a.n > a.doubling_threshold {
                "doubling"
            } else {
                "iteration"
            };
            let results = vec![json!({
                "kind": kind, "index": a.n, "value": value.to_string(), "method": method
            })];
            let config =
                json!({ "kind": kind, "n": a.n, "doubling_threshold": a.doubling_threshold });
            emit(out, &Report::new("term", config, results, started))?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let checks = run_suite(a.suite, a.max_n);
            let passed = all_passed(&checks);
            let config = json!({ "suite": a.suite, "max_n": a.max_n });
            let mut report = Report::new(
                "verify",
                config,
                checks.iter().map(to_value).collect(),
                started,
            );
            report.all_passed = Some(passed);
            emit(out, &report)?;
            Ok(if passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Period(a) => {
            let r = period(a.modulus)?;
            let config = json!({ "modulus": a.modulus });
            emit(
                out,
                &Report::new("period", config, vec![to_value(&r)], started),
            )?;
            Ok(EXIT_OK)
        }
        Command::Balancer(a) => {
            let r = balancer(&a.b);
            let results = vec![json!({
                "b": a.b.to_string(),
                "is_balancing": r.is_some(),
                "balancer": r.map(|r| r.to_string()),
            })];
            emit(
                out,
                &Report::new(
                    "balancer",
                    json!({ "b": a.b.to_string() }),
                    results,
                    started,
                ),
            )?;
            Ok(EXIT_OK)
        }
        Command::Search(a) => cmd_search(&a, started, out),
    }
}

fn cmd_seq(a: &SeqArgs, started: Instant, out: &mut dyn Write) -> Result<i32, CliError> {
    let kind: SequenceKind = a.kind.into();
    let mut terms = sequences::range(kind, a.from, a.to)?;
    if let Some(m) = a.modulus {
        if m == 0 {
            return Err(CliError::Usage("--mod must be positive".into()));
        }
        let m = BigInt::from(m);
        for t in &mut terms {
            t.value = num_integer::Integer::mod_floor(&t.value, &m);
        }
    }
    match a.format {
        Format::Csv => {
            writeln!(out, "index,value")?;
            for t in &terms {
                writeln!(out, "{},{}", t.index, t.value)?;
            }
        }
        Format::Json => {
            let config = json!({ "kind": kind, "from": a.from, "to": a.to, "modulus": a.modulus });
            emit(
                out,
                &Report::new("seq", config, terms.iter().map(to_value).collect(), started),
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_search(a: &SearchArgs, started: Instant, out: &mut dyn Write) -> Result<i32, CliError> {
    let equation = a.equation();
    let cfg = a.config();
    equation.validate(&cfg)?;
    let results = run_search(equation, &cfg, a.workers)?;
    let claims = claims_for(equation, &cfg, &results);

    let mut notes = Vec::new();
    if equation == Equation::SumPower && cfg.parity != Parity::Same {
        notes.push(
            "EXPLORATORY: opposite-parity pairs have no known complete solution set".to_string(),
        );
    }
    if cfg.coprimality_required && cfg.coprime_zero_exempt {
        notes.push(crate::diophantine::ZERO_EXEMPTION_NOTE.to_string());
    }
    emit(
        out,
        &json!({
            "type": "header",
            "schema_version": SCHEMA_VERSION,
            "command": "search",
            "equation": equation,
            "config": cfg,
            "label": if claims.is_some() { "CLAIMED" } else { "EXPLORATORY" },
            "notes": notes,
            "tool_version": TOOL_VERSION,
        }),
    )?;
    for line in results.json_lines() {
        writeln!(out, "{{\"type\":\"record\",\"data\":{line}}}")?;
    }
    if let SearchResults::Product { degenerate, .. } = &results {
        for d in degenerate {
            emit(out, &json!({ "type": "degenerate", "data": d }))?;
        }
    }
    let verdict_ok = claims.as_ref().is_none_or(|c| c.verdict == Verdict::Match);
    emit(
        out,
        &json!({
            "type": "summary",
            "count": results.len(),
            "claims": claims,
            "runtime_ms": started.elapsed().as_millis() as u64,
        }),
    )?;
    Ok(if verdict_ok { EXIT_OK } else { EXIT_FAILED })
}
