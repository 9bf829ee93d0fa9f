//! Command-line front end: `spectra`, `verify <target>` and `report`.
//!
//! Exit codes: 0 pass, 1 usage, 2 violated check, 3 numerical failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::spectra::{CaseId, Family};
use crate::suite::{self, CheckRow, CriterionOutcome, LemmaGrid, SuiteConfig, Tolerance};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Default seed for every randomized command.
pub const SEED_ENV: &str = "FLAGSOB_SEED";

#[derive(Parser, Debug)]
#[command(name = "flagsob", version, about = "Spectral identities and log-Sobolev checks on the rank-one flag spheres")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum CaseArg {
    Real,
    Complex,
    Quaternionic,
    Octonionic,
}

impl CaseArg {
    fn family(self) -> Family {
        match self {
            CaseArg::Real => Family::Real,
            CaseArg::Complex => Family::Complex,
            CaseArg::Quaternionic => Family::Quaternionic,
            CaseArg::Octonionic => Family::Octonionic,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum GridArg {
    Small,
    Full,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Target {
    Theorem21,
    Beckner,
    Dirichlet,
    Gross,
    Heisenberg,
    Projected,
    Semigroup,
    Hls,
    Rearrangement,
    Lemma,
    Constants,
    Asymptotics,
}

impl Target {
    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }

    fn randomized(self) -> bool {
        !matches!(self, Target::Projected | Target::Lemma | Target::Constants | Target::Asymptotics)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalue table, sharp-constant margins and special-parameter identities of one case.
    Spectra(SpectraArgs),
    /// Run one verification target, one row per trial.
    Verify(VerifyArgs),
    /// Run the acceptance suite and summarize it.
    Report(ReportArgs),
}

#[derive(Args, Debug, Serialize)]
struct SpectraArgs {
    #[arg(long, value_enum)]
    case: CaseArg,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 20)]
    max_degree: u32,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    #[arg(long, value_enum)]
    case: Option<CaseArg>,
    /// Rank parameter; for `projected` the single sphere dimension, for `constants` the largest.
    #[arg(long)]
    n: Option<u32>,
    /// Monte Carlo samples per trial.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, env = SEED_ENV)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Sequence length for `rearrangement`.
    #[arg(long)]
    length: Option<usize>,
    /// Allowed violation, relative to max(1, rhs); statistical targets add 3 standard errors.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = GridArg::Small)]
    grid: GridArg,
    /// Exponent of `hls`.
    #[arg(long)]
    p: Option<f64>,
    /// Time of `semigroup`; defaults to the hypercontractive threshold.
    #[arg(long)]
    t: Option<f64>,
    /// Gauss–Hermite nodes per axis for `gross`.
    #[arg(long)]
    nodes: Option<usize>,
    /// Width `k` of the projection for `asymptotics`; all of 1..=3 when absent.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
struct ReportArgs {
    #[arg(long, env = SEED_ENV)]
    seed: Option<u64>,
    /// Override the number of random functions of the statistical criteria.
    #[arg(long)]
    trials: Option<usize>,
    /// Override the Monte Carlo sample count of the statistical criteria.
    #[arg(long)]
    samples: Option<usize>,
    /// Run only these criteria (comma separated ids).
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Structural(_) | Error::Unsupported(_) | Error::Pole { .. } => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_NUMERIC,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Spectra(a) => cmd_spectra(a, cli.format),
        Command::Verify(a) => cmd_verify(a, cli.format),
        Command::Report(a) => cmd_report(a, cli.format),
    };
    match result {
        Ok((text, code)) => match emit(&text, cli.output.as_ref()) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {}", e.message);
                e.code
            }
        },
        Err(e) => {
            eprintln!("error: {}", e.message);
            if e.code == EXIT_USAGE {
                eprintln!("run `flagsob --help` for usage");
            }
            e.code
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

type Output = Result<(String, i32), Failure>;

fn verdict(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    }
}

fn json<T: Serialize>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

pub fn rows_to_csv(rows: &[CheckRow]) -> crate::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(suite::CSV_HEADER.split(','))?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn rows_text(rows: &[CheckRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let _ = writeln!(
            s,
            "{:<22} {:<13} {:>7} {:<34} lhs={:<12.6e} rhs={:<12.6e} margin={:<12.4e} se={:<10.3e} {}",
            r.suite,
            r.case,
            r.n.map(|n| n.to_string()).unwrap_or_default(),
            r.label,
            r.lhs,
            r.rhs,
            r.margin,
            r.std_error,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    s
}

fn case_from(arg: CaseArg, n: u32) -> Result<CaseId, Failure> {
    let n = if arg == CaseArg::Octonionic { 1 } else { n };
    Ok(CaseId::new(arg.family(), n)?)
}

#[derive(Serialize)]
struct SpectraDoc<'a> {
    command: &'static str,
    config: &'a SpectraArgs,
    pass: bool,
    degenerate: Option<&'a str>,
    records: &'a [suite::SpectraRecord],
}

fn cmd_spectra(a: &SpectraArgs, format: Format) -> Output {
    let case = case_from(a.case, a.n)?;
    let run = suite::spectra_run(&case, a.max_degree)?;
    let pass = run.pass();
    let text = match format {
        Format::Json => json(&SpectraDoc {
            command: "spectra",
            config: a,
            pass,
            degenerate: run.degenerate.as_deref(),
            records: &run.records,
        })?,
        Format::Csv => rows_to_csv(&run.rows())?,
        Format::Text => {
            let mut s = format!("{case}, K-types up to degree {}\n", a.max_degree);
            let _ = writeln!(s, "{:<18} {:>6} {:>10} {:>14} {:>9}  identity", "label", "degree", "deltab", "C*l-k", "equality");
            for r in &run.records {
                let id = match (r.identity_holds, r.log_gamma_residual) {
                    (None, _) => "-".to_string(),
                    (Some(h), None) => if h { "exact" } else { "FAILED" }.to_string(),
                    (Some(h), Some(res)) => format!("{} (log-gamma {res:.1e})", if h { "exact" } else { "FAILED" }),
                };
                let _ = writeln!(
                    s,
                    "{:<18} {:>6} {:>10} {:>14} {:>9}  {id}",
                    r.label.to_string(),
                    r.degree,
                    r.deltab,
                    r.margin,
                    if r.in_equality_set { "yes" } else { "no" }
                );
            }
            if let Some(d) = &run.degenerate {
                let _ = writeln!(s, "degenerate normalization: {d}");
            }
            let _ = writeln!(s, "{}", if pass { "all identities and margins hold" } else { "FAILED" });
            s
        }
    };
    Ok((text, verdict(pass)))
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    command: &'static str,
    config: &'a VerifyArgs,
    pass: bool,
    rows: &'a [CheckRow],
}

fn verify_rows(a: &VerifyArgs) -> Result<Vec<CheckRow>, Failure> {
    if !(a.tolerance > 0.0) {
        return Err(Failure::usage(format!("--tolerance must be positive, got {}", a.tolerance)));
    }
    let seed = match (a.seed, a.target.randomized()) {
        (Some(s), _) => s,
        (None, false) => 0,
        (None, true) => {
            return Err(Failure::usage(format!("{} needs --seed or {SEED_ENV}", a.target.name())));
        }
    };
    let stat = Tolerance::statistical(a.tolerance);
    let trials = |d: usize| a.trials.unwrap_or(d);
    let samples = |d: usize| a.samples.unwrap_or(d);
    let case = |d: CaseArg, n: u32| case_from(a.case.unwrap_or(d), a.n.unwrap_or(n));
    let rows = match a.target {
        Target::Theorem21 => {
            suite::theorem21_rows(&case(CaseArg::Complex, 1)?, trials(100), samples(200_000), seed, stat)?
        }
        Target::Beckner => suite::beckner_rows(&case(CaseArg::Complex, 1)?, trials(100), samples(200_000), seed, stat)?,
        Target::Dirichlet => {
            let c = case(CaseArg::Complex, 1)?;
            suite::dirichlet_rows(&c, trials(100), samples(20_000), seed, 3.0)?
        }
        Target::Gross => {
            let mut rows = suite::gross_rows(trials(100), seed, a.nodes.unwrap_or(30))?;
            for r in &mut rows {
                r.pass = Tolerance::exact(a.tolerance).accepts(r.margin, r.rhs, 0.0);
            }
            rows
        }
        Target::Heisenberg => {
            let n = a.n.unwrap_or(1);
            suite::heisenberg_rows(n, trials(10), samples(100_000), seed, stat)?
        }
        Target::Projected => match a.n {
            Some(n) => suite::projected_rows(&[n])?,
            None => suite::projected_rows(&[20, 100, 500])?,
        },
        Target::Semigroup => {
            let c = case(CaseArg::Real, 2)?;
            let constant = crate::exactpoly::rational_to_f64(&c.sharp_constant());
            let t = a.t.unwrap_or_else(|| crate::inequalities::hypercontractive_time(constant, 2.0, 4.0));
            suite::semigroup_rows(&c, 2.0, 4.0, t, trials(50), samples(100_000), seed, stat)?
        }
        Target::Hls => {
            let c = case(CaseArg::Real, 3)?;
            suite::hls_rows(&c, a.p.unwrap_or(1.5), trials(100), samples(50_000), seed, stat)?
        }
        Target::Rearrangement => {
            let len = a.length;
            if len == Some(0) {
                return Err(Failure::usage("--length must be at least 1"));
            }
            let mut rows = suite::rearrangement_rows(trials(10_000), len, seed)?;
            let exhaustive = len.unwrap_or(8).min(8);
            rows.extend(suite::rearrangement_exhaustive_rows(exhaustive, 3, seed)?);
            rows
        }
        Target::Lemma => suite::lemma_rows(match a.grid {
            GridArg::Small => LemmaGrid::Small,
            GridArg::Full => LemmaGrid::Full,
        })?,
        Target::Constants => suite::constants_rows(a.n.unwrap_or(8))?,
        Target::Asymptotics => {
            let ks: Vec<u32> = a.k.map(|k| vec![k]).unwrap_or_else(|| vec![1, 2, 3]);
            suite::asymptotics_rows(&ks, &suite::ASYMPTOTIC_NS)?
        }
    };
    Ok(rows)
}

fn cmd_verify(a: &VerifyArgs, format: Format) -> Output {
    let rows = verify_rows(a)?;
    let pass = rows.iter().all(|r| r.pass);
    let text = match format {
        Format::Json => json(&VerifyDoc {
            command: "verify",
            config: a,
            pass,
            rows: &rows,
        })?,
        Format::Csv => rows_to_csv(&rows)?,
        Format::Text => {
            let mut s = rows_text(&rows);
            let failed = rows.iter().filter(|r| !r.pass).count();
            let _ = writeln!(s, "{}: {} checks, {failed} failed", a.target.name(), rows.len());
            s
        }
    };
    Ok((text, verdict(pass)))
}

#[derive(Serialize)]
struct MarginSummary {
    min: Option<f64>,
    median: Option<f64>,
}

#[derive(Serialize)]
struct SuiteEntry<'a> {
    id: u8,
    name: &'a str,
    pass: bool,
    summary: &'a str,
    error: Option<&'a str>,
    checks: usize,
    failed: usize,
    margins: MarginSummary,
}

#[derive(Serialize)]
struct Timing {
    finished_unix_seconds: u64,
    total_seconds: f64,
    per_suite_seconds: BTreeMap<u8, f64>,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    version: &'static str,
    config: SuiteConfig,
    pass: bool,
    suites: Vec<SuiteEntry<'a>>,
    margins: MarginSummary,
    /// The only field that changes between identical runs.
    timing: Timing,
}

fn margin_summary(rows: impl Iterator<Item = f64>) -> MarginSummary {
    let mut m: Vec<f64> = rows.collect();
    m.sort_by(f64::total_cmp);
    let median = match m.len() {
        0 => None,
        l if l % 2 == 1 => Some(m[l / 2]),
        l => Some(0.5 * (m[l / 2 - 1] + m[l / 2])),
    };
    MarginSummary {
        min: m.first().copied(),
        median,
    }
}

pub fn report_exit_code(outcomes: &[CriterionOutcome]) -> i32 {
    outcomes
        .iter()
        .map(|o| {
            if o.error.is_some() {
                EXIT_NUMERIC
            } else {
                verdict(o.pass)
            }
        })
        .max()
        .unwrap_or(EXIT_PASS)
}

fn cmd_report(a: &ReportArgs, format: Format) -> Output {
    let cfg = SuiteConfig {
        seed: a.seed.unwrap_or(suite::DEFAULT_SEED),
        trials: a.trials,
        samples: a.samples,
    };
    let known: Vec<u8> = suite::criterion_names().iter().map(|c| c.0).collect();
    if let Some(bad) = a.only.iter().find(|i| !known.contains(i)) {
        return Err(Failure::usage(format!("no criterion {bad}; ids are 1..=10")));
    }
    let start = Instant::now();
    let outcomes: Vec<CriterionOutcome> = known
        .iter()
        .filter(|id| a.only.is_empty() || a.only.contains(id))
        .filter_map(|id| suite::run_criterion(*id, &cfg))
        .collect();
    let total = start.elapsed().as_secs_f64();
    let code = report_exit_code(&outcomes);
    let text = match format {
        Format::Json => {
            let suites = outcomes
                .iter()
                .map(|o| SuiteEntry {
                    id: o.id,
                    name: o.name,
                    pass: o.pass,
                    summary: &o.summary,
                    error: o.error.as_deref(),
                    checks: o.rows.len(),
                    failed: o.rows.iter().filter(|r| !r.pass).count(),
                    margins: margin_summary(o.rows.iter().map(|r| r.margin)),
                })
                .collect();
            let finished = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            json(&ReportDoc {
                version: env!("CARGO_PKG_VERSION"),
                config: cfg,
                pass: code == EXIT_PASS,
                suites,
                margins: margin_summary(outcomes.iter().flat_map(|o| o.rows.iter().map(|r| r.margin))),
                timing: Timing {
                    finished_unix_seconds: finished,
                    total_seconds: total,
                    per_suite_seconds: outcomes.iter().map(|o| (o.id, o.seconds)).collect(),
                },
            })?
        }
        Format::Csv => {
            let rows: Vec<CheckRow> = outcomes.iter().flat_map(|o| o.rows.iter().cloned()).collect();
            rows_to_csv(&rows)?
        }
        Format::Text => {
            let mut s = String::new();
            for o in &outcomes {
                let _ = writeln!(s, "{}", outcome_line(o));
            }
            let _ = writeln!(s, "total {total:.1} s");
            s
        }
    };
    Ok((text, code))
}

/// `criterion  3 PASS  name: summary (12.3 s)`.
pub fn outcome_line(o: &CriterionOutcome) -> String {
    let status = if o.pass { "PASS" } else { "FAIL" };
    let mut s = format!("criterion {:>2} {status}  {}: {}", o.id, o.name, o.summary);
    if let Some(e) = &o.error {
        let _ = write!(s, " [{e}]");
    }
    let _ = write!(s, " ({:.1} s)", o.seconds);
    s
}
