//! Command-line surface: `formulas`, `census`, `verify` and `sweep`.
//!
//! Exit codes: 0 when everything passes, 1 on a failed inequality or a
//! disagreement between census methods, 2 on usage errors, 3 when a census
//! exceeds its budget. Counts are printed exactly; `--approx` adds a
//! floating-point `log_q` column for reading.

mod row;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::census::{
    census_bruteforce, census_enumeration, census_recursion, verify, CensusConfig, CensusError, CensusReport,
    DEFAULT_BUDGET,
};
use crate::formulas::{FormulaError, Params};

pub use row::{formula_record, sweep_row, SweepRow, CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "polydecomp", version, about = "Counting decomposable multivariate polynomials over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions, alpha, beta and the brackets for one (n, d, q).
    Formulas(Single),
    /// Exact counts by enumeration, bruteforce or recursion.
    Census(CensusArgs),
    /// Census plus every applicable inequality; exits 1 on a failure.
    Verify(Single),
    /// One row per (n, d, q) over ranges.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Enum,
    Brute,
    Rec,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Formulas,
    Dimension,
    Census,
    Verify,
}

#[derive(Args, Debug)]
struct Common {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Largest number of elements a census may touch.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add a floating-point log_q column.
    #[arg(long)]
    approx: bool,
}

impl Common {
    fn config(&self) -> CensusConfig {
        let cfg = CensusConfig::default().with_budget(self.budget);
        match self.workers {
            Some(w) => cfg.with_workers(w),
            None => cfg,
        }
    }
}

#[derive(Args, Debug)]
struct Single {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    q: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Enum)]
    method: MethodArg,
    /// Only the superlinear maps, `e < d` (enumeration).
    #[arg(long)]
    superlinear: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// `A` or `A..B`, inclusive.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<u32>,
    #[arg(long, value_parser = parse_range)]
    d: RangeInclusive<u32>,
    /// Comma-separated prime powers.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    q: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Mode::Verify)]
    mode: Mode,
    #[command(flatten)]
    common: Common,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b),
        None => (s, s),
    };
    let a: u32 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok(a..=b)
}

/// A sweep over `n`, `d` and `q` in that nesting order.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub n: RangeInclusive<u32>,
    pub d: RangeInclusive<u32>,
    pub q: Vec<u64>,
    pub mode: Mode,
    pub format: Format,
    pub config: CensusConfig,
    pub approx: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("empty range: {0}")]
    EmptyRange(&'static str),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.n.is_empty() || *self.n.start() < 1 {
            return Err(SweepError::EmptyRange("n"));
        }
        if self.d.is_empty() || *self.d.end() < 2 {
            return Err(SweepError::EmptyRange("d"));
        }
        if self.q.is_empty() {
            return Err(SweepError::EmptyRange("q"));
        }
        if let Some(&q) = self.q.iter().find(|&&q| crate::field::prime_power(q).is_none()) {
            return Err(SweepError::NotPrimePower(q));
        }
        Ok(())
    }

    /// Rows in deterministic order; `d < 2` is skipped.
    pub fn rows(&self) -> Result<Vec<SweepRow>, SweepError> {
        self.validate()?;
        let mut rows = Vec::new();
        for n in self.n.clone() {
            for d in self.d.clone().filter(|&d| d >= 2) {
                for &q in &self.q {
                    rows.push(sweep_row(n, d, q, self.mode, &self.config, self.approx));
                }
            }
        }
        Ok(rows)
    }
}

/// Parses `args` (program name first) and runs the command, writing to
/// stdout or `--out`. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let out = match &cli.command {
        Command::Formulas(s) | Command::Verify(s) => &s.common.out,
        Command::Census(c) => &c.common.out,
        Command::Sweep(s) => &s.common.out,
    };
    let mut sink: Box<dyn Write> = match out {
        Some(p) => match File::create(p) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: {}: {e}", p.display());
                return EXIT_USAGE;
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let code = match cli.command {
        Command::Formulas(s) => cmd_formulas(s.n, s.d, s.q, s.common.format, s.common.approx, &mut sink),
        Command::Census(c) => cmd_census(&c, &mut sink),
        Command::Verify(s) => cmd_verify(s.n, s.d, s.q, s.common.format, &s.common.config(), &mut sink),
        Command::Sweep(s) => {
            let spec = SweepSpec {
                n: s.n,
                d: s.d,
                q: s.q,
                mode: s.mode,
                format: s.common.format,
                config: s.common.config(),
                approx: s.common.approx,
            };
            cmd_sweep(&spec, &mut sink)
        }
    };
    match code.and_then(|c| sink.flush().map(|_| c)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn params(n: u32, d: u32, q: u64) -> Result<Params, FormulaError> {
    let p = Params::new(n, d, Some(q))?;
    if n < 2 {
        return Err(FormulaError::InvalidParams("requires n >= 2".into()));
    }
    Ok(p)
}

fn usage(e: impl std::fmt::Display) -> io::Result<i32> {
    eprintln!("error: {e}");
    Ok(EXIT_USAGE)
}

fn write_rows(rows: &[SweepRow], format: Format, approx: bool, w: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut header = CSV_HEADER.to_vec();
            if approx {
                header.push("log_q_alpha");
            }
            let mut out = csv::Writer::from_writer(w);
            out.write_record(&header)?;
            for r in rows {
                out.write_record(r.cells(approx))?;
            }
            out.flush()?;
        }
        Format::Json => {
            let v: Vec<Value> = rows.iter().map(|r| r.to_json(approx)).collect();
            writeln!(w, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Table => {
            let mut header: Vec<String> = CSV_HEADER.iter().map(|s| s.to_string()).collect();
            if approx {
                header.push("log_q_alpha".into());
            }
            let cells: Vec<Vec<String>> = rows.iter().map(|r| r.cells(approx)).collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap_or(0).min(40))
                .collect();
            let line = |c: &[String]| {
                c.iter().zip(&widths).map(|(s, &wd)| format!("{s:<wd$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
            };
            writeln!(w, "{}", line(&header))?;
            for c in &cells {
                writeln!(w, "{}", line(c))?;
            }
        }
    }
    Ok(())
}

/// Every formula quantity for one `(n, d, q)`.
pub fn cmd_formulas(n: u32, d: u32, q: u64, format: Format, approx: bool, w: &mut dyn Write) -> io::Result<i32> {
    let p = match params(n, d, q) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    match format {
        Format::Csv => write_rows(&[sweep_row(n, d, q, Mode::Formulas, &CensusConfig::default(), approx)], format, approx, w)?,
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&Value::Object(formula_record(&p)))?)?,
        Format::Table => {
            for (k, v) in formula_record(&p) {
                let v = match v {
                    Value::String(s) => s,
                    other => other.to_string(),
                };
                writeln!(w, "{k:<12} {v}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn report_line(r: &CensusReport) -> String {
    let s = |v: &Option<num_bigint::BigUint>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
    let mut line = format!(
        "{:<12} d_count={} d_sl_count={} i_count={} elapsed={:.3}s workers={}",
        r.method.to_string(),
        s(&r.d_count),
        s(&r.d_sl_count),
        s(&r.i_count),
        r.elapsed.as_secs_f64(),
        r.workers
    );
    for (e, c) in &r.per_divisor_image_sizes {
        line.push_str(&format!(" im[{e}]={c}"));
    }
    if let Some(v) = r.uniqueness_violations {
        line.push_str(&format!(" uniqueness_violations={v}"));
    }
    line
}

fn cmd_census(c: &CensusArgs, w: &mut dyn Write) -> io::Result<i32> {
    let p = match params(c.n, c.d, c.q) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let cfg = c.common.config();
    let methods: &[MethodArg] = match c.method {
        MethodArg::All => &[MethodArg::Enum, MethodArg::Brute, MethodArg::Rec],
        ref m => std::slice::from_ref(m),
    };
    let mut reports = Vec::new();
    let mut budget_hit = false;
    for m in methods {
        let r = match m {
            MethodArg::Enum => census_enumeration(&p, c.superlinear, &cfg),
            MethodArg::Brute => census_bruteforce(&p, &cfg),
            _ => census_recursion(&p),
        };
        match r {
            Ok(r) => reports.push(r),
            Err(e @ (CensusError::BudgetExceeded { .. } | CensusError::KeyTooWide { .. } | CensusError::ExponentTooLarge)) => {
                eprintln!("{}: {e}", format!("{m:?}").to_lowercase());
                budget_hit = true;
            }
            Err(e) => return usage(e),
        }
    }
    let agree = reports.windows(2).all(|x| x[0].counts_agree(&x[1]));
    let violations = reports.iter().any(|r| r.uniqueness_violations.unwrap_or(0) > 0);
    match c.common.format {
        Format::Json => {
            let v: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
            writeln!(w, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["method", "d_count", "d_sl_count", "i_count", "elapsed_secs", "workers"])?;
            let s = |v: &Option<num_bigint::BigUint>| v.as_ref().map_or(String::new(), |x| x.to_string());
            for r in &reports {
                out.write_record([
                    r.method.to_string(),
                    s(&r.d_count),
                    s(&r.d_sl_count),
                    s(&r.i_count),
                    format!("{:.6}", r.elapsed.as_secs_f64()),
                    r.workers.to_string(),
                ])?;
            }
            out.flush()?;
        }
        Format::Table => {
            writeln!(w, "n={} d={} q={}", c.n, c.d, c.q)?;
            for r in &reports {
                writeln!(w, "{}", report_line(r))?;
            }
            if reports.len() > 1 {
                writeln!(w, "methods agree: {agree}")?;
            }
        }
    }
    Ok(if !agree || violations {
        EXIT_FAIL
    } else if reports.is_empty() || (budget_hit && c.method != MethodArg::All) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

/// Census plus every applicable inequality.
pub fn cmd_verify(n: u32, d: u32, q: u64, format: Format, cfg: &CensusConfig, w: &mut dyn Write) -> io::Result<i32> {
    let p = match params(n, d, q) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let v = match verify(&p, cfg) {
        Ok(v) => v,
        Err(e @ (CensusError::BudgetExceeded { .. } | CensusError::ExponentTooLarge)) => {
            eprintln!("error: {e}");
            return Ok(EXIT_BUDGET);
        }
        Err(e) => return usage(e),
    };
    match format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&v.to_json())?)?,
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["name", "lhs", "relation", "rhs", "pass"])?;
            for c in &v.checks {
                out.write_record([c.name.to_string(), c.lhs.clone(), c.relation.to_string(), c.rhs.clone(), c.pass.to_string()])?;
            }
            out.flush()?;
        }
        Format::Table => {
            writeln!(w, "n={n} d={d} q={q} method={} d_count={}", v.method, v.d_count)?;
            for c in &v.checks {
                writeln!(w, "{c}")?;
            }
        }
    }
    Ok(if v.all_pass() { EXIT_OK } else { EXIT_FAIL })
}

/// One row per `(n, d, q)`; row errors land in the verdict column.
pub fn cmd_sweep(spec: &SweepSpec, w: &mut dyn Write) -> io::Result<i32> {
    let rows = match spec.rows() {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    write_rows(&rows, spec.format, spec.approx, w)?;
    Ok(if rows.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_FAIL })
}
