//! `pdigits`: leading digits of partition and plane-partition numbers.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdigits::engines::DEFAULT_MEMORY_BUDGET;
use pdigits::framework::{bound_report, theorem_bound, BoundReport};
use pdigits::search::{write_census_csv, write_results_csv, Census};
use pdigits::selftest::{self, SelfTestReport};
use pdigits::{
    DigitString, Error, Kind, SearchResult, Searcher, SequenceTable, VerificationReport,
};

#[derive(Parser, Debug)]
#[command(name = "pdigits", version, about = "Leading digits of p(n) and PL(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smallest n whose value starts with the given digits
    Search {
        #[command(flatten)]
        target: Target,
        /// Digit string in the given base
        #[arg(long)]
        digits: String,
        /// Largest n to scan (default: the closed-form bound)
        #[arg(long)]
        limit: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form bound and framework breakdown
    Bound {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        t: u32,
        /// Digit string whose own window width to use (default: b^t - 1)
        #[arg(long)]
        digits: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Smallest n for every digit string of length t, checked against the bound
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Leading-digit counts over n = 1..=limit
    Census {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Reduced-scale consistency checks
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long, value_enum, default_value_t = KindArg::P)]
    kind: KindArg,
    #[arg(long, default_value_t = 10)]
    base: u32,
}

#[derive(Args, Debug)]
struct Common {
    /// Working precision in bits
    #[arg(long, default_value_t = 192, value_parser = clap::value_parser!(u32).range(64..=4096))]
    precision: u32,
    /// Directory for cached tables
    #[arg(long, env = "PDIGITS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Table memory budget in bytes (suffixes K, M, G accepted)
    #[arg(long, value_parser = parse_bytes, default_value_t = DEFAULT_MEMORY_BUDGET)]
    memory_budget: u64,
    /// Report wall-clock time
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    P,
    Pl,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::P => Kind::Partition,
            KindArg::Pl => Kind::PlanePartition,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (num, shift) = match s.char_indices().last() {
        Some((i, 'K' | 'k')) => (&s[..i], 10),
        Some((i, 'M' | 'm')) => (&s[..i], 20),
        Some((i, 'G' | 'g')) => (&s[..i], 30),
        _ => (s, 0),
    };
    let v: u64 = num.parse().map_err(|e| format!("{s}: {e}"))?;
    v.checked_mul(1 << shift)
        .ok_or_else(|| format!("{s}: too large"))
}

enum Failure {
    Findings,
    Usage(String),
    Resource(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Precondition(_) | Error::InvalidDigits { .. } => Failure::Usage(e.to_string()),
            Error::ResourceLimit { .. } | Error::Io(_) => Failure::Resource(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Resource(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Other(e.to_string())
    }
}

fn cache_path(dir: &Path, kind: Kind) -> PathBuf {
    dir.join(format!("{}.pdt", kind.short_name()))
}

/// Loads the cached table for `kind` if there is a usable one.
fn open_table(kind: Kind, common: &Common) -> SequenceTable {
    let fresh = || SequenceTable::with_memory_budget(kind, common.memory_budget);
    let Some(dir) = &common.cache_dir else {
        return fresh();
    };
    let path = cache_path(dir, kind);
    if !path.exists() {
        return fresh();
    }
    match SequenceTable::load(&path, kind, common.memory_budget) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("pdigits: ignoring cache: {e}");
            fresh()
        }
    }
}

fn store_table(table: &SequenceTable, loaded: u64, common: &Common) -> Result<(), Failure> {
    let Some(dir) = &common.cache_dir else {
        return Ok(());
    };
    if table.max_index() <= loaded && cache_path(dir, table.kind()).exists() {
        return Ok(());
    }
    std::fs::create_dir_all(dir)?;
    table.save(&cache_path(dir, table.kind()))?;
    Ok(())
}

/// Runs `f` on a searcher backed by the (possibly cached) table.
fn with_searcher<T>(
    kind: Kind,
    common: &Common,
    f: impl FnOnce(&mut Searcher) -> Result<T, Error>,
) -> Result<T, Failure> {
    let table = open_table(kind, common);
    let loaded = table.max_index();
    let mut searcher = Searcher::from_table(table).with_precision(common.precision);
    let out = f(&mut searcher);
    store_table(searcher.table(), loaded, common)?;
    Ok(out?)
}

fn emit_json(out: &mut impl Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn text_result(out: &mut impl Write, r: &SearchResult) -> io::Result<()> {
    match r.n_min {
        Some(n) => writeln!(
            out,
            "{} {:>8}  n_min {:>8}  digits {:>8}  bound {}  {}  {}",
            r.kind,
            r.f,
            n,
            r.value_digit_count.unwrap_or(0),
            r.bound,
            if r.within_bound { "ok" } else { "OVER" },
            r.method.map_or("", |m| m.as_str()),
        ),
        None => writeln!(
            out,
            "{} {:>8}  not found up to bound {}",
            r.kind, r.f, r.bound
        ),
    }
}

fn output_search(out: &mut impl Write, r: &SearchResult, fmt: Output) -> Result<(), Failure> {
    match fmt {
        Output::Json => emit_json(out, r)?,
        Output::Csv => write_results_csv(&mut *out, [r])?,
        Output::Text => text_result(out, r)?,
    }
    Ok(())
}

fn output_verify(out: &mut impl Write, r: &VerificationReport, fmt: Output) -> Result<(), Failure> {
    match fmt {
        Output::Json => emit_json(out, r)?,
        Output::Csv => write_results_csv(&mut *out, &r.results)?,
        Output::Text => {
            for res in &r.results {
                text_result(out, res)?;
            }
            writeln!(
                out,
                "base {} length {}: max n_min {}, all within bound: {}",
                r.b,
                r.t,
                r.max_n_min.map_or("-".to_string(), |n| n.to_string()),
                r.all_within_bound
            )?;
        }
    }
    Ok(())
}

fn output_bound(out: &mut impl Write, r: &BoundReport, fmt: Output) -> Result<(), Failure> {
    let rows = [("uniform", &r.uniform), ("actual", &r.actual)];
    match fmt {
        Output::Json => emit_json(out, r)?,
        Output::Csv => {
            writeln!(out, "convention,f,delta,L1,L2,L3,L4,D,bound,theorem_bound")?;
            for (name, s) in rows {
                let f = if name == "actual" {
                    r.f.to_string()
                } else {
                    String::new()
                };
                writeln!(
                    out,
                    "{name},{f},{},{},{},{},{},{},{},{}",
                    s.delta, s.l1, s.l2, s.l3, s.l4, s.d, s.bound, r.theorem_bound
                )?;
            }
        }
        Output::Text => {
            writeln!(
                out,
                "{} base {} length {}: bound {}",
                r.kind, r.b, r.t, r.theorem_bound
            )?;
            for (name, s) in rows {
                let label = if name == "actual" {
                    format!("delta of f = {}", r.f)
                } else {
                    "delta = b^-t".to_string()
                };
                writeln!(
                    out,
                    "  {label}: delta {:.6e}  L1 {:.6}  L2 {:.6}  L3 {:.6}  L4 {:.6}  D {:.6}  framework bound {}",
                    s.delta, s.l1, s.l2, s.l3, s.l4, s.d, s.bound
                )?;
            }
        }
    }
    Ok(())
}

fn output_census(out: &mut impl Write, c: &Census, fmt: Output) -> Result<(), Failure> {
    match fmt {
        Output::Json => emit_json(out, c)?,
        Output::Csv => write_census_csv(&mut *out, c)?,
        Output::Text => {
            for row in &c.rows {
                writeln!(out, "{:>8} {}", row.f, row.count)?;
            }
            writeln!(
                out,
                "{} values with fewer than {} digits",
                c.short_values, c.t
            )?;
        }
    }
    Ok(())
}

fn output_selftest(out: &mut impl Write, r: &SelfTestReport, fmt: Output) -> Result<(), Failure> {
    match fmt {
        Output::Json => emit_json(out, r)?,
        Output::Csv => selftest::write_csv(&mut *out, r)?,
        Output::Text => {
            for c in &r.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{mark} {}  ({})", c.name, c.detail)?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let start = Instant::now();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let (findings, timing) = match cli.command {
        Command::Search {
            target,
            digits,
            limit,
            common,
        } => {
            let kind = Kind::from(target.kind);
            let f = DigitString::parse(&digits, target.base)?;
            let limit = match limit {
                Some(l) => l,
                None => {
                    let b = theorem_bound(kind, target.base, f.len() as u32)?;
                    u64::try_from(b)
                        .map_err(|_| Failure::Usage("bound exceeds 64 bits; pass --limit".into()))?
                }
            };
            let r = with_searcher(kind, &common, |s| s.find_min_n(&f, limit))?;
            output_search(&mut out, &r, common.output)?;
            (false, common.timing)
        }
        Command::Bound {
            target,
            t,
            digits,
            common,
        } => {
            let f = digits
                .map(|d| DigitString::parse(&d, target.base))
                .transpose()?;
            let r = bound_report(
                target.kind.into(),
                target.base,
                t,
                f.as_ref(),
                common.precision,
            )?;
            output_bound(&mut out, &r, common.output)?;
            (false, common.timing)
        }
        Command::Verify { target, t, common } => {
            let mut r = with_searcher(target.kind.into(), &common, |s| {
                s.verify_theorem(target.base, t)
            })?;
            if common.timing {
                r.runtime_seconds = Some(start.elapsed().as_secs_f64());
            }
            output_verify(&mut out, &r, common.output)?;
            (!r.all_within_bound, common.timing)
        }
        Command::Census {
            target,
            t,
            limit,
            common,
        } => {
            let c = with_searcher(target.kind.into(), &common, |s| {
                s.digit_census(target.base, t, limit)
            })?;
            output_census(&mut out, &c, common.output)?;
            (false, common.timing)
        }
        Command::Selftest { common } => {
            let r = selftest::run(common.precision)?;
            output_selftest(&mut out, &r, common.output)?;
            (!r.passed, common.timing)
        }
    };
    if timing {
        eprintln!("pdigits: {:.3} s", start.elapsed().as_secs_f64());
    }
    if findings {
        return Err(Failure::Findings);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Findings) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("pdigits: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("pdigits: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("pdigits: {msg}");
            ExitCode::from(1)
        }
    }
}
