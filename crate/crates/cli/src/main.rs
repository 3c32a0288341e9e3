use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use turan_cert::partitions::{pk_table, q_table, PartitionTable, TableCache, TableKind};
use turan_cert::report::{overall, report_schema, Status, VerificationReport};
use turan_cert::suites::{Runner, Suite, SuiteOptions};
use turan_cert::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INDETERMINATE: u8 = 3;

#[derive(Parser)]
#[command(name = "turan-cert", version, about = "Certified Turán-type inequality checks for partition functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact values `n value`, one per line.
    Compute {
        kind: Kind,
        /// Index `N`, or a range `A..B` (half-open) / `A..=B`.
        range: String,
        /// Forbidden part divisor for `pk`.
        #[arg(long, env = "TURAN_CERT_K")]
        k: Option<u32>,
        #[arg(long, env = "TURAN_CERT_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Run a verification suite and emit its reports.
    Verify {
        suite: Suite,
        #[arg(long, env = "TURAN_CERT_BOUND", default_value_t = 5000)]
        bound: usize,
        /// Starting precision in bits.
        #[arg(long, env = "TURAN_CERT_PRECISION", default_value_t = 192)]
        precision: u32,
        #[arg(long, env = "TURAN_CERT_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
        #[arg(long, env = "TURAN_CERT_OUT")]
        out: Option<PathBuf>,
        #[arg(long, env = "TURAN_CERT_FORMAT", value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Worker threads for scans (default: all cores).
        #[arg(long, env = "TURAN_CERT_JOBS")]
        jobs: Option<usize>,
        /// Restrict the pk suite to one k.
        #[arg(long, env = "TURAN_CERT_K")]
        k: Option<u32>,
    },
    /// Print the JSON schema of the report format.
    ReportSchema,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Q,
    Pk,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad index `{t}`"));
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        let b = num(b)?;
        if b == 0 {
            return Err(format!("empty range `{s}`"));
        }
        (num(a)?, b - 1)
    } else {
        let n = num(s)?;
        (n, n)
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

fn compute(kind: Kind, range: &str, k: Option<u32>, cache_dir: Option<PathBuf>) -> Result<(), (u8, String)> {
    let usage = |m: String| (EXIT_USAGE, m);
    let (lo, hi) = parse_range(range).map_err(usage)?;
    let table_kind = match (kind, k) {
        (Kind::Q, None) => TableKind::Distinct,
        (Kind::Q, Some(_)) => return Err(usage("--k only applies to pk".into())),
        (Kind::Pk, Some(k)) => TableKind::NoMultiplesOf(k),
        (Kind::Pk, None) => return Err(usage("pk needs --k".into())),
    };
    let table: Result<PartitionTable, Error> = match (&cache_dir, table_kind) {
        (Some(dir), kind) => TableCache::new(dir).get(kind, hi),
        (None, TableKind::NoMultiplesOf(k)) => pk_table(k, hi),
        (None, _) => Ok(q_table(hi)),
    };
    let table = table.map_err(exit_for)?;
    let mut out = io::stdout().lock();
    for (n, v) in table.values().iter().enumerate().skip(lo) {
        writeln!(out, "{n} {v}").map_err(|e| (EXIT_FAIL, e.to_string()))?;
    }
    Ok(())
}

fn exit_for(e: Error) -> (u8, String) {
    let code = match e {
        Error::Argument(_) | Error::Index { .. } => EXIT_USAGE,
        Error::PrecisionExhausted { .. } => EXIT_INDETERMINATE,
        _ => EXIT_FAIL,
    };
    (code, e.to_string())
}

fn render(reports: &[VerificationReport], format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).map(|s| s + "\n").map_err(|e| e.to_string()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let fail = |e: csv::Error| e.to_string();
            w.write_record(["check", "params", "status", "witness"]).map_err(fail)?;
            for r in reports {
                let params = serde_json::to_string(&r.params).map_err(|e| e.to_string())?;
                let status = serde_json::to_value(r.status).map_err(|e| e.to_string())?;
                let witness = r.witness.map(|w| w.to_string()).unwrap_or_default();
                w.write_record([r.check.as_str(), &params, status.as_str().unwrap_or_default(), &witness])
                    .map_err(fail)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
    }
}

fn verify(suite: Suite, opts: SuiteOptions, out: Option<PathBuf>, format: Format, jobs: Option<usize>) -> Result<Status, (u8, String)> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err((EXIT_USAGE, "--jobs must be positive".into()));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| (EXIT_FAIL, e.to_string()))?;
    let runner = Runner::new(opts).map_err(exit_for)?;
    let reports = pool.install(|| runner.run(suite)).map_err(exit_for)?;
    let text = render(&reports, format).map_err(|e| (EXIT_FAIL, e))?;
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| (EXIT_FAIL, format!("{}: {e}", path.display())))?,
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| (EXIT_FAIL, e.to_string()))?,
    }
    Ok(overall(&reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { kind, range, k, cache_dir } => compute(kind, &range, k, cache_dir).map(|_| Status::Pass),
        Command::Verify { suite, bound, precision, cache_dir, out, format, jobs, k } => {
            verify(suite, SuiteOptions { bound, precision, cache_dir, k }, out, format, jobs)
        }
        Command::ReportSchema => {
            println!("{}", serde_json::to_string_pretty(&report_schema()).expect("schema serializes"));
            Ok(Status::Pass)
        }
    };
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(EXIT_FAIL),
        Ok(Status::Indeterminate) => ExitCode::from(EXIT_INDETERMINATE),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
