//! `partcount` — exact k-colored and plane partition counts from the
//! command line, with cross-method verification, CSV tables, timing runs,
//! and an optional append-only result cache.
//!
//! Exit codes: 0 success; 1 mathematical, verification, or cache-corruption
//! failure; 2 usage error.

mod cache;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use partcount::counts::compute_count;
use partcount::verify::{run_sweep, SweepConfig};
use partcount::{Error, Family, Method};

use crate::cache::{Cache, CacheError};

#[derive(Parser)]
#[command(
    name = "partcount",
    version,
    about = "Exact colored and plane partition counting"
)]
struct Cli {
    /// Result cache file (line-delimited JSON). Falls back to the
    /// PARTCOUNT_CACHE environment variable; absent means caching is off.
    #[arg(long, global = true, env = "PARTCOUNT_CACHE", value_name = "PATH")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one exact count.
    Count {
        /// Which family to count: colored or plane.
        family: Family,
        /// Color count; required for the colored family.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        n: u64,
        /// Counting route: recurrence, partial-bell, complete-bell,
        /// determinant, oracle-series, or oracle-enumeration.
        #[arg(long, default_value = "recurrence")]
        method: Method,
        /// Emit a single JSON object instead of the bare value.
        #[arg(long)]
        json: bool,
    },
    /// Write counts for n = 0..=max_n as CSV (recurrence method, one pass).
    Table {
        family: Family,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        max_n: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the cross-method and oracle agreement sweep.
    Verify {
        #[arg(long, default_value_t = 30)]
        max_n: u64,
        #[arg(long, default_value_t = 3)]
        max_k: u64,
    },
    /// Time each method over a geometric ladder of n and write CSV rows.
    Bench {
        #[arg(long)]
        max_n: u64,
        /// Comma-separated methods to time.
        #[arg(long, default_value = "recurrence,complete-bell,determinant")]
        methods: String,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Color count for the colored family's rows.
        #[arg(long, default_value_t = 30)]
        k: u64,
    },
}

#[derive(Debug)]
enum CliError {
    /// Wrong invocation: exit 2.
    Usage(String),
    /// Wrong answer, failed verification, or corrupt cache: exit 1.
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::UnsupportedSize(_) => CliError::Usage(e.to_string()),
            Error::InternalInconsistency(_) => CliError::Failure(e.to_string()),
        }
    }
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Count {
            family,
            k,
            n,
            method,
            json,
        } => cmd_count(cli.cache.as_deref(), family, k, n, method, json),
        Command::Table {
            family,
            k,
            max_n,
            out,
        } => cmd_table(family, k, max_n, &out),
        Command::Verify { max_n, max_k } => cmd_verify(max_n, max_k),
        Command::Bench {
            max_n,
            methods,
            out,
            k,
        } => cmd_bench(max_n, &methods, &out, k),
    }
}

/// Reject the (family, k) combinations the math does not define.
fn validate_family_k(family: Family, k: Option<u64>) -> Result<(), CliError> {
    match (family, k) {
        (Family::Colored, None) => Err(CliError::Usage("the colored family requires --k".into())),
        (Family::Plane, Some(_)) => {
            Err(CliError::Usage("the plane family does not take --k".into()))
        }
        _ => Ok(()),
    }
}

/// Cache key sentinel: plane rows are stored under k = 0.
fn cache_k(family: Family, k: Option<u64>) -> u64 {
    match family {
        Family::Colored => k.expect("validated"),
        Family::Plane => 0,
    }
}

#[derive(Serialize)]
struct CountOutput<'a> {
    family: String,
    k: Option<u64>,
    n: u64,
    method: String,
    value: &'a str,
}

fn cmd_count(
    cache_path: Option<&std::path::Path>,
    family: Family,
    k: Option<u64>,
    n: u64,
    method: Method,
    json: bool,
) -> Result<(), CliError> {
    validate_family_k(family, k)?;
    if !method.supports(family) {
        return Err(CliError::Usage(format!(
            "method {method} is not defined for the {family} family"
        )));
    }

    let mut cache = match cache_path {
        Some(path) => Some(Cache::load(path)?),
        None => None,
    };

    let family_name = family.to_string();
    let key_k = cache_k(family, k);
    let value = match cache
        .as_ref()
        .and_then(|c| c.get(&family_name, key_k, n))
        .map(str::to_string)
    {
        Some(hit) => hit,
        None => {
            let result = compute_count(family, k, n, method)?;
            let value = result.value.to_string();
            if let Some(cache) = cache.as_mut() {
                cache.store(&family_name, key_k, n, &value)?;
            }
            value
        }
    };

    if json {
        let output = CountOutput {
            family: family_name,
            k,
            n,
            method: method.to_string(),
            value: &value,
        };
        println!("{}", serde_json::to_string(&output).expect("serializable"));
    } else {
        println!("{value}");
    }
    Ok(())
}

fn cmd_table(
    family: Family,
    k: Option<u64>,
    max_n: u64,
    out: &std::path::Path,
) -> Result<(), CliError> {
    validate_family_k(family, k)?;
    let prefix = match family {
        Family::Colored => partcount::counts::pk_recurrence_prefix(k.expect("validated"), max_n)?,
        Family::Plane => partcount::counts::pp_recurrence_prefix(max_n)?,
    };
    let key_k = cache_k(family, k);
    let mut body = String::from("family,k,n,value\n");
    for (n, value) in prefix.iter().enumerate() {
        body.push_str(&format!("{family},{key_k},{n},{value}\n"));
    }
    std::fs::write(out, body)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}

fn cmd_verify(max_n: u64, max_k: u64) -> Result<(), CliError> {
    if max_n < 1 || max_k < 1 {
        return Err(CliError::Usage(
            "verify needs max-n >= 1 and max-k >= 1".into(),
        ));
    }
    let report = run_sweep(SweepConfig { max_n, max_k })?;
    for check in &report.reports {
        println!("{check}");
    }
    if report.passed() {
        println!(
            "verified: {} checks across {} check families",
            report.total_checks(),
            report.reports.len()
        );
        Ok(())
    } else {
        let first = report.first_mismatch().expect("failed report has one");
        Err(CliError::Failure(format!("verification mismatch: {first}")))
    }
}

/// Methods the timing command accepts; enumeration is window-capped and
/// meaningless over a ladder.
const BENCHABLE: [Method; 5] = [
    Method::Recurrence,
    Method::CompleteBell,
    Method::Determinant,
    Method::PartialBell,
    Method::OracleSeries,
];

fn parse_bench_methods(spec: &str) -> Result<Vec<Method>, CliError> {
    let mut methods = Vec::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let method: Method = name.parse().map_err(|e: String| CliError::Usage(e))?;
        if !BENCHABLE.contains(&method) {
            return Err(CliError::Usage(format!(
                "method {method} cannot be benchmarked over an n ladder"
            )));
        }
        if !methods.contains(&method) {
            methods.push(method);
        }
    }
    if methods.is_empty() {
        return Err(CliError::Usage("no methods to benchmark".into()));
    }
    Ok(methods)
}

/// 1, 2, 4, … doubling up to max_n, always ending at max_n itself.
fn geometric_ladder(max_n: u64) -> Vec<u64> {
    let mut ladder = Vec::new();
    let mut n = 1;
    while n < max_n {
        ladder.push(n);
        n *= 2;
    }
    if max_n >= 1 {
        ladder.push(max_n);
    }
    ladder
}

fn cmd_bench(max_n: u64, methods: &str, out: &std::path::Path, k: u64) -> Result<(), CliError> {
    let methods = parse_bench_methods(methods)?;
    let ladder = geometric_ladder(max_n);
    let mut body = String::from("family,k,n,method,wall_time_us,value_digits\n");

    for family in [Family::Colored, Family::Plane] {
        let (k_arg, key_k) = match family {
            Family::Colored => (Some(k), k),
            Family::Plane => (None, 0),
        };
        for &n in &ladder {
            // compute every applicable method first, cross-check, then emit
            let mut rows = Vec::new();
            for &method in &methods {
                if !method.supports(family) {
                    continue;
                }
                let start = Instant::now();
                let result = compute_count(family, k_arg, n, method)?;
                let elapsed_us = start.elapsed().as_micros();
                rows.push((method, elapsed_us, result.value));
            }
            if let Some((first_method, _, first_value)) = rows.first() {
                for (method, _, value) in &rows[1..] {
                    if value != first_value {
                        return Err(CliError::Failure(format!(
                            "bench value mismatch at family={family} n={n}: \
                             {first_method} gives {first_value}, {method} gives {value}"
                        )));
                    }
                }
            }
            for (method, elapsed_us, value) in &rows {
                let digits = value.to_string().len();
                body.push_str(&format!(
                    "{family},{key_k},{n},{method},{elapsed_us},{digits}\n"
                ));
            }
        }
    }

    std::fs::write(out, body)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}
