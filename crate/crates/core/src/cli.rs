//! Command-line front end. `run` takes the argument list and writers so the
//! binary stays a one-liner and tests can drive it in process.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bernoulli::bernoulli_mod_p;
use crate::error::Error;
use crate::gauss::{verify_pair, PrecisionPolicy};
use crate::scan::{cross_check, regularity_certificate, scan_range_jobs, ScanHit, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IRREGULAR: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

pub const JOBS_ENV: &str = "QSCAN_JOBS";
pub const PRECISION_CAP_ENV: &str = "QSCAN_PRECISION_CAP";

const SCAN_ABOUT: &str = "\
List the irregular pairs of every prime 5 <= p <= p-max as rows (p, v, a2).

v is the smallest primitive root mod p. A row is emitted for each odd k in
3..=p-2 with Q(v^k) = 0 mod p, and a2 = p - k = p - 1 - 2m where k = 2m + 1.
So a2 is the index of the Bernoulli number B_{a2} divisible by p.";

#[derive(Debug, Parser)]
#[command(name = "qscan", version, about = "Irregular primes via the Stickelberger quotient polynomial")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(about = "List irregular pairs (p, v, a2) up to --p-max", long_about = SCAN_ABOUT)]
    Scan {
        #[arg(long)]
        p_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, env = JOBS_ENV, default_value_t = 1)]
        jobs: usize,
    },
    /// Compare the scan with Bernoulli numbers mod p; exit 1 on any mismatch
    Crosscheck {
        #[arg(long)]
        p_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, env = JOBS_ENV, default_value_t = 1)]
        jobs: usize,
    },
    /// Build the Gauss sum for (p, q) and verify its structure exactly
    Gauss {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide regularity of p from the roots of the quotient polynomial
    Certify {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dump B_0 .. B_{p-3} mod p as CSV (n,value)
    Bernoulli {
        #[arg(long)]
        p: u64,
    },
}

/// One line of scan output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRow {
    pub p: u64,
    pub v: u64,
    pub a2: u64,
}

impl From<&ScanHit> for OutputRow {
    fn from(h: &ScanHit) -> Self {
        OutputRow { p: h.p, v: h.v, a2: h.a2 }
    }
}

impl fmt::Display for OutputRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} v={} a2={}", self.p, self.v, self.a2)
    }
}

impl OutputRow {
    pub fn csv(&self) -> String {
        format!("{},{},{}", self.p, self.v, self.a2)
    }
}

/// Rows in the requested format, newline terminated.
pub fn render_rows(rows: &[OutputRow], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            for r in rows {
                s.push_str(&format!("{r}\n"));
            }
        }
        Format::Csv => {
            s.push_str("p,v,a2\n");
            for r in rows {
                s.push_str(&r.csv());
                s.push('\n');
            }
        }
        Format::Json => {
            s.push_str(&serde_json::to_string_pretty(rows).expect("rows serialize"));
            s.push('\n');
        }
    }
    s
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotPrime(_) | Error::Domain(_) => EXIT_USAGE,
            Error::PrecisionExhausted { .. } => EXIT_INCONCLUSIVE,
            Error::InvariantViolation(_) => EXIT_DISCREPANCY,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_DISCREPANCY, message: format!("write failed: {e}") }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

/// Cap from `QSCAN_PRECISION_CAP`, if set.
fn precision_cap_from_env() -> Result<Option<u32>, Failure> {
    match std::env::var(PRECISION_CAP_ENV) {
        Ok(s) => match s.trim().parse::<u32>() {
            Ok(c) if c > 0 => Ok(Some(c)),
            _ => Err(usage(format!("{PRECISION_CAP_ENV} must be a positive integer, got {s:?}"))),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(usage(format!("{PRECISION_CAP_ENV}: {e}"))),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(value).expect("report serializes");
    writeln!(out, "{s}")?;
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Scan { p_max, format, jobs } => {
            let rows: Vec<OutputRow> = scan_range_jobs(p_max, jobs)?.iter().map(OutputRow::from).collect();
            out.write_all(render_rows(&rows, format).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Crosscheck { p_max, format, jobs } => {
            let report = cross_check(p_max, jobs)?;
            match format {
                Format::Json => write_json(out, &report)?,
                Format::Text | Format::Csv => {
                    writeln!(
                        out,
                        "primes={} pairs={} discrepancies={}",
                        report.primes_checked,
                        report.irregular_pairs,
                        report.discrepancies.len()
                    )?;
                    for d in &report.discrepancies {
                        writeln!(out, "p={} scan={:?} oracle={:?}", d.p, d.scan_a2, d.oracle_a2)?;
                    }
                }
            }
            Ok(if report.is_consistent() { EXIT_OK } else { EXIT_DISCREPANCY })
        }
        Command::Gauss { p, q, format } => {
            let policy = precision_cap_from_env()?.map(|cap| {
                let base = PrecisionPolicy::for_prime(p);
                PrecisionPolicy { start: base.start.min(cap), cap }
            });
            let report = verify_pair(p, q, policy)?;
            match format {
                Format::Json => write_json(out, &report)?,
                Format::Text | Format::Csv => write!(out, "{report}")?,
            }
            Ok(if report.all_hard_checks_pass() { EXIT_OK } else { EXIT_DISCREPANCY })
        }
        Command::Certify { p, format } => {
            let cert = regularity_certificate(p)?;
            let code = match cert.verdict {
                Verdict::RegularCertified => EXIT_OK,
                Verdict::Irregular(_) => EXIT_IRREGULAR,
                Verdict::Inconclusive(_) => EXIT_INCONCLUSIVE,
            };
            if format == Format::Json {
                write_json(out, &cert)?;
                return Ok(code);
            }
            let verdict = match &cert.verdict {
                Verdict::RegularCertified => "regular-certified".to_string(),
                Verdict::Irregular(hits) => {
                    let a2: Vec<String> = hits.iter().map(|h| h.a2.to_string()).collect();
                    format!("irregular a2={}", a2.join(","))
                }
                Verdict::Inconclusive(roots) => {
                    let xs: Vec<String> = roots.iter().map(|r| r.x.to_string()).collect();
                    format!("inconclusive roots={}", xs.join(","))
                }
            };
            writeln!(out, "p={} v={} {verdict}", cert.p, cert.v)?;
            writeln!(out, "even-power roots: {}", cert.even_power_roots.len())?;
            Ok(code)
        }
        Command::Bernoulli { p } => {
            let table = bernoulli_mod_p(p)?;
            writeln!(out, "n,value")?;
            for (n, b) in table.values().iter().enumerate() {
                writeln!(out, "{n},{b}")?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "qscan: {}", f.message);
            f.code
        }
    }
}
