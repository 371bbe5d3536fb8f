//! `icis-cli`: invariants, bound tables, verdicts and counterexample searches
//! for cones over complete intersections.
//!
//! Exit codes: 0 success, 2 invalid input, 3 internal cross-check failure.

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use icis::conjecture::{SearchMode, SearchParams};
use icis::selftest::DEFAULT_DOMINANCE_ORDER;

use report::Format;

/// Overrides the series truncation order used by `selftest` dominance checks.
const ORDER_ENV: &str = "ICIS_SERIES_ORDER";

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "icis-cli",
    version,
    about = "Exact Milnor number / geometric genus bounds"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Print elapsed wall time to stderr.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Milnor number, geometric genus and Euler characteristic of one cone.
    Invariants {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
    },
    /// Table of the coefficients C_{n,r}.
    Bounds {
        #[arg(long = "n-max")]
        n_max: u32,
        #[arg(long = "r-max")]
        r_max: u32,
        /// Add a rounded decimal column.
        #[arg(long)]
        decimal: bool,
    },
    /// Every bound and identity for one cone.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
    },
    /// Scan a degree grid for strong Durfee violations.
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// Inclusive degree range, e.g. `2..10`.
        #[arg(long = "p")]
        p: DegreeRange,
        /// Equal degrees p_1 = ... = p_r (default).
        #[arg(long, conflicts_with = "full")]
        equal: bool,
        /// All non-decreasing degree vectors in range.
        #[arg(long)]
        full: bool,
        /// Worker threads (0 = all cores). Output does not depend on it.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Exact mu/p_g along equal degrees and its distance to C_{n,r}.
    Trace {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long = "p", value_delimiter = ',', required = true)]
        p: Vec<u32>,
        #[arg(long)]
        decimal: bool,
    },
    /// Run every identity and inequality suite.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DegreeRange {
    lo: u32,
    hi: u32,
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad degree `{t}`: {e}"))
        };
        match s.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                Ok(DegreeRange {
                    lo: parse(lo)?,
                    hi: parse(hi)?,
                })
            }
            None => {
                let v = parse(s)?;
                Ok(DegreeRange { lo: v, hi: v })
            }
        }
    }
}

fn dominance_order() -> Result<usize, String> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(order) if order >= 1 => Ok(order),
            _ => Err(format!("{ORDER_ENV} must be a positive integer, got `{v}`")),
        },
        Err(_) => Ok(DEFAULT_DOMINANCE_ORDER),
    }
}

fn fail(err: &mut dyn Write, e: &icis::Error) -> u8 {
    let _ = writeln!(err, "error: {e}");
    if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_INVALID
    }
}

/// Parses `args` (program name first), writes the report to `out` and
/// diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INVALID
                }
            };
        }
    };
    let started = Instant::now();

    let outcome = match cli.command {
        Command::Invariants { n, degrees } => commands::invariants(n, &degrees).map(|d| (d, true)),
        Command::Bounds {
            n_max,
            r_max,
            decimal,
        } => commands::bounds(n_max, r_max, decimal).map(|d| (d, true)),
        Command::Verify { n, degrees } => commands::verify_cmd(n, &degrees).map(|d| (d, true)),
        Command::Search {
            n,
            r,
            p,
            equal: _,
            full,
            jobs,
        } => {
            let params = SearchParams {
                n,
                r,
                p_min: p.lo,
                p_max: p.hi,
                mode: if full {
                    SearchMode::FullGrid
                } else {
                    SearchMode::EqualDegrees
                },
                jobs,
            };
            commands::search_cmd(&params).map(|d| (d, true))
        }
        Command::Trace { n, r, p, decimal } => {
            commands::trace_cmd(n, r, &p, decimal).map(|d| (d, true))
        }
        Command::Selftest => match dominance_order() {
            Ok(order) => Ok(commands::selftest_cmd(order)),
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                return EXIT_INVALID;
            }
        },
    };

    let (doc, ok) = match outcome {
        Ok(v) => v,
        Err(e) => return fail(err, &e),
    };
    if let Err(e) = doc.render(cli.format, out).and_then(|_| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            let _ = writeln!(err, "error: writing report: {e}");
            return 1;
        }
    }
    if cli.timing {
        let _ = writeln!(err, "elapsed: {:.3}s", started.elapsed().as_secs_f64());
    }
    if ok {
        0
    } else {
        let _ = writeln!(err, "error: at least one self-test suite failed");
        EXIT_INTERNAL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_range_parsing() {
        assert_eq!("2..10".parse(), Ok(DegreeRange { lo: 2, hi: 10 }));
        assert_eq!("2..=10".parse(), Ok(DegreeRange { lo: 2, hi: 10 }));
        assert_eq!("5".parse(), Ok(DegreeRange { lo: 5, hi: 5 }));
        assert!("a..3".parse::<DegreeRange>().is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
