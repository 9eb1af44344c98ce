//! Command-line front end: family scans, identity suites, Gamma evaluation,
//! and full reproduction of the published ranges.
//!
//! Exit codes: 0 all checks passed, 1 at least one verification failure,
//! 2 usage or I/O error.

mod report;
mod scan;

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};

use report::{
    render_congruences, render_identities, write_output, CongruenceRecord, IdentityRecord,
    OutputFormat,
};
use scan::{reproduce_congruences, scan_family};
use supercong_core::{
    gamma_p, run_identity_suite, s_p, Error, Family, IdentityName, PadicContext, Rational,
};

#[derive(Parser)]
#[command(
    name = "supercong",
    version,
    about = "Exact verification of truncated hypergeometric congruences in Z/p^k"
)]
struct Cli {
    /// Worker threads for scans (default: all available cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one congruence family over a prime range
    Scan {
        /// Family tag, e.g. a2-vh, h2-thm15 or step-cc8
        #[arg(long)]
        family: String,
        /// Smallest prime to consider
        #[arg(long)]
        pmin: u64,
        /// Largest prime to consider
        #[arg(long)]
        pmax: u64,
        /// Override the modulus exponent, checking mod p^power
        #[arg(long)]
        power: Option<u32>,
        /// Write records to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record encoding
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Check one exact identity for every qualifying order up to a bound
    Identity {
        /// Identity tag: cc1, cc5, dd1, dd2 or chu
        #[arg(long)]
        name: String,
        /// Largest order to check
        #[arg(long, default_value_t = 99)]
        n_max: u64,
        /// Write records to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record encoding
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Evaluate the p-adic Gamma function at one rational point
    Gamma {
        /// Odd prime
        #[arg(long)]
        p: u64,
        /// Precision exponent: the value lives in Z/p^k
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Argument, an integer or a fraction such as 1/4 or -3/4
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Re-run every congruence family and identity at the published ranges
    Reproduce {
        /// Cap every family's prime range at this bound
        #[arg(long)]
        pmax_override: Option<u64>,
        /// Write congruence records to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record encoding
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("supercong: cannot configure {threads} worker threads: {e}");
            std::process::exit(2);
        }
    }
    std::process::exit(run(cli.command));
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("supercong: {msg}");
    2
}

/// A dual-route disagreement is a verification failure; everything else a
/// checker can return points at the invocation.
fn core_error_code(e: &Error) -> i32 {
    match e {
        Error::PathMismatch { .. } => 1,
        _ => 2,
    }
}

fn known_families() -> String {
    Family::ALL
        .iter()
        .map(|f| f.tag())
        .collect::<Vec<_>>()
        .join(", ")
}

fn known_identities() -> String {
    IdentityName::ALL
        .iter()
        .map(|n| n.tag())
        .collect::<Vec<_>>()
        .join(", ")
}

fn run(command: Command) -> i32 {
    match command {
        Command::Scan {
            family,
            pmin,
            pmax,
            power,
            out,
            format,
        } => {
            let Some(family) = Family::parse(&family) else {
                return usage_error(&format!(
                    "unknown family '{family}' (known: {})",
                    known_families()
                ));
            };
            if pmin > pmax {
                return usage_error("pmin must not exceed pmax");
            }
            if power == Some(0) {
                return usage_error("power must be at least 1");
            }
            let outcome = match scan_family(family, pmin, pmax, power) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("supercong: {e}");
                    return core_error_code(&e);
                }
            };
            let records: Vec<CongruenceRecord> = outcome
                .verdicts
                .iter()
                .map(CongruenceRecord::from)
                .collect();
            if let Err(e) = write_output(&render_congruences(&records, format), out.as_deref()) {
                return usage_error(&format!("cannot write records: {e}"));
            }
            eprintln!(
                "{family}: {} primes in [{pmin}, {pmax}], {} pass, {} fail ({:.2} s)",
                outcome.verdicts.len(),
                outcome.passed(),
                outcome.failed(),
                outcome.elapsed.as_secs_f64()
            );
            i32::from(outcome.failed() > 0)
        }

        Command::Identity {
            name,
            n_max,
            out,
            format,
        } => {
            let Some(name) = IdentityName::parse(&name) else {
                return usage_error(&format!(
                    "unknown identity '{name}' (known: {})",
                    known_identities()
                ));
            };
            let start = Instant::now();
            let verdicts = match run_identity_suite(name, n_max) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("supercong: {e}");
                    return 2;
                }
            };
            let failed = verdicts.iter().filter(|v| !v.pass).count();
            let records: Vec<IdentityRecord> = verdicts.iter().map(IdentityRecord::from).collect();
            if let Err(e) = write_output(&render_identities(&records, format), out.as_deref()) {
                return usage_error(&format!("cannot write records: {e}"));
            }
            eprintln!(
                "identity {name}: {} orders up to {n_max}, {} pass, {failed} fail ({:.2} s)",
                records.len(),
                records.len() - failed,
                start.elapsed().as_secs_f64()
            );
            i32::from(failed > 0)
        }

        Command::Gamma { p, k, x } => {
            let x = match Rational::from_str(&x) {
                Ok(x) => x,
                Err(e) => return usage_error(&format!("cannot parse x: {e}")),
            };
            let ctx = match PadicContext::new(p, k) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("supercong: {e}");
                    return 2;
                }
            };
            match gamma_p(&x, &ctx) {
                Ok(value) => {
                    let s = s_p(&x, p).expect("gamma_p already enforced p-integrality");
                    println!("gamma_p({x}) mod {p}^{k} = {value}");
                    println!("s_p({x}) = {s}");
                    0
                }
                Err(e) => {
                    eprintln!("supercong: {e}");
                    2
                }
            }
        }

        Command::Reproduce {
            pmax_override,
            out,
            format,
        } => {
            let corrupt_target = std::env::var("SUPERCONG_TEST_CORRUPT_GAMMA")
                .ok()
                .and_then(|s| s.parse::<u64>().ok());
            eprintln!(
                "supercong {} reproduce{}",
                env!("CARGO_PKG_VERSION"),
                pmax_override
                    .map(|c| format!(" (pmax capped at {c})"))
                    .unwrap_or_default()
            );
            if let Some(p) = corrupt_target {
                eprintln!("fault injection active: corrupting the gamma side at p = {p}");
            }

            let outcomes = match reproduce_congruences(pmax_override, corrupt_target) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("supercong: {e}");
                    return core_error_code(&e);
                }
            };
            let mut failures = 0usize;
            let mut records = Vec::new();
            for outcome in &outcomes {
                eprintln!(
                    "{}: {} primes, {} pass, {} fail ({:.2} s)",
                    outcome.family,
                    outcome.verdicts.len(),
                    outcome.passed(),
                    outcome.failed(),
                    outcome.elapsed.as_secs_f64()
                );
                failures += outcome.failed();
                records.extend(outcome.verdicts.iter().map(CongruenceRecord::from));
            }

            for (name, n_max) in [
                (IdentityName::Cc1, 99),
                (IdentityName::Cc5, 99),
                (IdentityName::Dd1, 99),
                (IdentityName::Dd2, 99),
                (IdentityName::Chu, 200),
            ] {
                let start = Instant::now();
                match run_identity_suite(name, n_max) {
                    Ok(verdicts) => {
                        let failed = verdicts.iter().filter(|v| !v.pass).count();
                        eprintln!(
                            "identity {name}: {} orders, {} pass, {failed} fail ({:.2} s)",
                            verdicts.len(),
                            verdicts.len() - failed,
                            start.elapsed().as_secs_f64()
                        );
                        failures += failed;
                    }
                    Err(e) => {
                        eprintln!("supercong: {e}");
                        return 2;
                    }
                }
            }

            if let Err(e) = write_output(&render_congruences(&records, format), out.as_deref()) {
                return usage_error(&format!("cannot write records: {e}"));
            }
            i32::from(failures > 0)
        }
    }
}
