//! Command-line front end: builds catalog algebras, runs identity
//! suites and derivation-space verifications, and emits reports.
//!
//! Exit codes: 0 all checks pass, 1 any check fails, 2 usage/IO error.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use structura::constructions::{build_by_name, catalog_name_patterns, default_catalog};
use structura::rat::{default_primes, is_prime};
use structura::report::{
    default_deltas, parse_delta_list, run_identities, run_verification, VerificationReport,
};
use structura::solver::{Mode, SolverOptions};

#[derive(Parser)]
#[command(
    name = "structura",
    version,
    about = "Exact-arithmetic verification of structurable algebras: \
             catalog construction, identity suites, and delta-derivation spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Catalog inspection.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Build a catalog algebra and print (or save) its JSON form.
    Build {
        /// Catalog name, e.g. "octonion-table" or "sum-toc-jordan-2".
        name: String,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification battery for one algebra or the whole catalog.
    Verify {
        /// Catalog name; omit when using --all.
        name: Option<String>,
        /// Verify every default catalog member.
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Include the 64-dimensional tensor square of the octonions
        /// in an --all run (slow; excluded by default).
        #[arg(long, requires = "all")]
        large: bool,
        /// Comma-separated delta list, e.g. "-1,0,1/3,1/2,1,2".
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Comma-separated primes for certified mode (first two used).
        #[arg(long)]
        primes: Option<String>,
        /// Seed for the certified-mode row shuffle.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock timings (non-deterministic output).
        #[arg(long)]
        timings: bool,
    },
    /// Run only the identity suites for one algebra.
    Identities {
        /// Catalog name.
        name: String,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List the default catalog and the registered name patterns.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Certified,
    Auto,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Certified => Mode::Certified,
            ModeArg::Auto => Mode::Auto,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Md,
}

/// Usage/IO failure carrying the message to print on stderr.
struct UsageError(String);

impl From<structura::constructions::BuildError> for UsageError {
    fn from(e: structura::constructions::BuildError) -> Self {
        UsageError(e.to_string())
    }
}

impl From<structura::AlgebraError> for UsageError {
    fn from(e: structura::AlgebraError) -> Self {
        UsageError(e.to_string())
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(), // exits 0 for --help/--version, 2 for usage errors
    };
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.cmd {
        Cmd::Catalog { cmd: CatalogCmd::List } => {
            println!("default catalog:");
            for name in default_catalog() {
                println!("  {name}");
            }
            println!("registered name patterns:");
            for pat in catalog_name_patterns() {
                println!("  {pat}");
            }
            Ok(true)
        }
        Cmd::Build { name, out } => {
            let a = build_by_name(&name)?;
            let json = a.to_json()?;
            write_out(&out, &json)?;
            Ok(true)
        }
        Cmd::Verify { name, all, large, delta, mode, primes, seed, format, out, timings } => {
            let names: Vec<String> = if all {
                let mut v: Vec<String> =
                    default_catalog().into_iter().map(String::from).collect();
                if large {
                    v.push("tensor-octonion-octonion".into());
                }
                v
            } else {
                vec![name.ok_or_else(|| UsageError("a name or --all is required".into()))?]
            };
            let deltas = match delta {
                Some(s) => parse_delta_list(&s)
                    .ok_or_else(|| UsageError(format!("bad delta list: {s}")))?,
                None => default_deltas(),
            };
            let primes = match primes {
                Some(s) => parse_prime_list(&s)?,
                None => default_primes(),
            };
            let opts = SolverOptions { mode: mode.into(), primes, seed };

            let mut reports = Vec::new();
            for n in &names {
                let a = build_by_name(n)?;
                reports.push(run_verification(n, &a, &deltas, &opts, timings));
            }
            let text = render(&reports, all, format);
            write_out(&out, &text)?;
            Ok(reports.iter().all(VerificationReport::all_passed))
        }
        Cmd::Identities { name } => {
            let a = build_by_name(&name)?;
            let checks = run_identities(&name, &a);
            for c in &checks {
                println!("{}  {} [{}]: {}", c.status, c.id, c.claim_ref, c.detail);
            }
            Ok(checks.iter().all(|c| c.passed()))
        }
    }
}

fn parse_prime_list(s: &str) -> Result<Vec<u64>, UsageError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let p: u64 = part
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("bad prime list entry: {part}")))?;
        if !is_prime(p) || p <= 5 {
            return Err(UsageError(format!("{p} is not an admissible prime (must be prime > 5)")));
        }
        out.push(p);
    }
    if out.len() < 2 {
        return Err(UsageError("at least two primes are required".into()));
    }
    Ok(out)
}

fn render(reports: &[VerificationReport], as_list: bool, format: FormatArg) -> String {
    match format {
        FormatArg::Json => {
            if as_list {
                let mut s =
                    serde_json::to_string_pretty(reports).expect("reports serialize");
                s.push('\n');
                s
            } else {
                reports[0].to_json()
            }
        }
        FormatArg::Md => {
            reports.iter().map(VerificationReport::to_markdown).collect::<Vec<_>>().join("\n")
        }
    }
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), UsageError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
