//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error. Results go
//! to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::ca::{cycle_length_capped, pack_lsb_first, stream_bits, CaState, DEFAULT_CYCLE_CAP};
use crate::charpoly::{characteristic_polynomial, RuleVector, MAX_CELLS};
use crate::enumerator::{enumerate_with_stats, EnumOptions, DEFAULT_EXHAUSTIVE_CAP};
use crate::error::Error;
use crate::gf2poly::parse_poly;
use crate::primitivity::{
    enumerate_primitive, is_irreducible, order_of_x, PrimitivityTest, MAX_FACTOR_N,
};
use crate::tables::{load_rows, parse_dataset, verify_rows, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "maxlen-ca",
    version,
    about = "Enumerate, verify and run maximum-length hybrid 90/150 cellular automata"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Polynomial and rule vector columns, as in the published tables.
    Paper,
    /// Tab-separated with an `n polynomial rule_vector` header.
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every maximum-length rule vector of N cells.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Paper)]
        format: Format,
        /// Worker threads; defaults to available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        /// Allow N above the exhaustive-search cap of 20.
        #[arg(long)]
        allow_large: bool,
    },
    /// Print the characteristic polynomial of a rule vector.
    Charpoly {
        #[arg(long)]
        rules: String,
    },
    /// Test a polynomial for primitivity.
    Primitive {
        #[arg(long)]
        poly: String,
    },
    /// Print the cycle length through a seed state (default: cell 0 set).
    Cycle {
        #[arg(long)]
        rules: String,
        #[arg(long)]
        seed: Option<String>,
        /// Allow more than 24 cells.
        #[arg(long)]
        allow_large: bool,
    },
    /// Emit the output bitstream of one cell.
    Stream {
        #[arg(long)]
        rules: String,
        #[arg(long)]
        bits: usize,
        #[arg(long, default_value_t = 0)]
        tap: usize,
        #[arg(long)]
        seed: Option<String>,
        /// ASCII '0'/'1' lines of 64 bits instead of packed bytes.
        #[arg(long)]
        ascii: bool,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the embedded tables (or another dataset) row by row.
    VerifyTables {
        #[arg(long)]
        n: Option<usize>,
        /// Exit 1 if any row fails.
        #[arg(long)]
        strict: bool,
        /// Write the errata file here.
        #[arg(long)]
        errata: Option<PathBuf>,
        /// Dataset file to verify instead of the embedded tables.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// List every primitive polynomial of degree N.
    PrimpolyList {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(io::Error),
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn seed_or_unit(seed: Option<&str>, n: usize) -> Result<CaState, Error> {
    match seed {
        Some(s) => s.parse(),
        None => CaState::unit(n),
    }
}

fn cmd_enum(
    n: usize,
    format: Format,
    jobs: Option<usize>,
    allow_large: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let opts = EnumOptions {
        jobs: jobs.unwrap_or(0),
        max_n: if allow_large {
            MAX_FACTOR_N
        } else {
            DEFAULT_EXHAUSTIVE_CAP
        },
    };
    let (entries, stats) = enumerate_with_stats(n, &opts)?;
    if format == Format::Tsv {
        writeln!(out, "n\tpolynomial\trule_vector")?;
    }
    for e in &entries {
        match format {
            Format::Paper => writeln!(out, "{} {}", e.polynomial, e.rule_vector)?,
            Format::Tsv => writeln!(out, "{}\t{}\t{}", e.n, e.polynomial, e.rule_vector)?,
        }
        if e.rule_vector.is_palindrome() {
            writeln!(err, "note: palindromic rule vector {}", e.rule_vector)?;
        }
    }
    writeln!(
        err,
        "n={n}: {} candidates, {} even weight, {} zero constant term, {} not primitive, {} maximum-length",
        stats.total,
        stats.rejected_even_weight,
        stats.rejected_zero_constant,
        stats.rejected_not_primitive,
        stats.survivors
    )?;
    Ok(())
}

fn cmd_primitive(poly: &str, out: &mut dyn Write) -> CmdResult {
    let p = parse_poly(poly)?;
    let n = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or(Error::ConstantPolynomial)?;
    let test = PrimitivityTest::new(n)?;
    let verdict = test.check(&p);
    let period = test.factorization().value;
    writeln!(
        out,
        "{}",
        if verdict {
            "primitive"
        } else {
            "not primitive"
        }
    )?;
    writeln!(out, "degree: {n}")?;
    writeln!(
        out,
        "irreducible: {}",
        if is_irreducible(&p)? { "yes" } else { "no" }
    )?;
    let order = match order_of_x(&p)? {
        Some(k) => k.to_string(),
        None if !p.coeff(0) => "undefined (x divides the polynomial)".to_string(),
        None => "unknown".to_string(),
    };
    writeln!(out, "order of x: {order}")?;
    writeln!(out, "2^{n}-1: {period}")?;
    Ok(())
}

fn cmd_cycle(rules: &str, seed: Option<&str>, allow_large: bool, out: &mut dyn Write) -> CmdResult {
    let rv: RuleVector = rules.parse()?;
    let seed = seed_or_unit(seed, rv.len())?;
    let cap = if allow_large {
        MAX_CELLS
    } else {
        DEFAULT_CYCLE_CAP
    };
    let len = cycle_length_capped(&rv, &seed, cap)?;
    writeln!(out, "{len}")?;
    Ok(())
}

fn cmd_stream(
    rules: &str,
    bits: usize,
    tap: usize,
    seed: Option<&str>,
    ascii: bool,
    output: Option<&PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let rv: RuleVector = rules.parse()?;
    let seed = seed_or_unit(seed, rv.len())?;
    let stream = stream_bits(&rv, &seed, bits, tap)?;
    let bytes = if ascii {
        let mut text = String::with_capacity(bits + bits / 64 + 1);
        for chunk in stream.chunks(64) {
            text.extend(chunk.iter().map(|&b| if b { '1' } else { '0' }));
            text.push('\n');
        }
        text.into_bytes()
    } else {
        pack_lsb_first(&stream)
    };
    match output {
        Some(path) => fs::write(path, bytes)?,
        None => out.write_all(&bytes)?,
    }
    Ok(())
}

fn write_report(report: &VerificationReport, out: &mut dyn Write) -> io::Result<()> {
    for v in &report.failures {
        let r = &v.row;
        writeln!(
            out,
            "FAIL n={} {} {}: {}",
            r.n,
            r.poly_str,
            r.rv_str,
            v.diagnosis().unwrap_or_default()
        )?;
    }
    for r in &report.duplicates {
        writeln!(out, "DUPLICATE n={} {} {}", r.n, r.poly_str, r.rv_str)?;
    }
    writeln!(
        out,
        "checked {} rows: {} passed, {} failed, {} duplicates",
        report.total,
        report.passed,
        report.failures.len(),
        report.duplicates.len()
    )
}

fn cmd_verify(
    n: Option<usize>,
    strict: bool,
    errata: Option<&PathBuf>,
    data: Option<&PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let rows = match data {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let rows = parse_dataset(&text)?;
            match n {
                Some(n) => rows.into_iter().filter(|r| r.n == n).collect(),
                None => rows,
            }
        }
        None => load_rows(n),
    };
    let report = verify_rows(&rows)?;
    write_report(&report, out)?;
    if let Some(path) = errata {
        fs::write(path, report.to_errata())?;
    }
    if strict && !report.is_clean() {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn cmd_primpoly_list(n: usize, out: &mut dyn Write) -> CmdResult {
    for p in enumerate_primitive(n)? {
        writeln!(out, "{p}")?;
    }
    Ok(())
}

fn dispatch(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match &config.command {
        Command::Enum {
            n,
            format,
            jobs,
            allow_large,
        } => {
            if *jobs == Some(0) {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            cmd_enum(*n, *format, *jobs, *allow_large, out, err)
        }
        Command::Charpoly { rules } => {
            let rv: RuleVector = rules.parse()?;
            writeln!(out, "{}", characteristic_polynomial(&rv))?;
            Ok(())
        }
        Command::Primitive { poly } => cmd_primitive(poly, out),
        Command::Cycle {
            rules,
            seed,
            allow_large,
        } => cmd_cycle(rules, seed.as_deref(), *allow_large, out),
        Command::Stream {
            rules,
            bits,
            tap,
            seed,
            ascii,
            output,
        } => cmd_stream(
            rules,
            *bits,
            *tap,
            seed.as_deref(),
            *ascii,
            output.as_ref(),
            out,
        ),
        Command::VerifyTables {
            n,
            strict,
            errata,
            data,
        } => cmd_verify(*n, *strict, errata.as_ref(), data.as_ref(), out),
        Command::PrimpolyList { n } => cmd_primpoly_list(*n, out),
    }
}

/// Run a parsed command. Returns the process exit code.
pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = dispatch(config, out, err).and_then(|()| out.flush().map_err(Failure::Io));
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_FAILURE,
        Err(Failure::Lib(e @ Error::SeedNotOnCycle)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

/// Parse `args` (including the program name) and run.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            EXIT_USAGE
        }
    }
}
