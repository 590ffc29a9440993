//! `logcv`: command-line front end for the logcv library.

mod config;
mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use logcv::certify::{certify_infinite, DEFAULT_MAX_ITER};
use logcv::cfinite::{guess_recurrence, DEFAULT_MARGIN};
use logcv::convolve::{exponent_table, square_depth_probe};
use logcv::fixedpoint::{continue_fixed_lm, extend_fixed_lm, fix_l, fix_l2, p_sr, search_integer_fixed};
use logcv::scalar::set_max_precision_bits;
use logcv::seqcore::log_concavity_depth;
use logcv::{Error, Parallelism, SeqKind};
use serde::Deserialize;
use serde_json::json;

use config::Config;
use output::Report;

const DEFAULT_DEPTH: usize = 10;
const DEFAULT_TERMS: usize = 20;
const DEFAULT_M_MAX: usize = 10;
const DEFAULT_LAMBDA_MAX: usize = 100;
const DEFAULT_SWEEP_ITER: usize = 50;

#[derive(Parser)]
#[command(name = "logcv", version, about = "Exact analysis and certification of multiply log-concave sequences")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML file of defaults (keys: format, max_iter, depth, terms, m_max,
    /// lambda_max, margin, max_bits, sequential).
    #[arg(long, global = true)]
    config: Option<String>,
    /// Precision cap in bits for sign decisions; overrides LOGCV_MAX_BITS.
    #[arg(long, global = true)]
    max_bits: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of log-concavity: how many iterates of L stay nonnegative.
    Check {
        /// Comma-separated entries, or `-` for stdin.
        #[arg(long)]
        seq: String,
        /// Largest iterate to examine.
        #[arg(long)]
        depth: Option<usize>,
        /// Read the entries as the start of an infinite sequence rather than
        /// polynomial coefficients.
        #[arg(long)]
        prefix: bool,
    },
    /// Decide infinite log-concavity of a positive sequence, with a certificate.
    Certify {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Sequences fixed by L (m = 1) or L^m.
    Fixpoint {
        #[arg(long)]
        m: usize,
        /// a_1 of the L-fixed sequence (m = 1).
        #[arg(long, conflicts_with_all = ["beta", "gamma", "prefix", "search"])]
        k: Option<String>,
        /// a_1 of the L²-fixed sequence (m = 2).
        #[arg(long, requires = "gamma", conflicts_with_all = ["prefix", "search"])]
        beta: Option<String>,
        /// a_2 of the L²-fixed sequence (m = 2).
        #[arg(long, requires = "beta")]
        gamma: Option<String>,
        /// Known terms starting with 1: at least m + 1 of them.
        #[arg(long, conflicts_with = "search")]
        prefix: Option<String>,
        /// Number of terms to produce.
        #[arg(long)]
        terms: Option<usize>,
        /// Search integer prefixes (1, a_1, ..., a_m) with 1 ≤ a_i ≤
        /// --max-entry whose extension stays a positive integer sequence.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 6, requires = "search")]
        max_entry: u32,
    },
    /// Coefficients of p_{s,r}(x) = (1 - x^s) / ((1 - x)(1 - 2cos(2πr/s)x + x²)).
    Psr {
        #[arg(long)]
        s: i64,
        #[arg(long)]
        r: i64,
    },
    /// Guess a linear recurrence with polynomial coefficients.
    Guess {
        /// Comma-separated terms, or `-` for stdin.
        #[arg(long)]
        terms: String,
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value_t = 0)]
        coeff_degree: usize,
        /// Equations beyond the square system that a guess must also satisfy.
        #[arg(long)]
        margin: Option<usize>,
    },
    /// Smallest exponents λ whose powers p^λ reach each depth and infinite
    /// log-concavity, one row per polynomial.
    PowerTable {
        /// File with one comma-separated polynomial per line, or `-`.
        #[arg(long)]
        polys: String,
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long)]
        lambda_max: Option<usize>,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Certificate or depth of p^n for n = 1 ..= n_max.
    Probe {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long)]
        sequential: bool,
    },
}

/// An error with its exit code: 1 for a mathematical "none", 2 for bad
/// input, 3 for a failure inside the computation.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(flag: &str, message: impl std::fmt::Display) -> CliError {
        CliError { code: 2, message: format!("{flag}: {message}") }
    }

    fn from_core(flag: Option<&str>, e: Error) -> CliError {
        let code = match e {
            Error::SingularStep { .. } | Error::NoFixedExtension { .. } => 1,
            Error::PrecisionExhausted { .. } | Error::OrderOverflow { .. } => 3,
            _ => 2,
        };
        let message = match flag {
            Some(f) => format!("{f}: {e}"),
            None => e.to_string(),
        };
        CliError { code, message }
    }
}

fn core(e: Error) -> CliError {
    CliError::from_core(None, e)
}

fn parallelism(sequential: bool, config: &Config) -> Parallelism {
    if sequential || config.sequential == Some(true) {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    }
}

fn run_command(command: Command, config: &Config) -> Result<(Report, Option<PathBuf>), CliError> {
    let max_iter = |flag: Option<usize>| flag.or(config.max_iter).unwrap_or(DEFAULT_MAX_ITER);
    let report = match command {
        Command::Check { seq, depth, prefix } => {
            let kind = if prefix { SeqKind::Prefix } else { SeqKind::Polynomial };
            let a = input::sequence("--seq", &seq, kind)?;
            output::depth(&log_concavity_depth(&a, depth.or(config.depth).unwrap_or(DEFAULT_DEPTH)))
        }
        Command::Certify { seq, max_iter: it } => {
            let a = input::sequence("--seq", &seq, SeqKind::Polynomial)?;
            let c = certify_infinite(&a, max_iter(it)).map_err(|e| CliError::from_core(Some("--seq"), e))?;
            let report = output::certificate(&c);
            // no verdict within the budget
            if c.m().is_none() {
                report.not_found()
            } else {
                report
            }
        }
        Command::Fixpoint { m, k, beta, gamma, prefix, terms, search, max_entry } => {
            let n = terms.or(config.terms).unwrap_or(DEFAULT_TERMS);
            if search {
                return fixpoint_search(m, max_entry, n).map(|r| (r, None));
            }
            let seq = if let Some(k) = k {
                if m != 1 {
                    return Err(CliError::usage("--k", "needs --m 1"));
                }
                fix_l(&input::scalar("--k", &k)?, n).map_err(core)?
            } else if let (Some(b), Some(g)) = (beta, gamma) {
                if m != 2 {
                    return Err(CliError::usage("--beta", "needs --m 2"));
                }
                fix_l2(&input::scalar("--beta", &b)?, &input::scalar("--gamma", &g)?, n).map_err(core)?
            } else if let Some(p) = prefix {
                let known = input::sequence("--prefix", &p, SeqKind::Prefix)?;
                let extended = if known.len() == m + 1 {
                    extend_fixed_lm(&known, m, n)
                } else {
                    continue_fixed_lm(&known, m, n)
                };
                extended.map_err(|e| match e {
                    Error::SingularStep { index } => CliError {
                        code: 1,
                        message: format!(
                            "a_{index} is not determined by the earlier terms; \
                             pass a value for it as an extra --prefix entry"
                        ),
                    },
                    e => CliError::from_core(Some("--prefix"), e),
                })?
            } else {
                return Err(CliError::usage("fixpoint", "give one of --k, --beta/--gamma, --prefix or --search"));
            };
            output::sequence(&seq)
        }
        Command::Psr { s, r } => output::sequence(&p_sr(s, r).map_err(core)?),
        Command::Guess { terms, max_order, coeff_degree, margin } => {
            let t = input::entries("--terms", &terms)?;
            let margin = margin.or(config.margin).unwrap_or(DEFAULT_MARGIN);
            match guess_recurrence(&t, max_order, coeff_degree, margin)
                .map_err(|e| CliError::from_core(Some("--terms"), e))?
            {
                Some(rec) => {
                    let coefficients: Vec<Vec<String>> =
                        rec.solution.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect();
                    let rows = coefficients
                        .iter()
                        .enumerate()
                        .flat_map(|(i, c)| c.iter().enumerate().map(move |(j, x)| vec![i.to_string(), j.to_string(), x.clone()]))
                        .collect();
                    let json = json!({
                        "found": true,
                        "order": rec.order,
                        "degree": rec.coeff_degree,
                        "coefficients": coefficients,
                    });
                    Report::new(json, &["i", "j", "coefficient"], rows)
                }
                None => {
                    let json = json!({
                        "found": false,
                        "bounds": { "max_order": max_order, "coeff_degree": coeff_degree, "terms": t.len() },
                    });
                    Report::new(json, &["i", "j", "coefficient"], Vec::new()).not_found()
                }
            }
        }
        Command::PowerTable { polys, m_max, lambda_max, max_iter: it, out, sequential } => {
            let polys = input::polynomial_list("--polys", &polys)?;
            let m_max = m_max.or(config.m_max).unwrap_or(DEFAULT_M_MAX);
            let lambda_max = lambda_max.or(config.lambda_max).unwrap_or(DEFAULT_LAMBDA_MAX);
            let it = it.or(config.max_iter).unwrap_or(DEFAULT_SWEEP_ITER);
            let rows = exponent_table(&polys, m_max, lambda_max, it, parallelism(sequential, config))
                .map_err(|e| CliError::from_core(Some("--polys"), e))?;
            return Ok((output::table(&rows, m_max), out));
        }
        Command::Probe { seq, n_max, max_iter: it, sequential } => {
            let p = input::sequence("--seq", &seq, SeqKind::Polynomial)?;
            let entries = square_depth_probe(&p, n_max, max_iter(it), parallelism(sequential, config))
                .map_err(|e| CliError::from_core(Some("--seq"), e))?;
            output::probe(&entries)
        }
    };
    Ok((report, None))
}

fn fixpoint_search(m: usize, max_entry: u32, terms: usize) -> Result<Report, CliError> {
    let found = search_integer_fixed(m, max_entry, terms).map_err(core)?;
    let candidates: Vec<_> = found
        .iter()
        .map(|c| json!({ "terms": c.terms.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "free_index": c.free_index }))
        .collect();
    let rows: Vec<Vec<String>> = found
        .iter()
        .map(|c| std::iter::once(opt_string(c.free_index)).chain(c.terms.iter().map(|x| x.to_string())).collect())
        .collect();
    // no claim is made either way; an empty result only ends this search
    let json = json!({ "m": m, "max_entry": max_entry, "terms": terms, "candidates": candidates });
    let report = Report::new(json, &["free_index", "terms..."], rows);
    Ok(if found.is_empty() { report.not_found() } else { report })
}

fn opt_string(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    // flag, then environment, then config file
    if let Some(bits) = cli.max_bits {
        set_max_precision_bits(bits);
    } else if std::env::var_os("LOGCV_MAX_BITS").is_none() {
        if let Some(bits) = config.max_bits {
            set_max_precision_bits(bits);
        }
    }
    let format = cli.format.or(config.format).unwrap_or(Format::Json);
    let (report, out) = run_command(cli.command, &config)?;
    match out {
        Some(path) => std::fs::File::create(&path)
            .and_then(|mut f| report.write(format, &mut f))
            .map_err(|e| CliError::usage("--out", format!("{}: {e}", path.display())))?,
        None => {
            let mut lock = std::io::stdout().lock();
            report
                .write(format, &mut lock)
                .and_then(|_| lock.flush())
                .map_err(|e| CliError { code: 3, message: format!("writing output: {e}") })?
        }
    }
    Ok(if report.found { 0 } else { 1 })
}

/// Longest panic message echoed in full; scalars in messages can run to
/// megabytes.
const MAX_MESSAGE: usize = 400;

fn report_panic(info: &std::panic::PanicHookInfo<'_>) {
    let payload = info.payload();
    let message = payload
        .downcast_ref::<String>()
        .map(String::as_str)
        .or_else(|| payload.downcast_ref::<&str>().copied())
        .unwrap_or("unknown panic");
    let shown: String = message.chars().take(MAX_MESSAGE).collect();
    let ellipsis = if shown.len() < message.len() { " ..." } else { "" };
    eprintln!("error: internal: {shown}{ellipsis}");
    if message.contains("precision") {
        eprintln!("hint: raise the cap with --max-bits or LOGCV_MAX_BITS");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    std::panic::set_hook(Box::new(report_panic));
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(e)) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
        Err(_) => ExitCode::from(3),
    }
}
