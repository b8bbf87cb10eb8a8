//! `glq`: statistics and tables for `S_n`, `GL_n(F_q)` and self-dual
//! `GL_2(F_q)` representations.
//!
//! Exit status: 0 when every verdict passes, 1 when a check fails, 2 for
//! usage and configuration errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use glq_core::acceptance::{self, Tolerances};
use glq_core::arith::odd_prime_power;
use glq_core::commands::{self, Config, DensityTolerances};
use glq_core::gl2::prime_powers;
use glq_core::report::{Cell, Format, Report, Verdict};
use glq_core::Error;

#[derive(Parser)]
#[command(name = "glq", version, about = "Character combinatorics of S_n and GL_n(F_q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Pretty,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Pretty => Format::Pretty,
        }
    }
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long, value_enum, default_value = "pretty")]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = default_jobs())]
    jobs: usize,
}

#[derive(Args, Clone)]
struct QRange {
    /// A single odd prime power.
    #[arg(long, conflicts_with = "q_max")]
    q: Option<u64>,
    /// Every odd prime power up to this bound.
    #[arg(long)]
    q_max: Option<u64>,
}

#[derive(Args, Clone)]
struct NRange {
    #[arg(long, conflicts_with = "n_max")]
    n: Option<u32>,
    #[arg(long)]
    n_min: Option<u32>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long, default_value_t = 1)]
    n_step: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Per n: p(n), v_l(f_lambda) histogram, below-threshold proportion, b(n).
    SnStats {
        #[command(flatten)]
        n: NRange,
        #[arg(long, default_value_t = 2)]
        ell: u64,
        /// Threshold shift: count v_l(f_lambda) < r + log_l n.
        #[arg(long, default_value_t = 1)]
        r: i64,
        /// Largest p(n) to enumerate.
        #[arg(long, default_value_t = 20_000_000)]
        budget: u128,
        #[command(flatten)]
        output: Output,
    },
    /// Per (q, n): label counts, v_2(d_mu) histograms and divisibility census.
    GlnStats {
        #[command(flatten)]
        q: QRange,
        #[command(flatten)]
        n: NRange,
        /// Falling-factorial length for the proportion v_2(d_mu) < v_2((n)_k).
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Rank of the subgroup GL_{n0} for the character divisibility census.
        #[arg(long, default_value_t = 1)]
        n0: u32,
        #[arg(long, default_value_t = 1)]
        r: u64,
        /// Largest |X_n| to enumerate; beyond it generating functions are used.
        #[arg(long, default_value_t = 5_000_000)]
        budget: u128,
        #[command(flatten)]
        output: Output,
    },
    /// Stiefel-Whitney summary table for GL_2(F_q).
    Gl2Table {
        #[command(flatten)]
        q: QRange,
        #[command(flatten)]
        output: Output,
    },
    /// Per-representation decisions for the self-dual irreducibles of GL_2(F_q).
    Gl2Reps {
        #[arg(long)]
        q: u64,
        /// Take the cuspidal determinant from brute force (q <= 9).
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Densities of w_2 = 0 among orthogonal irreducibles, q <= X.
    Gl2Density {
        #[arg(long = "X", alias = "x")]
        x: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Runs every acceptance check; one line per check.
    Verify {
        /// Replace every density tolerance by this value.
        #[arg(long)]
        density_tolerance: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        density_x: u64,
        /// Skip the second density run at X = 100000.
        #[arg(long)]
        no_fallback: bool,
        #[command(flatten)]
        output: Output,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) | Error::Overflow(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn qs(range: &QRange) -> Result<Vec<u64>, Failure> {
    match (range.q, range.q_max) {
        (Some(q), None) => {
            odd_prime_power(q)?;
            Ok(vec![q])
        }
        (None, Some(m)) => Ok(prime_powers(m, None)?),
        _ => Err(Failure::Usage("give --q or --q-max".into())),
    }
}

fn ns(range: &NRange) -> Result<Vec<u32>, Failure> {
    let list: Vec<u32> = match (range.n, range.n_max) {
        (Some(n), None) => vec![n],
        (None, Some(m)) => (range.n_min.unwrap_or(1)..=m).step_by(range.n_step.max(1) as usize).collect(),
        _ => return Err(Failure::Usage("give --n or --n-max".into())),
    };
    if list.is_empty() || list.contains(&0) {
        return Err(Failure::Usage("the n range must be nonempty and start at 1 or later".into()));
    }
    Ok(list)
}

fn config(pairs: &[(&str, String)]) -> Config {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn emit(report: &Report, output: &Output) -> Result<(), Failure> {
    let text = report.render(output.format.into())?;
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))?;
        }
    }
    if report.all_pass() {
        Ok(())
    } else {
        let failed: Vec<&str> = report.verdicts.iter().filter(|v| !v.pass).map(|v| v.name.as_str()).collect();
        Err(Failure::Check(format!("failed: {}", failed.join(", "))))
    }
}

fn pool(jobs: usize) -> Result<(), Failure> {
    if jobs == 0 {
        return Err(Failure::Usage("--jobs must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::SnStats { n, ell, r, budget, output } => {
            pool(output.jobs)?;
            let ns = ns(&n)?;
            let cfg = config(&[("command", "sn-stats".into()), ("n", list(&ns)), ("ell", ell.to_string()), ("r", r.to_string()), ("budget", budget.to_string())]);
            emit(&commands::sn_stats(cfg, &ns, ell, r, budget)?, &output)
        }
        Command::GlnStats { q, n, k, n0, r, budget, output } => {
            pool(output.jobs)?;
            let (qs, ns) = (qs(&q)?, ns(&n)?);
            let cfg = config(&[
                ("command", "gln-stats".into()),
                ("q", list(&qs)),
                ("n", list(&ns)),
                ("k", k.to_string()),
                ("n0", n0.to_string()),
                ("r", r.to_string()),
                ("budget", budget.to_string()),
            ]);
            emit(&commands::gln_stats(cfg, &qs, &ns, k, n0, r, budget)?, &output)
        }
        Command::Gl2Table { q, output } => {
            let qs = qs(&q)?;
            let cfg = config(&[("command", "gl2-table".into()), ("q", list(&qs))]);
            emit(&commands::gl2_table(cfg, &qs)?, &output)
        }
        Command::Gl2Reps { q, oracle, output } => {
            odd_prime_power(q)?;
            let cfg = config(&[("command", "gl2-reps".into()), ("q", q.to_string()), ("oracle", oracle.to_string())]);
            emit(&commands::gl2_reps(cfg, q, oracle)?, &output)
        }
        Command::Gl2Density { x, output } => {
            pool(output.jobs)?;
            let cfg = config(&[("command", "gl2-density".into()), ("X", x.to_string())]);
            emit(&commands::gl2_density(cfg, x, output.jobs, &DensityTolerances::default())?, &output)
        }
        Command::Verify { density_tolerance, density_x, no_fallback, output } => {
            pool(output.jobs)?;
            let mut tol = Tolerances { density_x, ..Tolerances::default() };
            if let Some(t) = density_tolerance {
                if t.is_nan() || t < 0.0 {
                    return Err(Failure::Usage("--density-tolerance must be >= 0".into()));
                }
                tol.density = DensityTolerances::uniform(t);
            }
            if no_fallback {
                tol.density_fallback_x = None;
            }
            let cfg = config(&[
                ("command", "verify".into()),
                ("density_x", density_x.to_string()),
                ("density_tolerance", density_tolerance.map(|t| t.to_string()).unwrap_or_else(|| "default".into())),
                ("fallback", (!no_fallback).to_string()),
            ]);
            let results = acceptance::run_all(&tol, output.jobs)?;
            let mut report = Report::new(cfg, &["criterion", "name", "pass", "detail"]);
            for r in &results {
                report.push(vec![Cell::Int(r.id as i128), Cell::text(r.name), Cell::Bool(r.pass), Cell::text(r.detail.clone())]);
                report.verdicts.push(Verdict::new(format!("{} {}", r.id, r.name), r.pass, r.detail.clone()));
            }
            if matches!(output.format, FormatArg::Pretty) && output.out.is_none() {
                for r in &results {
                    println!("{r}");
                }
                return if report.all_pass() { Ok(()) } else { Err(Failure::Check("some criteria failed".into())) };
            }
            emit(&report, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("glq: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("glq: {msg}");
            ExitCode::from(2)
        }
    }
}
