//! `skein`: batch verification of the library's skein-theoretic identities
//! and one-off exact computations, from the command line.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use skein_core::annulus::power_sum;
use skein_core::closure::markov_trace;
use skein_core::hecke::{eval_word, BraidWord};
use skein_core::scalar::Scalar;
use skein_core::threading::thread_closure;
use skein_core::verify::{self, CheckJob, VerificationReport};

#[derive(Parser)]
#[command(
    name = "skein",
    version,
    about = "Exact Hecke-algebra and annulus-skein computation and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity checks and emit pass/fail reports.
    Verify(VerifyArgs),
    /// Compute and print a single object.
    Compute(ComputeArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    check: VerifyCheck,

    /// Write a line-delimited JSON report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,

    /// Worker threads for the check pool (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for the randomised structural suites run by `verify all`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum VerifyCheck {
    /// `[m] P_m` equals the sum of the m mixed-crossing closed braids.
    Braidsum {
        #[arg(long, default_value_t = 8)]
        m_max: usize,
    },
    /// Murphy power-sum identity in H_n for all n + m <= bound.
    Murphy {
        #[arg(long, default_value_t = 7)]
        bound: usize,
    },
    /// The cycle series times its mirror is 1 modulo t^(degree+1).
    Mirror {
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// Crossing-switch recursion and its endpoint, up to degree.
    Adiff {
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// Braid threading agrees with h-expansion threading for n + m <= bound.
    Ah {
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Threaded elements and Murphy symmetric functions are central, n <= bound.
    Centrality {
        #[arg(long, default_value_t = 5)]
        bound: usize,
    },
    /// Every check above at default scale, the affine-relation solve, and
    /// the seeded structural property suites.
    All,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(subcommand)]
    what: ComputeWhat,
}

#[derive(Subcommand)]
enum ComputeWhat {
    /// Print the power-sum element P_m in h-coordinates.
    Pm {
        #[arg(long)]
        m: usize,
    },
    /// Thread a closed braid through n parallel strands and print the
    /// resulting central element of H_n.
    Thread {
        /// Comma-separated signed letters, e.g. "1,-2,1"; empty for the
        /// closure of a single straight strand.
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        n: usize,
        /// Pattern strand count; inferred from the letters when omitted.
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Framed Homfly polynomial of a braid closure.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        strands: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Compute(args) => {
            run_compute(args)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_jobs(check: &VerifyCheck, seed: u64) -> Vec<CheckJob> {
    match check {
        VerifyCheck::Braidsum { m_max } => verify::braidsum_jobs(*m_max),
        VerifyCheck::Murphy { bound } => verify::murphy_jobs(*bound),
        VerifyCheck::Mirror { degree } => verify::mirror_jobs(*degree),
        VerifyCheck::Adiff { degree } => verify::adiff_jobs(*degree),
        VerifyCheck::Ah { bound } => verify::ah_jobs(*bound),
        VerifyCheck::Centrality { bound } => verify::centrality_jobs(*bound),
        VerifyCheck::All => verify::all_jobs(seed),
    }
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let jobs = build_jobs(&args.check, args.seed);
    let reports = run_on_pool(jobs, args.jobs)?;

    print_table(&reports);

    if let Some(path) = &args.report {
        write_report(path, &reports)
            .with_context(|| format!("writing report to {}", path.display()))?;
        println!("report written to {}", path.display());
    }

    let failed = reports.iter().filter(|r| r.failed()).count();
    if failed > 0 {
        Ok(ExitCode::FAILURE)
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

/// Run the jobs on a bounded worker pool; each job is pure, and collecting
/// preserves the deterministic enumeration order.
fn run_on_pool(jobs: Vec<CheckJob>, threads: Option<usize>) -> Result<Vec<VerificationReport>> {
    let run = || jobs.into_par_iter().map(CheckJob::run).collect();
    match threads {
        Some(k) => {
            if k == 0 {
                bail!("--jobs must be at least 1");
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .context("building worker pool")?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}

fn status_label(r: &VerificationReport) -> &'static str {
    if r.passed() {
        "pass"
    } else if r.failed() {
        "FAIL"
    } else {
        "skip"
    }
}

fn print_table(reports: &[VerificationReport]) {
    println!("{:<8}{:<38}{:<30}{:>10}", "status", "check", "params", "ms");
    for r in reports {
        println!(
            "{:<8}{:<38}{:<30}{:>10.1}",
            status_label(r),
            r.check,
            r.params_string(),
            r.elapsed_ms
        );
    }
    for r in reports.iter().filter(|r| r.failed()) {
        println!();
        println!("FAILED {} [{}]", r.check, r.params_string());
        println!("  lhs = {}", r.lhs);
        println!("  rhs = {}", r.rhs);
    }
    let pass = reports.iter().filter(|r| r.passed()).count();
    let fail = reports.iter().filter(|r| r.failed()).count();
    let skip = reports.len() - pass - fail;
    println!("summary: {pass} pass, {fail} fail, {skip} skipped");
}

fn write_report(path: &PathBuf, reports: &[VerificationReport]) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    let letters = BraidWord::parse_letters(text).map_err(|e| anyhow::anyhow!(e))?;
    let needed = letters
        .iter()
        .map(|l| l.unsigned_abs() as usize + 1)
        .max()
        .unwrap_or(1);
    let strands = match strands {
        Some(m) => {
            if m < needed {
                bail!("braid letters need at least {needed} strands, got --strands {m}");
            }
            m
        }
        None => needed,
    };
    Ok(BraidWord::new(strands, letters))
}

fn run_compute(args: ComputeArgs) -> Result<()> {
    match args.what {
        ComputeWhat::Pm { m } => {
            if m == 0 {
                bail!("power sums start at m = 1");
            }
            println!("P_{m} = {}", power_sum(m));
        }
        ComputeWhat::Thread { braid, n, strands } => {
            let beta = parse_braid(&braid, strands)?;
            let threaded = thread_closure(&beta, n);
            println!(
                "psi_{n} of the closure of [{}] on {} strands:",
                beta.letters().iter().map(i32::to_string).collect::<Vec<_>>().join(","),
                beta.strands()
            );
            println!("{threaded}");
        }
        ComputeWhat::Trace { braid, strands } => {
            let beta = parse_braid(&braid, Some(strands))?;
            let framed = markov_trace(&eval_word(&beta));
            let writhe = beta.writhe();
            let ambient = &Scalar::v(writhe as i32) * &framed;
            println!("framed homfly: {framed}");
            println!("writhe-normalized (ambient): {ambient}");
        }
    }
    Ok(())
}
