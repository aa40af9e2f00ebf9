use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use gcm_cli::config::{default_lambda, parse_int_list, parse_real_list, DEFAULT_FD_STEP, DEFAULT_N, DEFAULT_ORDER, DEFAULT_TOL, DEFAULT_TRIALS};
use gcm_cli::report::to_pretty;
use gcm_cli::suites::patterns::describe;
use gcm_cli::suites::yangian::{yangian, YangianCheck, YangianParams};
use gcm_cli::{configure_threads, explain, parse_suites, run, RunConfig, UsageError, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use gcm_core::gcm::assemble_family;
use gcm_core::patterns::PatternKind;
use gcm_core::spectral::{random_orbit_point, SpectrumRequest};

#[derive(Parser)]
#[command(name = "gcm-lab", version, about = "Numerical checks for the Gel'fand-Cetlin-Molev system on U(n,H) orbits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write JSON reports.
    Run {
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        /// Orbit spectrum "l1,...,ln" with 0 > l1 > ... > ln (default -1,-3,-5,...).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Relative finite-difference step.
        #[arg(long, default_value_t = DEFAULT_FD_STEP)]
        fd_step: f64,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// commute, independence, reduced, patterns, yangian or all; repeatable or comma-separated.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count integer patterns for a top row.
    Patterns {
        #[arg(long, default_value = "gl")]
        kind: String,
        /// Top row "l1,...,ln".
        #[arg(long, allow_hyphen_values = true)]
        top: String,
        /// Also print every pattern.
        #[arg(long)]
        list: bool,
    },
    /// Checks on truncated gauge series.
    Yangian {
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// factorize, stabilizer, limits, psi, pullback, poisson or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Describe a family member label or suite name.
    Explain { label: String },
    /// Evaluate the family at a random point of an orbit.
    Eval {
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn lambda_or_default(lambda: Option<String>, n: usize) -> Result<Vec<f64>, UsageError> {
    lambda.map_or_else(|| Ok(default_lambda(n)), |s| parse_real_list(&s))
}

fn execute(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Run { n, lambda, trials, tol, fd_step, order, seed, suites, out } => {
            let cfg = RunConfig {
                n,
                lambda: lambda_or_default(lambda, n)?,
                trials,
                tol,
                fd_step,
                order,
                seed,
                suites: parse_suites(&suites)?,
                out,
            };
            let outcome = run(&cfg)?;
            print!("{}", to_pretty(&outcome.summary));
            Ok(outcome.exit_code)
        }
        Command::Patterns { kind, top, list } => {
            let kind: PatternKind = kind.parse().map_err(|e: gcm_core::Error| UsageError(e.to_string()))?;
            let top = parse_int_list(&top)?;
            let value = describe(kind, top, list).map_err(|e| UsageError(e.to_string()))?;
            print!("{}", to_pretty(&value));
            Ok(EXIT_PASS)
        }
        Command::Yangian { n, order, seed, trials, suite, out } => {
            if n == 0 || order == 0 || trials == 0 {
                return Err(UsageError("n, order and trials must be at least 1".into()).into());
            }
            let checks: Vec<YangianCheck> = if suite == "all" {
                YangianCheck::ALL.to_vec()
            } else {
                suite.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>()?
            };
            let params = YangianParams { n, order, seed, samples: trials };
            let outcome = yangian(&params, &checks)?;
            let report = gcm_cli::report::envelope(gcm_cli::Suite::Yangian, seed, outcome.pass, outcome.body);
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                std::fs::write(dir.join("yangian.json"), to_pretty(&report))?;
            }
            print!("{}", to_pretty(&report));
            Ok(if outcome.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Explain { label } => {
            println!("{}", explain(&label)?);
            Ok(EXIT_PASS)
        }
        Command::Eval { n, lambda, seed } => {
            let lambda = lambda_or_default(lambda, n)?;
            let req = SpectrumRequest::new(lambda.clone(), false).map_err(|e| UsageError(e.to_string()))?;
            if req.lam().len() != n {
                return Err(UsageError(format!("lambda has {} entries but n = {n}", req.lam().len())).into());
            }
            let point = random_orbit_point(&req, seed);
            let report = assemble_family(n).report(&point.x, &lambda, seed)?;
            print!("{}", to_pretty(&serde_json::to_value(&report)?));
            Ok(EXIT_PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("{e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{e:#}");
            let code = if e.downcast_ref::<UsageError>().is_some() { EXIT_USAGE } else { EXIT_FAIL };
            ExitCode::from(code as u8)
        }
    }
}
