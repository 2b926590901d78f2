//! `vi` — solver harness for constrained variational inequality problems.
//!
//! Exit codes: 0 when a run converges (residual met or fixed point reached),
//! 2 when the iteration budget is exhausted, 1 on any error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vi_cli::{
    compare_runs, exit_code_for, load_compare_spec, load_run_spec, parse_vector, run_experiment,
    run_figures, write_comparison_csv, BetaField, HarnessError, ProblemRef, RunSpec,
};

#[derive(Parser)]
#[command(name = "vi", version, about = "Constrained variational inequality solver harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solver configuration and emit a trajectory CSV / JSON report.
    Solve(SolveArgs),
    /// Run a batch of configurations from a spec file and tabulate them.
    Compare {
        /// TOML file with a [[runs]] table per configuration
        #[arg(long)]
        spec: PathBuf,
        /// Optional path for the comparison table CSV (overrides the spec)
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Reproduce the bundled with/without-normals experiment set.
    Figures {
        /// Output directory for the experiment CSVs
        #[arg(long, default_value = "figures-out")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Problem name from the registry (example31) or a run-spec TOML file;
    /// flags override values from the file
    #[arg(long, default_value = "example31")]
    problem: String,
    /// cond-ext | B | F | baseline-a | baseline-b | baseline-c | baseline-konnov
    #[arg(long)]
    algorithm: Option<String>,
    /// Projection variant: 1, 2 or 3
    #[arg(long)]
    variant: Option<u8>,
    /// Normal strategy for the first sample: zero | unit | scaled:<m>
    #[arg(long)]
    normal_u: Option<String>,
    /// Normal strategy for the second sample: zero | unit | scaled:<m>
    #[arg(long)]
    normal_v: Option<String>,
    /// Constant stepsize for the projection step
    #[arg(long)]
    beta: Option<f64>,
    /// Linesearch initial stepsize
    #[arg(long)]
    sigma: Option<f64>,
    /// Linesearch acceptance fraction in (0, 1)
    #[arg(long)]
    delta: Option<f64>,
    /// Linesearch backtracking factor in (0, 1)
    #[arg(long)]
    theta: Option<f64>,
    /// Cap on sampled normal-vector magnitudes
    #[arg(long = "cap-M")]
    cap_m: Option<f64>,
    /// Residual tolerance for termination
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration budget
    #[arg(long)]
    max_iters: Option<usize>,
    /// Start point, comma-separated (e.g. "0,1")
    #[arg(long)]
    x0: Option<String>,
    /// Project an infeasible start point instead of rejecting it
    #[arg(long)]
    project_start: bool,
    /// Trajectory CSV path
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report path
    #[arg(long)]
    report: Option<PathBuf>,
    /// Label used in reports and tables
    #[arg(long)]
    label: Option<String>,
}

impl SolveArgs {
    fn into_spec(self) -> Result<RunSpec, HarnessError> {
        // --problem is either a registry name or a spec file to start from
        let mut spec = if self.problem.ends_with(".toml") {
            load_run_spec(std::path::Path::new(&self.problem))?
        } else {
            RunSpec {
                problem: ProblemRef::Named(self.problem.clone()),
                algorithm: String::new(),
                variant: 1,
                normal_u: String::new(),
                normal_v: String::new(),
                beta: BetaField::Constant(0.25),
                sigma: 1.0,
                delta: 0.5,
                theta: 0.5,
                cap_m: 1.0,
                tol: 1e-8,
                max_iters: 10_000,
                x0: vec![0.0, 1.0],
                project_start: false,
                seed: 0,
                label: None,
                out: None,
                report: None,
            }
        };
        if let Some(v) = self.algorithm {
            spec.algorithm = v;
        }
        if spec.algorithm.is_empty() {
            return Err(HarnessError::Validation(
                "no algorithm given (use --algorithm or a spec file)".into(),
            ));
        }
        if let Some(v) = self.variant {
            spec.variant = v;
        }
        if let Some(v) = self.normal_u {
            spec.normal_u = v;
        }
        if let Some(v) = self.normal_v {
            spec.normal_v = v;
        }
        if let Some(v) = self.beta {
            spec.beta = BetaField::Constant(v);
        }
        if let Some(v) = self.sigma {
            spec.sigma = v;
        }
        if let Some(v) = self.delta {
            spec.delta = v;
        }
        if let Some(v) = self.theta {
            spec.theta = v;
        }
        if let Some(v) = self.cap_m {
            spec.cap_m = v;
        }
        if let Some(v) = self.tol {
            spec.tol = v;
        }
        if let Some(v) = self.max_iters {
            spec.max_iters = v;
        }
        if let Some(v) = self.x0 {
            spec.x0 = parse_vector(&v)?;
        }
        if self.project_start {
            spec.project_start = true;
        }
        if let Some(v) = self.label {
            spec.label = Some(v);
        }
        if let Some(v) = self.out {
            spec.out = Some(v);
        }
        if let Some(v) = self.report {
            spec.report = Some(v);
        }
        Ok(spec)
    }
}

fn run() -> Result<i32, HarnessError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(args) => {
            let spec = args.into_spec()?;
            let outcome = run_experiment(&spec)?;
            let r = &outcome.report;
            println!(
                "{}: {} after {} iterations, residual {:.6e}{}",
                r.label,
                r.termination,
                r.iterations,
                r.final_residual,
                r.final_distance
                    .map(|d| format!(", distance to solution {d:.6e}"))
                    .unwrap_or_default(),
            );
            Ok(exit_code_for(&r.termination))
        }
        Command::Compare { spec, table } => {
            let compare = load_compare_spec(&spec)?;
            let result = compare_runs(&compare.runs)?;
            print!("{result}");
            if let Some(path) = table.or(compare.table) {
                write_comparison_csv(&path, &result)?;
                println!("table written to {}", path.display());
            }
            Ok(0)
        }
        Command::Figures { out_dir } => {
            run_figures(&out_dir)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
