//! Harness layer: run specifications, problem registry, trajectory/report
//! emission, run comparison, and the five-iteration experiment set.
//!
//! The CSV trajectory contract is fixed: header
//! `k,x_1,...,x_n,residual,alpha,beta,norm_u,norm_vbar,dist_to_solution`,
//! floats printed with 17 significant digits, distance column blank when the
//! problem has no known solution. Identical specs produce byte-identical
//! CSVs.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use vi_core::geometry::{FeasibleSet, Halfspace, NormalStrategy};
use vi_core::{
    solve, Algorithm, BaselineStrategy, BetaSchedule, LinesearchParams, ProjectionVariant,
    SolveReport, SolverConfig, SolverError, Termination, ViOperator, ViProblem,
};

/// Errors surfaced by the harness layer.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("solver error: {0}")]
    Solver(#[from] SolverError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

// ---------------------------------------------------------------------------
// Run specification
// ---------------------------------------------------------------------------

/// Feasible-set description in a run-spec file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetSpec {
    QuarterDisc,
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Halfspace { a: Vec<f64>, b: f64 },
    Polyhedron { a: Vec<Vec<f64>>, b: Vec<f64> },
}

impl SetSpec {
    pub fn build(&self) -> Result<FeasibleSet, HarnessError> {
        match self {
            SetSpec::QuarterDisc => Ok(FeasibleSet::QuarterDisc),
            SetSpec::Box { lo, hi } => {
                if lo.len() != hi.len() {
                    return Err(HarnessError::Validation(
                        "box bounds have mismatched dimensions".into(),
                    ));
                }
                Ok(FeasibleSet::Box {
                    lo: DVector::from_vec(lo.clone()),
                    hi: DVector::from_vec(hi.clone()),
                })
            }
            SetSpec::Ball { center, radius } => {
                if *radius <= 0.0 {
                    return Err(HarnessError::Validation("ball radius must be positive".into()));
                }
                Ok(FeasibleSet::Ball {
                    center: DVector::from_vec(center.clone()),
                    radius: *radius,
                })
            }
            SetSpec::Halfspace { a, b } => Ok(FeasibleSet::Halfspace(Halfspace::new(
                DVector::from_vec(a.clone()),
                *b,
            ))),
            SetSpec::Polyhedron { a, b } => {
                let rows = a.len();
                if rows == 0 || rows != b.len() {
                    return Err(HarnessError::Validation(
                        "polyhedron rows and offsets must be nonempty and matched".into(),
                    ));
                }
                let cols = a[0].len();
                if a.iter().any(|r| r.len() != cols) {
                    return Err(HarnessError::Validation(
                        "polyhedron rows have inconsistent lengths".into(),
                    ));
                }
                let flat: Vec<f64> = a.iter().flatten().copied().collect();
                Ok(FeasibleSet::Polyhedron {
                    a: DMatrix::from_row_slice(rows, cols, &flat),
                    b: DVector::from_vec(b.clone()),
                })
            }
        }
    }
}

/// Affine operator description: `T(x) = matrix * x + shift`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    pub matrix: Vec<Vec<f64>>,
    pub shift: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lipschitz: Option<f64>,
}

impl OperatorSpec {
    pub fn build(&self) -> Result<ViOperator, HarnessError> {
        let rows = self.matrix.len();
        if rows == 0 {
            return Err(HarnessError::Validation("operator matrix is empty".into()));
        }
        let cols = self.matrix[0].len();
        if self.matrix.iter().any(|r| r.len() != cols) {
            return Err(HarnessError::Validation(
                "operator matrix rows have inconsistent lengths".into(),
            ));
        }
        let flat: Vec<f64> = self.matrix.iter().flatten().copied().collect();
        ViOperator::affine(
            DMatrix::from_row_slice(rows, cols, &flat),
            DVector::from_vec(self.shift.clone()),
            self.lipschitz,
        )
        .map_err(|e| HarnessError::Validation(e.to_string()))
    }
}

/// Inline problem description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    pub set: SetSpec,
    pub operator: OperatorSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<f64>>,
}

/// Problem field of a run spec: either a registry name or an inline table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProblemRef {
    Named(String),
    Inline(ProblemSpec),
}

impl Default for ProblemRef {
    fn default() -> Self {
        ProblemRef::Named("example31".into())
    }
}

impl ProblemRef {
    pub fn resolve(&self) -> Result<ViProblem, HarnessError> {
        match self {
            ProblemRef::Named(name) => match name.as_str() {
                "example31" => Ok(vi_core::example31_problem()),
                other => Err(HarnessError::Validation(format!(
                    "unknown problem '{other}' (registry: example31)"
                ))),
            },
            ProblemRef::Inline(spec) => Ok(ViProblem {
                set: spec.set.build()?,
                op: spec.operator.build()?,
                known_solution: spec.solution.clone().map(DVector::from_vec),
                name: spec.name.clone(),
            }),
        }
    }

    pub fn identity(&self) -> String {
        match self {
            ProblemRef::Named(n) => n.clone(),
            ProblemRef::Inline(p) => format!("inline:{}", p.name),
        }
    }
}

fn default_variant() -> u8 {
    1
}
fn default_sigma() -> f64 {
    1.0
}
fn default_delta() -> f64 {
    0.5
}
fn default_theta() -> f64 {
    0.5
}
fn default_cap_m() -> f64 {
    1.0
}
fn default_beta() -> BetaField {
    BetaField::Constant(0.25)
}
fn default_tol() -> f64 {
    1e-8
}
fn default_max_iters() -> usize {
    10_000
}
fn default_x0() -> Vec<f64> {
    vec![0.0, 1.0]
}

/// Constant stepsize or `[lo, hi]` range (the upper endpoint is used every
/// iteration, keeping runs deterministic).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BetaField {
    Constant(f64),
    Range([f64; 2]),
}

impl BetaField {
    pub fn schedule(&self) -> BetaSchedule {
        match self {
            BetaField::Constant(b) => BetaSchedule::Constant(*b),
            BetaField::Range([lo, hi]) => BetaSchedule::Range { lo: *lo, hi: *hi },
        }
    }
}

/// One fully-specified solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(default)]
    pub problem: ProblemRef,
    pub algorithm: String,
    #[serde(default = "default_variant")]
    pub variant: u8,
    #[serde(default)]
    pub normal_u: String,
    #[serde(default)]
    pub normal_v: String,
    #[serde(default = "default_beta")]
    pub beta: BetaField,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_theta")]
    pub theta: f64,
    #[serde(default = "default_cap_m")]
    pub cap_m: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    #[serde(default = "default_x0")]
    pub x0: Vec<f64>,
    #[serde(default)]
    pub project_start: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
}

pub fn parse_algorithm(s: &str) -> Result<Algorithm, HarnessError> {
    match s {
        "cond-ext" => Ok(Algorithm::CondExt),
        "B" | "b" => Ok(Algorithm::ConceptualB),
        "F" | "f" => Ok(Algorithm::ConceptualF),
        "baseline-a" => Ok(Algorithm::Baseline(BaselineStrategy::A)),
        "baseline-b" => Ok(Algorithm::Baseline(BaselineStrategy::B)),
        "baseline-c" => Ok(Algorithm::Baseline(BaselineStrategy::C)),
        "baseline-konnov" => Ok(Algorithm::Baseline(BaselineStrategy::Konnov)),
        other => Err(HarnessError::Parse(format!(
            "unknown algorithm '{other}' (expected cond-ext|B|F|baseline-a|baseline-b|baseline-c|baseline-konnov)"
        ))),
    }
}

pub fn parse_normal(s: &str, cap: f64) -> Result<NormalStrategy, HarnessError> {
    match s {
        "" | "zero" => Ok(NormalStrategy::zero()),
        "unit" => Ok(NormalStrategy::unit(cap)),
        other => {
            if let Some(m) = other.strip_prefix("scaled:") {
                let magnitude: f64 = m.parse().map_err(|_| {
                    HarnessError::Parse(format!("bad scaled normal magnitude '{m}'"))
                })?;
                if !magnitude.is_finite() || magnitude < 0.0 {
                    return Err(HarnessError::Parse(format!(
                        "scaled normal magnitude must be finite and nonnegative, got '{m}'"
                    )));
                }
                Ok(NormalStrategy::scaled(magnitude, cap))
            } else {
                Err(HarnessError::Parse(format!(
                    "unknown normal strategy '{other}' (expected zero|unit|scaled:<m>)"
                )))
            }
        }
    }
}

/// Parse a comma-separated vector such as `0,1` or `-0.5, 0.25`.
pub fn parse_vector(s: &str) -> Result<Vec<f64>, HarnessError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(HarnessError::Parse(format!("empty component in vector '{s}'")));
    }
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        let v: f64 = p
            .parse()
            .map_err(|_| HarnessError::Parse(format!("bad vector component '{p}'")))?;
        if !v.is_finite() {
            return Err(HarnessError::Parse(format!("non-finite vector component '{p}'")));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(HarnessError::Parse(format!("empty vector '{s}'")));
    }
    Ok(out)
}

impl RunSpec {
    /// Display label for tables and reports.
    pub fn label(&self) -> String {
        self.label.clone().unwrap_or_else(|| {
            let normals = if self.normal_u.is_empty() && self.normal_v.is_empty() {
                "zero".to_string()
            } else {
                format!(
                    "{}/{}",
                    if self.normal_u.is_empty() { "zero" } else { &self.normal_u },
                    if self.normal_v.is_empty() { "zero" } else { &self.normal_v },
                )
            };
            format!("{}.{} [{}]", self.algorithm, self.variant, normals)
        })
    }

    pub fn solver_config(&self) -> Result<SolverConfig, HarnessError> {
        let algorithm = parse_algorithm(&self.algorithm)?;
        let variant = match self.variant {
            1 => ProjectionVariant::V1,
            2 => ProjectionVariant::V2,
            3 => ProjectionVariant::V3,
            v => {
                return Err(HarnessError::Validation(format!(
                    "variant must be 1, 2 or 3, got {v}"
                )))
            }
        };
        let mut config = SolverConfig::new(algorithm);
        config.variant = variant;
        config.ls = LinesearchParams {
            sigma: self.sigma,
            delta: self.delta,
            theta: self.theta,
            cap_m: self.cap_m,
            ..LinesearchParams::default()
        };
        config.beta = self.beta.schedule();
        config.normal_u = parse_normal(&self.normal_u, self.cap_m)?;
        config.normal_v = parse_normal(&self.normal_v, self.cap_m)?;
        config.tol = self.tol;
        config.max_iters = self.max_iters;
        Ok(config)
    }

    /// Full validation: config invariants against the resolved problem plus
    /// start-point feasibility.
    pub fn validate(&self) -> Result<(ViProblem, SolverConfig), HarnessError> {
        let problem = self.problem.resolve()?;
        let config = self.solver_config()?;
        config
            .validate(&problem)
            .map_err(|e| HarnessError::Validation(e.to_string()))?;
        if self.x0.len() != problem.op.dim() {
            return Err(HarnessError::Validation(format!(
                "x0 has dimension {}, problem expects {}",
                self.x0.len(),
                problem.op.dim()
            )));
        }
        let x0 = DVector::from_vec(self.x0.clone());
        if !self.project_start && !problem.set.contains(&x0, 1e-8) {
            return Err(HarnessError::Validation(
                "x0 is outside the feasible set; set project_start = true to project it".into(),
            ));
        }
        Ok((problem, config))
    }
}

/// Load and validate a single run spec from a TOML file.
pub fn load_run_spec(path: &Path) -> Result<RunSpec, HarnessError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let spec: RunSpec =
        toml::from_str(&text).map_err(|e| HarnessError::Parse(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}

// ---------------------------------------------------------------------------
// Trajectory and report emission
// ---------------------------------------------------------------------------

/// Round-trip-safe float formatting: 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write the trajectory CSV with the fixed column contract.
pub fn write_trajectory_csv(path: &Path, report: &SolveReport, dim: usize) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| HarnessError::Parse(e.to_string()))?;
    let mut header: Vec<String> = vec!["k".into()];
    header.extend((1..=dim).map(|i| format!("x_{i}")));
    header.extend(
        ["residual", "alpha", "beta", "norm_u", "norm_vbar", "dist_to_solution"]
            .map(String::from),
    );
    w.write_record(&header)
        .map_err(|e| HarnessError::Parse(e.to_string()))?;
    for rec in &report.trajectory {
        let mut row: Vec<String> = vec![rec.k.to_string()];
        row.extend(rec.x.iter().map(|v| fmt_float(*v)));
        row.push(fmt_float(rec.residual));
        row.push(rec.alpha.map(fmt_float).unwrap_or_default());
        row.push(rec.beta.map(fmt_float).unwrap_or_default());
        row.push(fmt_float(rec.norm_u));
        row.push(fmt_float(rec.norm_vbar));
        row.push(rec.dist_to_solution.map(fmt_float).unwrap_or_default());
        w.write_record(&row)
            .map_err(|e| HarnessError::Parse(e.to_string()))?;
    }
    w.flush().map_err(io_err(path))?;
    Ok(())
}

/// JSON run report: termination, counts, timings, final iterate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub label: String,
    pub problem: String,
    pub algorithm: String,
    pub variant: u8,
    pub termination: String,
    pub iterations: usize,
    pub final_x: Vec<f64>,
    pub final_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_distance: Option<f64>,
    pub projected_start: bool,
    pub wall_time_ms: f64,
}

pub fn termination_name(t: &Termination) -> &'static str {
    match t {
        Termination::ResidualMet => "ResidualMet",
        Termination::FixedPoint => "FixedPoint",
        Termination::MaxIters => "MaxIters",
        Termination::LinesearchStalled => "LinesearchStalled",
        Termination::DivergenceError => "DivergenceError",
    }
}

/// Exit code contract: 0 for converged runs, 2 for iteration exhaustion,
/// 1 for anything that went wrong.
pub fn exit_code_for(termination: &str) -> i32 {
    match termination {
        "ResidualMet" | "FixedPoint" => 0,
        "MaxIters" => 2,
        _ => 1,
    }
}

/// Outcome of one harness run: solver output plus the serialized report.
pub struct RunOutcome {
    pub report: RunReport,
    pub solve: Option<SolveReport>,
}

/// Execute one run: solve, then write the trajectory CSV and JSON report to
/// the paths named in the spec (if any). Solver errors are still recorded in
/// the report, with the error kind in the termination field.
pub fn run_experiment(spec: &RunSpec) -> Result<RunOutcome, HarnessError> {
    let (problem, config) = spec.validate()?;
    let x0 = DVector::from_vec(spec.x0.clone());
    let t0 = Instant::now();
    let solved = solve(&problem, &config, &x0);
    let wall_time_ms = t0.elapsed().as_secs_f64() * 1e3;
    let report = match &solved {
        Ok(s) => RunReport {
            label: spec.label(),
            problem: problem.name.clone(),
            algorithm: spec.algorithm.clone(),
            variant: spec.variant,
            termination: termination_name(&s.termination).to_string(),
            iterations: s.trajectory.last().map(|r| r.k).unwrap_or(0),
            final_x: s.final_x.iter().copied().collect(),
            final_residual: s.trajectory.last().map(|r| r.residual).unwrap_or(f64::NAN),
            final_distance: s.trajectory.last().and_then(|r| r.dist_to_solution),
            projected_start: s.projected_start,
            wall_time_ms,
        },
        Err(e) => RunReport {
            label: spec.label(),
            problem: problem.name.clone(),
            algorithm: spec.algorithm.clone(),
            variant: spec.variant,
            termination: error_kind(e).to_string(),
            iterations: 0,
            final_x: Vec::new(),
            final_residual: f64::NAN,
            final_distance: None,
            projected_start: false,
            wall_time_ms,
        },
    };
    if let Some(path) = &spec.report {
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| HarnessError::Parse(e.to_string()))?;
        fs::write(path, json + "\n").map_err(io_err(path))?;
    }
    match solved {
        Ok(s) => {
            if let Some(path) = &spec.out {
                write_trajectory_csv(path, &s, problem.op.dim())?;
            }
            Ok(RunOutcome {
                report,
                solve: Some(s),
            })
        }
        Err(e) => Err(HarnessError::Solver(e)),
    }
}

fn error_kind(e: &SolverError) -> &'static str {
    match e {
        SolverError::Config(_) => "ConfigError",
        SolverError::Stalled { .. } => "StalledError",
        SolverError::Geometry(_) => "GeometryError",
        SolverError::Operator(_) => "OperatorError",
        SolverError::Linesearch(_) => "LinesearchError",
    }
}

// ---------------------------------------------------------------------------
// Run comparison
// ---------------------------------------------------------------------------

/// One row of a comparison table.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub label: String,
    pub termination: String,
    pub iterations: usize,
    pub final_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_distance: Option<f64>,
    pub wall_time_ms: f64,
}

/// Tabulated results of a batch of runs, ordered as configured.
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

impl fmt::Display for ComparisonTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<28} {:<18} {:>6} {:>13} {:>13} {:>9}",
            "label", "termination", "iters", "residual", "distance", "ms"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<28} {:<18} {:>6} {:>13.6e} {:>13} {:>9.2}",
                r.label,
                r.termination,
                r.iterations,
                r.final_residual,
                r.final_distance
                    .map(|d| format!("{d:.6e}"))
                    .unwrap_or_else(|| "-".into()),
                r.wall_time_ms,
            )?;
        }
        Ok(())
    }
}

/// Batch-spec file: a list of runs compared against one another.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSpec {
    pub runs: Vec<RunSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<PathBuf>,
}

pub fn load_compare_spec(path: &Path) -> Result<CompareSpec, HarnessError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let spec: CompareSpec =
        toml::from_str(&text).map_err(|e| HarnessError::Parse(e.to_string()))?;
    Ok(spec)
}

/// Execute every run (concurrently — runs are independent and pure) and
/// tabulate the outcomes in spec order. Requires at least two runs over the
/// same problem. Per-run failures are recorded in their row rather than
/// aborting the batch; file writes happen serially afterwards.
pub fn compare_runs(specs: &[RunSpec]) -> Result<ComparisonTable, HarnessError> {
    if specs.len() < 2 {
        return Err(HarnessError::Validation(format!(
            "comparison needs at least two runs, got {}",
            specs.len()
        )));
    }
    let identity = specs[0].problem.identity();
    if specs.iter().any(|s| s.problem.identity() != identity) {
        return Err(HarnessError::Validation(
            "comparison runs must target the same problem".into(),
        ));
    }
    for spec in specs {
        spec.validate()?;
    }
    let rows: Vec<ComparisonRow> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|spec| {
                // suppress per-run file output during the parallel phase
                let mut bare = spec.clone();
                bare.out = None;
                bare.report = None;
                scope.spawn(move || match run_experiment(&bare) {
                    Ok(outcome) => ComparisonRow {
                        label: outcome.report.label,
                        termination: outcome.report.termination,
                        iterations: outcome.report.iterations,
                        final_residual: outcome.report.final_residual,
                        final_distance: outcome.report.final_distance,
                        wall_time_ms: outcome.report.wall_time_ms,
                    },
                    Err(e) => ComparisonRow {
                        label: bare.label(),
                        termination: format!("error: {e}"),
                        iterations: 0,
                        final_residual: f64::NAN,
                        final_distance: None,
                        wall_time_ms: 0.0,
                    },
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    // serial file-writing pass for runs that asked for output
    for spec in specs {
        if spec.out.is_some() || spec.report.is_some() {
            let _ = run_experiment(spec)?;
        }
    }
    Ok(ComparisonTable { rows })
}

pub fn write_comparison_csv(path: &Path, table: &ComparisonTable) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| HarnessError::Parse(e.to_string()))?;
    w.write_record([
        "label",
        "termination",
        "iterations",
        "final_residual",
        "final_distance",
        "wall_time_ms",
    ])
    .map_err(|e| HarnessError::Parse(e.to_string()))?;
    for r in &table.rows {
        w.write_record([
            r.label.clone(),
            r.termination.clone(),
            r.iterations.to_string(),
            fmt_float(r.final_residual),
            r.final_distance.map(fmt_float).unwrap_or_default(),
            format!("{:.3}", r.wall_time_ms),
        ])
        .map_err(|e| HarnessError::Parse(e.to_string()))?;
    }
    w.flush().map_err(io_err(path))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Experiment set: five-iteration snapshots plus convergence table
// ---------------------------------------------------------------------------

fn experiment_pairs() -> Vec<(&'static str, &'static str, u8)> {
    vec![
        ("cond-ext", "cond-ext", 1),
        ("B", "B.1", 1),
        ("B", "B.2", 2),
        ("B", "B.3", 3),
        ("F", "F.1", 1),
        ("F", "F.2", 2),
        ("F", "F.3", 3),
    ]
}

fn experiment_spec(algorithm: &str, label: &str, variant: u8, unit: bool) -> RunSpec {
    RunSpec {
        problem: ProblemRef::Named("example31".into()),
        algorithm: algorithm.into(),
        variant,
        normal_u: if unit { "unit".into() } else { String::new() },
        normal_v: if unit { "unit".into() } else { String::new() },
        beta: default_beta(),
        sigma: default_sigma(),
        delta: default_delta(),
        theta: default_theta(),
        cap_m: default_cap_m(),
        tol: default_tol(),
        max_iters: default_max_iters(),
        x0: default_x0(),
        project_start: false,
        seed: 0,
        label: Some(format!(
            "{label} [{}]",
            if unit { "unit" } else { "zero" }
        )),
        out: None,
        report: None,
    }
}

/// Run the full with/without-normals experiment set into `out_dir`:
/// per-run 5-iteration trajectory CSVs, a 5-iteration distance table, and a
/// run-to-convergence comparison table.
pub fn run_figures(out_dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let mut five_rows: Vec<(String, f64, f64)> = Vec::new();
    let mut convergence_specs = Vec::new();
    for (algorithm, label, variant) in experiment_pairs() {
        let mut pair = [f64::NAN, f64::NAN];
        for (slot, unit) in [(0usize, false), (1usize, true)] {
            // snapshot: exactly five iterations
            let mut short = experiment_spec(algorithm, label, variant, unit);
            short.max_iters = 5;
            short.tol = 1e-16;
            let file = format!(
                "five_{}_{}.csv",
                label.replace('.', "_"),
                if unit { "unit" } else { "zero" }
            );
            short.out = Some(out_dir.join(file));
            let outcome = run_experiment(&short)?;
            let dist = outcome
                .solve
                .as_ref()
                .and_then(|s| s.trajectory.last())
                .and_then(|r| r.dist_to_solution)
                .unwrap_or(f64::NAN);
            pair[slot] = dist;
            convergence_specs.push(experiment_spec(algorithm, label, variant, unit));
        }
        five_rows.push((label.to_string(), pair[0], pair[1]));
    }

    let five_path = out_dir.join("five_iterations.csv");
    let mut w =
        csv::Writer::from_path(&five_path).map_err(|e| HarnessError::Parse(e.to_string()))?;
    w.write_record(["run", "dist_zero_normals", "dist_unit_normals"])
        .map_err(|e| HarnessError::Parse(e.to_string()))?;
    for (label, zero, unit) in &five_rows {
        w.write_record([label.clone(), fmt_float(*zero), fmt_float(*unit)])
            .map_err(|e| HarnessError::Parse(e.to_string()))?;
    }
    w.flush().map_err(io_err(&five_path))?;

    let table = compare_runs(&convergence_specs)?;
    write_comparison_csv(&out_dir.join("convergence.csv"), &table)?;
    println!("{table}");
    println!("experiment artifacts written to {}", out_dir.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_parsing_round_trips() {
        assert_eq!(parse_vector("0,1").unwrap(), vec![0.0, 1.0]);
        assert_eq!(parse_vector("-0.5, 0.25, 3").unwrap(), vec![-0.5, 0.25, 3.0]);
        assert!(parse_vector("").is_err());
        assert!(parse_vector("1,,2").is_err());
        assert!(parse_vector("1,abc").is_err());
        assert!(parse_vector("1,inf").is_err());
    }

    #[test]
    fn normal_strategy_parsing() {
        assert!(parse_normal("zero", 1.0).is_ok());
        assert!(parse_normal("", 1.0).is_ok());
        assert!(parse_normal("unit", 1.0).is_ok());
        assert!(parse_normal("scaled:0.5", 1.0).is_ok());
        assert!(parse_normal("scaled:-1", 1.0).is_err());
        assert!(parse_normal("scaled:xyz", 1.0).is_err());
        assert!(parse_normal("banana", 1.0).is_err());
    }

    #[test]
    fn minimal_spec_fills_defaults() {
        let spec: RunSpec =
            toml::from_str("problem = \"example31\"\nalgorithm = \"F\"\nvariant = 1\n").unwrap();
        assert_eq!(spec.sigma, 1.0);
        assert_eq!(spec.delta, 0.5);
        assert_eq!(spec.theta, 0.5);
        assert_eq!(spec.cap_m, 1.0);
        assert_eq!(spec.beta, BetaField::Constant(0.25));
        assert_eq!(spec.tol, 1e-8);
        assert_eq!(spec.max_iters, 10_000);
        assert_eq!(spec.x0, vec![0.0, 1.0]);
        spec.validate().unwrap();
    }

    #[test]
    fn constant_step_beta_bound_is_enforced() {
        let spec: RunSpec = toml::from_str(
            "problem = \"example31\"\nalgorithm = \"cond-ext\"\nbeta = 0.4\n",
        )
        .unwrap();
        let err = spec.validate().unwrap_err();
        assert!(matches!(err, HarnessError::Validation(_)));
        assert!(err.to_string().contains("beta"));
    }

    #[test]
    fn inline_problem_round_trips() {
        let text = r#"
algorithm = "F"
variant = 1
x0 = [0.0, 1.0]
project_start = true

[problem]
name = "mirror"
set = { kind = "quarter-disc" }

[problem.operator]
matrix = [[-1.0, -1.0], [1.0, -1.0]]
shift = [1.5, 0.5]
lipschitz = 2.0
"#;
        let spec: RunSpec = toml::from_str(text).unwrap();
        let (problem, _) = spec.validate().unwrap();
        assert_eq!(problem.name, "mirror");
        assert_eq!(problem.op.dim(), 2);
        // serialize → reparse → identical spec
        let serialized = toml::to_string(&spec).unwrap();
        let reparsed: RunSpec = toml::from_str(&serialized).unwrap();
        assert_eq!(spec, reparsed);
    }

    #[test]
    fn comparison_requires_two_runs_on_one_problem() {
        assert!(matches!(
            compare_runs(&[]),
            Err(HarnessError::Validation(_))
        ));
        let a = experiment_spec("cond-ext", "a", 1, false);
        assert!(matches!(
            compare_runs(std::slice::from_ref(&a)),
            Err(HarnessError::Validation(_))
        ));
    }
}
