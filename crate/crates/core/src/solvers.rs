//! Iteration drivers: the constant-step conditional extragradient scheme, the
//! two conceptual algorithms (boundary / feasible-direction linesearch) with
//! three projection variants each, and the classical extragradient baselines.

use nalgebra::DVector;
use thiserror::Error;

use crate::geometry::{
    project_with_halfspaces, FeasibleSet, GeometryError, Halfspace, NormalStrategy,
};
use crate::linesearch::{
    linesearch_boundary, linesearch_feasible, LinesearchError, LinesearchParams,
};
use crate::operators::{OperatorError, ViOperator, ViProblem};

/// Cap on the halving loops enforcing the conditional-step normal conditions.
const MAX_HALVINGS: usize = 60;
/// `||T(z) + v||` below this makes the separating halfspace degenerate, which
/// certifies `z` as a solution.
const DEGENERATE_H_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineStrategy {
    /// Constant stepsizes (requires Lipschitz metadata).
    A,
    /// Armijo backtracking on the boundary.
    B,
    /// Armijo backtracking along the feasible direction.
    C,
    /// The dual-assumption modification of strategy C; identical trial rule.
    Konnov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    CondExt,
    ConceptualB,
    ConceptualF,
    Baseline(BaselineStrategy),
}

/// Projection rule applied after the linesearch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionVariant {
    /// `P_C(P_H(x))` via the closed-form halfspace step.
    V1,
    /// `P_{C ∩ H}(x)` via Dykstra.
    V2,
    /// `P_{C ∩ H ∩ W(x)}(x0)` via Dykstra, anchored at the start point.
    V3,
}

/// Per-iteration stepsize schedule; a range uses its upper endpoint each
/// step so runs stay reproducible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaSchedule {
    Constant(f64),
    Range { lo: f64, hi: f64 },
}

impl BetaSchedule {
    pub fn value(&self, _k: usize) -> f64 {
        match self {
            BetaSchedule::Constant(b) => *b,
            BetaSchedule::Range { hi, .. } => *hi,
        }
    }

    pub fn upper(&self) -> f64 {
        match self {
            BetaSchedule::Constant(b) => *b,
            BetaSchedule::Range { hi, .. } => *hi,
        }
    }

    pub fn lower(&self) -> f64 {
        match self {
            BetaSchedule::Constant(b) => *b,
            BetaSchedule::Range { lo, .. } => *lo,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub variant: ProjectionVariant,
    pub ls: LinesearchParams,
    pub beta: BetaSchedule,
    pub normal_u: NormalStrategy,
    pub normal_v: NormalStrategy,
    /// Residual and fixed-point stopping threshold.
    pub tol: f64,
    pub max_iters: usize,
}

impl SolverConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            variant: ProjectionVariant::V1,
            ls: LinesearchParams::default(),
            beta: BetaSchedule::Constant(0.25),
            normal_u: NormalStrategy::zero(),
            normal_v: NormalStrategy::zero(),
            tol: 1e-10,
            max_iters: 10_000,
        }
    }

    /// Resolve baselines onto the conditional machinery with zero normals.
    /// Strategy A is the zero-normal constant-step scheme; B is variant 1 of
    /// the boundary algorithm; C and its dual-assumption modification are
    /// variant 1 of the feasible-direction algorithm.
    pub fn effective(&self) -> SolverConfig {
        match self.algorithm {
            Algorithm::Baseline(strategy) => {
                let mut cfg = self.clone();
                cfg.normal_u = NormalStrategy::zero();
                cfg.normal_v = NormalStrategy::zero();
                cfg.algorithm = match strategy {
                    BaselineStrategy::A => Algorithm::CondExt,
                    BaselineStrategy::B => Algorithm::ConceptualB,
                    BaselineStrategy::C | BaselineStrategy::Konnov => Algorithm::ConceptualF,
                };
                if matches!(strategy, BaselineStrategy::B | BaselineStrategy::C | BaselineStrategy::Konnov)
                {
                    cfg.variant = ProjectionVariant::V1;
                }
                cfg
            }
            _ => self.clone(),
        }
    }

    pub fn validate(&self, problem: &ViProblem) -> Result<(), SolverError> {
        self.ls
            .validate()
            .map_err(|e| SolverError::Config(e.to_string()))?;
        let lo = self.beta.lower();
        let hi = self.beta.upper();
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(SolverError::Config(format!(
                "beta schedule must satisfy 0 < lo <= hi < inf, got [{lo}, {hi}]"
            )));
        }
        let effective = self.effective();
        if matches!(effective.algorithm, Algorithm::CondExt) {
            let lipschitz = problem.op.lipschitz.ok_or_else(|| {
                SolverError::Config(
                    "constant-step conditional scheme requires a Lipschitz constant".into(),
                )
            })?;
            let bound = 1.0 / (lipschitz + 1.0);
            if hi >= bound {
                return Err(SolverError::Config(format!(
                    "beta upper bound {hi} must be below 1/(L+1) = {bound}"
                )));
            }
        }
        Ok(())
    }
}

/// Diagnostics of the step that produced the current iterate.
#[derive(Debug, Clone)]
pub struct StepDiagnostics {
    pub alpha: f64,
    pub beta: f64,
    pub z: DVector<f64>,
    /// Feasible-direction evaluation point `alpha z + (1-alpha) x`, when the
    /// step has one.
    pub xbar: Option<DVector<f64>>,
    pub norm_u: f64,
    pub norm_vbar: f64,
    pub halfspace: Halfspace,
}

#[derive(Debug, Clone)]
pub struct IterateState {
    pub k: usize,
    pub x: DVector<f64>,
    /// Anchor for the variant-3 halfspace `W`.
    pub x0: DVector<f64>,
    pub last: Option<StepDiagnostics>,
}

impl IterateState {
    pub fn start(x0: DVector<f64>) -> Self {
        Self {
            k: 0,
            x: x0.clone(),
            x0,
            last: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    ResidualMet,
    FixedPoint,
    MaxIters,
    LinesearchStalled,
    DivergenceError,
}

#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub k: usize,
    pub x: DVector<f64>,
    pub residual: f64,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub norm_u: f64,
    pub norm_vbar: f64,
    pub dist_to_solution: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub trajectory: Vec<IterationRecord>,
    pub termination: Termination,
    pub final_x: DVector<f64>,
    /// Set when the start point had to be projected into the feasible set.
    pub projected_start: bool,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid solver config: {0}")]
    Config(String),
    #[error("conditional step stalled after {halvings} halvings enforcing the normal condition; iterate is numerically a solution")]
    Stalled { halvings: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Linesearch(#[from] LinesearchError),
}

/// Separating halfspace `H(z, v) = { y : <T(z)+v, y-z> <= 0 }`.
///
/// The caller must treat the degenerate (whole-space) result as a certificate
/// that `z` solves the problem.
pub fn build_halfspace_h(
    z: &DVector<f64>,
    v: &DVector<f64>,
    op: &ViOperator,
) -> Result<Halfspace, OperatorError> {
    let a = op.evaluate(z)? + v;
    if a.norm() <= DEGENERATE_H_TOL {
        return Ok(Halfspace::whole_space(z.len()));
    }
    let b = a.dot(z);
    Ok(Halfspace::new(a, b))
}

/// Anchor halfspace `W(x) = { y : <y-x, x0-x> <= 0 }`; degenerate when
/// `x = x0`.
pub fn build_halfspace_w(x: &DVector<f64>, x0: &DVector<f64>) -> Halfspace {
    let a = x0 - x;
    let b = a.dot(x);
    Halfspace::new(a, b)
}

enum StepOutcome {
    Advanced(IterateState),
    /// The separating halfspace degenerated: this point is a solution.
    Certified(DVector<f64>),
}

/// One constant-step conditional extragradient update.
///
/// The first normal `u` is damped by halving until
/// `||u|| <= delta ||x - z(u)||` (the trial point depends on `u`); the second
/// normal `v` is halved until `||v - u|| <= ||x - z||`. Both loops terminate
/// away from solutions because the zero vector satisfies each condition.
pub fn cond_ext_step(
    state: &IterateState,
    problem: &ViProblem,
    config: &SolverConfig,
) -> Result<IterateState, SolverError> {
    let beta = config.beta.value(state.k);
    let x = &state.x;
    let tx = problem.op.evaluate(x)?;

    let mut u = problem.set.normal_cone_sample(x, &config.normal_u)?;
    let mut z = problem.set.project(&(x - (&tx + &u) * beta))?;
    let mut satisfied = false;
    for _ in 0..=MAX_HALVINGS {
        if u.norm() <= config.ls.delta * (x - &z).norm() {
            satisfied = true;
            break;
        }
        u *= 0.5;
        z = problem.set.project(&(x - (&tx + &u) * beta))?;
    }
    if !satisfied {
        return Err(SolverError::Stalled {
            halvings: MAX_HALVINGS,
        });
    }

    let step_norm = (x - &z).norm();
    let mut v = problem.set.normal_cone_sample(&z, &config.normal_v)?;
    let mut bounded = false;
    for _ in 0..=MAX_HALVINGS {
        if (&v - &u).norm() <= step_norm {
            bounded = true;
            break;
        }
        v *= 0.5;
    }
    if !bounded {
        return Err(SolverError::Stalled {
            halvings: MAX_HALVINGS,
        });
    }

    let tz = problem.op.evaluate(&z)?;
    let x_next = problem.set.project(&(x - (&tz + &v) * beta))?;
    let halfspace = build_halfspace_h(&z, &v, &problem.op)?;
    Ok(IterateState {
        k: state.k + 1,
        x: x_next,
        x0: state.x0.clone(),
        last: Some(StepDiagnostics {
            alpha: 1.0,
            beta,
            z,
            xbar: None,
            norm_u: u.norm(),
            norm_vbar: v.norm(),
            halfspace,
        }),
    })
}

fn variant_projection(
    variant: ProjectionVariant,
    set: &FeasibleSet,
    h: &Halfspace,
    x: &DVector<f64>,
    x0: &DVector<f64>,
) -> Result<DVector<f64>, GeometryError> {
    match variant {
        ProjectionVariant::V1 => set.project(&h.project(x)),
        ProjectionVariant::V2 => project_with_halfspaces(set, &[h.clone()], x),
        ProjectionVariant::V3 => {
            let w = build_halfspace_w(x, x0);
            project_with_halfspaces(set, &[h.clone(), w], x0)
        }
    }
}

fn conceptual_b_outcome(
    state: &IterateState,
    problem: &ViProblem,
    config: &SolverConfig,
) -> Result<StepOutcome, SolverError> {
    let x = &state.x;
    let u = problem.set.normal_cone_sample(x, &config.normal_u)?;
    let out = linesearch_boundary(
        &problem.set,
        &problem.op,
        x,
        &u,
        &config.normal_v,
        &config.ls,
    )?;
    let vbar = &out.v * out.alpha;
    let h = build_halfspace_h(&out.z, &vbar, &problem.op)?;
    if h.is_degenerate() {
        return Ok(StepOutcome::Certified(out.z));
    }
    let x_next = variant_projection(config.variant, &problem.set, &h, x, &state.x0)?;
    // re-clip to stop feasibility drift
    let x_next = problem.set.project(&x_next)?;
    Ok(StepOutcome::Advanced(IterateState {
        k: state.k + 1,
        x: x_next,
        x0: state.x0.clone(),
        last: Some(StepDiagnostics {
            alpha: out.alpha,
            beta: out.alpha,
            z: out.z,
            xbar: None,
            norm_u: u.norm(),
            norm_vbar: vbar.norm(),
            halfspace: h,
        }),
    }))
}

fn conceptual_f_outcome(
    state: &IterateState,
    problem: &ViProblem,
    config: &SolverConfig,
) -> Result<StepOutcome, SolverError> {
    let x = &state.x;
    let beta = config.beta.value(state.k);
    let u = problem.set.normal_cone_sample(x, &config.normal_u)?;
    let out = linesearch_feasible(
        &problem.set,
        &problem.op,
        x,
        &u,
        beta,
        &config.normal_v,
        &config.ls,
    )?;
    let xbar = &out.z * out.alpha + x * (1.0 - out.alpha);
    let h = build_halfspace_h(&xbar, &out.v, &problem.op)?;
    if h.is_degenerate() {
        return Ok(StepOutcome::Certified(xbar));
    }
    let x_next = variant_projection(config.variant, &problem.set, &h, x, &state.x0)?;
    let x_next = problem.set.project(&x_next)?;
    Ok(StepOutcome::Advanced(IterateState {
        k: state.k + 1,
        x: x_next,
        x0: state.x0.clone(),
        last: Some(StepDiagnostics {
            alpha: out.alpha,
            beta,
            z: out.z,
            xbar: Some(xbar),
            norm_u: u.norm(),
            norm_vbar: out.v.norm(),
            halfspace: h,
        }),
    }))
}

/// One boundary-linesearch step with the configured projection variant.
pub fn conceptual_b_step(
    state: &IterateState,
    problem: &ViProblem,
    config: &SolverConfig,
) -> Result<IterateState, SolverError> {
    match conceptual_b_outcome(state, problem, config)? {
        StepOutcome::Advanced(next) => Ok(next),
        StepOutcome::Certified(z) => Ok(IterateState {
            k: state.k + 1,
            x: z,
            x0: state.x0.clone(),
            last: None,
        }),
    }
}

/// One feasible-direction-linesearch step with the configured projection
/// variant.
pub fn conceptual_f_step(
    state: &IterateState,
    problem: &ViProblem,
    config: &SolverConfig,
) -> Result<IterateState, SolverError> {
    match conceptual_f_outcome(state, problem, config)? {
        StepOutcome::Advanced(next) => Ok(next),
        StepOutcome::Certified(xbar) => Ok(IterateState {
            k: state.k + 1,
            x: xbar,
            x0: state.x0.clone(),
            last: None,
        }),
    }
}

fn record(
    problem: &ViProblem,
    state: &IterateState,
    residual: f64,
) -> IterationRecord {
    let dist = problem
        .known_solution
        .as_ref()
        .map(|xs| (&state.x - xs).norm());
    IterationRecord {
        k: state.k,
        x: state.x.clone(),
        residual,
        alpha: state.last.as_ref().map(|d| d.alpha),
        beta: state.last.as_ref().map(|d| d.beta),
        norm_u: state.last.as_ref().map(|d| d.norm_u).unwrap_or(0.0),
        norm_vbar: state.last.as_ref().map(|d| d.norm_vbar).unwrap_or(0.0),
        dist_to_solution: dist,
    }
}

/// Run the configured algorithm from `x0` until the residual or the
/// fixed-point displacement drops below `config.tol`, or `max_iters` passes.
///
/// An infeasible start is projected into the set and flagged in the report.
/// Runtime failures of the projection machinery (empty intersections,
/// exhausted linesearches) terminate the run and are recorded in the report
/// rather than returned as errors.
pub fn solve(
    problem: &ViProblem,
    config: &SolverConfig,
    x0: &DVector<f64>,
) -> Result<SolveReport, SolverError> {
    config.validate(problem)?;
    let config = config.effective();

    let projected_start = !problem.set.contains(x0, crate::geometry::MEMBERSHIP_TOL);
    let start = if projected_start {
        problem.set.project(x0)?
    } else {
        x0.clone()
    };

    let mut state = IterateState::start(start);
    let mut trajectory = Vec::new();

    let finish = |trajectory: Vec<IterationRecord>,
                  termination: Termination,
                  final_x: DVector<f64>| SolveReport {
        trajectory,
        termination,
        final_x,
        projected_start,
    };

    loop {
        let residual = problem.residual(&state.x, 1.0)?;
        trajectory.push(record(problem, &state, residual));
        if residual <= config.tol {
            let x = state.x.clone();
            return Ok(finish(trajectory, Termination::ResidualMet, x));
        }
        if state.k >= config.max_iters {
            let x = state.x.clone();
            return Ok(finish(trajectory, Termination::MaxIters, x));
        }

        let step = match config.algorithm {
            Algorithm::CondExt => cond_ext_step(&state, problem, &config).map(StepOutcome::Advanced),
            Algorithm::ConceptualB => conceptual_b_outcome(&state, problem, &config),
            Algorithm::ConceptualF => conceptual_f_outcome(&state, problem, &config),
            Algorithm::Baseline(_) => unreachable!("resolved by effective()"),
        };

        let next = match step {
            Ok(StepOutcome::Advanced(next)) => next,
            Ok(StepOutcome::Certified(z)) => {
                let residual = problem.residual(&z, 1.0)?;
                let certified = IterateState {
                    k: state.k + 1,
                    x: z.clone(),
                    x0: state.x0.clone(),
                    last: None,
                };
                trajectory.push(record(problem, &certified, residual));
                return Ok(finish(trajectory, Termination::ResidualMet, z));
            }
            Err(SolverError::Stalled { .. })
            | Err(SolverError::Linesearch(LinesearchError::MaxBacktracks { .. })) => {
                let x = state.x.clone();
                return Ok(finish(trajectory, Termination::LinesearchStalled, x));
            }
            Err(SolverError::Geometry(GeometryError::Divergence { .. })) => {
                let x = state.x.clone();
                return Ok(finish(trajectory, Termination::DivergenceError, x));
            }
            Err(e) => return Err(e),
        };

        let displacement = (&next.x - &state.x).norm();
        if displacement <= config.tol {
            let residual = problem.residual(&next.x, 1.0)?;
            trajectory.push(record(problem, &next, residual));
            let x = next.x.clone();
            return Ok(finish(trajectory, Termination::FixedPoint, x));
        }
        state = next;
    }
}

/// The classical extragradient baselines, realized by the conditional
/// machinery with zero normal vectors.
pub fn baseline_extragradient(
    problem: &ViProblem,
    strategy: BaselineStrategy,
    config: &SolverConfig,
    x0: &DVector<f64>,
) -> Result<SolveReport, SolverError> {
    let mut cfg = config.clone();
    cfg.algorithm = Algorithm::Baseline(strategy);
    solve(problem, &cfg, x0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{example31_problem, reference_solution_example31};

    fn v2(x: f64, y: f64) -> DVector<f64> {
        DVector::from_vec(vec![x, y])
    }

    #[test]
    fn cond_ext_worked_step() {
        let problem = example31_problem();
        let config = SolverConfig::new(Algorithm::CondExt);
        let state = IterateState::start(v2(0.0, 1.0));
        let next = cond_ext_step(&state, &problem, &config).unwrap();
        let diag = next.last.as_ref().unwrap();
        assert!((diag.z[0] + 0.1104).abs() < 1e-4);
        assert!((diag.z[1] - 0.9939).abs() < 1e-4);
        assert!((next.x[0] + 0.1327).abs() < 1e-4);
        assert!((next.x[1] - 0.9912).abs() < 1e-4);
    }

    #[test]
    fn conceptual_b_variant1_worked_step() {
        let problem = example31_problem();
        let config = SolverConfig::new(Algorithm::ConceptualB);
        let state = IterateState::start(v2(0.0, 1.0));
        let next = conceptual_b_step(&state, &problem, &config).unwrap();
        let diag = next.last.as_ref().unwrap();
        assert!((diag.alpha - 0.25).abs() < 1e-15);
        assert!((diag.z[0] + 0.1104).abs() < 1e-4);
        assert!((next.x[0] + 0.0506).abs() < 1e-4);
        assert!((next.x[1] - 0.9987).abs() < 1e-4);
        // the halfspace from the worked step: x^k violates it
        let h = &diag.halfspace;
        assert!((h.a[0] - 0.6165).abs() < 1e-3);
        assert!((h.a[1] + 0.6043).abs() < 1e-3);
        assert!(h.a.dot(&v2(0.0, 1.0)) - h.b > 0.06);
    }

    #[test]
    fn variant3_first_step_has_degenerate_w() {
        // W(x0) is the whole space at k = 0, so variant 3 matches the
        // two-set projection from the anchor
        let problem = example31_problem();
        let mut config = SolverConfig::new(Algorithm::ConceptualB);
        config.variant = ProjectionVariant::V3;
        let state = IterateState::start(v2(0.0, 1.0));
        let next = conceptual_b_step(&state, &problem, &config).unwrap();
        let h = &next.last.as_ref().unwrap().halfspace;
        let expected =
            project_with_halfspaces(&problem.set, &[h.clone()], &v2(0.0, 1.0)).unwrap();
        assert!((next.x - expected).norm() < 1e-8);
    }

    #[test]
    fn halfspace_w_cases() {
        let w = build_halfspace_w(&v2(1.0, 0.0), &v2(1.0, 0.0));
        assert!(w.is_degenerate());
        let w = build_halfspace_w(&v2(1.0, 0.0), &v2(0.0, 0.0));
        // {y : -y1 <= -1} = {y1 >= 1}
        assert!(!w.contains(&v2(0.5, 0.0), 0.0));
        assert!(w.contains(&v2(1.5, 0.0), 0.0));
        // x always lies on the boundary
        let x = v2(0.3, -0.7);
        let w = build_halfspace_w(&x, &v2(2.0, 5.0));
        assert!((w.a.dot(&x) - w.b).abs() < 1e-15);
    }

    #[test]
    fn halfspace_h_cases() {
        let problem = example31_problem();
        let x_star = reference_solution_example31();
        // every halfspace built from a feasible point with a valid normal
        // separates: it keeps the solution on the inside
        let strategy = crate::geometry::NormalStrategy::unit(1.0);
        for i in 0..=40 {
            for j in 0..=40 {
                let y = v2(-(i as f64) / 40.0, (j as f64) / 40.0);
                if !problem.set.contains(&y, 1e-12) {
                    continue;
                }
                let v = problem.set.normal_cone_sample(&y, &strategy).unwrap();
                let h = build_halfspace_h(&y, &v, &problem.op).unwrap();
                assert!(h.contains(&x_star, 1e-9), "separation failed at {y:?}");
            }
        }
        // vanishing T(z)+v degenerates to the whole space
        let t_at_star = problem.op.evaluate(&x_star).unwrap();
        let h = build_halfspace_h(&x_star, &(-t_at_star), &problem.op).unwrap();
        assert!(h.is_degenerate());
    }

    #[test]
    fn solve_from_solution_stops_at_k0() {
        let problem = example31_problem();
        let config = SolverConfig::new(Algorithm::ConceptualF);
        let report = solve(&problem, &config, &reference_solution_example31()).unwrap();
        assert_eq!(report.termination, Termination::ResidualMet);
        assert_eq!(report.trajectory.len(), 1);
        assert_eq!(report.trajectory[0].k, 0);
    }

    #[test]
    fn cond_ext_rejects_large_beta() {
        let problem = example31_problem();
        let mut config = SolverConfig::new(Algorithm::CondExt);
        config.beta = BetaSchedule::Constant(0.4); // >= 1/(L+1) = 1/3
        let err = solve(&problem, &config, &v2(0.0, 1.0)).unwrap_err();
        assert!(matches!(err, SolverError::Config(_)));
    }

    #[test]
    fn conceptual_f_variant2_converges() {
        let problem = example31_problem();
        let mut config = SolverConfig::new(Algorithm::ConceptualF);
        config.variant = ProjectionVariant::V2;
        config.tol = 1e-8;
        let report = solve(&problem, &config, &v2(0.0, 1.0)).unwrap();
        let x_star = reference_solution_example31();
        assert!((report.final_x - x_star).norm() < 1e-4);
        assert!(report.trajectory.len() < 200);
    }

    #[test]
    fn conceptual_f_variant1_fejer_progress() {
        // the two-stage halfspace step shrinks the distance every iteration,
        // though only sublinearly on this problem
        let problem = example31_problem();
        let mut config = SolverConfig::new(Algorithm::ConceptualF);
        config.max_iters = 500;
        config.tol = 1e-12;
        let report = solve(&problem, &config, &v2(0.0, 1.0)).unwrap();
        let dists: Vec<f64> = report
            .trajectory
            .iter()
            .map(|r| r.dist_to_solution.unwrap())
            .collect();
        for w in dists.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert!(*dists.last().unwrap() < 0.25 * dists[0]);
    }

    #[test]
    fn zero_normal_cond_ext_equals_strategy_a_bitwise() {
        let problem = example31_problem();
        let mut config = SolverConfig::new(Algorithm::CondExt);
        config.max_iters = 40;
        config.tol = 1e-12;
        let a = solve(&problem, &config, &v2(0.0, 1.0)).unwrap();
        let b = baseline_extragradient(&problem, BaselineStrategy::A, &config, &v2(0.0, 1.0))
            .unwrap();
        assert_eq!(a.trajectory.len(), b.trajectory.len());
        for (ra, rb) in a.trajectory.iter().zip(b.trajectory.iter()) {
            assert_eq!(ra.x, rb.x);
        }
    }

    #[test]
    fn infeasible_start_is_projected() {
        let problem = example31_problem();
        let config = SolverConfig::new(Algorithm::ConceptualF);
        let report = solve(&problem, &config, &v2(0.5, 1.5)).unwrap();
        assert!(report.projected_start);
        assert!(problem
            .set
            .contains(&report.trajectory[0].x, 1e-9));
    }
}
