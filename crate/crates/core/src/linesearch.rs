//! The two backtracking procedures producing `(alpha, z, v)` triples that
//! define separating halfspaces.
//!
//! Both searches shrink `alpha` geometrically by `theta` and re-sample the
//! normal vector at every trial point, so runs are deterministic for a fixed
//! sampling strategy. Ties in the acceptance comparisons accept.

use nalgebra::DVector;
use thiserror::Error;

use crate::geometry::{FeasibleSet, GeometryError, NormalStrategy};
use crate::operators::{OperatorError, ViOperator};

/// A trial point collapsing onto the iterate within this distance is treated
/// as stationary: the caller should re-test convergence.
const STATIONARY_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct LinesearchParams {
    /// Initial stepsize (boundary search only).
    pub sigma: f64,
    /// Armijo factor in (0,1).
    pub delta: f64,
    /// Backtracking ratio in (0,1).
    pub theta: f64,
    /// Normal-magnitude cap M.
    pub cap_m: f64,
    pub max_backtracks: usize,
}

impl Default for LinesearchParams {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            delta: 0.5,
            theta: 0.5,
            cap_m: 1.0,
            max_backtracks: 60,
        }
    }
}

impl LinesearchParams {
    pub fn validate(&self) -> Result<(), LinesearchError> {
        let ok = self.sigma > 0.0
            && self.delta > 0.0
            && self.delta < 1.0
            && self.theta > 0.0
            && self.theta < 1.0
            && self.cap_m >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(LinesearchError::InvalidParams {
                sigma: self.sigma,
                delta: self.delta,
                theta: self.theta,
                cap_m: self.cap_m,
            })
        }
    }
}

/// Accepted stepsize, trial point and normal vector at the prescribed
/// evaluation point (`z` for the boundary search, `alpha z + (1-alpha) x`
/// for the feasible-direction search).
#[derive(Debug, Clone)]
pub struct LinesearchOutcome {
    pub alpha: f64,
    pub z: DVector<f64>,
    pub v: DVector<f64>,
    pub backtracks: usize,
}

#[derive(Debug, Error)]
pub enum LinesearchError {
    #[error("linesearch exhausted {backtracks} backtracks (stationary: {stationary}); iterate is numerically a solution or params are pathological")]
    MaxBacktracks {
        backtracks: usize,
        stationary: bool,
        /// Final trial point, for diagnostics.
        last_trial: DVector<f64>,
    },
    #[error("invalid linesearch params: sigma={sigma}, delta={delta}, theta={theta}, M={cap_m}")]
    InvalidParams {
        sigma: f64,
        delta: f64,
        theta: f64,
        cap_m: f64,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Backtracking on the boundary: every trial recomputes
/// `z = P_C(x - alpha (T(x) + alpha u))` and accepts once
/// `alpha ||T(z) - T(x) + alpha (v - u)|| <= delta ||z - x||`.
pub fn linesearch_boundary(
    set: &FeasibleSet,
    op: &ViOperator,
    x: &DVector<f64>,
    u: &DVector<f64>,
    v_strategy: &NormalStrategy,
    params: &LinesearchParams,
) -> Result<LinesearchOutcome, LinesearchError> {
    params.validate()?;
    let tx = op.evaluate(x)?;
    let mut alpha = params.sigma;
    for backtracks in 0..=params.max_backtracks {
        let z = set.project(&(x - (&tx + u * alpha) * alpha))?;
        let step = &z - x;
        if step.norm() <= STATIONARY_TOL {
            return Err(LinesearchError::MaxBacktracks {
                backtracks,
                stationary: true,
                last_trial: z,
            });
        }
        let v = set.normal_cone_sample(&z, v_strategy)?;
        let tz = op.evaluate(&z)?;
        let drift = (&tz - &tx + (&v - u) * alpha).norm();
        if alpha * drift <= params.delta * step.norm() {
            return Ok(LinesearchOutcome {
                alpha,
                z,
                v,
                backtracks,
            });
        }
        alpha *= params.theta;
    }
    let last = set.project(&(x - (&tx + u * alpha) * alpha))?;
    Err(LinesearchError::MaxBacktracks {
        backtracks: params.max_backtracks,
        stationary: false,
        last_trial: last,
    })
}

/// Backtracking along the feasible direction with fixed projection stepsize
/// `beta`: accepts once
/// `<T(alpha z + (1-alpha) x) + v, x - z> >= delta <T(x) + alpha u, x - z>`.
///
/// With `u = 0` the trial point `z = P_C(x - beta T(x))` is independent of
/// `alpha` and is computed once; with `u != 0` it is recomputed per backtrack.
pub fn linesearch_feasible(
    set: &FeasibleSet,
    op: &ViOperator,
    x: &DVector<f64>,
    u: &DVector<f64>,
    beta: f64,
    v_strategy: &NormalStrategy,
    params: &LinesearchParams,
) -> Result<LinesearchOutcome, LinesearchError> {
    params.validate()?;
    let tx = op.evaluate(x)?;
    let u_is_zero = u.norm() == 0.0;
    let mut alpha = 1.0;
    let mut z = set.project(&(x - (&tx + u * alpha) * beta))?;
    for backtracks in 0..=params.max_backtracks {
        if !u_is_zero && backtracks > 0 {
            z = set.project(&(x - (&tx + u * alpha) * beta))?;
        }
        let step = x - &z;
        if step.norm() <= STATIONARY_TOL {
            return Err(LinesearchError::MaxBacktracks {
                backtracks,
                stationary: true,
                last_trial: z,
            });
        }
        let xbar = &z * alpha + x * (1.0 - alpha);
        let v = set.normal_cone_sample(&xbar, v_strategy)?;
        let lhs = (op.evaluate(&xbar)? + &v).dot(&step);
        let rhs = params.delta * (&tx + u * alpha).dot(&step);
        if lhs >= rhs {
            return Ok(LinesearchOutcome {
                alpha,
                z,
                v,
                backtracks,
            });
        }
        alpha *= params.theta;
    }
    Err(LinesearchError::MaxBacktracks {
        backtracks: params.max_backtracks,
        stationary: false,
        last_trial: z,
    })
}
