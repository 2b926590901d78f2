//! Operators `T : R^n -> R^n` for variational inequality problems, plus the
//! rotation reference problem with its analytic solution.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::geometry::{FeasibleSet, GeometryError};

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("dimension mismatch: operator expects {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("declared Lipschitz constant {declared} is below the spectral norm estimate {estimate}")]
    LipschitzTooSmall { declared: f64, estimate: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

type CustomFn = Arc<dyn Fn(&DVector<f64>) -> DVector<f64> + Send + Sync>;

/// The map defining the variational inequality, with optional Lipschitz
/// metadata. Custom callables must be pure and reentrant.
#[derive(Clone)]
pub enum OperatorKind {
    /// `x -> A x + b`.
    Affine { a: DMatrix<f64>, b: DVector<f64> },
    /// Rotation by `angle` around `center`; with `shift` the operator is
    /// `R_{angle,center} - Id`.
    Rotation {
        angle: f64,
        center: DVector<f64>,
        shift: bool,
    },
    Custom { f: CustomFn, dim: usize },
}

#[derive(Clone)]
pub struct ViOperator {
    pub kind: OperatorKind,
    pub lipschitz: Option<f64>,
}

impl fmt::Debug for ViOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OperatorKind::Affine { a, b } => f
                .debug_struct("Affine")
                .field("a", a)
                .field("b", b)
                .field("lipschitz", &self.lipschitz)
                .finish(),
            OperatorKind::Rotation {
                angle,
                center,
                shift,
            } => f
                .debug_struct("Rotation")
                .field("angle", angle)
                .field("center", center)
                .field("shift", shift)
                .field("lipschitz", &self.lipschitz)
                .finish(),
            OperatorKind::Custom { dim, .. } => f
                .debug_struct("Custom")
                .field("dim", dim)
                .field("lipschitz", &self.lipschitz)
                .finish(),
        }
    }
}

/// Power-iteration estimate of the spectral norm of `A`.
fn spectral_norm_estimate(a: &DMatrix<f64>) -> f64 {
    let n = a.ncols();
    let ata = a.transpose() * a;
    let mut v = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut lambda = 0.0;
    for _ in 0..200 {
        let w = &ata * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm;
        v = w / norm;
    }
    lambda.sqrt()
}

impl ViOperator {
    /// An affine operator. A declared Lipschitz constant must dominate a
    /// power-iteration estimate of `||A||_2`.
    pub fn affine(
        a: DMatrix<f64>,
        b: DVector<f64>,
        lipschitz: Option<f64>,
    ) -> Result<Self, OperatorError> {
        if a.nrows() != b.len() {
            return Err(OperatorError::Dimension {
                expected: a.nrows(),
                got: b.len(),
            });
        }
        if let Some(declared) = lipschitz {
            let estimate = spectral_norm_estimate(&a);
            // small slack for the power-iteration error
            if declared < estimate * (1.0 - 1e-9) {
                return Err(OperatorError::LipschitzTooSmall { declared, estimate });
            }
        }
        Ok(Self {
            kind: OperatorKind::Affine { a, b },
            lipschitz,
        })
    }

    pub fn rotation(angle: f64, center: DVector<f64>, shift: bool, lipschitz: Option<f64>) -> Self {
        Self {
            kind: OperatorKind::Rotation {
                angle,
                center,
                shift,
            },
            lipschitz,
        }
    }

    /// Custom operators carry no verified metadata.
    pub fn custom(
        f: impl Fn(&DVector<f64>) -> DVector<f64> + Send + Sync + 'static,
        dim: usize,
        lipschitz: Option<f64>,
    ) -> Self {
        Self {
            kind: OperatorKind::Custom {
                f: Arc::new(f),
                dim,
            },
            lipschitz,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            OperatorKind::Affine { a, .. } => a.ncols(),
            OperatorKind::Rotation { center, .. } => center.len(),
            OperatorKind::Custom { dim, .. } => *dim,
        }
    }

    /// Evaluate `T(x)`.
    pub fn evaluate(&self, x: &DVector<f64>) -> Result<DVector<f64>, OperatorError> {
        if x.len() != self.dim() {
            return Err(OperatorError::Dimension {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(match &self.kind {
            OperatorKind::Affine { a, b } => a * x + b,
            OperatorKind::Rotation {
                angle,
                center,
                shift,
            } => {
                let (s, c) = angle.sin_cos();
                let d = x - center;
                let rotated = DVector::from_vec(vec![c * d[0] + s * d[1], -s * d[0] + c * d[1]])
                    + center;
                if *shift {
                    rotated - x
                } else {
                    rotated
                }
            }
            OperatorKind::Custom { f, .. } => f(x),
        })
    }
}

/// A constrained variational inequality: find `x* ∈ C` with
/// `<T(x*), x - x*> >= 0` for all `x ∈ C`.
#[derive(Debug, Clone)]
pub struct ViProblem {
    pub set: FeasibleSet,
    pub op: ViOperator,
    pub known_solution: Option<DVector<f64>>,
    pub name: String,
}

impl ViProblem {
    /// Natural residual `||x - P_C(x - beta T(x))||`; zero exactly at
    /// solutions.
    pub fn residual(&self, x: &DVector<f64>, beta: f64) -> Result<f64, OperatorError> {
        let violation = self.set.violation(x);
        if violation > crate::geometry::MEMBERSHIP_TOL {
            return Err(OperatorError::Geometry(GeometryError::NotInSet {
                point: x.iter().copied().collect(),
                violation,
            }));
        }
        let t = self.op.evaluate(x)?;
        let q = self.set.project(&(x - t * beta))?;
        Ok((x - q).norm())
    }
}

/// Parameter `t*` of the reference solution: the polar angle at which the
/// operator becomes antiparallel to the arc point.
pub fn reference_angle_example31() -> f64 {
    std::f64::consts::PI - (2.0 / 10.0f64.sqrt()).asin() + (1.0 / 10.0f64.sqrt()).asin()
}

/// Closed-form solution `(cos t*, sin t*)` of the reference problem.
pub fn reference_solution_example31() -> DVector<f64> {
    let t = reference_angle_example31();
    DVector::from_vec(vec![t.cos(), t.sin()])
}

/// The quarter-disc reference problem: `T = R_{-pi/2,(1/2,1)} - Id` on
/// `QuarterDisc`, Lipschitz constant 2 (the spectral norm of the affine part
/// is sqrt(2); 2 is the looser stated constant and is kept as metadata).
pub fn example31_problem() -> ViProblem {
    let a = DMatrix::from_row_slice(2, 2, &[-1.0, -1.0, 1.0, -1.0]);
    let b = DVector::from_vec(vec![1.5, 0.5]);
    let op = ViOperator::affine(a, b, Some(2.0)).expect("valid reference operator");
    ViProblem {
        set: FeasibleSet::QuarterDisc,
        op,
        known_solution: Some(reference_solution_example31()),
        name: "example31".to_string(),
    }
}
