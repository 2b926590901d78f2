//! Projection-based solvers for constrained variational inequality problems.
//!
//! The crate provides feasible-set geometry (exact and Dykstra projections,
//! normal-cone sampling), operator definitions with a closed-form reference
//! problem, two Armijo-style linesearches that incorporate normal vectors,
//! and iteration drivers: a constant-step conditional extragradient scheme,
//! two conceptual algorithms with three projection variants each, and the
//! classical extragradient baselines they generalize.

pub mod geometry;
pub mod linesearch;
pub mod operators;
pub mod solvers;

pub use geometry::{FeasibleSet, GeometryError, Halfspace, NormalMode, NormalStrategy};
pub use linesearch::{
    linesearch_boundary, linesearch_feasible, LinesearchError, LinesearchOutcome, LinesearchParams,
};
pub use operators::{
    example31_problem, reference_angle_example31, reference_solution_example31, OperatorError,
    OperatorKind, ViOperator, ViProblem,
};
pub use solvers::{
    baseline_extragradient, build_halfspace_h, build_halfspace_w, cond_ext_step,
    conceptual_b_step, conceptual_f_step, solve, Algorithm, BaselineStrategy, BetaSchedule,
    IterateState, IterationRecord, ProjectionVariant, SolveReport, SolverConfig, SolverError,
    StepDiagnostics, Termination,
};
