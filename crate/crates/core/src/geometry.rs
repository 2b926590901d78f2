//! Closed convex sets with exact orthogonal projection, membership tests,
//! normal-cone sampling and projection onto finite intersections.

use nalgebra::DVector;
use thiserror::Error;

/// Default membership tolerance.
pub const MEMBERSHIP_TOL: f64 = 1e-10;
/// Threshold on |constraint value| below which a constraint counts as active
/// when sampling normal cones.
pub const ACTIVE_TOL: f64 = 1e-8;
/// Dykstra stopping tolerance on the successive-iterate change.
pub const DYKSTRA_TOL: f64 = 1e-10;
/// Dykstra iteration cap; exceeding it signals an empty or ill-conditioned
/// intersection.
pub const DYKSTRA_MAX_ITER: usize = 200_000;
/// Relative cycle-movement level separating "slow but convergent" from
/// "disjoint sets" when the Dykstra iteration cap is hit.
pub const DYKSTRA_ACCEPT_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("point {point:?} is not in the set (violation {violation:.3e})")]
    NotInSet { point: Vec<f64>, violation: f64 },
    #[error("Dykstra failed to converge within {max_iter} iterations (last change {last_change:.3e}); intersection may be empty")]
    Divergence { max_iter: usize, last_change: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// Closed halfspace `{ y : <a, y> <= b }`.
///
/// The degenerate case `a = 0, b = 0` denotes all of R^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub a: DVector<f64>,
    pub b: f64,
}

impl Halfspace {
    /// `a` with `||a|| <= 1e-14` collapses to the degenerate whole-space case.
    pub fn new(a: DVector<f64>, b: f64) -> Self {
        if a.norm() <= 1e-14 {
            Self::whole_space(a.len())
        } else {
            Self { a, b }
        }
    }

    /// The degenerate halfspace equal to all of R^n.
    pub fn whole_space(dim: usize) -> Self {
        Self {
            a: DVector::zeros(dim),
            b: 0.0,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a.iter().all(|&c| c == 0.0)
    }

    pub fn contains(&self, y: &DVector<f64>, tol: f64) -> bool {
        self.is_degenerate() || self.a.dot(y) <= self.b + tol
    }

    /// Exact projection: identity inside, otherwise the closed-form
    /// hyperplane step `p - ((<a,p> - b)/||a||^2) a`.
    pub fn project(&self, p: &DVector<f64>) -> DVector<f64> {
        if self.is_degenerate() {
            return p.clone();
        }
        let excess = self.a.dot(p) - self.b;
        if excess <= 0.0 {
            p.clone()
        } else {
            p - &self.a * (excess / self.a.norm_squared())
        }
    }
}

/// How `normal_cone_sample` picks an element of the (possibly multi-generator)
/// normal cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormalMode {
    Zero,
    UnitOutward,
    ScaledOutward(f64),
}

/// A sampling mode together with the magnitude cap `M`; every returned vector
/// `v` satisfies `||v|| <= M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalStrategy {
    pub mode: NormalMode,
    pub cap: f64,
}

impl NormalStrategy {
    pub fn zero() -> Self {
        Self {
            mode: NormalMode::Zero,
            cap: 0.0,
        }
    }

    pub fn unit(cap: f64) -> Self {
        Self {
            mode: NormalMode::UnitOutward,
            cap,
        }
    }

    pub fn scaled(magnitude: f64, cap: f64) -> Self {
        Self {
            mode: NormalMode::ScaledOutward(magnitude),
            cap,
        }
    }
}

/// A nonempty closed convex set with exact projection.
#[derive(Debug, Clone)]
pub enum FeasibleSet {
    /// `{ x : lo <= x <= hi }` componentwise.
    Box { lo: DVector<f64>, hi: DVector<f64> },
    /// `{ x : ||x - center|| <= radius }`.
    Ball { center: DVector<f64>, radius: f64 },
    Halfspace(Halfspace),
    /// `{ x : A x <= b }` rowwise. Projection goes through Dykstra over the
    /// row halfspaces.
    Polyhedron { a: nalgebra::DMatrix<f64>, b: DVector<f64> },
    /// Nonemptiness is the caller's obligation; emptiness surfaces as a
    /// `Divergence` error at projection time.
    Intersection(Vec<FeasibleSet>),
    /// `Ball(0,1) ∩ {x1 <= 0} ∩ {x2 >= 0}` in R^2, with a closed-form
    /// projection fast path.
    QuarterDisc,
}

impl FeasibleSet {
    pub fn quarter_disc_members() -> Vec<FeasibleSet> {
        vec![
            FeasibleSet::Ball {
                center: DVector::zeros(2),
                radius: 1.0,
            },
            FeasibleSet::Halfspace(Halfspace::new(DVector::from_vec(vec![1.0, 0.0]), 0.0)),
            FeasibleSet::Halfspace(Halfspace::new(DVector::from_vec(vec![0.0, -1.0]), 0.0)),
        ]
    }

    /// Constructor-level nonemptiness checks: `lo <= hi` for boxes,
    /// `radius > 0` for balls.
    pub fn validate(&self) -> Result<(), GeometryError> {
        match self {
            FeasibleSet::Box { lo, hi } => {
                if lo.len() != hi.len() {
                    return Err(GeometryError::Dimension {
                        expected: lo.len(),
                        got: hi.len(),
                    });
                }
                for i in 0..lo.len() {
                    if lo[i] > hi[i] {
                        return Err(GeometryError::NotInSet {
                            point: lo.iter().copied().collect(),
                            violation: lo[i] - hi[i],
                        });
                    }
                }
                Ok(())
            }
            FeasibleSet::Ball { radius, .. } => {
                if *radius > 0.0 {
                    Ok(())
                } else {
                    Err(GeometryError::NotInSet {
                        point: vec![],
                        violation: -radius,
                    })
                }
            }
            FeasibleSet::Intersection(members) => {
                for m in members {
                    m.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            FeasibleSet::Box { lo, .. } => Some(lo.len()),
            FeasibleSet::Ball { center, .. } => Some(center.len()),
            FeasibleSet::Halfspace(h) => Some(h.a.len()),
            FeasibleSet::Polyhedron { a, .. } => Some(a.ncols()),
            FeasibleSet::Intersection(members) => members.iter().find_map(|m| m.dim()),
            FeasibleSet::QuarterDisc => Some(2),
        }
    }

    /// Largest constraint violation at `p`; `<= 0` means membership.
    pub fn violation(&self, p: &DVector<f64>) -> f64 {
        match self {
            FeasibleSet::Box { lo, hi } => (0..lo.len())
                .map(|i| (lo[i] - p[i]).max(p[i] - hi[i]))
                .fold(f64::NEG_INFINITY, f64::max),
            FeasibleSet::Ball { center, radius } => (p - center).norm() - radius,
            FeasibleSet::Halfspace(h) => {
                if h.is_degenerate() {
                    f64::NEG_INFINITY
                } else {
                    h.a.dot(p) - h.b
                }
            }
            FeasibleSet::Polyhedron { a, b } => (0..a.nrows())
                .map(|i| a.row(i).transpose().dot(p) - b[i])
                .fold(f64::NEG_INFINITY, f64::max),
            FeasibleSet::Intersection(members) => members
                .iter()
                .map(|m| m.violation(p))
                .fold(f64::NEG_INFINITY, f64::max),
            FeasibleSet::QuarterDisc => (p.norm() - 1.0).max(p[0]).max(-p[1]),
        }
    }

    /// True iff every defining constraint holds within `tol`.
    pub fn contains(&self, p: &DVector<f64>, tol: f64) -> bool {
        self.violation(p) <= tol
    }

    /// Exact orthogonal projection of `p` onto the set.
    ///
    /// `Intersection` and `Polyhedron` delegate to [`dykstra_project`];
    /// `QuarterDisc` uses the clip-then-rescale case analysis (exact because
    /// the quadrant is a cone and the ball is centered at the origin).
    pub fn project(&self, p: &DVector<f64>) -> Result<DVector<f64>, GeometryError> {
        match self {
            FeasibleSet::Box { lo, hi } => Ok(DVector::from_fn(lo.len(), |i, _| {
                p[i].clamp(lo[i], hi[i])
            })),
            FeasibleSet::Ball { center, radius } => {
                let d = p - center;
                let n = d.norm();
                if n <= *radius {
                    Ok(p.clone())
                } else {
                    Ok(center + d * (*radius / n))
                }
            }
            FeasibleSet::Halfspace(h) => Ok(h.project(p)),
            FeasibleSet::Polyhedron { a, b } => {
                let rows: Vec<FeasibleSet> = (0..a.nrows())
                    .map(|i| {
                        FeasibleSet::Halfspace(Halfspace::new(a.row(i).transpose(), b[i]))
                    })
                    .collect();
                dykstra_project(&rows, p, DYKSTRA_TOL, DYKSTRA_MAX_ITER)
            }
            FeasibleSet::Intersection(members) => {
                dykstra_project(members, p, DYKSTRA_TOL, DYKSTRA_MAX_ITER)
            }
            FeasibleSet::QuarterDisc => {
                let mut q = DVector::from_vec(vec![p[0].min(0.0), p[1].max(0.0)]);
                let n = q.norm();
                if n > 1.0 {
                    q /= n;
                }
                Ok(q)
            }
        }
    }

    /// Sample an element of the normal cone `N_C(x)` under `strategy`.
    ///
    /// Interior points and the `Zero` mode return the zero vector. Polyhedral
    /// pieces contribute their active-row normals; ball boundaries contribute
    /// the outward radial direction; multi-generator corners return the
    /// normalized sum of active generators.
    pub fn normal_cone_sample(
        &self,
        x: &DVector<f64>,
        strategy: &NormalStrategy,
    ) -> Result<DVector<f64>, GeometryError> {
        let violation = self.violation(x);
        if violation > MEMBERSHIP_TOL {
            return Err(GeometryError::NotInSet {
                point: x.iter().copied().collect(),
                violation,
            });
        }
        let zero = DVector::zeros(x.len());
        if matches!(strategy.mode, NormalMode::Zero) || strategy.cap == 0.0 {
            return Ok(zero);
        }
        let d = self.active_generator_sum(x);
        let norm = d.norm();
        if norm <= 1e-14 {
            return Ok(zero);
        }
        let magnitude = match strategy.mode {
            NormalMode::Zero => unreachable!(),
            NormalMode::UnitOutward => 1.0f64.min(strategy.cap),
            NormalMode::ScaledOutward(m) => m.min(strategy.cap),
        };
        Ok(d * (magnitude / norm))
    }

    /// Sum of unit generators of the active constraints at `x`; zero in the
    /// interior.
    fn active_generator_sum(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut d = DVector::zeros(x.len());
        match self {
            FeasibleSet::Box { lo, hi } => {
                for i in 0..lo.len() {
                    if x[i] >= hi[i] - ACTIVE_TOL {
                        d[i] += 1.0;
                    }
                    if x[i] <= lo[i] + ACTIVE_TOL {
                        d[i] -= 1.0;
                    }
                }
            }
            FeasibleSet::Ball { center, radius } => {
                let r = x - center;
                let n = r.norm();
                if n >= radius - ACTIVE_TOL && n > 0.0 {
                    d += r / n;
                }
            }
            FeasibleSet::Halfspace(h) => {
                if !h.is_degenerate() {
                    let n = h.a.norm();
                    if h.a.dot(x) >= h.b - ACTIVE_TOL * n {
                        d += &h.a / n;
                    }
                }
            }
            FeasibleSet::Polyhedron { a, b } => {
                for i in 0..a.nrows() {
                    let row = a.row(i).transpose();
                    let n = row.norm();
                    if n > 0.0 && row.dot(x) >= b[i] - ACTIVE_TOL * n {
                        d += row / n;
                    }
                }
            }
            FeasibleSet::Intersection(members) => {
                for m in members {
                    d += m.active_generator_sum(x);
                }
            }
            FeasibleSet::QuarterDisc => {
                if x.norm() >= 1.0 - ACTIVE_TOL {
                    d += x.normalize();
                }
                if x[0] >= -ACTIVE_TOL {
                    d[0] += 1.0;
                }
                if x[1] <= ACTIVE_TOL {
                    d[1] -= 1.0;
                }
            }
        }
        d
    }
}

/// Dykstra's alternating-projection scheme for `P_{∩ sets}(p)`.
///
/// Stops when the total iterate movement within a full cycle drops below
/// `tol`; the result is snapped by one final sequential pass of the member
/// projections. (End-of-cycle displacement alone is not a valid criterion:
/// for disjoint sets the iterate revisits the same point every cycle while
/// moving by the gap distance inside it.) Exceeding `max_iter` cycles yields
/// `Divergence` (empty or ill-conditioned intersection).
pub fn dykstra_project(
    sets: &[FeasibleSet],
    p: &DVector<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<DVector<f64>, GeometryError> {
    if sets.is_empty() {
        return Ok(p.clone());
    }
    if sets.len() == 1 {
        return sets[0].project(p);
    }
    let mut x = p.clone();
    let mut corrections: Vec<DVector<f64>> = vec![DVector::zeros(p.len()); sets.len()];
    let mut last_change = f64::INFINITY;
    for _ in 0..max_iter {
        let mut cycle_movement = 0.0;
        for (set, correction) in sets.iter().zip(corrections.iter_mut()) {
            let shifted = &x + &*correction;
            let projected = set.project(&shifted)?;
            *correction = shifted - &projected;
            cycle_movement += (&projected - &x).norm();
            x = projected;
        }
        last_change = cycle_movement;
        if last_change <= tol {
            break;
        }
    }
    // A persistent large cycle movement means the sets are disjoint (the
    // iterate keeps hopping across the gap); a small residual movement is
    // plain slow convergence (nearly tangential sets) and the iterate is
    // still a valid approximation.
    if last_change > DYKSTRA_ACCEPT_TOL * (1.0 + p.norm()) {
        return Err(GeometryError::Divergence {
            max_iter,
            last_change,
        });
    }
    // one final clip to stop feasibility drift
    for set in sets {
        x = set.project(&x)?;
    }
    Ok(x)
}

/// Doubling steps used to bracket a multiplier root.
const MULTIPLIER_BRACKET_STEPS: usize = 60;
/// Bisection refinements once the root is bracketed.
const MULTIPLIER_BISECT_STEPS: usize = 110;
/// Constraint-violation slack accepted from the multiplier solve before
/// falling back to Dykstra.
const MULTIPLIER_FEAS_TOL: f64 = 1e-11;

/// `g(lambda) = <a, P_set(p - lambda a)> - b`, the (nonincreasing) constraint
/// value of the single-halfspace KKT system.
fn halfspace_multiplier_value(
    set: &FeasibleSet,
    h: &Halfspace,
    p: &DVector<f64>,
    lambda: f64,
) -> Result<(f64, DVector<f64>), GeometryError> {
    let x = set.project(&(p - &h.a * lambda))?;
    Ok((h.a.dot(&x) - h.b, x))
}

/// Projection of `p` onto `set ∩ h` by bisection on the multiplier of `h`.
///
/// Monotonicity of the constraint value in the multiplier follows from the
/// monotonicity of the projection operator, so plain bracketing plus
/// bisection finds the root. Returns `None` when the constraint cannot be
/// satisfied along this multiplier direction (empty intersection or an
/// unbounded bracket).
fn project_with_one_halfspace(
    set: &FeasibleSet,
    h: &Halfspace,
    p: &DVector<f64>,
) -> Result<Option<DVector<f64>>, GeometryError> {
    if h.is_degenerate() {
        return Ok(Some(set.project(p)?));
    }
    let scale = 1.0 + p.norm();
    let (g0, x0) = halfspace_multiplier_value(set, h, p, 0.0)?;
    if g0 <= MULTIPLIER_FEAS_TOL * scale {
        return Ok(Some(x0));
    }
    let mut lo = 0.0;
    let mut hi = 1.0 / h.a.norm_squared();
    let mut bracketed = false;
    for _ in 0..MULTIPLIER_BRACKET_STEPS {
        let (g, _) = halfspace_multiplier_value(set, h, p, hi)?;
        if g <= 0.0 {
            bracketed = true;
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    if !bracketed {
        return Ok(None);
    }
    for _ in 0..MULTIPLIER_BISECT_STEPS {
        let mid = 0.5 * (lo + hi);
        let (g, _) = halfspace_multiplier_value(set, h, p, mid)?;
        if g > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // `hi` is on the feasible side of the bracket
    let (_, x) = halfspace_multiplier_value(set, h, p, hi)?;
    Ok(Some(x))
}

/// Exact projection of `p` onto `set ∩ h1 ∩ ... ∩ hm` for up to two
/// halfspaces, via nested bisection on the KKT multipliers; larger counts and
/// failed multiplier solves fall back to [`dykstra_project`].
///
/// Plain Dykstra converges sublinearly when the halfspace boundary meets the
/// set nearly tangentially — exactly the geometry produced by separating
/// halfspaces near a solution — so the variant projections use this instead.
pub fn project_with_halfspaces(
    set: &FeasibleSet,
    halfspaces: &[Halfspace],
    p: &DVector<f64>,
) -> Result<DVector<f64>, GeometryError> {
    let active: Vec<&Halfspace> = halfspaces.iter().filter(|h| !h.is_degenerate()).collect();
    let scale = 1.0 + p.norm();
    let feasible = |x: &DVector<f64>| {
        active
            .iter()
            .all(|h| h.a.dot(x) - h.b <= 1e3 * MULTIPLIER_FEAS_TOL * scale)
    };

    let exact = match active.as_slice() {
        [] => Some(set.project(p)?),
        [h] => project_with_one_halfspace(set, h, p)?,
        [h1, h2] => {
            // outer bisection on h2's multiplier; the inner solve clamps
            // h1's multiplier at zero, so the pair covers every active set
            let mut result = None;
            'orders: for (first, second) in [(h1, h2), (h2, h1)] {
                let inner = |mu: f64| -> Result<Option<(f64, DVector<f64>)>, GeometryError> {
                    let shifted = p - &second.a * mu;
                    match project_with_one_halfspace(set, first, &shifted)? {
                        Some(x) => Ok(Some((second.a.dot(&x) - second.b, x))),
                        None => Ok(None),
                    }
                };
                let Some((g0, x0)) = inner(0.0)? else {
                    continue;
                };
                if g0 <= MULTIPLIER_FEAS_TOL * scale {
                    result = Some(x0);
                    break;
                }
                let mut lo = 0.0;
                let mut hi = 1.0 / second.a.norm_squared();
                let mut bracketed = false;
                for _ in 0..MULTIPLIER_BRACKET_STEPS {
                    let Some((g, _)) = inner(hi)? else {
                        continue 'orders;
                    };
                    if g <= 0.0 {
                        bracketed = true;
                        break;
                    }
                    lo = hi;
                    hi *= 2.0;
                }
                if !bracketed {
                    continue;
                }
                for _ in 0..MULTIPLIER_BISECT_STEPS {
                    let mid = 0.5 * (lo + hi);
                    let Some((g, _)) = inner(mid)? else {
                        continue 'orders;
                    };
                    if g > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                if let Some((_, x)) = inner(hi)? {
                    result = Some(x);
                    break;
                }
            }
            result
        }
        _ => None,
    };

    if let Some(x) = exact {
        if feasible(&x) {
            return Ok(x);
        }
    }
    let mut members: Vec<FeasibleSet> = vec![set.clone()];
    members.extend(active.iter().map(|h| FeasibleSet::Halfspace((*h).clone())));
    dykstra_project(&members, p, DYKSTRA_TOL, DYKSTRA_MAX_ITER)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2(x: f64, y: f64) -> DVector<f64> {
        DVector::from_vec(vec![x, y])
    }

    #[test]
    fn quarter_disc_projection_cases() {
        let c = FeasibleSet::QuarterDisc;
        // interior point is a fixed point
        let p = v2(-0.5, 0.5);
        assert_eq!(c.project(&p).unwrap(), p);
        // only the ball is active: radial scaling
        let p = v2(-0.125, 1.125);
        let q = c.project(&p).unwrap();
        let expected = &p / p.norm();
        assert!((q - &expected).norm() < 1e-12);
        assert!((expected[0] + 0.11043).abs() < 1e-4);
        assert!((expected[1] - 0.99389).abs() < 1e-4);
        // only x1 <= 0 is active: clip the first coordinate
        let q = c.project(&v2(0.5, 0.5)).unwrap();
        assert!((q - v2(0.0, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn quarter_disc_membership() {
        let c = FeasibleSet::QuarterDisc;
        assert!(c.contains(&v2(0.0, 1.0), 1e-12));
        assert!(!c.contains(&v2(0.1, 0.5), 1e-12));
        let ball = FeasibleSet::Ball {
            center: DVector::zeros(2),
            radius: 1.0,
        };
        assert!(ball.contains(&v2(1.0 + 1e-10, 0.0), 1e-9));
    }

    #[test]
    fn normal_cone_samples() {
        let c = FeasibleSet::QuarterDisc;
        let unit = NormalStrategy::unit(1.0);
        // interior point
        let v = c.normal_cone_sample(&v2(-0.5, 0.5), &unit).unwrap();
        assert_eq!(v, DVector::zeros(2));
        // arc point: outward unit normal of the circle is the point itself
        let t = 2.7786f64;
        let x = v2(t.cos(), t.sin());
        let v = c.normal_cone_sample(&x, &unit).unwrap();
        assert!((v - &x).norm() < 1e-8);
        // corner (0,1): normalized sum of (1,0) and (0,1)
        let v = c.normal_cone_sample(&v2(0.0, 1.0), &unit).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        assert!((v - v2(s, s)).norm() < 1e-12);
    }

    #[test]
    fn normal_cone_rejects_outside_points() {
        let c = FeasibleSet::QuarterDisc;
        let err = c
            .normal_cone_sample(&v2(0.5, 0.5), &NormalStrategy::unit(1.0))
            .unwrap_err();
        assert!(matches!(err, GeometryError::NotInSet { .. }));
    }

    #[test]
    fn normal_cone_respects_cap() {
        let c = FeasibleSet::QuarterDisc;
        let strategy = NormalStrategy::scaled(5.0, 2.0);
        let v = c.normal_cone_sample(&v2(0.0, 1.0), &strategy).unwrap();
        assert!((v.norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn halfspace_projection_cases() {
        let h = Halfspace::new(v2(1.0, 0.0), 0.0);
        assert_eq!(h.project(&v2(2.0, 3.0)), v2(0.0, 3.0));
        let degenerate = Halfspace::whole_space(2);
        assert_eq!(degenerate.project(&v2(5.0, -7.0)), v2(5.0, -7.0));
        let diag = Halfspace::new(v2(1.0, 1.0), 0.0);
        assert!((diag.project(&v2(1.0, 1.0)) - v2(0.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn degenerate_halfspace_normalizes() {
        let h = Halfspace::new(v2(1e-16, 0.0), 3.0);
        assert!(h.is_degenerate());
        assert!(h.contains(&v2(100.0, 100.0), 0.0));
    }

    #[test]
    fn dykstra_cases() {
        // third quadrant: analytic projection is the componentwise min with 0
        let sets = vec![
            FeasibleSet::Halfspace(Halfspace::new(v2(1.0, 0.0), 0.0)),
            FeasibleSet::Halfspace(Halfspace::new(v2(0.0, 1.0), 0.0)),
        ];
        let q = dykstra_project(&sets, &v2(1.0, 1.0), DYKSTRA_TOL, DYKSTRA_MAX_ITER).unwrap();
        assert!((q - v2(0.0, 0.0)).norm() < 1e-8);

        // halfspace already satisfied: radial projection onto the ball
        let sets = vec![
            FeasibleSet::Ball {
                center: DVector::zeros(2),
                radius: 1.0,
            },
            FeasibleSet::Halfspace(Halfspace::new(v2(1.0, 0.0), 0.0)),
        ];
        let q = dykstra_project(&sets, &v2(0.0, 2.0), DYKSTRA_TOL, DYKSTRA_MAX_ITER).unwrap();
        assert!((q - v2(0.0, 1.0)).norm() < 1e-8);

        // single-set identity on an interior point
        let sets = vec![FeasibleSet::QuarterDisc];
        let p = v2(-0.3, 0.3);
        assert_eq!(
            dykstra_project(&sets, &p, DYKSTRA_TOL, DYKSTRA_MAX_ITER).unwrap(),
            p
        );
    }

    #[test]
    fn dykstra_detects_empty_intersection() {
        let sets = vec![
            FeasibleSet::Halfspace(Halfspace::new(v2(1.0, 0.0), -1.0)),
            FeasibleSet::Halfspace(Halfspace::new(v2(-1.0, 0.0), -1.0)),
        ];
        let err = dykstra_project(&sets, &v2(0.0, 0.0), 1e-10, 500).unwrap_err();
        assert!(matches!(err, GeometryError::Divergence { .. }));
    }

    #[test]
    fn box_constructor_rejects_crossed_bounds() {
        let bad = FeasibleSet::Box {
            lo: v2(1.0, 0.0),
            hi: v2(0.0, 1.0),
        };
        assert!(bad.validate().is_err());
    }
}
