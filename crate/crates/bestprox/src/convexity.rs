//! Moduli of convexity and convexity-style set checks.
//!
//! The modulus estimators parametrize sphere points by boundary angle and
//! run a coarse grid followed by window-shrinking local refinement. The
//! reported value is the minimum over all evaluated pairs, hence an upper
//! bound on the true modulus; `bound` is the coarse-grid Lipschitz slack
//! (the norm is 1-Lipschitz in each angle), so the estimate overestimates
//! the true infimum by at most `bound`.
//!
//! The set checks sample point pairs from a region and measure midpoints:
//! distance to the declared frontier for the uniform-convexity check, and
//! ball inclusion with a phi-dependent radius for the pointwise variant.
//! Unbounded regions are always probed through their clip box, which the
//! reports carry; uniformity over the unclipped set is a strictly stronger
//! reading that sampling cannot certify.

use crate::geometry::{GeometryError, Norm, Point};
use crate::regions::{self, Box2, Region, RegionError, BOUNDARY_GUARD};
use crate::search;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::cell::Cell;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Slack on the chord constraint `||x - y|| >= eps`. Without it the
/// feasible set at eps = 2 collapses to exact antipodal pairs, which a
/// float grid hits only by luck.
pub const FEASIBILITY_SLACK: f64 = 1e-12;

const MIN_MODULUS_BUDGET: usize = 64;

/// Midpoints closer to the frontier than this are treated as sitting on
/// it and get confirmed with a tiny-ball escape probe.
const ETA_FLOOR: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ConvexityError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn planar_norm_guard(norm: Norm) -> Result<(), ConvexityError> {
    match norm {
        Norm::ProductL2OfLp => Err(ConvexityError::Domain(
            "modulus estimation supports planar norms only".into(),
        )),
        _ => Ok(()),
    }
}

fn epsilon_guard(epsilon: f64) -> Result<(), ConvexityError> {
    if epsilon > 0.0 && epsilon <= 2.0 {
        Ok(())
    } else {
        Err(ConvexityError::Domain(format!(
            "epsilon must lie in (0, 2], got {epsilon}"
        )))
    }
}

fn modulus_grid_size(budget: usize) -> Result<usize, ConvexityError> {
    if budget < MIN_MODULUS_BUDGET {
        return Err(ConvexityError::Domain(format!(
            "budget {budget} below the minimum of {MIN_MODULUS_BUDGET}"
        )));
    }
    Ok((budget.clamp(MIN_MODULUS_BUDGET, 256) / 8) * 8)
}

/// One modulus estimate.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusEstimate {
    pub epsilon: f64,
    pub value: f64,
    /// Coarse-grid coverage slack: the true infimum is at least
    /// `value - bound`.
    pub bound: f64,
    pub witness: (Point, Point),
    pub budget_used: usize,
}

/// Estimate of the modulus of convexity at `epsilon`.
///
/// Both sphere points are parametrized by angle; the infimum of
/// `1 - ||(x+y)/2||` over chords of length at least `epsilon` is attained
/// on the sphere for the norms supported here. The value is clamped at 0.
pub fn modulus_of_convexity(
    norm: Norm,
    epsilon: f64,
    budget: usize,
) -> Result<ModulusEstimate, ConvexityError> {
    planar_norm_guard(norm)?;
    epsilon_guard(epsilon)?;
    let n = modulus_grid_size(budget)?;
    let evals = Cell::new(0usize);
    let obj = |a: f64, b: f64| -> Option<f64> {
        evals.set(evals.get() + 1);
        let x = regions::unit_direction(norm, a).ok()?;
        let y = regions::unit_direction(norm, b).ok()?;
        let chord = norm.metric(&x, &y).ok()?;
        if chord < epsilon - FEASIBILITY_SLACK {
            return None;
        }
        let mid = x.midpoint(&y).ok()?;
        Some(1.0 - norm.eval(&mid).ok()?)
    };
    let mut cells = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = TAU * i as f64 / n as f64;
            let b = TAU * j as f64 / n as f64;
            if let Some(v) = obj(a, b) {
                cells.push((v, a, b));
            }
        }
    }
    if cells.is_empty() {
        return Err(ConvexityError::Domain(format!(
            "no feasible sphere pair at epsilon {epsilon}"
        )));
    }
    let values: Vec<f64> = cells.iter().map(|c| c.0).collect();
    let cell = TAU / n as f64;
    let mut best: Option<(f64, f64, f64)> = None;
    for idx in search::best_k(&values, 8) {
        let (_, a0, b0) = cells[idx];
        if let Some((a, b, v)) = search::shrink_refine_2d(
            obj,
            (a0, b0),
            (cell, cell),
            (-TAU, 2.0 * TAU),
            (-TAU, 2.0 * TAU),
            48,
            4,
        ) {
            if best.is_none_or(|(bv, ..)| v < bv) {
                best = Some((v, a, b));
            }
        }
    }
    let (v, a, b) = best.expect("feasible refinement from a feasible grid");
    Ok(ModulusEstimate {
        epsilon,
        value: v.max(0.0),
        bound: 2.0 * cell,
        witness: (
            regions::unit_direction(norm, a)?,
            regions::unit_direction(norm, b)?,
        ),
        budget_used: evals.get(),
    })
}

/// Modulus of convexity restricted to chords parallel to `z`.
///
/// Parametrizes `x` on the sphere by angle and the chord by the scalar
/// `lambda` in `x - y = lambda z`; the companion `y` only has to stay in
/// the ball.
pub fn directional_modulus(
    norm: Norm,
    z: &Point,
    epsilon: f64,
    budget: usize,
) -> Result<ModulusEstimate, ConvexityError> {
    planar_norm_guard(norm)?;
    epsilon_guard(epsilon)?;
    let n = modulus_grid_size(budget)?;
    let nz = norm.eval(z)?;
    if nz == 0.0 {
        return Err(ConvexityError::Domain(
            "direction must be a nonzero vector".into(),
        ));
    }
    let lambda_max = 2.0 / nz;
    let evals = Cell::new(0usize);
    let obj = |a: f64, lambda: f64| -> Option<f64> {
        evals.set(evals.get() + 1);
        let x = regions::unit_direction(norm, a).ok()?;
        if lambda.abs() * nz < epsilon - FEASIBILITY_SLACK {
            return None;
        }
        let y = x.sub(&z.scale(lambda)).ok()?;
        if norm.eval(&y).ok()? > 1.0 + BOUNDARY_GUARD {
            return None;
        }
        let mid = x.sub(&z.scale(lambda / 2.0)).ok()?;
        Some(1.0 - norm.eval(&mid).ok()?)
    };
    let mut cells = Vec::new();
    for i in 0..n {
        for j in 0..=n {
            let a = TAU * i as f64 / n as f64;
            let lambda = -lambda_max + 2.0 * lambda_max * j as f64 / n as f64;
            if let Some(v) = obj(a, lambda) {
                cells.push((v, a, lambda));
            }
        }
    }
    if cells.is_empty() {
        return Err(ConvexityError::Domain(format!(
            "no feasible chord parallel to {z} at epsilon {epsilon}"
        )));
    }
    let values: Vec<f64> = cells.iter().map(|c| c.0).collect();
    let cell_a = TAU / n as f64;
    let cell_l = 2.0 * lambda_max / n as f64;
    let mut best: Option<(f64, f64, f64)> = None;
    for idx in search::best_k(&values, 8) {
        let (_, a0, l0) = cells[idx];
        if let Some((a, l, v)) = search::shrink_refine_2d(
            obj,
            (a0, l0),
            (cell_a, cell_l),
            (-TAU, 2.0 * TAU),
            (-lambda_max, lambda_max),
            48,
            4,
        ) {
            if best.is_none_or(|(bv, ..)| v < bv) {
                best = Some((v, a, l));
            }
        }
    }
    let (v, a, l) = best.expect("feasible refinement from a feasible grid");
    let x = regions::unit_direction(norm, a)?;
    let y = x.sub(&z.scale(l))?;
    Ok(ModulusEstimate {
        epsilon,
        value: v.max(0.0),
        bound: cell_a + cell_l,
        witness: (x, y),
        budget_used: evals.get(),
    })
}

/// One row of a modulus curve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModulusPoint {
    pub epsilon: f64,
    pub delta: f64,
    pub bound: f64,
}

/// A sampled modulus curve, optionally restricted to one direction.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusCurve {
    pub norm: Norm,
    pub direction: Option<Point>,
    pub samples: Vec<ModulusPoint>,
    pub budget: usize,
}

/// Samples the modulus curve on `epsilon = 2 i / points`, `i = 1..=points`.
pub fn modulus_curve(
    norm: Norm,
    direction: Option<&Point>,
    points: usize,
    budget: usize,
) -> Result<ModulusCurve, ConvexityError> {
    if points == 0 {
        return Err(ConvexityError::Domain(
            "curve needs at least one point".into(),
        ));
    }
    let mut samples = Vec::with_capacity(points);
    for i in 1..=points {
        let epsilon = 2.0 * i as f64 / points as f64;
        let est = match direction {
            Some(z) => directional_modulus(norm, z, epsilon, budget)?,
            None => modulus_of_convexity(norm, epsilon, budget)?,
        };
        samples.push(ModulusPoint {
            epsilon,
            delta: est.value,
            bound: est.bound,
        });
    }
    Ok(ModulusCurve {
        norm,
        direction: direction.cloned(),
        samples,
        budget,
    })
}

impl ModulusCurve {
    /// Checks the curve invariants: epsilons strictly increasing, deltas
    /// within [0, 1], and nondecreasing up to 1e-9 slack.
    pub fn validate(&self) -> Result<(), ConvexityError> {
        for w in self.samples.windows(2) {
            if w[1].epsilon <= w[0].epsilon {
                return Err(ConvexityError::Domain(format!(
                    "epsilons not strictly increasing at {}",
                    w[1].epsilon
                )));
            }
            if w[1].delta < w[0].delta - 1e-9 {
                return Err(ConvexityError::Domain(format!(
                    "delta decreases at epsilon {}: {} -> {}",
                    w[1].epsilon, w[0].delta, w[1].delta
                )));
            }
        }
        for s in &self.samples {
            if !(0.0..=1.0).contains(&s.delta) {
                return Err(ConvexityError::Domain(format!(
                    "delta {} outside [0, 1] at epsilon {}",
                    s.delta, s.epsilon
                )));
            }
        }
        Ok(())
    }

    /// CSV export: a schema comment line, a header, one row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("# schema: 1\nepsilon,delta,bound\n");
        for s in &self.samples {
            out.push_str(&format!("{},{},{}\n", s.epsilon, s.delta, s.bound));
        }
        out
    }
}

/// Per-epsilon outcome of the uniformly-convex-set check.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UcSetOutcome {
    /// Minimum midpoint-to-frontier distance over the qualifying pairs.
    /// `pairs = 0` means no sampled pair was separated by `epsilon`; the
    /// check is then vacuous and `eta` is 0 by convention.
    Eta {
        epsilon: f64,
        eta: f64,
        pairs: usize,
    },
    Counterexample {
        epsilon: f64,
        x: Point,
        y: Point,
        probe: Point,
    },
}

/// Samples pairs `x, y` with `||x - y|| >= epsilon` from the region (through
/// its clip box) and takes the minimum distance from their midpoints to the
/// declared frontier. A midpoint outside the region, or on the frontier with
/// an escaping tiny ball, is a counterexample; the first one in sample order
/// is reported.
pub fn check_uniformly_convex_set(
    norm: Norm,
    r: &Region,
    epsilons: &[f64],
    pair_budget: usize,
    seed: u64,
) -> Result<Vec<UcSetOutcome>, ConvexityError> {
    planar_norm_guard(norm)?;
    for &e in epsilons {
        if e <= 0.0 {
            return Err(ConvexityError::Domain(format!(
                "epsilons must be positive, got {e}"
            )));
        }
    }
    if r.boundary.is_empty() {
        return Err(ConvexityError::Region(RegionError::NotEstimable(
            r.name.clone(),
            "frontier distance needs a boundary parametrization".into(),
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = r.sample_mixed(&mut rng, (2 * pair_budget).max(16))?;
    let mut out = Vec::with_capacity(epsilons.len());
    'eps: for &epsilon in epsilons {
        let mut eta = f64::INFINITY;
        let mut pairs = 0usize;
        for i in 0..pool.len() {
            for j in (i + 1)..pool.len() {
                if pairs == pair_budget {
                    break;
                }
                let (x, y) = (&pool[i], &pool[j]);
                if norm.metric(x, y)? < epsilon {
                    continue;
                }
                pairs += 1;
                let mid = x.midpoint(y)?;
                if !r.contains(&mid) {
                    out.push(UcSetOutcome::Counterexample {
                        epsilon,
                        x: x.clone(),
                        y: y.clone(),
                        probe: mid,
                    });
                    continue 'eps;
                }
                let d = regions::boundary_distance(norm, &mid, &r.boundary);
                if d <= ETA_FLOOR {
                    let probe =
                        regions::midpoint_ball_inclusion(norm, r, x, y, (2.0 * d).max(1e-6), 64)?;
                    if !probe.included {
                        out.push(UcSetOutcome::Counterexample {
                            epsilon,
                            x: x.clone(),
                            y: y.clone(),
                            probe: probe.violation.expect("escape reports its probe"),
                        });
                        continue 'eps;
                    }
                }
                eta = eta.min(d);
            }
        }
        if pairs == 0 {
            eta = 0.0;
        }
        out.push(UcSetOutcome::Eta {
            epsilon,
            eta,
            pairs,
        });
    }
    Ok(out)
}

/// Tail metadata for a phi function, used to argue about the unbounded
/// epsilon ray beyond the search cap.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhiTail {
    /// phi is nondecreasing in epsilon for epsilon beyond this threshold.
    pub monotone_increasing_beyond: Option<f64>,
    /// Pointwise limit of phi as epsilon grows, uniform over the region.
    pub limit_at_infinity: Option<f64>,
}

impl PhiTail {
    pub const UNKNOWN: PhiTail = PhiTail {
        monotone_increasing_beyond: None,
        limit_at_infinity: None,
    };
}

type PhiEval = Arc<dyn Fn(&Point, f64) -> Result<f64, GeometryError> + Send + Sync>;

/// A positive-valued function of a point and a separation scale.
#[derive(Clone)]
pub struct PhiFunction {
    pub name: String,
    pub norm: Norm,
    f: PhiEval,
    pub tail: PhiTail,
}

impl PhiFunction {
    pub fn new(
        name: &str,
        norm: Norm,
        f: impl Fn(&Point, f64) -> Result<f64, GeometryError> + Send + Sync + 'static,
        tail: PhiTail,
    ) -> Self {
        PhiFunction {
            name: name.to_string(),
            norm,
            f: Arc::new(f),
            tail,
        }
    }

    pub fn eval(&self, p: &Point, epsilon: f64) -> Result<f64, ConvexityError> {
        if epsilon <= 0.0 {
            return Err(ConvexityError::Domain(format!(
                "phi is defined for positive epsilon, got {epsilon}"
            )));
        }
        Ok((self.f)(p, epsilon)?)
    }
}

impl fmt::Debug for PhiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiFunction")
            .field("name", &self.name)
            .field("norm", &self.norm)
            .finish()
    }
}

/// The corpus phi: `eps^2 / (320 + 5 eps^2 + 5 ||x||^3)`, with the norm
/// chosen by the caller. Increasing in eps with limit 1/5.
pub fn corpus_phi(norm: Norm) -> PhiFunction {
    PhiFunction::new(
        "phi_corpus",
        norm,
        move |p, eps| {
            let n = norm.eval(p)?;
            Ok(eps * eps / (320.0 + 5.0 * eps * eps + 5.0 * n.powi(3)))
        },
        PhiTail {
            monotone_increasing_beyond: Some(0.0),
            limit_at_infinity: Some(0.2),
        },
    )
}

/// Result of the positive-property check.
#[derive(Debug, Clone, Serialize)]
pub struct PositiveReport {
    pub inf_estimate: f64,
    /// Best finite sample: the point and the epsilon realizing it.
    pub attained_at: (Point, f64),
    /// False when nothing constrains phi beyond `eps_cap`.
    pub conclusive: bool,
    pub eps_cap: f64,
    pub search_box: Box2,
}

/// Estimates `inf { phi(x, eps) : x in r within the box, eps >= epsilon0 }`.
///
/// The epsilon search is capped at twice the box diameter; the tail
/// metadata decides whether that cap is conclusive (monotone tail) and
/// contributes the limit as a candidate value when known.
pub fn check_positive_property(
    phi: &PhiFunction,
    r: &Region,
    bounded_box: Box2,
    epsilon0: f64,
    budget: usize,
) -> Result<PositiveReport, ConvexityError> {
    if epsilon0 <= 0.0 {
        return Err(ConvexityError::Domain(format!(
            "epsilon0 must be positive, got {epsilon0}"
        )));
    }
    if budget < 8 {
        return Err(ConvexityError::Domain(format!(
            "budget {budget} below the minimum of 8"
        )));
    }
    let eps_cap = (2.0 * bounded_box.diameter(phi.norm)?).max(epsilon0);
    let n = budget.clamp(16, 128);
    let in_scope = |x: f64, y: f64| {
        let p = Point::planar(x, y);
        if bounded_box.contains(x, y) && r.contains(&p) {
            Some(p)
        } else {
            None
        }
    };
    let eps_at = |k: usize| epsilon0 + (eps_cap - epsilon0) * k as f64 / n as f64;
    let mut best: Option<(f64, Point, f64)> = None;
    for i in 0..=n {
        for j in 0..=n {
            let x =
                bounded_box.x_min + (bounded_box.x_max - bounded_box.x_min) * i as f64 / n as f64;
            let y =
                bounded_box.y_min + (bounded_box.y_max - bounded_box.y_min) * j as f64 / n as f64;
            let Some(p) = in_scope(x, y) else { continue };
            for k in 0..=n {
                let eps = eps_at(k);
                let v = phi.eval(&p, eps)?;
                if best.as_ref().is_none_or(|(bv, ..)| v < *bv) {
                    best = Some((v, p.clone(), eps));
                }
            }
        }
    }
    let Some((mut v, mut p, mut eps)) = best else {
        return Err(ConvexityError::Precondition(format!(
            "box does not intersect region {}",
            r.name
        )));
    };
    let hx = (bounded_box.x_max - bounded_box.x_min) / n as f64;
    let hy = (bounded_box.y_max - bounded_box.y_min) / n as f64;
    if let Point::Planar(px, py) = p {
        let obj = |x: f64, y: f64| {
            let q = in_scope(x, y)?;
            phi.eval(&q, eps).ok()
        };
        if let Some((x, y, v2)) = search::shrink_refine_2d(
            obj,
            (px, py),
            (hx, hy),
            (bounded_box.x_min, bounded_box.x_max),
            (bounded_box.y_min, bounded_box.y_max),
            40,
            4,
        ) {
            if v2 < v {
                v = v2;
                p = Point::planar(x, y);
            }
        }
    }
    let (e2, v2) = search::golden_min(
        |e| phi.eval(&p, e).unwrap_or(f64::INFINITY),
        epsilon0,
        eps_cap,
        80,
    );
    if v2 < v {
        v = v2;
        eps = e2;
    }
    let tail_ok = phi
        .tail
        .monotone_increasing_beyond
        .is_some_and(|t| t <= eps_cap);
    let mut inf_estimate = v;
    if let Some(limit) = phi.tail.limit_at_infinity {
        inf_estimate = inf_estimate.min(limit);
    }
    Ok(PositiveReport {
        inf_estimate,
        attained_at: (p, eps),
        conclusive: tail_ok || phi.tail.limit_at_infinity.is_some(),
        eps_cap,
        search_box: bounded_box,
    })
}

/// A failed midpoint ball inclusion.
#[derive(Debug, Clone, Serialize)]
pub struct UcPhiFailure {
    pub x: Point,
    pub y: Point,
    pub midpoint: Point,
    pub radius: f64,
    pub probe: Point,
}

/// Outcome of the pointwise uniform-convexity check about phi.
#[derive(Debug, Clone, Serialize)]
pub struct UcPhiReport {
    pub pairs_checked: usize,
    pub skipped_equal: usize,
    pub failure: Option<UcPhiFailure>,
}

/// Samples pairs from the region, sets `eps = ||x - y||`, and verifies that
/// the ball around the midpoint with radius `phi(midpoint, eps)` stays in
/// the region. Pairs with `x = y` are skipped (zero separation is outside
/// phi's domain); the first failing pair in sample order is reported.
pub fn check_uc_about_phi(
    norm: Norm,
    r: &Region,
    phi: &PhiFunction,
    pair_budget: usize,
    probes: usize,
    seed: u64,
) -> Result<UcPhiReport, ConvexityError> {
    planar_norm_guard(norm)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool_n = ((2.0 * pair_budget as f64).sqrt().ceil() as usize + 2).max(24);
    let pool = r.sample_mixed(&mut rng, pool_n)?;
    let mut checked = 0usize;
    let mut skipped = 0usize;
    for i in 0..pool.len() {
        for j in (i + 1)..pool.len() {
            if checked == pair_budget {
                return Ok(UcPhiReport {
                    pairs_checked: checked,
                    skipped_equal: skipped,
                    failure: None,
                });
            }
            let (x, y) = (&pool[i], &pool[j]);
            if x == y {
                skipped += 1;
                continue;
            }
            let eps = norm.metric(x, y)?;
            let mid = x.midpoint(y)?;
            let radius = phi.eval(&mid, eps)?;
            let probe = regions::midpoint_ball_inclusion(norm, r, x, y, radius, probes)?;
            checked += 1;
            if !probe.included {
                return Ok(UcPhiReport {
                    pairs_checked: checked,
                    skipped_equal: skipped,
                    failure: Some(UcPhiFailure {
                        x: x.clone(),
                        y: y.clone(),
                        midpoint: mid,
                        radius,
                        probe: probe.violation.expect("escape reports its probe"),
                    }),
                });
            }
        }
    }
    Ok(UcPhiReport {
        pairs_checked: checked,
        skipped_equal: skipped,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::corpus_region;

    #[test]
    fn l2_modulus_matches_analytic_spots() {
        // At eps = 2 the chord slack costs sqrt(FEASIBILITY_SLACK) = 1e-6
        // in the value, so the endpoint gets the documented 1e-5 accuracy
        // target instead of the interior one.
        for (eps, tol) in [(0.5, 1e-6), (1.0, 1e-6), (1.5, 1e-6), (2.0, 1e-5)] {
            let est = modulus_of_convexity(Norm::L2, eps, 64).unwrap();
            let exact = 1.0 - (1.0 - eps * eps / 4.0).sqrt();
            assert!(
                (est.value - exact).abs() < tol,
                "eps {eps}: {} vs {exact}",
                est.value
            );
        }
    }

    #[test]
    fn flat_ball_moduli_vanish() {
        for norm in [Norm::L1, Norm::LInf] {
            for eps in [0.5, 1.0, 1.5] {
                let est = modulus_of_convexity(norm, eps, 64).unwrap();
                assert!(est.value <= 1e-9, "{norm} at {eps}: {}", est.value);
            }
        }
    }

    #[test]
    fn epsilon_domain_is_enforced() {
        assert!(matches!(
            modulus_of_convexity(Norm::L2, 0.0, 64),
            Err(ConvexityError::Domain(_))
        ));
        assert!(matches!(
            modulus_of_convexity(Norm::L2, 2.5, 64),
            Err(ConvexityError::Domain(_))
        ));
        assert!(matches!(
            modulus_of_convexity(Norm::L2, 1.0, 10),
            Err(ConvexityError::Domain(_))
        ));
        assert!(matches!(
            directional_modulus(Norm::L2, &Point::planar(0.0, 0.0), 1.0, 64),
            Err(ConvexityError::Domain(_))
        ));
    }

    #[test]
    fn directional_witnesses_on_the_linf_sphere() {
        let flat = directional_modulus(Norm::LInf, &Point::planar(0.0, 1.0), 1.0, 64).unwrap();
        assert!(flat.value <= 1e-9, "got {}", flat.value);
        let diag = directional_modulus(Norm::LInf, &Point::planar(1.0, 1.0), 1.0, 64).unwrap();
        assert!((diag.value - 0.5).abs() <= 1e-9, "got {}", diag.value);
    }

    #[test]
    fn directional_l2_is_rotation_invariant() {
        let base = modulus_of_convexity(Norm::L2, 1.0, 64).unwrap().value;
        for z in [Point::planar(1.0, 0.0), Point::planar(0.3, -0.9)] {
            let d = directional_modulus(Norm::L2, &z, 1.0, 64).unwrap().value;
            assert!((d - base).abs() < 1e-6, "direction {z}: {d} vs {base}");
        }
    }

    #[test]
    fn curve_validates_and_exports() {
        let curve = modulus_curve(Norm::L2, None, 6, 64).unwrap();
        curve.validate().unwrap();
        let csv = curve.to_csv();
        assert!(csv.starts_with("# schema: 1\nepsilon,delta,bound\n"));
        assert_eq!(csv.lines().count(), 2 + 6);
    }

    #[test]
    fn half_plane_produces_a_counterexample() {
        let hp = corpus_region("half_plane_upper").unwrap();
        let out = check_uniformly_convex_set(Norm::L2, &hp, &[1.0], 40, 11).unwrap();
        assert!(matches!(out[0], UcSetOutcome::Counterexample { .. }));
    }

    #[test]
    fn restricted_hyperbola_region_has_positive_eta() {
        let r = corpus_region("ex43_A")
            .unwrap()
            .with_bounding_box(Box2::new(0.0, 10.0, -1e4, 1e4));
        let out = check_uniformly_convex_set(Norm::LInf, &r, &[1.0], 30, 5).unwrap();
        match &out[0] {
            UcSetOutcome::Eta { eta, pairs, .. } => {
                assert!(*pairs > 0);
                assert!(*eta > 0.0, "eta {eta}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn corpus_phi_spot_value() {
        let phi = corpus_phi(Norm::LInf);
        let v = phi.eval(&Point::planar(1.0, 0.25), 2.0).unwrap();
        assert!((v - 4.0 / 345.0).abs() < 1e-15);
        assert!(phi.eval(&Point::planar(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn positive_property_on_the_corpus_box() {
        let phi = corpus_phi(Norm::LInf);
        let r = corpus_region("ex43_A").unwrap();
        let report =
            check_positive_property(&phi, &r, Box2::new(0.0, 2.0, 0.0, 2.0), 2.0, 32).unwrap();
        assert!((report.inf_estimate - 4.0 / 380.0).abs() < 1e-9);
        assert!(report.conclusive);
        assert!(report.inf_estimate > 0.0);
    }

    #[test]
    fn positive_property_requires_intersection() {
        let phi = corpus_phi(Norm::LInf);
        let r = corpus_region("ex43_A").unwrap();
        let err = check_positive_property(&phi, &r, Box2::new(-5.0, -4.0, -5.0, -4.0), 1.0, 16);
        assert!(matches!(err, Err(ConvexityError::Precondition(_))));
    }

    #[test]
    fn uc_about_phi_flags_the_half_plane() {
        let phi = corpus_phi(Norm::L2);
        let hp = corpus_region("half_plane_upper").unwrap();
        let report = check_uc_about_phi(Norm::L2, &hp, &phi, 400, 64, 3).unwrap();
        let failure = report.failure.expect("boundary midpoints escape");
        assert!(failure.radius > 0.0);
        assert!(!hp.contains(&failure.probe));
    }

    #[test]
    fn uc_about_phi_passes_on_the_hyperbola_region() {
        let phi = corpus_phi(Norm::LInf);
        let r = corpus_region("ex43_A").unwrap();
        let report = check_uc_about_phi(Norm::LInf, &r, &phi, 300, 48, 9).unwrap();
        assert!(report.failure.is_none(), "failure {:?}", report.failure);
        assert_eq!(report.pairs_checked, 300);
    }
}
