//! Cyclic map verification, Picard-style iteration toward proximity pairs,
//! and the reduction of coupled two-variable maps to cyclic maps on a
//! product space.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{GeometryError, Norm, Point};
use crate::regions::{boundary_distance, corpus_region, Region, RegionError};

/// A contraction-style check passes when the worst observed violation stays
/// below this.
pub const CONTRACTION_TOL: f64 = 1e-9;

/// Slack used when asserting iterate bounds that hold exactly in theory.
const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("unknown map {0:?}")]
    UnknownMap(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("map left the expected set at step {step}: {detail}")]
    MapIntegrity { step: usize, detail: String },
    #[error(
        "iteration budget exhausted after {iterations} steps \
         (last proximity {last_proximity}, target {dist_ab})"
    )]
    BudgetExhausted {
        iterations: usize,
        last_proximity: f64,
        dist_ab: f64,
    },
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Which of the two sets a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    A,
    B,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Minimal metric-space abstraction so the same iteration and verification
/// code runs on plane points and on pairs of plane points.
pub trait Space {
    type Elem: Clone + PartialEq + std::fmt::Debug + Serialize;

    fn metric(&self, p: &Self::Elem, q: &Self::Elem) -> Result<f64, GeometryError>;
    fn describe(&self) -> String;
}

/// The plane under one of the planar norms.
#[derive(Debug, Clone, Copy)]
pub struct PlaneSpace {
    pub norm: Norm,
}

impl Space for PlaneSpace {
    type Elem = Point;

    fn metric(&self, p: &Point, q: &Point) -> Result<f64, GeometryError> {
        self.norm.metric(p, q)
    }

    fn describe(&self) -> String {
        format!("plane under {:?}", self.norm)
    }
}

/// Pairs of plane points under the sum metric rho(x,u) + rho(y,v).
#[derive(Debug, Clone, Copy)]
pub struct PairSpace {
    pub norm: Norm,
}

impl Space for PairSpace {
    type Elem = (Point, Point);

    fn metric(&self, p: &Self::Elem, q: &Self::Elem) -> Result<f64, GeometryError> {
        self.norm.sum_metric((&p.0, &p.1), (&q.0, &q.1))
    }

    fn describe(&self) -> String {
        format!("pairs under the sum metric of {:?}", self.norm)
    }
}

/// The contraction class a map is claimed to satisfy, with its constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ClaimedClass {
    BanachCyclic { k: f64 },
    SuzukiCyclic { lambda: f64 },
}

type ApplyFn<E> = Arc<dyn Fn(&E) -> Result<E, SolverError> + Send + Sync>;
type MemberFn<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;
type SampleFn<E> = Arc<dyn Fn(u64, usize) -> Result<Vec<E>, SolverError> + Send + Sync>;

/// A map T with T(A) inside B and T(B) inside A, bundled with membership
/// predicates and deterministic samplers for both sets.
pub struct CyclicMap<S: Space> {
    pub name: String,
    pub space: S,
    pub claimed: ClaimedClass,
    pub dist_ab: f64,
    pub apply: ApplyFn<S::Elem>,
    pub in_a: MemberFn<S::Elem>,
    pub in_b: MemberFn<S::Elem>,
    pub sample_a: SampleFn<S::Elem>,
    pub sample_b: SampleFn<S::Elem>,
}

impl<S: Space> CyclicMap<S> {
    pub fn image(&self, p: &S::Elem) -> Result<S::Elem, SolverError> {
        (self.apply)(p)
    }

    /// Side of a point, preferring A when the sets overlap.
    pub fn side_of(&self, p: &S::Elem) -> Option<Side> {
        if (self.in_a)(p) {
            Some(Side::A)
        } else if (self.in_b)(p) {
            Some(Side::B)
        } else {
            None
        }
    }

    fn member_of(&self, side: Side, p: &S::Elem) -> bool {
        match side {
            Side::A => (self.in_a)(p),
            Side::B => (self.in_b)(p),
        }
    }

    pub fn draw(&self, side: Side, seed: u64, n: usize) -> Result<Vec<S::Elem>, SolverError> {
        match side {
            Side::A => (self.sample_a)(seed, n),
            Side::B => (self.sample_b)(seed, n),
        }
    }
}

/// Result of probing the cyclic property on sampled points.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicCheck<E> {
    pub ok: bool,
    pub checked: usize,
    /// First point whose image landed outside the opposite set, with its
    /// image.
    pub violator: Option<(E, E)>,
}

/// Checks T(A) in B and T(B) in A on `samples` points per side.
pub fn verify_cyclic<S: Space>(
    map: &CyclicMap<S>,
    samples: usize,
    seed: u64,
) -> Result<CyclicCheck<S::Elem>, SolverError> {
    let mut checked = 0;
    for &(side, salt) in &[(Side::A, 0u64), (Side::B, 1u64)] {
        for p in map.draw(side, seed ^ salt, samples)? {
            if !map.member_of(side, &p) {
                return Err(SolverError::Precondition(format!(
                    "sampler for {:?} produced a non-member {:?}",
                    side, p
                )));
            }
            let q = map.image(&p)?;
            checked += 1;
            if !map.member_of(side.other(), &q) {
                return Ok(CyclicCheck {
                    ok: false,
                    checked,
                    violator: Some((p, q)),
                });
            }
        }
    }
    Ok(CyclicCheck {
        ok: true,
        checked,
        violator: None,
    })
}

/// Worst observed violation of a contraction-style inequality over sampled
/// cross pairs.
#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport<E> {
    pub max_violation: f64,
    pub worst_pair: Option<(E, E)>,
    pub checked: usize,
    pub ok: bool,
}

type PairList<E> = Vec<(E, E)>;

fn cross_pairs<S: Space>(
    map: &CyclicMap<S>,
    pair_samples: usize,
    seed: u64,
) -> Result<PairList<S::Elem>, SolverError> {
    let xs = map.draw(Side::A, seed, pair_samples)?;
    let ys = map.draw(Side::B, seed ^ 0x9e37_79b9_7f4a_7c15, pair_samples)?;
    Ok(xs.into_iter().zip(ys).collect())
}

fn contraction_scan<S: Space>(
    map: &CyclicMap<S>,
    pair_samples: usize,
    seed: u64,
    rhs: impl Fn(f64, f64, f64) -> f64,
) -> Result<ContractionReport<S::Elem>, SolverError> {
    let mut max_violation = f64::NEG_INFINITY;
    let mut worst_pair = None;
    let mut checked = 0;
    for (x, y) in cross_pairs(map, pair_samples, seed)? {
        let tx = map.image(&x)?;
        let ty = map.image(&y)?;
        let lhs = map.space.metric(&tx, &ty)?;
        let rho = map.space.metric(&x, &y)?;
        let prox_x = map.space.metric(&x, &tx)?;
        let prox_y = map.space.metric(&y, &ty)?;
        let v = lhs - rhs(rho, prox_x, prox_y);
        checked += 1;
        if v > max_violation {
            max_violation = v;
            worst_pair = Some((x, y));
        }
    }
    if checked == 0 {
        return Err(SolverError::Precondition(
            "no pairs sampled for the contraction check".into(),
        ));
    }
    Ok(ContractionReport {
        max_violation,
        worst_pair,
        checked,
        ok: max_violation <= CONTRACTION_TOL,
    })
}

/// Checks rho(Tx,Ty) <= k rho(x,y) + (1-k) dist on sampled cross pairs.
pub fn verify_contraction<S: Space>(
    map: &CyclicMap<S>,
    k: f64,
    pair_samples: usize,
    seed: u64,
) -> Result<ContractionReport<S::Elem>, SolverError> {
    if !(0.0..1.0).contains(&k) {
        return Err(SolverError::Precondition(format!(
            "contraction constant must lie in [0,1), got {k}"
        )));
    }
    let dist = map.dist_ab;
    contraction_scan(map, pair_samples, seed, move |rho, _, _| {
        k * rho + (1.0 - k) * dist
    })
}

/// Checks rho(Tx,Ty) <= lambda max(rho(x,y), rho(x,Tx), rho(y,Ty))
/// + (1-lambda) dist on sampled cross pairs.
pub fn verify_suzuki<S: Space>(
    map: &CyclicMap<S>,
    lambda: f64,
    pair_samples: usize,
    seed: u64,
) -> Result<ContractionReport<S::Elem>, SolverError> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(SolverError::Precondition(format!(
            "lambda must lie in [0,1), got {lambda}"
        )));
    }
    let dist = map.dist_ab;
    contraction_scan(map, pair_samples, seed, move |rho, px, py| {
        lambda * rho.max(px).max(py) + (1.0 - lambda) * dist
    })
}

/// Orbit of a cyclic map together with step sizes and proximity readings.
///
/// `gaps[i]` is rho(x_{i+1}, x_i); `proximities[i]` is rho(x_i, T x_i),
/// which coincides with `gaps[i]` because the orbit stores T x_i as the
/// next iterate.
#[derive(Debug, Clone, Serialize)]
pub struct IterationTrace<E> {
    pub iterates: Vec<E>,
    pub gaps: Vec<f64>,
    pub proximities: Vec<f64>,
    pub dist_ab: f64,
    pub tol: f64,
    pub converged: bool,
    pub limit_even: E,
    pub limit_odd: E,
}

impl<E> IterationTrace<E> {
    pub fn steps(&self) -> usize {
        self.iterates.len().saturating_sub(1)
    }
}

/// Runs x_{n+1} = T x_n from `x0` for up to `n_max` steps.
///
/// Stops early once the even-indexed subsequence settles: both the
/// oscillation rho(x_{2n}, x_{2n-2}) and the proximity defect
/// |rho(x_{2n}, T x_{2n}) - dist| must drop below `tol`. Passing
/// `tol = 0.0` disables the early stop and always runs the full budget.
pub fn iterate<S: Space>(
    map: &CyclicMap<S>,
    x0: &S::Elem,
    n_max: usize,
    tol: f64,
) -> Result<IterationTrace<S::Elem>, SolverError> {
    if n_max < 4 {
        return Err(SolverError::Precondition(format!(
            "n_max must be at least 4, got {n_max}"
        )));
    }
    if tol < 0.0 {
        return Err(SolverError::Precondition("tol must be nonnegative".into()));
    }
    let mut side = map.side_of(x0).ok_or_else(|| {
        SolverError::Precondition(format!("starting point {x0:?} lies in neither set"))
    })?;

    let mut iterates = vec![x0.clone()];
    let mut gaps: Vec<f64> = Vec::new();
    let mut converged = false;
    for n in 1..=n_max {
        let prev = iterates.last().expect("orbit is nonempty").clone();
        let next = map.image(&prev)?;
        side = side.other();
        if !map.member_of(side, &next) {
            return Err(SolverError::MapIntegrity {
                step: n,
                detail: format!("image {next:?} is not in {side:?}"),
            });
        }
        gaps.push(map.space.metric(&prev, &next)?);
        iterates.push(next);

        let m = iterates.len() - 1;
        if tol > 0.0 && m % 2 == 1 && m >= 3 {
            let even = m - 1;
            let osc = map.space.metric(&iterates[even], &iterates[even - 2])?;
            let defect = (gaps[even] - map.dist_ab).abs();
            if osc < tol && defect < tol {
                converged = true;
                break;
            }
        }
    }

    let last = iterates.len() - 1;
    let (even_idx, odd_idx) = if last % 2 == 0 {
        (last, last - 1)
    } else {
        (last - 1, last)
    };
    let proximities = gaps.clone();
    Ok(IterationTrace {
        limit_even: iterates[even_idx].clone(),
        limit_odd: iterates[odd_idx].clone(),
        iterates,
        gaps,
        proximities,
        dist_ab: map.dist_ab,
        tol,
        converged,
    })
}

/// A proximity pair produced by iteration, with its residual against the
/// target set distance.
#[derive(Debug, Clone, Serialize)]
pub struct ProximityCertificate<E> {
    pub point: E,
    pub companion: E,
    pub proximity: f64,
    pub dist_ab: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Iterates from `x0` and returns the settled even-subsequence point
/// together with its image and the achieved proximity.
pub fn best_proximity_point<S: Space>(
    map: &CyclicMap<S>,
    x0: &S::Elem,
    tol: f64,
    n_max: usize,
) -> Result<ProximityCertificate<S::Elem>, SolverError> {
    if tol <= 0.0 {
        return Err(SolverError::Precondition("tol must be positive".into()));
    }
    let trace = iterate(map, x0, n_max, tol)?;
    if !trace.converged {
        return Err(SolverError::BudgetExhausted {
            iterations: trace.steps(),
            last_proximity: trace.gaps.last().copied().unwrap_or(f64::NAN),
            dist_ab: map.dist_ab,
        });
    }
    let point = trace.limit_even.clone();
    let companion = map.image(&point)?;
    let proximity = map.space.metric(&point, &companion)?;
    let residual = (proximity - map.dist_ab).abs();
    Ok(ProximityCertificate {
        point,
        companion,
        proximity,
        dist_ab: map.dist_ab,
        residual,
        iterations: trace.steps(),
    })
}

/// Outcome of checking the orbit bounds implied by a lambda-style
/// contraction.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IterateBoundsReport {
    pub constant: f64,
    pub sup_gap_ok: bool,
    pub even_ok: bool,
    pub odd_ok: bool,
    /// Smallest slack (bound minus value) seen on the even-index bound.
    pub even_margin: f64,
    /// Smallest slack seen on the odd-index bound.
    pub odd_margin: f64,
    pub iterations: usize,
}

impl IterateBoundsReport {
    pub fn all_ok(&self) -> bool {
        self.sup_gap_ok && self.even_ok && self.odd_ok
    }
}

/// Verifies the orbit bounds for a map satisfying the lambda inequality:
/// no step exceeds the first, even iterates stay within
/// (2 lambda + 1)/(1 - lambda) rho(x1,x0) + dist of x1, and odd iterates
/// satisfy the analogue against x2.
///
/// The inequality itself is verified on `pair_samples` cross pairs first;
/// a violation fails the precondition.
pub fn check_iterate_bounds<S: Space>(
    map: &CyclicMap<S>,
    x0: &S::Elem,
    lambda: f64,
    n_max: usize,
    pair_samples: usize,
    seed: u64,
) -> Result<IterateBoundsReport, SolverError> {
    let report = verify_suzuki(map, lambda, pair_samples, seed)?;
    if !report.ok {
        return Err(SolverError::Precondition(format!(
            "map violates the lambda inequality by {} on a sampled pair",
            report.max_violation
        )));
    }
    let trace = iterate(map, x0, n_max, 0.0)?;
    if trace.gaps.len() < 3 {
        return Err(SolverError::Precondition(
            "orbit too short to test iterate bounds".into(),
        ));
    }
    let c = (2.0 * lambda + 1.0) / (1.0 - lambda);
    let sup_gap_ok = trace.gaps.iter().all(|&g| g <= trace.gaps[0] + BOUND_SLACK);

    let even_bound = c * trace.gaps[0] + map.dist_ab;
    let odd_bound = c * trace.gaps[1] + map.dist_ab;
    let mut even_margin = f64::INFINITY;
    let mut odd_margin = f64::INFINITY;
    for (n, x) in trace.iterates.iter().enumerate() {
        if n >= 2 && n % 2 == 0 {
            let d = map.space.metric(x, &trace.iterates[1])?;
            even_margin = even_margin.min(even_bound - d);
        }
        if n >= 3 && n % 2 == 1 {
            let d = map.space.metric(x, &trace.iterates[2])?;
            odd_margin = odd_margin.min(odd_bound - d);
        }
    }
    Ok(IterateBoundsReport {
        constant: c,
        sup_gap_ok,
        even_ok: even_margin >= -BOUND_SLACK,
        odd_ok: odd_margin >= -BOUND_SLACK,
        even_margin,
        odd_margin,
        iterations: trace.steps(),
    })
}

type CoupledFn = Arc<dyn Fn(&Point, &Point) -> Result<Point, SolverError> + Send + Sync>;

/// A coupled pair of maps F: AxA -> B and G: BxB -> A claimed to satisfy
/// rho(F(x,y), F(u,v)) <= alpha rho(x,u) + beta rho(y,v)
/// + (1 - alpha - beta) dist, and the analogue for G.
pub struct CoupledMapDef {
    pub name: String,
    pub norm: Norm,
    pub alpha: f64,
    pub beta: f64,
    pub dist_ab: f64,
    pub f: CoupledFn,
    pub g: CoupledFn,
    pub region_a: Region,
    pub region_b: Region,
}

impl CoupledMapDef {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        norm: Norm,
        alpha: f64,
        beta: f64,
        dist_ab: f64,
        f: impl Fn(&Point, &Point) -> Result<Point, SolverError> + Send + Sync + 'static,
        g: impl Fn(&Point, &Point) -> Result<Point, SolverError> + Send + Sync + 'static,
        region_a: Region,
        region_b: Region,
    ) -> Result<Self, SolverError> {
        if !(alpha >= 0.0 && beta >= 0.0 && alpha + beta < 1.0) {
            return Err(SolverError::Precondition(format!(
                "coupled constants must satisfy alpha, beta >= 0 and \
                 alpha + beta < 1, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(CoupledMapDef {
            name: name.to_string(),
            norm,
            alpha,
            beta,
            dist_ab,
            f: Arc::new(f),
            g: Arc::new(g),
            region_a,
            region_b,
        })
    }
}

fn pair_sampler(region: &Region) -> SampleFn<(Point, Point)> {
    let region = region.clone();
    Arc::new(move |seed, n| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = region.sample(&mut rng, 2 * n)?;
        Ok(pts
            .chunks_exact(2)
            .map(|c| (c[0].clone(), c[1].clone()))
            .collect())
    })
}

/// Builds the cyclic map (x,y) -> (F(x,y), F(y,x)) on AxA and
/// (u,v) -> (G(u,v), G(v,u)) on BxB, over the pair space with the sum
/// metric. Its contraction constant is alpha + beta and the set distance
/// doubles.
pub fn coupled_to_cyclic(def: &CoupledMapDef) -> CyclicMap<PairSpace> {
    let ra = def.region_a.clone();
    let rb = def.region_b.clone();
    let (f, g) = (def.f.clone(), def.g.clone());
    let (in_a, in_b) = (def.region_a.clone(), def.region_b.clone());
    let apply = move |p: &(Point, Point)| -> Result<(Point, Point), SolverError> {
        let (x, y) = p;
        if ra.contains(x) && ra.contains(y) {
            Ok((f(x, y)?, f(y, x)?))
        } else if rb.contains(x) && rb.contains(y) {
            Ok((g(x, y)?, g(y, x)?))
        } else {
            Err(SolverError::Domain(format!(
                "pair {p:?} lies in neither {} x {} nor {} x {}",
                ra.name, ra.name, rb.name, rb.name
            )))
        }
    };
    CyclicMap {
        name: format!("{} as cyclic", def.name),
        space: PairSpace { norm: def.norm },
        claimed: ClaimedClass::BanachCyclic {
            k: def.alpha + def.beta,
        },
        dist_ab: 2.0 * def.dist_ab,
        apply: Arc::new(apply),
        in_a: Arc::new(move |p: &(Point, Point)| in_a.contains(&p.0) && in_a.contains(&p.1)),
        in_b: Arc::new(move |p: &(Point, Point)| in_b.contains(&p.0) && in_b.contains(&p.1)),
        sample_a: pair_sampler(&def.region_a),
        sample_b: pair_sampler(&def.region_b),
    }
}

/// A coupled proximity solution: the settled pair in AxA, its image pair in
/// BxB, and the residual of the summed proximity against twice the set
/// distance.
#[derive(Debug, Clone, Serialize)]
pub struct CoupledSolution {
    pub pair_a: (Point, Point),
    pub pair_b: (Point, Point),
    pub proximity: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Solves the coupled problem by iterating the associated cyclic map from
/// `(x0, y0)`.
pub fn coupled_solve(
    def: &CoupledMapDef,
    x0: &Point,
    y0: &Point,
    tol: f64,
    n_max: usize,
) -> Result<CoupledSolution, SolverError> {
    let cyc = coupled_to_cyclic(def);
    let cert = best_proximity_point(&cyc, &(x0.clone(), y0.clone()), tol, n_max)?;
    Ok(CoupledSolution {
        pair_a: cert.point,
        pair_b: cert.companion,
        proximity: cert.proximity,
        residual: cert.residual,
        iterations: cert.iterations,
    })
}

pub fn map_names() -> &'static [&'static str] {
    &["example49"]
}

pub fn coupled_names() -> &'static [&'static str] {
    &["coupled49"]
}

fn ln_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// The reflection map between the region above y = 1/x and the region below
/// its shifted copy: points of A go to (-d/2, -d/2) and points of B to
/// (1 + d/2, 1 + d/2), where d is the max-norm distance to the own frontier
/// curve.
fn example49_map() -> Result<CyclicMap<PlaneSpace>, SolverError> {
    let norm = Norm::LInf;
    let a = corpus_region("ex49_A")?;
    let b = corpus_region("ex49_B")?;
    let abar = corpus_region("ex43_Abar")?;
    let bbar = corpus_region("ex49_Bbar")?;

    let (ma, mb) = (a.clone(), b.clone());
    let apply = move |p: &Point| -> Result<Point, SolverError> {
        if ma.contains(p) {
            let d = boundary_distance(norm, p, &abar.boundary);
            Ok(Point::planar(-d / 2.0, -d / 2.0))
        } else if mb.contains(p) {
            let d = boundary_distance(norm, p, &bbar.boundary);
            Ok(Point::planar(1.0 + d / 2.0, 1.0 + d / 2.0))
        } else {
            Err(SolverError::Domain(format!(
                "{p:?} lies in neither set of the example49 pair"
            )))
        }
    };

    let sample_a = |seed: u64, n: usize| -> Result<Vec<Point>, SolverError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let p = match out.len() % 3 {
                0 => {
                    let x = ln_uniform(&mut rng, 1e-2, 1e2);
                    Point::planar(x, 1.0 / x)
                }
                1 => {
                    let u: f64 = rng.gen_range(0.0..0.5);
                    let v: f64 = rng.gen_range(0.0..0.5);
                    Point::planar(1.0 + u, 1.0 + v)
                }
                _ => {
                    let x: f64 = rng.gen_range(0.05..20.0);
                    let e: f64 = rng.gen_range(0.0..20.0);
                    Point::planar(x, 1.0 / x + e)
                }
            };
            out.push(p);
        }
        Ok(out)
    };
    let sample_b = |seed: u64, n: usize| -> Result<Vec<Point>, SolverError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let p = match out.len() % 4 {
                0 => {
                    let x = ln_uniform(&mut rng, 1e-2, 1e2) - 1.0;
                    Point::planar(x, 1.0 / (x + 1.0) - 1.0)
                }
                1 => {
                    let u: f64 = rng.gen_range(0.0..0.5);
                    let v: f64 = rng.gen_range(0.0..0.5);
                    Point::planar(-u, -v)
                }
                2 => {
                    let x: f64 = rng.gen_range(-0.9..20.0);
                    let e: f64 = rng.gen_range(0.0..20.0);
                    Point::planar(x, (1.0 / (x + 1.0) - 1.0) - e)
                }
                _ => {
                    let x: f64 = rng.gen_range(-30.0..-1.0);
                    let y: f64 = rng.gen_range(-5.0..5.0);
                    Point::planar(x, y)
                }
            };
            out.push(p);
        }
        Ok(out)
    };

    Ok(CyclicMap {
        name: "example49".to_string(),
        space: PlaneSpace { norm },
        claimed: ClaimedClass::BanachCyclic { k: 0.5 },
        dist_ab: 1.0,
        apply: Arc::new(apply),
        in_a: {
            let a = a.clone();
            Arc::new(move |p: &Point| a.contains(p))
        },
        in_b: {
            let b = b.clone();
            Arc::new(move |p: &Point| b.contains(p))
        },
        sample_a: Arc::new(sample_a),
        sample_b: Arc::new(sample_b),
    })
}

/// Named maps used by the command line and the test corpus.
pub fn corpus_map(name: &str) -> Result<CyclicMap<PlaneSpace>, SolverError> {
    match name {
        "example49" => example49_map(),
        other => Err(SolverError::UnknownMap(other.to_string())),
    }
}

/// Named coupled maps. `coupled49` averages the example49 map over both
/// arguments: F(x,y) = (Tx + Ty)/2 with alpha = beta = 1/4.
pub fn corpus_coupled(name: &str) -> Result<CoupledMapDef, SolverError> {
    match name {
        "coupled49" => {
            let t = Arc::new(corpus_map("example49")?);
            let avg = move |x: &Point, y: &Point| -> Result<Point, SolverError> {
                let tx = t.image(x)?;
                let ty = t.image(y)?;
                Ok(tx.midpoint(&ty)?)
            };
            CoupledMapDef::new(
                "coupled49",
                Norm::LInf,
                0.25,
                0.25,
                1.0,
                avg.clone(),
                avg,
                corpus_region("ex49_A")?,
                corpus_region("ex49_B")?,
            )
        }
        other => Err(SolverError::UnknownMap(other.to_string())),
    }
}
