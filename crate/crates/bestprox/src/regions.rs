//! Named sets, membership, boundary parametrizations, and distances.
//!
//! Every set the rest of the crate talks about lives in one catalog here,
//! keyed by name. A region carries an exact membership predicate, zero or
//! more smooth boundary pieces (polygon edges count as pieces), a clip box
//! for sampling and search, and an optional custom sampler for the
//! product-space sets.
//!
//! Distance estimation is deterministic: coarse grids over the boundary
//! parameters followed by golden-section refinement, with the running best
//! recorded per budget level. Estimates are always realized by concrete
//! member pairs, so they overestimate the true infimum by at most the final
//! refinement resolution.

use crate::geometry::{GeometryError, Norm, Point};
use crate::search;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::cell::Cell;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Closed norm-ball membership keeps a hair of relative slack so points
/// constructed to lie exactly on the sphere survive final-ulp rounding.
pub const BOUNDARY_GUARD: f64 = 1e-12;

/// Membership tolerance for the curve regions (sets written with equality).
pub const CURVE_TOL: f64 = 1e-9;

/// Parameter window for hyperbola-style boundary pieces. The lower end
/// bounds how far toward the asymptote estimation reaches.
const HYPERBOLA_T_LO: f64 = 1e-9;
const PARAM_T_HI: f64 = 1e4;

#[derive(Debug, Error)]
pub enum RegionError {
    #[error("unknown region {0:?}")]
    UnknownRegion(String),
    #[error("region {0} is not estimable: {1}")]
    NotEstimable(String, String),
    #[error("sampling budget exhausted for {region}: wanted {requested}, accepted {accepted}")]
    SamplingBudget {
        region: String,
        requested: usize,
        accepted: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget {0} below the minimum of {1}")]
    BadBudget(usize, usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Axis-aligned clip window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Box2 {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Box2 {
    pub const DEFAULT: Box2 = Box2 {
        x_min: -1e4,
        x_max: 1e4,
        y_min: -1e4,
        y_max: 1e4,
    };

    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Box2 {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }

    /// Diameter of the box under a planar norm (max over the two diagonals).
    pub fn diameter(&self, norm: Norm) -> Result<f64, GeometryError> {
        let d1 = norm.metric(
            &Point::planar(self.x_min, self.y_min),
            &Point::planar(self.x_max, self.y_max),
        )?;
        let d2 = norm.metric(
            &Point::planar(self.x_min, self.y_max),
            &Point::planar(self.x_max, self.y_min),
        )?;
        Ok(d1.max(d2))
    }
}

/// One smooth boundary piece, parametrized over `[t_lo, t_hi]`.
#[derive(Clone)]
pub struct BoundaryPiece {
    pub t_lo: f64,
    pub t_hi: f64,
    map: Arc<dyn Fn(f64) -> Point + Send + Sync>,
}

impl BoundaryPiece {
    pub fn new(t_lo: f64, t_hi: f64, map: impl Fn(f64) -> Point + Send + Sync + 'static) -> Self {
        BoundaryPiece {
            t_lo,
            t_hi,
            map: Arc::new(map),
        }
    }

    pub fn at(&self, t: f64) -> Point {
        (self.map)(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointShape {
    Planar,
    Blocks,
}

type MembershipFn = Arc<dyn Fn(&Point) -> bool + Send + Sync>;
type SamplerFn = Arc<dyn Fn(&mut ChaCha8Rng, usize) -> Vec<Point> + Send + Sync>;

/// A named set.
#[derive(Clone)]
pub struct Region {
    pub name: String,
    pub description: String,
    pub shape: PointShape,
    membership: MembershipFn,
    pub boundary: Vec<BoundaryPiece>,
    pub bounding_box: Box2,
    pub figure_reconstruction: bool,
    sampler: Option<SamplerFn>,
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Region")
            .field("name", &self.name)
            .field("shape", &self.shape)
            .field("pieces", &self.boundary.len())
            .finish()
    }
}

impl Region {
    pub fn new(
        name: &str,
        description: &str,
        shape: PointShape,
        membership: impl Fn(&Point) -> bool + Send + Sync + 'static,
    ) -> Self {
        Region {
            name: name.to_string(),
            description: description.to_string(),
            shape,
            membership: Arc::new(membership),
            boundary: Vec::new(),
            bounding_box: Box2::DEFAULT,
            figure_reconstruction: false,
            sampler: None,
        }
    }

    pub fn with_piece(
        mut self,
        t_lo: f64,
        t_hi: f64,
        map: impl Fn(f64) -> Point + Send + Sync + 'static,
    ) -> Self {
        self.boundary.push(BoundaryPiece::new(t_lo, t_hi, map));
        self
    }

    pub fn with_bounding_box(mut self, b: Box2) -> Self {
        self.bounding_box = b;
        self
    }

    pub fn with_figure_flag(mut self) -> Self {
        self.figure_reconstruction = true;
        self
    }

    pub fn with_sampler(
        mut self,
        sampler: impl Fn(&mut ChaCha8Rng, usize) -> Vec<Point> + Send + Sync + 'static,
    ) -> Self {
        self.sampler = Some(Arc::new(sampler));
        self
    }

    pub fn contains(&self, p: &Point) -> bool {
        (self.membership)(p)
    }

    /// Interior sample by rejection over the bounding box (or the custom
    /// sampler when one is attached). Deterministic in the passed RNG.
    pub fn sample(&self, rng: &mut ChaCha8Rng, budget: usize) -> Result<Vec<Point>, RegionError> {
        if let Some(s) = &self.sampler {
            return Ok(s(rng, budget));
        }
        if self.shape != PointShape::Planar {
            return Err(RegionError::NotEstimable(
                self.name.clone(),
                "no sampler for a non-planar region".into(),
            ));
        }
        let b = self.bounding_box;
        let mut out = Vec::with_capacity(budget);
        let cap = budget.saturating_mul(10_000).max(10_000);
        for _ in 0..cap {
            if out.len() == budget {
                break;
            }
            let x = rng.gen_range(b.x_min..=b.x_max);
            let y = rng.gen_range(b.y_min..=b.y_max);
            let p = Point::planar(x, y);
            if self.contains(&p) {
                out.push(p);
            }
        }
        if out.len() < budget {
            return Err(RegionError::SamplingBudget {
                region: self.name.clone(),
                requested: budget,
                accepted: out.len(),
            });
        }
        Ok(out)
    }

    /// Half boundary samples (clipped to the box), half interior samples.
    /// Regions without a boundary fall back to interior sampling.
    pub fn sample_mixed(
        &self,
        rng: &mut ChaCha8Rng,
        budget: usize,
    ) -> Result<Vec<Point>, RegionError> {
        if self.boundary.is_empty() || self.shape != PointShape::Planar {
            return self.sample(rng, budget);
        }
        let n_boundary = budget / 2;
        let mut out = Vec::with_capacity(budget);
        let cap = n_boundary.saturating_mul(1_000).max(1_000);
        for _ in 0..cap {
            if out.len() == n_boundary {
                break;
            }
            let piece = &self.boundary[rng.gen_range(0..self.boundary.len())];
            let t = rng.gen_range(piece.t_lo..=piece.t_hi);
            let p = piece.at(t);
            if let Point::Planar(x, y) = p {
                if self.bounding_box.contains(x, y) && self.contains(&p) {
                    out.push(p);
                }
            }
        }
        let rest = self.sample(rng, budget - out.len())?;
        out.extend(rest);
        Ok(out)
    }
}

/// Result of a distance estimation run.
///
/// `refinement_history` holds `(budget_level, best_value_so_far)` rows and
/// is nonincreasing in the value by construction; `argmin_pair` realizes
/// `value` with concrete member points.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceEstimate {
    pub value: f64,
    pub argmin_pair: (Point, Point),
    pub budget_used: usize,
    pub refinement_history: Vec<(usize, f64)>,
}

const MIN_BUDGET: usize = 8;

fn budget_levels(budget: usize) -> Vec<usize> {
    let mut levels = vec![];
    let mut b = MIN_BUDGET;
    while b < budget {
        levels.push(b);
        b *= 2;
    }
    levels.push(budget);
    levels
}

/// Distance from a point to a region.
///
/// Member points short-circuit to zero. Otherwise the boundary pieces are
/// scanned on a coarse grid and refined by golden section around the best
/// starts; regions without a boundary fall back to a membership-filtered
/// grid over the bounding box.
pub fn point_to_set_distance(
    norm: Norm,
    p: &Point,
    region: &Region,
    budget: usize,
) -> Result<DistanceEstimate, RegionError> {
    if budget < MIN_BUDGET {
        return Err(RegionError::BadBudget(budget, MIN_BUDGET));
    }
    if region.contains(p) {
        return Ok(DistanceEstimate {
            value: 0.0,
            argmin_pair: (p.clone(), p.clone()),
            budget_used: 1,
            refinement_history: vec![(budget, 0.0)],
        });
    }
    let evals = Cell::new(0usize);
    let mut best: Option<(f64, Point)> = None;
    let mut history = Vec::new();
    for level in budget_levels(budget) {
        let got = if region.boundary.is_empty() {
            point_distance_membership_grid(norm, p, region, level, &evals)?
        } else {
            point_distance_boundary(norm, p, region, level, &evals)?
        };
        if best.as_ref().is_none_or(|(v, _)| got.0 < *v) {
            best = Some(got);
        }
        history.push((level, best.as_ref().unwrap().0));
    }
    let (value, q) = best.unwrap();
    Ok(DistanceEstimate {
        value,
        argmin_pair: (p.clone(), q),
        budget_used: evals.get(),
        refinement_history: history,
    })
}

fn point_distance_boundary(
    norm: Norm,
    p: &Point,
    region: &Region,
    budget: usize,
    evals: &Cell<usize>,
) -> Result<(f64, Point), RegionError> {
    let mut best: Option<(f64, Point)> = None;
    for piece in &region.boundary {
        let obj = |t: f64| {
            evals.set(evals.get() + 1);
            norm.metric(p, &piece.at(t)).unwrap_or(f64::INFINITY)
        };
        let n = (budget * 16).clamp(128, 2048);
        let scan = search::grid_scan(obj, piece.t_lo, piece.t_hi, n);
        let values: Vec<f64> = scan.iter().map(|&(_, v)| v).collect();
        let cell = (piece.t_hi - piece.t_lo) / n as f64;
        for i in search::best_k(&values, 8) {
            let (t0, _) = scan[i];
            let (t, v) = search::golden_min(
                obj,
                (t0 - cell).max(piece.t_lo),
                (t0 + cell).min(piece.t_hi),
                80,
            );
            if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                best = Some((v, piece.at(t)));
            }
        }
    }
    best.ok_or_else(|| RegionError::NotEstimable(region.name.clone(), "empty boundary scan".into()))
}

fn point_distance_membership_grid(
    norm: Norm,
    p: &Point,
    region: &Region,
    budget: usize,
    evals: &Cell<usize>,
) -> Result<(f64, Point), RegionError> {
    if region.shape != PointShape::Planar {
        return Err(RegionError::NotEstimable(
            region.name.clone(),
            "no boundary parametrization and not a planar region".into(),
        ));
    }
    let b = region.bounding_box;
    let obj = |x: f64, y: f64| {
        evals.set(evals.get() + 1);
        let q = Point::planar(x, y);
        if region.contains(&q) {
            norm.metric(p, &q).ok()
        } else {
            None
        }
    };
    let n = (budget * 4).clamp(48, 256);
    let mut coarse = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let x = b.x_min + (b.x_max - b.x_min) * i as f64 / n as f64;
            let y = b.y_min + (b.y_max - b.y_min) * j as f64 / n as f64;
            if let Some(v) = obj(x, y) {
                coarse.push((v, x, y));
            }
        }
    }
    if coarse.is_empty() {
        return Err(RegionError::NotEstimable(
            region.name.clone(),
            "membership grid found no points in the bounding box".into(),
        ));
    }
    let values: Vec<f64> = coarse.iter().map(|c| c.0).collect();
    let hx = (b.x_max - b.x_min) / n as f64;
    let hy = (b.y_max - b.y_min) / n as f64;
    let mut best: Option<(f64, Point)> = None;
    for i in search::best_k(&values, 6) {
        let (_, cx, cy) = coarse[i];
        if let Some((x, y, v)) = search::shrink_refine_2d(
            obj,
            (cx, cy),
            (hx, hy),
            (b.x_min, b.x_max),
            (b.y_min, b.y_max),
            50,
            4,
        ) {
            if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                best = Some((v, Point::planar(x, y)));
            }
        }
    }
    Ok(best.unwrap())
}

/// Distance between two regions, estimated over their boundary pieces.
///
/// Per piece pair: a coarse parameter grid followed by coordinatewise
/// golden-section sweeps from the best cells. The corpus boundary pieces
/// are coordinatewise quasiconvex for the norms they are paired with, and
/// the multi-start covers mild violations; the estimate is realized by an
/// evaluated member pair either way.
pub fn set_distance(
    norm: Norm,
    a: &Region,
    b: &Region,
    budget: usize,
) -> Result<DistanceEstimate, RegionError> {
    if budget < MIN_BUDGET {
        return Err(RegionError::BadBudget(budget, MIN_BUDGET));
    }
    for r in [a, b] {
        if r.boundary.is_empty() {
            return Err(RegionError::NotEstimable(
                r.name.clone(),
                "set distance needs a boundary parametrization".into(),
            ));
        }
    }
    let evals = Cell::new(0usize);
    let mut best: Option<(f64, Point, Point)> = None;
    let mut history = Vec::new();
    for level in budget_levels(budget) {
        let got = set_distance_once(norm, a, b, level, &evals);
        if let Some(g) = got {
            if best.as_ref().is_none_or(|(v, _, _)| g.0 < *v) {
                best = Some(g);
            }
        }
        if let Some((v, _, _)) = &best {
            history.push((level, *v));
        }
    }
    let (value, pa, pb) = best.ok_or_else(|| {
        RegionError::NotEstimable(a.name.clone(), "boundary scan produced no values".into())
    })?;
    Ok(DistanceEstimate {
        value,
        argmin_pair: (pa, pb),
        budget_used: evals.get(),
        refinement_history: history,
    })
}

fn set_distance_once(
    norm: Norm,
    a: &Region,
    b: &Region,
    budget: usize,
    evals: &Cell<usize>,
) -> Option<(f64, Point, Point)> {
    let mut best: Option<(f64, f64, f64, &BoundaryPiece, &BoundaryPiece)> = None;
    for pa in &a.boundary {
        for pb in &b.boundary {
            let obj = |s: f64, t: f64| {
                evals.set(evals.get() + 1);
                norm.metric(&pa.at(s), &pb.at(t)).unwrap_or(f64::INFINITY)
            };
            let n = (budget * 4).clamp(32, 128);
            let mut cells = Vec::with_capacity((n + 1) * (n + 1));
            for i in 0..=n {
                for j in 0..=n {
                    let s = pa.t_lo + (pa.t_hi - pa.t_lo) * i as f64 / n as f64;
                    let t = pb.t_lo + (pb.t_hi - pb.t_lo) * j as f64 / n as f64;
                    cells.push((obj(s, t), s, t));
                }
            }
            let values: Vec<f64> = cells.iter().map(|c| c.0).collect();
            for idx in search::best_k(&values, 8) {
                let (_, mut s, mut t) = cells[idx];
                let mut v = f64::INFINITY;
                for _ in 0..16 {
                    let (s2, _) = search::golden_min(|u| obj(u, t), pa.t_lo, pa.t_hi, 60);
                    s = s2;
                    let (t2, v2) = search::golden_min(|u| obj(s, u), pb.t_lo, pb.t_hi, 60);
                    t = t2;
                    if (v - v2).abs() < 1e-15 {
                        v = v2;
                        break;
                    }
                    v = v2;
                }
                if best.as_ref().is_none_or(|(bv, ..)| v < *bv) {
                    best = Some((v, s, t, pa, pb));
                }
            }
        }
    }
    best.map(|(v, s, t, pa, pb)| (v, pa.at(s), pb.at(t)))
}

/// Lean boundary distance for hot paths (no history bookkeeping): coarse
/// grid per piece plus golden refinement around the best cells.
pub(crate) fn boundary_distance(norm: Norm, p: &Point, pieces: &[BoundaryPiece]) -> f64 {
    let mut best = f64::INFINITY;
    for piece in pieces {
        let obj = |t: f64| -> f64 { norm.metric(p, &piece.at(t)).unwrap_or(f64::INFINITY) };
        let n = 192;
        let scan = search::grid_scan(obj, piece.t_lo, piece.t_hi, n);
        let values: Vec<f64> = scan.iter().map(|&(_, v)| v).collect();
        let cell = (piece.t_hi - piece.t_lo) / n as f64;
        for i in search::best_k(&values, 3) {
            let (t0, _) = scan[i];
            let (_, v) = search::golden_min(
                obj,
                (t0 - cell).max(piece.t_lo),
                (t0 + cell).min(piece.t_hi),
                90,
            );
            best = best.min(v);
        }
    }
    best
}

/// Outcome of probing a norm ball for inclusion in a region.
#[derive(Debug, Clone, Serialize)]
pub struct BallProbe {
    pub included: bool,
    pub violation: Option<Point>,
    pub probes_used: usize,
}

/// Unit vector of the planar norm sphere in direction `theta`.
pub fn unit_direction(norm: Norm, theta: f64) -> Result<Point, GeometryError> {
    let v = Point::planar(theta.cos(), theta.sin());
    let n = norm.eval(&v)?;
    Ok(v.scale(1.0 / n))
}

/// Probes whether the `norm`-ball around the midpoint of `x` and `y` with
/// the given radius stays inside the region: a full ring on the sphere at
/// `radius` plus interior rings and the center. The first escaping probe is
/// reported.
pub fn midpoint_ball_inclusion(
    norm: Norm,
    region: &Region,
    x: &Point,
    y: &Point,
    radius: f64,
    probes: usize,
) -> Result<BallProbe, RegionError> {
    if !region.contains(x) || !region.contains(y) {
        return Err(RegionError::Precondition(format!(
            "ball endpoints must belong to {}",
            region.name
        )));
    }
    if radius.is_nan() || radius <= 0.0 {
        return Err(RegionError::Precondition(format!(
            "ball radius must be positive, got {radius}"
        )));
    }
    if region.shape != PointShape::Planar {
        return Err(RegionError::NotEstimable(
            region.name.clone(),
            "ball probing is planar-only".into(),
        ));
    }
    let mid = x.midpoint(y)?;
    let mut used = 0usize;
    let mut check = |q: Point| -> Option<Point> {
        used += 1;
        if region.contains(&q) {
            None
        } else {
            Some(q)
        }
    };
    if let Some(q) = check(mid.clone()) {
        return Ok(BallProbe {
            included: false,
            violation: Some(q),
            probes_used: used,
        });
    }
    let ring_n = (2 * probes / 3).max(8);
    let inner_n = (probes / 9).max(4);
    let rings: [(f64, usize); 4] = [
        (1.0, ring_n),
        (0.75, inner_n),
        (0.5, inner_n),
        (0.25, inner_n),
    ];
    for (frac, n) in rings {
        for i in 0..n {
            let theta = std::f64::consts::TAU * i as f64 / n as f64;
            let dir = unit_direction(norm, theta)?;
            let q = mid.add(&dir.scale(radius * frac))?;
            if let Some(bad) = check(q) {
                return Ok(BallProbe {
                    included: false,
                    violation: Some(bad),
                    probes_used: used,
                });
            }
        }
    }
    Ok(BallProbe {
        included: true,
        violation: None,
        probes_used: used,
    })
}

fn polyline_pieces(region: Region, vertices: &[(f64, f64)]) -> Region {
    let mut r = region;
    for w in vertices.windows(2) {
        let (ax, ay) = w[0];
        let (bx, by) = w[1];
        r = r.with_piece(0.0, 1.0, move |t| {
            Point::planar(ax + (bx - ax) * t, ay + (by - ay) * t)
        });
    }
    r
}

fn planar_xy(p: &Point) -> Option<(f64, f64)> {
    match p {
        Point::Planar(x, y) => Some((*x, *y)),
        Point::Blocks(..) => None,
    }
}

/// Names of every catalog region, in catalog order.
pub fn region_names() -> &'static [&'static str] {
    &[
        "ex15_A",
        "ex15_B",
        "ex15_C",
        "ex16_A",
        "ex16_B",
        "ex16_C",
        "ex43_A",
        "ex43_B",
        "ex43_Abar",
        "ex49_A",
        "ex49_B1",
        "ex49_B2",
        "ex49_B",
        "ex49_Bbar",
        "ex28_A",
        "ex28_B",
        "unit_ball_l1",
        "unit_ball_l2",
        "unit_ball_linf",
        "half_plane_upper",
        "bx_unit_ball",
        "shell_r2",
    ]
}

/// Builds a catalog region by name.
pub fn corpus_region(name: &str) -> Result<Region, RegionError> {
    let hyperbola = |t: f64| Point::planar(t, 1.0 / t);
    let shifted = |t: f64| Point::planar(t, 1.0 / (t + 1.0) - 1.0);
    let r = match name {
        "ex15_A" => polyline_pieces(
            Region::new(
                "ex15_A",
                "{(x,y): x in [0,1], |y| <= 1 - x}",
                PointShape::Planar,
                |p| {
                    planar_xy(p)
                        .map(|(x, y)| (0.0..=1.0).contains(&x) && y.abs() <= 1.0 - x)
                        .unwrap_or(false)
                },
            )
            .with_figure_flag()
            .with_bounding_box(Box2::new(0.0, 1.0, -1.0, 1.0)),
            &[(0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (0.0, 1.0)],
        ),
        "ex15_B" => polyline_pieces(
            Region::new(
                "ex15_B",
                "{(x,y): x in [2,4], |y| <= (x - 2)/4}",
                PointShape::Planar,
                |p| {
                    planar_xy(p)
                        .map(|(x, y)| (2.0..=4.0).contains(&x) && y.abs() <= (x - 2.0) / 4.0)
                        .unwrap_or(false)
                },
            )
            .with_figure_flag()
            .with_bounding_box(Box2::new(2.0, 4.0, -0.5, 0.5)),
            &[(2.0, 0.0), (4.0, 0.5), (4.0, -0.5), (2.0, 0.0)],
        ),
        "ex15_C" => polyline_pieces(
            Region::new(
                "ex15_C",
                "{(x,y): x in [5,6], |y| <= 1/2}",
                PointShape::Planar,
                |p| {
                    planar_xy(p)
                        .map(|(x, y)| (5.0..=6.0).contains(&x) && y.abs() <= 0.5)
                        .unwrap_or(false)
                },
            )
            .with_figure_flag()
            .with_bounding_box(Box2::new(5.0, 6.0, -0.5, 0.5)),
            &[(5.0, 0.5), (6.0, 0.5), (6.0, -0.5), (5.0, -0.5), (5.0, 0.5)],
        ),
        "ex16_A" => diamond("ex16_A", 0.5),
        "ex16_B" => diamond("ex16_B", 2.5),
        "ex16_C" => diamond("ex16_C", 4.5),
        "ex43_A" | "ex49_A" | "ex28_A" => {
            Region::new(name, "{(x,y): x > 0, y >= 1/x}", PointShape::Planar, |p| {
                planar_xy(p)
                    .map(|(x, y)| x > 0.0 && y >= 1.0 / x)
                    .unwrap_or(false)
            })
            .with_piece(HYPERBOLA_T_LO, PARAM_T_HI, hyperbola)
            .with_bounding_box(Box2::new(0.0, 1e4, -1e4, 1e4))
        }
        "ex43_B" | "ex49_B1" => Region::new(
            name,
            "{(x,y): x > -1, y <= 1/(x+1) - 1}",
            PointShape::Planar,
            |p| {
                planar_xy(p)
                    .map(|(x, y)| x > -1.0 && y <= 1.0 / (x + 1.0) - 1.0)
                    .unwrap_or(false)
            },
        )
        .with_piece(-1.0 + HYPERBOLA_T_LO, PARAM_T_HI, shifted),
        "ex43_Abar" => Region::new(
            "ex43_Abar",
            "{(x,y): x > 0, y = 1/x}",
            PointShape::Planar,
            |p| {
                planar_xy(p)
                    .map(|(x, y)| x > 0.0 && (y - 1.0 / x).abs() <= CURVE_TOL)
                    .unwrap_or(false)
            },
        )
        .with_piece(HYPERBOLA_T_LO, PARAM_T_HI, hyperbola)
        .with_bounding_box(Box2::new(0.0, 1e4, -1e4, 1e4)),
        "ex49_Bbar" => Region::new(
            "ex49_Bbar",
            "{(x,y): x > -1, y = 1/(x+1) - 1}",
            PointShape::Planar,
            |p| {
                planar_xy(p)
                    .map(|(x, y)| x > -1.0 && (y - (1.0 / (x + 1.0) - 1.0)).abs() <= CURVE_TOL)
                    .unwrap_or(false)
            },
        )
        .with_piece(-1.0 + HYPERBOLA_T_LO, PARAM_T_HI, shifted),
        "ex49_B2" => Region::new("ex49_B2", "{(x,y): x <= -1}", PointShape::Planar, |p| {
            planar_xy(p).map(|(x, _)| x <= -1.0).unwrap_or(false)
        })
        .with_piece(-PARAM_T_HI, PARAM_T_HI, |t| Point::planar(-1.0, t)),
        "ex49_B" => Region::new(
            "ex49_B",
            "B1 u B2, B1 = {(x,y): x > -1, y <= 1/(x+1) - 1}, B2 = {(x,y): x <= -1}",
            PointShape::Planar,
            |p| {
                planar_xy(p)
                    .map(|(x, y)| x <= -1.0 || (x > -1.0 && y <= 1.0 / (x + 1.0) - 1.0))
                    .unwrap_or(false)
            },
        )
        .with_piece(-1.0 + HYPERBOLA_T_LO, PARAM_T_HI, shifted),
        "ex28_B" => Region::new(
            "ex28_B",
            "{(x,y): x < 0, y >= 1/|x|}",
            PointShape::Planar,
            |p| {
                planar_xy(p)
                    .map(|(x, y)| x < 0.0 && y >= -1.0 / x)
                    .unwrap_or(false)
            },
        )
        .with_piece(HYPERBOLA_T_LO, PARAM_T_HI, |t| Point::planar(-t, 1.0 / t))
        .with_bounding_box(Box2::new(-1e4, 0.0, -1e4, 1e4)),
        "unit_ball_l1" => norm_ball("unit_ball_l1", Norm::L1),
        "unit_ball_l2" => norm_ball("unit_ball_l2", Norm::L2),
        "unit_ball_linf" => norm_ball("unit_ball_linf", Norm::LInf),
        "half_plane_upper" => Region::new(
            "half_plane_upper",
            "{(x,y): y >= 0}",
            PointShape::Planar,
            |p| planar_xy(p).map(|(_, y)| y >= 0.0).unwrap_or(false),
        )
        .with_piece(-PARAM_T_HI, PARAM_T_HI, |t| Point::planar(t, 0.0)),
        "bx_unit_ball" => Region::new(
            "bx_unit_ball",
            "{x in X: ||x|| <= 1} in the l2-sum of (R^2, ||.||_k)",
            PointShape::Blocks,
            |p| {
                Norm::ProductL2OfLp
                    .eval(p)
                    .map(|v| v <= 1.0 + BOUNDARY_GUARD)
                    .unwrap_or(false)
            },
        )
        .with_sampler(|rng, n| product_sampler(rng, n, 0.0, 1.0)),
        "shell_r2" => Region::new(
            "shell_r2",
            "{x in X: ||x|| >= 2} in the l2-sum of (R^2, ||.||_k)",
            PointShape::Blocks,
            |p| {
                Norm::ProductL2OfLp
                    .eval(p)
                    .map(|v| v >= 2.0 - BOUNDARY_GUARD)
                    .unwrap_or(false)
            },
        )
        .with_sampler(|rng, n| product_sampler(rng, n, 2.0, 4.0)),
        other => return Err(RegionError::UnknownRegion(other.to_string())),
    };
    Ok(r)
}

fn diamond(name: &'static str, cx: f64) -> Region {
    let r = Region::new(
        name,
        // One l1 diamond of radius 1/2; the three of them sit at
        // cx = 1/2, 5/2, 9/2.
        &format!("{{(x,y): |x - {cx}| + |y| <= 1/2}}"),
        PointShape::Planar,
        move |p| {
            planar_xy(p)
                .map(|(x, y)| (x - cx).abs() + y.abs() <= 0.5)
                .unwrap_or(false)
        },
    )
    .with_figure_flag()
    .with_bounding_box(Box2::new(cx - 0.5, cx + 0.5, -0.5, 0.5));
    polyline_pieces(
        r,
        &[
            (cx + 0.5, 0.0),
            (cx, 0.5),
            (cx - 0.5, 0.0),
            (cx, -0.5),
            (cx + 0.5, 0.0),
        ],
    )
}

fn norm_ball(name: &'static str, norm: Norm) -> Region {
    Region::new(
        name,
        &format!("{{(x,y): ||(x,y)||_{norm} <= 1}}"),
        PointShape::Planar,
        move |p| {
            norm.eval(p)
                .map(|v| v <= 1.0 + BOUNDARY_GUARD)
                .unwrap_or(false)
        },
    )
    .with_piece(0.0, std::f64::consts::TAU, move |t| {
        unit_direction(norm, t).expect("planar norm on planar vector")
    })
    .with_bounding_box(Box2::new(-1.1, 1.1, -1.1, 1.1))
}

fn product_sampler(rng: &mut ChaCha8Rng, n: usize, r_lo: f64, r_hi: f64) -> Vec<Point> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let k: u32 = rng.gen_range(2..=12);
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let r: f64 = rng.gen_range(r_lo..=r_hi);
        let v = Point::planar(theta.cos(), theta.sin());
        let norm_k = match Norm::Lp(k).eval(&v) {
            Ok(x) => x,
            Err(_) => continue,
        };
        let scaled = v.scale(r / norm_k);
        if let Point::Planar(a, b) = scaled {
            if let Ok(p) = Point::single_block(k, (a, b)) {
                out.push(p);
            }
        }
    }
    out
}

/// JSON manifest of the region catalog.
pub fn catalog_manifest() -> serde_json::Value {
    let regions: Vec<serde_json::Value> = region_names()
        .iter()
        .map(|name| {
            let r = corpus_region(name).expect("catalog names are valid");
            serde_json::json!({
                "name": r.name,
                "description": r.description,
                "shape": r.shape,
                "bounding_box": r.bounding_box,
                "figure_reconstruction": r.figure_reconstruction,
                "boundary_pieces": r.boundary.len(),
            })
        })
        .collect();
    serde_json::json!({ "schema": 1, "regions": regions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn catalog_membership_spot_checks() {
        let a = corpus_region("ex43_A").unwrap();
        assert!(a.contains(&Point::planar(1.0, 1.0)));
        assert!(a.contains(&Point::planar(2.0, 2.0)));
        assert!(!a.contains(&Point::planar(-1.0, 5.0)));
        let b = corpus_region("ex43_B").unwrap();
        assert!(b.contains(&Point::planar(0.0, 0.0)));
        assert!(!b.contains(&Point::planar(0.0, 1.0)));
        let b49 = corpus_region("ex49_B").unwrap();
        assert!(b49.contains(&Point::planar(-3.0, 1e3)));
        assert!(b49.contains(&Point::planar(0.0, -0.5)));
        assert!(!b49.contains(&Point::planar(0.0, 0.5)));
    }

    #[test]
    fn membership_rejects_shape_mismatch() {
        let a = corpus_region("ex43_A").unwrap();
        let b = Point::single_block(2, (1.0, 0.0)).unwrap();
        assert!(!a.contains(&b));
        let ball = corpus_region("bx_unit_ball").unwrap();
        assert!(!ball.contains(&Point::planar(0.1, 0.1)));
    }

    #[test]
    fn product_regions_accept_exact_sphere_points() {
        let ball = corpus_region("bx_unit_ball").unwrap();
        let shell = corpus_region("shell_r2").unwrap();
        for n in 1u32..=200 {
            let p = n + 1;
            let c = 2f64.powf(-1.0 / p as f64);
            assert!(ball.contains(&Point::single_block(p, (c, c)).unwrap()));
            assert!(ball.contains(&Point::single_block(p, (c, -c)).unwrap()));
            assert!(shell.contains(&Point::single_block(p, (2.0, 0.0)).unwrap()));
        }
    }

    #[test]
    fn sampling_is_deterministic_and_inside() {
        let a = corpus_region("ex15_A").unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let s1 = a.sample(&mut r1, 64).unwrap();
        let s2 = a.sample(&mut r2, 64).unwrap();
        assert_eq!(s1, s2);
        assert!(s1.iter().all(|p| a.contains(p)));
        let mut r3 = ChaCha8Rng::seed_from_u64(8);
        let mixed = a.sample_mixed(&mut r3, 64).unwrap();
        assert!(mixed.iter().all(|p| a.contains(p)));
    }

    #[test]
    fn unknown_region_is_an_error() {
        assert!(matches!(
            corpus_region("nope"),
            Err(RegionError::UnknownRegion(_))
        ));
    }

    #[test]
    fn budget_minimum_enforced() {
        let a = corpus_region("ex43_A").unwrap();
        let p = Point::planar(2.0, 2.0);
        assert!(matches!(
            point_to_set_distance(Norm::LInf, &p, &a, 2),
            Err(RegionError::BadBudget(2, _))
        ));
    }

    #[test]
    fn product_pair_is_not_estimable() {
        let ball = corpus_region("bx_unit_ball").unwrap();
        let shell = corpus_region("shell_r2").unwrap();
        assert!(matches!(
            set_distance(Norm::ProductL2OfLp, &ball, &shell, 16),
            Err(RegionError::NotEstimable(..))
        ));
    }

    #[test]
    fn catalog_manifest_lists_every_region() {
        let m = catalog_manifest();
        assert_eq!(m["schema"], 1);
        assert_eq!(m["regions"].as_array().unwrap().len(), region_names().len());
        let first = &m["regions"][0];
        assert!(first["description"]
            .as_str()
            .unwrap()
            .contains("x in [0,1]"));
    }
}
