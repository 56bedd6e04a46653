//! Falsification engines for the sequence-pair properties, plus the
//! Cauchy, boundedness, and norm-limit harnesses.
//!
//! A falsifier never proves anything. It either exhibits a witness family
//! whose measured tail limits violate the property within the budget, or
//! reports `NoCounterexampleWithinBudget`. Families whose points leave
//! their sets (or violate a declared bound) are rejected with a diagnostic
//! instead of contributing to the verdict.
//!
//! Tail tests are uniform across the module: a sequence "reaches" a target
//! when every value over the last quarter of probed indices is within
//! `tol` of it, and the separation floor below which a liminf does not
//! count as "staying apart" is `10 * tol`.

use crate::geometry::{GeometryError, Norm, Point};
use crate::regions::Region;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum UcError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

type GenFn = Arc<dyn Fn(u64) -> Point + Send + Sync>;

/// Three index-parametrized sequences: two in the first set, one in the
/// second. `bounded` declares a norm radius covering every x and z value.
#[derive(Clone)]
pub struct SequenceFamily {
    pub name: String,
    pub bounded: Option<f64>,
    gen_x: GenFn,
    gen_z: GenFn,
    gen_y: GenFn,
}

impl SequenceFamily {
    pub fn new(
        name: &str,
        bounded: Option<f64>,
        gen_x: impl Fn(u64) -> Point + Send + Sync + 'static,
        gen_z: impl Fn(u64) -> Point + Send + Sync + 'static,
        gen_y: impl Fn(u64) -> Point + Send + Sync + 'static,
    ) -> Self {
        SequenceFamily {
            name: name.to_string(),
            bounded,
            gen_x: Arc::new(gen_x),
            gen_z: Arc::new(gen_z),
            gen_y: Arc::new(gen_y),
        }
    }

    pub fn x(&self, n: u64) -> Point {
        (self.gen_x)(n)
    }

    pub fn z(&self, n: u64) -> Point {
        (self.gen_z)(n)
    }

    pub fn y(&self, n: u64) -> Point {
        (self.gen_y)(n)
    }

    /// Constant family x = z = a, y = b.
    pub fn constant(name: &str, a: Point, b: Point, radius: f64) -> Self {
        let (a2, a3) = (a.clone(), a);
        SequenceFamily::new(
            name,
            Some(radius),
            move |_| a2.clone(),
            move |_| a3.clone(),
            move |_| b.clone(),
        )
    }

    /// Builds the companion sequence y = 2 (x + z) / ||x + z|| from two
    /// generators. The generators must produce same-shape points with
    /// x + z never zero.
    pub fn lem5_from(
        name: &str,
        norm: Norm,
        bounded: Option<f64>,
        gen_x: impl Fn(u64) -> Point + Send + Sync + 'static,
        gen_z: impl Fn(u64) -> Point + Send + Sync + 'static,
    ) -> Self {
        let gx: GenFn = Arc::new(gen_x);
        let gz: GenFn = Arc::new(gen_z);
        let (gx2, gz2) = (gx.clone(), gz.clone());
        let gen_y = move |n: u64| {
            let s = gx2(n).add(&gz2(n)).expect("same-shape generators");
            let len = norm.eval(&s).expect("norm defined on generator shape");
            s.scale(2.0 / len)
        };
        SequenceFamily {
            name: name.to_string(),
            bounded,
            gen_x: gx,
            gen_z: gz,
            gen_y: Arc::new(gen_y),
        }
    }
}

impl std::fmt::Debug for SequenceFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SequenceFamily")
            .field("name", &self.name)
            .field("bounded", &self.bounded)
            .finish()
    }
}

/// Names of the prebuilt witness families.
pub fn family_names() -> &'static [&'static str] {
    &["example43", "example50", "ex15bc"]
}

/// Builds a prebuilt witness family by name.
pub fn corpus_family(name: &str) -> Result<SequenceFamily, UcError> {
    match name {
        "example43" => Ok(SequenceFamily::new(
            "example43",
            None,
            |n| {
                let t = n as f64;
                Point::planar(t, 1.0 / t)
            },
            |n| {
                let t = (n + 1) as f64;
                Point::planar(t, 1.0 / t)
            },
            |n| {
                let t = n as f64;
                Point::planar(t, 1.0 / (t + 1.0) - 1.0)
            },
        )),
        "example50" => {
            let block = |n: u64, second_sign: f64| {
                let p = (n + 1) as u32;
                let c = 2f64.powf(-1.0 / p as f64);
                Point::single_block(p, (c, second_sign * c)).expect("block index >= 2")
            };
            Ok(SequenceFamily::new(
                "example50",
                Some(1.0),
                move |n| block(n, 1.0),
                move |n| block(n, -1.0),
                |n| Point::single_block((n + 1) as u32, (2.0, 0.0)).expect("block index >= 2"),
            ))
        }
        "ex15bc" => Ok(SequenceFamily::constant(
            "ex15bc",
            Point::planar(4.0, 0.5),
            Point::planar(5.0, 0.0),
            4.5,
        )
        .with_z(Point::planar(4.0, -0.5))),
        other => Err(UcError::UnknownFamily(other.to_string())),
    }
}

impl SequenceFamily {
    fn with_z(mut self, z: Point) -> Self {
        self.gen_z = Arc::new(move |_| z.clone());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyTag {
    Uc,
    Buc,
    UcStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictOutcome {
    Falsified,
    NoCounterexampleWithinBudget,
}

/// Tail limits measured on the witness family: same-index proximities to
/// the target distance and the same-index separation liminf.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MeasuredLimits {
    pub proximity_x: f64,
    pub proximity_z: f64,
    pub separation_liminf: f64,
}

/// Verdict artifact. `route` is `same_index_tail` when the plain
/// sequence-pair criteria fired and `tail_implication` when the two-index
/// premise/conclusion test did.
#[derive(Debug, Clone, Serialize)]
pub struct FalsificationVerdict {
    pub schema: u32,
    pub property: PropertyTag,
    pub outcome: VerdictOutcome,
    pub witness: Option<String>,
    pub witness_bounded: Option<f64>,
    pub measured: Option<MeasuredLimits>,
    pub route: Option<String>,
    pub dist_ab: f64,
    pub n_max: u64,
    pub tol: f64,
    pub separation_floor: f64,
    pub budget_used: u64,
    pub diagnostics: Vec<String>,
}

fn falsify_guards(n_max: u64, tol: f64) -> Result<(), UcError> {
    if n_max < 16 {
        return Err(UcError::Precondition(format!(
            "n_max must be at least 16, got {n_max}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(UcError::Precondition(format!(
            "tol must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Last-quarter window of a probed value sequence.
fn tail(values: &[f64]) -> &[f64] {
    let q = values.len().div_ceil(4);
    &values[values.len() - q..]
}

fn tail_within(values: &[f64], target: f64, tol: f64) -> bool {
    tail(values).iter().all(|v| (v - target).abs() <= tol)
}

fn tail_last(values: &[f64]) -> f64 {
    *values.last().expect("probed at least one index")
}

fn tail_min(values: &[f64]) -> f64 {
    tail(values).iter().copied().fold(f64::INFINITY, f64::min)
}

struct FamilyEval {
    prox_x: Vec<f64>,
    prox_z: Vec<f64>,
    sep: Vec<f64>,
}

/// Evaluates same-index proximities and separations for n = 1..=n_max,
/// enforcing membership (and the declared bound when asked). Returns a
/// rejection diagnostic instead of a value on any violation.
fn evaluate_family(
    norm: Norm,
    a: &Region,
    b: &Region,
    fam: &SequenceFamily,
    n_max: u64,
    enforce_bound: Option<f64>,
    budget_used: &mut u64,
) -> Result<FamilyEval, String> {
    let mut out = FamilyEval {
        prox_x: Vec::with_capacity(n_max as usize),
        prox_z: Vec::with_capacity(n_max as usize),
        sep: Vec::with_capacity(n_max as usize),
    };
    for n in 1..=n_max {
        let (x, z, y) = (fam.x(n), fam.z(n), fam.y(n));
        *budget_used += 3;
        if !a.contains(&x) {
            return Err(format!("{}: x({n}) = {x} outside {}", fam.name, a.name));
        }
        if !a.contains(&z) {
            return Err(format!("{}: z({n}) = {z} outside {}", fam.name, a.name));
        }
        if !b.contains(&y) {
            return Err(format!("{}: y({n}) = {y} outside {}", fam.name, b.name));
        }
        if let Some(r) = enforce_bound {
            for (tag, p) in [("x", &x), ("z", &z)] {
                let np = norm.eval(p).map_err(|e| format!("{}: {e}", fam.name))?;
                if np > r + 1e-9 {
                    return Err(format!(
                        "{}: {tag}({n}) has norm {np} above the declared bound {r}",
                        fam.name
                    ));
                }
            }
        }
        let d = |p: &Point, q: &Point| norm.metric(p, q).map_err(|e| format!("{}: {e}", fam.name));
        out.prox_x.push(d(&x, &y)?);
        out.prox_z.push(d(&z, &y)?);
        out.sep.push(d(&x, &z)?);
    }
    Ok(out)
}

fn verdict_skeleton(
    property: PropertyTag,
    dist_ab: f64,
    n_max: u64,
    tol: f64,
) -> FalsificationVerdict {
    FalsificationVerdict {
        schema: 1,
        property,
        outcome: VerdictOutcome::NoCounterexampleWithinBudget,
        witness: None,
        witness_bounded: None,
        measured: None,
        route: None,
        dist_ab,
        n_max,
        tol,
        separation_floor: 10.0 * tol,
        budget_used: 0,
        diagnostics: Vec::new(),
    }
}

fn same_index_falsifies(ev: &FamilyEval, dist_ab: f64, tol: f64) -> Option<MeasuredLimits> {
    let floor = 10.0 * tol;
    let sep_min = tail_min(&ev.sep);
    if tail_within(&ev.prox_x, dist_ab, tol)
        && tail_within(&ev.prox_z, dist_ab, tol)
        && sep_min >= floor
    {
        Some(MeasuredLimits {
            proximity_x: tail_last(&ev.prox_x),
            proximity_z: tail_last(&ev.prox_z),
            separation_liminf: sep_min,
        })
    } else {
        None
    }
}

fn explain_no_violation(fam: &SequenceFamily, ev: &FamilyEval, dist_ab: f64) -> String {
    format!(
        "{}: no violation (prox_x tail {}, prox_z tail {}, separation liminf {}, target {})",
        fam.name,
        tail_last(&ev.prox_x),
        tail_last(&ev.prox_z),
        tail_min(&ev.sep),
        dist_ab
    )
}

/// Tries to falsify the sequence-pair convergence property: both
/// proximities must reach `dist_ab` on the tail while the separation
/// liminf stays at or above the floor. First family to do so wins.
pub fn uc_falsify(
    norm: Norm,
    a: &Region,
    b: &Region,
    dist_ab: f64,
    families: &[SequenceFamily],
    n_max: u64,
    tol: f64,
) -> Result<FalsificationVerdict, UcError> {
    falsify_guards(n_max, tol)?;
    let mut v = verdict_skeleton(PropertyTag::Uc, dist_ab, n_max, tol);
    for fam in families {
        match evaluate_family(norm, a, b, fam, n_max, None, &mut v.budget_used) {
            Err(diag) => v.diagnostics.push(diag),
            Ok(ev) => {
                if let Some(m) = same_index_falsifies(&ev, dist_ab, tol) {
                    v.outcome = VerdictOutcome::Falsified;
                    v.witness = Some(fam.name.clone());
                    v.witness_bounded = fam.bounded;
                    v.measured = Some(m);
                    v.route = Some("same_index_tail".into());
                    return Ok(v);
                }
                v.diagnostics.push(explain_no_violation(fam, &ev, dist_ab));
            }
        }
    }
    Ok(v)
}

/// Bounded variant: only families with a declared bound are admitted, and
/// the bound is verified on every probed index.
pub fn buc_falsify(
    norm: Norm,
    a: &Region,
    b: &Region,
    dist_ab: f64,
    families: &[SequenceFamily],
    n_max: u64,
    tol: f64,
) -> Result<FalsificationVerdict, UcError> {
    falsify_guards(n_max, tol)?;
    let mut v = verdict_skeleton(PropertyTag::Buc, dist_ab, n_max, tol);
    for fam in families {
        let Some(radius) = fam.bounded else {
            v.diagnostics.push(format!(
                "{}: rejected, no declared bound (bounded sequences required)",
                fam.name
            ));
            continue;
        };
        match evaluate_family(norm, a, b, fam, n_max, Some(radius), &mut v.budget_used) {
            Err(diag) => v.diagnostics.push(diag),
            Ok(ev) => {
                if let Some(m) = same_index_falsifies(&ev, dist_ab, tol) {
                    v.outcome = VerdictOutcome::Falsified;
                    v.witness = Some(fam.name.clone());
                    v.witness_bounded = fam.bounded;
                    v.measured = Some(m);
                    v.route = Some("same_index_tail".into());
                    return Ok(v);
                }
                v.diagnostics.push(explain_no_violation(fam, &ev, dist_ab));
            }
        }
    }
    Ok(v)
}

/// Subgrid of 1..=n_max used for two-index (m, n) scans: a coarse stride
/// plus the last 64 indices.
pub(crate) fn triangle_indices(n_max: u64) -> Vec<u64> {
    let step = (n_max / 256).max(1);
    let mut idx: Vec<u64> = (1..=n_max).step_by(step as usize).collect();
    let lo = n_max.saturating_sub(63).max(1);
    idx.extend(lo..=n_max);
    idx.sort_unstable();
    idx.dedup();
    idx
}

/// Tries to falsify the two-sided property: either the plain convergence
/// conjunct fails (a family meets the `uc_falsify` criteria), or the
/// tail implication fails: the diagonal premise `rho(z_n, y_n) -> dist`
/// and the triangle premise `rho(x_m, y_n) <= dist + eps` hold while the
/// conclusion `rho(x_m, z_n) <= eps` breaks on the index triangle, with
/// `eps` at the separation floor.
pub fn ucstar_falsify(
    norm: Norm,
    a: &Region,
    b: &Region,
    dist_ab: f64,
    families: &[SequenceFamily],
    n_max: u64,
    tol: f64,
) -> Result<FalsificationVerdict, UcError> {
    falsify_guards(n_max, tol)?;
    let mut v = verdict_skeleton(PropertyTag::UcStar, dist_ab, n_max, tol);
    let floor = 10.0 * tol;
    let idx = triangle_indices(n_max);
    let tail_start = idx[idx.len() - idx.len() / 4];
    for fam in families {
        match evaluate_family(norm, a, b, fam, n_max, None, &mut v.budget_used) {
            Err(diag) => v.diagnostics.push(diag),
            Ok(ev) => {
                if let Some(m) = same_index_falsifies(&ev, dist_ab, tol) {
                    v.outcome = VerdictOutcome::Falsified;
                    v.witness = Some(fam.name.clone());
                    v.witness_bounded = fam.bounded;
                    v.measured = Some(m);
                    v.route = Some("same_index_tail".into());
                    v.diagnostics
                        .push(format!("{}: convergence conjunct falsified", fam.name));
                    return Ok(v);
                }
                if !tail_within(&ev.prox_z, dist_ab, tol) || !tail_within(&ev.prox_x, dist_ab, tol)
                {
                    v.diagnostics.push(explain_no_violation(fam, &ev, dist_ab));
                    continue;
                }
                let mut premise_sup = f64::NEG_INFINITY;
                let mut conclusion_sup = f64::NEG_INFINITY;
                for (i, &m) in idx.iter().enumerate() {
                    for &n in &idx[..i] {
                        if n < tail_start {
                            continue;
                        }
                        let pxy = norm
                            .metric(&fam.x(m), &fam.y(n))
                            .map_err(UcError::Geometry)?;
                        let pxz = norm
                            .metric(&fam.x(m), &fam.z(n))
                            .map_err(UcError::Geometry)?;
                        v.budget_used += 2;
                        premise_sup = premise_sup.max(pxy);
                        conclusion_sup = conclusion_sup.max(pxz);
                    }
                }
                let premise_holds = premise_sup - dist_ab <= tol;
                if premise_holds && conclusion_sup >= floor {
                    v.outcome = VerdictOutcome::Falsified;
                    v.witness = Some(fam.name.clone());
                    v.witness_bounded = fam.bounded;
                    v.measured = Some(MeasuredLimits {
                        proximity_x: tail_last(&ev.prox_x),
                        proximity_z: tail_last(&ev.prox_z),
                        separation_liminf: conclusion_sup.min(tail_min(&ev.sep)),
                    });
                    v.route = Some("tail_implication".into());
                    v.diagnostics.push(format!(
                        "{}: triangle premise sup {premise_sup}, conclusion sup {conclusion_sup}",
                        fam.name
                    ));
                    return Ok(v);
                }
                v.diagnostics.push(format!(
                    "{}: tail implication holds (premise sup {premise_sup}, conclusion sup {conclusion_sup})",
                    fam.name
                ));
            }
        }
    }
    Ok(v)
}

/// Result of the Cauchy-criterion harness.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CauchyReport {
    /// The two-index proximity sup reaches `dist_ab` on the tail.
    pub premise_holds: bool,
    /// Max pairwise distance over the tail of {x_n} is below tol.
    pub is_cauchy: bool,
    pub premise_sup_tail: f64,
    pub tail_oscillation: f64,
}

/// Tests `sup_{n >= m} rho(x_m, y_n) -> dist_ab` on the index triangle and
/// whether {x_n} is numerically Cauchy on the tail.
#[allow(clippy::too_many_arguments)]
pub fn cauchy_criterion_check(
    norm: Norm,
    a: &Region,
    b: &Region,
    gen_x: &dyn Fn(u64) -> Point,
    gen_y: &dyn Fn(u64) -> Point,
    dist_ab: f64,
    n_max: u64,
    tol: f64,
) -> Result<CauchyReport, UcError> {
    falsify_guards(n_max, tol)?;
    for n in 1..=n_max {
        let (x, y) = (gen_x(n), gen_y(n));
        if !a.contains(&x) {
            return Err(UcError::Precondition(format!(
                "x({n}) = {x} outside {}",
                a.name
            )));
        }
        if !b.contains(&y) {
            return Err(UcError::Precondition(format!(
                "y({n}) = {y} outside {}",
                b.name
            )));
        }
    }
    let idx = triangle_indices(n_max);
    let sups: Vec<f64> = idx
        .iter()
        .map(|&m| {
            let mut s = f64::NEG_INFINITY;
            for &n in idx.iter().filter(|&&n| n >= m) {
                s = s.max(norm.metric(&gen_x(m), &gen_y(n))?);
            }
            Ok(s)
        })
        .collect::<Result<_, GeometryError>>()?;
    let premise_holds = tail_within(&sups, dist_ab, tol);
    let tail_idx = &idx[idx.len() - idx.len().div_ceil(4)..];
    let mut osc = 0f64;
    for (i, &m) in tail_idx.iter().enumerate() {
        for &n in &tail_idx[i + 1..] {
            osc = osc.max(norm.metric(&gen_x(m), &gen_x(n))?);
        }
    }
    Ok(CauchyReport {
        premise_holds,
        is_cauchy: osc < tol,
        premise_sup_tail: tail_last(&sups),
        tail_oscillation: osc,
    })
}

/// Result of the boundedness harness.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundednessReport {
    /// Same-index proximity rho(x_n, y_n) has a finite, stable tail.
    pub a_finite: bool,
    /// Two-index sup rho(z_m, y_k) over m, k > n has a finite, stable tail.
    pub b_finite: bool,
    pub a_value: f64,
    pub b_value: f64,
    /// `Some` only when both conditions hold: whether max norms of all
    /// three sequences are finite and tail-stable. `None` = no assertion.
    pub all_bounded: Option<bool>,
    pub max_norms: (f64, f64, f64),
}

/// A probed value sequence numerically "has a finite limit" when its last
/// quarter's oscillation is small relative to the final value.
fn converges(values: &[f64]) -> bool {
    let t = tail(values);
    let hi = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = t.iter().copied().fold(f64::INFINITY, f64::min);
    hi.is_finite() && hi - lo <= 1e-2 * (1.0 + hi.abs())
}

/// A nondecreasing sequence numerically "stays finite" when its last
/// quarter stops growing (plateau within 1%).
fn plateau(cumulative: &[f64]) -> bool {
    let q = cumulative.len().div_ceil(4);
    let prev = cumulative[cumulative.len() - q - 1];
    let last = *cumulative.last().expect("nonempty horizon sequence");
    last.is_finite() && last <= prev * 1.01 + 1e-9
}

fn cummax_plateau(values: &[f64]) -> bool {
    let mut run = f64::NEG_INFINITY;
    let cum: Vec<f64> = values
        .iter()
        .map(|&v| {
            run = run.max(v);
            run
        })
        .collect();
    plateau(&cum)
}

/// Evaluates the two finiteness conditions and, when both hold, asserts
/// boundedness of all three sequences by direct norm measurement.
///
/// The same-index proximity must converge; the two-index sup over pairs
/// past a fixed pivot must plateau as the probed horizon grows (a sup
/// that keeps climbing with the horizon is read as infinite).
pub fn boundedness_harness(
    norm: Norm,
    gen_x: &dyn Fn(u64) -> Point,
    gen_z: &dyn Fn(u64) -> Point,
    gen_y: &dyn Fn(u64) -> Point,
    n_max: u64,
) -> Result<BoundednessReport, UcError> {
    if n_max < 16 {
        return Err(UcError::Precondition(format!(
            "n_max must be at least 16, got {n_max}"
        )));
    }
    let same_idx: Vec<f64> = (1..=n_max)
        .map(|n| norm.metric(&gen_x(n), &gen_y(n)))
        .collect::<Result<_, _>>()?;
    let a_finite = converges(&same_idx);
    let idx = triangle_indices(n_max);
    let pivot = idx[idx.len() / 4];
    let horizon: Vec<u64> = idx.iter().copied().filter(|&h| h > pivot).collect();
    let mut seen: Vec<u64> = Vec::with_capacity(horizon.len());
    let mut sup = f64::NEG_INFINITY;
    let mut sups = Vec::with_capacity(horizon.len());
    for &h in &horizon {
        sup = sup.max(norm.metric(&gen_z(h), &gen_y(h))?);
        for &s in &seen {
            sup = sup.max(norm.metric(&gen_z(h), &gen_y(s))?);
            sup = sup.max(norm.metric(&gen_z(s), &gen_y(h))?);
        }
        seen.push(h);
        sups.push(sup);
    }
    let b_finite = plateau(&sups);
    let norms = |g: &dyn Fn(u64) -> Point| -> Result<Vec<f64>, GeometryError> {
        idx.iter().map(|&n| norm.eval(&g(n))).collect()
    };
    let (nx, nz, ny) = (norms(gen_x)?, norms(gen_z)?, norms(gen_y)?);
    let max3 = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let all_bounded = if a_finite && b_finite {
        Some(cummax_plateau(&nx) && cummax_plateau(&nz) && cummax_plateau(&ny))
    } else {
        None
    };
    Ok(BoundednessReport {
        a_finite,
        b_finite,
        a_value: tail_last(&same_idx),
        b_value: tail_last(&sups),
        all_bounded,
        max_norms: (max3(&nx), max3(&nz), max3(&ny)),
    })
}

/// Result of the norm-limit harness.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LimitNormReport {
    /// ||x_n + y_n|| reached a + b on the tail.
    pub premise_holds: bool,
    /// `Some` only when the premise holds: whether ||x_n|| -> a and
    /// ||y_n|| -> b on the tail. `None` = no assertion.
    pub conclusion_holds: Option<bool>,
    pub sum_norm_tail: f64,
}

/// Checks that dominated norms with additive limit split into individual
/// limits: requires `||x_n|| <= a` and `||y_n|| <= b` throughout, tests
/// `||x_n + y_n|| -> a + b`, and when that premise holds asserts
/// `||x_n|| -> a`, `||y_n|| -> b` over the tail.
pub fn limit_norm_harness(
    norm: Norm,
    gen_x: &dyn Fn(u64) -> Point,
    gen_y: &dyn Fn(u64) -> Point,
    a: f64,
    b: f64,
    n_max: u64,
    tol: f64,
) -> Result<LimitNormReport, UcError> {
    falsify_guards(n_max, tol)?;
    let mut nx = Vec::with_capacity(n_max as usize);
    let mut ny = Vec::with_capacity(n_max as usize);
    let mut nsum = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let (x, y) = (gen_x(n), gen_y(n));
        let (vx, vy) = (norm.eval(&x)?, norm.eval(&y)?);
        if vx > a + 1e-12 {
            return Err(UcError::Precondition(format!(
                "||x({n})|| = {vx} exceeds the declared bound {a}"
            )));
        }
        if vy > b + 1e-12 {
            return Err(UcError::Precondition(format!(
                "||y({n})|| = {vy} exceeds the declared bound {b}"
            )));
        }
        nx.push(vx);
        ny.push(vy);
        nsum.push(norm.eval(&x.add(&y)?)?);
    }
    let premise_holds = tail_within(&nsum, a + b, tol);
    let conclusion_holds = if premise_holds {
        Some(tail_within(&nx, a, tol) && tail_within(&ny, b, tol))
    } else {
        None
    };
    Ok(LimitNormReport {
        premise_holds,
        conclusion_holds,
        sum_norm_tail: tail_last(&nsum),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::corpus_region;

    #[test]
    fn corpus_family_spot_values() {
        let fam = corpus_family("example43").unwrap();
        assert_eq!(fam.x(1), Point::planar(1.0, 1.0));
        assert_eq!(fam.z(1), Point::planar(2.0, 0.5));
        assert_eq!(fam.y(1), Point::planar(1.0, -0.5));
        assert!(fam.bounded.is_none());
        let fam50 = corpus_family("example50").unwrap();
        let c = 2f64.powf(-0.5);
        assert_eq!(fam50.x(1), Point::single_block(2, (c, c)).unwrap());
        assert_eq!(fam50.bounded, Some(1.0));
        assert!(matches!(
            corpus_family("nope"),
            Err(UcError::UnknownFamily(_))
        ));
    }

    #[test]
    fn lem5_family_doubles_sphere_points() {
        let fam = SequenceFamily::lem5_from(
            "lem5_const",
            Norm::L2,
            Some(1.0),
            |_| Point::planar(0.6, 0.8),
            |_| Point::planar(0.6, 0.8),
        );
        assert_eq!(fam.y(3), Point::planar(1.2, 1.6));
    }

    #[test]
    fn example43_falsifies_uc_but_not_buc() {
        let a = corpus_region("ex43_A").unwrap();
        let b = corpus_region("ex43_B").unwrap();
        let fams = [corpus_family("example43").unwrap()];
        let uc = uc_falsify(Norm::LInf, &a, &b, 1.0, &fams, 2000, 1e-3).unwrap();
        assert_eq!(uc.outcome, VerdictOutcome::Falsified);
        assert!(uc.measured.unwrap().separation_liminf >= 1.0 - 1e-9);
        let buc = buc_falsify(Norm::LInf, &a, &b, 1.0, &fams, 2000, 1e-3).unwrap();
        assert_eq!(buc.outcome, VerdictOutcome::NoCounterexampleWithinBudget);
        assert!(buc
            .diagnostics
            .iter()
            .any(|d| d.contains("no declared bound")));
    }

    #[test]
    fn example50_falsifies_everything_bounded() {
        let a = corpus_region("bx_unit_ball").unwrap();
        let b = corpus_region("shell_r2").unwrap();
        let fams = [corpus_family("example50").unwrap()];
        let norm = Norm::ProductL2OfLp;
        let uc = uc_falsify(norm, &a, &b, 1.0, &fams, 200, 1e-2).unwrap();
        assert_eq!(uc.outcome, VerdictOutcome::Falsified);
        let m = uc.measured.unwrap();
        assert!(m.separation_liminf > 1.9);
        let buc = buc_falsify(norm, &a, &b, 1.0, &fams, 200, 1e-2).unwrap();
        assert_eq!(buc.outcome, VerdictOutcome::Falsified);
        let star = ucstar_falsify(norm, &a, &b, 1.0, &fams, 200, 1e-2).unwrap();
        assert_eq!(star.outcome, VerdictOutcome::Falsified);
    }

    #[test]
    fn membership_violation_rejects_family() {
        let a = corpus_region("ex15_A").unwrap();
        let b = corpus_region("ex15_B").unwrap();
        let fams = [
            corpus_family("example43").unwrap(),
            corpus_family("example50").unwrap(),
            corpus_family("ex15bc").unwrap(),
        ];
        let v = uc_falsify(Norm::L1, &a, &b, 1.0, &fams, 64, 1e-3).unwrap();
        assert_eq!(v.outcome, VerdictOutcome::NoCounterexampleWithinBudget);
        assert_eq!(v.diagnostics.len(), 3);
        assert!(v.diagnostics.iter().all(|d| d.contains("outside")));
    }

    #[test]
    fn empty_family_list_is_vacuous() {
        let a = corpus_region("ex15_A").unwrap();
        let b = corpus_region("ex15_B").unwrap();
        let v = buc_falsify(Norm::L1, &a, &b, 1.0, &[], 64, 1e-3).unwrap();
        assert_eq!(v.outcome, VerdictOutcome::NoCounterexampleWithinBudget);
        assert_eq!(v.budget_used, 0);
    }

    #[test]
    fn constant_proximal_family_never_falsifies_ucstar() {
        let a = corpus_region("ex15_A").unwrap();
        let b = corpus_region("ex15_B").unwrap();
        let fam = SequenceFamily::constant(
            "const_proximal",
            Point::planar(1.0, 0.0),
            Point::planar(2.0, 0.0),
            2.0,
        );
        let v = ucstar_falsify(Norm::L1, &a, &b, 1.0, &[fam], 64, 1e-3).unwrap();
        assert_eq!(v.outcome, VerdictOutcome::NoCounterexampleWithinBudget);
    }

    #[test]
    fn ex15bc_falsifies_ucstar() {
        let b = corpus_region("ex15_B").unwrap();
        let c = corpus_region("ex15_C").unwrap();
        let fams = [corpus_family("ex15bc").unwrap()];
        let v = ucstar_falsify(Norm::LInf, &b, &c, 1.0, &fams, 64, 1e-3).unwrap();
        assert_eq!(v.outcome, VerdictOutcome::Falsified);
        assert_eq!(v.route.as_deref(), Some("same_index_tail"));
    }

    #[test]
    fn guards_reject_bad_budgets() {
        let a = corpus_region("ex15_A").unwrap();
        let b = corpus_region("ex15_B").unwrap();
        assert!(matches!(
            uc_falsify(Norm::L1, &a, &b, 1.0, &[], 8, 1e-3),
            Err(UcError::Precondition(_))
        ));
        assert!(matches!(
            uc_falsify(Norm::L1, &a, &b, 1.0, &[], 64, 0.0),
            Err(UcError::Precondition(_))
        ));
    }

    #[test]
    fn cauchy_check_constant_proximal_pair() {
        let a = corpus_region("ex15_A").unwrap();
        let b = corpus_region("ex15_B").unwrap();
        let r = cauchy_criterion_check(
            Norm::L1,
            &a,
            &b,
            &|_| Point::planar(1.0, 0.0),
            &|_| Point::planar(2.0, 0.0),
            1.0,
            128,
            1e-6,
        )
        .unwrap();
        assert!(r.premise_holds);
        assert!(r.is_cauchy);
    }

    #[test]
    fn cauchy_check_rejects_membership_violation() {
        let a = corpus_region("ex15_A").unwrap();
        let b = corpus_region("ex15_B").unwrap();
        let err = cauchy_criterion_check(
            Norm::L1,
            &a,
            &b,
            &|_| Point::planar(9.0, 9.0),
            &|_| Point::planar(2.0, 0.0),
            1.0,
            64,
            1e-6,
        );
        assert!(matches!(err, Err(UcError::Precondition(_))));
    }

    #[test]
    fn boundedness_conditions_on_corpus_families() {
        let f43 = corpus_family("example43").unwrap();
        let r43 = boundedness_harness(Norm::LInf, &|n| f43.x(n), &|n| f43.z(n), &|n| f43.y(n), 512)
            .unwrap();
        assert!(r43.a_finite);
        assert!(!r43.b_finite);
        assert!(r43.all_bounded.is_none());
        let constant = boundedness_harness(
            Norm::LInf,
            &|_| Point::planar(1.0, 1.0),
            &|_| Point::planar(1.0, 1.0),
            &|_| Point::planar(0.0, 0.0),
            64,
        )
        .unwrap();
        assert_eq!(constant.all_bounded, Some(true));
    }

    #[test]
    fn limit_norm_harness_agrees_with_explicit_limits() {
        let ok = limit_norm_harness(
            Norm::L2,
            &|n| Point::planar(1.0 - 1.0 / n as f64, 0.0),
            &|_| Point::planar(1.0, 0.0),
            1.0,
            1.0,
            4000,
            1e-3,
        )
        .unwrap();
        assert!(ok.premise_holds);
        assert_eq!(ok.conclusion_holds, Some(true));
        let f50 = corpus_family("example50").unwrap();
        let prod = limit_norm_harness(
            Norm::ProductL2OfLp,
            &|n| f50.x(n),
            &|n| f50.z(n),
            1.0,
            1.0,
            200,
            1e-2,
        )
        .unwrap();
        assert!(prod.premise_holds);
        assert_eq!(prod.conclusion_holds, Some(true));
        let osc = limit_norm_harness(
            Norm::L2,
            &|n| Point::planar(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0),
            &|_| Point::planar(1.0, 0.0),
            1.0,
            1.0,
            64,
            1e-3,
        )
        .unwrap();
        assert!(!osc.premise_holds);
        assert!(osc.conclusion_holds.is_none());
    }
}
