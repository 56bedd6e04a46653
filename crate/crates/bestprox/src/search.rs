//! Deterministic derivative-free minimization helpers.
//!
//! Everything here is budgeted and seed-free: fixed grids, golden-section
//! refinement, and window-shrinking local search. Estimators built on top
//! report the best evaluated value, which is always an upper bound on the
//! true infimum for the objectives used in this crate (all candidates are
//! feasible points of the underlying problem).

const PHI_INV: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization on `[a, b]`. The objective is assumed
/// quasiconvex on the interval; the returned pair is the best evaluated
/// point, so the value is valid (if possibly loose) even when it is not.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, iters: usize) -> (f64, f64) {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - PHI_INV * (hi - lo);
    let mut x2 = lo + PHI_INV * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - PHI_INV * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + PHI_INV * (hi - lo);
            f2 = f(x2);
        }
        let (x, v) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        if v < best.1 {
            best = (x, v);
        }
    }
    for x in [lo, hi] {
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    best
}

/// Uniform inclusive grid scan; returns every `(x, value)` evaluated.
pub fn grid_scan<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
    let n = n.max(1);
    (0..=n)
        .map(|i| {
            let x = a + (b - a) * (i as f64) / (n as f64);
            (x, f(x))
        })
        .collect()
}

/// Indices of the `k` smallest values (ties broken by index order).
pub fn best_k(values: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| {
        values[i]
            .partial_cmp(&values[j])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    idx.truncate(k);
    idx
}

/// Best point found by a window-shrinking local search around `(cx, cy)`.
///
/// The objective may return `None` for infeasible points; the search keeps
/// the best feasible evaluation and recenters on it, halving the window at
/// each level. Returns `None` when nothing feasible was ever seen.
pub fn shrink_refine_2d<F: Fn(f64, f64) -> Option<f64>>(
    f: F,
    (mut cx, mut cy): (f64, f64),
    (mut hx, mut hy): (f64, f64),
    clamp_x: (f64, f64),
    clamp_y: (f64, f64),
    levels: usize,
    side: usize,
) -> Option<(f64, f64, f64)> {
    let side = side.max(2);
    let mut best: Option<(f64, f64, f64)> = None;
    for _ in 0..levels {
        for i in 0..=side {
            for j in 0..=side {
                let x =
                    (cx - hx + 2.0 * hx * (i as f64) / (side as f64)).clamp(clamp_x.0, clamp_x.1);
                let y =
                    (cy - hy + 2.0 * hy * (j as f64) / (side as f64)).clamp(clamp_y.0, clamp_y.1);
                if let Some(v) = f(x, y) {
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((x, y, v));
                    }
                }
            }
        }
        if let Some((bx, by, _)) = best {
            cx = bx;
            cy = by;
        }
        hx *= 0.5;
        hy *= 0.5;
    }
    best
}
