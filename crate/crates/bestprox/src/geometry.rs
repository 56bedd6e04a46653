//! Points and norms.
//!
//! Two point shapes share one type: `Planar` for subsets of the plane, and
//! `Blocks` for sparse elements of the l2-sum of the spaces (R^2, ||.||_k),
//! k >= 2. A `Blocks` point stores only its nonzero components, keyed by
//! block index in strictly increasing order.
//!
//! Norm evaluation is total over matching shapes and returns a typed error
//! on a shape mismatch. Balls are open unless said otherwise; closed balls
//! appear only in prose.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Block components with absolute value below this are dropped on merge, so
/// a difference of equal points is the empty `Blocks` point and single-block
/// differences keep the exact single-block norm path.
const ZERO_BLOCK: f64 = 0.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("{norm} does not apply to {point}")]
    Mismatch { norm: String, point: String },
    #[error("block indices must be >= 2, unique and strictly increasing")]
    BadBlocks,
    #[error("lp exponent must be an integer >= 2, got {0}")]
    BadExponent(u32),
    #[error("points have different shapes: {0} vs {1}")]
    ShapeMismatch(String, String),
}

/// A point of the plane or of the product space.
///
/// Equality and hashing are exact on bit patterns (`-0.0 != 0.0`, `NaN ==
/// NaN`); approximate comparisons always go through [`Norm::metric`] with an
/// explicit tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Point {
    Planar(f64, f64),
    Blocks(Vec<(u32, (f64, f64))>),
}

impl Point {
    pub fn planar(x: f64, y: f64) -> Self {
        Point::Planar(x, y)
    }

    /// Builds a sparse product-space point; indices must be >= 2 and
    /// strictly increasing.
    pub fn blocks(parts: Vec<(u32, (f64, f64))>) -> Result<Self, GeometryError> {
        let mut last = 1u32;
        for &(k, _) in &parts {
            if k < 2 || k <= last {
                return Err(GeometryError::BadBlocks);
            }
            last = k;
        }
        Ok(Point::Blocks(parts))
    }

    /// Single nonzero block at `index`.
    pub fn single_block(index: u32, v: (f64, f64)) -> Result<Self, GeometryError> {
        Self::blocks(vec![(index, v)])
    }

    pub fn shape_name(&self) -> &'static str {
        match self {
            Point::Planar(..) => "planar",
            Point::Blocks(..) => "blocks",
        }
    }

    pub fn sub(&self, other: &Point) -> Result<Point, GeometryError> {
        self.merge(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Point) -> Result<Point, GeometryError> {
        self.merge(other, |a, b| a + b)
    }

    pub fn scale(&self, c: f64) -> Point {
        match self {
            Point::Planar(x, y) => Point::Planar(c * x, c * y),
            Point::Blocks(parts) => Point::Blocks(
                parts
                    .iter()
                    .map(|&(k, (a, b))| (k, (c * a, c * b)))
                    .collect(),
            ),
        }
    }

    /// Midpoint (x + y) / 2.
    pub fn midpoint(&self, other: &Point) -> Result<Point, GeometryError> {
        Ok(self.add(other)?.scale(0.5))
    }

    fn merge(&self, other: &Point, op: impl Fn(f64, f64) -> f64) -> Result<Point, GeometryError> {
        match (self, other) {
            (Point::Planar(x1, y1), Point::Planar(x2, y2)) => {
                Ok(Point::Planar(op(*x1, *x2), op(*y1, *y2)))
            }
            (Point::Blocks(a), Point::Blocks(b)) => {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let (k, v) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                        let (k, (p, q)) = a[i];
                        i += 1;
                        (k, (op(p, 0.0), op(q, 0.0)))
                    } else if i >= a.len() || b[j].0 < a[i].0 {
                        let (k, (p, q)) = b[j];
                        j += 1;
                        (k, (op(0.0, p), op(0.0, q)))
                    } else {
                        let (k, (p, q)) = a[i];
                        let (_, (r, s)) = b[j];
                        i += 1;
                        j += 1;
                        (k, (op(p, r), op(q, s)))
                    };
                    if v.0.abs() > ZERO_BLOCK || v.1.abs() > ZERO_BLOCK {
                        out.push((k, v));
                    }
                }
                Ok(Point::Blocks(out))
            }
            _ => Err(GeometryError::ShapeMismatch(
                self.shape_name().into(),
                other.shape_name().into(),
            )),
        }
    }

    fn bits(&self) -> Vec<u64> {
        match self {
            Point::Planar(x, y) => vec![x.to_bits(), y.to_bits()],
            Point::Blocks(parts) => {
                let mut v = Vec::with_capacity(1 + 3 * parts.len());
                v.push(u64::MAX);
                for &(k, (a, b)) in parts {
                    v.push(k as u64);
                    v.push(a.to_bits());
                    v.push(b.to_bits());
                }
                v
            }
        }
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.bits() == other.bits()
    }
}

impl Eq for Point {}

impl std::hash::Hash for Point {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits().hash(state);
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Planar(x, y) => write!(f, "({x}, {y})"),
            Point::Blocks(parts) => {
                write!(f, "blocks[")?;
                for (i, (k, (a, b))) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{k}: ({a}, {b})")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Norm family. Planar norms apply to `Planar` points; `ProductL2OfLp`
/// applies to `Blocks` points, where the block at index k is measured in
/// l_k and the block norms are combined in l2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    L1,
    L2,
    LInf,
    Lp(u32),
    ProductL2OfLp,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::L1 => write!(f, "l1"),
            Norm::L2 => write!(f, "l2"),
            Norm::LInf => write!(f, "linf"),
            Norm::Lp(p) => write!(f, "l{p}"),
            Norm::ProductL2OfLp => write!(f, "product_l2_of_lp"),
        }
    }
}

/// l_p norm of a planar pair with the max factored out: the ratio power is
/// exact when one coordinate vanishes, and for p > 16 the power goes through
/// exp/log so large exponents neither overflow nor underflow prematurely.
fn lp_norm(p: u32, x: f64, y: f64) -> f64 {
    let (a, b) = (x.abs(), y.abs());
    let (m, s) = if a >= b { (a, b) } else { (b, a) };
    if m == 0.0 {
        return 0.0;
    }
    if s == 0.0 {
        return m;
    }
    let r = s / m;
    let t = if p <= 16 {
        r.powi(p as i32)
    } else {
        ((p as f64) * r.ln()).exp()
    };
    m * (t.ln_1p() / (p as f64)).exp()
}

impl Norm {
    /// Norm of a point.
    pub fn eval(&self, p: &Point) -> Result<f64, GeometryError> {
        let mismatch = || GeometryError::Mismatch {
            norm: self.to_string(),
            point: p.to_string(),
        };
        match (self, p) {
            (Norm::L1, Point::Planar(x, y)) => Ok(x.abs() + y.abs()),
            (Norm::L2, Point::Planar(x, y)) => Ok(x.hypot(*y)),
            (Norm::LInf, Point::Planar(x, y)) => Ok(x.abs().max(y.abs())),
            (Norm::Lp(q), Point::Planar(x, y)) => {
                if *q < 2 {
                    Err(GeometryError::BadExponent(*q))
                } else {
                    Ok(lp_norm(*q, *x, *y))
                }
            }
            (Norm::ProductL2OfLp, Point::Blocks(parts)) => {
                // One nonzero block: the l2 combination is the block norm
                // itself, kept exact by skipping the square/sqrt round trip.
                if parts.len() == 1 {
                    let (k, (a, b)) = parts[0];
                    return Ok(lp_norm(k, a, b));
                }
                let mut sum = 0.0;
                for &(k, (a, b)) in parts {
                    let n = lp_norm(k, a, b);
                    sum += n * n;
                }
                Ok(sum.sqrt())
            }
            _ => Err(mismatch()),
        }
    }

    /// Distance induced by the norm.
    pub fn metric(&self, p: &Point, q: &Point) -> Result<f64, GeometryError> {
        self.eval(&p.sub(q)?)
    }

    /// Sum metric on pairs: rho(x,u) + rho(y,v).
    pub fn sum_metric(
        &self,
        (x, y): (&Point, &Point),
        (u, v): (&Point, &Point),
    ) -> Result<f64, GeometryError> {
        Ok(self.metric(x, u)? + self.metric(y, v)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(x: f64, y: f64) -> Point {
        Point::planar(x, y)
    }

    #[test]
    fn planar_norms_fixed_values() {
        assert_eq!(Norm::L2.eval(&pl(3.0, 4.0)).unwrap(), 5.0);
        assert_eq!(Norm::LInf.eval(&pl(1.0, 1.0)).unwrap(), 1.0);
        assert_eq!(Norm::L1.eval(&pl(1.0, -1.0)).unwrap(), 2.0);
        let v = Norm::Lp(3).eval(&pl(1.0, 1.0)).unwrap();
        assert!((v - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn product_norm_unit_vectors() {
        for n in 1u32..=200 {
            let p = n + 1;
            let c = 2f64.powf(-1.0 / p as f64);
            let x = Point::single_block(p, (c, c)).unwrap();
            let v = Norm::ProductL2OfLp.eval(&x).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "n={n} gave {v}");
        }
    }

    #[test]
    fn product_norm_single_block_matches_planar() {
        for p in [2u32, 3, 7, 17, 101] {
            let v = (0.3, -1.2);
            let b = Point::single_block(p, v).unwrap();
            let got = Norm::ProductL2OfLp.eval(&b).unwrap();
            let want = Norm::Lp(p).eval(&pl(v.0, v.1)).unwrap();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn lp_large_exponent_no_overflow() {
        let v = Norm::Lp(900).eval(&pl(2.0, 2.0)).unwrap();
        assert!((v - 2.0 * 2f64.powf(1.0 / 900.0)).abs() < 1e-12);
        let w = Norm::Lp(900).eval(&pl(1e-300, 0.0)).unwrap();
        assert_eq!(w, 1e-300);
    }

    #[test]
    fn metric_examples() {
        assert_eq!(Norm::L1.metric(&pl(0.0, 0.0), &pl(0.5, 0.5)).unwrap(), 1.0);
        // Sparse difference across distinct blocks.
        let a = Point::single_block(3, (1.0, 0.0)).unwrap();
        let b = Point::single_block(5, (0.0, 2.0)).unwrap();
        let d = Norm::ProductL2OfLp.metric(&a, &b).unwrap();
        assert!((d - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn blocks_difference_same_index_is_exact() {
        for n in 1u32..=200 {
            let p = n + 1;
            let c = 2f64.powf(-1.0 / p as f64);
            let x = Point::single_block(p, (c, c)).unwrap();
            let z = Point::single_block(p, (c, -c)).unwrap();
            let d = Norm::ProductL2OfLp.metric(&x, &z).unwrap();
            assert_eq!(d, 2.0 * c, "n={n}");
        }
    }

    #[test]
    fn sum_metric_is_componentwise_sum() {
        let (x, y) = (pl(0.0, 0.0), pl(1.0, 0.0));
        let (u, v) = (pl(3.0, 4.0), pl(1.0, 2.0));
        let s = Norm::L2.sum_metric((&x, &y), (&u, &v)).unwrap();
        assert_eq!(s, 5.0 + 2.0);
    }

    #[test]
    fn shape_mismatch_errors() {
        let b = Point::single_block(2, (1.0, 0.0)).unwrap();
        assert!(matches!(
            Norm::L2.eval(&b),
            Err(GeometryError::Mismatch { .. })
        ));
        assert!(matches!(
            Norm::ProductL2OfLp.eval(&pl(1.0, 0.0)),
            Err(GeometryError::Mismatch { .. })
        ));
        assert!(matches!(
            Norm::L2.metric(&pl(0.0, 0.0), &b),
            Err(GeometryError::ShapeMismatch(..))
        ));
        assert!(matches!(
            Norm::Lp(1).eval(&pl(1.0, 0.0)),
            Err(GeometryError::BadExponent(1))
        ));
    }

    #[test]
    fn block_validation() {
        assert!(Point::blocks(vec![(1, (1.0, 0.0))]).is_err());
        assert!(Point::blocks(vec![(3, (1.0, 0.0)), (3, (0.0, 1.0))]).is_err());
        assert!(Point::blocks(vec![(4, (1.0, 0.0)), (3, (0.0, 1.0))]).is_err());
        assert!(Point::blocks(vec![(2, (1.0, 0.0)), (9, (0.0, 1.0))]).is_ok());
    }

    #[test]
    fn bitwise_equality() {
        assert_ne!(pl(0.0, 0.0), pl(-0.0, 0.0));
        assert_eq!(pl(f64::NAN, 0.0), pl(f64::NAN, 0.0));
        assert_eq!(pl(1.5, -2.0), pl(1.5, -2.0));
    }

    #[test]
    fn point_serde_round_trip() {
        let p = pl(1.5, -0.25);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"planar":[1.5,-0.25]}"#);
        let back: Point = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let b = Point::blocks(vec![(2, (1.0, 0.0)), (5, (0.5, 0.5))]).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        let back: Point = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }
}
