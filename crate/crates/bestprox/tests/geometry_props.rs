//! Metric axioms and serialization round trips for the point and norm types.

use bestprox::geometry::{Norm, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PLANAR_NORMS: [Norm; 4] = [Norm::L1, Norm::L2, Norm::LInf, Norm::Lp(3)];

fn random_planar(rng: &mut ChaCha8Rng) -> Point {
    Point::planar(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0))
}

fn random_blocks(rng: &mut ChaCha8Rng) -> Point {
    let n = rng.gen_range(1..=4);
    let mut parts = Vec::with_capacity(n);
    let mut k = 2u32;
    for _ in 0..n {
        parts.push((k, (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))));
        k += rng.gen_range(1..=3);
    }
    Point::blocks(parts).unwrap()
}

fn assert_metric_axioms(norm: Norm, x: &Point, y: &Point, z: &Point) {
    let xy = norm.metric(x, y).unwrap();
    let yx = norm.metric(y, x).unwrap();
    let xz = norm.metric(x, z).unwrap();
    let zy = norm.metric(z, y).unwrap();
    assert!(xy >= 0.0);
    assert_eq!(norm.metric(x, x).unwrap(), 0.0);
    assert!(
        (xy - yx).abs() <= 1e-12 * (1.0 + xy),
        "{norm}: asymmetric ({xy} vs {yx})"
    );
    assert!(
        xy <= xz + zy + 1e-9 * (1.0 + xy),
        "{norm}: triangle violated ({xy} > {xz} + {zy})"
    );
}

#[test]
fn planar_norms_satisfy_metric_axioms_on_sampled_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for norm in PLANAR_NORMS {
        for _ in 0..1000 {
            let (x, y, z) = (
                random_planar(&mut rng),
                random_planar(&mut rng),
                random_planar(&mut rng),
            );
            assert_metric_axioms(norm, &x, &y, &z);
        }
    }
}

#[test]
fn product_norm_satisfies_metric_axioms_on_sampled_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let (x, y, z) = (
            random_blocks(&mut rng),
            random_blocks(&mut rng),
            random_blocks(&mut rng),
        );
        assert_metric_axioms(Norm::ProductL2OfLp, &x, &y, &z);
    }
}

#[test]
fn sum_metric_is_a_metric_on_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let norm = Norm::LInf;
    for _ in 0..1000 {
        let p: Vec<Point> = (0..6).map(|_| random_planar(&mut rng)).collect();
        let d = |a: usize, b: usize, c: usize, e: usize| {
            norm.sum_metric((&p[a], &p[b]), (&p[c], &p[e])).unwrap()
        };
        let xy = d(0, 1, 2, 3);
        assert!(xy >= 0.0);
        assert_eq!(d(0, 1, 0, 1), 0.0);
        assert!((xy - d(2, 3, 0, 1)).abs() <= 1e-12 * (1.0 + xy));
        assert!(xy <= d(0, 1, 4, 5) + d(4, 5, 2, 3) + 1e-9 * (1.0 + xy));
    }
}

#[test]
fn norms_are_homogeneous_and_ordered() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..500 {
        let p = random_planar(&mut rng);
        let s: f64 = rng.gen_range(0.1..4.0);
        let linf = Norm::LInf.eval(&p).unwrap();
        let l2 = Norm::L2.eval(&p).unwrap();
        let l1 = Norm::L1.eval(&p).unwrap();
        let l3 = Norm::Lp(3).eval(&p).unwrap();
        assert!(linf <= l3 + 1e-12 * (1.0 + l3));
        assert!(l3 <= l2 + 1e-12 * (1.0 + l2));
        assert!(l2 <= l1 + 1e-12 * (1.0 + l1));
        let scaled = Norm::L2.eval(&p.scale(s)).unwrap();
        assert!((scaled - s * l2).abs() <= 1e-9 * (1.0 + scaled));
    }
}

#[test]
fn points_round_trip_through_json() {
    let planar = Point::planar(1.25, -0.0625);
    let blocks = Point::blocks(vec![(2, (0.5, -0.5)), (7, (1.0, 2.0))]).unwrap();
    for p in [planar, blocks] {
        let s = serde_json::to_string(&p).unwrap();
        let back: Point = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back, "round trip changed {s}");
    }
    let n = Norm::Lp(3);
    let s = serde_json::to_string(&n).unwrap();
    let back: Norm = serde_json::from_str(&s).unwrap();
    assert_eq!(n, back);
}

#[test]
fn shape_mismatches_are_reported_not_panicked() {
    let planar = Point::planar(1.0, 1.0);
    let blocks = Point::blocks(vec![(2, (1.0, 0.0))]).unwrap();
    assert!(Norm::LInf.metric(&planar, &blocks).is_err());
    assert!(Norm::ProductL2OfLp.eval(&planar).is_err());
    assert!(planar.add(&blocks).is_err());
}
