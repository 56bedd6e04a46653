//! Catalog geometry: boundary fidelity, distance estimation, refinement.

use bestprox::corpus;
use bestprox::geometry::{Norm, Point};
use bestprox::regions::{
    catalog_manifest, corpus_region, midpoint_ball_inclusion, point_to_set_distance, region_names,
    set_distance, RegionError,
};

/// Solid catalog regions whose boundary pieces trace the membership
/// frontier; crossing a piece flips membership.
const SOLID_WITH_FRONTIER: [&str; 17] = [
    "ex15_A",
    "ex15_B",
    "ex15_C",
    "ex16_A",
    "ex16_B",
    "ex16_C",
    "ex43_A",
    "ex43_B",
    "ex49_B1",
    "ex49_B2",
    "ex49_B",
    "ex28_A",
    "ex28_B",
    "unit_ball_l1",
    "unit_ball_l2",
    "unit_ball_linf",
    "half_plane_upper",
];

fn planar(p: &Point) -> (f64, f64) {
    match p {
        Point::Planar(x, y) => (*x, *y),
        Point::Blocks(..) => panic!("expected a planar point"),
    }
}

#[test]
fn boundary_points_are_members() {
    for name in region_names() {
        let r = corpus_region(name).unwrap();
        for piece in &r.boundary {
            for q in [0.25, 0.5, 0.75] {
                let t = piece.t_lo + q * (piece.t_hi - piece.t_lo);
                let p = piece.at(t);
                assert!(r.contains(&p), "{name}: boundary point at t = {t} escaped");
            }
        }
    }
}

#[test]
fn membership_flips_across_the_frontier() {
    for name in SOLID_WITH_FRONTIER {
        let r = corpus_region(name).unwrap();
        assert!(!r.boundary.is_empty(), "{name} lost its boundary");
        for piece in &r.boundary {
            for q in [0.3, 0.5, 0.7] {
                let t = piece.t_lo + q * (piece.t_hi - piece.t_lo);
                let h = (t.abs() * 1e-6).max(1e-9);
                let (x0, y0) = planar(&piece.at(t));
                let (x1, y1) = planar(&piece.at(t + h));
                let (tx, ty) = (x1 - x0, y1 - y0);
                let len = tx.hypot(ty);
                if len == 0.0 {
                    continue;
                }
                let (nx, ny) = (-ty / len, tx / len);
                let inward = r.contains(&Point::planar(x0 + 1e-6 * nx, y0 + 1e-6 * ny));
                let outward = r.contains(&Point::planar(x0 - 1e-6 * nx, y0 - 1e-6 * ny));
                assert_ne!(
                    inward, outward,
                    "{name}: no membership flip across the piece at t = {t}"
                );
            }
        }
    }
}

#[test]
fn curve_regions_are_thin() {
    for name in ["ex43_Abar", "ex49_Bbar"] {
        let r = corpus_region(name).unwrap();
        let piece = &r.boundary[0];
        let p = piece.at(1.0);
        let (x, y) = planar(&p);
        assert!(r.contains(&p));
        assert!(!r.contains(&Point::planar(x, y + 1e-6)));
        assert!(!r.contains(&Point::planar(x, y - 1e-6)));
    }
}

#[test]
fn catalog_distances_match_expected_values() {
    for entry in corpus::pairs() {
        if !entry.dist_estimable {
            continue;
        }
        let a = corpus_region(entry.region_a).unwrap();
        let b = corpus_region(entry.region_b).unwrap();
        let est = set_distance(entry.norm, &a, &b, 512).unwrap();
        assert!(
            (est.value - entry.dist_ab).abs() <= 1e-6,
            "{}: measured {} vs expected {}",
            entry.name,
            est.value,
            entry.dist_ab
        );
        let (p, q) = &est.argmin_pair;
        assert!(a.contains(p), "{}: argmin left the first set", entry.name);
        assert!(b.contains(q), "{}: argmin left the second set", entry.name);
        let realized = entry.norm.metric(p, q).unwrap();
        assert!(
            (realized - est.value).abs() <= 1e-12,
            "{}: argmin does not realize the estimate",
            entry.name
        );
    }
}

#[test]
fn refinement_history_is_nonincreasing() {
    let a = corpus_region("ex43_A").unwrap();
    let b = corpus_region("ex43_B").unwrap();
    let est = set_distance(Norm::LInf, &a, &b, 512).unwrap();
    assert!(!est.refinement_history.is_empty());
    for w in est.refinement_history.windows(2) {
        assert!(w[0].0 < w[1].0, "budget levels must increase");
        assert!(w[1].1 <= w[0].1 + 1e-15, "refinement went backwards");
    }
}

#[test]
fn doubling_the_budget_never_hurts() {
    for entry in corpus::pairs() {
        if !entry.dist_estimable {
            continue;
        }
        let a = corpus_region(entry.region_a).unwrap();
        let b = corpus_region(entry.region_b).unwrap();
        let mut previous = f64::INFINITY;
        for budget in [64, 128, 256, 512] {
            let est = set_distance(entry.norm, &a, &b, budget).unwrap();
            assert!(
                est.value <= previous + 1e-15,
                "{} at budget {budget}: {} got worse than {previous}",
                entry.name,
                est.value
            );
            previous = est.value;
        }
    }
}

#[test]
fn point_to_set_distances_hit_known_values() {
    let abar = corpus_region("ex43_Abar").unwrap();
    let bbar = corpus_region("ex49_Bbar").unwrap();
    let d = point_to_set_distance(Norm::LInf, &Point::planar(2.0, 2.0), &abar, 512).unwrap();
    assert!(
        (d.value - 1.0).abs() <= 1e-9,
        "d((2,2), curve) = {}",
        d.value
    );
    let d = point_to_set_distance(Norm::LInf, &Point::planar(-0.5, -0.5), &bbar, 512).unwrap();
    assert!(
        (d.value - 0.5).abs() <= 1e-9,
        "d((-1/2,-1/2), curve) = {}",
        d.value
    );
    let a = corpus_region("ex43_A").unwrap();
    let inside = point_to_set_distance(Norm::LInf, &Point::planar(2.0, 2.0), &a, 64).unwrap();
    assert_eq!(inside.value, 0.0);
}

#[test]
fn product_space_pair_is_not_estimable() {
    let a = corpus_region("bx_unit_ball").unwrap();
    let b = corpus_region("shell_r2").unwrap();
    match set_distance(Norm::ProductL2OfLp, &a, &b, 64) {
        Err(RegionError::NotEstimable(name, _)) => assert_eq!(name, "bx_unit_ball"),
        other => panic!("expected NotEstimable, got {other:?}"),
    }
}

#[test]
fn tiny_budgets_are_rejected() {
    let a = corpus_region("ex43_A").unwrap();
    let b = corpus_region("ex43_B").unwrap();
    assert!(matches!(
        set_distance(Norm::LInf, &a, &b, 4),
        Err(RegionError::BadBudget(4, _))
    ));
}

#[test]
fn midpoint_balls_stay_inside_the_round_ball() {
    let ball = corpus_region("unit_ball_l2").unwrap();
    let x = Point::planar(0.6, 0.0);
    let y = Point::planar(0.0, 0.6);
    let probe = midpoint_ball_inclusion(Norm::L2, &ball, &x, &y, 0.2, 64).unwrap();
    assert!(probe.included, "violation at {:?}", probe.violation);
    let probe = midpoint_ball_inclusion(Norm::L2, &ball, &x, &y, 0.9, 64).unwrap();
    assert!(!probe.included);
    assert!(probe.violation.is_some());
}

#[test]
fn manifest_lists_every_region() {
    let manifest = catalog_manifest();
    assert_eq!(manifest["schema"], 1);
    let listed = manifest["regions"].as_array().unwrap();
    assert_eq!(listed.len(), region_names().len());
    for (entry, name) in listed.iter().zip(region_names()) {
        assert_eq!(entry["name"], *name);
    }
}
