//! The reflection map end to end: cyclic/contraction verification, orbit
//! convergence, iterate bounds, and the coupled-pair reduction.

use bestprox::geometry::{Norm, Point};
use bestprox::regions::{corpus_region, set_distance};
use bestprox::solver::{
    best_proximity_point, check_iterate_bounds, corpus_coupled, corpus_map, coupled_solve,
    coupled_to_cyclic, iterate, map_names, verify_contraction, verify_cyclic, verify_suzuki,
    ClaimedClass, Side, SolverError,
};

fn planar(p: &Point) -> (f64, f64) {
    match p {
        Point::Planar(x, y) => (*x, *y),
        Point::Blocks(..) => panic!("expected a planar point"),
    }
}

#[test]
fn reflection_map_is_cyclic_and_contractive() {
    let map = corpus_map("example49").unwrap();
    let cyc = verify_cyclic(&map, 500, 17).unwrap();
    assert!(cyc.ok, "violator: {:?}", cyc.violator);
    assert_eq!(cyc.checked, 1000);

    let rep = verify_contraction(&map, 0.5, 2000, 23).unwrap();
    assert!(rep.ok, "worst pair {:?}", rep.worst_pair);
    assert!(rep.max_violation <= 1e-9, "violation {}", rep.max_violation);
    assert_eq!(rep.checked, 2000);

    let suz = verify_suzuki(&map, 0.5, 1000, 13).unwrap();
    assert!(suz.ok, "suzuki violation {}", suz.max_violation);
}

#[test]
fn orbit_from_the_far_corner_settles_on_the_proximal_cycle() {
    let map = corpus_map("example49").unwrap();
    let trace = iterate(&map, &Point::planar(2.0, 2.0), 200, 1e-9).unwrap();
    assert!(trace.converged);
    assert!(trace.steps() < 200);
    assert_eq!(trace.gaps, trace.proximities);
    assert_eq!(trace.gaps.len(), trace.steps());
    for (i, w) in trace.iterates.windows(2).enumerate() {
        let g = Norm::LInf.metric(&w[0], &w[1]).unwrap();
        assert_eq!(g, trace.gaps[i]);
    }

    let (ex, ey) = planar(&trace.limit_even);
    assert!((ex - 1.0).abs() <= 1e-6 && (ey - 1.0).abs() <= 1e-6);
    let (ox, oy) = planar(&trace.limit_odd);
    assert!(ox.abs() <= 1e-6 && oy.abs() <= 1e-6);
}

#[test]
fn certificate_meets_the_residual_target() {
    let map = corpus_map("example49").unwrap();
    let cert = best_proximity_point(&map, &Point::planar(2.0, 2.0), 1e-8, 200).unwrap();
    assert!(cert.residual < 1e-8, "residual {}", cert.residual);
    assert!(cert.iterations < 200);
    assert_eq!(cert.dist_ab, 1.0);
    assert!((cert.proximity - 1.0).abs() < 1e-8);
    let (x, y) = planar(&cert.point);
    assert!((x - 1.0).abs() <= 1e-7 && (y - 1.0).abs() <= 1e-7);
    let (cx, cy) = planar(&cert.companion);
    assert!(cx.abs() <= 1e-7 && cy.abs() <= 1e-7);
}

#[test]
fn sixteen_starts_agree_on_the_proximity_point() {
    let map = corpus_map("example49").unwrap();
    let mut starts = map.draw(Side::A, 5, 8).unwrap();
    starts.extend(map.draw(Side::B, 6, 8).unwrap());
    assert_eq!(starts.len(), 16);

    let mut a_side = Vec::with_capacity(16);
    for s in &starts {
        let cert = best_proximity_point(&map, s, 1e-9, 400).unwrap();
        let p = if map.side_of(&cert.point) == Some(Side::A) {
            cert.point
        } else {
            cert.companion
        };
        a_side.push(p);
    }
    let first = a_side[0].clone();
    for (i, p) in a_side.iter().enumerate() {
        let d = Norm::LInf.metric(&first, p).unwrap();
        assert!(d <= 1e-7, "start {i} settled {d} away from the first");
    }
}

#[test]
fn gaps_decay_geometrically_toward_the_distance() {
    let map = corpus_map("example49").unwrap();
    let trace = iterate(&map, &Point::planar(2.0, 2.0), 60, 0.0).unwrap();
    let excess0 = trace.gaps[0] - 1.0;
    assert!(excess0 > 0.0);
    for (n, g) in trace.gaps.iter().enumerate() {
        let bound = 0.5f64.powi(n as i32) * excess0 + 1e-9;
        assert!(
            g - 1.0 <= bound,
            "step {n}: excess {} above the geometric bound {bound}",
            g - 1.0
        );
    }
}

#[test]
fn iterate_bounds_hold_along_the_verified_orbit() {
    let map = corpus_map("example49").unwrap();
    let report = check_iterate_bounds(&map, &Point::planar(2.0, 2.0), 0.5, 1000, 500, 11).unwrap();
    assert!(report.all_ok());
    assert_eq!(report.constant, 4.0);
    assert_eq!(report.iterations, 1000);
    assert!(
        report.even_margin >= 0.0,
        "even margin {}",
        report.even_margin
    );
    assert!(report.odd_margin >= 0.0, "odd margin {}", report.odd_margin);
}

#[test]
fn solver_guards_report_bad_inputs() {
    let map = corpus_map("example49").unwrap();
    let start = Point::planar(2.0, 2.0);

    let got = best_proximity_point(&map, &start, 1e-8, 4);
    assert!(matches!(
        got,
        Err(SolverError::BudgetExhausted { iterations: 4, .. })
    ));

    assert!(matches!(
        iterate(&map, &start, 3, 1e-8),
        Err(SolverError::Precondition(_))
    ));
    assert!(matches!(
        iterate(&map, &start, 100, -1.0),
        Err(SolverError::Precondition(_))
    ));
    assert!(matches!(
        iterate(&map, &Point::planar(0.5, 0.5), 100, 1e-8),
        Err(SolverError::Precondition(_))
    ));
    assert!(matches!(
        verify_contraction(&map, 1.0, 10, 3),
        Err(SolverError::Precondition(_))
    ));
    assert!(matches!(
        corpus_map("unknown"),
        Err(SolverError::UnknownMap(_))
    ));
    assert_eq!(map_names(), &["example49"]);
}

#[test]
fn coupled_reduction_doubles_distance_and_adds_constants() {
    let def = corpus_coupled("coupled49").unwrap();
    assert_eq!((def.alpha, def.beta), (0.25, 0.25));
    let cyc = coupled_to_cyclic(&def);
    assert_eq!(cyc.dist_ab, 2.0);
    assert_eq!(cyc.claimed, ClaimedClass::BanachCyclic { k: 0.5 });

    // The product distance is twice the base distance; duplicated argmin
    // pairs realize it in the sum metric.
    let a = corpus_region("ex49_A").unwrap();
    let b = corpus_region("ex49_B").unwrap();
    let est = set_distance(Norm::LInf, &a, &b, 512).unwrap();
    let (p, q) = &est.argmin_pair;
    let product = Norm::LInf.sum_metric((p, p), (q, q)).unwrap();
    assert!(
        (product - 2.0).abs() <= 2e-6,
        "product-space distance {product}"
    );

    let rep = verify_contraction(&cyc, 0.5, 500, 31).unwrap();
    assert!(rep.ok, "violation {}", rep.max_violation);
}

#[test]
fn coupled_solve_settles_at_twice_the_distance() {
    let def = corpus_coupled("coupled49").unwrap();
    let sol = coupled_solve(
        &def,
        &Point::planar(2.0, 2.0),
        &Point::planar(1.5, 2.5),
        1e-8,
        400,
    )
    .unwrap();
    assert!(sol.residual < 1e-8, "residual {}", sol.residual);
    assert!((sol.proximity - 2.0).abs() < 1e-8);
    assert!(sol.iterations < 400);
    assert!(def.region_a.contains(&sol.pair_a.0));
    assert!(def.region_a.contains(&sol.pair_a.1));
    assert!(def.region_b.contains(&sol.pair_b.0));
    assert!(def.region_b.contains(&sol.pair_b.1));
    for half in [&sol.pair_a.0, &sol.pair_a.1] {
        let (x, y) = planar(half);
        assert!((x - 1.0).abs() <= 1e-7 && (y - 1.0).abs() <= 1e-7);
    }
}
