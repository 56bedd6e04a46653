//! Thin JSON facade over the core crate for the static browser page in
//! `www/`. Every export takes plain scalars and returns a JSON string, so
//! the page needs no generated TypeScript and no framework.

use bestprox::convexity::modulus_curve;
use bestprox::corpus::{corpus_pair, run_falsifier};
use bestprox::geometry::{Norm, Point};
use bestprox::solver::{best_proximity_point, corpus_map, iterate};
use bestprox::ucprops::{corpus_family, PropertyTag};
use wasm_bindgen::prelude::*;

fn err_json(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

fn parse_norm(s: &str) -> Option<Norm> {
    match s {
        "l1" => Some(Norm::L1),
        "l2" => Some(Norm::L2),
        "linf" => Some(Norm::LInf),
        "lp3" => Some(Norm::Lp(3)),
        _ => None,
    }
}

/// Modulus-of-convexity curve; pass both `zx` and `zy` for the directional
/// variant.
#[wasm_bindgen]
pub fn modulus_curve_json(
    norm: &str,
    points: u32,
    budget: u32,
    zx: Option<f64>,
    zy: Option<f64>,
) -> String {
    let Some(n) = parse_norm(norm) else {
        return err_json(format!("unknown norm {norm:?}"));
    };
    let dir = match (zx, zy) {
        (Some(x), Some(y)) => Some(Point::planar(x, y)),
        _ => None,
    };
    match modulus_curve(n, dir.as_ref(), points as usize, budget as usize) {
        Ok(c) => serde_json::json!({
            "schema": 1,
            "norm": norm,
            "directional": dir.is_some(),
            "samples": c.samples,
        })
        .to_string(),
        Err(e) => err_json(e),
    }
}

/// Orbit of the example49 reflection map from `(x0, y0)`, with the
/// certificate when the iteration settles.
#[wasm_bindgen]
pub fn solve_trace_json(x0: f64, y0: f64, tol: f64, n_max: u32) -> String {
    let map = match corpus_map("example49") {
        Ok(m) => m,
        Err(e) => return err_json(e),
    };
    let start = Point::planar(x0, y0);
    let trace = match iterate(&map, &start, n_max as usize, tol) {
        Ok(t) => t,
        Err(e) => return err_json(e),
    };
    let pts: Vec<[f64; 2]> = trace
        .iterates
        .iter()
        .filter_map(|p| match p {
            Point::Planar(a, b) => Some([*a, *b]),
            _ => None,
        })
        .collect();
    let cert = best_proximity_point(&map, &start, tol, n_max as usize).ok();
    serde_json::json!({
        "schema": 1,
        "iterates": pts,
        "gaps": trace.gaps,
        "dist_ab": trace.dist_ab,
        "converged": trace.converged,
        "certificate": cert,
    })
    .to_string()
}

fn witness_series(name: &str, norm: Norm, n_max: u64) -> Option<serde_json::Value> {
    let f = corpus_family(name).ok()?;
    let step = (n_max / 64).max(1);
    let mut ns = Vec::new();
    let mut prox_x = Vec::new();
    let mut prox_z = Vec::new();
    let mut sep = Vec::new();
    let mut n = 1;
    while n <= n_max {
        let (x, z, y) = (f.x(n), f.z(n), f.y(n));
        ns.push(n);
        prox_x.push(norm.metric(&x, &y).unwrap_or(f64::NAN));
        prox_z.push(norm.metric(&z, &y).unwrap_or(f64::NAN));
        sep.push(norm.metric(&x, &z).unwrap_or(f64::NAN));
        n += step;
    }
    Some(serde_json::json!({
        "family": name,
        "n": ns,
        "prox_x": prox_x,
        "prox_z": prox_z,
        "separation": sep,
    }))
}

/// Falsification verdict for a catalog pair, plus the same-index series of
/// the witness family for plotting.
#[wasm_bindgen]
pub fn falsify_pair_json(pair: &str, property: &str, n_max: u32, tol: f64) -> String {
    let entry = match corpus_pair(pair) {
        Ok(e) => e,
        Err(e) => return err_json(e),
    };
    let prop = match property {
        "uc" => PropertyTag::Uc,
        "buc" => PropertyTag::Buc,
        "ucstar" => PropertyTag::UcStar,
        _ => return err_json(format!("unknown property {property:?}")),
    };
    let verdict = match run_falsifier(prop, entry, n_max as u64, tol) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let series = verdict
        .witness
        .as_deref()
        .and_then(|w| witness_series(w, entry.norm, n_max as u64));
    serde_json::json!({
        "schema": 1,
        "pair": pair,
        "verdict": verdict,
        "series": series,
    })
    .to_string()
}
