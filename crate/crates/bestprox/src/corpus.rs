//! The worked-example catalog: ordered set pairs with their known
//! distances and expected falsification verdicts, plus the aggregate
//! check behind the `corpus` subcommand.

use serde::Serialize;
use thiserror::Error;

use crate::convexity::{modulus_of_convexity, ConvexityError};
use crate::geometry::{GeometryError, Norm, Point};
use crate::regions::{corpus_region, set_distance, RegionError};
use crate::solver::{
    best_proximity_point, corpus_coupled, corpus_map, coupled_solve, verify_contraction,
    verify_cyclic, SolverError,
};
use crate::ucprops::{
    buc_falsify, corpus_family, family_names, uc_falsify, ucstar_falsify, FalsificationVerdict,
    PropertyTag, SequenceFamily, UcError, VerdictOutcome,
};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown pair {0:?}")]
    UnknownPair(String),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Uc(#[from] UcError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Convexity(#[from] ConvexityError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Expected falsifier outcomes for a pair when every catalog family is
/// offered as a candidate witness.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExpectedVerdicts {
    pub uc: VerdictOutcome,
    pub buc: VerdictOutcome,
    pub ucstar: VerdictOutcome,
}

/// One ordered pair of catalog sets under a fixed norm.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairEntry {
    pub name: &'static str,
    pub region_a: &'static str,
    pub region_b: &'static str,
    pub norm: Norm,
    /// Known distance between the sets.
    pub dist_ab: f64,
    /// Whether set_distance applies; the product-space pair carries no
    /// boundary parametrization and is declared not estimable.
    pub dist_estimable: bool,
    pub expected: ExpectedVerdicts,
    /// Default budget and tolerance for falsification runs on this pair.
    pub falsify_n_max: u64,
    pub falsify_tol: f64,
    pub notes: &'static str,
}

const FALSIFIED: VerdictOutcome = VerdictOutcome::Falsified;
const NO_CEX: VerdictOutcome = VerdictOutcome::NoCounterexampleWithinBudget;

const PAIRS: &[PairEntry] = &[
    PairEntry {
        name: "ex15_ab",
        region_a: "ex15_A",
        region_b: "ex15_B",
        norm: Norm::L1,
        dist_ab: 1.0,
        dist_estimable: true,
        expected: ExpectedVerdicts {
            uc: NO_CEX,
            buc: NO_CEX,
            ucstar: NO_CEX,
        },
        falsify_n_max: 1000,
        falsify_tol: 1e-3,
        notes: "unique l1-proximal pair (1,0)/(2,0); falsifiers can only \
                report the absence of counterexamples",
    },
    PairEntry {
        name: "ex15_bc",
        region_a: "ex15_B",
        region_b: "ex15_C",
        norm: Norm::LInf,
        dist_ab: 1.0,
        dist_estimable: true,
        expected: ExpectedVerdicts {
            uc: FALSIFIED,
            buc: FALSIFIED,
            ucstar: FALSIFIED,
        },
        falsify_n_max: 1000,
        falsify_tol: 1e-6,
        notes: "max-norm proximal freedom in y: the constant ex15bc family \
                splits two unit-separated points against one witness",
    },
    PairEntry {
        name: "ex16_ab",
        region_a: "ex16_A",
        region_b: "ex16_B",
        norm: Norm::LInf,
        dist_ab: 1.0,
        dist_estimable: true,
        expected: ExpectedVerdicts {
            uc: NO_CEX,
            buc: NO_CEX,
            ucstar: NO_CEX,
        },
        falsify_n_max: 1000,
        falsify_tol: 1e-3,
        notes: "proximal freedom exists on the diamonds, but no catalog \
                family lives on this geometry",
    },
    PairEntry {
        name: "ex16_bc",
        region_a: "ex16_B",
        region_b: "ex16_C",
        norm: Norm::LInf,
        dist_ab: 1.0,
        dist_estimable: true,
        expected: ExpectedVerdicts {
            uc: NO_CEX,
            buc: NO_CEX,
            ucstar: NO_CEX,
        },
        falsify_n_max: 1000,
        falsify_tol: 1e-3,
        notes: "same geometry as ex16_ab shifted by 2",
    },
    PairEntry {
        name: "ex43",
        region_a: "ex43_A",
        region_b: "ex43_B",
        norm: Norm::LInf,
        dist_ab: 1.0,
        dist_estimable: true,
        expected: ExpectedVerdicts {
            uc: FALSIFIED,
            buc: NO_CEX,
            ucstar: FALSIFIED,
        },
        falsify_n_max: 10_000,
        falsify_tol: 1e-3,
        notes: "the unbounded hyperbola family breaks merging; bounded \
                families stay inconclusive",
    },
    PairEntry {
        name: "ex49",
        region_a: "ex49_A",
        region_b: "ex49_B",
        norm: Norm::LInf,
        dist_ab: 1.0,
        dist_estimable: true,
        expected: ExpectedVerdicts {
            uc: FALSIFIED,
            buc: NO_CEX,
            ucstar: FALSIFIED,
        },
        falsify_n_max: 10_000,
        falsify_tol: 1e-3,
        notes: "extends the ex43 pair by a half plane, so the same \
                unbounded family applies; the reflection map still \
                converges on it",
    },
    PairEntry {
        name: "ex28_linf",
        region_a: "ex28_A",
        region_b: "ex28_B",
        norm: Norm::LInf,
        dist_ab: 0.0,
        dist_estimable: true,
        expected: ExpectedVerdicts {
            uc: NO_CEX,
            buc: NO_CEX,
            ucstar: NO_CEX,
        },
        falsify_n_max: 1000,
        falsify_tol: 1e-3,
        notes: "the epigraphs touch at infinity (distance 0), so \
                proximity-based falsification cannot separate them",
    },
    PairEntry {
        name: "ex28_l2",
        region_a: "ex28_A",
        region_b: "ex28_B",
        norm: Norm::L2,
        dist_ab: 0.0,
        dist_estimable: true,
        expected: ExpectedVerdicts {
            uc: NO_CEX,
            buc: NO_CEX,
            ucstar: NO_CEX,
        },
        falsify_n_max: 1000,
        falsify_tol: 1e-3,
        notes: "distance 0 under l2 as well; positive claims about the \
                pair are out of a falsifier's reach",
    },
    PairEntry {
        name: "ex50",
        region_a: "bx_unit_ball",
        region_b: "shell_r2",
        norm: Norm::ProductL2OfLp,
        dist_ab: 1.0,
        dist_estimable: false,
        expected: ExpectedVerdicts {
            uc: FALSIFIED,
            buc: FALSIFIED,
            ucstar: FALSIFIED,
        },
        falsify_n_max: 200,
        falsify_tol: 1e-2,
        notes: "bounded product-space family with separation \
                2^(1-1/(n+1)) falsifies all three properties",
    },
];

pub fn pairs() -> &'static [PairEntry] {
    PAIRS
}

pub fn pair_names() -> Vec<&'static str> {
    PAIRS.iter().map(|e| e.name).collect()
}

pub fn corpus_pair(name: &str) -> Result<&'static PairEntry, CorpusError> {
    PAIRS
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CorpusError::UnknownPair(name.to_string()))
}

pub fn property_label(p: PropertyTag) -> &'static str {
    match p {
        PropertyTag::Uc => "uc",
        PropertyTag::Buc => "buc",
        PropertyTag::UcStar => "ucstar",
    }
}

/// Honest one-line reading of a verdict. Deliberately never says "holds".
pub fn verdict_label(v: VerdictOutcome) -> &'static str {
    match v {
        VerdictOutcome::Falsified => "falsified",
        VerdictOutcome::NoCounterexampleWithinBudget => "no counterexample found within budget",
    }
}

pub fn expected_for(entry: &PairEntry, property: PropertyTag) -> VerdictOutcome {
    match property {
        PropertyTag::Uc => entry.expected.uc,
        PropertyTag::Buc => entry.expected.buc,
        PropertyTag::UcStar => entry.expected.ucstar,
    }
}

pub fn all_families() -> Result<Vec<SequenceFamily>, CorpusError> {
    family_names()
        .iter()
        .map(|n| corpus_family(n).map_err(CorpusError::from))
        .collect()
}

/// Runs one falsifier on one catalog pair, offering every catalog family.
pub fn run_falsifier(
    property: PropertyTag,
    entry: &PairEntry,
    n_max: u64,
    tol: f64,
) -> Result<FalsificationVerdict, CorpusError> {
    let a = corpus_region(entry.region_a)?;
    let b = corpus_region(entry.region_b)?;
    let fams = all_families()?;
    let v = match property {
        PropertyTag::Uc => uc_falsify(entry.norm, &a, &b, entry.dist_ab, &fams, n_max, tol)?,
        PropertyTag::Buc => buc_falsify(entry.norm, &a, &b, entry.dist_ab, &fams, n_max, tol)?,
        PropertyTag::UcStar => {
            ucstar_falsify(entry.norm, &a, &b, entry.dist_ab, &fams, n_max, tol)?
        }
    };
    Ok(v)
}

/// One set-distance estimate against the catalog value.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceRow {
    pub pair: String,
    pub norm: Norm,
    pub expected: f64,
    pub measured: Option<f64>,
    pub abs_error: Option<f64>,
    pub budget: usize,
    pub note: Option<String>,
}

pub fn distance_rows(budget: usize) -> Result<Vec<DistanceRow>, CorpusError> {
    let mut rows = Vec::new();
    for e in PAIRS {
        let mut row = DistanceRow {
            pair: e.name.to_string(),
            norm: e.norm,
            expected: e.dist_ab,
            measured: None,
            abs_error: None,
            budget,
            note: None,
        };
        if e.dist_estimable {
            let a = corpus_region(e.region_a)?;
            let b = corpus_region(e.region_b)?;
            let est = set_distance(e.norm, &a, &b, budget)?;
            row.abs_error = Some((est.value - e.dist_ab).abs());
            row.measured = Some(est.value);
        } else {
            row.note = Some("not estimable: no boundary parametrization".to_string());
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Options for the aggregate run. `solver_n_max` overrides only the
/// iteration budgets; `tol_scale` multiplies the distance and residual
/// tolerances (0.1 tightens tenfold).
#[derive(Debug, Clone, Copy)]
pub struct CorpusOptions {
    pub solver_n_max: Option<usize>,
    pub tol_scale: f64,
    pub dist_budget: usize,
    pub verify_pairs: usize,
    pub seed: u64,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            solver_n_max: None,
            tol_scale: 1.0,
            dist_budget: 512,
            verify_pairs: 2000,
            seed: 17,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusRow {
    pub entry: String,
    pub kind: String,
    pub expected: String,
    pub measured: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub schema: u32,
    pub rows: Vec<CorpusRow>,
    pub all_pass: bool,
}

impl CorpusSummary {
    /// Fixed-width table with one line per row.
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<22} {:<9} {:<42} {:<48} {}\n",
            "entry", "kind", "expected", "measured", "status"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<22} {:<9} {:<42} {:<48} {}\n",
                r.entry,
                r.kind,
                r.expected,
                r.measured,
                if r.pass { "PASS" } else { "FAIL" }
            ));
        }
        out
    }
}

fn row(entry: String, kind: &str, expected: String, measured: String, pass: bool) -> CorpusRow {
    CorpusRow {
        entry,
        kind: kind.to_string(),
        expected,
        measured,
        pass,
    }
}

/// Runs every catalog entry against its expected verdict or value.
pub fn corpus_run(opt: &CorpusOptions) -> Result<CorpusSummary, CorpusError> {
    let mut rows = Vec::new();
    let dist_tol = 1e-5 * opt.tol_scale;
    let solve_tol = 1e-8 * opt.tol_scale;
    let n_max = opt.solver_n_max.unwrap_or(400);

    for e in PAIRS {
        if e.dist_estimable {
            let a = corpus_region(e.region_a)?;
            let b = corpus_region(e.region_b)?;
            match set_distance(e.norm, &a, &b, opt.dist_budget) {
                Ok(est) => rows.push(row(
                    e.name.to_string(),
                    "distance",
                    format!("{:.6}", e.dist_ab),
                    format!("{:.6}", est.value),
                    (est.value - e.dist_ab).abs() <= dist_tol,
                )),
                Err(err) => rows.push(row(
                    e.name.to_string(),
                    "distance",
                    format!("{:.6}", e.dist_ab),
                    err.to_string(),
                    false,
                )),
            }
        } else {
            let a = corpus_region(e.region_a)?;
            let b = corpus_region(e.region_b)?;
            let outcome = set_distance(e.norm, &a, &b, opt.dist_budget);
            rows.push(row(
                e.name.to_string(),
                "distance",
                "not estimable".to_string(),
                match &outcome {
                    Ok(est) => format!("{:.6}", est.value),
                    Err(err) => err.to_string(),
                },
                matches!(outcome, Err(RegionError::NotEstimable(..))),
            ));
        }
    }

    for e in PAIRS {
        for prop in [PropertyTag::Uc, PropertyTag::Buc, PropertyTag::UcStar] {
            let expect = expected_for(e, prop);
            let name = format!("{}:{}", e.name, property_label(prop));
            match run_falsifier(prop, e, e.falsify_n_max, e.falsify_tol) {
                Ok(v) => {
                    let measured = match (&v.outcome, &v.witness) {
                        (VerdictOutcome::Falsified, Some(w)) => {
                            format!("falsified by {w} via {}", v.route.as_deref().unwrap_or("?"))
                        }
                        _ => verdict_label(v.outcome).to_string(),
                    };
                    rows.push(row(
                        name,
                        "falsify",
                        verdict_label(expect).to_string(),
                        measured,
                        v.outcome == expect,
                    ));
                }
                Err(err) => rows.push(row(
                    name,
                    "falsify",
                    verdict_label(expect).to_string(),
                    err.to_string(),
                    false,
                )),
            }
        }
    }

    let map = corpus_map("example49")?;
    let cyc = verify_cyclic(&map, 500, opt.seed)?;
    rows.push(row(
        "example49:cyclic".to_string(),
        "verify",
        "images swap sides".to_string(),
        format!("{} samples, ok = {}", cyc.checked, cyc.ok),
        cyc.ok,
    ));
    let con = verify_contraction(&map, 0.5, opt.verify_pairs, opt.seed)?;
    rows.push(row(
        "example49:contraction".to_string(),
        "verify",
        "max violation <= 1e-9 at k = 1/2".to_string(),
        format!(
            "max violation {:.3e} on {} pairs",
            con.max_violation, con.checked
        ),
        con.ok,
    ));

    match best_proximity_point(&map, &Point::planar(2.0, 2.0), solve_tol, n_max) {
        Ok(cert) => {
            let off = Norm::LInf.metric(&cert.point, &Point::planar(1.0, 1.0))?;
            rows.push(row(
                "example49:solve".to_string(),
                "solve",
                format!("(1,1) residual < {solve_tol:.1e}"),
                format!("residual {:.3e}, off-target {:.3e}", cert.residual, off),
                cert.residual < solve_tol && off <= 1e-6,
            ));
        }
        Err(err) => rows.push(row(
            "example49:solve".to_string(),
            "solve",
            format!("(1,1) residual < {solve_tol:.1e}"),
            err.to_string(),
            false,
        )),
    }

    let def = corpus_coupled("coupled49")?;
    match coupled_solve(
        &def,
        &Point::planar(2.0, 2.0),
        &Point::planar(3.0, 1.0 / 3.0),
        solve_tol,
        n_max,
    ) {
        Ok(sol) => rows.push(row(
            "coupled49:solve".to_string(),
            "solve",
            format!("residual < {solve_tol:.1e}"),
            format!(
                "residual {:.3e} after {} steps",
                sol.residual, sol.iterations
            ),
            sol.residual < solve_tol,
        )),
        Err(err) => rows.push(row(
            "coupled49:solve".to_string(),
            "solve",
            format!("residual < {solve_tol:.1e}"),
            err.to_string(),
            false,
        )),
    }

    let m2 = modulus_of_convexity(Norm::L2, 1.0, 256)?;
    let oracle = 1.0 - (1.0 - 0.25f64).sqrt();
    rows.push(row(
        "modulus:l2".to_string(),
        "modulus",
        format!("{oracle:.6} at eps = 1"),
        format!("{:.6}", m2.value),
        (m2.value - oracle).abs() <= 1e-5,
    ));
    let mi = modulus_of_convexity(Norm::LInf, 1.0, 256)?;
    rows.push(row(
        "modulus:linf".to_string(),
        "modulus",
        "0 at eps = 1".to_string(),
        format!("{:.3e}", mi.value),
        mi.value <= 1e-9,
    ));

    let all_pass = rows.iter().all(|r| r.pass);
    Ok(CorpusSummary {
        schema: 1,
        rows,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_consistent() {
        assert_eq!(PAIRS.len(), 9);
        for e in PAIRS {
            assert!(corpus_region(e.region_a).is_ok(), "{}", e.region_a);
            assert!(corpus_region(e.region_b).is_ok(), "{}", e.region_b);
            assert!(e.falsify_tol > 0.0);
            assert!(e.falsify_n_max >= 16);
        }
        assert!(corpus_pair("ex43").is_ok());
        assert!(matches!(
            corpus_pair("ex51"),
            Err(CorpusError::UnknownPair(_))
        ));
    }

    #[test]
    fn falsify_matches_expectations_on_the_key_pairs() {
        for (name, prop, want) in [
            ("ex43", PropertyTag::Uc, FALSIFIED),
            ("ex43", PropertyTag::Buc, NO_CEX),
            ("ex50", PropertyTag::Buc, FALSIFIED),
            ("ex15_bc", PropertyTag::UcStar, FALSIFIED),
            ("ex15_ab", PropertyTag::Uc, NO_CEX),
        ] {
            let e = corpus_pair(name).unwrap();
            let v = run_falsifier(prop, e, e.falsify_n_max, e.falsify_tol).unwrap();
            assert_eq!(v.outcome, want, "{name}:{}", property_label(prop));
        }
    }

    #[test]
    fn distance_rows_cover_every_pair() {
        let rows = distance_rows(64).unwrap();
        assert_eq!(rows.len(), PAIRS.len());
        let ex50 = rows.iter().find(|r| r.pair == "ex50").unwrap();
        assert!(ex50.measured.is_none());
        assert!(ex50.note.is_some());
        let ex43 = rows.iter().find(|r| r.pair == "ex43").unwrap();
        assert!(ex43.abs_error.unwrap() <= 1e-4);
    }

    #[test]
    fn verdict_text_stays_honest() {
        assert_eq!(
            verdict_label(NO_CEX),
            "no counterexample found within budget"
        );
        assert!(!verdict_label(NO_CEX).contains("holds"));
    }
}
