//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes plain numbers and returns a JSON string. The typed
//! functions underneath are ordinary Rust and are tested natively.

use serde::Serialize;
use sidematch::graph::{intersection_graph, largest_component};
use sidematch::rng::derive_seed;
use sidematch::theory::exact_naive_b_bound;
use sidematch::{
    evaluate, gen_correlated, naive_match, percolate, percolate_community_rounds,
    sample_seed_set, sample_seed_sets_per_community, Error, SbmParams, ThresholdPolicy,
};
use wasm_bindgen::prelude::*;

/// Keeps a single call responsive in a browser tab.
pub const MAX_VERTICES: usize = 20_000;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct MatchSummary {
    pub algorithm: String,
    pub n: usize,
    pub n_int: usize,
    pub matched: usize,
    pub correct: usize,
    pub wrong: usize,
    pub f: f64,
    pub e: Option<f64>,
    pub f1: Option<f64>,
    /// Matched count before spreading, then after each spreading step.
    pub growth: Vec<usize>,
    pub stalled: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
}

fn check_size(n: usize) -> Result<(), Error> {
    if n > MAX_VERTICES {
        return Err(Error::InvalidParams(format!("n must be at most {MAX_VERTICES} in the demo")));
    }
    Ok(())
}

/// One correlated SBM pair (a = 2b) matched by `algorithm`: `naive`, `A1`,
/// `A2`, `A3` or `community-rounds`. `phi` counts seeds, per community for
/// the round-based matcher.
pub fn match_instance(
    algorithm: &str,
    n: usize,
    k: usize,
    b: f64,
    s: f64,
    phi: usize,
    seed: u64,
) -> Result<MatchSummary, Error> {
    check_size(n)?;
    let inst = gen_correlated(&SbmParams::new(n, k, 2.0 * b, b), s, derive_seed(seed, &[1]))?;
    let (g1, g2) = (&inst.g1, &inst.g2);
    let labels = Some((&inst.labeling1, &inst.labeling2));
    let seed_rng = derive_seed(seed, &[2]);
    let flat = || sample_seed_set(&inst.truth, phi.min(n), seed_rng);
    let (matching, frontier, stalled) = match algorithm {
        "naive" => (naive_match(g1, g2, &inst.labeling1, &inst.labeling2)?, Vec::new(), false),
        "A1" | "A3" => {
            let r = if algorithm == "A1" { 1 } else { 2 };
            let res = percolate(g1, g2, &flat()?, ThresholdPolicy::Uniform(r), labels)?;
            (res.matching, res.frontier_history, res.stalled)
        }
        "A2" => {
            let prior = naive_match(g1, g2, &inst.labeling1, &inst.labeling2)?;
            let policy = ThresholdPolicy::TwoThreshold { r_c: 1, r_m: 2, prior: &prior };
            let res = percolate(g1, g2, &flat()?, policy, None)?;
            (res.matching, res.frontier_history, res.stalled)
        }
        "community-rounds" => {
            let sets = sample_seed_sets_per_community(&inst.truth, &inst.labeling1, phi, seed_rng)?;
            let res = percolate_community_rounds(g1, g2, &sets, 2, &inst.labeling1, &inst.labeling2)?;
            (res.matching, res.frontier_history, res.stalled)
        }
        other => return Err(Error::InvalidParams(format!("unknown algorithm {other:?}"))),
    };
    let giant = largest_component(&intersection_graph(g1, g2, &inst.truth)?);
    let report = evaluate(&matching, &inst.truth, &giant);
    let seeded = report.matched - frontier.iter().sum::<usize>();
    let growth = std::iter::once(seeded)
        .chain(frontier.iter().scan(seeded, |total, &step| {
            *total += step;
            Some(*total)
        }))
        .collect();
    Ok(MatchSummary {
        algorithm: algorithm.to_owned(),
        n,
        n_int: report.n_int,
        matched: report.matched,
        correct: report.correct,
        wrong: report.wrong,
        f: report.f,
        e: report.e,
        f1: report.f1,
        growth,
        stalled,
    })
}

/// Naive-matcher error rate on one instance per community count.
pub fn naive_error_curve(n: usize, b: f64, s: f64, ks: &[usize], seed: u64) -> Result<Vec<CurvePoint>, Error> {
    check_size(n)?;
    ks.iter()
        .map(|&k| {
            let summary = match_instance("naive", n, k, b, s, 0, derive_seed(seed, &[k as u64]))?;
            Ok(CurvePoint { x: k as f64, y: summary.e.unwrap_or(1.0) })
        })
        .collect()
}

/// Smallest b at which the naive matcher is exact, over `steps` values of
/// alpha = log K / log n spread across (0, 1). Points with no finite bound
/// are left out.
pub fn b_bound_points(s: f64, steps: usize) -> Vec<CurvePoint> {
    (1..steps)
        .filter_map(|i| {
            let alpha = i as f64 / steps as f64;
            exact_naive_b_bound(alpha, s)
                .ok()
                .filter(|b| b.is_finite())
                .map(|y| CurvePoint { x: alpha, y })
        })
        .collect()
}

fn to_js<T: Serialize>(value: &T) -> Result<String, JsError> {
    serde_json::to_string(value).map_err(|e| JsError::new(&e.to_string()))
}

fn js_err(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn run_matching(
    algorithm: &str,
    n: usize,
    k: usize,
    b: f64,
    s: f64,
    phi: usize,
    seed: u32,
) -> Result<String, JsError> {
    to_js(&match_instance(algorithm, n, k, b, s, phi, u64::from(seed)).map_err(js_err)?)
}

#[wasm_bindgen]
pub fn naive_error_by_k(n: usize, b: f64, s: f64, ks: Vec<u32>, seed: u32) -> Result<String, JsError> {
    let ks: Vec<usize> = ks.into_iter().map(|k| k as usize).collect();
    to_js(&naive_error_curve(n, b, s, &ks, u64::from(seed)).map_err(js_err)?)
}

#[wasm_bindgen]
pub fn b_bound_curve(s: f64, steps: usize) -> Result<String, JsError> {
    to_js(&b_bound_points(s, steps))
}
