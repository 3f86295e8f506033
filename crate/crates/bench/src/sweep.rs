//! Monte-Carlo sweeps written as CSV.

use std::io::Write;

use rayon::prelude::*;
use sidematch::io::{ingest_edge_list, ingest_labels};
use sidematch::rng::derive_seed;

use crate::config::{ExperimentConfig, Mode};
use crate::error::BenchError;
use crate::pipeline::{run_trial, RealGraph, TrialOutcome, TrialParams};

/// Bumped whenever the column set or its meaning changes.
pub const SCHEMA_VERSION: u32 = 1;

pub const COLUMNS: &[&str] = &[
    "mode",
    "algorithm",
    "n",
    "k",
    "a",
    "b",
    "s",
    "phi",
    "fraction_known",
    "r",
    "r_c",
    "r_m",
    "a2_constrained",
    "trial",
    "instance_seed",
    "matched",
    "correct",
    "wrong",
    "f",
    "e",
    "n_int",
    "precision_giant",
    "recall",
    "f1_giant",
    "precision",
    "f1",
    "tie_count",
    "prior_correct",
    "stalled",
    "percolated",
    "steps",
    "runtime_ms",
];

/// Loads the underlying graph for `mode = "real"`: largest connected
/// component of the edge list, with labels restricted to it.
pub fn load_real(cfg: &ExperimentConfig) -> Result<Option<RealGraph>, BenchError> {
    if cfg.mode != Mode::Real {
        return Ok(None);
    }
    let edges = cfg.edges.as_ref().ok_or_else(|| BenchError::Config("missing edges".into()))?;
    let labels = cfg.labels.as_ref().ok_or_else(|| BenchError::Config("missing labels".into()))?;
    let full = ingest_edge_list(edges)?;
    let labeling = ingest_labels(labels, &full.ids)?;
    let (lcc, keep) = full.largest_component();
    Ok(Some(RealGraph { graph: lcc.graph, labeling: labeling.restrict(&keep) }))
}

/// Replaces `n` and `k` with the values of the real graph, if any.
pub fn bind_real(mut params: TrialParams, real: Option<&RealGraph>) -> TrialParams {
    if let Some(rg) = real {
        params.n = rg.graph.vertex_count();
        params.k = rg.labeling.community_count();
    }
    params
}

/// Stable digest of the parameters that define a combination.
pub fn combination_key(params: &TrialParams, include_phi: bool) -> u64 {
    let words = [
        params.algorithm as u64,
        params.n as u64,
        params.k as u64,
        params.a.to_bits(),
        params.b.to_bits(),
        params.s.to_bits(),
        if include_phi { params.phi as u64 } else { u64::MAX },
        params.fraction_known.to_bits(),
        u64::from(params.r),
        u64::from(params.r_c),
        u64::from(params.r_m),
        u64::from(params.a2_constrained),
    ];
    derive_seed(0, &words)
}

pub fn instance_seed(base_seed: u64, combination: u64, trial: usize) -> u64 {
    derive_seed(base_seed, &[combination, trial as u64])
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn row(
    cfg: &ExperimentConfig,
    p: &TrialParams,
    trial: usize,
    seed: u64,
    o: &TrialOutcome,
) -> String {
    let m = &o.report;
    let real = cfg.mode == Mode::Real;
    let fields = [
        cfg.mode.name().to_string(),
        p.algorithm.name().to_string(),
        p.n.to_string(),
        p.k.to_string(),
        if real { String::new() } else { p.a.to_string() },
        if real { String::new() } else { p.b.to_string() },
        p.s.to_string(),
        p.phi.to_string(),
        p.fraction_known.to_string(),
        p.r.to_string(),
        p.r_c.to_string(),
        p.r_m.to_string(),
        p.a2_constrained.to_string(),
        trial.to_string(),
        seed.to_string(),
        m.matched.to_string(),
        m.correct.to_string(),
        m.wrong.to_string(),
        m.f.to_string(),
        opt(m.e),
        m.n_int.to_string(),
        opt(m.precision_giant),
        opt(m.recall),
        opt(m.f1_giant),
        opt(m.precision),
        opt(m.f1),
        m.tie_count.to_string(),
        opt(o.prior_correct),
        m.stalled.to_string(),
        o.percolated.to_string(),
        o.steps.to_string(),
        if cfg.record_timing { format!("{:.3}", o.runtime_ms) } else { "0".to_string() },
    ];
    fields.join(",")
}

/// Runs every (combination, trial) and writes the CSV to `out`. Trials run
/// in parallel; rows are emitted in (combination, trial) order.
pub fn run_sweep<W: Write>(cfg: &ExperimentConfig, mut out: W) -> Result<usize, BenchError> {
    cfg.validate()?;
    let real = load_real(cfg)?;
    let jobs: Vec<(TrialParams, u64, usize)> = cfg
        .combinations()
        .into_iter()
        .map(|p| bind_real(p, real.as_ref()))
        .flat_map(|p| {
            let key = combination_key(&p, true);
            (0..cfg.trials).map(move |t| (p, key, t))
        })
        .collect();

    let rows: Vec<Result<String, BenchError>> = jobs
        .par_iter()
        .map(|&(p, key, t)| {
            let seed = instance_seed(cfg.base_seed, key, t);
            run_trial(&p, real.as_ref(), seed).map(|o| row(cfg, &p, t, seed, &o))
        })
        .collect();

    writeln!(out, "# sidematch trials, schema {SCHEMA_VERSION}")?;
    for line in cfg.describe() {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "{}", COLUMNS.join(","))?;
    let mut count = 0;
    for r in rows {
        writeln!(out, "{}", r?)?;
        count += 1;
    }
    out.flush()?;
    Ok(count)
}
