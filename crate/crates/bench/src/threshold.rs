//! Search for the smallest seed count that makes a matcher percolate.
//!
//! A seed count "succeeds" when at least half of the trials percolate.
//! Each trial keeps one instance for the whole search, and the seed set of
//! size `phi` is a prefix of the seed set of size `phi + 1`, so the
//! success count is monotone in `phi` up to the stochasticity of the
//! percolation itself.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use crate::config::{ExperimentConfig, Mode};
use crate::error::BenchError;
use crate::pipeline::{
    prepare, run_prepared, seed_seed, PreparedInstance, RealGraph, TrialParams,
};
use crate::sweep::{bind_real, combination_key, instance_seed, load_real};

pub const SCHEMA_VERSION: u32 = 1;

pub const COLUMNS: &[&str] = &[
    "mode",
    "algorithm",
    "n",
    "k",
    "a",
    "b",
    "s",
    "fraction_known",
    "r",
    "r_c",
    "r_m",
    "a2_constrained",
    "trials",
    "phi_max",
    "threshold",
    "successes_at_threshold",
    "successes_below",
    "monotone_consistent",
    "evaluations",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdResult {
    /// `None` when no seed count up to `phi_max` succeeds.
    pub threshold: Option<usize>,
    pub trials: usize,
    pub phi_max: usize,
    /// Percolating trials at the threshold (or at `phi_max` when none).
    pub successes_at: usize,
    /// Percolating trials one seed below the threshold; `None` at 1.
    pub successes_below: Option<usize>,
    /// Success at the threshold and failure just below it, re-checked.
    pub monotone_consistent: bool,
    /// Distinct seed counts evaluated.
    pub evaluations: usize,
}

struct Search<'a> {
    params: &'a TrialParams,
    instances: Vec<(PreparedInstance, u64)>,
    memo: BTreeMap<usize, usize>,
}

impl Search<'_> {
    fn successes(&mut self, phi: usize) -> Result<usize, BenchError> {
        if let Some(&hit) = self.memo.get(&phi) {
            return Ok(hit);
        }
        let params = TrialParams { phi, ..*self.params };
        let outcomes: Vec<Result<bool, BenchError>> = self
            .instances
            .par_iter()
            .map(|(prep, seeds)| run_prepared(&params, prep, *seeds).map(|o| o.percolated))
            .collect();
        let mut hit = 0;
        for o in outcomes {
            hit += usize::from(o?);
        }
        self.memo.insert(phi, hit);
        Ok(hit)
    }

    fn succeeds(&mut self, phi: usize) -> Result<bool, BenchError> {
        Ok(2 * self.successes(phi)? >= self.instances.len())
    }
}

/// Exponential ramp over 1, 2, 4, ... up to `phi_max`, then binary search
/// between the last failing and first succeeding count.
pub fn find_threshold(
    params: &TrialParams,
    instances: Vec<(PreparedInstance, u64)>,
    phi_max: usize,
) -> Result<ThresholdResult, BenchError> {
    let trials = instances.len();
    let mut search = Search { params, instances, memo: BTreeMap::new() };
    let phi_max = phi_max.max(1);

    let mut lo = 0; // largest count known to fail (0 = none tried)
    let mut hi = None;
    let mut phi = 1;
    loop {
        if search.succeeds(phi)? {
            hi = Some(phi);
            break;
        }
        lo = phi;
        if phi == phi_max {
            break;
        }
        phi = (phi * 2).min(phi_max);
    }

    let Some(mut hi) = hi else {
        return Ok(ThresholdResult {
            threshold: None,
            trials,
            phi_max,
            successes_at: search.successes(phi_max)?,
            successes_below: None,
            monotone_consistent: true,
            evaluations: search.memo.len(),
        });
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if search.succeeds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let successes_at = search.successes(hi)?;
    let successes_below = if hi > 1 { Some(search.successes(hi - 1)?) } else { None };
    let monotone_consistent =
        2 * successes_at >= trials && successes_below.is_none_or(|s| 2 * s < trials);
    Ok(ThresholdResult {
        threshold: Some(hi),
        trials,
        phi_max,
        successes_at,
        successes_below,
        monotone_consistent,
        evaluations: search.memo.len(),
    })
}

/// Prepares the trial instances for one combination. Instance seeds do not
/// depend on `phi`.
pub fn prepare_instances(
    params: &TrialParams,
    real: Option<&RealGraph>,
    base_seed: u64,
    trials: usize,
) -> Result<Vec<(PreparedInstance, u64)>, BenchError> {
    let key = combination_key(params, false);
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let seed = instance_seed(base_seed, key, t);
            prepare(params, real, seed).map(|p| (p, seed_seed(seed)))
        })
        .collect()
}

/// Runs the search for every combination of the config (the `phi` axis is
/// ignored) and writes one CSV row per combination.
pub fn run_threshold<W: Write>(cfg: &ExperimentConfig, mut out: W) -> Result<Vec<ThresholdResult>, BenchError> {
    cfg.validate()?;
    let real = load_real(cfg)?;
    let mut combos: Vec<TrialParams> = Vec::new();
    for p in cfg.combinations() {
        let p = bind_real(TrialParams { phi: 0, ..p }, real.as_ref());
        if !combos.contains(&p) {
            combos.push(p);
        }
    }

    if let Some(p) = combos.iter().find(|p| cfg.phi_max.is_some_and(|m| m > p.n)) {
        return Err(BenchError::Config(format!("phi_max exceeds n = {}", p.n)));
    }

    writeln!(out, "# sidematch thresholds, schema {SCHEMA_VERSION}")?;
    for line in cfg.describe() {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "{}", COLUMNS.join(","))?;

    let mut results = Vec::new();
    for p in combos {
        let phi_max = cfg.phi_max.unwrap_or(p.n);
        let instances = prepare_instances(&p, real.as_ref(), cfg.base_seed, cfg.trials)?;
        let res = find_threshold(&p, instances, phi_max)?;
        let real_mode = cfg.mode == Mode::Real;
        let fields = [
            cfg.mode.name().to_string(),
            p.algorithm.name().to_string(),
            p.n.to_string(),
            p.k.to_string(),
            if real_mode { String::new() } else { p.a.to_string() },
            if real_mode { String::new() } else { p.b.to_string() },
            p.s.to_string(),
            p.fraction_known.to_string(),
            p.r.to_string(),
            p.r_c.to_string(),
            p.r_m.to_string(),
            p.a2_constrained.to_string(),
            res.trials.to_string(),
            res.phi_max.to_string(),
            res.threshold.map(|t| t.to_string()).unwrap_or_default(),
            res.successes_at.to_string(),
            res.successes_below.map(|s| s.to_string()).unwrap_or_default(),
            res.monotone_consistent.to_string(),
            res.evaluations.to_string(),
        ];
        writeln!(out, "{}", fields.join(","))?;
        results.push(res);
    }
    out.flush()?;
    Ok(results)
}
