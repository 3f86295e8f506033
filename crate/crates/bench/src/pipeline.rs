//! One trial: instance, side information, matcher, evaluation.

use std::time::Instant;

use sidematch::graph::{intersection_graph, largest_component};
use sidematch::rng::derive_seed;
use sidematch::synth::sample_seed_sets_per_community;
use sidematch::{
    censor_labels, evaluate, gen_correlated, naive_match_partial, percolate,
    percolate_community_rounds, realpair_from_underlying, sample_seed_set, CommunityLabeling,
    CorrelatedInstance, Graph, Matching, MetricsReport, SbmParams, SeedSet, ThresholdPolicy,
};

use crate::error::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Deserialize)]
pub enum Algorithm {
    /// Community-degree-vector matching alone.
    #[serde(rename = "naive")]
    Naive,
    /// Uniform threshold 1, same-community pairs only.
    A1,
    /// Two thresholds, prior from the naive matcher.
    A2,
    /// Uniform threshold 2, same-community pairs only.
    A3,
    #[serde(rename = "community-rounds")]
    CommunityRounds,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::A1 => "A1",
            Algorithm::A2 => "A2",
            Algorithm::A3 => "A3",
            Algorithm::CommunityRounds => "community-rounds",
        }
    }
}

/// Parameter values of one sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialParams {
    pub algorithm: Algorithm,
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub k: usize,
    pub s: f64,
    /// Seed count; per community for community-rounds.
    pub phi: usize,
    pub fraction_known: f64,
    /// Uniform threshold for community-rounds.
    pub r: u32,
    pub r_c: u32,
    pub r_m: u32,
    /// Restrict A2's percolation to same-community pairs.
    pub a2_constrained: bool,
    pub percolation_success_fraction: f64,
}

impl TrialParams {
    pub fn sbm(&self) -> SbmParams {
        SbmParams::new(self.n, self.k, self.a, self.b)
    }
}

/// Underlying graph supplied from files instead of the SBM generator.
#[derive(Debug, Clone)]
pub struct RealGraph {
    pub graph: Graph,
    pub labeling: CommunityLabeling,
}

/// An instance plus everything about it that does not depend on the seeds.
#[derive(Debug, Clone)]
pub struct PreparedInstance {
    pub instance: CorrelatedInstance,
    pub labels1: CommunityLabeling,
    pub labels2: CommunityLabeling,
    pub giant: Vec<usize>,
    /// Naive matching; computed for `naive` and `A2`.
    pub prior: Option<Matching>,
}

#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub report: MetricsReport,
    pub percolated: bool,
    pub steps: usize,
    /// Correct pairs in the naive prior, when one was computed.
    pub prior_correct: Option<usize>,
    pub runtime_ms: f64,
}

pub fn prepare(
    params: &TrialParams,
    real: Option<&RealGraph>,
    instance_seed: u64,
) -> Result<PreparedInstance, BenchError> {
    let instance = match real {
        None => gen_correlated(&params.sbm(), params.s, instance_seed)?,
        Some(rg) => realpair_from_underlying(&rg.graph, &rg.labeling, params.s, instance_seed)?,
    };
    let labels1 = censor_labels(&instance.labeling1, params.fraction_known, instance_seed)?;
    let labels2 = labels1.transport(&instance.truth);
    let g_int = intersection_graph(&instance.g1, &instance.g2, &instance.truth)?;
    let giant = largest_component(&g_int);
    let prior = match params.algorithm {
        Algorithm::Naive | Algorithm::A2 => {
            Some(naive_match_partial(&instance.g1, &instance.g2, &labels1, &labels2)?)
        }
        _ => None,
    };
    Ok(PreparedInstance { instance, labels1, labels2, giant, prior })
}

/// Seed draw for a trial; distinct from the instance stream.
pub fn seed_seed(instance_seed: u64) -> u64 {
    derive_seed(instance_seed, &[0x5eed])
}

pub fn run_prepared(
    params: &TrialParams,
    prepared: &PreparedInstance,
    seed_rng: u64,
) -> Result<TrialOutcome, BenchError> {
    let start = Instant::now();
    let inst = &prepared.instance;
    let constraint = Some((&prepared.labels1, &prepared.labels2));
    let flat_seeds = || sample_seed_set(&inst.truth, params.phi.min(inst.n()), seed_rng);

    let (matching, stalled, steps) = match params.algorithm {
        Algorithm::Naive => (prepared.prior.clone().expect("prepared with prior"), false, 0),
        Algorithm::A1 | Algorithm::A3 => {
            let r = if params.algorithm == Algorithm::A1 { 1 } else { 2 };
            let res = percolate(
                &inst.g1,
                &inst.g2,
                &flat_seeds()?,
                ThresholdPolicy::Uniform(r),
                constraint,
            )?;
            (res.matching, res.stalled, res.steps)
        }
        Algorithm::A2 => {
            let prior = prepared.prior.as_ref().expect("prepared with prior");
            let policy = ThresholdPolicy::TwoThreshold { r_c: params.r_c, r_m: params.r_m, prior };
            let res = percolate(
                &inst.g1,
                &inst.g2,
                &flat_seeds()?,
                policy,
                if params.a2_constrained { constraint } else { None },
            )?;
            (res.matching, res.stalled, res.steps)
        }
        Algorithm::CommunityRounds => {
            let seeds: Vec<SeedSet> = sample_seed_sets_per_community(
                &inst.truth,
                &prepared.labels1,
                params.phi,
                seed_rng,
            )?;
            let res = percolate_community_rounds(
                &inst.g1,
                &inst.g2,
                &seeds,
                params.r,
                &prepared.labels1,
                &prepared.labels2,
            )?;
            (res.matching, res.stalled, res.steps)
        }
    };
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = evaluate(&matching, &inst.truth, &prepared.giant).with_stalled(stalled);
    let percolated = report.n_int > 0
        && report.matched as f64 >= params.percolation_success_fraction * report.n_int as f64;
    let prior_correct = prepared
        .prior
        .as_ref()
        .map(|m| m.pairs().filter(|&(i, j)| inst.truth.image(i) == j).count());
    Ok(TrialOutcome { report, percolated, steps, prior_correct, runtime_ms })
}

pub fn run_trial(
    params: &TrialParams,
    real: Option<&RealGraph>,
    instance_seed: u64,
) -> Result<TrialOutcome, BenchError> {
    let prepared = prepare(params, real, instance_seed)?;
    run_prepared(params, &prepared, seed_seed(instance_seed))
}
