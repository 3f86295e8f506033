//! Random small instances checked operation by operation against the
//! dense oracles.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sidematch::graph::{intersection_graph, largest_component};
use sidematch::synth::sample_seed_sets_per_community;
use sidematch::{
    candidate_pairs, censor_labels, delta_distance, gen_correlated, naive_match,
    naive_match_partial, percolate, percolate_community_rounds, sample_seed_set, Graph, Matching,
    Provenance, SbmParams, SeedSet, ThresholdPolicy,
};

use super::oracles::{self, Adj, Labels, PercolationTrace, Thresholds};

fn edges_of(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

fn trace_of(res: &sidematch::PercolationResult) -> PercolationTrace {
    let m = &res.matching;
    PercolationTrace {
        matched: (0..m.left_size())
            .map(|i| m.get(i).map(|j| (j, m.provenance(i) == Some(Provenance::Seed))))
            .collect(),
        frontier: res.frontier_history.clone(),
        increments: res.increments,
        stalled: res.stalled,
    }
}

fn prior_vec(m: &Matching) -> Vec<Option<usize>> {
    (0..m.left_size()).map(|i| m.get(i)).collect()
}

/// Random seed pairs with distinct endpoints, not necessarily correct.
fn arbitrary_seeds(rng: &mut ChaCha8Rng, n: usize, count: usize) -> SeedSet {
    let mut left: Vec<usize> = (0..n).collect();
    let mut right: Vec<usize> = (0..n).collect();
    left.shuffle(rng);
    right.shuffle(rng);
    SeedSet::new(left.into_iter().zip(right).take(count).collect())
}

/// Number of comparisons made, or a description of the first mismatch.
pub fn check_instance(seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=60);
    let k = rng.gen_range(1..=n.min(6));
    let q = rng.gen_range(0.0..0.15);
    let p = if k == 1 { q } else { rng.gen_range(q..0.5) + 0.01 };
    let s = rng.gen_range(0.4..=1.0);
    let params = SbmParams::with_probabilities(n, k, p, q);
    let inst = gen_correlated(&params, s, rng.gen()).map_err(|e| e.to_string())?;
    let (g1, g2) = (&inst.g1, &inst.g2);
    let adj1: Adj = oracles::dense(n, &edges_of(g1));
    let adj2: Adj = oracles::dense(n, &edges_of(g2));
    let perm = inst.truth.as_slice();
    let total1: Labels = inst.labeling1.labels().to_vec();
    let total2: Labels = inst.labeling2.labels().to_vec();
    let known = if rng.gen_bool(0.5) { 1.0 } else { 0.6 };
    let part1 = censor_labels(&inst.labeling1, known, rng.gen()).map_err(|e| e.to_string())?;
    let part2 = part1.transport(&inst.truth);
    let (pl1, pl2): (Labels, Labels) = (part1.labels().to_vec(), part2.labels().to_vec());
    let mut checks = 0;

    let g_int = intersection_graph(g1, g2, &inst.truth).map_err(|e| e.to_string())?;
    let want = oracles::intersection(&adj1, &adj2, perm);
    if edges_of(&g_int) != want {
        return Err(format!("intersection differs (seed {seed})"));
    }
    if largest_component(&g_int) != oracles::largest_component(n, &want) {
        return Err(format!("largest component differs (seed {seed})"));
    }
    checks += 2;

    for i in 0..n {
        for j in 0..n {
            if total1[i] != total2[j] {
                continue;
            }
            let got = delta_distance(g1, g2, &inst.labeling1, &inst.labeling2, i, j)
                .map_err(|e| e.to_string())?;
            let want = oracles::delta(&adj1, &adj2, &total1, &total2, k, i, j);
            if got != want {
                return Err(format!("delta({i}, {j}) = {got}, oracle {want} (seed {seed})"));
            }
            checks += 1;
        }
    }

    let naive = naive_match(g1, g2, &inst.labeling1, &inst.labeling2).map_err(|e| e.to_string())?;
    let partial = naive_match_partial(g1, g2, &part1, &part2).map_err(|e| e.to_string())?;
    for (got, (l1, l2)) in [(&naive, (&total1, &total2)), (&partial, (&pl1, &pl2))] {
        let want = oracles::naive(&adj1, &adj2, l1, l2, k);
        for (i, w) in want.iter().enumerate() {
            let g = got.get(i).map(|j| (j, got.delta(i).unwrap_or(usize::MAX), got.tie_flag(i)));
            if g != *w {
                return Err(format!("naive at {i}: {g:?} vs oracle {w:?} (seed {seed})"));
            }
            checks += 1;
        }
    }

    let prior = prior_vec(&naive);
    let phi = rng.gen_range(1..=n.min(5));
    let seed_sets = [
        sample_seed_set(&inst.truth, phi, rng.gen()).map_err(|e| e.to_string())?,
        arbitrary_seeds(&mut rng, n, phi),
    ];
    let policies: [(ThresholdPolicy<'_>, Thresholds<'_>); 6] = [
        (ThresholdPolicy::Uniform(1), Thresholds::Uniform(1)),
        (ThresholdPolicy::Uniform(2), Thresholds::Uniform(2)),
        (ThresholdPolicy::Uniform(3), Thresholds::Uniform(3)),
        (
            ThresholdPolicy::TwoThreshold { r_c: 1, r_m: 2, prior: &naive },
            Thresholds::Two { low: 1, high: 2, prior: &prior },
        ),
        (
            ThresholdPolicy::TwoThreshold { r_c: 1, r_m: 3, prior: &naive },
            Thresholds::Two { low: 1, high: 3, prior: &prior },
        ),
        (
            ThresholdPolicy::TwoThreshold { r_c: 2, r_m: 4, prior: &naive },
            Thresholds::Two { low: 2, high: 4, prior: &prior },
        ),
    ];
    let mut some_matching = None;
    for seeds in &seed_sets {
        for (policy, thresholds) in policies.iter().copied() {
            for constrained in [false, true] {
                let lib_c = constrained.then_some((&part1, &part2));
                let orc_c = constrained.then_some((&pl1, &pl2));
                let res = percolate(g1, g2, seeds, policy, lib_c).map_err(|e| e.to_string())?;
                let want = oracles::percolate(&adj1, &adj2, &seeds.pairs, thresholds, orc_c);
                let got = trace_of(&res);
                if got != want {
                    return Err(format!(
                        "percolate {policy:?} constrained={constrained}: {got:?} vs oracle {want:?} (seed {seed})"
                    ));
                }
                checks += 1;
                some_matching = Some(res.matching);
            }
        }
    }

    // Candidate streams against a mid-run matching state.
    let state = some_matching.expect("at least one run");
    let left_m: Vec<bool> = (0..n).map(|i| state.is_left_matched(i)).collect();
    let right_m: Vec<bool> = (0..n).map(|j| state.is_right_matched(j)).collect();
    for _ in 0..8 {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        for constrained in [false, true] {
            let lib_c = constrained.then_some((&part1, &part2));
            let orc_c = constrained.then_some((&pl1, &pl2));
            let got: Vec<_> = candidate_pairs(g1, g2, u, v, &state, lib_c).collect();
            let want = oracles::candidates(&adj1, &adj2, u, v, &left_m, &right_m, orc_c);
            if got != want {
                return Err(format!("candidates({u}, {v}) differ (seed {seed})"));
            }
            checks += 1;
        }
    }

    let per_community = rng.gen_range(1..=3);
    let sets = sample_seed_sets_per_community(&inst.truth, &inst.labeling1, per_community, rng.gen())
        .map_err(|e| e.to_string())?;
    let l1: Vec<usize> = total1.iter().map(|c| c.expect("total")).collect();
    let l2: Vec<usize> = total2.iter().map(|c| c.expect("total")).collect();
    for r in 1..=3 {
        let res =
            percolate_community_rounds(g1, g2, &sets, r, &inst.labeling1, &inst.labeling2)
                .map_err(|e| e.to_string())?;
        let raw: Vec<Vec<(usize, usize)>> = sets.iter().map(|s| s.pairs.clone()).collect();
        let want = oracles::community_rounds(&adj1, &adj2, &raw, r, &l1, &l2);
        let got = trace_of(&res);
        if got != want {
            return Err(format!("community rounds r={r}: {got:?} vs oracle {want:?} (seed {seed})"));
        }
        checks += 1;
    }
    Ok(checks)
}
