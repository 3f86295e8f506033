//! Stochastic block model instances and edge-sampled correlated pairs.
//!
//! Intra-community pairs carry an edge with probability `p = a ln(n) / n`
//! and inter-community pairs with `q = b ln(n) / n`, unless explicit
//! probabilities override them. A correlated pair keeps every edge of one
//! underlying draw independently with probability `s`, once per graph, and
//! then hides the second graph behind a uniformly random relabeling.
//!
//! Edges are enumerated block by block (community pairs `c1 <= c2` in
//! lexicographic order) with geometric skips between successes, so a draw
//! costs time proportional to the number of edges rather than `n^2`. The
//! exact sequence for a given seed is part of the reproducibility contract.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{CommunityLabeling, Graph, GroundTruth};
use crate::rng::{stream, Phase, StreamRng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbmParams {
    pub n: usize,
    pub k: usize,
    /// Intra-community coefficient: `p = a ln(n) / n`.
    pub a: f64,
    /// Inter-community coefficient: `q = b ln(n) / n`.
    pub b: f64,
    pub p_override: Option<f64>,
    pub q_override: Option<f64>,
}

impl SbmParams {
    pub fn new(n: usize, k: usize, a: f64, b: f64) -> SbmParams {
        SbmParams { n, k, a, b, p_override: None, q_override: None }
    }

    /// Explicit edge probabilities. `p == q` is admitted here (the
    /// Erdős–Rényi degenerate case).
    pub fn with_probabilities(n: usize, k: usize, p: f64, q: f64) -> SbmParams {
        SbmParams { n, k, a: 0.0, b: 0.0, p_override: Some(p), q_override: Some(q) }
    }

    fn log_scale(&self) -> f64 {
        if self.n <= 1 {
            0.0
        } else {
            (self.n as f64).ln() / self.n as f64
        }
    }

    pub fn p(&self) -> f64 {
        self.p_override.unwrap_or(self.a * self.log_scale())
    }

    pub fn q(&self) -> f64 {
        self.q_override.unwrap_or(self.b * self.log_scale())
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > self.n.max(1) {
            return Err(Error::InvalidParams(format!(
                "need 1 <= k <= n, got k = {} with n = {}",
                self.k, self.n
            )));
        }
        let (p, q) = (self.p(), self.q());
        for (name, x) in [("p", p), ("q", q)] {
            if !(0.0..=1.0).contains(&x) || x.is_nan() {
                return Err(Error::InvalidParams(format!("{name} = {x} outside [0, 1]")));
            }
        }
        if self.k > 1 {
            let explicit = self.p_override.is_some() || self.q_override.is_some();
            if p < q || (p == q && !explicit) {
                return Err(Error::InvalidParams(format!(
                    "communities must be assortative (p > q), got p = {p}, q = {q}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CorrelatedInstance {
    /// The graph both observations were sampled from, in first-graph ids.
    pub underlying: Graph,
    pub g1: Graph,
    pub g2: Graph,
    pub truth: GroundTruth,
    pub labeling1: CommunityLabeling,
    pub labeling2: CommunityLabeling,
    pub s: f64,
    /// `None` for pairs sampled from an ingested real graph.
    pub params: Option<SbmParams>,
    pub rng_seed: u64,
}

impl CorrelatedInstance {
    pub fn n(&self) -> usize {
        self.g1.vertex_count()
    }
}

/// Seed pairs `(left, right)` handed to the percolation matcher.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeedSet {
    pub pairs: Vec<(usize, usize)>,
}

impl SeedSet {
    pub fn new(pairs: Vec<(usize, usize)>) -> SeedSet {
        SeedSet { pairs }
    }

    pub fn phi(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Calls `emit` with the index of every success among `m` Bernoulli(`p`)
/// trials, ascending.
fn bernoulli_successes(rng: &mut StreamRng, m: u64, p: f64, mut emit: impl FnMut(u64)) {
    if p <= 0.0 || m == 0 {
        return;
    }
    if p >= 1.0 {
        (0..m).for_each(emit);
        return;
    }
    let log_fail = (-p).ln_1p();
    let mut next = 0u64;
    loop {
        let u: f64 = rng.gen();
        let skip = ((-u).ln_1p() / log_fail).floor();
        if skip >= (m - next) as f64 {
            return;
        }
        next += skip as u64;
        emit(next);
        next += 1;
        if next >= m {
            return;
        }
    }
}

/// Community block layout used by the generator: community `c` owns the
/// contiguous id range `starts[c]..starts[c + 1]`.
fn block_starts(n: usize, k: usize) -> Vec<usize> {
    let base = n / k;
    let extra = n % k;
    let mut starts = Vec::with_capacity(k + 1);
    starts.push(0);
    for c in 0..k {
        let size = base + usize::from(c < extra);
        starts.push(starts[c] + size);
    }
    starts
}

/// Draws an SBM graph and its (contiguous, balanced) community labeling.
pub fn gen_sbm(params: &SbmParams, rng_seed: u64) -> Result<(Graph, CommunityLabeling)> {
    params.validate()?;
    let (n, k) = (params.n, params.k);
    let (p, q) = (params.p(), params.q());
    let starts = block_starts(n, k);
    let mut rng = stream(rng_seed, Phase::Underlying);
    let mut edges = Vec::new();
    for c1 in 0..k {
        let (lo1, hi1) = (starts[c1], starts[c1 + 1]);
        let size1 = hi1 - lo1;
        // Intra block: pairs x < y, row-major.
        let pairs = (size1 * size1.saturating_sub(1) / 2) as u64;
        let mut row = 0usize;
        let mut row_start = 0u64;
        bernoulli_successes(&mut rng, pairs, p, |idx| {
            while idx >= row_start + (size1 - 1 - row) as u64 {
                row_start += (size1 - 1 - row) as u64;
                row += 1;
            }
            let col = row + 1 + (idx - row_start) as usize;
            edges.push((lo1 + row, lo1 + col));
        });
        for c2 in c1 + 1..k {
            let (lo2, hi2) = (starts[c2], starts[c2 + 1]);
            let size2 = hi2 - lo2;
            bernoulli_successes(&mut rng, (size1 * size2) as u64, q, |idx| {
                let idx = idx as usize;
                edges.push((lo1 + idx / size2, lo2 + idx % size2));
            });
        }
    }
    let graph = Graph::from_unique_edges(n, &edges);
    Ok((graph, CommunityLabeling::balanced_blocks(n, k)))
}

fn sample_edges(g: &Graph, s: f64, rng: &mut StreamRng) -> Graph {
    let kept: Vec<(usize, usize)> = g.edges().filter(|_| rng.gen::<f64>() < s).collect();
    Graph::from_unique_edges(g.vertex_count(), &kept)
}

fn check_sampling(s: f64) -> Result<()> {
    if s > 0.0 && s <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("sampling parameter s = {s} outside (0, 1]")))
    }
}

fn correlate(
    underlying: Graph,
    labeling: CommunityLabeling,
    s: f64,
    params: Option<SbmParams>,
    rng_seed: u64,
) -> CorrelatedInstance {
    let n = underlying.vertex_count();
    let g1 = sample_edges(&underlying, s, &mut stream(rng_seed, Phase::SampleFirst));
    let g2_unshuffled = sample_edges(&underlying, s, &mut stream(rng_seed, Phase::SampleSecond));
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut stream(rng_seed, Phase::Permutation));
    let truth = GroundTruth::new(perm).expect("shuffle yields a permutation");
    let g2 = g2_unshuffled.relabel(&truth);
    let labeling2 = labeling.transport(&truth);
    CorrelatedInstance {
        underlying,
        g1,
        g2,
        truth,
        labeling1: labeling,
        labeling2,
        s,
        params,
        rng_seed,
    }
}

/// Draws one underlying SBM graph and two independent edge samples of it;
/// the second sample is relabeled by a uniform random permutation.
pub fn gen_correlated(params: &SbmParams, s: f64, rng_seed: u64) -> Result<CorrelatedInstance> {
    check_sampling(s)?;
    let (g, labeling) = gen_sbm(params, rng_seed)?;
    Ok(correlate(g, labeling, s, Some(*params), rng_seed))
}

/// Same sampling and anonymisation as [`gen_correlated`], starting from a
/// given underlying graph (typically an ingested real network).
pub fn realpair_from_underlying(
    g: &Graph,
    labeling: &CommunityLabeling,
    s: f64,
    rng_seed: u64,
) -> Result<CorrelatedInstance> {
    check_sampling(s)?;
    if labeling.vertex_count() != g.vertex_count() {
        return Err(Error::SizeMismatch {
            left: g.vertex_count(),
            right: labeling.vertex_count(),
        });
    }
    Ok(correlate(g.clone(), labeling.clone(), s, None, rng_seed))
}

/// `phi` correct pairs drawn uniformly without replacement.
///
/// Uses a partial Fisher–Yates shuffle, so for a fixed seed the draw for
/// `phi` is a prefix of the draw for any larger `phi`.
pub fn sample_seed_set(truth: &GroundTruth, phi: usize, rng_seed: u64) -> Result<SeedSet> {
    let n = truth.len();
    if phi > n {
        return Err(Error::InvalidParams(format!("phi = {phi} exceeds n = {n}")));
    }
    let mut rng = stream(rng_seed, Phase::Seeds);
    let mut order: Vec<usize> = (0..n).collect();
    for i in 0..phi {
        let j = rng.gen_range(i..n);
        order.swap(i, j);
    }
    Ok(SeedSet::new(order[..phi].iter().map(|&v| (v, truth.image(v))).collect()))
}

/// `phi` correct pairs per community, drawn uniformly without replacement
/// from each community's members (all of them when a community is smaller
/// than `phi`). Entry `c` of the result holds community `c`'s seeds.
pub fn sample_seed_sets_per_community(
    truth: &GroundTruth,
    labeling: &CommunityLabeling,
    phi: usize,
    rng_seed: u64,
) -> Result<Vec<SeedSet>> {
    if labeling.vertex_count() != truth.len() {
        return Err(Error::SizeMismatch { left: truth.len(), right: labeling.vertex_count() });
    }
    let mut rng = stream(rng_seed, Phase::Seeds);
    let sets = (0..labeling.community_count())
        .map(|c| {
            let mut members = labeling.members(c).to_vec();
            let take = phi.min(members.len());
            for i in 0..take {
                let j = rng.gen_range(i..members.len());
                members.swap(i, j);
            }
            SeedSet::new(members[..take].iter().map(|&v| (v, truth.image(v))).collect())
        })
        .collect();
    Ok(sets)
}

/// Keeps each label independently with probability `fraction_known`.
pub fn censor_labels(
    labeling: &CommunityLabeling,
    fraction_known: f64,
    rng_seed: u64,
) -> Result<CommunityLabeling> {
    if !(0.0..=1.0).contains(&fraction_known) {
        return Err(Error::InvalidParams(format!(
            "fraction_known = {fraction_known} outside [0, 1]"
        )));
    }
    let mut rng = stream(rng_seed, Phase::Censoring);
    let labels = labeling
        .labels()
        .iter()
        .map(|&label| {
            let keep = rng.gen::<f64>() < fraction_known;
            label.filter(|_| keep)
        })
        .collect();
    CommunityLabeling::new(labeling.community_count(), labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::intersection_graph;

    #[test]
    fn p_one_gives_complete_graph() {
        let params = SbmParams::with_probabilities(100, 1, 1.0, 0.0);
        let (g, lab) = gen_sbm(&params, 3).unwrap();
        assert_eq!(g.edge_count(), 100 * 99 / 2);
        assert_eq!(lab.members(0).len(), 100);
    }

    #[test]
    fn full_probability_blocks() {
        // p = 1, q = 0 with 3 communities: a disjoint union of cliques.
        let params = SbmParams::with_probabilities(10, 3, 1.0, 0.0);
        let (g, lab) = gen_sbm(&params, 1).unwrap();
        assert_eq!(g.edge_count(), 6 + 3 + 3);
        for (u, v) in g.edges() {
            assert_eq!(lab.label(u), lab.label(v));
        }
        let params = SbmParams::with_probabilities(10, 3, 1.0, 1.0);
        assert_eq!(gen_sbm(&params, 1).unwrap().0.edge_count(), 45);
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(gen_sbm(&SbmParams::with_probabilities(10, 2, 1.5, 0.1), 0).is_err());
        assert!(gen_sbm(&SbmParams::new(10, 0, 4.0, 2.0), 0).is_err());
        assert!(gen_sbm(&SbmParams::new(10, 11, 4.0, 2.0), 0).is_err());
        assert!(gen_sbm(&SbmParams::new(100, 2, 2.0, 4.0), 0).is_err());
        assert!(gen_sbm(&SbmParams::new(100, 2, 2.0, 2.0), 0).is_err());
        assert!(gen_sbm(&SbmParams::new(100, 1, 2.0, 4.0), 0).is_ok());
        assert!(gen_correlated(&SbmParams::new(100, 2, 4.0, 2.0), 0.0, 0).is_err());
        assert!(gen_correlated(&SbmParams::new(100, 2, 4.0, 2.0), 1.2, 0).is_err());
    }

    #[test]
    fn s_one_is_pure_relabeling() {
        let inst = gen_correlated(&SbmParams::new(300, 3, 8.0, 3.0), 1.0, 11).unwrap();
        assert_eq!(inst.g1, inst.underlying);
        assert_eq!(inst.g2, inst.underlying.relabel(&inst.truth));
        assert_eq!(intersection_graph(&inst.g1, &inst.g2, &inst.truth).unwrap(), inst.g1);
    }

    #[test]
    fn labels_consistent_across_pair() {
        let inst = gen_correlated(&SbmParams::new(200, 7, 8.0, 3.0), 0.6, 5).unwrap();
        for v in 0..200 {
            assert_eq!(inst.labeling2.label(inst.truth.image(v)), inst.labeling1.label(v));
        }
        for (u, v) in inst.g1.edges() {
            assert!(inst.underlying.has_edge(u, v));
        }
        let inv = inst.truth.inverse();
        for (u, v) in inst.g2.edges() {
            assert!(inst.underlying.has_edge(inv.image(u), inv.image(v)));
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let params = SbmParams::new(500, 5, 6.0, 2.0);
        let a = gen_correlated(&params, 0.7, 99).unwrap();
        let b = gen_correlated(&params, 0.7, 99).unwrap();
        let c = gen_correlated(&params, 0.7, 100).unwrap();
        assert_eq!((&a.g1, &a.g2, &a.truth), (&b.g1, &b.g2, &b.truth));
        assert_ne!(a.g1, c.g1);
    }

    #[test]
    fn seed_sets() {
        let truth = GroundTruth::new(vec![3, 1, 0, 2]).unwrap();
        assert!(sample_seed_set(&truth, 0, 1).unwrap().is_empty());
        let all = sample_seed_set(&truth, 4, 1).unwrap();
        let mut pairs = all.pairs.clone();
        pairs.sort_unstable();
        assert_eq!(pairs, vec![(0, 3), (1, 1), (2, 0), (3, 2)]);
        assert!(sample_seed_set(&truth, 5, 1).is_err());
        let big = sample_seed_set(&truth, 3, 9).unwrap();
        let small = sample_seed_set(&truth, 2, 9).unwrap();
        assert_eq!(&big.pairs[..2], &small.pairs[..]);
    }

    #[test]
    fn per_community_seeds() {
        let lab = CommunityLabeling::balanced_blocks(10, 3);
        let truth = GroundTruth::new((0..10).rev().collect()).unwrap();
        let sets = sample_seed_sets_per_community(&truth, &lab, 3, 2).unwrap();
        assert_eq!(sets.iter().map(SeedSet::phi).collect::<Vec<_>>(), vec![3, 3, 3]);
        for (c, set) in sets.iter().enumerate() {
            for &(i, j) in &set.pairs {
                assert_eq!(lab.label(i), Some(c));
                assert_eq!(j, truth.image(i));
            }
        }
        let capped = sample_seed_sets_per_community(&truth, &lab, 5, 2).unwrap();
        assert_eq!(capped[0].phi(), 4);
    }

    #[test]
    fn censor_extremes() {
        let lab = CommunityLabeling::balanced_blocks(50, 5);
        assert_eq!(censor_labels(&lab, 1.0, 4).unwrap(), lab);
        assert_eq!(censor_labels(&lab, 0.0, 4).unwrap().labeled_count(), 0);
        assert!(censor_labels(&lab, 1.5, 4).is_err());
    }

    #[test]
    fn geometric_skips_cover_all_or_none() {
        let mut rng = stream(0, Phase::Underlying);
        let mut hits = Vec::new();
        bernoulli_successes(&mut rng, 5, 1.0, |i| hits.push(i));
        assert_eq!(hits, vec![0, 1, 2, 3, 4]);
        hits.clear();
        bernoulli_successes(&mut rng, 5, 0.0, |i| hits.push(i));
        assert!(hits.is_empty());
    }
}
