//! Seed-driven percolation matching.
//!
//! Matched pairs are spread one at a time in FIFO order (seeds first, in the
//! order given). Spreading `(u, v)` adds one mark to every candidate pair
//! `(i, j)` with `i ~ u` in the first graph and `j ~ v` in the second whose
//! endpoints are both unmatched when `(u, v)` is dequeued. A pair is matched
//! the moment its mark count reaches its threshold, provided both endpoints
//! are still free; matches are permanent, so marks on pairs with a matched
//! endpoint are never consulted again.
//!
//! The threshold comes from a [`ThresholdPolicy`]: one value for every pair,
//! or a low value for the pairs proposed by an imperfect prior matching and
//! a high value for all others.

use std::cmp::Reverse;
use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{CommunityLabeling, Graph};
use crate::matching::{Matching, Provenance};
use crate::synth::SeedSet;

#[derive(Debug, Clone, Copy)]
pub enum ThresholdPolicy<'a> {
    Uniform(u32),
    /// `r_c` for pairs `(i, prior(i))`, `r_m` otherwise (including every
    /// `i` the prior leaves unmatched).
    TwoThreshold { r_c: u32, r_m: u32, prior: &'a Matching },
}

impl ThresholdPolicy<'_> {
    fn validate(&self, n_left: usize) -> Result<()> {
        match *self {
            ThresholdPolicy::Uniform(r) if r < 1 => {
                Err(Error::InvalidParams("uniform threshold must be at least 1".into()))
            }
            ThresholdPolicy::TwoThreshold { r_c, r_m, .. } if r_c < 1 || r_c >= r_m => {
                Err(Error::InvalidParams(format!("need 1 <= r_c < r_m, got {r_c}, {r_m}")))
            }
            ThresholdPolicy::TwoThreshold { prior, .. } if prior.left_size() != n_left => {
                Err(Error::SizeMismatch { left: n_left, right: prior.left_size() })
            }
            _ => Ok(()),
        }
    }

    #[inline]
    pub fn threshold(&self, i: usize, j: usize) -> u32 {
        match *self {
            ThresholdPolicy::Uniform(r) => r,
            ThresholdPolicy::TwoThreshold { r_c, r_m, prior } => {
                if prior.get(i) == Some(j) {
                    r_c
                } else {
                    r_m
                }
            }
        }
    }
}

/// Sparse mark counts keyed by pair; only pairs with at least one mark are
/// stored.
#[derive(Debug, Default)]
pub struct ScoreTable {
    scores: FxHashMap<u64, u32>,
}

impl ScoreTable {
    #[inline]
    fn key(i: usize, j: usize) -> u64 {
        ((i as u64) << 32) | j as u64
    }

    /// Adds one mark and returns the new count.
    #[inline]
    pub fn bump(&mut self, i: usize, j: usize) -> u32 {
        let slot = self.scores.entry(Self::key(i, j)).or_insert(0);
        *slot += 1;
        *slot
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.scores.get(&Self::key(i, j)).copied().unwrap_or(0)
    }

    pub fn live_pairs(&self) -> usize {
        self.scores.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PercolationResult {
    /// Injective; includes the seeds.
    pub matching: Matching,
    /// Number of spreading steps (dequeued pairs, or rounds for the
    /// community-rounds variant).
    pub steps: usize,
    /// Pairs newly matched at each step.
    pub frontier_history: Vec<usize>,
    /// Total marks handed out.
    pub increments: u64,
    /// The queue ran dry before every left vertex was matched.
    pub stalled: bool,
}

type Constraint<'a> = Option<(&'a CommunityLabeling, &'a CommunityLabeling)>;

#[inline]
fn labels_agree(constraint: Constraint<'_>, i: usize, j: usize) -> bool {
    match constraint {
        None => true,
        Some((l1, l2)) => matches!((l1.label(i), l2.label(j)), (Some(a), Some(b)) if a == b),
    }
}

/// Pairs that spreading `(u, v)` would mark given the current matching:
/// neighbors of `u` times neighbors of `v`, label-filtered when a
/// constraint is given, skipping matched endpoints. Ascending `i`, then
/// ascending `j`.
pub fn candidate_pairs<'a>(
    g1: &'a Graph,
    g2: &'a Graph,
    u: usize,
    v: usize,
    matching: &'a Matching,
    constraint: Constraint<'a>,
) -> impl Iterator<Item = (usize, usize)> + 'a {
    g1.neighbors(u)
        .iter()
        .filter(move |&&i| !matching.is_left_matched(i))
        .flat_map(move |&i| {
            g2.neighbors(v)
                .iter()
                .filter(move |&&j| !matching.is_right_matched(j) && labels_agree(constraint, i, j))
                .map(move |&j| (i, j))
        })
}

fn validate_seeds(g1: &Graph, g2: &Graph, seeds: &[(usize, usize)]) -> Result<()> {
    let mut left = vec![false; g1.vertex_count()];
    let mut right = vec![false; g2.vertex_count()];
    for &(i, j) in seeds {
        if i >= left.len() || j >= right.len() {
            return Err(Error::InvalidSeeds(format!("seed ({i}, {j}) out of range")));
        }
        if left[i] || right[j] {
            return Err(Error::InvalidSeeds(format!("seed ({i}, {j}) repeats an endpoint")));
        }
        left[i] = true;
        right[j] = true;
    }
    Ok(())
}

fn check_constraint(g1: &Graph, g2: &Graph, constraint: Constraint<'_>) -> Result<()> {
    if let Some((l1, l2)) = constraint {
        if l1.vertex_count() != g1.vertex_count() || l2.vertex_count() != g2.vertex_count() {
            return Err(Error::SizeMismatch { left: l1.vertex_count(), right: l2.vertex_count() });
        }
    }
    Ok(())
}

/// Runs percolation from `seeds` until no matched pair is left to spread
/// or every left vertex is matched.
pub fn percolate(
    g1: &Graph,
    g2: &Graph,
    seeds: &SeedSet,
    policy: ThresholdPolicy<'_>,
    community_constraint: Constraint<'_>,
) -> Result<PercolationResult> {
    let n1 = g1.vertex_count();
    policy.validate(n1)?;
    validate_seeds(g1, g2, &seeds.pairs)?;
    check_constraint(g1, g2, community_constraint)?;

    let mut matching = Matching::injective(n1, g2.vertex_count());
    let mut queue = VecDeque::with_capacity(n1);
    for &(i, j) in &seeds.pairs {
        matching.insert(i, j, Provenance::Seed)?;
        queue.push_back((i, j));
    }
    let mut scores = ScoreTable::default();
    let mut frontier_history = Vec::new();
    let mut increments = 0u64;

    let mut left = Vec::new();
    let mut right = Vec::new();
    while matching.len() < n1 {
        let Some((u, v)) = queue.pop_front() else { break };
        // Candidates are fixed when (u, v) is dequeued. Pairs that lose an
        // endpoint during this spread still receive their mark but can no
        // longer match.
        left.clear();
        left.extend(g1.neighbors(u).iter().copied().filter(|&i| !matching.is_left_matched(i)));
        right.clear();
        right.extend(g2.neighbors(v).iter().copied().filter(|&j| !matching.is_right_matched(j)));
        let mut newly = 0;
        for &i in &left {
            for &j in &right {
                if !labels_agree(community_constraint, i, j) {
                    continue;
                }
                increments += 1;
                let score = scores.bump(i, j);
                if score >= policy.threshold(i, j)
                    && !matching.is_left_matched(i)
                    && !matching.is_right_matched(j)
                {
                    matching.insert(i, j, Provenance::Percolated)?;
                    queue.push_back((i, j));
                    newly += 1;
                }
            }
        }
        frontier_history.push(newly);
    }

    Ok(PercolationResult {
        stalled: matching.len() < n1,
        steps: frontier_history.len(),
        matching,
        frontier_history,
        increments,
    })
}

/// Community-rounds percolation with uniform threshold `r`.
///
/// Each round, every community with a matched-but-unspread pair spreads one
/// such pair (communities in ascending order, pairs FIFO within a
/// community), marking same-community candidates only. Pairs whose marks
/// reach `r` during the round are committed at the end of the round, in
/// descending order of their end-of-round marks and then ascending
/// `(i, j)`, skipping any whose endpoint was taken earlier
/// in that commit pass. `seeds_per_community[c]` holds the seeds of
/// community `c`.
pub fn percolate_community_rounds(
    g1: &Graph,
    g2: &Graph,
    seeds_per_community: &[SeedSet],
    r: u32,
    labeling1: &CommunityLabeling,
    labeling2: &CommunityLabeling,
) -> Result<PercolationResult> {
    let n1 = g1.vertex_count();
    let k = labeling1.community_count();
    ThresholdPolicy::Uniform(r).validate(n1)?;
    check_constraint(g1, g2, Some((labeling1, labeling2)))?;
    if let Some(v) = labeling1.labels().iter().position(Option::is_none) {
        return Err(Error::PartialLabeling(v));
    }
    if let Some(v) = labeling2.labels().iter().position(Option::is_none) {
        return Err(Error::PartialLabeling(v));
    }
    if seeds_per_community.len() != k {
        return Err(Error::InvalidSeeds(format!(
            "expected seed sets for {k} communities, got {}",
            seeds_per_community.len()
        )));
    }
    let all: Vec<(usize, usize)> =
        seeds_per_community.iter().flat_map(|s| s.pairs.iter().copied()).collect();
    validate_seeds(g1, g2, &all)?;

    let mut matching = Matching::injective(n1, g2.vertex_count());
    let mut queues: Vec<VecDeque<(usize, usize)>> = vec![VecDeque::new(); k];
    for (c, set) in seeds_per_community.iter().enumerate() {
        if set.is_empty() && !labeling1.members(c).is_empty() {
            return Err(Error::InvalidSeeds(format!("community {c} has no seed")));
        }
        for &(i, j) in &set.pairs {
            if labeling1.label(i) != Some(c) || labeling2.label(j) != Some(c) {
                return Err(Error::InvalidSeeds(format!(
                    "seed ({i}, {j}) listed under community {c} but labeled otherwise"
                )));
            }
            matching.insert(i, j, Provenance::Seed)?;
            queues[c].push_back((i, j));
        }
    }

    let constraint = Some((labeling1, labeling2));
    let mut scores = ScoreTable::default();
    let mut frontier_history = Vec::new();
    let mut increments = 0u64;
    let mut reached: Vec<(usize, usize)> = Vec::new();

    while matching.len() < n1 {
        let mut spread_any = false;
        reached.clear();
        for queue in queues.iter_mut() {
            let Some((u, v)) = queue.pop_front() else { continue };
            spread_any = true;
            for (i, j) in candidate_pairs(g1, g2, u, v, &matching, constraint) {
                increments += 1;
                if scores.bump(i, j) == r {
                    reached.push((i, j));
                }
            }
        }
        if !spread_any {
            break;
        }
        // Commit order: highest end-of-round score first, then (i, j).
        reached.sort_unstable_by_key(|&(i, j)| (Reverse(scores.get(i, j)), i, j));
        let mut newly = 0;
        for &(i, j) in &reached {
            if matching.is_left_matched(i) || matching.is_right_matched(j) {
                continue;
            }
            matching.insert(i, j, Provenance::Percolated)?;
            let c = labeling1.label(i).expect("labels are total");
            queues[c].push_back((i, j));
            newly += 1;
        }
        frontier_history.push(newly);
    }

    Ok(PercolationResult {
        stalled: matching.len() < n1,
        steps: frontier_history.len(),
        matching,
        frontier_history,
        increments,
    })
}
