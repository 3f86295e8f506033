//! Matching quality against the ground truth.
//!
//! Two precision conventions are reported side by side. The
//! giant-component convention divides correct matches by `n_int`, the size
//! of the largest connected component of the intersection graph, for both
//! precision and recall (so the two coincide and F1 equals either). The
//! conventional one uses `correct / matched` for precision and keeps recall
//! at `correct / n_int`.

use crate::graph::GroundTruth;
use crate::matching::Matching;

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub n: usize,
    pub matched: usize,
    pub correct: usize,
    pub wrong: usize,
    /// `matched / n`.
    pub f: f64,
    /// `wrong / matched`; `None` for an empty matching.
    pub e: Option<f64>,
    pub n_int: usize,
    /// `correct / n_int` (capped at 1); `None` when `n_int == 0`.
    pub precision_giant: Option<f64>,
    pub recall: Option<f64>,
    pub f1_giant: Option<f64>,
    /// `correct / matched`.
    pub precision: Option<f64>,
    /// Harmonic mean of `precision` and `recall`.
    pub f1: Option<f64>,
    pub tie_count: usize,
    pub stalled: bool,
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Scores `matching` against `truth`. `giant` is the vertex set of the
/// largest component of the intersection graph.
pub fn evaluate(matching: &Matching, truth: &GroundTruth, giant: &[usize]) -> MetricsReport {
    let n = matching.left_size();
    let matched = matching.len();
    let correct = matching.pairs().filter(|&(i, j)| truth.image(i) == j).count();
    let n_int = giant.len();
    let precision = (matched > 0).then(|| correct as f64 / matched as f64);
    let recall = (n_int > 0).then(|| (correct as f64 / n_int as f64).min(1.0));
    MetricsReport {
        n,
        matched,
        correct,
        wrong: matched - correct,
        f: if n == 0 { 0.0 } else { matched as f64 / n as f64 },
        e: precision.map(|p| 1.0 - p),
        n_int,
        precision_giant: recall,
        recall,
        f1_giant: recall.map(|r| harmonic(r, r)),
        precision,
        f1: recall.map(|r| harmonic(precision.unwrap_or(0.0), r)),
        tie_count: matching.tie_count(),
        stalled: false,
    }
}

impl MetricsReport {
    pub fn with_stalled(mut self, stalled: bool) -> Self {
        self.stalled = stalled;
        self
    }
}
