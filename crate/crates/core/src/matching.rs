use crate::error::{Error, Result};

/// How a pair entered the matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Seed,
    Percolated,
    Naive,
}

/// Whether injectivity is enforced.
///
/// `NaiveRaw` is the output of the community-degree-vector matcher, whose
/// per-vertex argmins may collide on the right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingMode {
    Injective,
    NaiveRaw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Entry {
    right: usize,
    provenance: Provenance,
    tie: bool,
    delta: Option<usize>,
}

/// Partial map from the vertices of the first graph to the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mode: MatchingMode,
    left: Vec<Option<Entry>>,
    /// Number of left vertices mapped to each right vertex.
    right_load: Vec<u32>,
    len: usize,
}

impl Matching {
    pub fn new(mode: MatchingMode, n_left: usize, n_right: usize) -> Matching {
        Matching { mode, left: vec![None; n_left], right_load: vec![0; n_right], len: 0 }
    }

    pub fn injective(n_left: usize, n_right: usize) -> Matching {
        Matching::new(MatchingMode::Injective, n_left, n_right)
    }

    pub fn mode(&self) -> MatchingMode {
        self.mode
    }

    pub fn left_size(&self) -> usize {
        self.left.len()
    }

    pub fn right_size(&self) -> usize {
        self.right_load.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, i: usize, j: usize, provenance: Provenance) -> Result<()> {
        self.insert_full(i, j, provenance, false, None)
    }

    pub(crate) fn insert_full(
        &mut self,
        i: usize,
        j: usize,
        provenance: Provenance,
        tie: bool,
        delta: Option<usize>,
    ) -> Result<()> {
        if i >= self.left.len() || j >= self.right_load.len() {
            return Err(Error::InvalidParams(format!("pair ({i}, {j}) out of range")));
        }
        if self.left[i].is_some() {
            return Err(Error::InvalidParams(format!("left vertex {i} already matched")));
        }
        if self.mode == MatchingMode::Injective && self.right_load[j] > 0 {
            return Err(Error::InvalidParams(format!("right vertex {j} already matched")));
        }
        self.left[i] = Some(Entry { right: j, provenance, tie, delta });
        self.right_load[j] += 1;
        self.len += 1;
        Ok(())
    }

    #[inline]
    pub fn get(&self, i: usize) -> Option<usize> {
        self.left[i].map(|e| e.right)
    }

    #[inline]
    pub fn is_left_matched(&self, i: usize) -> bool {
        self.left[i].is_some()
    }

    #[inline]
    pub fn is_right_matched(&self, j: usize) -> bool {
        self.right_load[j] > 0
    }

    pub fn provenance(&self, i: usize) -> Option<Provenance> {
        self.left[i].map(|e| e.provenance)
    }

    pub fn tie_flag(&self, i: usize) -> bool {
        self.left[i].is_some_and(|e| e.tie)
    }

    /// Distance of the pair at `i` when it came from the naive matcher.
    pub fn delta(&self, i: usize) -> Option<usize> {
        self.left[i].and_then(|e| e.delta)
    }

    pub fn tie_count(&self) -> usize {
        self.left.iter().flatten().filter(|e| e.tie).count()
    }

    /// Matched pairs in ascending left order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left.iter().enumerate().filter_map(|(i, e)| e.map(|e| (i, e.right)))
    }

    /// Whether no right vertex is used twice.
    pub fn is_injective(&self) -> bool {
        self.right_load.iter().all(|&c| c <= 1)
    }

    /// Greedy injective reduction: pairs in ascending (distance, left id)
    /// order, each kept unless its right vertex is already taken.
    pub fn greedy_injective(&self) -> Matching {
        let mut order: Vec<(usize, usize)> = self
            .left
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|e| (e.delta.unwrap_or(0), i)))
            .collect();
        order.sort_unstable();
        let mut out = Matching::injective(self.left_size(), self.right_size());
        for (_, i) in order {
            let e = self.left[i].expect("listed pairs exist");
            if !out.is_right_matched(e.right) {
                out.insert_full(i, e.right, e.provenance, e.tie, e.delta)
                    .expect("right side checked free");
            }
        }
        out
    }
}
