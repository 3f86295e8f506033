//! Undirected simple graphs, community labelings and ground-truth bijections.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Undirected simple graph on dense vertex ids `0..n`.
///
/// Stored in compressed sparse row form; every adjacency list is strictly
/// sorted and the relation is symmetric. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and out-of-range endpoints
    /// are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidEdge { u, v, reason: "endpoint out of range" });
            }
            if u == v {
                return Err(Error::InvalidEdge { u, v, reason: "self-loop" });
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut adjacency: Vec<Vec<usize>> =
            degree.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(u, v) in edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph::from_sorted_lists(adjacency))
    }

    /// Edge list whose pairs are already known to be valid, distinct and
    /// loop-free. Used by the generators on their hot path.
    pub(crate) fn from_unique_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in edges {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Graph { offsets, targets }
    }

    fn from_sorted_lists(adjacency: Vec<Vec<usize>>) -> Graph {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(adjacency.iter().map(Vec::len).sum());
        for list in adjacency {
            targets.extend_from_slice(&list);
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    pub fn empty(n: usize) -> Graph {
        Graph { offsets: vec![0; n + 1], targets: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`, renumbered densely in the given
    /// order. Returns the subgraph and the new-to-old id map.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (k, &v) in vertices.iter().enumerate() {
            new_id[v] = k;
        }
        let adjacency = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self
                    .neighbors(v)
                    .iter()
                    .map(|&w| new_id[w])
                    .filter(|&w| w != usize::MAX)
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        (Graph::from_sorted_lists(adjacency), vertices.to_vec())
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &GroundTruth) -> Graph {
        let edges: Vec<(usize, usize)> =
            self.edges().map(|(u, v)| (perm.image(u), perm.image(v))).collect();
        Graph::from_unique_edges(self.vertex_count(), &edges)
    }
}

/// Convenience wrapper matching the graph-construction operation.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::from_edges(n, edges)
}

/// Total or partial assignment of vertices to communities `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityLabeling {
    k: usize,
    labels: Vec<Option<usize>>,
    members: Vec<Vec<usize>>,
}

impl CommunityLabeling {
    pub fn new(k: usize, labels: Vec<Option<usize>>) -> Result<CommunityLabeling> {
        let mut members = vec![Vec::new(); k];
        for (v, label) in labels.iter().enumerate() {
            if let Some(c) = *label {
                if c >= k {
                    return Err(Error::InvalidParams(format!(
                        "vertex {v} has community {c} but k = {k}"
                    )));
                }
                members[c].push(v);
            }
        }
        Ok(CommunityLabeling { k, labels, members })
    }

    pub fn from_total(k: usize, labels: &[usize]) -> Result<CommunityLabeling> {
        CommunityLabeling::new(k, labels.iter().map(|&c| Some(c)).collect())
    }

    /// Contiguous blocks: the first `n mod k` communities receive
    /// `ceil(n / k)` vertices, the rest `floor(n / k)`.
    pub fn balanced_blocks(n: usize, k: usize) -> CommunityLabeling {
        assert!(k >= 1, "at least one community");
        let base = n / k;
        let extra = n % k;
        let mut labels = Vec::with_capacity(n);
        for c in 0..k {
            let size = base + usize::from(c < extra);
            labels.extend(std::iter::repeat_n(Some(c), size));
        }
        CommunityLabeling::new(k, labels).expect("labels in range")
    }

    pub fn community_count(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn label(&self, v: usize) -> Option<usize> {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.labels
    }

    pub fn members(&self, community: usize) -> &[usize] {
        &self.members[community]
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    pub fn labeled_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_some()).count()
    }

    /// Labeling of the second graph when vertex `v` of the first is
    /// `truth(v)` in the second.
    pub fn transport(&self, truth: &GroundTruth) -> CommunityLabeling {
        let mut labels = vec![None; self.labels.len()];
        for (v, &label) in self.labels.iter().enumerate() {
            labels[truth.image(v)] = label;
        }
        CommunityLabeling::new(self.k, labels).expect("same community range")
    }

    /// Restriction to `vertices` (new id `k` is old id `vertices[k]`).
    pub fn restrict(&self, vertices: &[usize]) -> CommunityLabeling {
        let labels = vertices.iter().map(|&v| self.labels[v]).collect();
        CommunityLabeling::new(self.k, labels).expect("same community range")
    }
}

/// Hidden bijection from the vertices of the first graph to the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    perm: Vec<usize>,
}

impl GroundTruth {
    pub fn new(perm: Vec<usize>) -> Result<GroundTruth> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidParams("ground truth is not a permutation".into()));
            }
            seen[p] = true;
        }
        Ok(GroundTruth { perm })
    }

    pub fn identity(n: usize) -> GroundTruth {
        GroundTruth { perm: (0..n).collect() }
    }

    #[inline]
    pub fn image(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn inverse(&self) -> GroundTruth {
        let mut inv = vec![0; self.perm.len()];
        for (v, &p) in self.perm.iter().enumerate() {
            inv[p] = v;
        }
        GroundTruth { perm: inv }
    }
}

/// Per-community neighbor counts of `v`, all `k` entries including the
/// vertex's own community.
pub fn community_degree_vector(
    g: &Graph,
    labeling: &CommunityLabeling,
    v: usize,
) -> Result<Vec<usize>> {
    if labeling.label(v).is_none() {
        return Err(Error::PartialLabeling(v));
    }
    let mut counts = vec![0; labeling.community_count()];
    for &u in g.neighbors(v) {
        match labeling.label(u) {
            Some(c) => counts[c] += 1,
            None => return Err(Error::PartialLabeling(u)),
        }
    }
    Ok(counts)
}

/// Edges of `g1` whose image under `truth` is also an edge of `g2`.
pub fn intersection_graph(g1: &Graph, g2: &Graph, truth: &GroundTruth) -> Result<Graph> {
    let n = g1.vertex_count();
    if g2.vertex_count() != n || truth.len() != n {
        return Err(Error::SizeMismatch { left: n, right: g2.vertex_count() });
    }
    let edges: Vec<(usize, usize)> = g1
        .edges()
        .filter(|&(u, v)| g2.has_edge(truth.image(u), truth.image(v)))
        .collect();
    Ok(Graph::from_unique_edges(n, &edges))
}

/// Vertices of a largest connected component, ascending. Among components
/// of equal size the one holding the smallest vertex id wins.
pub fn largest_component(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut best: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut component = Vec::new();
        while let Some(u) = queue.pop_front() {
            component.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        // Components are discovered in order of their smallest vertex, so a
        // strict comparison keeps the earliest among equals.
        if component.len() > best.len() {
            best = component;
        }
    }
    best.sort_unstable();
    best
}
