//! Brute-force reference implementations over dense adjacency matrices.
//! Nothing here calls into the library beyond plain data.

#![allow(dead_code)]

use std::collections::VecDeque;

pub type Adj = Vec<Vec<bool>>;
pub type Labels = Vec<Option<usize>>;

pub fn dense(n: usize, edges: &[(usize, usize)]) -> Adj {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// Per-community neighbor counts of `v`, counting labeled neighbors only.
pub fn degree_vector(adj: &Adj, labels: &Labels, k: usize, v: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for u in 0..adj.len() {
        if adj[v][u] {
            if let Some(c) = labels[u] {
                out[c] += 1;
            }
        }
    }
    out
}

pub fn delta(adj1: &Adj, adj2: &Adj, l1: &Labels, l2: &Labels, k: usize, i: usize, j: usize) -> usize {
    let own = l1[i].expect("labeled");
    let d1 = degree_vector(adj1, l1, k, i);
    let d2 = degree_vector(adj2, l2, k, j);
    (0..k).filter(|&c| c != own && d1[c] != d2[c]).count()
}

/// Naive matching: per labeled `i`, `(j, delta, tie)` for the smallest `j`
/// minimizing the distance, or `None`.
pub fn naive(
    adj1: &Adj,
    adj2: &Adj,
    l1: &Labels,
    l2: &Labels,
    k: usize,
) -> Vec<Option<(usize, usize, bool)>> {
    (0..adj1.len())
        .map(|i| {
            let own = l1[i]?;
            let dists: Vec<(usize, usize)> = (0..adj2.len())
                .filter(|&j| l2[j] == Some(own))
                .map(|j| (j, delta(adj1, adj2, l1, l2, k, i, j)))
                .collect();
            let best = dists.iter().map(|&(_, d)| d).min()?;
            let winners: Vec<usize> =
                dists.iter().filter(|&&(_, d)| d == best).map(|&(j, _)| j).collect();
            Some((winners[0], best, winners.len() > 1))
        })
        .collect()
}

pub fn candidates(
    adj1: &Adj,
    adj2: &Adj,
    u: usize,
    v: usize,
    left_matched: &[bool],
    right_matched: &[bool],
    constraint: Option<(&Labels, &Labels)>,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..adj1.len() {
        for j in 0..adj2.len() {
            if !adj1[u][i] || !adj2[v][j] || left_matched[i] || right_matched[j] {
                continue;
            }
            if let Some((l1, l2)) = constraint {
                if l1[i].is_none() || l1[i] != l2[j] {
                    continue;
                }
            }
            out.push((i, j));
        }
    }
    out
}

/// Edges `(x, y)`, `x < y`, present in the first graph and, mapped through
/// `perm`, in the second.
pub fn intersection(adj1: &Adj, adj2: &Adj, perm: &[usize]) -> Vec<(usize, usize)> {
    let n = adj1.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if adj1[x][y] && adj2[perm[x]][perm[y]] {
                out.push((x, y));
            }
        }
    }
    out
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Largest connected component by union-find; ties go to the component
/// holding the smallest vertex.
pub fn largest_component(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut size = vec![0usize; n];
    for &r in &roots {
        size[r] += 1;
    }
    let Some(best) = (0..n).max_by_key(|&r| (size[r], std::cmp::Reverse(r))) else {
        return Vec::new();
    };
    (0..n).filter(|&v| roots[v] == best).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PercolationTrace {
    /// `(i, j, from_seed)` per matched left vertex.
    pub matched: Vec<Option<(usize, bool)>>,
    pub frontier: Vec<usize>,
    pub increments: u64,
    pub stalled: bool,
}

/// Threshold for a pair: uniform, or low for `prior` pairs and high
/// otherwise.
#[derive(Debug, Clone, Copy)]
pub enum Thresholds<'a> {
    Uniform(u32),
    Two { low: u32, high: u32, prior: &'a [Option<usize>] },
}

impl Thresholds<'_> {
    fn of(&self, i: usize, j: usize) -> u32 {
        match *self {
            Thresholds::Uniform(r) => r,
            Thresholds::Two { low, high, prior } => {
                if prior[i] == Some(j) {
                    low
                } else {
                    high
                }
            }
        }
    }
}

/// Literal two-threshold percolation over a dense score matrix: FIFO over
/// matched pairs; every pair adjacent to the spreading pair gets a mark;
/// a pair matches when its count equals its threshold with both endpoints
/// free. Increments are counted only for pairs whose endpoints were free
/// when the spreading pair was dequeued.
pub fn percolate(
    adj1: &Adj,
    adj2: &Adj,
    seeds: &[(usize, usize)],
    thresholds: Thresholds<'_>,
    constraint: Option<(&Labels, &Labels)>,
) -> PercolationTrace {
    let (n1, n2) = (adj1.len(), adj2.len());
    let mut m = vec![vec![0u32; n2]; n1];
    let mut left: Vec<Option<(usize, bool)>> = vec![None; n1];
    let mut right = vec![false; n2];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for &(i, j) in seeds {
        left[i] = Some((j, true));
        right[j] = true;
        count += 1;
        queue.push_back((i, j));
    }
    let mut frontier = Vec::new();
    let mut increments = 0;
    while count != n1 {
        let Some((u, v)) = queue.pop_front() else { break };
        let left_free: Vec<bool> = left.iter().map(Option::is_none).collect();
        let right_free: Vec<bool> = right.iter().map(|&b| !b).collect();
        let mut newly = 0;
        for i in 0..n1 {
            for j in 0..n2 {
                if !adj1[u][i] || !adj2[v][j] {
                    continue;
                }
                if let Some((l1, l2)) = constraint {
                    if l1[i].is_none() || l1[i] != l2[j] {
                        continue;
                    }
                }
                m[i][j] += 1;
                if left_free[i] && right_free[j] {
                    increments += 1;
                }
                if m[i][j] == thresholds.of(i, j) && left[i].is_none() && !right[j] {
                    left[i] = Some((j, false));
                    right[j] = true;
                    count += 1;
                    newly += 1;
                    queue.push_back((i, j));
                }
            }
        }
        frontier.push(newly);
    }
    PercolationTrace { matched: left, frontier, increments, stalled: count != n1 }
}

/// Round-based percolation: each round the head of every community queue
/// spreads its marks to same-community pairs; pairs reaching `r` commit at
/// the end of the round by descending mark count, then ascending `(i, j)`.
pub fn community_rounds(
    adj1: &Adj,
    adj2: &Adj,
    seeds: &[Vec<(usize, usize)>],
    r: u32,
    l1: &[usize],
    l2: &[usize],
) -> PercolationTrace {
    let (n1, n2) = (adj1.len(), adj2.len());
    let mut m = vec![vec![0u32; n2]; n1];
    let mut left: Vec<Option<(usize, bool)>> = vec![None; n1];
    let mut right = vec![false; n2];
    let mut count = 0;
    let mut queues: Vec<VecDeque<(usize, usize)>> = vec![VecDeque::new(); seeds.len()];
    for (c, set) in seeds.iter().enumerate() {
        for &(i, j) in set {
            left[i] = Some((j, true));
            right[j] = true;
            count += 1;
            queues[c].push_back((i, j));
        }
    }
    let mut frontier = Vec::new();
    let mut increments = 0;
    while count != n1 {
        let mut reached = Vec::new();
        let mut spread = false;
        for queue in queues.iter_mut() {
            let Some((u, v)) = queue.pop_front() else { continue };
            spread = true;
            for i in 0..n1 {
                for j in 0..n2 {
                    if adj1[u][i] && adj2[v][j] && l1[i] == l2[j] && left[i].is_none() && !right[j]
                    {
                        m[i][j] += 1;
                        increments += 1;
                        if m[i][j] == r {
                            reached.push((i, j));
                        }
                    }
                }
            }
        }
        if !spread {
            break;
        }
        reached.sort_by_key(|&(i, j)| (std::cmp::Reverse(m[i][j]), i, j));
        let mut newly = 0;
        for (i, j) in reached {
            if left[i].is_none() && !right[j] {
                left[i] = Some((j, false));
                right[j] = true;
                count += 1;
                newly += 1;
                queues[l1[i]].push_back((i, j));
            }
        }
        frontier.push(newly);
    }
    PercolationTrace { matched: left, frontier, increments, stalled: count != n1 }
}
