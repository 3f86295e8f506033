//! Seedless matching from community degree vectors.
//!
//! The distance between `i` in the first graph and `j` in the second (both
//! in community `c`) is the number of communities other than `c` into which
//! the two vertices have a different number of neighbors. Every vertex of
//! the first graph is matched to a closest same-community vertex of the
//! second; ties go to the smallest candidate id and are flagged.

use crate::error::{Error, Result};
use crate::graph::{community_degree_vector, CommunityLabeling, Graph};
use crate::matching::{Matching, MatchingMode, Provenance};

/// Dense `n x k` table of per-community neighbor counts. Unlabeled
/// neighbors are not counted.
struct DegreeTable {
    k: usize,
    counts: Vec<u32>,
}

impl DegreeTable {
    fn new(g: &Graph, labeling: &CommunityLabeling) -> DegreeTable {
        let k = labeling.community_count();
        let mut counts = vec![0u32; g.vertex_count() * k];
        for v in 0..g.vertex_count() {
            let row = &mut counts[v * k..(v + 1) * k];
            for &u in g.neighbors(v) {
                if let Some(c) = labeling.label(u) {
                    row[c] += 1;
                }
            }
        }
        DegreeTable { k, counts }
    }

    #[inline]
    fn row(&self, v: usize) -> &[u32] {
        &self.counts[v * self.k..(v + 1) * self.k]
    }
}

#[inline]
fn row_distance<T: PartialEq>(a: &[T], b: &[T], own: usize) -> usize {
    let differing = a.iter().zip(b).filter(|(x, y)| x != y).count();
    differing - usize::from(a[own] != b[own])
}

fn check_sizes(
    g1: &Graph,
    g2: &Graph,
    labeling1: &CommunityLabeling,
    labeling2: &CommunityLabeling,
) -> Result<()> {
    if labeling1.vertex_count() != g1.vertex_count() {
        return Err(Error::SizeMismatch {
            left: g1.vertex_count(),
            right: labeling1.vertex_count(),
        });
    }
    if labeling2.vertex_count() != g2.vertex_count() {
        return Err(Error::SizeMismatch {
            left: g2.vertex_count(),
            right: labeling2.vertex_count(),
        });
    }
    if labeling1.community_count() != labeling2.community_count() {
        return Err(Error::InvalidParams(format!(
            "labelings disagree on community count: {} vs {}",
            labeling1.community_count(),
            labeling2.community_count()
        )));
    }
    Ok(())
}

/// Distance between `i` (first graph) and `jprime` (second graph), which
/// must share a community. Requires both labelings to cover the
/// neighborhoods involved.
pub fn delta_distance(
    g1: &Graph,
    g2: &Graph,
    labeling1: &CommunityLabeling,
    labeling2: &CommunityLabeling,
    i: usize,
    jprime: usize,
) -> Result<usize> {
    check_sizes(g1, g2, labeling1, labeling2)?;
    let own = labeling1.label(i).ok_or(Error::PartialLabeling(i))?;
    let other = labeling2.label(jprime).ok_or(Error::PartialLabeling(jprime))?;
    if own != other {
        return Err(Error::CommunityMismatch { left: i, right: jprime });
    }
    let di = community_degree_vector(g1, labeling1, i)?;
    let dj = community_degree_vector(g2, labeling2, jprime)?;
    Ok(row_distance(&di, &dj, own))
}

fn match_by_tables(
    g1: &Graph,
    g2: &Graph,
    labeling1: &CommunityLabeling,
    labeling2: &CommunityLabeling,
) -> Matching {
    let t1 = DegreeTable::new(g1, labeling1);
    let t2 = DegreeTable::new(g2, labeling2);
    let mut out = Matching::new(MatchingMode::NaiveRaw, g1.vertex_count(), g2.vertex_count());
    for i in 0..g1.vertex_count() {
        let Some(c) = labeling1.label(i) else { continue };
        let row = t1.row(i);
        let mut best: Option<(usize, usize)> = None;
        let mut tie = false;
        for &j in labeling2.members(c) {
            let d = row_distance(row, t2.row(j), c);
            match best {
                Some((bd, _)) if d > bd => {}
                Some((bd, _)) if d == bd => tie = true,
                _ => {
                    best = Some((d, j));
                    tie = false;
                }
            }
        }
        if let Some((d, j)) = best {
            out.insert_full(i, j, Provenance::Naive, tie, Some(d)).expect("each left vertex once");
        }
    }
    out
}

/// Matches every vertex of `g1` to its closest same-community vertex of
/// `g2`. The result is in [`MatchingMode::NaiveRaw`]: two left vertices may
/// share a right vertex.
pub fn naive_match(
    g1: &Graph,
    g2: &Graph,
    labeling1: &CommunityLabeling,
    labeling2: &CommunityLabeling,
) -> Result<Matching> {
    check_sizes(g1, g2, labeling1, labeling2)?;
    if let Some(v) = labeling1.labels().iter().position(Option::is_none) {
        return Err(Error::PartialLabeling(v));
    }
    if let Some(v) = labeling2.labels().iter().position(Option::is_none) {
        return Err(Error::PartialLabeling(v));
    }
    for c in 0..labeling1.community_count() {
        if !labeling1.members(c).is_empty() && labeling2.members(c).is_empty() {
            return Err(Error::EmptyCommunity(c));
        }
    }
    Ok(match_by_tables(g1, g2, labeling1, labeling2))
}

/// Naive matching under partial labels. Unlabeled vertices of `g1` stay
/// unmatched, unlabeled vertices of `g2` are never candidates, and
/// unlabeled neighbors are ignored on both sides when counting.
pub fn naive_match_partial(
    g1: &Graph,
    g2: &Graph,
    labeling1: &CommunityLabeling,
    labeling2: &CommunityLabeling,
) -> Result<Matching> {
    check_sizes(g1, g2, labeling1, labeling2)?;
    Ok(match_by_tables(g1, g2, labeling1, labeling2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GroundTruth};

    #[test]
    fn isolated_vertices_have_zero_distance() {
        let g = Graph::empty(2);
        let lab = CommunityLabeling::from_total(1, &[0, 0]).unwrap();
        assert_eq!(delta_distance(&g, &g, &lab, &lab, 0, 1).unwrap(), 0);
    }

    #[test]
    fn one_differing_coordinate() {
        // K = 3. Vertex 0 (community 0): two neighbors in community 1,
        // none in 2. Vertex 0 of the second graph: two in 1, one in 2.
        let lab = CommunityLabeling::from_total(3, &[0, 1, 1, 2, 0]).unwrap();
        let g1 = build_graph(5, &[(0, 1), (0, 2), (0, 4)]).unwrap();
        let g2 = build_graph(5, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(delta_distance(&g1, &g2, &lab, &lab, 0, 0).unwrap(), 1);
    }

    #[test]
    fn distance_errors() {
        let g = build_graph(3, &[(0, 1)]).unwrap();
        let lab = CommunityLabeling::from_total(2, &[0, 1, 0]).unwrap();
        assert_eq!(
            delta_distance(&g, &g, &lab, &lab, 0, 1),
            Err(Error::CommunityMismatch { left: 0, right: 1 })
        );
        let partial = CommunityLabeling::new(2, vec![Some(0), None, Some(0)]).unwrap();
        assert_eq!(delta_distance(&g, &g, &partial, &lab, 0, 2), Err(Error::PartialLabeling(1)));
        assert_eq!(delta_distance(&g, &g, &partial, &lab, 1, 1), Err(Error::PartialLabeling(1)));
    }

    #[test]
    fn naive_errors() {
        let g = Graph::empty(2);
        let lab1 = CommunityLabeling::from_total(2, &[0, 1]).unwrap();
        let lab2 = CommunityLabeling::from_total(2, &[0, 0]).unwrap();
        assert_eq!(naive_match(&g, &g, &lab1, &lab2), Err(Error::EmptyCommunity(1)));
        let partial = CommunityLabeling::new(2, vec![Some(0), None]).unwrap();
        assert_eq!(naive_match(&g, &g, &partial, &lab1), Err(Error::PartialLabeling(1)));
        // Partial variant skips the vertex instead.
        let m = naive_match_partial(&g, &g, &partial, &lab1).unwrap();
        assert_eq!(m.pairs().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn distinct_vectors_recover_identity() {
        // Community 0 = {0, 1, 2}, community 1 = {3, 4, 5, 6}; the three
        // community-0 vertices have 0, 1 and 2 neighbors in community 1.
        let g = build_graph(7, &[(1, 3), (2, 4), (2, 5)]).unwrap();
        let lab = CommunityLabeling::from_total(2, &[0, 0, 0, 1, 1, 1, 1]).unwrap();
        let truth = GroundTruth::new(vec![6, 5, 4, 3, 2, 1, 0]).unwrap();
        let g2 = g.relabel(&truth);
        let lab2 = lab.transport(&truth);
        let m = naive_match(&g, &g2, &lab, &lab2).unwrap();
        for i in 0..3 {
            assert_eq!(m.get(i), Some(truth.image(i)));
            assert!(!m.tie_flag(i));
            assert_eq!(m.delta(i), Some(0));
        }
    }

    #[test]
    fn ties_pick_smallest_id() {
        let g = Graph::empty(3);
        let lab = CommunityLabeling::from_total(1, &[0, 0, 0]).unwrap();
        let m = naive_match(&g, &g, &lab, &lab).unwrap();
        assert!(m.pairs().all(|(_, j)| j == 0));
        assert_eq!(m.tie_count(), 3);
        assert!(!m.is_injective());
    }
}
