//! Matching two correlated graphs when the attacker holds side information
//! beyond seeds: community labels or an imperfect initial matching.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] holds the undirected graph, community labeling and ground
//!   truth types together with the structural queries everything else uses.
//! * [`synth`] draws stochastic-block-model graphs and edge-sampled
//!   correlated pairs, reproducibly from a 64-bit seed.
//! * [`naive`] matches every vertex to its nearest same-community vertex
//!   under the community-degree-vector distance.
//! * [`percolation`] is the seed-driven percolation engine with uniform and
//!   two-threshold policies plus the community-rounds variant.
//! * [`metrics`] and [`theory`] evaluate matchings and the closed-form
//!   asymptotic bounds.
//! * [`io`] reads whitespace edge lists and community label files.
//!
//! Community ids are 0-based throughout (community `k` here is community
//! `k + 1` in 1-based notation).

pub mod error;
pub mod graph;
pub mod io;
pub mod matching;
pub mod metrics;
pub mod naive;
pub mod percolation;
pub mod rng;
pub mod synth;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{
    build_graph, community_degree_vector, intersection_graph, largest_component, CommunityLabeling,
    Graph, GroundTruth,
};
pub use matching::{Matching, MatchingMode, Provenance};
pub use metrics::{evaluate, MetricsReport};
pub use naive::{delta_distance, naive_match, naive_match_partial};
pub use percolation::{
    candidate_pairs, percolate, percolate_community_rounds, PercolationResult, ThresholdPolicy,
};
pub use synth::{
    censor_labels, gen_correlated, gen_sbm, realpair_from_underlying, sample_seed_set,
    sample_seed_sets_per_community,
    CorrelatedInstance, SbmParams, SeedSet,
};
