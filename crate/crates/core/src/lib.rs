//! Spectral node immunization.
//!
//! Pick `k` vertices whose deletion most reduces the largest adjacency
//! eigenvalue `λ₁` of an undirected graph. The main method, [`greedy3`],
//! ranks vertices by a closed-4-walk score built from degrees and codegree
//! sums and maintains it incrementally under deletion, so the whole
//! selection costs `O(n + k·m + k·log n)`. Reference greedies, exhaustive
//! search, degree and NetShield baselines, and an SIS simulator are here
//! for comparison and validation.

pub mod bench;
pub mod episim;
pub mod error;
pub mod generators;
pub mod graph;
pub mod selection;
pub mod spectral;
pub mod walkscore;

pub use episim::{
    epidemic_threshold, save_ratio, sis_simulate, InitialInfected, SisConfig, SisResult,
};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use selection::{
    brute_force_optimal, greedy1, greedy2, greedy3, max_degree, netshield, select,
    updated_max_degree, Method, SelectOptions, Selection,
};
pub use spectral::{
    eigendrop, lambda1, trace_power, EigendropReport, PowerIteration, SpectralResult,
};
pub use walkscore::{compute_scores, cw4_vertex, cw_brute, gp_set, update_scores, ScoreState};
