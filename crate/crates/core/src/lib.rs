//! Metric dimension and edge metric dimension of graphs.
//!
//! * [`graph`], [`distance`], [`edgelist`]: simple graphs, seeded G(n, p)
//!   sampling, BFS distances and the edge-list text format.
//! * [`resolving`]: signatures, generating-set predicates and the set-cover
//!   reduction.
//! * [`solvers`]: exhaustive, branch-and-bound and greedy minimum covers.
//! * [`theory`]: closed-form G(n, p) quantities (q, Q, s_p, the lower-bound
//!   set size r and the dependency-graph terms of the lower-bound argument).
//! * [`montecarlo`]: seeded estimators of the same quantities on sampled
//!   graphs.
//! * [`experiment`] and [`cli`]: records, sweeps and the `edimlab` binary.

pub mod cli;
pub mod config;
pub mod distance;
pub mod edgelist;
pub mod experiment;
pub mod graph;
pub mod montecarlo;
pub mod parallel;
pub mod resolving;
pub mod rng;
pub mod solvers;
pub mod theory;

pub use distance::{all_pairs_distances, diameter, DistanceMatrix, Dist, UNREACHABLE};
pub use graph::{generate_er, Edge, Graph, GraphError, Vertex};
pub use resolving::{CoverInstance, LandmarkSet, Mode};
pub use solvers::{edge_metric_dimension, metric_dimension, Method, SolveError, SolveResult};
pub use theory::TheoryParams;
