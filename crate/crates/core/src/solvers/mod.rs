//! Minimum set-cover solvers over [`CoverInstance`] and the `dim` / `edim`
//! wrappers built on them.
//!
//! All solvers are single threaded and break ties by lowest vertex id, so a
//! given instance always yields the same witness.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::config;
use crate::distance::{all_pairs_distances, DistanceMatrix};
use crate::graph::Graph;
use crate::resolving::{
    build_cover_instance, has_unreachable, is_resolving, object_count, universe_size,
    CoverInstance, LandmarkSet, Mode, ResolveError,
};

mod bnb;
mod brute;
mod greedy;

pub use bnb::branch_and_bound;
pub use brute::{brute_force_minimum, largest_layer};
pub use greedy::{greedy_cover, greedy_partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance is infeasible: {} universe pairs have no distinguishing vertex", pairs.len())]
    Infeasible { pairs: Vec<(usize, usize)> },
    #[error("no cover of size at most {cap}")]
    CapExceeded { cap: usize },
    #[error("exhaustive search refused: a subset layer has {layer} members (limit {limit})")]
    TooLarge { layer: u128, limit: u128 },
    #[error("solver returned a witness that fails verification: {0:?}")]
    WitnessRejected(Vec<usize>),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Bnb,
    Greedy,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Bnb => "bnb",
            Method::Greedy => "greedy",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Method::Brute),
            "bnb" => Ok(Method::Bnb),
            "greedy" => Ok(Method::Greedy),
            other => Err(format!("unknown method {other:?} (expected brute, bnb or greedy)")),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vertex" => Ok(Mode::Vertex),
            "edge" => Ok(Mode::Edge),
            other => Err(format!("unknown mode {other:?} (expected vertex or edge)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveWarning {
    /// The graph is disconnected; signatures use UNREACHABLE coordinates.
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub size: usize,
    pub witness: LandmarkSet,
    pub optimal: bool,
    pub nodes_explored: u64,
    pub wall_time: Duration,
    pub warnings: Vec<SolveWarning>,
}

impl SolveResult {
    pub(crate) fn new(witness: Vec<usize>, optimal: bool, nodes: u64, start: Instant) -> Self {
        let witness = LandmarkSet::from_sorted(witness);
        SolveResult {
            size: witness.len(),
            witness,
            optimal,
            nodes_explored: nodes,
            wall_time: start.elapsed(),
            warnings: Vec::new(),
        }
    }
}

pub(crate) fn check_feasible(inst: &CoverInstance) -> Result<(), SolveError> {
    if inst.is_feasible() {
        Ok(())
    } else {
        Err(SolveError::Infeasible {
            pairs: inst.infeasible.iter().map(|&i| inst.universe[i]).collect(),
        })
    }
}

pub(crate) fn verified(inst: &CoverInstance, r: SolveResult) -> Result<SolveResult, SolveError> {
    if inst.is_cover(r.witness.members()) {
        Ok(r)
    } else {
        Err(SolveError::WitnessRejected(r.witness.members().to_vec()))
    }
}

/// Solves one mode of one graph from its distance matrix.
///
/// `cap` bounds the exhaustive search (defaults to `n`). Greedy runs on very
/// large universes use [`greedy_partition`], which picks the same vertices
/// without materializing the instance.
pub fn solve_resolving(
    g: &Graph,
    dm: &DistanceMatrix,
    mode: Mode,
    method: Method,
    cap: Option<usize>,
) -> Result<SolveResult, SolveError> {
    let pairs = universe_size(object_count(g, mode));
    let mut result = if method == Method::Greedy
        && pairs > config::GREEDY_PARTITION_THRESHOLD as u128
    {
        greedy_partition(dm, g, mode)?
    } else {
        let inst = build_cover_instance(dm, g, mode)?;
        match method {
            Method::Brute => brute_force_minimum(&inst, cap.unwrap_or(g.n()))?,
            Method::Bnb => branch_and_bound(&inst)?,
            Method::Greedy => greedy_cover(&inst)?,
        }
    };
    if !is_resolving(dm, g, mode, &result.witness) {
        return Err(SolveError::WitnessRejected(result.witness.members().to_vec()));
    }
    if has_unreachable(dm) {
        result.warnings.push(SolveWarning::Disconnected);
    }
    Ok(result)
}

/// `dim(G)`: smallest landmark set separating all vertices.
pub fn metric_dimension(g: &Graph, method: Method) -> Result<SolveResult, SolveError> {
    solve_resolving(g, &all_pairs_distances(g), Mode::Vertex, method, None)
}

/// `edim(G)`: smallest landmark set separating all edges. Graphs with at most
/// one edge have `edim = 0`.
pub fn edge_metric_dimension(g: &Graph, method: Method) -> Result<SolveResult, SolveError> {
    solve_resolving(g, &all_pairs_distances(g), Mode::Edge, method, None)
}
