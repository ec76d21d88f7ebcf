//! Distance signatures under a landmark set, the (edge) generating-set
//! predicates, and the reduction of (edge) metric dimension to set cover.
//!
//! An object is a vertex (VERTEX mode) or an edge (EDGE mode). The distance
//! from edge `xy` to vertex `v` is `min(d(x, v), d(y, v))`. A landmark set
//! `R` distinguishes two objects when their signatures, the vectors of
//! distances to the members of `R`, differ. [`UNREACHABLE`] is an ordinary
//! coordinate value: equal to itself, different from every hop count.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config;
use crate::distance::{Dist, DistanceMatrix, UNREACHABLE};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("landmark {vertex} out of range for {n} vertices")]
    LandmarkOutOfRange { vertex: Vertex, n: usize },
    #[error("cannot classify an edge paired with itself: ({0}, {1})")]
    IdenticalEdges(Vertex, Vertex),
    #[error("cover instance too large: {pairs} universe pairs over {candidates} candidates")]
    TooLarge { pairs: u128, candidates: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Vertex,
    Edge,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Vertex => "vertex",
            Mode::Edge => "edge",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A sorted, duplicate-free set of landmark vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LandmarkSet(Vec<Vertex>);

impl LandmarkSet {
    /// Sorts and deduplicates `members`; every member must be `< n`.
    pub fn new<I: IntoIterator<Item = Vertex>>(members: I, n: usize) -> Result<Self, ResolveError> {
        let mut v: Vec<Vertex> = members.into_iter().collect();
        if let Some(&vertex) = v.iter().find(|&&x| x >= n) {
            return Err(ResolveError::LandmarkOutOfRange { vertex, n });
        }
        v.sort_unstable();
        v.dedup();
        Ok(LandmarkSet(v))
    }

    pub fn empty() -> Self {
        LandmarkSet(Vec::new())
    }

    pub fn all(n: usize) -> Self {
        LandmarkSet((0..n).collect())
    }

    pub fn members(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        LandmarkSet(v)
    }
}

/// Distances from one object to each landmark, in landmark order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<Dist>);

#[inline]
pub fn edge_vertex_distance(dm: &DistanceMatrix, e: Edge, v: Vertex) -> Dist {
    dm.get(e.0, v).min(dm.get(e.1, v))
}

pub fn vertex_signature(dm: &DistanceMatrix, v: Vertex, landmarks: &LandmarkSet) -> Signature {
    Signature(landmarks.members().iter().map(|&r| dm.get(v, r)).collect())
}

pub fn edge_signature(dm: &DistanceMatrix, e: Edge, landmarks: &LandmarkSet) -> Signature {
    Signature(
        landmarks
            .members()
            .iter()
            .map(|&r| edge_vertex_distance(dm, e, r))
            .collect(),
    )
}

/// Distance from object `obj` (a vertex id or an edge index) to vertex `v`.
#[inline]
pub fn object_distance(dm: &DistanceMatrix, g: &Graph, mode: Mode, obj: usize, v: Vertex) -> Dist {
    match mode {
        Mode::Vertex => dm.get(obj, v),
        Mode::Edge => edge_vertex_distance(dm, g.edges()[obj], v),
    }
}

pub fn object_count(g: &Graph, mode: Mode) -> usize {
    match mode {
        Mode::Vertex => g.n(),
        Mode::Edge => g.edge_count(),
    }
}

/// True iff all object signatures under `landmarks` are pairwise distinct.
///
/// Signatures are deduplicated through a hash set, `O(objects · |R|)`.
pub fn is_resolving(dm: &DistanceMatrix, g: &Graph, mode: Mode, landmarks: &LandmarkSet) -> bool {
    let objects = object_count(g, mode);
    if objects <= 1 {
        return true;
    }
    let k = landmarks.len();
    if k == 0 {
        return false;
    }
    let mut flat = Vec::with_capacity(objects * k);
    for obj in 0..objects {
        flat.extend(
            landmarks
                .members()
                .iter()
                .map(|&r| object_distance(dm, g, mode, obj, r)),
        );
    }
    let mut seen = HashSet::with_capacity(objects);
    flat.chunks_exact(k).all(|sig| seen.insert(sig))
}

pub fn is_generating_set(dm: &DistanceMatrix, g: &Graph, landmarks: &LandmarkSet) -> bool {
    is_resolving(dm, g, Mode::Vertex, landmarks)
}

pub fn is_edge_generating_set(dm: &DistanceMatrix, g: &Graph, landmarks: &LandmarkSet) -> bool {
    is_resolving(dm, g, Mode::Edge, landmarks)
}

/// Kind of a pair of distinct edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairType {
    /// The edges share exactly one endpoint (`ab`, `bc`).
    Type1,
    /// The edges have disjoint endpoint sets (`ab`, `cd`).
    Type2,
}

pub fn classify_pair(e1: Edge, e2: Edge) -> Result<PairType, ResolveError> {
    let norm = |(a, b): Edge| (a.min(b), a.max(b));
    let (e1, e2) = (norm(e1), norm(e2));
    if e1 == e2 {
        return Err(ResolveError::IdenticalEdges(e1.0, e1.1));
    }
    let shared = [e1.0, e1.1].iter().filter(|x| **x == e2.0 || **x == e2.1).count();
    Ok(if shared == 0 { PairType::Type2 } else { PairType::Type1 })
}

/// Set-cover form of the resolving problem.
///
/// `universe` lists every unordered pair `(a, b)`, `a < b`, of objects in
/// lexicographic order. `distinguishers[v]` is the bitset of universe
/// positions whose two objects are at different distances from `v`. A
/// landmark set resolves the graph iff the union of its members' bitsets is
/// the whole universe.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub mode: Mode,
    pub universe: Vec<(usize, usize)>,
    pub distinguishers: Vec<FixedBitSet>,
    /// Universe positions no candidate distinguishes. Empty for instances
    /// built from a graph, since each object is separated from every other
    /// by a vertex it contains; checked anyway for hand-built instances.
    pub infeasible: Vec<usize>,
}

impl CoverInstance {
    pub fn candidates(&self) -> usize {
        self.distinguishers.len()
    }

    pub fn universe_len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_feasible(&self) -> bool {
        self.infeasible.is_empty()
    }

    /// Whether the union of the members' distinguisher sets is the universe.
    pub fn is_cover(&self, members: &[Vertex]) -> bool {
        let mut acc = FixedBitSet::with_capacity(self.universe_len());
        for &v in members {
            acc.union_with(&self.distinguishers[v]);
        }
        acc.count_ones(..) == self.universe_len()
    }

    /// For each universe position, the sorted candidates distinguishing it.
    pub fn pair_candidates(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.universe_len()];
        for (v, set) in self.distinguishers.iter().enumerate() {
            for i in set.ones() {
                out[i].push(v);
            }
        }
        out
    }
}

pub fn universe_size(objects: usize) -> u128 {
    let k = objects as u128;
    k * k.saturating_sub(1) / 2
}

pub fn build_cover_instance(
    dm: &DistanceMatrix,
    g: &Graph,
    mode: Mode,
) -> Result<CoverInstance, ResolveError> {
    let n = g.n();
    let objects = object_count(g, mode);
    let pairs = universe_size(objects);
    if pairs > config::MAX_UNIVERSE_PAIRS as u128 || pairs * n as u128 > config::MAX_COVER_BITS {
        return Err(ResolveError::TooLarge { pairs, candidates: n });
    }
    let pairs = pairs as usize;
    let universe: Vec<(usize, usize)> = (0..objects)
        .flat_map(|a| (a + 1..objects).map(move |b| (a, b)))
        .collect();

    let distinguishers: Vec<FixedBitSet> = (0..n)
        .into_par_iter()
        .map(|v| {
            let dist: Vec<Dist> = (0..objects).map(|o| object_distance(dm, g, mode, o, v)).collect();
            let mut set = FixedBitSet::with_capacity(pairs);
            let mut i = 0;
            for a in 0..objects {
                for b in a + 1..objects {
                    if dist[a] != dist[b] {
                        set.insert(i);
                    }
                    i += 1;
                }
            }
            set
        })
        .collect();

    let mut any = FixedBitSet::with_capacity(pairs);
    for set in &distinguishers {
        any.union_with(set);
    }
    any.toggle_range(..);
    let infeasible = any.ones().collect();

    Ok(CoverInstance { mode, universe, distinguishers, infeasible })
}

/// True iff some pair of vertices lies in different components.
pub fn has_unreachable(dm: &DistanceMatrix) -> bool {
    (0..dm.n()).any(|u| dm.row(u).contains(&UNREACHABLE))
}
