//! Simple undirected graphs on dense vertex ids `0..n`.

use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::rng::{self, StreamRng};

/// Vertex identifier.
pub type Vertex = usize;

/// An undirected edge stored as `(u, v)` with `u < v`.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
}

/// A finite simple undirected graph.
///
/// The edge list is sorted lexicographically, so the position of an edge in
/// [`Graph::edges`] is a canonical edge index. Adjacency lists are sorted and
/// mirror the edge list exactly.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    #[serde(skip)]
    adjacency: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph from an arbitrary list of vertex pairs.
    ///
    /// Pairs may be given in either orientation and any order; self-loops,
    /// duplicates and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// `edges` must already be canonical: sorted, `u < v`, unique, in range.
    fn from_sorted_unique(n: usize, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { n, edges, adjacency }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        Self::from_sorted_unique(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted_unique(n, edges)
    }

    pub fn star(leaves: usize) -> Self {
        Self::from_sorted_unique(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Canonical index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

fn check_params(n: usize, p: f64) -> Result<(), GraphError> {
    if n == 0 {
        return Err(GraphError::NoVertices);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    Ok(())
}

/// Samples the Erdős–Rényi graph G(n, p).
///
/// Uses stream 0 of `seed` (see [`crate::rng`]). Pairs `(u, v)`, `u < v`, are
/// visited in lexicographic order and each consumes exactly one uniform `f64`
/// draw; the pair is an edge iff the draw is below `p`. The output is
/// therefore bit-identical for identical `(n, p, seed)` on every platform.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    check_params(n, p)?;
    Ok(sample_er(n, p, &mut rng::stream(seed, 0)))
}

/// G(n, p) drawn from an existing stream, with the same pair order as
/// [`generate_er`].
pub fn generate_er_from(n: usize, p: f64, rng: &mut StreamRng) -> Result<Graph, GraphError> {
    check_params(n, p)?;
    Ok(sample_er(n, p, rng))
}

fn sample_er(n: usize, p: f64, rng: &mut StreamRng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_sorted_unique(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        let g = generate_er(5, 0.0, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = generate_er(5, 1.0, 1).unwrap();
        assert_eq!(g, Graph::complete(5));
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(generate_er(0, 0.5, 1), Err(GraphError::NoVertices));
        assert_eq!(generate_er(3, 1.5, 1), Err(GraphError::InvalidProbability(1.5)));
        assert!(generate_er(3, -0.1, 1).is_err());
        assert!(generate_er(3, f64::NAN, 1).is_err());
    }

    #[test]
    fn same_seed_same_graph() {
        let a = generate_er(60, 0.3, 42).unwrap();
        let b = generate_er(60, 0.3, 42).unwrap();
        let c = generate_er(60, 0.3, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn edge_count_concentrates_at_n_1000() {
        let g = generate_er(1000, 0.5, 7).unwrap();
        let pairs = 1000.0 * 999.0 / 2.0;
        let dev = (g.edge_count() as f64 - pairs / 2.0).abs();
        assert!(dev <= 4.0 * (pairs * 0.25).sqrt(), "deviation {dev}");
    }

    #[test]
    fn mean_edge_count_over_seeds() {
        // 200 seeds of G(50, 0.3): mean within 3 standard errors of 367.5.
        let counts: Vec<f64> = (0..200)
            .map(|s| generate_er(50, 0.3, s).unwrap().edge_count() as f64)
            .collect();
        let mean = counts.iter().sum::<f64>() / 200.0;
        let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / 199.0;
        let se = (var / 200.0).sqrt();
        assert!((mean - 367.5).abs() <= 3.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn from_edges_canonicalizes_and_validates() {
        let g = Graph::from_edges(4, [(2, 1), (0, 3), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.edge_index(2, 1), Some(2));
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn families() {
        assert_eq!(Graph::path(4).edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(Graph::cycle(4).edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(Graph::star(3).degree(0), 3);
        assert_eq!(Graph::complete(4).edge_count(), 6);
    }
}
