//! Hop distances: single-source BFS, all-pairs matrices and the diameter.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::{Graph, Vertex};

/// A hop count, or [`UNREACHABLE`].
pub type Dist = u32;

/// Distance between vertices in different components. Compares greater than
/// every finite distance and equal only to itself.
pub const UNREACHABLE: Dist = Dist::MAX;

/// Dense `n × n` matrix of hop distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Dist>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> Dist {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[Dist] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        !self.d.contains(&UNREACHABLE)
    }

    /// Largest finite distance, or [`UNREACHABLE`] if any pair is disconnected.
    pub fn diameter(&self) -> Dist {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

/// Distances from `source` by queue-based BFS over adjacency lists.
pub fn bfs_distances(g: &Graph, source: Vertex) -> Vec<Dist> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Level-synchronous BFS from every source.
///
/// Frontiers and adjacency rows are word bitsets, so one source costs
/// `O(n²/64)` word operations regardless of density. Sources are processed in
/// parallel; each source writes only its own row, so the matrix does not
/// depend on scheduling.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    for &(u, v) in g.edges() {
        adj[u * words + v / 64] |= 1 << (v % 64);
        adj[v * words + u / 64] |= 1 << (u % 64);
    }

    let mut d = vec![UNREACHABLE; n * n];
    d.par_chunks_mut(n.max(1)).enumerate().for_each(|(source, row)| {
        if source >= n {
            return;
        }
        let mut visited = vec![0u64; words];
        let mut frontier = vec![0u64; words];
        let mut next = vec![0u64; words];
        visited[source / 64] |= 1 << (source % 64);
        frontier[source / 64] |= 1 << (source % 64);
        row[source] = 0;
        let mut level: Dist = 0;
        loop {
            next.iter_mut().for_each(|w| *w = 0);
            for (wi, &word) in frontier.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let u = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let adj_row = &adj[u * words..(u + 1) * words];
                    for (acc, &a) in next.iter_mut().zip(adj_row) {
                        *acc |= a;
                    }
                }
            }
            level += 1;
            let mut any = false;
            for wi in 0..words {
                let fresh = next[wi] & !visited[wi];
                frontier[wi] = fresh;
                visited[wi] |= fresh;
                let mut bits = fresh;
                any |= bits != 0;
                while bits != 0 {
                    row[wi * 64 + bits.trailing_zeros() as usize] = level;
                    bits &= bits - 1;
                }
            }
            if !any {
                break;
            }
        }
    });
    DistanceMatrix { n, d }
}

/// Maximum finite distance if `g` is connected, otherwise [`UNREACHABLE`].
pub fn diameter(g: &Graph) -> Dist {
    all_pairs_distances(g).diameter()
}
