//! G(n, p) revealed on demand.
//!
//! Every vertex pair is an independent Bernoulli(p) bit. Revealing a pair's
//! bit only when it is first queried, and remembering it, produces exactly
//! the joint law of a fully sampled graph for every quantity computed from
//! the queries, while touching only the pairs a trial needs.

use std::collections::{HashMap, HashSet};

use rand::Rng;

use crate::distance::{Dist, UNREACHABLE};
use crate::rng::StreamRng;

pub struct LazyGraph {
    n: usize,
    p: f64,
    rng: StreamRng,
    revealed: HashMap<(u32, u32), bool>,
}

impl LazyGraph {
    pub fn new(n: usize, p: f64, rng: StreamRng) -> Self {
        LazyGraph { n, p, rng, revealed: HashMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Forgets every revealed pair: the next queries see a fresh graph.
    pub fn resample(&mut self) {
        self.revealed.clear();
    }

    pub fn uniform_vertex(&mut self) -> usize {
        self.rng.random_range(0..self.n)
    }

    /// `k` distinct uniform vertices, in draw order.
    pub fn distinct_vertices<const K: usize>(&mut self) -> [usize; K] {
        let mut out = [0; K];
        let mut i = 0;
        while i < K {
            let v = self.uniform_vertex();
            if !out[..i].contains(&v) {
                out[i] = v;
                i += 1;
            }
        }
        out
    }

    /// Uniform vertex outside `avoid` (which must leave one free).
    pub fn vertex_outside(&mut self, avoid: &[usize]) -> usize {
        loop {
            let v = self.uniform_vertex();
            if !avoid.contains(&v) {
                return v;
            }
        }
    }

    pub fn adjacent(&mut self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let key = (a.min(b) as u32, a.max(b) as u32);
        let (p, rng) = (self.p, &mut self.rng);
        *self.revealed.entry(key).or_insert_with(|| rng.random::<f64>() < p)
    }

    /// Exact hop distance. Distances 1 and 2 are settled by scanning for a
    /// common neighbour; longer ones fall back to BFS.
    pub fn distance(&mut self, a: usize, b: usize) -> Dist {
        if a == b {
            return 0;
        }
        if self.adjacent(a, b) {
            return 1;
        }
        for w in 0..self.n {
            if w != a && w != b && self.adjacent(a, w) && self.adjacent(w, b) {
                return 2;
            }
        }
        self.bfs_distance(a, b)
    }

    fn bfs_distance(&mut self, a: usize, b: usize) -> Dist {
        let mut seen: HashSet<usize> = HashSet::from([a]);
        let mut frontier = vec![a];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for w in 0..self.n {
                    if !seen.contains(&w) && self.adjacent(u, w) {
                        if w == b {
                            return level;
                        }
                        seen.insert(w);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        UNREACHABLE
    }
}
