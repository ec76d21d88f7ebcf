//! Seeded Monte Carlo estimators on sampled G(n, p) graphs.
//!
//! Trial `i` of an estimator draws all of its randomness from stream `i + 1`
//! of the seed ([`crate::rng::trial_stream`]) and uses a fresh graph, so
//! trials are independent, run in parallel, and give the same counts for any
//! worker count.
//!
//! Edge-configuration protocol: the graph is fixed first, then ordered tuples
//! of distinct uniform vertices are drawn until the required pairs are all
//! edges, which selects a uniform configuration of that graph. If
//! [`config::REJECTION_BUDGET`] draws fail the trial moves to a fresh graph.
//! The reference vertex `v` is uniform among the vertices not named by the
//! configuration.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::config;
use crate::distance::{all_pairs_distances, Dist};
use crate::graph::generate_er_from;
use crate::resolving::{is_edge_generating_set, LandmarkSet};
use crate::rng::trial_stream;
use crate::theory::{q_of, s_of};

mod lazy;

pub use lazy::LazyGraph;

/// Fresh graphs one trial may draw before the estimator gives up.
const MAX_GRAPHS_PER_TRIAL: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum McError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(
        "degenerate regime for {target}: {resampled} of {trials} trials needed a fresh graph \
         (edge configuration too rare at n = {n}, p = {p})"
    )]
    Degenerate { target: String, resampled: u64, trials: u64, n: usize, p: f64 },
}

/// A binomial proportion estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub target: String,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub stderr: f64,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
}

impl McEstimate {
    pub fn new(target: &str, trials: u64, successes: u64, seed: u64, n: usize, p: f64) -> Self {
        let p_hat = if trials == 0 { 0.0 } else { successes as f64 / trials as f64 };
        let stderr = if trials == 0 { 0.0 } else { (p_hat * (1.0 - p_hat) / trials as f64).sqrt() };
        McEstimate { target: target.to_string(), trials, successes, p_hat, stderr, seed, n, p }
    }

    /// `Z_SCORE * stderr + slack`.
    pub fn tolerance(&self, slack: f64) -> f64 {
        config::Z_SCORE * self.stderr + slack
    }

    pub fn agrees_with(&self, expected: f64, slack: f64) -> bool {
        (self.p_hat - expected).abs() <= self.tolerance(slack)
    }
}

fn check_common(n: usize, min_n: usize, p: f64, trials: u64) -> Result<(), McError> {
    if n < min_n {
        return Err(McError::InvalidArgument(format!("n = {n} must be at least {min_n}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(McError::InvalidArgument(format!("p = {p} is outside [0, 1]")));
    }
    if trials == 0 {
        return Err(McError::InvalidArgument("at least one trial is required".into()));
    }
    Ok(())
}

/// Runs `trial` for indices `0..trials` in parallel, results in index order.
fn run_trials<T, F>(trials: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    crate::parallel::install(|| (0..trials).into_par_iter().map(&f).collect())
}

/// Draws a uniform configuration whose `edges` (pairs of positions into the
/// `K` drawn vertices) are all present, resampling the graph after the
/// rejection budget. Returns the vertices and the number of fresh graphs.
fn sample_configuration<const K: usize>(
    g: &mut LazyGraph,
    edges: &[(usize, usize)],
) -> Option<([usize; K], u32)> {
    for fresh in 0..MAX_GRAPHS_PER_TRIAL {
        if fresh > 0 {
            g.resample();
        }
        for _ in 0..config::REJECTION_BUDGET {
            let vs: [usize; K] = g.distinct_vertices();
            if edges.iter().all(|&(a, b)| g.adjacent(vs[a], vs[b])) {
                return Some((vs, fresh));
            }
        }
    }
    None
}

/// Distances from a uniform outside vertex `v` to `x, y, z, t` of a uniform
/// disjoint edge pair `xy`, `zt`.
#[derive(Clone, Copy, Debug)]
struct PairTrial {
    dists: [Dist; 4],
    resampled: bool,
}

fn type2_trial(n: usize, p: f64, seed: u64, index: u64) -> Option<PairTrial> {
    let mut g = LazyGraph::new(n, p, trial_stream(seed, index));
    let (vs, fresh) = sample_configuration::<4>(&mut g, &[(0, 1), (2, 3)])?;
    let v = g.vertex_outside(&vs);
    let dists = vs.map(|x| g.distance(v, x));
    Some(PairTrial { dists, resampled: fresh > 0 })
}

fn type2_trials(target: &str, n: usize, p: f64, trials: u64, seed: u64) -> Result<Vec<PairTrial>, McError> {
    let results = run_trials(trials, |i| type2_trial(n, p, seed, i));
    let degenerate = |resampled| McError::Degenerate { target: target.into(), resampled, trials, n, p };
    let mut out = Vec::with_capacity(results.len());
    for r in results {
        out.push(r.ok_or_else(|| degenerate(trials))?);
    }
    let resampled = out.iter().filter(|t| t.resampled).count() as u64;
    if resampled as f64 > config::DEGENERATE_FRACTION * trials as f64 {
        return Err(degenerate(resampled));
    }
    Ok(out)
}

fn equidistant(d: &[Dist; 4]) -> bool {
    d[0].min(d[1]) == d[2].min(d[3])
}

/// Fraction of trials in which `v` does not distinguish the disjoint edges
/// `xy`, `zt`; estimates `q`.
pub fn estimate_nondistinguish(n: usize, p: f64, trials: u64, seed: u64) -> Result<McEstimate, McError> {
    check_common(n, 20, p, trials)?;
    let outcomes = type2_trials("q", n, p, trials, seed)?;
    let successes = outcomes.iter().filter(|t| equidistant(&t.dists)).count() as u64;
    Ok(McEstimate::new("q", trials, successes, seed, n, p))
}

/// A distance profile `(d(v,x), d(v,y), d(v,z), d(v,t))` with every
/// coordinate in `{1, 2}`.
pub type Profile = [u8; 4];

/// The profiles where `v` is at distance 1 from one edge and 2 from the
/// other.
pub const DISTINGUISHING_PROFILES: [Profile; 6] = [
    [1, 1, 2, 2],
    [1, 2, 2, 2],
    [2, 1, 2, 2],
    [2, 2, 1, 1],
    [2, 2, 1, 2],
    [2, 2, 2, 1],
];

/// Profile frequencies of the disjoint-edge-pair trials.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileTable {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    /// Trials per profile, indexed by [`profile_index`].
    pub counts: [u64; 16],
    /// Trials with some distance outside `{1, 2}`.
    pub other: u64,
    /// Trials where `v` does not distinguish the pair (the `q` event), from
    /// the same draws.
    pub nondistinguishing: u64,
}

pub fn profile_index(profile: Profile) -> usize {
    profile.iter().fold(0, |acc, &d| acc * 2 + usize::from(d == 2))
}

pub fn profile_of_index(index: usize) -> Profile {
    let mut out = [1; 4];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = 1 + ((index >> (3 - i)) & 1) as u8;
    }
    out
}

/// Leading-order probability of a profile: each coordinate is 1 with
/// probability `p` and 2 otherwise, independently.
pub fn profile_probability(profile: Profile, p: f64) -> f64 {
    profile.iter().map(|&d| if d == 1 { p } else { 1.0 - p }).product()
}

impl ProfileTable {
    pub fn frequency(&self, profile: Profile) -> McEstimate {
        let name = format!("profile_{}", profile.iter().map(|d| d.to_string()).collect::<String>());
        McEstimate::new(&name, self.trials, self.counts[profile_index(profile)], self.seed, self.n, self.p)
    }

    /// Sum of the six distinguishing profiles; estimates `1 - q`.
    pub fn distinguishing_aggregate(&self) -> McEstimate {
        let total = DISTINGUISHING_PROFILES.iter().map(|&pr| self.counts[profile_index(pr)]).sum();
        McEstimate::new("distinguishing_aggregate", self.trials, total, self.seed, self.n, self.p)
    }

    pub fn other_fraction(&self) -> f64 {
        self.other as f64 / self.trials as f64
    }

    /// More than [`config::OTHER_BIN_LIMIT`] of the trials left `{1, 2}`.
    pub fn contaminated(&self) -> bool {
        self.other_fraction() > config::OTHER_BIN_LIMIT
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..16)
            .map(|i| {
                let profile = profile_of_index(i);
                let est = self.frequency(profile);
                serde_json::json!({
                    "profile": profile,
                    "count": self.counts[i],
                    "p_hat": est.p_hat,
                    "stderr": est.stderr,
                    "expected": profile_probability(profile, self.p),
                    "distinguishing": DISTINGUISHING_PROFILES.contains(&profile),
                })
            })
            .collect();
        let agg = self.distinguishing_aggregate();
        serde_json::json!({
            "target": "profile",
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "profiles": rows,
            "other": self.other,
            "other_fraction": self.other_fraction(),
            "contaminated": self.contaminated(),
            "distinguishing_aggregate": agg,
            "expected_aggregate": 1.0 - q_of(self.p),
            "nondistinguishing": self.nondistinguishing,
        })
    }
}

/// Distance profile table of the disjoint-edge-pair trials. Uses exactly the
/// draws of [`estimate_nondistinguish`] for the same arguments.
pub fn estimate_profile_table(n: usize, p: f64, trials: u64, seed: u64) -> Result<ProfileTable, McError> {
    check_common(n, 20, p, trials)?;
    let outcomes = type2_trials("profile", n, p, trials, seed)?;
    let mut counts = [0u64; 16];
    let mut other = 0;
    let mut nondistinguishing = 0;
    for t in &outcomes {
        if equidistant(&t.dists) {
            nondistinguishing += 1;
        }
        if t.dists.iter().all(|&d| d == 1 || d == 2) {
            counts[profile_index(t.dists.map(|d| d as u8))] += 1;
        } else {
            other += 1;
        }
    }
    Ok(ProfileTable { n, p, trials, seed, counts, other, nondistinguishing })
}

/// Joint failure on two disjoint-edge pairs sharing vertex `x1`, with the
/// conditional success rates given `d(v, x1) = 1` and `d(v, x1) = 2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JointFailEstimate {
    pub overall: McEstimate,
    pub case1: McEstimate,
    pub case2: McEstimate,
    pub expected: f64,
    pub expected_case1: f64,
    pub expected_case2: f64,
}

/// Case-1 conditional probability `p^2 (2-p)^2`.
pub fn case1_probability(p: f64) -> f64 {
    (p * (2.0 - p)).powi(2)
}

/// Case-2 conditional probability `((1-p)^3 + p^2(2-p))^2`.
pub fn case2_probability(p: f64) -> f64 {
    ((1.0 - p).powi(3) + p * p * (2.0 - p)).powi(2)
}

/// Estimates `s_p`: vertices `x1 y1 z1 t1 y2 z2 t2` with edges `x1y1`,
/// `z1t1`, `x1y2`, `z2t2`; success when `v` fails to distinguish both
/// `(x1y1, z1t1)` and `(x1y2, z2t2)`.
pub fn estimate_joint_fail(n: usize, p: f64, trials: u64, seed: u64) -> Result<JointFailEstimate, McError> {
    check_common(n, 30, p, trials)?;
    // Positions: x1 y1 z1 t1 y2 z2 t2.
    const EDGES: [(usize, usize); 4] = [(0, 1), (2, 3), (0, 4), (5, 6)];
    let results = run_trials(trials, |i| {
        let mut g = LazyGraph::new(n, p, trial_stream(seed, i));
        let (vs, fresh) = sample_configuration::<7>(&mut g, &EDGES)?;
        let v = g.vertex_outside(&vs);
        let d = vs.map(|x| g.distance(v, x));
        let first = d[0].min(d[1]) == d[2].min(d[3]);
        let second = d[0].min(d[4]) == d[5].min(d[6]);
        Some((d[0], first && second, fresh > 0))
    });
    let degenerate = |resampled| McError::Degenerate { target: "s_p".into(), resampled, trials, n, p };
    let mut successes = 0;
    let mut resampled = 0;
    let (mut c1, mut s1, mut c2, mut s2) = (0, 0, 0, 0);
    for r in results {
        let (dx, ok, fresh) = r.ok_or_else(|| degenerate(trials))?;
        successes += u64::from(ok);
        resampled += u64::from(fresh);
        match dx {
            1 => {
                c1 += 1;
                s1 += u64::from(ok);
            }
            2 => {
                c2 += 1;
                s2 += u64::from(ok);
            }
            _ => {}
        }
    }
    if resampled as f64 > config::DEGENERATE_FRACTION * trials as f64 {
        return Err(degenerate(resampled));
    }
    Ok(JointFailEstimate {
        overall: McEstimate::new("s_p", trials, successes, seed, n, p),
        case1: McEstimate::new("s_p_case1", c1, s1, seed, n, p),
        case2: McEstimate::new("s_p_case2", c2, s2, seed, n, p),
        expected: s_of(p),
        expected_case1: case1_probability(p),
        expected_case2: case2_probability(p),
    })
}

/// Fraction of sampled graphs with diameter exactly 2.
pub fn estimate_diameter2(n: usize, p: f64, graphs: u64, seed: u64) -> Result<McEstimate, McError> {
    check_common(n, 20, p, graphs)?;
    let hits = run_trials(graphs, |i| {
        let g = generate_er_from(n, p, &mut trial_stream(seed, i)).expect("validated parameters");
        all_pairs_distances(&g).diameter() == 2
    });
    let successes = hits.iter().filter(|&&h| h).count() as u64;
    Ok(McEstimate::new("diameter2", graphs, successes, seed, n, p))
}

/// Means of the per-graph numbers of edge pairs sharing one endpoint
/// (type 1) and sharing none (type 2).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypePairCounts {
    pub target: &'static str,
    pub n: usize,
    pub p: f64,
    pub graphs: u64,
    pub seed: u64,
    pub mean_type1: f64,
    pub stderr_type1: f64,
    pub mean_type2: f64,
    pub stderr_type2: f64,
    /// `n C(n-1, 2) p^2`.
    pub expected_type1: f64,
    /// `3 C(n, 4) p^2`.
    pub expected_type2: f64,
}

impl TypePairCounts {
    pub fn ratio(&self) -> f64 {
        self.mean_type1 / self.mean_type2
    }
}

fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

pub fn expected_type1_pairs(n: usize, p: f64) -> f64 {
    let n = n as f64;
    n * (n - 1.0) * (n - 2.0) / 2.0 * p * p
}

pub fn expected_type2_pairs(n: usize, p: f64) -> f64 {
    let n = n as f64;
    3.0 * (n * (n - 1.0) * (n - 2.0) * (n - 3.0) / 24.0) * p * p
}

pub fn estimate_type_pair_counts(n: usize, p: f64, graphs: u64, seed: u64) -> Result<TypePairCounts, McError> {
    check_common(n, 10, p, graphs)?;
    let counts = run_trials(graphs, |i| {
        let g = generate_er_from(n, p, &mut trial_stream(seed, i)).expect("validated parameters");
        let m = g.edge_count() as u64;
        let type1: u64 = (0..n).map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        }).sum();
        let type2 = m * m.saturating_sub(1) / 2 - type1;
        (type1 as f64, type2 as f64)
    });
    let t1: Vec<f64> = counts.iter().map(|c| c.0).collect();
    let t2: Vec<f64> = counts.iter().map(|c| c.1).collect();
    let (mean_type1, stderr_type1) = mean_and_stderr(&t1);
    let (mean_type2, stderr_type2) = mean_and_stderr(&t2);
    Ok(TypePairCounts {
        target: "type_pairs",
        n,
        p,
        graphs,
        seed,
        mean_type1,
        stderr_type1,
        mean_type2,
        stderr_type2,
        expected_type1: expected_type1_pairs(n, p),
        expected_type2: expected_type2_pairs(n, p),
    })
}

/// Fraction of sampled graphs in which a fresh uniform `w`-subset of the
/// vertices is an edge generating set.
pub fn random_set_trial(n: usize, p: f64, w: usize, graphs: u64, seed: u64) -> Result<McEstimate, McError> {
    check_common(n, 1, p, graphs)?;
    if w > n {
        return Err(McError::InvalidArgument(format!("w = {w} exceeds n = {n}")));
    }
    let hits = run_trials(graphs, |i| {
        let mut rng = trial_stream(seed, i);
        let g = generate_er_from(n, p, &mut rng).expect("validated parameters");
        let members = rand::seq::index::sample(&mut rng, n, w).into_vec();
        let landmarks = LandmarkSet::new(members, n).expect("sampled below n");
        is_edge_generating_set(&all_pairs_distances(&g), &g, &landmarks)
    });
    let successes = hits.iter().filter(|&&h| h).count() as u64;
    Ok(McEstimate::new("random_set", graphs, successes, seed, n, p))
}
