use std::time::Instant;

use super::{check_feasible, verified, SolveError, SolveResult};
use crate::distance::DistanceMatrix;
use crate::graph::Graph;
use crate::resolving::{object_count, object_distance, CoverInstance, Mode};

/// Standard greedy set cover: repeatedly take the vertex distinguishing the
/// most still-undistinguished pairs, lowest id on ties.
pub fn greedy_cover(inst: &CoverInstance) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    check_feasible(inst)?;
    let mut uncovered = fixedbitset::FixedBitSet::with_capacity(inst.universe_len());
    uncovered.insert_range(..);
    let mut chosen = Vec::new();
    let mut nodes = 0u64;
    while !uncovered.is_clear() {
        let mut best = (0usize, 0usize);
        for (v, set) in inst.distinguishers.iter().enumerate() {
            nodes += 1;
            let gain = set.intersection_count(&uncovered);
            if gain > best.1 {
                best = (v, gain);
            }
        }
        if best.1 == 0 {
            // Unreachable after the feasibility check.
            return Err(SolveError::Infeasible {
                pairs: uncovered.ones().map(|i| inst.universe[i]).collect(),
            });
        }
        chosen.push(best.0);
        uncovered.difference_with(&inst.distinguishers[best.0]);
    }
    chosen.sort_unstable();
    verified(inst, SolveResult::new(chosen, false, nodes, start))
}

/// The same greedy as [`greedy_cover`], computed by partition refinement
/// instead of over a materialized universe.
///
/// Objects with equal signatures under the vertices chosen so far form
/// classes; the undistinguished pairs are the pairs inside a class. The gain
/// of a vertex is the number of such pairs it splits. Memory is
/// `O(objects)`, so this runs where the pair universe would not fit.
pub fn greedy_partition(
    dm: &DistanceMatrix,
    g: &Graph,
    mode: Mode,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let objects = object_count(g, mode);
    let mut class = vec![0u64; objects];
    let mut uncovered = pairs_within(&mut class.clone());
    let mut chosen = Vec::new();
    let mut nodes = 0u64;
    let mut keys = Vec::with_capacity(objects);
    while uncovered > 0 {
        let mut best = (0usize, 0u64);
        for v in 0..g.n() {
            nodes += 1;
            refine_keys(&class, dm, g, mode, v, &mut keys);
            let gain = uncovered - pairs_within(&mut keys);
            if gain > best.1 {
                best = (v, gain);
            }
        }
        if best.1 == 0 {
            return Err(SolveError::Infeasible { pairs: Vec::new() });
        }
        let v = best.0;
        chosen.push(v);
        refine_keys(&class, dm, g, mode, v, &mut keys);
        relabel(&keys, &mut class);
        uncovered -= best.1;
    }
    chosen.sort_unstable();
    Ok(SolveResult::new(chosen, false, nodes, start))
}

fn refine_keys(class: &[u64], dm: &DistanceMatrix, g: &Graph, mode: Mode, v: usize, keys: &mut Vec<(u64, u32)>) {
    keys.clear();
    keys.extend(
        class
            .iter()
            .enumerate()
            .map(|(o, &c)| (c, object_distance(dm, g, mode, o, v))),
    );
}

/// Number of equal-key pairs; sorts `keys` in place.
fn pairs_within<K: Ord>(keys: &mut [K]) -> u64 {
    keys.sort_unstable();
    let mut total = 0u64;
    let mut run = 0u64;
    for i in 0..keys.len() {
        if i > 0 && keys[i] == keys[i - 1] {
            run += 1;
        } else {
            total += run * run.saturating_sub(1) / 2;
            run = 1;
        }
    }
    total + run * run.saturating_sub(1) / 2
}

/// Dense class ids from refinement keys, in first-appearance order.
fn relabel(keys: &[(u64, u32)], class: &mut [u64]) {
    let mut ids = std::collections::HashMap::new();
    for (o, key) in keys.iter().enumerate() {
        let next = ids.len() as u64;
        class[o] = *ids.entry(*key).or_insert(next);
    }
}
