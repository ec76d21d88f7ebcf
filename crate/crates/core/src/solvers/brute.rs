use std::time::Instant;

use fixedbitset::FixedBitSet;

use super::{check_feasible, verified, SolveError, SolveResult};
use crate::config;
use crate::resolving::CoverInstance;

fn binomial(n: u128, k: u128) -> u128 {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// `max_{k <= cap} C(n, k)`, the largest layer exhaustive search may visit.
pub fn largest_layer(n: usize, cap: usize) -> u128 {
    let k = cap.min(n / 2);
    binomial(n as u128, k as u128)
}

/// Exhaustive minimum cover.
///
/// Subsets are tried by increasing size and lexicographically within a size,
/// so the witness is the lexicographically least cover of minimum size.
pub fn brute_force_minimum(inst: &CoverInstance, cap: usize) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    check_feasible(inst)?;
    let n = inst.candidates();
    let cap = cap.min(n);
    let layer = largest_layer(n, cap);
    if layer > config::BRUTE_FORCE_MAX_LAYER {
        return Err(SolveError::TooLarge { layer, limit: config::BRUTE_FORCE_MAX_LAYER });
    }

    let mut nodes = 0u64;
    let mut chosen = Vec::with_capacity(cap);
    for k in 0..=cap {
        let mut levels = vec![FixedBitSet::with_capacity(inst.universe_len()); k + 1];
        if search(inst, k, 0, &mut chosen, &mut levels, &mut nodes) {
            return verified(inst, SolveResult::new(chosen, true, nodes, start));
        }
    }
    Err(SolveError::CapExceeded { cap })
}

fn search(
    inst: &CoverInstance,
    k: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    levels: &mut [FixedBitSet],
    nodes: &mut u64,
) -> bool {
    let depth = chosen.len();
    if depth == k {
        *nodes += 1;
        return levels[depth].count_ones(..) == inst.universe_len();
    }
    let n = inst.candidates();
    for v in from..=n - (k - depth) {
        let (lo, hi) = levels.split_at_mut(depth + 1);
        hi[0].clone_from(&lo[depth]);
        hi[0].union_with(&inst.distinguishers[v]);
        chosen.push(v);
        if search(inst, k, v + 1, chosen, levels, nodes) {
            return true;
        }
        chosen.pop();
    }
    false
}
