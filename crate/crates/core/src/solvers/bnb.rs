use std::time::Instant;

use fixedbitset::FixedBitSet;

use super::{check_feasible, greedy_cover, verified, SolveError, SolveResult};
use crate::resolving::CoverInstance;

/// Exact minimum cover by depth-first branch and bound.
///
/// * Incumbent: the greedy cover.
/// * Branching: the undistinguished pair with the fewest allowed candidates
///   (lowest position on ties). Its candidates are tried in decreasing order
///   of how many undistinguished pairs they split; branch `i` takes candidate
///   `i` and forbids candidates `0..i`.
/// * Bound: chosen size plus the size of a greedily collected family of
///   undistinguished pairs whose allowed candidate sets are pairwise
///   disjoint. Each of them needs its own vertex.
pub fn branch_and_bound(inst: &CoverInstance) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    check_feasible(inst)?;
    let incumbent = greedy_cover(inst)?;
    let mut search = Search {
        inst,
        pair_candidates: inst.pair_candidates(),
        best: incumbent.witness.members().to_vec(),
        nodes: 0,
        excluded: vec![false; inst.candidates()],
        used: vec![false; inst.candidates()],
    };
    let mut uncovered = FixedBitSet::with_capacity(inst.universe_len());
    uncovered.insert_range(..);
    let mut chosen = Vec::new();
    search.recurse(&mut chosen, &uncovered);

    let mut best = search.best;
    best.sort_unstable();
    verified(inst, SolveResult::new(best, true, search.nodes, start))
}

struct Search<'a> {
    inst: &'a CoverInstance,
    pair_candidates: Vec<Vec<usize>>,
    best: Vec<usize>,
    nodes: u64,
    excluded: Vec<bool>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn recurse(&mut self, chosen: &mut Vec<usize>, uncovered: &FixedBitSet) {
        self.nodes += 1;
        if uncovered.is_clear() {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + 1 >= self.best.len() {
            return;
        }

        // Branching pair and disjoint-family bound in one sweep.
        self.used.iter_mut().for_each(|u| *u = false);
        let mut family = 0;
        let mut branch = (usize::MAX, usize::MAX);
        for i in uncovered.ones() {
            let cands = &self.pair_candidates[i];
            let mut allowed = 0;
            let mut disjoint = true;
            for &v in cands {
                if !self.excluded[v] {
                    allowed += 1;
                    disjoint &= !self.used[v];
                }
            }
            if allowed == 0 {
                return;
            }
            if allowed < branch.1 {
                branch = (i, allowed);
            }
            if disjoint {
                family += 1;
                for &v in cands {
                    if !self.excluded[v] {
                        self.used[v] = true;
                    }
                }
            }
        }
        if chosen.len() + family >= self.best.len() {
            return;
        }

        let mut order: Vec<(usize, usize)> = self.pair_candidates[branch.0]
            .iter()
            .filter(|&&v| !self.excluded[v])
            .map(|&v| (v, self.inst.distinguishers[v].intersection_count(uncovered)))
            .collect();
        order.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

        let mut next = uncovered.clone();
        for &(v, _) in &order {
            if chosen.len() + 1 >= self.best.len() {
                break;
            }
            next.clone_from(uncovered);
            next.difference_with(&self.inst.distinguishers[v]);
            chosen.push(v);
            self.recurse(chosen, &next);
            chosen.pop();
            self.excluded[v] = true;
        }
        for &(v, _) in &order {
            self.excluded[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::all_pairs_distances;
    use crate::graph::{generate_er, Graph};
    use crate::resolving::{build_cover_instance, Mode};
    use crate::solvers::brute_force_minimum;

    #[test]
    fn empty_universe() {
        let g = Graph::complete(2);
        let dm = all_pairs_distances(&g);
        let inst = build_cover_instance(&dm, &g, Mode::Edge).unwrap();
        let r = branch_and_bound(&inst).unwrap();
        assert_eq!(r.size, 0);
        assert!(r.witness.is_empty());
        assert!(r.optimal);
    }

    #[test]
    fn p3_edges() {
        let g = Graph::path(3);
        let dm = all_pairs_distances(&g);
        let inst = build_cover_instance(&dm, &g, Mode::Edge).unwrap();
        let r = branch_and_bound(&inst).unwrap();
        assert_eq!(r.witness.members(), &[0]);
    }

    #[test]
    fn agrees_with_brute_force_on_100_g10_instances() {
        for seed in 0..100 {
            let g = generate_er(10, 0.5, seed).unwrap();
            let dm = all_pairs_distances(&g);
            for mode in [Mode::Vertex, Mode::Edge] {
                let inst = build_cover_instance(&dm, &g, mode).unwrap();
                let exact = brute_force_minimum(&inst, 10).unwrap();
                let bnb = branch_and_bound(&inst).unwrap();
                assert_eq!(bnb.size, exact.size, "seed {seed}, {mode}");
            }
        }
    }
}
