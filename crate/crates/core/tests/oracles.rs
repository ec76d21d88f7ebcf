//! Solvers against a naive oracle that enumerates landmark subsets and
//! compares signatures directly, with distances from single-source BFS.

use edimlab::distance::bfs_distances;
use edimlab::{edge_metric_dimension, generate_er, metric_dimension, Graph, Method};
use proptest::prelude::*;

fn naive_dimension(g: &Graph, edges: bool) -> usize {
    let n = g.n();
    let d: Vec<Vec<u32>> = (0..n).map(|s| bfs_distances(g, s)).collect();
    // rows[o][v]: distance from object o to vertex v.
    let rows: Vec<Vec<u32>> = if edges {
        g.edges().iter().map(|&(x, y)| (0..n).map(|v| d[x][v].min(d[y][v])).collect()).collect()
    } else {
        d.clone()
    };
    for k in 0..=n {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let sigs: Vec<Vec<u32>> = rows
                .iter()
                .map(|row| (0..n).filter(|v| mask >> v & 1 == 1).map(|v| row[v]).collect())
                .collect();
            let mut sorted = sigs.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() == sigs.len() {
                return k;
            }
        }
    }
    unreachable!("the full vertex set always resolves")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn exact_solvers_match_naive_oracle(n in 1usize..8, p in 0.0f64..1.0, seed: u64) {
        let g = generate_er(n, p, seed).unwrap();
        let dim = naive_dimension(&g, false);
        let edim = naive_dimension(&g, true);
        for method in [Method::Brute, Method::Bnb] {
            prop_assert_eq!(metric_dimension(&g, method).unwrap().size, dim);
            prop_assert_eq!(edge_metric_dimension(&g, method).unwrap().size, edim);
        }
        prop_assert!(metric_dimension(&g, Method::Greedy).unwrap().size >= dim);
        prop_assert!(edge_metric_dimension(&g, Method::Greedy).unwrap().size >= edim);
    }
}

#[test]
fn named_families_against_oracle() {
    for n in 2..8 {
        for g in [Graph::path(n), Graph::complete(n), Graph::star(n - 1)] {
            assert_eq!(edge_metric_dimension(&g, Method::Bnb).unwrap().size, naive_dimension(&g, true), "{g:?}");
            assert_eq!(metric_dimension(&g, Method::Bnb).unwrap().size, naive_dimension(&g, false), "{g:?}");
        }
    }
    for n in 3..8 {
        let g = Graph::cycle(n);
        assert_eq!(edge_metric_dimension(&g, Method::Bnb).unwrap().size, naive_dimension(&g, true));
    }
}
