//! Seeded input generators shared by the benchmarks.

use lpa_core::{Graph, IntMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// n×n integer matrix with entries in [-9, 9].
pub fn int_matrix(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect();
    IntMatrix::from_rows(&rows)
}

/// Graph on n vertices; each ordered pair gets 1..=max_mult edges with probability `density`.
pub fn graph(rng: &mut ChaCha8Rng, n: usize, max_mult: usize, density: f64) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}")).expect("fresh vertex");
    }
    let mut k = 0;
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                for _ in 0..rng.gen_range(1..=max_mult) {
                    g.add_edge_idx(&format!("e{k}"), i, j).expect("fresh edge");
                    k += 1;
                }
            }
        }
    }
    g
}

/// Sparse graph: a directed cycle through all vertices plus a few chords, so it has few cycles.
pub fn ring_with_chords(rng: &mut ChaCha8Rng, n: usize, chords: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}")).expect("fresh vertex");
    }
    for i in 0..n {
        g.add_edge_idx(&format!("r{i}"), i, (i + 1) % n).expect("fresh edge");
    }
    for c in 0..chords {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        g.add_edge_idx(&format!("c{c}"), a, b).expect("fresh edge");
    }
    g
}

/// Upper-triangular random graph on n vertices (acyclic).
pub fn acyclic(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}")).expect("fresh vertex");
    }
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                g.add_edge_idx(&format!("e{k}"), i, j).expect("fresh edge");
                k += 1;
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seeded() {
        assert_eq!(graph(&mut rng(3), 5, 2, 0.4), graph(&mut rng(3), 5, 2, 0.4));
        assert!(!lpa_core::graph::has_cycle(&acyclic(&mut rng(1), 6, 0.5)));
        assert_eq!(ring_with_chords(&mut rng(2), 4, 2).edge_count(), 6);
        assert_eq!(int_matrix(&mut rng(0), 3).rows(), 3);
    }
}
