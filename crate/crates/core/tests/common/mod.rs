#![allow(dead_code)]

use lpa_core::Graph;
use proptest::prelude::*;
use rand::Rng;

/// Graph with vertices v1..vn and m[i][j] parallel edges from v(i+1) to v(j+1).
pub fn from_matrix(m: &[Vec<usize>]) -> Graph {
    let mut g = Graph::new();
    for i in 0..m.len() {
        g.add_vertex(&format!("v{}", i + 1)).unwrap();
    }
    let mut k = 0;
    for (i, row) in m.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            for _ in 0..c {
                k += 1;
                g.add_edge_idx(&format!("a{k}"), i, j).unwrap();
            }
        }
    }
    g
}

pub fn with_omegas(mut g: Graph, pairs: &[(usize, usize)]) -> Graph {
    for &(s, r) in pairs {
        let _ = g.add_omega_idx(s, r);
    }
    g
}

/// Adjacency matrices with 1..=max_n vertices and entries in 0..=max_mult.
pub fn matrix(max_n: usize, max_mult: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1..=max_n).prop_flat_map(move |n| proptest::collection::vec(proptest::collection::vec(0..=max_mult, n), n))
}

pub fn graph(max_n: usize, max_mult: usize) -> impl Strategy<Value = Graph> {
    matrix(max_n, max_mult).prop_map(|m| from_matrix(&m))
}

/// Acyclic graphs: edges only from lower to higher index.
pub fn acyclic_graph(max_n: usize, max_mult: usize) -> impl Strategy<Value = Graph> {
    matrix(max_n, max_mult).prop_map(|mut m| {
        for (i, row) in m.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                if j <= i {
                    *c = 0;
                }
            }
        }
        from_matrix(&m)
    })
}

/// Graphs possibly carrying ω bundles.
pub fn omega_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (matrix(max_n, 2), proptest::collection::vec((0..max_n, 0..max_n), 0..3)).prop_map(|(m, om)| {
        let n = m.len();
        let pairs: Vec<(usize, usize)> = om.into_iter().map(|(s, r)| (s % n, r % n)).collect();
        with_omegas(from_matrix(&m), &pairs)
    })
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, max_mult: usize, density: f64) -> Vec<Vec<usize>> {
    (0..n)
        .map(|_| (0..n).map(|_| if rng.gen_bool(density) { rng.gen_range(1..=max_mult) } else { 0 }).collect())
        .collect()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, max_mult: usize, density: f64) -> Graph {
    from_matrix(&random_matrix(rng, n, max_mult, density))
}

/// Every adjacency matrix on n vertices with entries in 0..=max_mult.
pub fn all_matrices(n: usize, max_mult: usize) -> impl Iterator<Item = Vec<Vec<usize>>> {
    let base = max_mult + 1;
    let total = base.pow((n * n) as u32);
    (0..total).map(move |mut code| {
        let mut m = vec![vec![0; n]; n];
        for cell in 0..n * n {
            m[cell / n][cell % n] = code % base;
            code /= base;
        }
        m
    })
}

fn random_blocks<R: Rng>(rng: &mut R, items: &[String]) -> Vec<Vec<String>> {
    let k = rng.gen_range(1..=items.len());
    let mut blocks = vec![Vec::new(); k];
    for (i, x) in items.iter().enumerate() {
        // Seed each block with one item so none is empty.
        let b = if i < k { i } else { rng.gen_range(0..k) };
        blocks[b].push(x.clone());
    }
    blocks
}

/// A random move applicable to g, if any kind tried applies.
pub fn random_move<R: Rng>(rng: &mut R, g: &Graph) -> Option<lpa_core::MoveSpec> {
    use lpa_core::MoveSpec;
    let n = g.vertex_count();
    for _ in 0..20 {
        let v = rng.gen_range(0..n);
        let name = g.vertex_id(v).to_string();
        let ids = |es: &[usize]| es.iter().map(|&e| g.edge(e).id.clone()).collect::<Vec<_>>();
        match rng.gen_range(0..5) {
            0 if !g.out_edges(v).is_empty() => {
                return Some(MoveSpec::OutSplit(vec![(name, random_blocks(rng, &ids(g.out_edges(v))))]))
            }
            1 if !g.in_edges(v).is_empty() => {
                return Some(MoveSpec::InSplit(vec![(name, random_blocks(rng, &ids(g.in_edges(v))))]))
            }
            2 => return Some(MoveSpec::Expand(name)),
            3 => {
                if let [f] = g.out_edges(v) {
                    let r = g.range(*f);
                    if r != v && g.in_edges(r) == [*f] {
                        return Some(MoveSpec::Contract { vertex: name, edge: g.edge(*f).id.clone() });
                    }
                }
            }
            4 if n >= 2 && g.in_edges(v).is_empty() => return Some(MoveSpec::SourceEliminate(name)),
            _ => {}
        }
    }
    None
}

/// Groups of split copies `v#1, v#2, ...` by original name, as vertex indices.
pub fn copy_groups(g: &Graph) -> Vec<Vec<usize>> {
    let mut groups: std::collections::BTreeMap<String, Vec<usize>> = Default::default();
    for (i, id) in g.vertex_ids().iter().enumerate() {
        let base = id.rsplit_once('#').map_or(id.as_str(), |(b, _)| b);
        groups.entry(base.to_string()).or_default().push(i);
    }
    groups.into_values().collect()
}
