use std::collections::VecDeque;

use super::{Graph, VertexSet};

/// A simple cycle, rotated so that its lexicographically least vertex id comes first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pub edges: Vec<usize>,
}

impl Cycle {
    /// Vertices in cycle order, starting at the base.
    pub fn vertices(&self, g: &Graph) -> Vec<usize> {
        self.edges.iter().map(|&e| g.source(e)).collect()
    }

    pub fn vertex_set(&self, g: &Graph) -> VertexSet {
        self.vertices(g).into_iter().collect()
    }

    pub fn edge_ids(&self, g: &Graph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge(e).id.clone()).collect()
    }

    /// Rotates a closed simple path into canonical position.
    pub fn canonical(g: &Graph, edges: Vec<usize>) -> Cycle {
        let k = (0..edges.len())
            .min_by(|&a, &b| {
                let (sa, sb) = (g.vertex_id(g.source(edges[a])), g.vertex_id(g.source(edges[b])));
                sa.cmp(sb).then_with(|| g.edge(edges[a]).id.cmp(&g.edge(edges[b]).id))
            })
            .unwrap_or(0);
        let mut rotated = edges[k..].to_vec();
        rotated.extend_from_slice(&edges[..k]);
        Cycle { edges: rotated }
    }
}

fn id_rank(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(|&a, &b| g.vertex_id(a).cmp(g.vertex_id(b)));
    let mut rank = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    rank
}

/// All simple cycles built from named edges, each once, in canonical rotation.
pub fn cycles(g: &Graph) -> Vec<Cycle> {
    let rank = id_rank(g);
    let mut out = Vec::new();
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();

    fn dfs(
        g: &Graph,
        rank: &[usize],
        start: usize,
        v: usize,
        on_path: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Cycle>,
    ) {
        for &e in g.out_edges(v) {
            let w = g.range(e);
            if w == start {
                path.push(e);
                out.push(Cycle::canonical(g, path.clone()));
                path.pop();
            } else if rank[w] > rank[start] && !on_path[w] {
                on_path[w] = true;
                path.push(e);
                dfs(g, rank, start, w, on_path, path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    for start in 0..n {
        on_path[start] = true;
        dfs(g, &rank, start, start, &mut on_path, &mut path, &mut out);
        on_path[start] = false;
    }
    out.sort_by(|a, b| {
        let key = |c: &Cycle| -> Vec<String> {
            c.vertices(g).iter().map(|&v| g.vertex_id(v).to_string()).collect()
        };
        a.edges
            .len()
            .cmp(&b.edges.len())
            .then_with(|| key(a).cmp(&key(b)))
            .then_with(|| a.edge_ids(g).cmp(&b.edge_ids(g)))
    });
    out
}

/// Some vertex of the cycle emits an edge other than the cycle's own edge there.
pub fn has_exit(g: &Graph, c: &Cycle) -> bool {
    c.edges.iter().any(|&e| {
        let v = g.source(e);
        g.has_omega_out(v) || g.out_edges(v).iter().any(|&f| f != e)
    })
}

/// How many simple closed paths are based at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedPathCount {
    Finite(u64),
    Infinite,
}

/// Vertices other than `v` lying on some path v -> ... -> v that does not pass through v in between.
fn return_region(g: &Graph, v: usize) -> VertexSet {
    let n = g.vertex_count();
    let mut fwd = VertexSet::new();
    let mut queue: VecDeque<usize> = g.successors(v).into_iter().filter(|&w| w != v).collect();
    fwd.extend(queue.iter().copied());
    while let Some(u) = queue.pop_front() {
        for w in g.successors(u) {
            if w != v && fwd.insert(w) {
                queue.push_back(w);
            }
        }
    }
    let preds = |x: usize| -> Vec<usize> { (0..n).filter(|&u| g.successors(u).contains(&x)).collect() };
    let mut back = VertexSet::new();
    let mut queue: VecDeque<usize> = preds(v).into_iter().filter(|&u| u != v).collect();
    back.extend(queue.iter().copied());
    while let Some(u) = queue.pop_front() {
        for p in preds(u) {
            if p != v && back.insert(p) {
                queue.push_back(p);
            }
        }
    }
    fwd.intersection(&back).copied().collect()
}

/// Counts closed paths e1...en at v with s(ei) != v for i > 1. Omega bundles count as infinitely many edges.
pub fn count_simple_closed_paths(g: &Graph, v: usize) -> ClosedPathCount {
    let region = return_region(g, v);
    let relevant = |s: usize, r: usize| {
        (s == v || region.contains(&s)) && (r == v || region.contains(&r))
    };
    if g.omega_pairs().iter().any(|&(s, r)| relevant(s, r)) {
        return ClosedPathCount::Infinite;
    }
    // Within the region, a cycle yields infinitely many returns.
    let mut indeg: std::collections::BTreeMap<usize, usize> = region.iter().map(|&u| (u, 0)).collect();
    for &u in &region {
        for &e in g.out_edges(u) {
            if region.contains(&g.range(e)) {
                *indeg.get_mut(&g.range(e)).unwrap() += 1;
            }
        }
    }
    let mut order = Vec::new();
    let mut ready: Vec<usize> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&u, _)| u).collect();
    while let Some(u) = ready.pop() {
        order.push(u);
        for &e in g.out_edges(u) {
            let w = g.range(e);
            if let Some(d) = indeg.get_mut(&w) {
                *d -= 1;
                if *d == 0 {
                    ready.push(w);
                }
            }
        }
    }
    if order.len() < region.len() {
        return ClosedPathCount::Infinite;
    }
    let mut ways: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
    for &u in order.iter().rev() {
        let mut total = 0u64;
        for &e in g.out_edges(u) {
            let w = g.range(e);
            total = total.saturating_add(if w == v { 1 } else { ways.get(&w).copied().unwrap_or(0) });
        }
        ways.insert(u, total);
    }
    let mut total = 0u64;
    for &e in g.out_edges(v) {
        let w = g.range(e);
        total = total.saturating_add(if w == v { 1 } else { ways.get(&w).copied().unwrap_or(0) });
    }
    ClosedPathCount::Finite(total)
}

/// Simple closed paths based at `v`, shortest first, stopping after `limit` paths.
pub fn simple_closed_paths_based_at(g: &Graph, v: usize, limit: usize) -> Vec<Vec<usize>> {
    let region = return_region(g, v);
    let mut out = Vec::new();
    let mut level: Vec<(usize, Vec<usize>)> = vec![(v, Vec::new())];
    while !level.is_empty() && out.len() < limit {
        let mut next = Vec::new();
        for (u, path) in level {
            for &e in g.out_edges(u) {
                let w = g.range(e);
                let mut p = path.clone();
                p.push(e);
                if w == v {
                    if out.len() < limit {
                        out.push(p);
                    }
                } else if region.contains(&w) {
                    next.push((w, p));
                }
            }
        }
        level = next;
    }
    out
}
