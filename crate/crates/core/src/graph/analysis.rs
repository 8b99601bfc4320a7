use std::collections::VecDeque;

use super::cycles::{count_simple_closed_paths, ClosedPathCount};
use super::{Graph, GraphError, VertexSet};

/// Largest vertex count for which subset enumeration is attempted by default.
pub const DEFAULT_GUARD: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexClasses {
    pub sinks: VertexSet,
    pub sources: VertexSet,
    pub regular: VertexSet,
    pub infinite_emitters: VertexSet,
}

impl VertexClasses {
    /// Sinks together with infinite emitters.
    pub fn singular(&self) -> VertexSet {
        self.sinks.union(&self.infinite_emitters).copied().collect()
    }
}

pub fn vertex_classes(g: &Graph) -> VertexClasses {
    let mut c = VertexClasses::default();
    for v in 0..g.vertex_count() {
        if g.has_omega_out(v) {
            c.infinite_emitters.insert(v);
        } else if g.out_edges(v).is_empty() {
            c.sinks.insert(v);
        } else {
            c.regular.insert(v);
        }
        if g.in_edges(v).is_empty() && !g.has_omega_in(v) {
            c.sources.insert(v);
        }
    }
    c
}

fn is_regular(g: &Graph, v: usize) -> bool {
    !g.has_omega_out(v) && !g.out_edges(v).is_empty()
}

fn descendants(g: &Graph, start: impl IntoIterator<Item = usize>) -> VertexSet {
    let mut seen = VertexSet::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for v in start {
        if seen.insert(v) {
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for w in g.successors(v) {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// `reach[v][w]` is true when a path (possibly of length zero) runs from v to w.
pub fn reachability(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    (0..n)
        .map(|v| {
            let d = descendants(g, [v]);
            (0..n).map(|w| d.contains(&w)).collect()
        })
        .collect()
}

pub fn reaches(g: &Graph, v: &str, w: &str) -> Result<bool, GraphError> {
    let (v, w) = (g.vertex(v)?, g.vertex(w)?);
    Ok(descendants(g, [v]).contains(&w))
}

pub fn is_hereditary(g: &Graph, set: &VertexSet) -> bool {
    set.iter().all(|&v| g.successors(v).is_subset(set))
}

pub fn is_saturated(g: &Graph, set: &VertexSet) -> bool {
    (0..g.vertex_count()).all(|v| {
        set.contains(&v)
            || !is_regular(g, v)
            || g.out_edges(v).iter().any(|&e| !set.contains(&g.range(e)))
    })
}

/// Least hereditary saturated superset of `set`.
pub fn hereditary_saturated_closure(g: &Graph, set: &VertexSet) -> VertexSet {
    let mut x = descendants(g, set.iter().copied());
    loop {
        let before = x.len();
        for v in 0..g.vertex_count() {
            if !x.contains(&v)
                && is_regular(g, v)
                && g.out_edges(v).iter().all(|&e| x.contains(&g.range(e)))
            {
                x.insert(v);
            }
        }
        if x.len() == before {
            return x;
        }
    }
}

pub fn enumerate_hereditary_saturated(g: &Graph) -> Result<Vec<VertexSet>, GraphError> {
    enumerate_hereditary_saturated_with_guard(g, DEFAULT_GUARD)
}

/// All hereditary saturated subsets, ordered by size and then lexicographically by vertex index.
pub fn enumerate_hereditary_saturated_with_guard(
    g: &Graph,
    guard: usize,
) -> Result<Vec<VertexSet>, GraphError> {
    let n = g.vertex_count();
    if n > guard || n > 40 {
        return Err(GraphError::GuardExceeded { n, guard: guard.min(40) });
    }
    let succ: Vec<u64> = (0..n)
        .map(|v| g.successors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let regular_out: Vec<Option<u64>> = (0..n)
        .map(|v| {
            is_regular(g, v).then(|| g.out_edges(v).iter().fold(0u64, |m, &e| m | 1 << g.range(e)))
        })
        .collect();
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let hereditary = (0..n).all(|v| mask >> v & 1 == 0 || succ[v] & !mask == 0);
        if !hereditary {
            continue;
        }
        let saturated = (0..n).all(|v| {
            mask >> v & 1 == 1 || regular_out[v].map_or(true, |out| out & !mask != 0)
        });
        if saturated {
            found.push((0..n).filter(|&v| mask >> v & 1 == 1).collect::<VertexSet>());
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    Ok(found)
}

/// True when some cycle exists, counting omega bundles as edges.
pub fn has_cycle(g: &Graph) -> bool {
    let n = g.vertex_count();
    (0..n).any(|v| g.successors(v).iter().any(|&w| descendants(g, [w]).contains(&v)))
}

/// Every cycle has an exit.
pub fn condition_l(g: &Graph) -> bool {
    // An exitless cycle runs entirely through vertices emitting exactly one edge.
    let unique_out = |v: usize| -> Option<usize> {
        match (g.out_edges(v), g.has_omega_out(v)) {
            ([e], false) => Some(g.range(*e)),
            _ => None,
        }
    };
    for start in 0..g.vertex_count() {
        let mut v = start;
        for _ in 0..g.vertex_count() {
            match unique_out(v) {
                Some(w) if w == start => return false,
                Some(w) => v = w,
                None => break,
            }
        }
    }
    true
}

/// No vertex is the base of exactly one simple closed path.
pub fn condition_k(g: &Graph) -> bool {
    (0..g.vertex_count()).all(|v| count_simple_closed_paths(g, v) != ClosedPathCount::Finite(1))
}

pub fn is_downward_directed(g: &Graph) -> bool {
    let reach = reachability(g);
    let n = g.vertex_count();
    (0..n).all(|u| (u + 1..n).all(|w| (0..n).any(|x| reach[u][x] && reach[w][x])))
}

/// Only the trivial hereditary saturated subsets exist.
pub fn is_cofinal(g: &Graph) -> bool {
    let n = g.vertex_count();
    (0..n).all(|v| hereditary_saturated_closure(g, &VertexSet::from([v])).len() == n)
}

/// Infinite emitters outside `h` sending finitely many, but some, edges out of `h`.
pub fn breaking_vertices(g: &Graph, h: &VertexSet) -> Result<VertexSet, GraphError> {
    if !is_hereditary(g, h) {
        return Err(GraphError::NotHereditary);
    }
    let mut out = VertexSet::new();
    for v in 0..g.vertex_count() {
        if h.contains(&v) || !g.has_omega_out(v) {
            continue;
        }
        let omega_escapes = g.omega_pairs().iter().any(|&(s, r)| s == v && !h.contains(&r));
        let finite = g.out_edges(v).iter().filter(|&&e| !h.contains(&g.range(e))).count();
        if !omega_escapes && finite > 0 {
            out.insert(v);
        }
    }
    Ok(out)
}
