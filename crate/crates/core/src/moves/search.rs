use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{compare_invariants, MoveError, MoveSpec};
use crate::graph::{canonical_form, is_isomorphic, vertex_classes, Graph, ISO_GUARD};

/// Largest accepted search depth.
pub const SEARCH_DEPTH_CAP: usize = 6;
/// Splits are only tried at vertices of at most this degree.
const MAX_SPLIT_DEGREE: usize = 5;
const MAX_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SearchOutcome {
    SequenceFound(Vec<MoveSpec>),
    /// Not a negative claim: a longer sequence may exist.
    NotFoundWithinDepth { explored: usize, reason: String },
}

/// Set partitions of 0..n with at least two blocks, in restricted-growth order.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(rgs.clone());
            return;
        }
        for b in 0..=max + 1 {
            rgs.push(b);
            rec(i + 1, n, rgs, max.max(b), out);
            rgs.pop();
        }
    }
    if n < 2 {
        return Vec::new();
    }
    let mut strings = Vec::new();
    let mut rgs = vec![0];
    rec(1, n, &mut rgs, 0, &mut strings);
    strings
        .into_iter()
        .filter(|s| s.iter().any(|&b| b > 0))
        .map(|s| {
            let k = s.iter().max().unwrap() + 1;
            (0..k).map(|b| (0..n).filter(|&i| s[i] == b).collect()).collect()
        })
        .collect()
}

/// Forward moves applicable to `g`, ordered by their script text.
fn candidate_moves(g: &Graph) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    let n = g.vertex_count();
    let names = |edges: &[usize]| -> Vec<String> { edges.iter().map(|&e| g.edge(e).id.clone()).collect() };
    for v in 0..n {
        let id = g.vertex_id(v).to_string();
        if n < ISO_GUARD {
            out.push(MoveSpec::Expand(id.clone()));
            for (edges, outgoing) in [(g.out_edges(v), true), (g.in_edges(v), false)] {
                if edges.len() > MAX_SPLIT_DEGREE {
                    continue;
                }
                for p in set_partitions(edges.len()).into_iter().filter(|p| n + p.len() - 1 <= ISO_GUARD) {
                    let blocks: Vec<Vec<String>> = p.iter().map(|b| names(&b.iter().map(|&i| edges[i]).collect::<Vec<_>>())).collect();
                    let parts = vec![(id.clone(), blocks)];
                    out.push(if outgoing { MoveSpec::OutSplit(parts) } else { MoveSpec::InSplit(parts) });
                }
            }
        }
        if let [f] = g.out_edges(v) {
            let w = g.range(*f);
            if w != v && g.in_edges(w) == [*f] {
                out.push(MoveSpec::Contract { vertex: id.clone(), edge: g.edge(*f).id.clone() });
            }
        }
    }
    if n >= 2 {
        for v in vertex_classes(g).sources {
            out.push(MoveSpec::SourceEliminate(g.vertex_id(v).to_string()));
        }
    }
    out.sort_by_cached_key(|m| m.to_string());
    out
}

/// Breadth-first search over forward moves (splits, expansions, contractions, source
/// eliminations) from `e` toward a graph isomorphic to `f`. States are deduplicated by
/// canonical form and capped at the isomorphism guard. Children are visited in script order, so
/// the first hit is the lexicographically least shortest sequence among those explored.
pub fn move_search(e: &Graph, f: &Graph, depth: usize) -> Result<SearchOutcome, MoveError> {
    if depth > SEARCH_DEPTH_CAP {
        return Err(MoveError::DepthCap { depth, cap: SEARCH_DEPTH_CAP });
    }
    if !e.is_row_finite() || !f.is_row_finite() {
        return Err(MoveError::InfiniteEmitters);
    }
    let check = compare_invariants(e, f)?;
    if !check.preserved() {
        let reason = if check.groups_equal {
            format!("det(I - A) differs: {} vs {}", check.det_before, check.det_after)
        } else {
            format!("coker(I - A) differs: {} vs {}", check.k0_before, check.k0_after)
        };
        return Ok(SearchOutcome::NotFoundWithinDepth { explored: 0, reason });
    }
    let target = canonical_form(f)?;
    let start = canonical_form(e)?;
    if start == target {
        return Ok(SearchOutcome::SequenceFound(Vec::new()));
    }
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([(e.clone(), Vec::<MoveSpec>::new())]);
    let mut explored = 0;
    while let Some((g, path)) = queue.pop_front() {
        if path.len() >= depth {
            continue;
        }
        explored += 1;
        for m in candidate_moves(&g) {
            let Ok(h) = m.apply(&g) else { continue };
            if h.vertex_count() > ISO_GUARD || h.edge_count() > MAX_EDGES {
                continue;
            }
            let key = canonical_form(&h)?;
            if !seen.insert(key.clone()) {
                continue;
            }
            let mut next = path.clone();
            next.push(m);
            if key == target {
                debug_assert!(is_isomorphic(&h, f).unwrap_or(false));
                return Ok(SearchOutcome::SequenceFound(next));
            }
            queue.push_back((h, next));
        }
    }
    Ok(SearchOutcome::NotFoundWithinDepth { explored, reason: format!("no sequence of length ≤ {depth} among explored states") })
}
