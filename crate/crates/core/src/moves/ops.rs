use std::collections::BTreeMap;

use crate::graph::Graph;

use super::MoveError;

/// Blocks of edge indices per vertex. Vertices without an entry keep all their edges in one block.
pub type EdgePartition = BTreeMap<usize, Vec<Vec<usize>>>;

fn require_row_finite(g: &Graph) -> Result<(), MoveError> {
    if g.is_row_finite() {
        Ok(())
    } else {
        Err(MoveError::InfiniteEmitters)
    }
}

/// Block index of every edge, with `incident(v)` the edges being partitioned at v.
fn block_map<'a>(
    g: &'a Graph,
    p: &EdgePartition,
    incident: impl Fn(usize) -> &'a [usize],
) -> Result<(Vec<usize>, Vec<usize>), MoveError> {
    let n = g.vertex_count();
    let mut block = vec![usize::MAX; g.edge_count()];
    let mut m = vec![0usize; n];
    for (&v, blocks) in p {
        if v >= n {
            return Err(MoveError::InvalidPartition(format!("vertex index {v} out of range")));
        }
        let name = g.vertex_id(v);
        let mut seen = 0;
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(MoveError::InvalidPartition(format!("empty block at `{name}`")));
            }
            for &e in b {
                if !incident(v).contains(&e) {
                    return Err(MoveError::InvalidPartition(format!(
                        "edge `{}` is not incident to `{name}` on the split side",
                        g.edge(e).id
                    )));
                }
                if block[e] != usize::MAX {
                    return Err(MoveError::InvalidPartition(format!("edge `{}` listed twice", g.edge(e).id)));
                }
                block[e] = i;
                seen += 1;
            }
        }
        if seen != incident(v).len() {
            return Err(MoveError::InvalidPartition(format!("blocks at `{name}` do not cover its edges")));
        }
        m[v] = blocks.len();
    }
    for v in 0..n {
        if !p.contains_key(&v) && !incident(v).is_empty() {
            m[v] = 1;
            for &e in incident(v) {
                block[e] = 0;
            }
        }
    }
    Ok((block, m))
}

/// Adds the copies of every vertex: the vertex itself when m(v) ≤ 1, else v#1, ..., v#m.
fn split_vertices(g: &Graph, m: &[usize], out: &mut Graph) -> Result<Vec<Vec<usize>>, MoveError> {
    let mut copies = Vec::with_capacity(g.vertex_count());
    for (v, &k) in m.iter().enumerate() {
        let name = g.vertex_id(v);
        copies.push(if k <= 1 {
            vec![out.add_vertex(name)?]
        } else {
            (1..=k).map(|i| out.add_vertex(&format!("{name}#{i}"))).collect::<Result<_, _>>()?
        });
    }
    Ok(copies)
}

/// Out-split graph E_s(P): v^i for each block of s⁻¹(v), edges e^j for j ≤ m(r(e)).
pub fn out_split(g: &Graph, p: &EdgePartition) -> Result<Graph, MoveError> {
    require_row_finite(g)?;
    let (block, m) = block_map(g, p, |v| g.out_edges(v))?;
    let mut out = Graph::new();
    let copies = split_vertices(g, &m, &mut out)?;
    for (e, edge) in g.edges().iter().enumerate() {
        let s = copies[edge.source][block[e]];
        let targets = &copies[edge.range];
        if targets.len() == 1 {
            out.add_edge_idx(&edge.id, s, targets[0])?;
        } else {
            for (j, &t) in targets.iter().enumerate() {
                out.add_edge_idx(&format!("{}#{}", edge.id, j + 1), s, t)?;
            }
        }
    }
    Ok(out)
}

/// In-split graph E_r(P): v_i for each block of r⁻¹(v), edges e_j for j ≤ m(s(e)).
pub fn in_split(g: &Graph, p: &EdgePartition) -> Result<Graph, MoveError> {
    require_row_finite(g)?;
    let (block, m) = block_map(g, p, |v| g.in_edges(v))?;
    let mut out = Graph::new();
    let copies = split_vertices(g, &m, &mut out)?;
    for (e, edge) in g.edges().iter().enumerate() {
        let r = copies[edge.range][block[e]];
        let sources = &copies[edge.source];
        if sources.len() == 1 {
            out.add_edge_idx(&edge.id, sources[0], r)?;
        } else {
            for (j, &s) in sources.iter().enumerate() {
                out.add_edge_idx(&format!("{}#{}", edge.id, j + 1), s, r)?;
            }
        }
    }
    Ok(out)
}

/// `name` without a trailing `#digits`.
fn strip_copy_suffix(name: &str) -> &str {
    match name.rsplit_once('#') {
        Some((base, k)) if !base.is_empty() && !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()) => base,
        _ => name,
    }
}

/// Vertex classes from a grouping; ungrouped vertices are singletons. Classes are ordered by
/// their first member in declaration order.
fn classes(g: &Graph, groups: &[Vec<usize>]) -> Result<(Vec<Vec<usize>>, Vec<usize>), MoveError> {
    let n = g.vertex_count();
    let mut class_of = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for grp in groups {
        if grp.is_empty() {
            return Err(MoveError::InvalidPartition("empty vertex group".into()));
        }
        for &v in grp {
            if class_of[v] != usize::MAX {
                return Err(MoveError::InvalidPartition(format!("vertex `{}` grouped twice", g.vertex_id(v))));
            }
            class_of[v] = raw.len();
        }
        raw.push(grp.clone());
    }
    for v in 0..n {
        if class_of[v] == usize::MAX {
            class_of[v] = raw.len();
            raw.push(vec![v]);
        }
    }
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&c| raw[c].iter().min().copied());
    let mut renumber = vec![0; raw.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let classes = order.iter().map(|&c| raw[c].clone()).collect();
    Ok((classes, class_of.into_iter().map(|c| renumber[c]).collect()))
}

fn class_names(g: &Graph, classes: &[Vec<usize>]) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for c in classes {
        let first = g.vertex_id(c[0]);
        let base = strip_copy_suffix(first);
        let name = if c.len() > 1
            && c.iter().all(|&v| strip_copy_suffix(g.vertex_id(v)) == base)
            && !g.has_vertex(base)
            && !names.iter().any(|n| n == base)
        {
            base.to_string()
        } else {
            first.to_string()
        };
        names.push(name);
    }
    names
}

enum Side {
    Out,
    In,
}

/// Shared check and construction for both amalgamations. For `Out`, members of a class must
/// receive equally many edges from every vertex; for `In`, emit equally many to every vertex.
fn amalgamate(g: &Graph, groups: &[Vec<usize>], side: Side) -> Result<Graph, MoveError> {
    require_row_finite(g)?;
    let (classes, class_of) = classes(g, groups)?;
    let n = g.vertex_count();
    let mult = |s: usize, r: usize| g.out_edges(s).iter().filter(|&&e| g.range(e) == r).count();
    for c in classes.iter().filter(|c| c.len() > 1) {
        for &member in c {
            let has = match side {
                Side::Out => !g.out_edges(member).is_empty(),
                Side::In => !g.in_edges(member).is_empty(),
            };
            if !has {
                return Err(MoveError::NotAnAmalgamation(format!(
                    "`{}` would give an empty block",
                    g.vertex_id(member)
                )));
            }
        }
        for x in 0..n {
            let counts: Vec<usize> = c
                .iter()
                .map(|&y| match side {
                    Side::Out => mult(x, y),
                    Side::In => mult(y, x),
                })
                .collect();
            if counts.iter().any(|&k| k != counts[0]) {
                return Err(MoveError::NotAnAmalgamation(format!(
                    "`{}` and `{}` are not copies of one vertex",
                    g.vertex_id(c[0]),
                    g.vertex_id(c[counts.iter().position(|&k| k != counts[0]).unwrap()])
                )));
            }
        }
    }
    let mut out = Graph::new();
    for name in class_names(g, &classes) {
        out.add_vertex(&name)?;
    }
    for edge in g.edges() {
        let (s, r) = (edge.source, edge.range);
        // Keep one copy per class: the copy touching the class representative.
        let (class, end) = match side {
            Side::Out => (&classes[class_of[r]], r),
            Side::In => (&classes[class_of[s]], s),
        };
        if class[0] == end {
            let id = if class.len() > 1 { strip_copy_suffix(&edge.id) } else { &edge.id };
            let id = if out.has_edge(id) { out.fresh_edge_id(&edge.id) } else { id.to_string() };
            out.add_edge_idx(&id, class_of[s], class_of[r])?;
        }
    }
    Ok(out)
}

/// Inverse of an out-split: each group lists the vertices v^1, ..., v^m to merge.
pub fn out_amalgamate(g: &Graph, groups: &[Vec<usize>]) -> Result<Graph, MoveError> {
    amalgamate(g, groups, Side::Out)
}

pub fn in_amalgamate(g: &Graph, groups: &[Vec<usize>]) -> Result<Graph, MoveError> {
    amalgamate(g, groups, Side::In)
}

/// Expansion graph E_v: new vertex v* takes over the out-edges of v, and f: v → v*.
pub fn expand(g: &Graph, v: usize) -> Result<Graph, MoveError> {
    require_row_finite(g)?;
    let name = g.vertex_id(v);
    let star = g.fresh_vertex_id(&format!("{name}^"));
    let f = g.fresh_edge_id(&format!("{name}^f"));
    let mut out = Graph::new();
    for id in g.vertex_ids() {
        out.add_vertex(id)?;
    }
    let vs = out.add_vertex(&star)?;
    for edge in g.edges() {
        let s = if edge.source == v { vs } else { edge.source };
        out.add_edge_idx(&edge.id, s, edge.range)?;
    }
    out.add_edge_idx(&f, v, vs)?;
    Ok(out)
}

/// Inverse of `expand`: f must be the only edge out of v and the only edge into r(f) ≠ v.
pub fn contract(g: &Graph, v: usize, f: usize) -> Result<Graph, MoveError> {
    require_row_finite(g)?;
    let star = g.range(f);
    let bad = |msg: &str| Err(MoveError::ContractPattern(format!("`{}` at `{}`: {msg}", g.edge(f).id, g.vertex_id(v))));
    if g.source(f) != v {
        return bad("edge does not start at the vertex");
    }
    if g.out_edges(v) != [f] {
        return bad("vertex must emit exactly this edge");
    }
    if star == v {
        return bad("edge is a loop");
    }
    if g.in_edges(star) != [f] {
        return bad("range must receive only this edge");
    }
    let mut out = Graph::new();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (w, id) in g.vertex_ids().iter().enumerate() {
        if w != star {
            index[w] = out.add_vertex(id)?;
        }
    }
    index[star] = index[v];
    for (e, edge) in g.edges().iter().enumerate() {
        if e != f {
            out.add_edge_idx(&edge.id, index[edge.source], index[edge.range])?;
        }
    }
    Ok(out)
}

/// Source elimination E_∖v: removes a source and its out-edges.
pub fn source_eliminate(g: &Graph, v: usize) -> Result<Graph, MoveError> {
    if !g.in_edges(v).is_empty() || g.has_omega_in(v) {
        return Err(MoveError::NotASource(g.vertex_id(v).to_string()));
    }
    if g.vertex_count() < 2 {
        return Err(MoveError::LastVertex);
    }
    let keep = (0..g.vertex_count()).filter(|&w| w != v).collect();
    Ok(g.induced(&keep))
}
