//! Finite directed multigraphs with optional infinite (omega) edge bundles.

mod analysis;
mod cycles;
pub mod families;
mod iso;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use analysis::{
    breaking_vertices, condition_k, condition_l, enumerate_hereditary_saturated,
    enumerate_hereditary_saturated_with_guard, has_cycle, hereditary_saturated_closure,
    is_cofinal, is_downward_directed, is_hereditary, is_saturated, reaches, reachability,
    vertex_classes, VertexClasses, DEFAULT_GUARD,
};
pub use cycles::{
    count_simple_closed_paths, cycles, has_exit, simple_closed_paths_based_at, ClosedPathCount,
    Cycle,
};
pub use iso::{canonical_form, is_isomorphic, CanonicalForm, ISO_GUARD};
pub use parse::parse_graph;
pub(crate) use parse::strip_comment;

/// A set of vertex indices.
pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("duplicate omega bundle {0} -> {1}")]
    DuplicateOmega(String, String),
    #[error("invalid identifier `{0}`")]
    BadIdentifier(String),
    #[error("{n} vertices exceeds the enumeration guard of {guard}")]
    GuardExceeded { n: usize, guard: usize },
    #[error("vertex set is not hereditary")]
    NotHereditary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub range: usize,
}

/// Number of edges between an ordered pair of vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(usize),
    Omega,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    vertex_index: BTreeMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: BTreeMap<String, usize>,
    omega: BTreeSet<(usize, usize)>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

/// Characters reserved by the graph, move-script and element syntaxes.
const RESERVED: &[char] = &['.', '*', '+', ',', '|', '{', '}', '[', ']', '=', ';', '(', ')'];

pub fn valid_identifier(id: &str) -> bool {
    !id.is_empty()
        && !id.starts_with('#')
        && !id.starts_with('-')
        && !id.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c))
}

impl Graph {
    pub fn new() -> Self {
        Graph {
            vertices: Vec::new(),
            vertex_index: BTreeMap::new(),
            edges: Vec::new(),
            edge_index: BTreeMap::new(),
            omega: BTreeSet::new(),
            out_edges: Vec::new(),
            in_edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<usize, GraphError> {
        if !valid_identifier(id) {
            return Err(GraphError::BadIdentifier(id.to_string()));
        }
        if self.vertex_index.contains_key(id) {
            return Err(GraphError::DuplicateVertex(id.to_string()));
        }
        let i = self.vertices.len();
        self.vertices.push(id.to_string());
        self.vertex_index.insert(id.to_string(), i);
        self.out_edges.push(Vec::new());
        self.in_edges.push(Vec::new());
        Ok(i)
    }

    pub fn add_edge(&mut self, id: &str, source: &str, range: &str) -> Result<usize, GraphError> {
        let s = self.vertex(source)?;
        let r = self.vertex(range)?;
        self.add_edge_idx(id, s, r)
    }

    pub fn add_edge_idx(&mut self, id: &str, source: usize, range: usize) -> Result<usize, GraphError> {
        if !valid_identifier(id) {
            return Err(GraphError::BadIdentifier(id.to_string()));
        }
        if self.edge_index.contains_key(id) {
            return Err(GraphError::DuplicateEdge(id.to_string()));
        }
        let i = self.edges.len();
        self.edges.push(Edge { id: id.to_string(), source, range });
        self.edge_index.insert(id.to_string(), i);
        self.out_edges[source].push(i);
        self.in_edges[range].push(i);
        Ok(i)
    }

    pub fn add_omega(&mut self, source: &str, range: &str) -> Result<(), GraphError> {
        let s = self.vertex(source)?;
        let r = self.vertex(range)?;
        self.add_omega_idx(s, r)
    }

    pub fn add_omega_idx(&mut self, source: usize, range: usize) -> Result<(), GraphError> {
        if !self.omega.insert((source, range)) {
            return Err(GraphError::DuplicateOmega(
                self.vertices[source].clone(),
                self.vertices[range].clone(),
            ));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, id: &str) -> Result<usize, GraphError> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize, GraphError> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertex_index.contains_key(id)
    }

    pub fn has_edge(&self, id: &str) -> bool {
        self.edge_index.contains_key(id)
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].source
    }

    pub fn range(&self, e: usize) -> usize {
        self.edges[e].range
    }

    /// Named edges leaving `v`, in declaration order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Named edges entering `v`, in declaration order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn omega_pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.omega
    }

    pub fn has_omega_out(&self, v: usize) -> bool {
        self.omega.range((v, 0)..(v + 1, 0)).next().is_some()
    }

    pub fn has_omega_in(&self, v: usize) -> bool {
        self.omega.iter().any(|&(_, r)| r == v)
    }

    pub fn is_row_finite(&self) -> bool {
        self.omega.is_empty()
    }

    /// Direct successors of `v`, counting omega bundles.
    pub fn successors(&self, v: usize) -> VertexSet {
        let mut out: VertexSet = self.out_edges[v].iter().map(|&e| self.edges[e].range).collect();
        out.extend(self.omega.range((v, 0)..(v + 1, 0)).map(|&(_, r)| r));
        out
    }

    pub fn multiplicity(&self, v: usize, w: usize) -> Multiplicity {
        if self.omega.contains(&(v, w)) {
            Multiplicity::Omega
        } else {
            Multiplicity::Finite(self.out_edges[v].iter().filter(|&&e| self.edges[e].range == w).count())
        }
    }

    /// Row-major multiplicity table, used for isomorphism and matrix work.
    pub fn multiplicity_table(&self) -> Vec<Vec<Multiplicity>> {
        let n = self.vertex_count();
        let mut t = vec![vec![Multiplicity::Finite(0); n]; n];
        for e in &self.edges {
            if let Multiplicity::Finite(k) = &mut t[e.source][e.range] {
                *k += 1;
            }
        }
        for &(s, r) in &self.omega {
            t[s][r] = Multiplicity::Omega;
        }
        t
    }

    pub fn vertex_set_ids(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    pub fn vertex_set(&self, ids: &[&str]) -> Result<VertexSet, GraphError> {
        ids.iter().map(|id| self.vertex(id)).collect()
    }

    /// A fresh vertex id derived from `base`, unused in this graph.
    pub fn fresh_vertex_id(&self, base: &str) -> String {
        let mut id = base.to_string();
        while self.has_vertex(&id) {
            id.push('\'');
        }
        id
    }

    pub fn fresh_edge_id(&self, base: &str) -> String {
        let mut id = base.to_string();
        while self.has_edge(&id) {
            id.push('\'');
        }
        id
    }

    /// Appends two vertices and six edges at `v`: v <-> v1, v1 <-> v2, and a loop at each new vertex.
    pub fn cuntz_splice(&self, v: &str) -> Result<Graph, GraphError> {
        let vi = self.vertex(v)?;
        let mut g = self.clone();
        let v1 = g.fresh_vertex_id(&format!("{v}^1"));
        let v1i = g.add_vertex(&v1)?;
        let v2 = g.fresh_vertex_id(&format!("{v}^2"));
        let v2i = g.add_vertex(&v2)?;
        let pairs = [(vi, v1i), (v1i, vi), (v1i, v1i), (v1i, v2i), (v2i, v1i), (v2i, v2i)];
        for (k, (s, r)) in pairs.into_iter().enumerate() {
            let id = g.fresh_edge_id(&format!("{v}^{}", (b'a' + k as u8) as char));
            g.add_edge_idx(&id, s, r)?;
        }
        Ok(g)
    }

    /// Subgraph on `keep`, preserving declaration order.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            g.add_vertex(&self.vertices[v]).expect("ids already valid");
        }
        for e in &self.edges {
            if keep.contains(&e.source) && keep.contains(&e.range) {
                g.add_edge(&e.id, &self.vertices[e.source], &self.vertices[e.range])
                    .expect("endpoints kept");
            }
        }
        for &(s, r) in &self.omega {
            if keep.contains(&s) && keep.contains(&r) {
                g.add_omega(&self.vertices[s], &self.vertices[r]).expect("endpoints kept");
            }
        }
        g
    }
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for e in &self.edges {
            writeln!(f, "edge {} {} {}", e.id, self.vertices[e.source], self.vertices[e.range])?;
        }
        for &(s, r) in &self.omega {
            writeln!(f, "omega {} {}", self.vertices[s], self.vertices[r])?;
        }
        Ok(())
    }
}
