//! Exact arithmetic in L_K(E) for row-finite E.
//!
//! Elements are combinations of monomials αβ* with r(α) = r(β). The normal form orients (CK2) at
//! each regular vertex v with designated edge γ_v (least edge id in s⁻¹(v)):
//! αγ_vγ_v*β* ↦ αβ* − Σ_{e ≠ γ_v} αee*β*. Normal monomials form a basis.

mod matrix;
mod parse;
mod rewrite;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::{mat_multiply, verify_dagger, DaggerReport, LpaMatrix};
pub use parse::{load_fixture, parse_element, parse_matrix, Bindings, DaggerFixture};
pub use rewrite::{normal_form, normal_form_with, Letter, Word};

use crate::field::{Field, FieldError, Scalar};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("symbolic arithmetic needs a graph without infinite emitters")]
    InfiniteEmitters,
    #[error("operands live over different graphs or fields")]
    Mismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Graph, coefficient field and designated edges shared by the elements of one algebra.
#[derive(Debug, PartialEq, Eq)]
pub struct LpaContext {
    graph: Graph,
    field: Field,
    /// γ_v for each regular vertex, `None` at sinks.
    designated: Vec<Option<usize>>,
}

impl LpaContext {
    pub fn new(graph: Graph, field: Field) -> Result<Arc<LpaContext>, SymbolicError> {
        if !graph.is_row_finite() {
            return Err(SymbolicError::InfiniteEmitters);
        }
        let designated = (0..graph.vertex_count())
            .map(|v| graph.out_edges(v).iter().copied().min_by(|&a, &b| graph.edge(a).id.cmp(&graph.edge(b).id)))
            .collect();
        Ok(Arc::new(LpaContext { graph, field, designated }))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn designated_edge(&self, v: usize) -> Option<usize> {
        self.designated[v]
    }

    fn start(&self, path: &[usize], end: usize) -> usize {
        path.first().map_or(end, |&e| self.graph.source(e))
    }
}

/// αβ*, ordered by total length, then α, then β, then the common range vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    total_len: usize,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    /// r(α) = r(β).
    pub vertex: usize,
}

impl Monomial {
    pub fn new(alpha: Vec<usize>, beta: Vec<usize>, vertex: usize) -> Self {
        Monomial { total_len: alpha.len() + beta.len(), alpha, beta, vertex }
    }

    pub fn vertex(v: usize) -> Self {
        Monomial::new(Vec::new(), Vec::new(), v)
    }

    pub fn star(&self) -> Self {
        Monomial::new(self.beta.clone(), self.alpha.clone(), self.vertex)
    }

    fn is_normal(&self, ctx: &LpaContext) -> bool {
        match (self.alpha.last(), self.beta.last()) {
            (Some(a), Some(b)) if a == b => ctx.designated[ctx.graph.source(*a)] != Some(*a),
            _ => true,
        }
    }

    /// (α1β1*)(α2β2*) by (CK1), before normalization.
    fn product(&self, other: &Monomial, ctx: &LpaContext) -> Option<Monomial> {
        if ctx.start(&self.beta, self.vertex) != ctx.start(&other.alpha, other.vertex) {
            return None;
        }
        let (b1, a2) = (&self.beta, &other.alpha);
        if let Some(rest) = a2.strip_prefix(b1.as_slice()) {
            let mut alpha = self.alpha.clone();
            alpha.extend_from_slice(rest);
            Some(Monomial::new(alpha, other.beta.clone(), other.vertex))
        } else if let Some(rest) = b1.strip_prefix(a2.as_slice()) {
            let mut beta = other.beta.clone();
            beta.extend_from_slice(rest);
            Some(Monomial::new(self.alpha.clone(), beta, self.vertex))
        } else {
            None
        }
    }
}

/// A finite combination of normal monomials with nonzero coefficients.
#[derive(Clone)]
pub struct LpaElement {
    ctx: Arc<LpaContext>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for LpaElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for LpaElement {}

fn same_algebra(a: &Arc<LpaContext>, b: &Arc<LpaContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl fmt::Debug for LpaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LpaElement({self})")
    }
}

impl LpaElement {
    pub fn zero(ctx: &Arc<LpaContext>) -> Self {
        LpaElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    /// Σ_v v.
    pub fn one(ctx: &Arc<LpaContext>) -> Self {
        let mut x = LpaElement::zero(ctx);
        for v in 0..ctx.graph.vertex_count() {
            x.terms.insert(Monomial::vertex(v), BigRational::one());
        }
        x
    }

    pub fn scalar(ctx: &Arc<LpaContext>, k: &BigRational) -> Result<Self, SymbolicError> {
        let k = ctx.field.from_rational(k)?;
        Ok(LpaElement::one(ctx).scale(&k))
    }

    pub fn vertex(ctx: &Arc<LpaContext>, v: usize) -> Self {
        LpaElement::monomial(ctx, Monomial::vertex(v))
    }

    pub fn edge(ctx: &Arc<LpaContext>, e: usize) -> Self {
        let r = ctx.graph.range(e);
        LpaElement::monomial(ctx, Monomial::new(vec![e], Vec::new(), r))
    }

    pub fn ghost(ctx: &Arc<LpaContext>, e: usize) -> Self {
        LpaElement::edge(ctx, e).star()
    }

    /// A path α as an element; `vertex` is used when α is trivial.
    pub fn path(ctx: &Arc<LpaContext>, alpha: &[usize], vertex: usize) -> Self {
        let r = alpha.last().map_or(vertex, |&e| ctx.graph.range(e));
        LpaElement::monomial(ctx, Monomial::new(alpha.to_vec(), Vec::new(), r))
    }

    /// A single monomial, normalized.
    pub fn monomial(ctx: &Arc<LpaContext>, m: Monomial) -> Self {
        let mut x = LpaElement::zero(ctx);
        x.add_normalized(m, BigRational::one());
        x
    }

    pub fn context(&self) -> &Arc<LpaContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_raw(&mut self, m: Monomial, k: Scalar) {
        let field = self.ctx.field;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(slot) => {
                if !k.is_zero() {
                    slot.insert(k);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = field.add(slot.get(), &k);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// Adds k·m after rewriting m into normal monomials.
    fn add_normalized(&mut self, m: Monomial, k: Scalar) {
        let ctx = self.ctx.clone();
        let mut stack = vec![(m, k)];
        while let Some((m, k)) = stack.pop() {
            if m.is_normal(&ctx) {
                self.add_raw(m, k);
                continue;
            }
            let gamma = *m.alpha.last().expect("non-normal monomials end in γγ*");
            let v = ctx.graph.source(gamma);
            let alpha = m.alpha[..m.alpha.len() - 1].to_vec();
            let beta = m.beta[..m.beta.len() - 1].to_vec();
            let neg = ctx.field.neg(&k);
            for &e in ctx.graph.out_edges(v) {
                if e != gamma {
                    let mut a = alpha.clone();
                    a.push(e);
                    let mut b = beta.clone();
                    b.push(e);
                    stack.push((Monomial::new(a, b, ctx.graph.range(e)), neg.clone()));
                }
            }
            stack.push((Monomial::new(alpha, beta, v), k));
        }
    }

    fn check(&self, other: &Self) -> Result<(), SymbolicError> {
        if same_algebra(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(SymbolicError::Mismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, k) in &other.terms {
            out.add_raw(m.clone(), k.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let field = self.ctx.field;
        LpaElement { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, k)| (m.clone(), field.neg(k))).collect() }
    }

    /// k·x for k already in the field.
    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = LpaElement::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_raw(m.clone(), self.ctx.field.mul(c, k));
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.check(other)?;
        let mut out = LpaElement::zero(&self.ctx);
        for (m1, k1) in &self.terms {
            for (m2, k2) in &other.terms {
                if let Some(m) = m1.product(m2, &self.ctx) {
                    out.add_normalized(m, self.ctx.field.mul(k1, k2));
                }
            }
        }
        Ok(out)
    }

    /// (αβ*)* = βα*, linear over the field.
    pub fn star(&self) -> Self {
        let mut out = LpaElement::zero(&self.ctx);
        for (m, k) in &self.terms {
            out.add_normalized(m.star(), k.clone());
        }
        out
    }
}

impl fmt::Display for LpaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let g = &self.ctx.graph;
        for (i, (m, k)) in self.terms.iter().enumerate() {
            let negative = *k < BigRational::zero();
            let abs = if negative { -k.clone() } else { k.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut factors: Vec<String> = m.alpha.iter().map(|&e| g.edge(e).id.clone()).collect();
            factors.extend(m.beta.iter().rev().map(|&e| format!("{}*", g.edge(e).id)));
            if factors.is_empty() {
                factors.push(g.vertex_id(m.vertex).to_string());
            }
            write!(f, "{}", factors.join("."))?;
        }
        Ok(())
    }
}

/// Normal monomials with |α|, |β| ≤ max_len, in monomial order.
pub fn normal_monomials(ctx: &LpaContext, max_len: usize) -> Vec<Monomial> {
    let g = &ctx.graph;
    // Paths ending at each vertex, grouped by range, up to max_len edges.
    let mut ending: Vec<Vec<Vec<usize>>> = vec![Vec::new(); g.vertex_count()];
    let mut layer: Vec<Vec<usize>> = Vec::new();
    for slot in ending.iter_mut() {
        slot.push(Vec::new());
    }
    for e in 0..g.edge_count() {
        layer.push(vec![e]);
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in layer {
            let r = g.range(*p.last().unwrap());
            ending[r].push(p.clone());
            for &e in g.out_edges(r) {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        layer = next;
    }
    let mut out = Vec::new();
    for (v, paths) in ending.iter().enumerate() {
        for a in paths {
            for b in paths {
                let m = Monomial::new(a.clone(), b.clone(), v);
                if m.is_normal(ctx) {
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out
}

/// dim_K L_K(E) for acyclic E, counted as the number of normal monomials; `None` with cycles.
pub fn dimension(ctx: &LpaContext) -> Option<usize> {
    if crate::graph::has_cycle(&ctx.graph) {
        return None;
    }
    Some(normal_monomials(ctx, ctx.graph.vertex_count()).len())
}
