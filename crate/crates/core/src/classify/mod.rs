//! Ring-theoretic verdicts about L_K(E) read off from the graph.

mod compare;
mod ideals;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use compare::{compare, singular_count, Comparison, Verdict};
pub use ideals::{graded_ideals, graded_ideals_with_guard, ideal_families, ideal_families_with_guard, GradedIdealPair, IdealFamily};

use crate::field::{Field, Scalar};
use crate::graph::{
    condition_k, condition_l, cycles, has_cycle, has_exit, is_cofinal, is_downward_directed,
    reachability, vertex_classes, Graph, GraphError,
};
use crate::ktheory::{incidence_matrix, KTheoryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("graph has a cycle")]
    Cyclic,
    #[error("operation undefined for graphs with infinite emitters")]
    InfiniteEmitters,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    KTheory(#[from] KTheoryError),
}

/// A block M_N(K) of a finite-dimensional Leavitt path algebra, one per sink.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixBlock {
    pub sink: String,
    #[serde(serialize_with = "crate::json::int")]
    pub size: BigInt,
}

/// For finite acyclic E, L_K(E) ≅ ⊕_sinks M_{N_w}(K) with N_w the number of paths ending at w.
pub fn acyclic_structure(g: &Graph) -> Result<Vec<MatrixBlock>, ClassifyError> {
    if !g.is_row_finite() {
        return Err(ClassifyError::InfiniteEmitters);
    }
    if has_cycle(g) {
        return Err(ClassifyError::Cyclic);
    }
    let n = g.vertex_count();
    // Reverse topological order: process a vertex after all of its successors.
    let mut order = Vec::with_capacity(n);
    let mut state = vec![0u8; n];
    fn visit(g: &Graph, v: usize, state: &mut [u8], order: &mut Vec<usize>) {
        if state[v] != 0 {
            return;
        }
        state[v] = 1;
        for &e in g.out_edges(v) {
            visit(g, g.range(e), state, order);
        }
        order.push(v);
    }
    for v in 0..n {
        visit(g, v, &mut state, &mut order);
    }
    let classes = vertex_classes(g);
    let mut blocks = Vec::new();
    for &w in &classes.sinks {
        let mut paths = vec![BigInt::zero(); n];
        for &v in &order {
            let mut total = if v == w { BigInt::one() } else { BigInt::zero() };
            for &e in g.out_edges(v) {
                total += &paths[g.range(e)];
            }
            paths[v] = total;
        }
        blocks.push(MatrixBlock { sink: g.vertex_id(w).to_string(), size: paths.into_iter().sum() });
    }
    Ok(blocks)
}

/// Only trivial graded ideals and every cycle has an exit. For graphs with infinite emitters the
/// graded-ideal pairs over the trivial sets carry no breaking vertices, so the criterion reduces
/// to cofinality together with Condition (L).
pub fn is_simple(g: &Graph) -> bool {
    is_cofinal(g) && condition_l(g)
}

/// Simple and E has at least one cycle.
pub fn is_purely_infinite_simple(g: &Graph) -> bool {
    is_simple(g) && has_cycle(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Dichotomy {
    MatrixAlgebra(#[serde(serialize_with = "crate::json::int")] BigInt),
    PurelyInfiniteSimple,
    NotSimple,
}

pub fn dichotomy(g: &Graph) -> Result<Dichotomy, ClassifyError> {
    if !is_simple(g) {
        return Ok(Dichotomy::NotSimple);
    }
    if has_cycle(g) {
        return Ok(Dichotomy::PurelyInfiniteSimple);
    }
    let blocks = acyclic_structure(g)?;
    debug_assert_eq!(blocks.len(), 1, "a simple acyclic graph has one sink");
    Ok(Dichotomy::MatrixAlgebra(blocks[0].size.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Battery {
    pub prime: bool,
    pub primitive: bool,
    pub exchange: bool,
    pub simple: bool,
    pub purely_infinite_simple: bool,
}

/// prime: downward directed; primitive: downward directed and Condition (L) (countable separation
/// is automatic with finitely many vertices); exchange: Condition (K).
pub fn predicate_battery(g: &Graph) -> Battery {
    let downward = is_downward_directed(g);
    Battery {
        prime: downward,
        primitive: downward && condition_l(g),
        exchange: condition_k(g),
        simple: is_simple(g),
        purely_infinite_simple: is_purely_infinite_simple(g),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Center {
    ScalarMultiplesOfUnit,
    /// Only for infinitely many vertices, which this library never represents.
    Zero,
    Unknown,
}

pub fn center_description(g: &Graph) -> Center {
    if is_simple(g) {
        Center::ScalarMultiplesOfUnit
    } else {
        Center::Unknown
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainConditions {
    pub dcc: bool,
    pub acc: bool,
}

/// d.c.c. on two-sided ideals iff Condition (K); a.c.c. always holds for finite graphs.
pub fn chain_conditions(g: &Graph) -> Result<ChainConditions, ClassifyError> {
    if !g.is_row_finite() {
        return Err(ClassifyError::InfiniteEmitters);
    }
    Ok(ChainConditions { dcc: condition_k(g), acc: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GkDimension {
    Exponential,
    Polynomial(u64),
}

/// Exponential growth iff two distinct cycles share a vertex; otherwise max(2 d1 - 1, 2 d2),
/// with d1 the longest chain C1 ⇒ ... ⇒ Ck of disjoint cycles and d2 the longest such chain of
/// cycles that all have exits.
pub fn gk_dimension(g: &Graph) -> Result<GkDimension, ClassifyError> {
    if !g.is_row_finite() {
        return Err(ClassifyError::InfiniteEmitters);
    }
    let cs = cycles(g);
    let sets: Vec<_> = cs.iter().map(|c| c.vertex_set(g)).collect();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if !sets[i].is_disjoint(&sets[j]) {
                return Ok(GkDimension::Exponential);
            }
        }
    }
    if cs.is_empty() {
        return Ok(GkDimension::Polynomial(0));
    }
    let reach = reachability(g);
    let k = cs.len();
    let arrow = |i: usize, j: usize| i != j && sets[i].iter().any(|&a| sets[j].iter().any(|&b| reach[a][b]));
    let exits: Vec<bool> = cs.iter().map(|c| has_exit(g, c)).collect();
    // Longest chain starting at each cycle; the relation is acyclic on pairwise disjoint cycles.
    fn longest(i: usize, k: usize, allowed: &dyn Fn(usize) -> bool, arrow: &dyn Fn(usize, usize) -> bool, memo: &mut BTreeMap<usize, u64>) -> u64 {
        if let Some(&v) = memo.get(&i) {
            return v;
        }
        let best = (0..k).filter(|&j| allowed(j) && arrow(i, j)).map(|j| longest(j, k, allowed, arrow, memo)).max().unwrap_or(0);
        memo.insert(i, best + 1);
        best + 1
    }
    let all = |_: usize| true;
    let with_exit = |j: usize| exits[j];
    let mut memo = BTreeMap::new();
    let d1 = (0..k).map(|i| longest(i, k, &all, &arrow, &mut memo)).max().unwrap_or(0);
    let mut memo = BTreeMap::new();
    let d2 = (0..k).filter(|&i| exits[i]).map(|i| longest(i, k, &with_exit, &arrow, &mut memo)).max().unwrap_or(0);
    Ok(GkDimension::Polynomial((2 * d1 - 1).max(2 * d2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LieVerdict {
    Simple,
    NotSimple,
    Inapplicable,
}

/// For simple L_K(E) with at least two vertices, the commutator Lie algebra [L, L] is simple iff
/// (1, ..., 1) is outside the span of the rows B_v = (row v of A_E) - ε_v (B_v = 0 at sinks).
pub fn lie_bracket_simple(g: &Graph, field: Field) -> Result<LieVerdict, ClassifyError> {
    if !is_simple(g) || g.vertex_count() < 2 {
        return Ok(LieVerdict::Inapplicable);
    }
    let a = incidence_matrix(g)?;
    let n = g.vertex_count();
    let sinks = vertex_classes(g).sinks;
    let to = |x: &BigInt| field.from_rational(&BigRational::from_integer(x.clone())).expect("integer");
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            if sinks.contains(&i) {
                vec![field.from_int(0); n]
            } else {
                (0..n).map(|j| to(&(&a[(i, j)] - BigInt::from((i == j) as i64)))).collect()
            }
        })
        .collect();
    let base = field.rank(&rows);
    rows.push(vec![field.one(); n]);
    Ok(if field.rank(&rows) == base { LieVerdict::NotSimple } else { LieVerdict::Simple })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{families, parse_graph};

    fn sizes(g: &Graph) -> Vec<i64> {
        acyclic_structure(g).unwrap().iter().map(|b| i64::try_from(&b.size).unwrap()).collect()
    }

    #[test]
    fn acyclic_examples() {
        assert_eq!(sizes(&families::a_n(4)), [4]);
        assert_eq!(sizes(&families::d_n(5)), [5]);
        assert_eq!(sizes(&families::b_n(3)), [3]);
        assert_eq!(sizes(&parse_graph("vertex v").unwrap()), [1]);
        assert_eq!(acyclic_structure(&families::rose(1)), Err(ClassifyError::Cyclic));
        let w = parse_graph("vertex v\nvertex w\nomega v w").unwrap();
        assert_eq!(acyclic_structure(&w), Err(ClassifyError::InfiniteEmitters));
    }

    #[test]
    fn simplicity() {
        assert!((2..6).all(|n| is_simple(&families::rose(n))));
        assert!(!is_simple(&families::toeplitz()));
        assert!(!is_simple(&families::rose(1)));
        assert_eq!(dichotomy(&families::rose(2)).unwrap(), Dichotomy::PurelyInfiniteSimple);
        assert_eq!(dichotomy(&families::a_n(4)).unwrap(), Dichotomy::MatrixAlgebra(BigInt::from(4)));
        assert_eq!(dichotomy(&families::toeplitz()).unwrap(), Dichotomy::NotSimple);
        // One vertex with infinitely many loops is purely infinite simple.
        assert!(is_purely_infinite_simple(&parse_graph("vertex v\nomega v v").unwrap()));
    }

    #[test]
    fn batteries() {
        let b = predicate_battery(&families::rose(1));
        assert!(b.prime && !b.primitive && !b.exchange);
        let b = predicate_battery(&families::toeplitz());
        assert!(b.prime && b.primitive && !b.exchange && !b.simple);
        let b = predicate_battery(&parse_graph("vertex a\nvertex b").unwrap());
        assert!(!b.prime);
    }

    #[test]
    fn centers_and_chains() {
        assert_eq!(center_description(&families::rose(2)), Center::ScalarMultiplesOfUnit);
        assert_eq!(center_description(&families::toeplitz()), Center::Unknown);
        assert_eq!(center_description(&families::a_n(3)), Center::ScalarMultiplesOfUnit);
        assert_eq!(chain_conditions(&families::toeplitz()).unwrap(), ChainConditions { dcc: false, acc: true });
        assert_eq!(chain_conditions(&families::rose(2)).unwrap(), ChainConditions { dcc: true, acc: true });
        assert_eq!(chain_conditions(&families::a_n(3)).unwrap(), ChainConditions { dcc: true, acc: true });
    }

    #[test]
    fn gk() {
        assert_eq!(gk_dimension(&families::rose(2)).unwrap(), GkDimension::Exponential);
        assert_eq!(gk_dimension(&families::rose(1)).unwrap(), GkDimension::Polynomial(1));
        assert_eq!(gk_dimension(&families::a_n(4)).unwrap(), GkDimension::Polynomial(0));
        assert_eq!(gk_dimension(&families::toeplitz()).unwrap(), GkDimension::Polynomial(2));
        // Loop at v feeding an exitless loop at w: d1 = 2, d2 = 1.
        let g = parse_graph("vertex v\nvertex w\nedge a v v\nedge b v w\nedge c w w").unwrap();
        assert_eq!(gk_dimension(&g).unwrap(), GkDimension::Polynomial(3));
    }

    #[test]
    fn lie() {
        assert_eq!(lie_bracket_simple(&families::e2(), Field::Rationals).unwrap(), LieVerdict::NotSimple);
        assert_eq!(lie_bracket_simple(&families::rose(2), Field::Rationals).unwrap(), LieVerdict::Inapplicable);
        assert_eq!(lie_bracket_simple(&families::toeplitz(), Field::Rationals).unwrap(), LieVerdict::Inapplicable);
        // Characteristic dependence: B = (-1, 1) misses (1, 1) over Q but not over F_2.
        assert_eq!(lie_bracket_simple(&families::a_n(2), Field::Rationals).unwrap(), LieVerdict::Simple);
        assert_eq!(lie_bracket_simple(&families::a_n(2), Field::Prime(2)).unwrap(), LieVerdict::NotSimple);
        assert_eq!(lie_bracket_simple(&families::d_n(3), Field::Rationals).unwrap(), LieVerdict::Simple);
        assert_eq!(lie_bracket_simple(&families::d_n(3), Field::Prime(3)).unwrap(), LieVerdict::NotSimple);
    }
}
