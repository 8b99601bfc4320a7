//! The graph monoid: free commutative monoid on vertices modulo a_v = Σ_{s(e)=v} a_{r(e)}.

mod group_check;
mod probes;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

pub use group_check::{group_without_zero_check, GroupCheck, GroupCheckStatus};
pub use probes::{refinement_probe, separativity_probe, ProbeReport};

use crate::graph::{vertex_classes, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("bound {bound} is below the input size {needed}")]
    BoundTooSmall { bound: u32, needed: u32 },
    #[error("cannot parse monoid element `{0}`")]
    Parse(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element has {got} coordinates, presentation has {want} generators")]
    Dimension { got: usize, want: usize },
    #[error("group check needs a purely infinite simple graph")]
    NotPurelyInfiniteSimple,
}

/// a_vertex = Σ rhs[w] a_w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub vertex: usize,
    pub rhs: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

/// Nonnegative coefficient vector over the generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoidElement(pub Vec<u32>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Equality {
    Equal,
    NotEqualWithinBound,
}

/// One relation per regular vertex, in vertex order.
pub fn presentation(g: &Graph) -> MonoidPresentation {
    let n = g.vertex_count();
    let classes = vertex_classes(g);
    let relations = classes
        .regular
        .iter()
        .map(|&v| {
            let mut rhs = vec![0u32; n];
            for &e in g.out_edges(v) {
                rhs[g.range(e)] += 1;
            }
            Relation { vertex: v, rhs }
        })
        .collect();
    MonoidPresentation { generators: g.vertex_ids().to_vec(), relations }
}

impl MonoidElement {
    pub fn zero(n: usize) -> Self {
        MonoidElement(vec![0; n])
    }

    pub fn generator(n: usize, i: usize, k: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = k;
        MonoidElement(v)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        MonoidElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> Self {
        MonoidElement(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Componentwise difference; caller ensures domination.
    pub fn minus(&self, other: &Self) -> Self {
        MonoidElement(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl MonoidPresentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Parses `2*v1 + v3`; `0` is the identity.
    pub fn parse_element(&self, text: &str) -> Result<MonoidElement, MonoidError> {
        let mut v = vec![0u32; self.rank()];
        let text = text.trim();
        if text == "0" {
            return Ok(MonoidElement(v));
        }
        for term in text.split('+') {
            let term = term.trim();
            let (k, name) = match term.split_once('*') {
                Some((k, name)) => {
                    (k.trim().parse::<u32>().map_err(|_| MonoidError::Parse(text.into()))?, name.trim())
                }
                None => (1, term),
            };
            if name.is_empty() {
                return Err(MonoidError::Parse(text.into()));
            }
            let i = self
                .generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| MonoidError::UnknownGenerator(name.into()))?;
            v[i] += k;
        }
        Ok(MonoidElement(v))
    }

    pub fn display<'a>(&'a self, x: &'a MonoidElement) -> impl fmt::Display + 'a {
        ElementDisplay { p: self, x }
    }

    fn check(&self, x: &MonoidElement) -> Result<(), MonoidError> {
        if x.0.len() != self.rank() {
            return Err(MonoidError::Dimension { got: x.0.len(), want: self.rank() });
        }
        Ok(())
    }

    /// Elements one relation application away (either direction) with size at most `bound`.
    pub fn neighbors(&self, x: &MonoidElement, bound: u32) -> Vec<MonoidElement> {
        let size = x.size();
        let mut out = Vec::new();
        for rel in &self.relations {
            let rsize: u32 = rel.rhs.iter().sum();
            if x.0[rel.vertex] >= 1 && size - 1 + rsize <= bound {
                let mut y = x.0.clone();
                y[rel.vertex] -= 1;
                for (a, b) in y.iter_mut().zip(&rel.rhs) {
                    *a += b;
                }
                out.push(MonoidElement(y));
            }
            if x.0.iter().zip(&rel.rhs).all(|(a, b)| a >= b) && size - rsize + 1 <= bound {
                let mut y: Vec<u32> = x.0.iter().zip(&rel.rhs).map(|(a, b)| a - b).collect();
                y[rel.vertex] += 1;
                out.push(MonoidElement(y));
            }
        }
        out
    }

    /// Everything reachable from `x` by relation moves through elements of size at most `bound`.
    pub fn bounded_class(&self, x: &MonoidElement, bound: u32) -> BTreeSet<MonoidElement> {
        let mut seen: BTreeSet<MonoidElement> = BTreeSet::from([x.clone()]);
        let mut frontier = vec![x.clone()];
        while let Some(y) = frontier.pop() {
            for z in self.neighbors(&y, bound) {
                if seen.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        seen
    }
}

struct ElementDisplay<'a> {
    p: &'a MonoidPresentation,
    x: &'a MonoidElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .x
            .0
            .iter()
            .zip(&self.p.generators)
            .filter(|(k, _)| **k > 0)
            .map(|(k, g)| if *k == 1 { g.clone() } else { format!("{k}*{g}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Bidirectional breadth-first search for a chain of relation moves joining x and y,
/// never passing through elements of size above `bound`.
pub fn equal_bounded(
    p: &MonoidPresentation,
    x: &MonoidElement,
    y: &MonoidElement,
    bound: u32,
) -> Result<Equality, MonoidError> {
    p.check(x)?;
    p.check(y)?;
    let needed = x.size().max(y.size());
    if bound < needed {
        return Err(MonoidError::BoundTooSmall { bound, needed });
    }
    if x == y {
        return Ok(Equality::Equal);
    }
    let mut seen = [HashSet::from([x.clone()]), HashSet::from([y.clone()])];
    let mut frontier = [vec![x.clone()], vec![y.clone()]];
    loop {
        let side = if frontier[0].is_empty() {
            1
        } else if frontier[1].is_empty() || frontier[0].len() <= frontier[1].len() {
            0
        } else {
            1
        };
        if frontier[side].is_empty() {
            return Ok(Equality::NotEqualWithinBound);
        }
        let mut next = Vec::new();
        for z in std::mem::take(&mut frontier[side]) {
            for w in p.neighbors(&z, bound) {
                if seen[1 - side].contains(&w) {
                    return Ok(Equality::Equal);
                }
                if seen[side].insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        frontier[side] = next;
        if frontier[0].is_empty() && frontier[1].is_empty() {
            return Ok(Equality::NotEqualWithinBound);
        }
    }
}
