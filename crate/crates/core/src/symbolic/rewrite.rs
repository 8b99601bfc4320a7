use std::sync::Arc;

use num_rational::BigRational;

use super::{LpaContext, LpaElement, Monomial, SymbolicError};
use crate::field::Scalar;

/// A generator of the free algebra: a vertex, a real edge or a ghost edge e*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Vertex(usize),
    Edge(usize),
    Ghost(usize),
}

pub type Word = Vec<Letter>;

enum Rewrite {
    Zero,
    Single(Letter),
    /// γγ* ↦ v − Σ_{e ≠ γ} ee*.
    Ck2 { v: usize, gamma: usize },
}

/// The rewrite applying to letters (a, b), if any.
fn redex(ctx: &LpaContext, a: Letter, b: Letter) -> Option<Rewrite> {
    use Letter::*;
    let g = &ctx.graph;
    let keep = |cond: bool, l: Letter| Some(if cond { Rewrite::Single(l) } else { Rewrite::Zero });
    match (a, b) {
        (Vertex(v), Vertex(w)) => keep(v == w, a),
        (Vertex(v), Edge(e)) => keep(g.source(e) == v, b),
        (Vertex(v), Ghost(e)) => keep(g.range(e) == v, b),
        (Edge(e), Vertex(v)) => keep(g.range(e) == v, a),
        (Ghost(e), Vertex(v)) => keep(g.source(e) == v, a),
        (Edge(e), Edge(f)) => (g.range(e) != g.source(f)).then_some(Rewrite::Zero),
        // e*f* = (fe)*.
        (Ghost(e), Ghost(f)) => (g.source(e) != g.range(f)).then_some(Rewrite::Zero),
        (Ghost(e), Edge(f)) => keep(e == f, Vertex(g.range(e))),
        (Edge(e), Ghost(f)) => {
            if g.range(e) != g.range(f) {
                Some(Rewrite::Zero)
            } else if e == f && ctx.designated[g.source(e)] == Some(e) {
                Some(Rewrite::Ck2 { v: g.source(e), gamma: e })
            } else {
                None
            }
        }
    }
}

fn to_monomial(ctx: &LpaContext, w: &[Letter]) -> Monomial {
    let g = &ctx.graph;
    if let [Letter::Vertex(v)] = w {
        return Monomial::vertex(*v);
    }
    let alpha: Vec<usize> = w.iter().filter_map(|l| if let Letter::Edge(e) = l { Some(*e) } else { None }).collect();
    let beta: Vec<usize> = w.iter().rev().filter_map(|l| if let Letter::Ghost(e) = l { Some(*e) } else { None }).collect();
    let vertex = match (alpha.last(), beta.last()) {
        (Some(&e), _) | (None, Some(&e)) => g.range(e),
        (None, None) => unreachable!("irreducible words are nonempty"),
    };
    Monomial::new(alpha, beta, vertex)
}

/// Rewrites a combination of words to normal form, letting `choose(k)` pick which of the k
/// available redexes fires next. The result does not depend on the choices.
pub fn normal_form_with(
    ctx: &Arc<LpaContext>,
    raw: &[(BigRational, Word)],
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<LpaElement, SymbolicError> {
    let field = ctx.field;
    let mut terms: Vec<(Scalar, Word)> = Vec::new();
    for (k, w) in raw {
        if w.is_empty() {
            return Err(SymbolicError::Parse { line: 0, msg: "empty word".into() });
        }
        terms.push((field.from_rational(k)?, w.clone()));
    }
    loop {
        let mut sites = Vec::new();
        for (t, (_, w)) in terms.iter().enumerate() {
            for i in 0..w.len().saturating_sub(1) {
                if redex(ctx, w[i], w[i + 1]).is_some() {
                    sites.push((t, i));
                }
            }
        }
        if sites.is_empty() {
            break;
        }
        let (t, i) = sites[choose(sites.len()) % sites.len()];
        let (k, w) = terms.swap_remove(t);
        let splice = |mid: &[Letter]| -> Word {
            let mut out = w[..i].to_vec();
            out.extend_from_slice(mid);
            out.extend_from_slice(&w[i + 2..]);
            out
        };
        match redex(ctx, w[i], w[i + 1]).expect("site was a redex") {
            Rewrite::Zero => {}
            Rewrite::Single(l) => terms.push((k, splice(&[l]))),
            Rewrite::Ck2 { v, gamma } => {
                let neg = field.neg(&k);
                for &e in ctx.graph.out_edges(v) {
                    if e != gamma {
                        terms.push((neg.clone(), splice(&[Letter::Edge(e), Letter::Ghost(e)])));
                    }
                }
                terms.push((k, splice(&[Letter::Vertex(v)])));
            }
        }
    }
    let mut out = LpaElement::zero(ctx);
    for (k, w) in terms {
        out.add_raw(to_monomial(ctx, &w), k);
    }
    Ok(out)
}

/// Leftmost-first rewriting.
pub fn normal_form(ctx: &Arc<LpaContext>, raw: &[(BigRational, Word)]) -> Result<LpaElement, SymbolicError> {
    normal_form_with(ctx, raw, &mut |_| 0)
}
