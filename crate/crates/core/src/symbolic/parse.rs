use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{LpaContext, LpaElement, LpaMatrix, SymbolicError};
use crate::field::Field;
use crate::graph::{parse_graph, strip_comment, valid_identifier};

/// Named elements usable inside element expressions.
pub type Bindings = BTreeMap<String, LpaElement>;

fn bad(msg: impl Into<String>) -> SymbolicError {
    SymbolicError::Parse { line: 0, msg: msg.into() }
}

fn parse_rational(text: &str) -> Result<BigRational, SymbolicError> {
    let parse = |s: &str| s.parse::<BigInt>().map_err(|_| bad(format!("bad number `{text}`")));
    match text.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d == BigInt::from(0) {
                return Err(bad(format!("zero denominator in `{text}`")));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(text)?)),
    }
}

fn parse_factor(ctx: &Arc<LpaContext>, text: &str, bindings: &Bindings) -> Result<LpaElement, SymbolicError> {
    let (name, starred) = match text.strip_suffix('*') {
        Some(n) => (n.trim(), true),
        None => (text, false),
    };
    let g = ctx.graph();
    let x = if let Some(x) = bindings.get(name) {
        x.clone()
    } else if g.has_edge(name) {
        LpaElement::edge(ctx, g.edge_by_id(name)?)
    } else if g.has_vertex(name) {
        LpaElement::vertex(ctx, g.vertex(name)?)
    } else if name.bytes().all(|b| b.is_ascii_digit() || b == b'/') && !name.is_empty() {
        LpaElement::scalar(ctx, &parse_rational(name)?)?
    } else {
        return Err(SymbolicError::UnknownName(name.to_string()));
    };
    Ok(if starred { x.star() } else { x })
}

fn parse_term(ctx: &Arc<LpaContext>, text: &str, bindings: &Bindings) -> Result<LpaElement, SymbolicError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(bad("empty term"));
    }
    // A leading number followed by `*` is a coefficient; e1* on its own is a ghost edge.
    let digits = text.bytes().take_while(|b| b.is_ascii_digit() || *b == b'/').count();
    let (coeff, rest) = if digits > 0 && text[digits..].trim_start().starts_with('*') {
        (parse_rational(&text[..digits])?, text[digits..].trim_start()[1..].trim())
    } else {
        (BigRational::from_integer(1.into()), text)
    };
    let mut x = LpaElement::scalar(ctx, &coeff)?;
    for factor in rest.split('.') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(bad(format!("empty factor in `{text}`")));
        }
        x = x.multiply(&parse_factor(ctx, factor, bindings)?)?;
    }
    Ok(x)
}

/// Parses `3*e1.e2.f* - 1/2*v + x` where `.` is multiplication, `e*` a ghost edge, and names
/// resolve to bindings, then edges, then vertices. A binary minus needs surrounding whitespace,
/// since `-` may occur inside identifiers.
pub fn parse_element(ctx: &Arc<LpaContext>, text: &str, bindings: &Bindings) -> Result<LpaElement, SymbolicError> {
    let text = text.trim();
    let mut total = LpaElement::zero(ctx);
    let mut sign_negative = false;
    let mut start = 0;
    let bytes = text.as_bytes();
    let push = |chunk: &str, negative: bool, total: &mut LpaElement| -> Result<(), SymbolicError> {
        let t = parse_term(ctx, chunk, bindings)?;
        *total = if negative { total.sub(&t)? } else { total.add(&t)? };
        Ok(())
    };
    if text.starts_with('-') {
        sign_negative = true;
        start = 1;
    }
    for i in start..bytes.len() {
        let sep = bytes[i] == b'+' || (bytes[i] == b'-' && i > 0 && bytes[i - 1].is_ascii_whitespace());
        if sep {
            push(&text[start..i], sign_negative, &mut total)?;
            sign_negative = bytes[i] == b'-';
            start = i + 1;
        }
    }
    push(&text[start..], sign_negative, &mut total)?;
    Ok(total)
}

/// `[[a, b], [c, d]]`.
pub fn parse_matrix(ctx: &Arc<LpaContext>, text: &str, bindings: &Bindings) -> Result<LpaMatrix, SymbolicError> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| bad("matrix must be enclosed in `[ ]`"))?;
    let mut rows = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or_else(|| bad(format!("expected `[` at `{rest}`")))?;
        let close = body.find(']').ok_or_else(|| bad("unclosed row"))?;
        let row = body[..close]
            .split(',')
            .map(|entry| parse_element(ctx, entry, bindings))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        rest = body[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    LpaMatrix::from_rows(rows)
}

/// A relation-set fixture: a graph, optional `field <char>`, `let` bindings and matrices
/// `X1 = [[...]]`, `Y1 = [[...]]`, one per line.
#[derive(Debug, Clone)]
pub struct DaggerFixture {
    pub context: Arc<LpaContext>,
    pub bindings: Bindings,
    pub xs: Vec<LpaMatrix>,
    pub ys: Vec<LpaMatrix>,
}

pub fn load_fixture(text: &str) -> Result<DaggerFixture, SymbolicError> {
    let at = |line: usize| move |e: SymbolicError| match e {
        SymbolicError::Parse { line: 0, msg } => SymbolicError::Parse { line, msg },
        SymbolicError::Parse { .. } => e,
        other => SymbolicError::Parse { line, msg: other.to_string() },
    };
    // The graph text keeps line numbering so its errors point at the fixture.
    let mut graph_text = String::new();
    let mut field = Field::Rationals;
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        let kw = line.split_whitespace().next().unwrap_or("");
        if matches!(kw, "vertex" | "edge" | "omega") {
            graph_text.push_str(line);
        } else if kw == "field" {
            let c = line["field".len()..].trim().parse::<u64>().map_err(|_| at(i + 1)(bad("`field` takes a characteristic")))?;
            field = Field::with_characteristic(c).map_err(|e| at(i + 1)(e.into()))?;
        }
        graph_text.push('\n');
    }
    let graph = parse_graph(&graph_text)?;
    let ctx = LpaContext::new(graph, field)?;
    let mut bindings = Bindings::new();
    let mut xs = BTreeMap::new();
    let mut ys = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        let kw = line.split_whitespace().next().unwrap_or("");
        if line.is_empty() || matches!(kw, "vertex" | "edge" | "omega" | "field") {
            continue;
        }
        let err = at(i + 1);
        if let Some(rest) = line.strip_prefix("let ") {
            let (name, expr) = rest.split_once('=').ok_or_else(|| err(bad("expected `let name = element`")))?;
            let name = name.trim();
            if !valid_identifier(name) {
                return Err(err(bad(format!("bad binding name `{name}`"))));
            }
            let value = parse_element(&ctx, expr, &bindings).map_err(&err)?;
            bindings.insert(name.to_string(), value);
            continue;
        }
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| err(bad(format!("unrecognized line `{line}`"))))?;
        let lhs = lhs.trim();
        let (target, index) = match lhs.split_at(1) {
            ("X", k) => (&mut xs, k),
            ("Y", k) => (&mut ys, k),
            _ => return Err(err(bad(format!("expected `X<k>` or `Y<k>`, found `{lhs}`")))),
        };
        let k: usize = index.parse().map_err(|_| err(bad(format!("bad matrix index `{lhs}`"))))?;
        let m = parse_matrix(&ctx, rhs, &bindings).map_err(&err)?;
        if target.insert(k, m).is_some() {
            return Err(err(bad(format!("`{lhs}` defined twice"))));
        }
    }
    let collect = |ms: BTreeMap<usize, LpaMatrix>, name: &str| -> Result<Vec<LpaMatrix>, SymbolicError> {
        if ms.keys().copied().ne(1..=ms.len()) {
            return Err(bad(format!("{name} matrices must be numbered 1..n")));
        }
        Ok(ms.into_values().collect())
    };
    let xs = collect(xs, "X")?;
    let ys = collect(ys, "Y")?;
    Ok(DaggerFixture { context: ctx, bindings, xs, ys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn elements() {
        let ctx = LpaContext::new(families::toeplitz(), Field::Rationals).unwrap();
        let b = Bindings::new();
        let x = parse_element(&ctx, "3*e.f.f* - 1/2*w", &b).unwrap();
        assert_eq!(x.to_string(), "-1/2*w + 3*e.f.f*");
        assert_eq!(parse_element(&ctx, "v - e.e*", &b).unwrap(), parse_element(&ctx, "f.f*", &b).unwrap());
        assert_eq!(parse_element(&ctx, "1", &b).unwrap(), LpaElement::one(&ctx));
        assert!(parse_element(&ctx, "0", &b).unwrap().is_zero());
        assert!(parse_element(&ctx, "-e.e*", &b).unwrap().to_string().starts_with('-'));
        assert_eq!(parse_element(&ctx, "q", &b).unwrap_err(), SymbolicError::UnknownName("q".into()));
        assert!(parse_element(&ctx, "e..f", &b).is_err());
        assert!(parse_element(&ctx, "1/0", &b).is_err());
    }

    #[test]
    fn bindings_and_matrices() {
        let ctx = LpaContext::new(families::rose(2), Field::Rationals).unwrap();
        let mut b = Bindings::new();
        b.insert("x".into(), parse_element(&ctx, "e1*", &b).unwrap());
        let m = parse_matrix(&ctx, "[[x, 0], [x*, 2*x.e1]]", &b).unwrap();
        assert_eq!(m.get(1, 0), &LpaElement::edge(&ctx, 0));
        assert_eq!(m.get(1, 1).to_string(), "2*v");
        assert!(parse_matrix(&ctx, "[[x, 0], [x]]", &b).is_err());
    }

    #[test]
    fn fixture_errors_carry_lines() {
        let err = load_fixture("vertex v\nedge e v v\n\nX1 = [[e, q]]\n").unwrap_err();
        assert_eq!(err, SymbolicError::Parse { line: 4, msg: "unknown name `q`".into() });
        let err = load_fixture("vertex v\nedge e v w\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = load_fixture("vertex v\nX2 = [[v]]\nY1 = [[v]]\n").unwrap_err();
        assert!(err.to_string().contains("numbered"), "{err}");
        let f = load_fixture("vertex v\nedge e v v\nfield 3\nX1 = [[v]]\nY1 = [[v]]\n").unwrap();
        assert_eq!(f.context.field(), Field::Prime(3));
    }
}
