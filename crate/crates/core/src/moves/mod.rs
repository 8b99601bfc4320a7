//! Flow-equivalence graph moves, move scripts and bounded move search.

mod ops;
mod search;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

pub use ops::{contract, expand, in_amalgamate, in_split, out_amalgamate, out_split, source_eliminate, EdgePartition};
pub use search::{move_search, SearchOutcome, SEARCH_DEPTH_CAP};

use crate::graph::{Graph, GraphError};
use crate::ktheory::{det_i_minus_a, group_iso, k0, FgAbelianGroup, KTheoryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("not an amalgamation: {0}")]
    NotAnAmalgamation(String),
    #[error("contraction pattern mismatch: {0}")]
    ContractPattern(String),
    #[error("`{0}` is not a source")]
    NotASource(String),
    #[error("cannot eliminate the last vertex")]
    LastVertex,
    #[error("moves other than source elimination need a graph without infinite emitters")]
    InfiniteEmitters,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("search depth {depth} exceeds the cap {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    KTheory(#[from] KTheoryError),
}

/// One move with its witness data, by vertex and edge names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveSpec {
    /// Partitions of s⁻¹(v) at the listed vertices; other vertices keep one block.
    OutSplit(Vec<(String, Vec<Vec<String>>)>),
    /// Partitions of r⁻¹(v).
    InSplit(Vec<(String, Vec<Vec<String>>)>),
    /// Groups of vertices to merge.
    OutAmalgamate(Vec<Vec<String>>),
    InAmalgamate(Vec<Vec<String>>),
    Expand(String),
    Contract { vertex: String, edge: String },
    SourceEliminate(String),
}

fn write_blocks(f: &mut fmt::Formatter<'_>, blocks: &[Vec<String>]) -> fmt::Result {
    let parts: Vec<String> = blocks.iter().map(|b| b.join(",")).collect();
    write!(f, "{{{}}}", parts.join("|"))
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveSpec::OutSplit(parts) | MoveSpec::InSplit(parts) => {
                write!(f, "{}", if matches!(self, MoveSpec::OutSplit(_)) { "outsplit" } else { "insplit" })?;
                for (v, blocks) in parts {
                    write!(f, " {v} ")?;
                    write_blocks(f, blocks)?;
                }
                Ok(())
            }
            MoveSpec::OutAmalgamate(groups) => {
                write!(f, "outamalgamate ")?;
                write_blocks(f, groups)
            }
            MoveSpec::InAmalgamate(groups) => {
                write!(f, "inamalgamate ")?;
                write_blocks(f, groups)
            }
            MoveSpec::Expand(v) => write!(f, "expand {v}"),
            MoveSpec::Contract { vertex, edge } => write!(f, "contract {vertex} {edge}"),
            MoveSpec::SourceEliminate(v) => write!(f, "eliminate {v}"),
        }
    }
}

impl Serialize for MoveSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `{a,b|c}` → [[a, b], [c]].
fn parse_blocks(text: &str) -> Result<Vec<Vec<String>>, String> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| format!("expected `{{...}}`, found `{}`", text.trim()))?;
    inner
        .split('|')
        .map(|b| {
            let items: Vec<String> = b.split(',').map(|x| x.trim().to_string()).collect();
            if items.iter().any(String::is_empty) {
                Err(format!("empty name in `{{{inner}}}`"))
            } else {
                Ok(items)
            }
        })
        .collect()
}

/// `v {..} w {..}` → [(v, blocks), (w, blocks)].
fn parse_split_args(rest: &str) -> Result<Vec<(String, Vec<Vec<String>>)>, String> {
    let mut out = Vec::new();
    let mut rest = rest.trim();
    while !rest.is_empty() {
        let open = rest.find('{').ok_or_else(|| format!("missing partition after `{rest}`"))?;
        let close = rest[open..].find('}').map(|c| open + c).ok_or("unclosed `{`")?;
        let v = rest[..open].trim();
        if v.is_empty() || v.contains(char::is_whitespace) {
            return Err(format!("expected one vertex before `{{`, found `{v}`"));
        }
        out.push((v.to_string(), parse_blocks(&rest[open..=close])?));
        rest = rest[close + 1..].trim();
    }
    if out.is_empty() {
        return Err("split needs at least one vertex partition".into());
    }
    Ok(out)
}

impl MoveSpec {
    pub fn parse(line: &str) -> Result<MoveSpec, String> {
        let line = line.trim();
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let words: Vec<&str> = rest.split_whitespace().collect();
        let one = |what: &str| -> Result<String, String> {
            match words.as_slice() {
                [v] => Ok(v.to_string()),
                _ => Err(format!("`{kw}` takes one {what}")),
            }
        };
        match kw {
            "outsplit" => Ok(MoveSpec::OutSplit(parse_split_args(rest)?)),
            "insplit" => Ok(MoveSpec::InSplit(parse_split_args(rest)?)),
            "outamalgamate" => Ok(MoveSpec::OutAmalgamate(parse_blocks(rest)?)),
            "inamalgamate" => Ok(MoveSpec::InAmalgamate(parse_blocks(rest)?)),
            "expand" => Ok(MoveSpec::Expand(one("vertex")?)),
            "eliminate" => Ok(MoveSpec::SourceEliminate(one("vertex")?)),
            "contract" => match words.as_slice() {
                [v, e] => Ok(MoveSpec::Contract { vertex: v.to_string(), edge: e.to_string() }),
                _ => Err("`contract` takes a vertex and an edge".into()),
            },
            "" => Err("empty move".into()),
            other => Err(format!("unknown move `{other}`")),
        }
    }

    /// Applies the move, resolving names against `g`.
    pub fn apply(&self, g: &Graph) -> Result<Graph, MoveError> {
        let partition = |parts: &[(String, Vec<Vec<String>>)]| -> Result<EdgePartition, MoveError> {
            let mut p = EdgePartition::new();
            for (v, blocks) in parts {
                let vi = g.vertex(v)?;
                let blocks = blocks
                    .iter()
                    .map(|b| b.iter().map(|e| g.edge_by_id(e)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                if p.insert(vi, blocks).is_some() {
                    return Err(MoveError::InvalidPartition(format!("vertex `{v}` listed twice")));
                }
            }
            Ok(p)
        };
        let groups = |groups: &[Vec<String>]| -> Result<Vec<Vec<usize>>, MoveError> {
            Ok(groups.iter().map(|grp| grp.iter().map(|v| g.vertex(v)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?)
        };
        match self {
            MoveSpec::OutSplit(parts) => out_split(g, &partition(parts)?),
            MoveSpec::InSplit(parts) => in_split(g, &partition(parts)?),
            MoveSpec::OutAmalgamate(gs) => out_amalgamate(g, &groups(gs)?),
            MoveSpec::InAmalgamate(gs) => in_amalgamate(g, &groups(gs)?),
            MoveSpec::Expand(v) => expand(g, g.vertex(v)?),
            MoveSpec::Contract { vertex, edge } => contract(g, g.vertex(vertex)?, g.edge_by_id(edge)?),
            MoveSpec::SourceEliminate(v) => source_eliminate(g, g.vertex(v)?),
        }
    }
}

/// One move per non-empty line; `#` at the start of a token begins a comment.
pub fn parse_script(text: &str) -> Result<Vec<MoveSpec>, MoveError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = crate::graph::strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        out.push(MoveSpec::parse(line).map_err(|msg| MoveError::Parse { line: i + 1, msg })?);
    }
    Ok(out)
}

/// Applies moves in order, returning every intermediate graph (the input first).
pub fn apply_script(g: &Graph, moves: &[MoveSpec]) -> Result<Vec<Graph>, MoveError> {
    let mut graphs = vec![g.clone()];
    for m in moves {
        let next = m.apply(graphs.last().expect("nonempty"))?;
        graphs.push(next);
    }
    Ok(graphs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub k0_before: FgAbelianGroup,
    pub k0_after: FgAbelianGroup,
    #[serde(serialize_with = "crate::json::int")]
    pub det_before: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub det_after: BigInt,
    pub groups_equal: bool,
    pub dets_equal: bool,
}

impl InvariantCheck {
    pub fn preserved(&self) -> bool {
        self.groups_equal && self.dets_equal
    }
}

/// Applies `m` and compares coker(I - A) and det(I - A) before and after.
pub fn invariants_preserved(g: &Graph, m: &MoveSpec) -> Result<(Graph, InvariantCheck), MoveError> {
    let after = m.apply(g)?;
    let check = compare_invariants(g, &after)?;
    Ok((after, check))
}

pub fn compare_invariants(g: &Graph, h: &Graph) -> Result<InvariantCheck, MoveError> {
    let (k0_before, k0_after) = (k0(g)?, k0(h)?);
    let (det_before, det_after) = (det_i_minus_a(g)?, det_i_minus_a(h)?);
    Ok(InvariantCheck {
        groups_equal: group_iso(&k0_before, &k0_after),
        dets_equal: det_before == det_after,
        k0_before,
        k0_after,
        det_before,
        det_after,
    })
}
