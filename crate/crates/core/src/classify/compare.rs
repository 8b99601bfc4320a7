use num_bigint::BigInt;
use serde::Serialize;

use super::is_purely_infinite_simple;
use crate::graph::{vertex_classes, Graph};
use crate::ktheory::{det_i_minus_a, group_iso, k0, pointed_iso_exists, FgAbelianGroup, PointedIso};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Isomorphic,
    MoritaEquivalent,
    NotMoritaEquivalent,
    /// Groups agree and the determinants differ: the algebraic Kirchberg-Phillips question.
    OpenKP,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub verdict: Verdict,
    pub k0_e: Option<FgAbelianGroup>,
    pub k0_f: Option<FgAbelianGroup>,
    #[serde(serialize_with = "opt_int")]
    pub det_e: Option<BigInt>,
    #[serde(serialize_with = "opt_int")]
    pub det_f: Option<BigInt>,
    pub pointed_iso: Option<PointedIso>,
}

fn opt_int<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => crate::json::int(x, s),
        None => s.serialize_none(),
    }
}

/// Compares two purely infinite simple Leavitt path algebras through (K0, [1], det(I - A)).
pub fn compare(e: &Graph, f: &Graph) -> Comparison {
    let mut out = Comparison {
        verdict: Verdict::Inapplicable,
        k0_e: k0(e).ok(),
        k0_f: k0(f).ok(),
        det_e: det_i_minus_a(e).ok(),
        det_f: det_i_minus_a(f).ok(),
        pointed_iso: None,
    };
    if !is_purely_infinite_simple(e) || !is_purely_infinite_simple(f) {
        return out;
    }
    let (Some(ge), Some(gf), Some(de), Some(df)) = (&out.k0_e, &out.k0_f, &out.det_e, &out.det_f) else {
        return out;
    };
    if !group_iso(ge, gf) {
        out.verdict = Verdict::NotMoritaEquivalent;
        return out;
    }
    let pointed = pointed_iso_exists(ge, gf);
    out.verdict = if de != df {
        Verdict::OpenKP
    } else if pointed == PointedIso::Yes {
        Verdict::Isomorphic
    } else {
        Verdict::MoritaEquivalent
    };
    out.pointed_iso = Some(pointed);
    out
}

/// |sinks| + |infinite emitters|.
pub fn singular_count(g: &Graph) -> usize {
    vertex_classes(g).singular().len()
}
