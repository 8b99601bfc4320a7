use std::collections::BTreeMap;

use super::{Graph, GraphError, Multiplicity};

/// Largest vertex count accepted by canonical labeling.
pub const ISO_GUARD: usize = 8;

/// Adjacency multiplicities under a canonical vertex order. Equal forms mean isomorphic graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub entries: Vec<u32>,
}

fn encode(m: Multiplicity) -> u32 {
    match m {
        Multiplicity::Finite(k) => k as u32,
        Multiplicity::Omega => u32::MAX,
    }
}

fn refine(table: &[Vec<u32>]) -> Vec<usize> {
    let n = table.len();
    let mut color = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<(u32, usize)>, Vec<(u32, usize)>)> = (0..n)
            .map(|v| {
                let mut out: Vec<(u32, usize)> = (0..n).map(|w| (table[v][w], color[w])).collect();
                let mut inn: Vec<(u32, usize)> = (0..n).map(|w| (table[w][v], color[w])).collect();
                out.sort();
                inn.sort();
                (color[v], out, inn)
            })
            .collect();
        let ranks: BTreeMap<_, usize> = {
            let mut sorted = sigs.clone();
            sorted.sort();
            sorted.dedup();
            sorted.into_iter().enumerate().map(|(i, s)| (s, i)).collect()
        };
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let count = ranks.len();
        color = next;
        if count == classes {
            return color;
        }
        classes = count;
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let n = g.vertex_count();
    if n > ISO_GUARD {
        return Err(GraphError::GuardExceeded { n, guard: ISO_GUARD });
    }
    let table: Vec<Vec<u32>> =
        g.multiplicity_table().into_iter().map(|row| row.into_iter().map(encode).collect()).collect();
    let color = refine(&table);
    let mut slots: Vec<usize> = color.clone();
    slots.sort();

    let mut best: Option<Vec<u32>> = None;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn search(
        table: &[Vec<u32>],
        color: &[usize],
        slots: &[usize],
        order: &mut Vec<usize>,
        used: &mut Vec<bool>,
        best: &mut Option<Vec<u32>>,
    ) {
        let n = table.len();
        if order.len() == n {
            let key: Vec<u32> =
                order.iter().flat_map(|&a| order.iter().map(move |&b| table[a][b])).collect();
            if best.as_ref().map_or(true, |b| key < *b) {
                *best = Some(key);
            }
            return;
        }
        let want = slots[order.len()];
        for v in 0..n {
            if !used[v] && color[v] == want {
                used[v] = true;
                order.push(v);
                search(table, color, slots, order, used, best);
                order.pop();
                used[v] = false;
            }
        }
    }

    search(&table, &color, &slots, &mut order, &mut used, &mut best);
    Ok(CanonicalForm { n, entries: best.unwrap_or_default() })
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.omega_pairs().len() != b.omega_pairs().len()
    {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::super::{families, parse_graph};
    use super::*;

    #[test]
    fn relabeling_preserves_form() {
        let g = parse_graph("vertex a\nvertex b\nvertex c\nedge x a b\nedge y b c\nedge z c c\n").unwrap();
        let h = parse_graph("vertex q\nvertex p\nvertex r\nedge 1 r r\nedge 2 q r\nedge 3 p q\n").unwrap();
        assert!(is_isomorphic(&g, &h).unwrap());
        assert!(!is_isomorphic(&g, &families::a_n(3)).unwrap());
    }

    #[test]
    fn e2_splice_is_e4() {
        let s = families::e2().cuntz_splice("v").unwrap();
        assert!(is_isomorphic(&s, &families::e4()).unwrap());
    }

    #[test]
    fn guard() {
        assert!(canonical_form(&families::a_n(9)).is_err());
    }
}
