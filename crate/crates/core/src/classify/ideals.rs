use crate::graph::{
    breaking_vertices, cycles, enumerate_hereditary_saturated_with_guard, Cycle, Graph, GraphError,
    VertexSet, DEFAULT_GUARD,
};

use super::ClassifyError;

/// (H, S) with H hereditary saturated and S ⊆ B_H; corresponds to the graded ideal I(H ∪ S^H).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdealPair {
    pub h: VertexSet,
    pub s: VertexSet,
}

/// The cycles c with Vert(c) ∩ H = ∅ whose exits all range into H. Each carries a polynomial
/// parameter p_c, so a nonempty list means infinitely many nongraded ideals over H.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFamily {
    pub h: VertexSet,
    pub cycles: Vec<Cycle>,
}

pub fn graded_ideals(g: &Graph) -> Result<Vec<GradedIdealPair>, ClassifyError> {
    graded_ideals_with_guard(g, DEFAULT_GUARD)
}

/// Every admissible pair, ordered by H as in the lattice enumeration and then by S.
pub fn graded_ideals_with_guard(g: &Graph, guard: usize) -> Result<Vec<GradedIdealPair>, ClassifyError> {
    let mut out = Vec::new();
    for h in enumerate_hereditary_saturated_with_guard(g, guard)? {
        let b: Vec<usize> = breaking_vertices(g, &h)?.into_iter().collect();
        if b.len() > guard {
            return Err(GraphError::GuardExceeded { n: b.len(), guard }.into());
        }
        let mut subsets: Vec<VertexSet> =
            (0u64..1 << b.len()).map(|mask| b.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()).collect();
        subsets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        out.extend(subsets.into_iter().map(|s| GradedIdealPair { h: h.clone(), s }));
    }
    Ok(out)
}

pub fn ideal_families(g: &Graph) -> Result<Vec<IdealFamily>, ClassifyError> {
    ideal_families_with_guard(g, DEFAULT_GUARD)
}

pub fn ideal_families_with_guard(g: &Graph, guard: usize) -> Result<Vec<IdealFamily>, ClassifyError> {
    if !g.is_row_finite() {
        return Err(ClassifyError::InfiniteEmitters);
    }
    let all = cycles(g);
    let mut out = Vec::new();
    for h in enumerate_hereditary_saturated_with_guard(g, guard)? {
        let chosen = all
            .iter()
            .filter(|c| {
                let verts = c.vertex_set(g);
                verts.is_disjoint(&h)
                    && verts.iter().all(|&v| {
                        g.out_edges(v)
                            .iter()
                            .all(|&e| c.edges.contains(&e) || h.contains(&g.range(e)))
                    })
            })
            .cloned()
            .collect();
        out.push(IdealFamily { h, cycles: chosen });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{families, parse_graph};

    fn ids(g: &Graph, s: &VertexSet) -> Vec<String> {
        g.vertex_set_ids(s)
    }

    #[test]
    fn toeplitz_pairs() {
        let g = families::toeplitz();
        let pairs = graded_ideals(&g).unwrap();
        let hs: Vec<Vec<String>> = pairs.iter().map(|p| ids(&g, &p.h)).collect();
        assert_eq!(hs, vec![vec![], vec!["w".to_string()], vec!["v".to_string(), "w".to_string()]]);
        assert!(pairs.iter().all(|p| p.s.is_empty()));
        assert_eq!(graded_ideals(&families::rose(2)).unwrap().len(), 2);
    }

    #[test]
    fn breaking_vertex_pairs() {
        let g = parse_graph("vertex v\nvertex w1\nvertex w2\nomega v w1\nedge a v w2\nedge b v w2").unwrap();
        let h = g.vertex_set(&["w1"]).unwrap();
        let v = g.vertex_set(&["v"]).unwrap();
        let pairs = graded_ideals(&g).unwrap();
        assert!(pairs.contains(&GradedIdealPair { h: h.clone(), s: VertexSet::new() }));
        assert!(pairs.contains(&GradedIdealPair { h, s: v }));
    }

    #[test]
    fn families_over_h() {
        let g = families::toeplitz();
        let fams = ideal_families(&g).unwrap();
        let w = g.vertex_set(&["w"]).unwrap();
        let f = fams.iter().find(|f| f.h == w).unwrap();
        assert_eq!(f.cycles.len(), 1);
        assert_eq!(f.cycles[0].edge_ids(&g), ["e"]);
        assert!(ideal_families(&families::rose(2)).unwrap().iter().all(|f| f.cycles.is_empty()));
        assert!(ideal_families(&families::a_n(3)).unwrap().iter().all(|f| f.cycles.is_empty()));
        // R_1 over H = ∅: the loop has no exits at all.
        let fams = ideal_families(&families::rose(1)).unwrap();
        assert_eq!(fams[0].cycles.len(), 1);
    }
}
