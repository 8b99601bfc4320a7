mod common;

use lpa_core::classify::acyclic_structure;
use lpa_core::monoid::{equal_bounded, presentation, Equality, MonoidElement};
use lpa_core::Graph;
use proptest::prelude::*;

/// Image of a vertex in the free monoid on sinks: the number of paths to each sink.
fn sink_image(g: &Graph, x: &MonoidElement) -> Vec<u32> {
    let n = g.vertex_count();
    fn paths(g: &Graph, v: usize, memo: &mut Vec<Option<Vec<u32>>>) -> Vec<u32> {
        if let Some(p) = &memo[v] {
            return p.clone();
        }
        let mut out = vec![0; g.vertex_count()];
        if g.out_edges(v).is_empty() {
            out[v] = 1;
        }
        for &e in g.out_edges(v) {
            for (o, k) in out.iter_mut().zip(paths(g, g.range(e), memo)) {
                *o += k;
            }
        }
        memo[v] = Some(out.clone());
        out
    }
    let mut memo = vec![None; n];
    let mut total = vec![0; n];
    for v in 0..n {
        let p = paths(g, v, &mut memo);
        for (t, k) in total.iter_mut().zip(p) {
            *t += k * x.0[v];
        }
    }
    total
}

fn element(n: usize) -> impl Strategy<Value = MonoidElement> {
    proptest::collection::vec(0u32..=2, n).prop_map(MonoidElement)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn acyclic_word_problem_matches_sink_counts(g in common::acyclic_graph(4, 2), seeds in proptest::collection::vec(0u32..=2, 8)) {
        let n = g.vertex_count();
        let x = MonoidElement(seeds[..n].to_vec());
        let y = MonoidElement(seeds[4..4 + n].to_vec());
        let (ix, iy) = (sink_image(&g, &x), sink_image(&g, &y));
        let bound = ix.iter().sum::<u32>().max(iy.iter().sum()).max(x.size()).max(y.size());
        let verdict = equal_bounded(&presentation(&g), &x, &y, bound).unwrap();
        prop_assert_eq!(verdict == Equality::Equal, ix == iy);
    }

    #[test]
    fn sink_image_of_unit_matches_matrix_sizes(g in common::acyclic_graph(4, 2)) {
        let n = g.vertex_count();
        let image = sink_image(&g, &MonoidElement(vec![1; n]));
        let blocks = acyclic_structure(&g).unwrap();
        let total: u64 = image.iter().map(|&k| k as u64).sum();
        let from_blocks: num_bigint::BigInt = blocks.iter().map(|b| b.size.clone()).sum();
        prop_assert_eq!(from_blocks, num_bigint::BigInt::from(total));
    }

    #[test]
    fn equality_is_symmetric(g in common::graph(3, 2), x in element(3), y in element(3)) {
        let n = g.vertex_count();
        let p = presentation(&g);
        let (x, y) = (MonoidElement(x.0[..n].to_vec()), MonoidElement(y.0[..n].to_vec()));
        let bound = x.size().max(y.size()) + 3;
        prop_assert_eq!(equal_bounded(&p, &x, &y, bound).unwrap(), equal_bounded(&p, &y, &x, bound).unwrap());
    }
}
