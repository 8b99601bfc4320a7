use lpa_core::graph::parse_graph;
use lpa_core::symbolic::{load_fixture, verify_dagger, LpaContext, LpaMatrix};
use lpa_core::Field;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn both_printed_sets_satisfy_the_relations() {
    for name in ["dagger_set1_d3_n5.txt", "dagger_set2_d3_n5.txt"] {
        let f = load_fixture(&fixture(name)).unwrap();
        assert_eq!((f.xs.len(), f.ys.len()), (5, 5));
        let report = verify_dagger(&f.xs, &f.ys).unwrap();
        assert_eq!(report.to_string(), "all 26 relation checks pass", "{name}");
    }
}

#[test]
fn relations_hold_in_prime_characteristic() {
    let text = fixture("dagger_set2_d3_n5.txt") + "field 7\n";
    let f = load_fixture(&text).unwrap();
    assert_eq!(f.context.field(), Field::Prime(7));
    assert!(verify_dagger(&f.xs, &f.ys).unwrap().holds());
}

#[test]
fn duals_are_star_transposes() {
    for name in ["dagger_set1_d3_n5.txt", "dagger_set2_d3_n5.txt"] {
        let f = load_fixture(&fixture(name)).unwrap();
        for (x, y) in f.xs.iter().zip(&f.ys) {
            assert_eq!(&y.star(), x);
        }
    }
}

/// Reading the symbols the other way round (x_k = e_k, y_k = e_k*, with the printed x matrices
/// as X) breaks the relations: the (1,1) entry of Y1·X1 is y1x1 + y2x2 + y3x3 = 3.
#[test]
fn swapped_reading_fails() {
    let text = fixture("dagger_set1_d3_n5.txt")
        .lines()
        .map(|l| match l.strip_prefix("let ") {
            Some(rest) if rest.starts_with('x') => format!("let {}", rest.replace('*', "")),
            Some(rest) if rest.starts_with('y') => format!("let {rest}*"),
            _ => l.replace("Y", "T").replace("X", "Y").replace("T", "X"),
        })
        .collect::<Vec<_>>()
        .join("\n");
    let f = load_fixture(&text).unwrap();
    let report = verify_dagger(&f.xs, &f.ys).unwrap();
    assert!(!report.holds());
    let first = report.first_failure.unwrap();
    assert!(first.starts_with("Y1·X1 = I: entry (1, 1) is 3*v"), "{first}");
}

#[test]
fn single_vertex_lists() {
    for n in 2..5 {
        let mut text = String::from("vertex v\n");
        for k in 1..=n {
            text += &format!("edge e{k} v v\n");
        }
        let ctx = LpaContext::new(parse_graph(&text).unwrap(), Field::Rationals).unwrap();
        let xs: Vec<LpaMatrix> = (0..n)
            .map(|e| LpaMatrix::from_rows(vec![vec![lpa_core::symbolic::LpaElement::edge(&ctx, e)]]).unwrap())
            .collect();
        let ys: Vec<LpaMatrix> = xs.iter().map(LpaMatrix::star).collect();
        let report = verify_dagger(&xs, &ys).unwrap();
        assert!(report.holds(), "R_{n}");
    }
}
