//! Named graphs used throughout the theory.

use super::Graph;

fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    let mut g = Graph::new();
    for v in vertices {
        g.add_vertex(v).expect("fixed family vertex");
    }
    for (id, s, r) in edges {
        g.add_edge(id, s, r).expect("fixed family edge");
    }
    g
}

/// The rose with `n` petals: one vertex `v`, loops `e1..en`.
pub fn rose(n: usize) -> Graph {
    let mut g = Graph::new();
    g.add_vertex("v").unwrap();
    for i in 1..=n {
        g.add_edge(&format!("e{i}"), "v", "v").unwrap();
    }
    g
}

/// The oriented line v1 -> v2 -> ... -> vn.
pub fn a_n(n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 1..=n {
        g.add_vertex(&format!("v{i}")).unwrap();
    }
    for i in 1..n {
        g.add_edge(&format!("e{i}"), &format!("v{i}"), &format!("v{}", i + 1)).unwrap();
    }
    g
}

/// n-1 sources w1..w(n-1), each with one edge into the sink v.
pub fn b_n(n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 1..n {
        g.add_vertex(&format!("w{i}")).unwrap();
    }
    g.add_vertex("v").unwrap();
    for i in 1..n {
        g.add_edge(&format!("e{i}"), &format!("w{i}"), "v").unwrap();
    }
    g
}

/// Two vertices with n-1 parallel edges v -> w.
pub fn d_n(n: usize) -> Graph {
    let mut g = Graph::new();
    g.add_vertex("v").unwrap();
    g.add_vertex("w").unwrap();
    for i in 1..n {
        g.add_edge(&format!("e{i}"), "v", "w").unwrap();
    }
    g
}

/// Loop e at v and one edge f: v -> w.
pub fn toeplitz() -> Graph {
    build(&["v", "w"], &[("e", "v", "v"), ("f", "v", "w")])
}

/// Two vertices, each with a loop, joined in both directions.
pub fn e2() -> Graph {
    build(&["u", "v"], &[("uu", "u", "u"), ("uv", "u", "v"), ("vv", "v", "v"), ("vu", "v", "u")])
}

/// Four vertices in a line, each with a loop, adjacent ones joined in both directions.
pub fn e4() -> Graph {
    build(
        &["u", "v", "w", "x"],
        &[
            ("uu", "u", "u"),
            ("uv", "u", "v"),
            ("vv", "v", "v"),
            ("vw", "v", "w"),
            ("vu", "v", "u"),
            ("ww", "w", "w"),
            ("wx", "w", "x"),
            ("wv", "w", "v"),
            ("xx", "x", "x"),
            ("xw", "x", "w"),
        ],
    )
}

/// Three-vertex graph with K0 = Z/3 and det(I - A) = -3, whose algebra is isomorphic to L(1,4).
pub fn three_vertex_example() -> Graph {
    build(
        &["a", "b", "c"],
        &[
            ("ac", "a", "c"),
            ("ba", "b", "a"),
            ("bc", "b", "c"),
            ("cc", "c", "c"),
            ("cb", "c", "b"),
            ("ca", "c", "a"),
        ],
    )
}

/// Looks up a family graph by name, e.g. `R4`, `A3`, `toeplitz`, `E2`.
pub fn by_name(name: &str) -> Option<Graph> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "toeplitz" => return Some(toeplitz()),
        "e2" => return Some(e2()),
        "e4" => return Some(e4()),
        "three-vertex" => return Some(three_vertex_example()),
        _ => {}
    }
    if !lower.is_char_boundary(1) {
        return None;
    }
    let (head, tail) = lower.split_at(1);
    let n: usize = tail.parse().ok()?;
    match head {
        "r" if n >= 1 => Some(rose(n)),
        "a" if n >= 1 => Some(a_n(n)),
        "b" if n >= 2 => Some(b_n(n)),
        "d" if n >= 2 => Some(d_n(n)),
        _ => None,
    }
}
