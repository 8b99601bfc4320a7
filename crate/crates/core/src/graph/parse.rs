use super::{Graph, GraphError};

pub(crate) fn strip_comment(line: &str) -> &str {
    // `#` starts a comment only at the beginning of a token, so split names like `v#1` survive.
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'#' && (i == 0 || bytes[i - 1].is_ascii_whitespace()) {
            return &line[..i];
        }
    }
    line
}

/// Parses the line-oriented graph format:
/// `vertex <id>`, `edge <id> <src> <dst>`, `omega <src> <dst>`, `#` comments.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut g = Graph::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = strip_comment(raw).trim().trim_end_matches(';').trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let err = |e: GraphError| GraphError::Parse { line, msg: e.to_string() };
        match toks[0] {
            "vertex" => {
                if toks.len() != 2 {
                    return Err(GraphError::Parse { line, msg: "expected `vertex <id>`".into() });
                }
                g.add_vertex(toks[1]).map_err(err)?;
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(GraphError::Parse {
                        line,
                        msg: "expected `edge <id> <src> <dst>`".into(),
                    });
                }
                g.add_edge(toks[1], toks[2], toks[3]).map_err(err)?;
            }
            "omega" => {
                if toks.len() != 3 {
                    return Err(GraphError::Parse {
                        line,
                        msg: "malformed omega declaration, expected `omega <src> <dst>`".into(),
                    });
                }
                g.add_omega(toks[1], toks[2]).map_err(err)?;
            }
            other => {
                return Err(GraphError::Parse { line, msg: format!("unknown directive `{other}`") });
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rose_and_comments() {
        let g = parse_graph("# rose\nvertex v\nedge e1 v v # first\nedge e2 v v\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn single_vertex() {
        let g = parse_graph("vertex v;").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn split_names_are_not_comments() {
        let g = parse_graph("vertex v#1\nvertex v#2\nedge e#1 v#1 v#2\n").unwrap();
        assert_eq!(g.vertex_id(1), "v#2");
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_graph("vertex v\nvertex v\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 2, .. }), "{e}");
        let e = parse_graph("vertex v\nedge e v w\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: unknown vertex `w`");
        let e = parse_graph("vertex v\nomega v\n").unwrap_err();
        assert!(e.to_string().starts_with("line 2: malformed omega"));
        let e = parse_graph("vertex v\nedge e v v\nedge e v v\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 3, .. }));
    }

    #[test]
    fn round_trips_through_display() {
        let text = "vertex v\nvertex w\nedge e v v\nedge f v w\nomega w v\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.to_string(), text);
        assert_eq!(parse_graph(&g.to_string()).unwrap(), g);
    }
}
