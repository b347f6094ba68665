use std::fmt::Write;

use super::{Graph, LabeledGraph};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| perr(line, format!("expected {what}, found `{tok}`")))
}

/// Parses the edge-list format:
///
/// ```text
/// n m
/// u v          (m lines, 0-based)
/// vlabel NAME v1 v2 ...
/// elabel NAME u v
/// ```
///
/// `#` starts a comment; blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<LabeledGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| perr(1, "missing `n m` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(perr(hline, "header must be `n m`"));
    }
    let n = parse_usize(toks[0], hline, "vertex count")?;
    let m = parse_usize(toks[1], hline, "edge count")?;

    let mut graph = Graph::empty(n);
    let mut seen_edges = 0;
    let mut labeled: Option<LabeledGraph> = None;

    for (line, content) in lines {
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "vlabel" => {
                let lg = labeled.get_or_insert_with(|| LabeledGraph::new(graph.clone()));
                if toks.len() < 2 {
                    return Err(perr(line, "vlabel needs a name"));
                }
                lg.vertex_labels.entry(toks[1].to_string()).or_default();
                for t in &toks[2..] {
                    let v = parse_usize(t, line, "vertex")?;
                    lg.add_vertex_label(toks[1], v)
                        .map_err(|_| perr(line, format!("vertex {v} out of range")))?;
                }
            }
            "elabel" => {
                let lg = labeled.get_or_insert_with(|| LabeledGraph::new(graph.clone()));
                if toks.len() != 4 {
                    return Err(perr(line, "elabel must be `elabel NAME u v`"));
                }
                let u = parse_usize(toks[2], line, "vertex")?;
                let v = parse_usize(toks[3], line, "vertex")?;
                lg.add_edge_label(toks[1], u, v)
                    .map_err(|_| perr(line, format!("labeled edge {u}-{v} is not in the graph")))?;
            }
            _ => {
                if labeled.is_some() {
                    return Err(perr(line, "edge line after label lines"));
                }
                if toks.len() != 2 {
                    return Err(perr(line, "edge line must be `u v`"));
                }
                let u = parse_usize(toks[0], line, "vertex")?;
                let v = parse_usize(toks[1], line, "vertex")?;
                if u >= n || v >= n {
                    return Err(perr(line, format!("vertex out of range 0..{n}")));
                }
                if u == v {
                    return Err(perr(line, format!("self-loop at vertex {u}")));
                }
                if graph.has_edge(u, v) {
                    return Err(perr(line, format!("duplicate edge {u}-{v}")));
                }
                graph.add_edge(u, v)?;
                seen_edges += 1;
            }
        }
    }
    if seen_edges != m {
        return Err(perr(
            hline,
            format!("header declares {m} edges, found {seen_edges}"),
        ));
    }
    Ok(labeled.unwrap_or_else(|| LabeledGraph::new(graph)))
}

/// Writes the edge-list format with edges and labels in sorted order.
pub fn serialize_edge_list(g: &LabeledGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.base.n(), g.base.num_edges()).unwrap();
    for (u, v) in g.base.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    for (name, set) in &g.vertex_labels {
        write!(out, "vlabel {name}").unwrap();
        for v in set {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    for (name, set) in &g.edge_labels {
        for (u, v) in set {
            writeln!(out, "elabel {name} {u} {v}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family};

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn path_and_isolated_vertex() {
        let g = parse_edge_list("3 2\n0 1\n1 2").unwrap().base;
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let g = parse_edge_list("1 0").unwrap().base;
        assert_eq!((g.n(), g.num_edges()), (1, 0));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(parse_edge_list("2 1\n0 0").unwrap_err()), 2);
        assert_eq!(line_of(parse_edge_list("2 2\n0 1\n1 0").unwrap_err()), 3);
        assert_eq!(line_of(parse_edge_list("2 1\n# c\n0 5").unwrap_err()), 3);
        assert_eq!(line_of(parse_edge_list("2 1\n0 x").unwrap_err()), 2);
        assert_eq!(line_of(parse_edge_list("3 2\n0 1").unwrap_err()), 1);
    }

    #[test]
    fn comments_and_labels() {
        let text = "# triangle\n3 2 # header\n0 1\n1 2\nvlabel red 0 2\nelabel a 1 2\n";
        let g = parse_edge_list(text).unwrap();
        assert!(g.has_vertex_label("red", 2));
        assert!(g.has_edge_label("a", 2, 1));
        assert!(parse_edge_list("3 1\n0 1\nelabel a 1 2").is_err());
    }

    #[test]
    fn roundtrip_corpus() {
        let families = [
            (Family::Path, vec![6]),
            (Family::Cycle, vec![5]),
            (Family::Complete, vec![4]),
            (Family::Star, vec![5]),
            (Family::Grid, vec![3, 4]),
            (Family::SubdividedClique, vec![4]),
            (Family::Petersen, vec![]),
            (Family::RandomPlanar, vec![12, 7]),
        ];
        for (f, p) in families {
            let mut g = LabeledGraph::new(generate_family(f, &p).unwrap());
            g.add_vertex_label("s", 0).unwrap();
            let back = parse_edge_list(&serialize_edge_list(&g)).unwrap();
            assert_eq!(back, g, "{f:?}");
        }
    }
}
