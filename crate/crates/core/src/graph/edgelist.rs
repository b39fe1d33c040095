//! Plain-text edge lists: a header line `n m` followed by `m` lines `u v`.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
    tok.parse()
        .map_err(|_| Error::Parse { line, msg: format!("bad {what} `{tok}`") })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "empty edge list".into() })?;
    let mut toks = header.split_whitespace();
    let n = parse_usize(toks.next(), hline, "vertex count")?;
    let m = parse_usize(toks.next(), hline, "edge count")?;
    if toks.next().is_some() {
        return Err(Error::Parse { line: hline, msg: "header must be `n m`".into() });
    }

    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let mut toks = l.split_whitespace();
        let u = parse_usize(toks.next(), line, "endpoint")?;
        let v = parse_usize(toks.next(), line, "endpoint")?;
        if toks.next().is_some() {
            return Err(Error::Parse { line, msg: "edge line must be `u v`".into() });
        }
        if u == v {
            return Err(Error::Parse { line, msg: format!("self-loop at {u}") });
        }
        edges.push((u.min(v), u.max(v)));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    let mut sorted = edges.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Parse {
            line: hline,
            msg: format!("duplicate edge {} {}", w[0].0, w[0].1),
        });
    }
    Graph::from_edges(n, edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_tree, cycle};

    #[test]
    fn round_trip() {
        for g in [cycle(7).unwrap(), complete_tree(3, 2).unwrap()] {
            assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        }
    }

    #[test]
    fn writer_sorts() {
        let g = Graph::from_edges(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(write_edge_list(&g), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("2 1\n0 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("2 2\n0 1\n1 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 1\n0 1\n"), Err(Error::InvalidGraph(_))));
        assert!(matches!(parse_edge_list("2 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("2 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_edge_list("# K2\n2 1\n\n0 1\n").is_ok());
    }
}
