//! Text format for orthogonality graphs.
//!
//! ```text
//! c comment
//! p ograph <n> <m>
//! e <u> <v>        (1-based, m lines)
//! l <v> <label>    (optional)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_ograph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0usize;
    let mut seen = HashSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(err("duplicate `p` header".into()));
                }
                if tokens.next() != Some("ograph") {
                    return Err(err("expected `p ograph <n> <m>`".into()));
                }
                let n = parse_count(tokens.next(), "vertex count").map_err(err)?;
                declared_edges = parse_count(tokens.next(), "edge count").map_err(err)?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens after header".into()));
                }
                graph = Some(Graph::empty(n).map_err(|e| err(e.to_string()))?);
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| err("edge before `p` header".into()))?;
                let n = g.n();
                let u = parse_vertex(tokens.next(), n).map_err(err)?;
                let v = parse_vertex(tokens.next(), n).map_err(err)?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens after edge".into()));
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {}", u + 1)));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(err(format!("duplicate edge {} {}", u + 1, v + 1)));
                }
                g.add_edge(u, v).map_err(|e| err(e.to_string()))?;
            }
            Some("l") => {
                let g = graph.as_mut().ok_or_else(|| err("label before `p` header".into()))?;
                let n = g.n();
                let v = parse_vertex(tokens.next(), n).map_err(err)?;
                let label = tokens.collect::<Vec<_>>().join(" ");
                if label.is_empty() {
                    return Err(err("empty label".into()));
                }
                g.set_label(v, label).map_err(|e| err(e.to_string()))?;
            }
            Some(other) => return Err(err(format!("unknown line type `{other}`"))),
            None => unreachable!("blank lines skipped"),
        }
    }

    let g = graph.ok_or(Error::Parse { line: last_line.max(1), message: "missing `p ograph` header".into() })?;
    if seen.len() != declared_edges {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header declares {declared_edges} edges, found {}", seen.len()),
        });
    }
    Ok(g)
}

fn parse_count(token: Option<&str>, what: &str) -> std::result::Result<usize, String> {
    let t = token.ok_or_else(|| format!("missing {what}"))?;
    t.parse().map_err(|_| format!("invalid {what} `{t}`"))
}

fn parse_vertex(token: Option<&str>, n: usize) -> std::result::Result<usize, String> {
    let t = token.ok_or("missing vertex")?;
    let v: usize = t.parse().map_err(|_| format!("invalid vertex `{t}`"))?;
    if v == 0 || v > n {
        return Err(format!("vertex {v} outside 1..={n}"));
    }
    Ok(v - 1)
}

pub fn read_ograph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_ograph(&text)
}

pub fn write_ograph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p ograph {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for v in 0..g.n() {
        if let Some(label) = g.label(v) {
            writeln!(out, "l {} {}", v + 1, label).unwrap();
        }
    }
    out
}
