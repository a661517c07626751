//! Plain-text edge-list format.
//!
//! ```text
//! # comment
//! n m
//! u v          (m edge lines)
//! loop u w     (optional, weight w)
//! root r       (final line; defaults to n when absent)
//! ```

use std::fmt::Write;

use super::{FiniteGraph, RootedGraph};
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("cannot parse {what} from {tok:?}")))
}

pub fn parse_graph(text: &str) -> Result<RootedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    let n: usize = parse_field(toks.next(), header_line, "vertex count")?;
    let m: usize = parse_field(toks.next(), header_line, "edge count")?;
    if toks.next().is_some() {
        return Err(parse_err(header_line, "header must be \"n m\""));
    }
    if n == 0 {
        return Err(parse_err(header_line, "vertex count must be positive"));
    }

    let in_range = |u: usize, line: usize| -> Result<usize> {
        if u == 0 || u > n {
            Err(parse_err(line, format!("vertex {u} outside 1..={n}")))
        } else {
            Ok(u)
        }
    };

    let mut edges = Vec::with_capacity(m);
    let mut loops = Vec::new();
    let mut root = None;
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if root.is_some() {
            return Err(parse_err(line, "content after the root line"));
        }
        let mut toks = content.split_whitespace();
        match toks.clone().next() {
            Some("loop") => {
                toks.next();
                let u = in_range(parse_field(toks.next(), line, "loop vertex")?, line)?;
                let w: f64 = parse_field(toks.next(), line, "loop weight")?;
                if !w.is_finite() {
                    return Err(parse_err(line, "loop weight must be finite"));
                }
                if loops.iter().any(|&(v, _)| v == u) {
                    return Err(parse_err(line, format!("duplicate loop at vertex {u}")));
                }
                loops.push((u, w));
            }
            Some("root") => {
                toks.next();
                let r = in_range(parse_field(toks.next(), line, "root vertex")?, line)?;
                if edges.len() != m {
                    return Err(parse_err(
                        line,
                        format!("expected {m} edges before the root line, found {}", edges.len()),
                    ));
                }
                root = Some(r);
            }
            _ => {
                let u = in_range(parse_field(toks.next(), line, "edge endpoint")?, line)?;
                let v = in_range(parse_field(toks.next(), line, "edge endpoint")?, line)?;
                if u == v {
                    return Err(parse_err(line, format!("self-edge ({u}, {v})")));
                }
                if edges.len() == m {
                    return Err(parse_err(line, format!("more than {m} edges")));
                }
                let key = (u.min(v), u.max(v));
                if edges.iter().any(|&(a, b): &(usize, usize)| (a.min(b), a.max(b)) == key) {
                    return Err(parse_err(line, format!("duplicate edge ({u}, {v})")));
                }
                edges.push((u, v));
            }
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "unexpected trailing tokens"));
        }
    }
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }

    let graph = FiniteGraph::new(n, edges, loops).map_err(|e| match e {
        Error::InvalidGraph(msg) => parse_err(header_line, msg),
        other => other,
    })?;
    RootedGraph::new(graph, root.unwrap_or(n))
}

pub fn serialize_graph(rooted: &RootedGraph) -> String {
    let g = rooted.graph();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.order(), g.edges().len());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    for (u, w) in g.loops() {
        let _ = writeln!(out, "loop {u} {w}");
    }
    let _ = writeln!(out, "root {}", rooted.root());
    out
}
