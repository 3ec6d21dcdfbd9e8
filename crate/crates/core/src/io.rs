//! Graph file formats: DIMACS clique format and plain edge lists.

use std::fmt::Write as _;

use crate::graph::{Graph, GraphError};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("missing problem line \"p edge N M\"")]
    MissingHeader,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} {token:?}")))
}

/// Validates one edge against `n` without building the graph yet, so errors
/// carry the offending line number.
fn check_edge(n: usize, u: usize, v: usize, line: usize) -> Result<(), ParseError> {
    Graph::from_edges(n, &[(u, v)])
        .map(|_| ())
        .map_err(|source| ParseError::Graph { line, source })
}

/// Reads DIMACS clique format: `c` comments, `p edge N M`, `e u v` with
/// 1-based vertices. The edge count in the header is not enforced.
pub fn read_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                match tokens.next() {
                    Some("edge" | "col") => {}
                    other => {
                        return Err(syntax(line, format!("unsupported problem type {other:?}")))
                    }
                }
                n = Some(number(tokens.next(), line, "vertex count")?);
                number(tokens.next(), line, "edge count")?;
            }
            Some("e") => {
                let n = n.ok_or(ParseError::MissingHeader)?;
                let u = number(tokens.next(), line, "vertex")?;
                let v = number(tokens.next(), line, "vertex")?;
                if u == 0 || v == 0 {
                    return Err(syntax(line, "DIMACS vertices are 1-based"));
                }
                check_edge(n, u - 1, v - 1, line)?;
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(syntax(line, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or(ParseError::MissingHeader)?;
    Ok(Graph::from_edges(n, &edges).expect("edges validated while parsing"))
}

/// Reads a 0-based edge list: one `u v` per line, `#` comments, and an
/// optional `n N` header fixing the vertex count (otherwise max label + 1).
pub fn read_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            None => continue,
            Some("n") => {
                if n.is_some() {
                    return Err(syntax(line, "duplicate \"n\" header"));
                }
                n = Some(number(tokens.next(), line, "vertex count")?);
            }
            first => {
                let u = number(first, line, "vertex")?;
                let v = number(tokens.next(), line, "vertex")?;
                if u == v {
                    return Err(ParseError::Graph {
                        line,
                        source: GraphError::SelfLoop { v },
                    });
                }
                edges.push((u, v, line));
            }
        }
        if tokens.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let n = n.unwrap_or_else(|| {
        edges
            .iter()
            .map(|&(u, v, _)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
    });
    for &(u, v, line) in &edges {
        check_edge(n, u, v, line)?;
    }
    let pairs: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    Ok(Graph::from_edges(n, &pairs).expect("edges validated while parsing"))
}

/// Writes an edge list with an `n N` header, so isolated vertices survive.
/// Labels are written as-is.
pub fn write_edge_list(g: &Graph) -> String {
    let n = g.labels().last().map_or(0, |&l| l + 1);
    let mut out = format!("n {n}\n");
    for (u, v) in g.label_edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_dimacs(g: &Graph) -> String {
    let n = g.labels().last().map_or(0, |&l| l + 1);
    let mut out = format!("p edge {n} {}\n", g.edge_count());
    for (u, v) in g.label_edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}
