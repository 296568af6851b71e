//! DIMACS edge-format graphs: `c` comments, one `p edge <n> <m>` header,
//! then `e <u> <v>` lines with 1-based endpoints.

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{ParseMode, Parsed};

pub fn parse_dimacs_graph(text: &str, mode: ParseMode) -> Result<Parsed<Graph>> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut listed = 0usize;
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "duplicate p line"));
                }
                if tokens.next() != Some("edge") {
                    return Err(Error::parse(lineno, "expected 'p edge <n> <m>'"));
                }
                let n = parse_usize(tokens.next(), lineno, "vertex count")?;
                let m = parse_usize(tokens.next(), lineno, "edge count")?;
                if tokens.next().is_some() {
                    return Err(Error::parse(lineno, "trailing tokens after p line"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header
                    .ok_or_else(|| Error::parse(lineno, "edge before the p line"))?;
                let u = parse_usize(tokens.next(), lineno, "edge endpoint")?;
                let v = parse_usize(tokens.next(), lineno, "edge endpoint")?;
                if tokens.next().is_some() {
                    return Err(Error::parse(lineno, "trailing tokens after edge"));
                }
                if u < 1 || u > n || v < 1 || v > n {
                    return Err(Error::parse(
                        lineno,
                        format!("edge endpoint out of range 1..={n}"),
                    ));
                }
                if u == v {
                    return Err(Error::parse(lineno, format!("self-loop at vertex {u}")));
                }
                listed += 1;
                edges.push((u, v));
            }
            Some(other) => {
                let msg = format!("unknown line type '{other}'");
                match mode {
                    ParseMode::Strict => return Err(Error::parse(lineno, msg)),
                    ParseMode::Lenient => warnings.push(format!("line {lineno}: {msg}")),
                }
            }
            None => unreachable!("blank lines are skipped"),
        }
    }

    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing p line"))?;
    if listed != m {
        let msg = format!("header says {m} edges but {listed} listed");
        match mode {
            ParseMode::Strict => return Err(Error::parse(0, msg)),
            ParseMode::Lenient => warnings.push(msg),
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    Ok(Parsed {
        value: graph,
        warnings,
    })
}

pub fn write_dimacs_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p edge {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

fn parse_usize(token: Option<&str>, lineno: usize, what: &str) -> Result<usize> {
    token
        .ok_or_else(|| Error::parse(lineno, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(lineno, format!("invalid {what}")))
}
