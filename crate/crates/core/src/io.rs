//! graph6, DIMACS edge format and JSON edge lists.
//!
//! All formats map onto 0-based vertices; DIMACS files are 1-based on disk.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("dimacs line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    Dimacs,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "dimacs" | "col" => Ok(Format::Dimacs),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// Guesses the format of a serialized graph from its first non-blank character.
pub fn sniff_format(text: &str) -> Format {
    let t = text.trim_start();
    if t.starts_with('{') {
        Format::Json
    } else if t.starts_with("p ") || t.starts_with("c") || t.starts_with("e ") {
        Format::Dimacs
    } else {
        Format::Graph6
    }
}

pub fn parse(text: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::Dimacs => parse_dimacs(text),
        Format::Json => parse_json(text),
    }
}

pub fn encode(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => encode_graph6(g),
        Format::Dimacs => encode_dimacs(g),
        Format::Json => encode_json(g),
    }
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // n <= MAX_VERTICES < 258048, so the 4-byte form always suffices
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adj(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let err = |m: &str| ParseError::Graph6(m.to_string());
    let t = text.trim();
    let t = t.strip_prefix(">>graph6<<").unwrap_or(t);
    let bytes = t.as_bytes();
    if bytes.is_empty() {
        return Err(err("empty input"));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6(format!(
            "byte {b:#04x} outside the graph6 range"
        )));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = if bytes[0] != 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(err("truncated size header"));
        }
        (
            six(bytes[1]) << 12 | six(bytes[2]) << 6 | six(bytes[3]),
            &bytes[4..],
        )
    } else {
        if bytes.len() < 8 {
            return Err(err("truncated size header"));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| acc << 6 | six(b));
        (n, &bytes[8..])
    };
    if n > MAX_VERTICES {
        return Err(ParseError::Graph(GraphError::TooLarge(n)));
    }
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() < needed {
        return Err(err("truncated adjacency bit stream"));
    }
    if body.len() > needed {
        return Err(err("trailing bytes after adjacency data"));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = six(body[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn encode_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let fail = |msg: String| ParseError::Dimacs { line, msg };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| fail(format!("`{s}` is not a non-negative integer")))
        };
        match toks.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(fail("duplicate problem line".into()));
                }
                if toks.len() != 4 || !matches!(toks[1], "edge" | "col") {
                    return Err(fail("expected `p edge <n> <m>`".into()));
                }
                int(toks[3])?;
                n = Some(int(toks[2])?);
            }
            Some("e") => {
                let Some(n) = n else {
                    return Err(fail("edge line before the problem line".into()));
                };
                if toks.len() != 3 {
                    return Err(fail("expected `e <u> <v>`".into()));
                }
                let (u, v) = (int(toks[1])?, int(toks[2])?);
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(fail(format!("endpoint of edge ({u}, {v}) outside 1..={n}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(fail(format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or(ParseError::Dimacs {
        line: 0,
        msg: "missing `p edge` header".into(),
    })?;
    Ok(Graph::from_edges(n, &edges)?)
}

/// `{"n": .., "edges": [[u, v], ..]}` with 0-based endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGraph {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for JsonGraph {
    fn from(g: &Graph) -> Self {
        JsonGraph {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<&JsonGraph> for Graph {
    type Error = GraphError;
    fn try_from(j: &JsonGraph) -> Result<Graph, GraphError> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }
}

pub fn encode_json(g: &Graph) -> String {
    serde_json::to_string(&JsonGraph::from(g)).expect("graph serializes")
}

pub fn parse_json(text: &str) -> Result<Graph, ParseError> {
    let j: JsonGraph = serde_json::from_str(text)?;
    Ok(Graph::try_from(&j)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_strings() {
        // reference encodings from the format description
        assert_eq!(encode_graph6(&Graph::cycle(5).unwrap()), "Dhc");
        assert_eq!(encode_graph6(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(encode_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(parse_graph6("Dhc").unwrap(), Graph::cycle(5).unwrap());
        assert_eq!(
            parse_graph6(">>graph6<<C~\n").unwrap(),
            Graph::complete(4).unwrap()
        );
    }

    #[test]
    fn graph6_large_header() {
        let g = Graph::cycle(100).unwrap();
        let s = encode_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("D").is_err()); // truncated
        assert!(parse_graph6("Dhcc").is_err()); // trailing
        assert!(parse_graph6("D h").is_err());
        assert!(parse_graph6("~?").is_err());
    }

    #[test]
    fn dimacs_examples() {
        let k3 = parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 1 3\n"),
            Err(ParseError::Dimacs { line: 2, .. })
        ));
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("c only comments\n").is_err());
        assert!(parse_dimacs("p edge 3 1\ne 1 x\n").is_err());
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(parse_dimacs(&encode_dimacs(&c5)).unwrap(), c5);
    }

    #[test]
    fn json_examples() {
        let g = parse_json(r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#).unwrap();
        assert_eq!(g, Graph::cycle(5).unwrap());
        assert!(parse_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert!(parse_json(r#"{"edges":[]}"#).is_err());
        assert_eq!(
            encode_json(&Graph::path(3).unwrap()),
            r#"{"n":3,"edges":[[0,1],[1,2]]}"#
        );
    }

    #[test]
    fn sniffing() {
        assert_eq!(sniff_format("{\"n\":0}"), Format::Json);
        assert_eq!(sniff_format("c x\np edge 1 0"), Format::Dimacs);
        assert_eq!(sniff_format("Dhc"), Format::Graph6);
    }
}
