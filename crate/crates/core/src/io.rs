//! graph6 and plain edge-list text formats.
//!
//! graph6 follows the nauty conventions: the order is written with the
//! small/medium size prefix, then the upper triangle of the adjacency matrix
//! in column-major order (x(0,1), x(0,2), x(1,2), x(0,3), ...) packed into
//! 6-bit groups with a bias of 63. The optional `>>graph6<<` header is
//! accepted on input and never written.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const GRAPH6_HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("byte offset {offset}: invalid graph6 byte 0x{byte:02x}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("byte offset {offset}: graph6 data truncated, expected {expected} bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("byte offset {offset}: unexpected trailing data")]
    TrailingData { offset: usize },
    #[error("byte offset {offset}: nonzero padding bits")]
    NonzeroPadding { offset: usize },
    #[error("byte offset 0: unsupported header (only >>graph6<< is accepted)")]
    BadHeader,
    #[error("empty input")]
    Empty,
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "g6" | "graph6" => Ok(GraphFormat::Graph6),
            "edges" | "edgelist" | "edge-list" => Ok(GraphFormat::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

/// Guesses the format from the first non-whitespace byte: a digit starts an
/// edge list, anything else is taken as graph6 (whose bytes are all in `?..~`).
pub fn detect_format(text: &str) -> GraphFormat {
    match text.trim_start().bytes().next() {
        Some(b) if b.is_ascii_digit() => GraphFormat::EdgeList,
        _ => GraphFormat::Graph6,
    }
}

pub fn parse_graph(text: &str, format: Option<GraphFormat>) -> Result<Graph, FormatError> {
    match format.unwrap_or_else(|| detect_format(text)) {
        GraphFormat::Graph6 => parse_graph6(text.trim()),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => to_graph6(g),
        GraphFormat::EdgeList => to_edge_list(g),
    }
}

/// Encodes `g` as a graph6 string (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn sixbits(bytes: &[u8], offset: usize) -> Result<u8, FormatError> {
    match bytes.get(offset) {
        Some(&b) if (BIAS..=BIAS + 63).contains(&b) => Ok(b - BIAS),
        Some(&b) => Err(FormatError::InvalidByte { offset, byte: b }),
        None => Err(FormatError::Truncated { offset, expected: offset + 1 }),
    }
}

/// Decodes one graph6 record. Offsets in errors count from the start of `text`.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    let (start, body) = if let Some(rest) = text.strip_prefix(GRAPH6_HEADER) {
        (GRAPH6_HEADER.len(), rest)
    } else if text.starts_with('>') || text.starts_with(':') || text.starts_with('&') {
        return Err(FormatError::BadHeader);
    } else {
        (0, text)
    };
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    let offset_err = |e: FormatError| match e {
        FormatError::InvalidByte { offset, byte } => {
            FormatError::InvalidByte { offset: offset + start, byte }
        }
        FormatError::Truncated { offset, expected } => {
            FormatError::Truncated { offset: offset + start, expected: expected + start }
        }
        other => other,
    };

    let first = sixbits(bytes, 0).map_err(offset_err)?;
    let (n, mut pos) = if first < 63 {
        (first as usize, 1)
    } else {
        if sixbits(bytes, 1).map_err(offset_err)? == 63 {
            // 8-byte form, only for n >= 258048
            let mut n = 0usize;
            for k in 2..8 {
                n = (n << 6) | sixbits(bytes, k).map_err(offset_err)? as usize;
            }
            (n, 8)
        } else {
            let mut n = 0usize;
            for k in 1..4 {
                n = (n << 6) | sixbits(bytes, k).map_err(offset_err)? as usize;
            }
            (n, 4)
        }
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n).into());
    }

    let pairs = n * n.saturating_sub(1) / 2;
    let data_len = pairs.div_ceil(6);
    let expected = pos + data_len;
    if bytes.len() < expected {
        return Err(FormatError::Truncated { offset: bytes.len() + start, expected: expected + start });
    }
    if bytes.len() > expected {
        return Err(FormatError::TrailingData { offset: expected + start });
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0usize;
    let mut group = 0u8;
    for j in 1..n {
        for i in 0..j {
            if k.is_multiple_of(6) {
                group = sixbits(bytes, pos).map_err(offset_err)?;
                pos += 1;
            }
            if group & (0x20 >> (k % 6)) != 0 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let pad_mask = (1u8 << (6 - k % 6)) - 1;
        if group & pad_mask != 0 {
            return Err(FormatError::NonzeroPadding { offset: pos - 1 + start });
        }
    }
    Ok(g)
}

/// "n m" header followed by `m` lines "u v", 0-based.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(FormatError::Empty)?;
    let bad = |line: usize, message: String| FormatError::EdgeList { line, message };
    let nums = |line: usize, s: &str| -> Result<(usize, usize), FormatError> {
        let mut it = s.split_whitespace();
        let mut next = || -> Result<usize, FormatError> {
            let tok = it.next().ok_or_else(|| bad(line, "expected two integers".into()))?;
            tok.parse::<usize>().map_err(|e| bad(line, format!("`{tok}`: {e}")))
        };
        let pair = (next()?, next()?);
        if it.next().is_some() {
            return Err(bad(line, "expected exactly two integers".into()));
        }
        Ok(pair)
    };
    let (n, m) = nums(hline, header)?;
    let mut g = Graph::empty(n)?;
    let mut seen = 0;
    for (line, body) in lines {
        let (u, v) = nums(line, body)?;
        if u >= n || v >= n {
            return Err(bad(line, format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(bad(line, format!("self-loop at {u}")));
        }
        if !g.add_edge(u, v)? {
            return Err(bad(line, format!("duplicate edge {u} {v}")));
        }
        seen += 1;
    }
    if seen != m {
        return Err(bad(hline, format!("header declares {m} edges, found {seen}")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_graph6_strings() {
        // reference strings from the nauty format description and networkx
        assert_eq!(to_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(to_graph6(&Graph::complete(1).unwrap()), "@");
        assert_eq!(to_graph6(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(to_graph6(&Graph::path(5).unwrap()), "DhC");
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(to_graph6(&k5), "D~{");
    }

    #[test]
    fn medium_size_prefix() {
        let g = Graph::cycle(63).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn header_and_newline_accepted() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), k4);
        assert_eq!(parse_graph6(">>sparse6<<:Fa@x^"), Err(FormatError::BadHeader));
        assert_eq!(parse_graph6(":Fa@x^"), Err(FormatError::BadHeader));
    }

    #[test]
    fn malformed_graph6_reports_offsets() {
        assert_eq!(parse_graph6("C!"), Err(FormatError::InvalidByte { offset: 1, byte: b'!' }));
        assert_eq!(parse_graph6("D~"), Err(FormatError::Truncated { offset: 2, expected: 3 }));
        assert_eq!(parse_graph6("C~~"), Err(FormatError::TrailingData { offset: 2 }));
        // K_3: three bits 111 followed by padding 000 -> 'w'; 'x' sets a pad bit
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(parse_graph6("Bx"), Err(FormatError::NonzeroPadding { offset: 1 }));
        assert!(matches!(parse_graph6("~??~"), Err(FormatError::Truncated { .. })));
        assert_eq!(parse_graph6("~?A@"), Err(FormatError::Graph(GraphError::TooLarge(129))));
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = Graph::cycle(5).unwrap();
        let text = to_edge_list(&g);
        assert!(text.starts_with("5 5\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(FormatError::EdgeList { line: 1, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 3\n"), Err(FormatError::EdgeList { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1\n1 0\n"), Err(FormatError::EdgeList { line: 3, .. })));
        assert!(parse_edge_list("3 1\n1 1\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn detection() {
        assert_eq!(detect_format("11 38\n0 1\n"), GraphFormat::EdgeList);
        assert_eq!(detect_format("J?AA"), GraphFormat::Graph6);
        assert_eq!(detect_format(">>graph6<<C~"), GraphFormat::Graph6);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(parse_graph("C~\n", None).unwrap(), k4);
        assert_eq!(parse_graph(&to_edge_list(&k4), None).unwrap(), k4);
    }
}
