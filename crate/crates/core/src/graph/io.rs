//! graph6 and edge-list encodings.
//!
//! graph6 follows McKay's layout: one size byte `n + 63`, then the upper
//! triangle of the adjacency matrix in column order (`(0,1), (0,2), (1,2),
//! (0,3), ...`), six bits per byte, each byte offset by 63. Only the
//! single-byte size prefix (`n <= 62`) is supported.
//!
//! The edge-list format is a header line `n [m]` followed by one `u v` line
//! per edge, 0-indexed. Blank lines and `#` comments are ignored.

use std::str::FromStr;

use super::Graph;
use crate::error::GraphError;

/// Largest order representable with a one-byte graph6 size prefix.
pub const GRAPH6_MAX_ORDER: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edge-list" | "edgelist" | "el" => Ok(GraphFormat::EdgeList),
            other => Err(GraphError::Malformed(format!("unknown format '{other}'"))),
        }
    }
}

pub fn parse_graph(bytes: &[u8], format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::Graph6 => Graph::from_graph6(bytes),
        GraphFormat::EdgeList => {
            let text = std::str::from_utf8(bytes)
                .map_err(|e| GraphError::Malformed(format!("edge list is not UTF-8: {e}")))?;
            Graph::from_edge_list(text)
        }
    }
}

impl Graph {
    pub fn from_graph6(bytes: &[u8]) -> Result<Graph, GraphError> {
        let mut bytes = bytes;
        while let [rest @ .., b'\n' | b'\r' | b' '] = bytes {
            bytes = rest;
        }
        if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
            bytes = rest;
        }
        let (&head, body) = bytes
            .split_first()
            .ok_or_else(|| GraphError::Malformed("empty graph6 string".into()))?;
        if head == 126 {
            return Err(GraphError::Malformed(format!(
                "graph6 orders above {GRAPH6_MAX_ORDER} are not supported; use the edge-list format"
            )));
        }
        if !(63..126).contains(&head) {
            return Err(GraphError::Malformed(format!("invalid graph6 size byte {head}")));
        }
        let n = (head - 63) as usize;
        let bits = n * n.saturating_sub(1) / 2;
        let expected = bits.div_ceil(6);
        if body.len() != expected {
            return Err(GraphError::Malformed(format!(
                "graph6 body for n={n} needs {expected} bytes, got {}",
                body.len()
            )));
        }
        let mut g = Graph::empty(n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = body[k / 6];
                if !(63..=126).contains(&byte) {
                    return Err(GraphError::Malformed(format!("invalid graph6 byte {byte}")));
                }
                if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                    g.add_edge(i, j)?;
                }
                k += 1;
            }
        }
        Ok(g)
    }

    pub fn to_graph6(&self) -> Result<String, GraphError> {
        let n = self.vertex_count();
        if n > GRAPH6_MAX_ORDER {
            return Err(GraphError::Malformed(format!(
                "graph6 output limited to n <= {GRAPH6_MAX_ORDER}, got {n}"
            )));
        }
        let mut out = vec![n as u8 + 63];
        let mut acc = 0u8;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
                k += 1;
                if k % 6 == 0 {
                    out.push(acc + 63);
                    acc = 0;
                }
            }
        }
        if k % 6 != 0 {
            out.push((acc << (6 - k % 6)) + 63);
        }
        Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
    }

    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| GraphError::Malformed("missing edge-list header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse = |s: &str, line: usize| {
            s.parse::<usize>()
                .map_err(|_| GraphError::Malformed(format!("line {}: '{s}' is not an integer", line + 1)))
        };
        let (n, declared) = match fields.as_slice() {
            [n] => (parse(n, 0)?, None),
            [n, m] => (parse(n, 0)?, Some(parse(m, 0)?)),
            _ => return Err(GraphError::Malformed(format!("bad header '{header}'"))),
        };
        let mut g = Graph::empty(n);
        let mut lines_seen = 0;
        for (no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = fields.as_slice() else {
                return Err(GraphError::Malformed(format!("line {}: expected 'u v'", no + 1)));
            };
            g.add_edge(parse(u, no)?, parse(v, no)?)?;
            lines_seen += 1;
        }
        if let Some(m) = declared {
            if m != lines_seen {
                return Err(GraphError::Malformed(format!(
                    "header declares {m} edges but {lines_seen} edge lines follow"
                )));
            }
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.vertex_count(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}
