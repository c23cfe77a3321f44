//! Undirected simple graphs with dense bitset adjacency.
//!
//! Every graph handled by this crate is small (a few hundred vertices at
//! most), so each vertex keeps one adjacency row of `u64` words.

mod generate;
mod io;

pub use generate::{GraphExpr, GraphKind};
pub use io::{parse_graph, GraphFormat};

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::arith::ratio_json;
use crate::error::GraphError;

const WORD: usize = 64;

/// An undirected simple graph on the vertex set `0..vertex_count`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph {
            n,
            rows: vec![vec![0; words]; n],
        }
    }

    /// Builds a graph from an edge iterator. Duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.rows[u][v / WORD] |= 1 << (v % WORD);
        self.rows[v][u / WORD] |= 1 << (u % WORD);
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Neighbourhood of `v` as a single-word mask. Only valid for graphs with
    /// at most 64 vertices.
    #[inline]
    pub(crate) fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= WORD);
        self.rows[v][0]
    }

    /// Hex SHA-256 of the graph6 encoding (edge-list text above 62 vertices).
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let text = self.to_graph6().unwrap_or_else(|_| self.to_edge_list());
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("edge of a valid graph");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off).expect("edge of a valid graph");
        }
        g
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j).expect("distinct indices");
                }
            }
        }
        g
    }

    /// Connected components. Each set is sorted; the list is sorted by
    /// `(size, smallest vertex)`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by_key(|c| (c.len(), c[0]));
        comps
    }

    pub fn degree_stats(&self) -> Result<DegreeStats, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let sum: usize = degrees.iter().sum();
        Ok(DegreeStats {
            min_degree: *degrees.iter().min().unwrap(),
            max_degree: *degrees.iter().max().unwrap(),
            average_degree: Ratio::new(sum as i64, self.n as i64),
        })
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Whether the graph is 2-colourable.
    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v) {
                    if side[u] == u8::MAX {
                        side[u] = side[v] ^ 1;
                        stack.push(u);
                    } else if side[u] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Minimum, maximum and exact average degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub min_degree: usize,
    pub max_degree: usize,
    #[serde(with = "ratio_json")]
    pub average_degree: Ratio<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_stats_examples() {
        let k4 = Graph::complete(4);
        let s = k4.degree_stats().unwrap();
        assert_eq!((s.min_degree, s.max_degree), (3, 3));
        assert_eq!(s.average_degree, Ratio::from_integer(3));

        let k31 = Graph::complete_multipartite(&[3, 1]).unwrap();
        let s = k31.degree_stats().unwrap();
        assert_eq!((s.min_degree, s.max_degree), (1, 3));
        assert_eq!(s.average_degree, Ratio::new(3, 2));

        let c6 = Graph::cycle(6).unwrap();
        let s = c6.degree_stats().unwrap();
        assert_eq!((s.min_degree, s.max_degree, s.average_degree), (2, 2, Ratio::from_integer(2)));
    }

    #[test]
    fn empty_graph_has_no_degree_stats() {
        assert!(matches!(Graph::empty(0).degree_stats(), Err(GraphError::Empty)));
    }

    #[test]
    fn components_sorted_by_size() {
        let h = Graph::star(2).disjoint_union(&Graph::cycle(6).unwrap());
        let comps = h.components();
        let orders: Vec<usize> = comps.iter().map(Vec::len).collect();
        assert_eq!(orders, vec![3, 6]);
        assert_eq!(comps[0], vec![0, 1, 2]);

        assert_eq!(Graph::complete(1).components(), vec![vec![0]]);
        assert_eq!(Graph::cycle(5).unwrap().components().len(), 1);
    }

    #[test]
    fn self_loops_rejected() {
        let mut g = Graph::empty(3);
        assert!(matches!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1))));
        assert!(matches!(
            g.add_edge(0, 3),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn wide_graphs_use_multiple_words() {
        let g = Graph::complete_multipartite(&[70, 60]).unwrap();
        assert_eq!(g.edge_count(), 4200);
        assert!(g.has_edge(0, 129));
        assert!(!g.has_edge(0, 69));
        assert_eq!(g.min_degree(), 60);
    }

    #[test]
    fn bipartite_detection() {
        assert!(Graph::cycle(6).unwrap().is_bipartite());
        assert!(!Graph::cycle(5).unwrap().is_bipartite());
        assert!(Graph::empty(3).is_bipartite());
    }
}

/// Serde helper storing a graph as a graph6 string (up to 62 vertices) or as
/// edge-list text.
pub mod graph_json {
    use super::Graph;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        match g.to_graph6() {
            Ok(text) => s.serialize_str(&text),
            Err(_) => s.serialize_str(&g.to_edge_list()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let text = String::deserialize(d)?;
        let parsed = if text.trim().contains(char::is_whitespace) {
            Graph::from_edge_list(&text)
        } else {
            Graph::from_graph6(text.as_bytes())
        };
        parsed.map_err(D::Error::custom)
    }
}
