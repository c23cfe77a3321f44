use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Vertex-disjoint embeddings of `H` into a host: `copies[c][w]` is the
/// host vertex carrying pattern vertex `w` in copy `c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedPacking {
    pub copies: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingViolation {
    #[error("copy {copy} maps {got} pattern vertices, expected {expected}")]
    WrongArity { copy: usize, expected: usize, got: usize },
    #[error("copy {copy} uses host vertex {vertex}, which does not exist")]
    OutOfRange { copy: usize, vertex: usize },
    #[error("copy {copy} is not injective (host vertex {vertex} used twice)")]
    NotInjective { copy: usize, vertex: usize },
    #[error("host vertex {vertex} is used by copies {first} and {second}")]
    Overlap { vertex: usize, first: usize, second: usize },
    #[error("copy {copy}: pattern edge ({u},{v}) maps to a non-edge")]
    MissingEdge { copy: usize, u: usize, v: usize },
    #[error("host vertex {0} is not covered")]
    Uncovered(usize),
}

/// Checks arity, injectivity, disjointness, edge preservation and full
/// coverage; reports the first violation found.
pub fn verify_packing(g: &Graph, h: &Graph, packing: &EmbeddedPacking) -> Result<(), PackingViolation> {
    let mut owner = vec![usize::MAX; g.vertex_count()];
    let h_edges = h.edges();
    for (c, copy) in packing.copies.iter().enumerate() {
        if copy.len() != h.vertex_count() {
            return Err(PackingViolation::WrongArity {
                copy: c,
                expected: h.vertex_count(),
                got: copy.len(),
            });
        }
        for &x in copy {
            if x >= g.vertex_count() {
                return Err(PackingViolation::OutOfRange { copy: c, vertex: x });
            }
            match owner[x] {
                usize::MAX => owner[x] = c,
                o if o == c => return Err(PackingViolation::NotInjective { copy: c, vertex: x }),
                o => {
                    return Err(PackingViolation::Overlap {
                        vertex: x,
                        first: o,
                        second: c,
                    })
                }
            }
        }
        if let Some(&(u, v)) = h_edges.iter().find(|&&(u, v)| !g.has_edge(copy[u], copy[v])) {
            return Err(PackingViolation::MissingEdge { copy: c, u, v });
        }
    }
    match owner.iter().position(|&o| o == usize::MAX) {
        Some(v) => Err(PackingViolation::Uncovered(v)),
        None => Ok(()),
    }
}

impl fmt::Display for EmbeddedPacking {
    /// One line per copy: `copy <id>: v0 v1 ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, copy) in self.copies.iter().enumerate() {
            let verts: Vec<String> = copy.iter().map(usize::to_string).collect();
            writeln!(f, "copy {i}: {}", verts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for EmbeddedPacking {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut copies = Vec::new();
        for (no, line) in s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let rest = line
                .trim()
                .strip_prefix("copy ")
                .ok_or_else(|| format!("line {}: expected 'copy <id>: ...'", no + 1))?;
            let (id, verts) = rest
                .split_once(':')
                .ok_or_else(|| format!("line {}: missing ':'", no + 1))?;
            let id: usize = id.trim().parse().map_err(|_| format!("line {}: bad copy id", no + 1))?;
            if id != copies.len() {
                return Err(format!("line {}: copy ids must be consecutive from 0", no + 1));
            }
            let verts = verts
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| format!("line {}: bad vertex '{t}'", no + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            copies.push(verts);
        }
        Ok(EmbeddedPacking { copies })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangles_in_k6() {
        let k6 = Graph::complete(6);
        let k3 = Graph::complete(3);
        let good = EmbeddedPacking {
            copies: vec![vec![0, 1, 2], vec![3, 4, 5]],
        };
        assert_eq!(verify_packing(&k6, &k3, &good), Ok(()));

        let shared = EmbeddedPacking {
            copies: vec![vec![0, 1, 2], vec![2, 4, 5]],
        };
        assert_eq!(
            verify_packing(&k6, &k3, &shared),
            Err(PackingViolation::Overlap { vertex: 2, first: 0, second: 1 })
        );

        let partial = EmbeddedPacking {
            copies: vec![vec![0, 1, 2]],
        };
        assert_eq!(verify_packing(&k6, &k3, &partial), Err(PackingViolation::Uncovered(3)));
    }

    #[test]
    fn missing_edges_and_arity() {
        let host = Graph::cycle(6).unwrap();
        let k3 = Graph::complete(3);
        let p = EmbeddedPacking {
            copies: vec![vec![0, 1, 2], vec![3, 4, 5]],
        };
        assert_eq!(
            verify_packing(&host, &k3, &p),
            Err(PackingViolation::MissingEdge { copy: 0, u: 0, v: 2 })
        );
        let short = EmbeddedPacking { copies: vec![vec![0, 1]] };
        assert!(matches!(
            verify_packing(&host, &k3, &short),
            Err(PackingViolation::WrongArity { .. })
        ));
        let dup = EmbeddedPacking { copies: vec![vec![0, 0, 1]] };
        assert!(matches!(
            verify_packing(&host, &k3, &dup),
            Err(PackingViolation::NotInjective { copy: 0, vertex: 0 })
        ));
    }

    #[test]
    fn line_format_round_trip() {
        let p = EmbeddedPacking {
            copies: vec![vec![0, 3, 1], vec![2, 5, 4]],
        };
        let text = p.to_string();
        assert_eq!(text, "copy 0: 0 3 1\ncopy 1: 2 5 4\n");
        assert_eq!(text.parse::<EmbeddedPacking>().unwrap(), p);
        assert!("copy 1: 0 1".parse::<EmbeddedPacking>().is_err());
        assert!("cpy 0: 0".parse::<EmbeddedPacking>().is_err());
    }
}
