//! Standard generators and a small expression language for naming graphs.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr  := term (('+' | 'u' | '∪') term)*
//! term  := 'star(' n ')' | 'cycle(' n ')' | 'path(' n ')' | 'complete(' n ')'
//!        | 'empty(' n ')' | 'kpartite(' n (',' n)* ')'
//!        | 'C_' n | 'P_' n | 'K_' n | 'K_{' n (',' n)* '}' | 'E_' n
//! ```
//!
//! So `star(2)+cycle(6)` and `K_{1,2}uC_6` describe the same graph.

use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::GraphError;

/// A generator request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Empty(usize),
    CompleteMultipartite(Vec<usize>),
    Star(usize),
    DisjointUnion(Box<GraphKind>, Box<GraphKind>),
}

impl Graph {
    pub fn generate(kind: &GraphKind) -> Result<Graph, GraphError> {
        match kind {
            GraphKind::Cycle(m) => Graph::cycle(*m),
            GraphKind::Path(m) => Graph::path(*m),
            GraphKind::Complete(m) => {
                if *m == 0 {
                    return Err(GraphError::BadGenerator("complete(0)".into()));
                }
                Ok(Graph::complete(*m))
            }
            GraphKind::Empty(m) => Ok(Graph::empty(*m)),
            GraphKind::CompleteMultipartite(sizes) => {
                if sizes.is_empty() || sizes.contains(&0) {
                    return Err(GraphError::BadGenerator(format!(
                        "complete multipartite sizes must be positive, got {sizes:?}"
                    )));
                }
                Graph::complete_multipartite(sizes)
            }
            GraphKind::Star(i) => Ok(Graph::star(*i)),
            GraphKind::DisjointUnion(a, b) => {
                Ok(Graph::generate(a)?.disjoint_union(&Graph::generate(b)?))
            }
        }
    }

    pub fn cycle(m: usize) -> Result<Graph, GraphError> {
        if m < 3 {
            return Err(GraphError::BadGenerator(format!("cycle({m}) needs m >= 3")));
        }
        Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m)))
    }

    pub fn path(m: usize) -> Result<Graph, GraphError> {
        if m == 0 {
            return Err(GraphError::BadGenerator("path(0)".into()));
        }
        Graph::from_edges(m, (1..m).map(|i| (i - 1, i)))
    }

    pub fn complete(m: usize) -> Graph {
        let mut g = Graph::empty(m);
        for u in 0..m {
            for v in u + 1..m {
                g.add_edge(u, v).expect("distinct vertices");
            }
        }
        g
    }

    /// The star `K_{1,i}` with centre 0.
    pub fn star(i: usize) -> Graph {
        Graph::from_edges(i + 1, (1..=i).map(|v| (0, v))).expect("valid star")
    }

    /// Complete multipartite graph whose parts occupy consecutive vertex
    /// ranges in the given order. Zero-sized parts are allowed here (they
    /// arise in degenerate extremal constructions).
    pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph, GraphError> {
        let n: usize = sizes.iter().sum();
        let mut part = Vec::with_capacity(n);
        for (p, &s) in sizes.iter().enumerate() {
            part.extend(std::iter::repeat_n(p, s));
        }
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if part[u] != part[v] {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Disjoint union of cliques of the given orders, laid out consecutively.
    pub fn disjoint_cliques(orders: &[usize]) -> Graph {
        orders
            .iter()
            .fold(Graph::empty(0), |acc, &m| acc.disjoint_union(&Graph::complete(m)))
    }
}

/// A parsed graph expression; keeps the source text for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphExpr {
    pub source: String,
    pub kind: GraphKind,
}

impl GraphExpr {
    pub fn build(&self) -> Result<Graph, GraphError> {
        Graph::generate(&self.kind)
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl FromStr for GraphExpr {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = ExprParser { chars, pos: 0, source: s };
        let mut kind = p.term()?;
        while p.pos < p.chars.len() {
            match p.chars[p.pos] {
                '+' | 'u' | '∪' => {
                    p.pos += 1;
                    let rhs = p.term()?;
                    kind = GraphKind::DisjointUnion(Box::new(kind), Box::new(rhs));
                }
                c => return Err(p.error(&format!("unexpected '{c}'"))),
            }
        }
        Ok(GraphExpr {
            source: s.trim().to_string(),
            kind,
        })
    }
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    source: &'a str,
}

impl ExprParser<'_> {
    fn error(&self, what: &str) -> GraphError {
        GraphError::BadExpression {
            expr: self.source.to_string(),
            reason: format!("{what} at position {}", self.pos),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), GraphError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<usize, GraphError> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("number too large"))
    }

    fn list(&mut self, close: char) -> Result<Vec<usize>, GraphError> {
        let mut out = vec![self.number()?];
        while self.eat(',') {
            out.push(self.number()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_lowercase()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn term(&mut self) -> Result<GraphKind, GraphError> {
        match self.chars.get(self.pos) {
            Some('K') | Some('C') | Some('P') | Some('E') => {
                let head = self.chars[self.pos];
                self.pos += 1;
                self.expect('_')?;
                if head == 'K' && self.eat('{') {
                    let sizes = self.list('}')?;
                    return Ok(GraphKind::CompleteMultipartite(sizes));
                }
                let m = self.number()?;
                Ok(match head {
                    'K' => GraphKind::Complete(m),
                    'C' => GraphKind::Cycle(m),
                    'P' => GraphKind::Path(m),
                    _ => GraphKind::Empty(m),
                })
            }
            Some(c) if c.is_ascii_lowercase() => {
                let name = self.word();
                self.expect('(')?;
                let args = self.list(')')?;
                let single = |args: &[usize]| -> Result<usize, GraphError> {
                    match args {
                        [m] => Ok(*m),
                        _ => Err(self.error(&format!("{name} takes one argument"))),
                    }
                };
                match name.as_str() {
                    "star" => Ok(GraphKind::Star(single(&args)?)),
                    "cycle" => Ok(GraphKind::Cycle(single(&args)?)),
                    "path" => Ok(GraphKind::Path(single(&args)?)),
                    "complete" => Ok(GraphKind::Complete(single(&args)?)),
                    "empty" => Ok(GraphKind::Empty(single(&args)?)),
                    "kpartite" => Ok(GraphKind::CompleteMultipartite(args)),
                    other => Err(self.error(&format!("unknown generator '{other}'"))),
                }
            }
            _ => Err(self.error("expected a graph term")),
        }
    }
}
