//! Shared fixtures: a non-isomorphic graph corpus and seeded random graphs.
#![allow(dead_code)]

use std::collections::HashSet;

use chromapack::graph::Graph;
use rand::Rng;

/// Adjacency rows as bitmasks; small graphs only.
fn rows(g: &Graph) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).fold(0u32, |acc, u| acc | 1 << u))
        .collect()
}

/// Splits cells by neighbour counts into every other cell until stable.
fn refine(adj: &[u32], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u32> = cells.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|k| k.1).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn relabelled_code(adj: &[u32], order: &[usize]) -> u64 {
    let mut code = 0u64;
    for (i, &u) in order.iter().enumerate() {
        for &v in &order[i + 1..] {
            code = code << 1 | u64::from(adj[u] >> v & 1);
        }
    }
    code
}

fn twins(adj: &[u32], u: usize, v: usize) -> bool {
    adj[u] & !(1 << v) == adj[v] & !(1 << u)
}

fn search(adj: &[u32], cells: Vec<Vec<usize>>, best: &mut Option<u64>) {
    let cells = refine(adj, cells);
    let Some(pos) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = relabelled_code(adj, &order);
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cells[pos] {
        if tried.iter().any(|&t| twins(adj, t, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<usize> = cells[pos].iter().copied().filter(|&x| x != v).collect();
        next.splice(pos..=pos, [vec![v], rest]);
        search(adj, next, best);
    }
}

/// Canonical code: equal for two graphs exactly when they are isomorphic.
pub fn canonical_code(g: &Graph) -> u64 {
    let adj = rows(g);
    let n = g.vertex_count();
    let mut best = None;
    search(&adj, vec![(0..n).collect()], &mut best);
    best.unwrap_or(0) << 4 | n as u64
}

/// All graphs on `n` vertices up to isomorphism, for `n <= 8`, built by
/// adding a vertex with every neighbourhood to the graphs on `n - 1`.
pub fn nonisomorphic_graphs(max_n: usize) -> Vec<Vec<Graph>> {
    assert!(max_n <= 8);
    let mut levels = vec![vec![Graph::empty(0)]];
    for n in 1..=max_n {
        let mut seen = HashSet::new();
        let mut level = Vec::new();
        for g in &levels[n - 1] {
            for mask in 0u32..1 << (n - 1) {
                let mut h = g.disjoint_union(&Graph::empty(1));
                for u in 0..n - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, n - 1).unwrap();
                    }
                }
                if seen.insert(canonical_code(&h)) {
                    level.push(h);
                }
            }
        }
        levels.push(level);
    }
    levels
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}
