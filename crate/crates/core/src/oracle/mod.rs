//! Exact perfect-packing search on small hosts.
//!
//! The search always covers the lowest uncovered host vertex next. Copies
//! containing it are enumerated by anchored subgraph matching: the anchor
//! ranges over one representative per automorphism orbit of `H`, so each
//! vertex set is found with few repeats. Candidate sets are tried in
//! lexicographic order of their sorted images, which makes the first packing
//! found the lexicographically least one.

mod automorphism;
mod packing;
mod stars;

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

pub use automorphism::orbits;
pub use packing::{verify_packing, EmbeddedPacking, PackingViolation};
pub use stars::{greedy_disjoint_stars, guaranteed_star_count, Star};

use crate::error::OracleError;
use crate::graph::Graph;

pub const DEFAULT_SEARCH_CAP: usize = 40;
const HARD_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Decide,
    Find,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub search_cap: usize,
    pub timeout: Option<Duration>,
    /// Remember failed uncovered sets; `None` enables it for hosts up to 32
    /// vertices.
    pub memoize: Option<bool>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            search_cap: DEFAULT_SEARCH_CAP,
            timeout: None,
            memoize: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// A perfect packing exists; the packing is present in `Mode::Find`.
    Yes(Option<EmbeddedPacking>),
    No,
    /// The timeout expired before the search finished.
    Unknown,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    /// Shell convention: 0 yes, 1 no, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            Decision::Yes(_) => 0,
            Decision::No => 1,
            Decision::Unknown => 2,
        }
    }
}

pub fn has_perfect_packing(
    g: &Graph,
    h: &Graph,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<Decision, OracleError> {
    let n = g.vertex_count();
    let m = h.vertex_count();
    if m == 0 {
        return Err(OracleError::EmptyPattern);
    }
    let cap = opts.search_cap.min(HARD_CAP);
    if n > cap {
        return Err(OracleError::SearchCapExceeded { n, cap });
    }
    if !n.is_multiple_of(m) {
        return Ok(Decision::No);
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = Search {
        g,
        h,
        orders: anchored_orders(h),
        memo: opts.memoize.unwrap_or(n <= 32).then(HashSet::new),
        deadline: opts.timeout.map(|t| Instant::now() + t),
        nodes: 0,
        timed_out: false,
        stack: Vec::new(),
    };
    let found = search.run(full);
    if search.timed_out {
        return Ok(Decision::Unknown);
    }
    Ok(match (found, mode) {
        (false, _) => Decision::No,
        (true, Mode::Decide) => Decision::Yes(None),
        (true, Mode::Find) => Decision::Yes(Some(EmbeddedPacking {
            copies: std::mem::take(&mut search.stack),
        })),
    })
}

/// For each orbit representative `a`, an ordering of `V(H)` starting at `a`
/// in which every vertex after the first of its component has an earlier
/// neighbour. Each entry pairs the vertex with that earlier neighbour.
fn anchored_orders(h: &Graph) -> Vec<Vec<(usize, Option<usize>)>> {
    let reps: Vec<usize> = {
        let mut r: Vec<usize> = orbits(h).iter().map(|o| o[0]).collect();
        r.sort_unstable();
        r
    };
    reps.into_iter()
        .map(|a| {
            let mut order = Vec::with_capacity(h.vertex_count());
            let mut seen = vec![false; h.vertex_count()];
            let starts = std::iter::once(a).chain(0..h.vertex_count());
            for s in starts {
                if seen[s] {
                    continue;
                }
                seen[s] = true;
                order.push((s, None));
                let mut head = order.len() - 1;
                while head < order.len() {
                    let v = order[head].0;
                    head += 1;
                    for u in h.neighbors(v) {
                        if !seen[u] {
                            seen[u] = true;
                            order.push((u, Some(v)));
                        }
                    }
                }
            }
            order
        })
        .collect()
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    orders: Vec<Vec<(usize, Option<usize>)>>,
    memo: Option<HashSet<u64>>,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
    stack: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, uncovered: u64) -> bool {
        if uncovered == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return false;
        }
        if self.memo.as_ref().is_some_and(|m| m.contains(&uncovered)) {
            return false;
        }
        let v = uncovered.trailing_zeros() as usize;
        for (_, embedding) in self.copies_through(v, uncovered) {
            let image = embedding.iter().fold(0u64, |acc, &x| acc | 1 << x);
            self.stack.push(embedding);
            if self.run(uncovered & !image) {
                return true;
            }
            self.stack.pop();
            if self.timed_out {
                return false;
            }
        }
        if let Some(m) = self.memo.as_mut() {
            m.insert(uncovered);
        }
        false
    }

    /// Distinct vertex sets spanning a copy of `H` through `v` inside
    /// `uncovered`, keyed (and so ordered) by their sorted images.
    fn copies_through(&self, v: usize, uncovered: u64) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut found = BTreeMap::new();
        let mut phi = vec![usize::MAX; self.h.vertex_count()];
        for order in &self.orders {
            let anchor = order[0].0;
            phi[anchor] = v;
            self.extend(order, 1, uncovered & !(1 << v), &mut phi, &mut found);
            phi[anchor] = usize::MAX;
        }
        found
    }

    fn extend(
        &self,
        order: &[(usize, Option<usize>)],
        idx: usize,
        free: u64,
        phi: &mut Vec<usize>,
        found: &mut BTreeMap<Vec<usize>, Vec<usize>>,
    ) {
        if idx == order.len() {
            let mut image = phi.clone();
            image.sort_unstable();
            found.entry(image).or_insert_with(|| phi.clone());
            return;
        }
        let (w, parent) = order[idx];
        let mut cand = match parent {
            Some(p) => self.g.neighbor_mask(phi[p]) & free,
            None => free,
        };
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let ok = self
                .h
                .neighbors(w)
                .all(|u| phi[u] == usize::MAX || self.g.has_edge(phi[u], x));
            if ok {
                phi[w] = x;
                self.extend(order, idx + 1, free & !(1 << x), phi, found);
                phi[w] = usize::MAX;
            }
        }
    }
}
