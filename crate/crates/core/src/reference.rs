//! Deliberately naive reference implementations.
//!
//! These share no code with the optimised routines they are used to check:
//! colourings are enumerated label by label, and packings by walking every
//! partition of the host into blocks of size `|H|`. Only suitable for graphs
//! of a dozen or so vertices.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Sorted class sizes of every proper colouring with labels `0..ell` in
/// which all `ell` classes are non-empty.
pub fn size_vectors_by_labelling(h: &Graph, ell: usize) -> BTreeSet<Vec<usize>> {
    let n = h.vertex_count();
    let mut out = BTreeSet::new();
    if ell == 0 {
        return out;
    }
    let mut labels = vec![0usize; n];
    loop {
        let proper = h.edges().iter().all(|&(u, v)| labels[u] != labels[v]);
        if proper {
            let mut sizes = vec![0usize; ell];
            for &c in &labels {
                sizes[c] += 1;
            }
            if sizes.iter().all(|&s| s > 0) {
                sizes.sort_unstable();
                out.insert(sizes);
            }
        }
        // Odometer increment in base ell.
        let mut i = 0;
        while i < n {
            labels[i] += 1;
            if labels[i] < ell {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out
}

/// Smallest `k` admitting a proper labelling with exactly `k` used labels.
pub fn chromatic_number_by_labelling(h: &Graph) -> usize {
    (1..=h.vertex_count())
        .find(|&k| !size_vectors_by_labelling(h, k).is_empty())
        .unwrap_or(0)
}

/// Whether `block` (a list of host vertices) spans a copy of `h`, by trying
/// every bijection.
pub fn spans_copy(g: &Graph, h: &Graph, block: &[usize]) -> bool {
    let m = h.vertex_count();
    assert_eq!(block.len(), m);
    let edges = h.edges();
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        if edges.iter().all(|&(u, v)| g.has_edge(block[perm[u]], block[perm[v]])) {
            return true;
        }
        if !next_perm(&mut perm) {
            return false;
        }
    }
}

fn next_perm(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Perfect-packing decision by enumerating every partition of `V(g)` into
/// blocks of size `|h|` and testing each block independently.
pub fn has_perfect_packing(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    let m = h.vertex_count();
    if m == 0 || !n.is_multiple_of(m) {
        return false;
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    partitions(g, h, &mut remaining)
}

fn partitions(g: &Graph, h: &Graph, remaining: &mut Vec<usize>) -> bool {
    let Some(&first) = remaining.first() else {
        return true;
    };
    let m = h.vertex_count();
    let rest: Vec<usize> = remaining[1..].to_vec();
    let mut found = false;
    choose(&rest, m - 1, &mut Vec::new(), 0, &mut |chosen| {
        if found {
            return;
        }
        let mut block = vec![first];
        block.extend_from_slice(chosen);
        if spans_copy(g, h, &block) {
            let mut left: Vec<usize> = rest.iter().copied().filter(|x| !chosen.contains(x)).collect();
            if partitions(g, h, &mut left) {
                found = true;
            }
        }
    });
    found
}

fn choose<F: FnMut(&[usize])>(pool: &[usize], k: usize, acc: &mut Vec<usize>, start: usize, f: &mut F) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for i in start..pool.len() {
        acc.push(pool[i]);
        choose(pool, k, acc, i + 1, f);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_labelling() {
        let c5 = Graph::cycle(5).unwrap();
        let v = size_vectors_by_labelling(&c5, 3);
        assert_eq!(v, [vec![1, 2, 2]].into_iter().collect());
        assert!(size_vectors_by_labelling(&c5, 2).is_empty());
        assert_eq!(chromatic_number_by_labelling(&c5), 3);
    }

    #[test]
    fn naive_packing() {
        assert!(has_perfect_packing(&Graph::complete(6), &Graph::complete(3)));
        assert!(!has_perfect_packing(&Graph::cycle(6).unwrap(), &Graph::complete(3)));
        assert!(has_perfect_packing(&Graph::cycle(6).unwrap(), &Graph::path(3).unwrap()));
    }
}
