//! Exact chromatic number and enumeration of optimal colour-class sizes.

use std::collections::BTreeMap;

use crate::error::InvariantError;
use crate::graph::Graph;

/// Hard ceiling imposed by the single-word bitmask representation.
const MASK_BITS: usize = 64;

pub(crate) fn check_cap(h: &Graph, cap: usize) -> Result<(), InvariantError> {
    let n = h.vertex_count();
    if n == 0 {
        return Err(InvariantError::Empty);
    }
    let cap = cap.min(MASK_BITS);
    if n > cap {
        return Err(InvariantError::SizeCapExceeded { n, cap });
    }
    Ok(())
}

/// Chromatic number by DSATUR upper bound, greedy clique lower bound, and a
/// complete backtracking search for every value in between.
pub(crate) fn chromatic_number_masked(h: &Graph) -> usize {
    let n = h.vertex_count();
    if n == 0 {
        return 0;
    }
    let adj: Vec<u64> = (0..n).map(|v| h.neighbor_mask(v)).collect();
    let upper = dsatur_greedy(&adj);
    let lower = greedy_clique(&adj);
    for k in lower..upper {
        let mut colour = vec![usize::MAX; n];
        if colourable(&adj, k, &mut colour, 0, 0) {
            return k;
        }
    }
    upper
}

fn dsatur_greedy(adj: &[u64]) -> usize {
    let n = adj.len();
    let mut colour = vec![usize::MAX; n];
    let mut used = 0;
    for _ in 0..n {
        let v = pick_saturated(adj, &colour);
        let forbidden = neighbour_colours(adj, &colour, v);
        let c = (0..).find(|c| forbidden >> c & 1 == 0).unwrap();
        colour[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn greedy_clique(adj: &[u64]) -> usize {
    let n = adj.len();
    let mut best = 1;
    for start in 0..n {
        let mut clique = 1u64 << start;
        let mut cand = adj[start];
        while cand != 0 {
            // Prefer the candidate with most neighbours among the candidates.
            let mut pick = usize::MAX;
            let mut pick_deg = 0;
            let mut c = cand;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                let d = (adj[v] & cand).count_ones() as usize + 1;
                if d > pick_deg {
                    pick_deg = d;
                    pick = v;
                }
            }
            clique |= 1 << pick;
            cand &= adj[pick];
        }
        best = best.max(clique.count_ones() as usize);
    }
    best
}

fn neighbour_colours(adj: &[u64], colour: &[usize], v: usize) -> u128 {
    let mut forbidden = 0u128;
    let mut nb = adj[v];
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if colour[u] != usize::MAX {
            forbidden |= 1 << colour[u];
        }
    }
    forbidden
}

/// Uncoloured vertex of maximum saturation, ties broken by degree then id.
fn pick_saturated(adj: &[u64], colour: &[usize]) -> usize {
    (0..adj.len())
        .filter(|&v| colour[v] == usize::MAX)
        .max_by_key(|&v| {
            (
                neighbour_colours(adj, colour, v).count_ones(),
                adj[v].count_ones(),
                usize::MAX - v,
            )
        })
        .expect("an uncoloured vertex remains")
}

fn colourable(adj: &[u64], k: usize, colour: &mut [usize], done: usize, used: usize) -> bool {
    if done == adj.len() {
        return true;
    }
    let v = pick_saturated(adj, colour);
    let forbidden = neighbour_colours(adj, colour, v);
    // Symmetry breaking: at most one fresh colour is tried.
    for c in 0..k.min(used + 1) {
        if forbidden >> c & 1 == 1 {
            continue;
        }
        colour[v] = c;
        if colourable(adj, k, colour, done + 1, used.max(c + 1)) {
            return true;
        }
    }
    colour[v] = usize::MAX;
    false
}

/// Sorted class sizes mapped to one witness partition (class masks aligned
/// with the sizes).
pub(crate) type SizeTable = BTreeMap<Vec<usize>, Vec<u64>>;

/// All sorted size vectors of proper partitions of `h` into exactly `ell`
/// non-empty independent sets, each with a witness.
///
/// Works per connected component (partitions into at most `ell` classes,
/// padded with zeros) and combines components under every alignment of
/// their classes.
pub(crate) fn optimal_partitions(h: &Graph, ell: usize) -> SizeTable {
    let n = h.vertex_count();
    let adj: Vec<u64> = (0..n).map(|v| h.neighbor_mask(v)).collect();
    let mut acc: SizeTable = BTreeMap::new();
    acc.insert(vec![0; ell], vec![0; ell]);
    for comp in h.components() {
        let local = component_partitions(&adj, &comp, ell);
        let mut next: SizeTable = BTreeMap::new();
        for (a_sizes, a_masks) in &acc {
            for (b_sizes, b_masks) in &local {
                for_each_distinct_permutation(b_sizes, b_masks, |perm_sizes, perm_masks| {
                    let mut pairs: Vec<(usize, u64)> = (0..ell)
                        .map(|i| (a_sizes[i] + perm_sizes[i], a_masks[i] | perm_masks[i]))
                        .collect();
                    pairs.sort_by_key(|p| p.0);
                    let sizes: Vec<usize> = pairs.iter().map(|p| p.0).collect();
                    next.entry(sizes)
                        .or_insert_with(|| pairs.iter().map(|p| p.1).collect());
                });
            }
        }
        acc = next;
    }
    acc.retain(|sizes, _| sizes.iter().all(|&s| s >= 1));
    acc
}

fn component_partitions(adj: &[u64], comp: &[usize], ell: usize) -> SizeTable {
    let mut out = SizeTable::new();
    let mut classes: Vec<u64> = Vec::with_capacity(ell);
    fn rec(adj: &[u64], comp: &[usize], ell: usize, idx: usize, classes: &mut Vec<u64>, out: &mut SizeTable) {
        if idx == comp.len() {
            let mut pairs: Vec<(usize, u64)> = classes
                .iter()
                .map(|&m| (m.count_ones() as usize, m))
                .chain(std::iter::repeat_n((0, 0), ell - classes.len()))
                .collect();
            pairs.sort_by_key(|p| p.0);
            let sizes = pairs.iter().map(|p| p.0).collect();
            out.entry(sizes).or_insert_with(|| pairs.iter().map(|p| p.1).collect());
            return;
        }
        let v = comp[idx];
        for c in 0..classes.len() {
            if classes[c] & adj[v] == 0 {
                classes[c] |= 1 << v;
                rec(adj, comp, ell, idx + 1, classes, out);
                classes[c] &= !(1 << v);
            }
        }
        if classes.len() < ell {
            classes.push(1 << v);
            rec(adj, comp, ell, idx + 1, classes, out);
            classes.pop();
        }
    }
    rec(adj, comp, ell, 0, &mut classes, &mut out);
    out
}

/// Calls `f` once per distinct rearrangement of `sizes` (a sorted vector),
/// carrying a matching arrangement of `masks`.
fn for_each_distinct_permutation<F>(sizes: &[usize], masks: &[u64], mut f: F)
where
    F: FnMut(&[usize], &[u64]),
{
    let mut perm = sizes.to_vec();
    let mut arranged = vec![0u64; masks.len()];
    loop {
        // Hand out masks of equal-sized classes in their original order.
        let mut taken = vec![false; masks.len()];
        for (slot, &s) in perm.iter().enumerate() {
            let src = (0..sizes.len())
                .find(|&i| !taken[i] && sizes[i] == s)
                .expect("perm is a rearrangement of sizes");
            taken[src] = true;
            arranged[slot] = masks[src];
        }
        f(&perm, &arranged);
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_permutations_of_multiset() {
        let mut seen = Vec::new();
        for_each_distinct_permutation(&[0, 0, 1], &[1, 2, 4], |p, m| {
            seen.push((p.to_vec(), m.to_vec()));
        });
        assert_eq!(seen.len(), 3);
        assert_eq!(seen[2], (vec![1, 0, 0], vec![4, 1, 2]));
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number_masked(&Graph::cycle(5).unwrap()), 3);
        assert_eq!(chromatic_number_masked(&Graph::complete(6)), 6);
        assert_eq!(chromatic_number_masked(&Graph::empty(4)), 1);
        assert_eq!(chromatic_number_masked(&Graph::cycle(8).unwrap()), 2);
        // Groetzsch-style check: Petersen graph has chromatic number 3.
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(chromatic_number_masked(&petersen), 3);
    }

    #[test]
    fn witnesses_are_proper() {
        let h = Graph::star(2).disjoint_union(&Graph::star(4));
        let table = optimal_partitions(&h, 2);
        assert_eq!(table.keys().cloned().collect::<Vec<_>>(), vec![vec![2, 6], vec![3, 5]]);
        for (sizes, masks) in &table {
            let all: u64 = masks.iter().fold(0, |a, m| a | m);
            assert_eq!(all, (1 << 8) - 1);
            for (s, m) in sizes.iter().zip(masks) {
                assert_eq!(m.count_ones() as usize, *s);
                for v in 0..8 {
                    if m >> v & 1 == 1 {
                        assert_eq!(h.neighbor_mask(v) & m, 0);
                    }
                }
            }
        }
    }
}
