use crate::graph::Graph;

/// Automorphism orbits of `h`, each sorted, listed by smallest vertex.
///
/// For every pair `(a, b)` not yet known to share an orbit, a backtracking
/// search looks for one automorphism mapping `a` to `b`.
pub fn orbits(h: &Graph) -> Vec<Vec<usize>> {
    let n = h.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            if find(&mut parent, a) == find(&mut parent, b) {
                continue;
            }
            if h.degree(a) != h.degree(b) {
                continue;
            }
            if let Some(perm) = automorphism_mapping(h, a, b) {
                for (x, &y) in perm.iter().enumerate() {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    if rx != ry {
                        parent[rx.max(ry)] = rx.min(ry);
                    }
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

fn automorphism_mapping(h: &Graph, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = h.vertex_count();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    perm[a] = b;
    used[b] = true;
    let order: Vec<usize> = std::iter::once(a).chain((0..n).filter(|&v| v != a)).collect();
    fn rec(h: &Graph, order: &[usize], idx: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for x in 0..h.vertex_count() {
            if used[x] || h.degree(x) != h.degree(v) {
                continue;
            }
            let consistent = order[..idx]
                .iter()
                .all(|&u| h.has_edge(u, v) == h.has_edge(perm[u], x));
            if consistent {
                perm[v] = x;
                used[x] = true;
                if rec(h, order, idx + 1, perm, used) {
                    return true;
                }
                used[x] = false;
                perm[v] = usize::MAX;
            }
        }
        false
    }
    rec(h, &order[..], 1, &mut perm, &mut used).then_some(perm)
}
