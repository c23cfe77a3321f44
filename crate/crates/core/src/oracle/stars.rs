use serde::Serialize;

use crate::error::OracleError;
use crate::graph::Graph;

/// An `i`-star: a centre joined to `i` leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: usize,
    pub leaves: Vec<usize>,
}

/// Guaranteed number of disjoint `i`-stars: `ceil(d n / (4 (i+1) Delta))`
/// where `d n = 2 e(G)`.
pub fn guaranteed_star_count(g: &Graph, i: usize) -> usize {
    let max_degree = (0..g.vertex_count()).map(|v| g.degree(v)).max().unwrap_or(0);
    if max_degree == 0 {
        return 0;
    }
    (2 * g.edge_count()).div_ceil(4 * (i + 1) * max_degree)
}

/// Greedily removes disjoint `i`-stars: the centre is the lowest-id vertex
/// with at least `i` remaining neighbours, the leaves its `i` lowest-id
/// remaining neighbours.
///
/// Requires average degree at least `2i`.
pub fn greedy_disjoint_stars(g: &Graph, i: usize) -> Result<Vec<Star>, OracleError> {
    if i == 0 {
        return Err(OracleError::ZeroStar);
    }
    let n = g.vertex_count();
    let e = g.edge_count();
    if n == 0 || e < i * n {
        return Err(OracleError::StarHypothesis {
            average: if n == 0 {
                "undefined".into()
            } else {
                format!("{}", num_rational::Ratio::new(2 * e, n))
            },
            needed: 2 * i,
        });
    }
    let mut alive = vec![true; n];
    let mut stars = Vec::new();
    loop {
        let pick = (0..n).filter(|&v| alive[v]).find_map(|v| {
            let leaves: Vec<usize> = g.neighbors(v).filter(|&u| alive[u]).take(i).collect();
            (leaves.len() == i).then_some((v, leaves))
        });
        let Some((center, leaves)) = pick else { break };
        alive[center] = false;
        for &u in &leaves {
            alive[u] = false;
        }
        stars.push(Star { center, leaves });
    }
    Ok(stars)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k9_two_stars() {
        let g = Graph::complete(9);
        assert_eq!(guaranteed_star_count(&g, 2), 1);
        let stars = greedy_disjoint_stars(&g, 2).unwrap();
        assert_eq!(stars.len(), 3);
        assert_eq!(stars[0], Star { center: 0, leaves: vec![1, 2] });
    }

    #[test]
    fn k4_matching() {
        let stars = greedy_disjoint_stars(&Graph::complete(4), 1).unwrap();
        assert_eq!(stars.len(), 2);
        assert!(stars.len() >= guaranteed_star_count(&Graph::complete(4), 1));
    }

    #[test]
    fn hypothesis_enforced() {
        let c6 = Graph::cycle(6).unwrap();
        assert!(matches!(
            greedy_disjoint_stars(&c6, 2),
            Err(OracleError::StarHypothesis { needed: 4, .. })
        ));
        assert!(matches!(greedy_disjoint_stars(&c6, 0), Err(OracleError::ZeroStar)));
    }
}
