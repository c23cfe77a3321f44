//! Lower-bound witnesses: hosts of order `k|H|` with large minimum degree
//! but no perfect `H`-packing, each paired with an arithmetic certificate
//! that can be re-checked independently of how it was produced.
//!
//! * `G1`: complete `ell`-partite, classes as equal as possible except one
//!   class one too big and one class one too small.
//! * `G2`: two disjoint cliques whose orders are incompatible with the
//!   component orders of a bipartite `H`.
//! * Komlos bottle: complete `ell`-partite with smallest class `sigma k - 1`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ceil_ratio, Hcf};
use crate::error::ConstructionError;
use crate::graph::Graph;
use crate::invariants::{profile, ChromaticProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtremalKind {
    G1,
    G2,
    KomlosBottle,
}

impl ExtremalKind {
    /// Whether the host is complete multipartite (as opposed to two cliques).
    pub fn is_multipartite(self) -> bool {
        !matches!(self, ExtremalKind::G2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub kind: ExtremalKind,
    #[serde(with = "crate::graph::graph_json")]
    pub h: Graph,
    pub k: usize,
    /// Part sizes (multipartite kinds) or clique orders (`G2`).
    pub sizes: Vec<usize>,
    pub claimed_min_degree: usize,
    /// Whether `H` meets the condition under which no perfect packing exists.
    pub no_packing_guaranteed: bool,
}

impl ExtremalSpec {
    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn materialize(&self) -> Graph {
        match self.kind {
            ExtremalKind::G2 => Graph::disjoint_cliques(&self.sizes),
            _ => Graph::complete_multipartite(&self.sizes).expect("construction sizes are valid"),
        }
    }
}

/// A machine-checkable reason why the host has no perfect `H`-packing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// Every copy changes `|U_i1| - |U_i2|` (uncovered parts) by a multiple
    /// of `modulus`, and the initial difference is not such a multiple.
    ResidueModHcf {
        i1: usize,
        i2: usize,
        modulus: Hcf,
        difference: i64,
    },
    /// Every copy takes at least `sigma` vertices from every part, so the
    /// `copies` copies of a perfect packing need `sigma * copies` vertices in
    /// the smallest part.
    SigmaCounting {
        smallest_part: usize,
        sigma: usize,
        copies: usize,
    },
    /// Every copy takes a sum of component orders from each clique, and
    /// all component orders are multiples of `modulus`.
    ComponentResidue {
        clique: usize,
        order: usize,
        modulus: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate rejected: {0}")]
pub struct Rejection(pub String);

fn h_profile(h: &Graph) -> Result<ChromaticProfile, ConstructionError> {
    Ok(profile(h)?)
}

fn check_k(k: usize) -> Result<(), ConstructionError> {
    if k == 0 {
        Err(ConstructionError::ZeroMultiplier)
    } else {
        Ok(())
    }
}

/// Sizes summing to `total` split into `parts` values as equal as possible,
/// larger values first.
fn balanced(total: usize, parts: usize) -> Vec<usize> {
    if parts == 0 {
        return Vec::new();
    }
    let (q, r) = (total / parts, total % parts);
    (0..parts).map(|i| q + (i < r) as usize).collect()
}

fn verify_degree(spec: &ExtremalSpec) -> Result<(), ConstructionError> {
    let actual = spec.materialize().min_degree();
    if actual != spec.claimed_min_degree {
        return Err(ConstructionError::DegreeMismatch {
            expected: spec.claimed_min_degree,
            actual,
        });
    }
    Ok(())
}

/// `ceil((1 - 1/chi) n) - 1` for a rational `chi`.
fn degree_formula(chi: Ratio<i64>, n: usize) -> usize {
    let value = (Ratio::from_integer(1) - chi.recip()) * Ratio::from_integer(n as i64);
    (ceil_ratio(&value) - 1).max(0) as usize
}

fn g1_sizes(n: usize, ell: usize) -> Vec<usize> {
    let (lo, hi) = (n / ell, n.div_ceil(ell));
    let first = lo + 1;
    let second = hi.saturating_sub(1);
    let mut sizes = vec![first, second];
    sizes.extend(balanced(n - first - second, ell - 2));
    sizes
}

pub fn build_g1(h: &Graph, k: usize) -> Result<(Graph, ExtremalSpec), ConstructionError> {
    check_k(k)?;
    let p = h_profile(h)?;
    let ell = p.ell;
    if ell < 2 {
        return Err(crate::error::InvariantError::ChromaticNumberTooSmall(ell).into());
    }
    let n = k * p.order;
    let spec = ExtremalSpec {
        kind: ExtremalKind::G1,
        h: h.clone(),
        k,
        sizes: g1_sizes(n, ell),
        claimed_min_degree: degree_formula(Ratio::from_integer(ell as i64), n),
        no_packing_guaranteed: g1_guaranteed(&p),
    };
    verify_degree(&spec)?;
    Ok((spec.materialize(), spec))
}

fn g1_guaranteed(p: &ChromaticProfile) -> bool {
    (p.ell >= 3 && !p.hcf_chi.is_one()) || (p.ell == 2 && p.hcf_chi >= Hcf::Finite(3))
}

fn g2_sizes(n: usize, hcf_c: u64) -> Vec<usize> {
    if hcf_c == 2 && !n.is_multiple_of(4) {
        vec![n / 2, n / 2]
    } else {
        vec![n / 2 + 1, n.div_ceil(2) - 1]
    }
}

pub fn build_g2(h: &Graph, k: usize) -> Result<(Graph, ExtremalSpec), ConstructionError> {
    check_k(k)?;
    let p = h_profile(h)?;
    if p.ell > 2 {
        return Err(ConstructionError::NotBipartite(p.ell));
    }
    let sizes = g2_sizes(k * p.order, p.hcf_c);
    let spec = ExtremalSpec {
        kind: ExtremalKind::G2,
        h: h.clone(),
        k,
        claimed_min_degree: sizes.iter().min().copied().unwrap_or(0).saturating_sub(1),
        sizes,
        no_packing_guaranteed: p.hcf_c != 1,
    };
    verify_degree(&spec)?;
    Ok((spec.materialize(), spec))
}

pub fn build_komlos_bottle(h: &Graph, k: usize) -> Result<(Graph, ExtremalSpec), ConstructionError> {
    check_k(k)?;
    let p = h_profile(h)?;
    if p.ell < 2 {
        return Err(crate::error::InvariantError::ChromaticNumberTooSmall(p.ell).into());
    }
    let smallest_budget = p.sigma * k;
    if smallest_budget < 2 {
        return Err(ConstructionError::SmallestClassEmpty(smallest_budget));
    }
    let n = k * p.order;
    let smallest = smallest_budget - 1;
    let mut sizes = balanced(n - smallest, p.ell - 1);
    sizes.push(smallest);
    let spec = ExtremalSpec {
        kind: ExtremalKind::KomlosBottle,
        h: h.clone(),
        k,
        sizes,
        claimed_min_degree: degree_formula(p.chi_cr, n),
        no_packing_guaranteed: true,
    };
    verify_degree(&spec)?;
    Ok((spec.materialize(), spec))
}

/// Builds the certificate matching the construction, or refuses when the
/// no-packing condition on `H` does not hold.
pub fn certify_no_packing(spec: &ExtremalSpec) -> Result<Certificate, ConstructionError> {
    let p = h_profile(&spec.h)?;
    match spec.kind {
        ExtremalKind::G1 => {
            if !g1_guaranteed(&p) {
                return Err(ConstructionError::Refused(format!(
                    "G1 needs hcf_chi(H) != 1 (chi >= 3) or hcf_chi(H) >= 3 (chi = 2); \
                     here chi = {}, hcf_chi = {}",
                    p.ell, p.hcf_chi
                )));
            }
            let modulus = p.hcf_chi;
            let s = &spec.sizes;
            let pairs = (0..s.len()).flat_map(|i| (0..s.len()).map(move |j| (i, j)));
            let diff = |(i, j): (usize, usize)| s[i] as i64 - s[j] as i64;
            let pick = pairs
                .clone()
                .find(|&ij| diff(ij) == 1)
                .or_else(|| pairs.clone().find(|&ij| diff(ij) > 0 && !modulus.divides(diff(ij))))
                .ok_or_else(|| ConstructionError::Refused("no incongruent pair of classes".into()))?;
            Ok(Certificate::ResidueModHcf {
                i1: pick.0,
                i2: pick.1,
                modulus,
                difference: diff(pick),
            })
        }
        ExtremalKind::KomlosBottle => {
            let smallest_part = *spec.sizes.iter().min().expect("non-empty");
            Ok(Certificate::SigmaCounting {
                smallest_part,
                sigma: p.sigma,
                copies: spec.order() / p.order,
            })
        }
        ExtremalKind::G2 => {
            if p.hcf_c == 1 {
                return Err(ConstructionError::Refused("G2 needs hcf_c(H) != 1".into()));
            }
            let clique = spec
                .sizes
                .iter()
                .position(|&c| !(c as u64).is_multiple_of(p.hcf_c))
                .ok_or_else(|| ConstructionError::Refused("both clique orders divisible by hcf_c".into()))?;
            Ok(Certificate::ComponentResidue {
                clique,
                order: spec.sizes[clique],
                modulus: p.hcf_c,
            })
        }
    }
}

/// Re-derives everything the certificate relies on: the host sizes (by
/// rebuilding the construction) and the divisibility facts about `H`.
pub fn check_certificate(cert: &Certificate, spec: &ExtremalSpec) -> Result<(), Rejection> {
    let reject = |msg: String| Err(Rejection(msg));
    let p = profile(&spec.h).map_err(|e| Rejection(e.to_string()))?;
    let rebuilt = match spec.kind {
        ExtremalKind::G1 => build_g1(&spec.h, spec.k),
        ExtremalKind::G2 => build_g2(&spec.h, spec.k),
        ExtremalKind::KomlosBottle => build_komlos_bottle(&spec.h, spec.k),
    }
    .map_err(|e| Rejection(e.to_string()))?;
    if rebuilt.1.sizes != spec.sizes {
        return reject(format!(
            "sizes {:?} do not match the construction {:?}",
            spec.sizes, rebuilt.1.sizes
        ));
    }
    match *cert {
        Certificate::ResidueModHcf {
            i1,
            i2,
            modulus,
            difference,
        } => {
            if !spec.kind.is_multipartite() || spec.sizes.len() != p.ell {
                return reject("residue certificates need a complete chi(H)-partite host".into());
            }
            if modulus == Hcf::Finite(0) || modulus == Hcf::Finite(1) {
                return reject(format!("modulus {modulus} must be at least 2"));
            }
            let (Some(&a), Some(&b)) = (spec.sizes.get(i1), spec.sizes.get(i2)) else {
                return reject("part index out of range".into());
            };
            if a as i64 - b as i64 != difference {
                return reject(format!("|U_{i1}| - |U_{i2}| = {} != {difference}", a as i64 - b as i64));
            }
            if modulus.divides(difference) {
                return reject(format!("{difference} is congruent to 0 mod {modulus}"));
            }
            for v in &p.size_vectors {
                let s = v.sizes();
                for x in s {
                    for y in s {
                        if !modulus.divides(*x as i64 - *y as i64) {
                            return reject(format!("size vector {v} has classes differing by {} mod {modulus}", *x as i64 - *y as i64));
                        }
                    }
                }
            }
            Ok(())
        }
        Certificate::SigmaCounting {
            smallest_part,
            sigma,
            copies,
        } => {
            if !spec.kind.is_multipartite() || spec.sizes.len() != p.ell {
                return reject("sigma counting needs a complete chi(H)-partite host".into());
            }
            if sigma != p.sigma {
                return reject(format!("sigma(H) is {}, not {sigma}", p.sigma));
            }
            if copies * p.order != spec.order() {
                return reject(format!("{copies} copies do not cover {} vertices", spec.order()));
            }
            if !spec.sizes.contains(&smallest_part) {
                return reject(format!("no part of size {smallest_part}"));
            }
            if smallest_part >= sigma * copies {
                return reject(format!("{smallest_part} >= sigma * copies = {}", sigma * copies));
            }
            Ok(())
        }
        Certificate::ComponentResidue { clique, order, modulus } => {
            if spec.kind != ExtremalKind::G2 {
                return reject("component residues need a two-clique host".into());
            }
            if modulus < 2 {
                return reject(format!("modulus {modulus} must be at least 2"));
            }
            if let Some(c) = p.component_orders.iter().find(|&&c| !(c as u64).is_multiple_of(modulus)) {
                return reject(format!("component of order {c} is not a multiple of {modulus}"));
            }
            if spec.sizes.get(clique) != Some(&order) {
                return reject(format!("clique {clique} does not have order {order}"));
            }
            if (order as u64).is_multiple_of(modulus) {
                return reject(format!("{order} is divisible by {modulus}"));
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphExpr;

    fn g(s: &str) -> Graph {
        s.parse::<GraphExpr>().unwrap().build().unwrap()
    }

    #[test]
    fn g1_examples() {
        let (_, s) = build_g1(&g("K_{1,1,3}"), 1).unwrap();
        assert_eq!((s.sizes.clone(), s.claimed_min_degree), (vec![2, 1, 2], 3));
        assert!(s.no_packing_guaranteed);
        let (_, s) = build_g1(&g("C_4"), 1).unwrap();
        assert_eq!((s.sizes.clone(), s.claimed_min_degree), (vec![3, 1], 1));
        let (host, s) = build_g1(&g("C_6"), 2).unwrap();
        assert_eq!((s.sizes.clone(), s.claimed_min_degree), (vec![7, 5], 5));
        assert_eq!(host.vertex_count(), 12);
        assert!(matches!(build_g1(&g("C_4"), 0), Err(ConstructionError::ZeroMultiplier)));
    }

    #[test]
    fn g1_remaining_classes() {
        // n = 13, ell = 5: floor 2, ceil 3; U1 = 3, U2 = 2, rest 8 over 3 classes.
        let sizes = g1_sizes(13, 5);
        assert_eq!(sizes, vec![3, 2, 3, 3, 2]);
        assert_eq!(g1_sizes(12, 4), vec![4, 2, 3, 3]);
    }

    #[test]
    fn g2_examples() {
        let (_, s) = build_g2(&g("K_2"), 1).unwrap();
        assert_eq!(s.sizes, vec![1, 1]);
        let (_, s) = build_g2(&g("C_4"), 1).unwrap();
        assert_eq!(s.sizes, vec![3, 1]);
        let (_, s) = build_g2(&g("C_6"), 1).unwrap();
        assert_eq!((s.sizes.clone(), s.claimed_min_degree), (vec![4, 2], 1));
        assert!(matches!(build_g2(&g("C_5"), 1), Err(ConstructionError::NotBipartite(3))));
    }

    #[test]
    fn komlos_examples() {
        let (_, s) = build_komlos_bottle(&g("C_5"), 2).unwrap();
        assert_eq!((s.sizes.clone(), s.claimed_min_degree), (vec![5, 4, 1], 5));
        let (_, s) = build_komlos_bottle(&g("K_3"), 2).unwrap();
        assert_eq!((s.sizes.clone(), s.claimed_min_degree), (vec![3, 2, 1], 3));
        let (_, s) = build_komlos_bottle(&g("K_2"), 3).unwrap();
        assert_eq!((s.sizes.clone(), s.claimed_min_degree), (vec![4, 2], 2));
        assert!(matches!(
            build_komlos_bottle(&g("C_5"), 1),
            Err(ConstructionError::SmallestClassEmpty(1))
        ));
    }

    #[test]
    fn certificate_examples() {
        let (_, s) = build_g1(&g("K_{1,1,3}"), 1).unwrap();
        let c = certify_no_packing(&s).unwrap();
        assert_eq!(
            c,
            Certificate::ResidueModHcf {
                i1: 0,
                i2: 1,
                modulus: Hcf::Finite(2),
                difference: 1
            }
        );
        assert_eq!(check_certificate(&c, &s), Ok(()));

        let (_, s) = build_komlos_bottle(&g("C_5"), 2).unwrap();
        let c = certify_no_packing(&s).unwrap();
        assert_eq!(
            c,
            Certificate::SigmaCounting {
                smallest_part: 1,
                sigma: 1,
                copies: 2
            }
        );
        assert_eq!(check_certificate(&c, &s), Ok(()));

        let (_, s) = build_g2(&g("C_6"), 1).unwrap();
        let c = certify_no_packing(&s).unwrap();
        assert_eq!(
            c,
            Certificate::ComponentResidue {
                clique: 0,
                order: 4,
                modulus: 6
            }
        );
        assert_eq!(check_certificate(&c, &s), Ok(()));
    }

    #[test]
    fn forged_certificates_rejected() {
        let (_, s) = build_g1(&g("K_{1,1,3}"), 1).unwrap();
        let forged = Certificate::ResidueModHcf {
            i1: 0,
            i2: 1,
            modulus: Hcf::Finite(2),
            difference: 2,
        };
        assert!(check_certificate(&forged, &s).is_err());
        // A modulus that does not divide D(H) is caught by the side condition.
        let wrong_modulus = Certificate::ResidueModHcf {
            i1: 0,
            i2: 1,
            modulus: Hcf::Finite(3),
            difference: 1,
        };
        assert!(check_certificate(&wrong_modulus, &s).is_err());

        let (_, s) = build_komlos_bottle(&g("C_5"), 2).unwrap();
        let bad_sigma = Certificate::SigmaCounting {
            smallest_part: 1,
            sigma: 2,
            copies: 2,
        };
        assert!(check_certificate(&bad_sigma, &s).is_err());
        let mut tampered = s.clone();
        tampered.sizes = vec![4, 4, 2];
        let c = Certificate::SigmaCounting {
            smallest_part: 2,
            sigma: 1,
            copies: 2,
        };
        assert!(check_certificate(&c, &tampered).is_err());
    }

    #[test]
    fn refusals() {
        // hcf_chi(C_5) = 1: the residue argument does not apply.
        let (_, s) = build_g1(&g("C_5"), 1).unwrap();
        assert!(!s.no_packing_guaranteed);
        assert!(matches!(certify_no_packing(&s), Err(ConstructionError::Refused(_))));
        let (_, s) = build_g2(&g("K_{1,2}uK_{1,4}"), 1).unwrap();
        assert!(matches!(certify_no_packing(&s), Err(ConstructionError::Refused(_))));
    }

    #[test]
    fn g2_degree_against_its_own_order() {
        // delta(G2) >= (1 - 1/chi(H)) |G2| - 2 for bipartite H.
        for (h, k) in [("K_2", 1), ("C_4", 1), ("C_6", 1), ("C_4", 3), ("K_2", 2), ("C_6", 5)] {
            let (host, s) = build_g2(&g(h), k).unwrap();
            assert!(2 * (host.min_degree() + 2) >= s.order(), "{h} k={k}");
        }
    }
}
