//! Chromatic-packing invariants of a pattern graph `H`.
//!
//! Everything here is exact: the critical chromatic number and `chi*` are
//! rationals, and every optimal colouring is enumerated (up to its sorted
//! class sizes), so `D(H)` and `hcf_chi(H)` are never estimated.

mod coloring;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_ratio, ratio_json, Hcf};
use crate::error::InvariantError;
use crate::graph::Graph;

pub(crate) use coloring::check_cap;

/// Default vertex limit for exact colouring enumeration.
pub const DEFAULT_SIZE_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoringOptions {
    /// Graphs above this order are refused rather than approximated.
    pub size_cap: usize,
}

impl Default for ColoringOptions {
    fn default() -> Self {
        ColoringOptions {
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

/// Colour-class sizes of an optimal colouring, non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColoringSizeVector(pub Vec<usize>);

impl ColoringSizeVector {
    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    /// Consecutive differences `x_{i+1} - x_i`.
    pub fn diffs(&self) -> Vec<u64> {
        self.0.windows(2).map(|w| (w[1] - w[0]) as u64).collect()
    }

    /// gcd of this vector's own consecutive differences.
    pub fn internal_hcf(&self) -> Hcf {
        Hcf::of(self.diffs())
    }

    pub fn smallest(&self) -> usize {
        self.0[0]
    }
}

impl fmt::Display for ColoringSizeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One optimal colouring per distinct size vector.
#[derive(Clone, Debug)]
pub struct OptimalColorings {
    pub ell: usize,
    /// `class_of[v]` indexes into the size vector (classes in sorted order).
    pub witnesses: BTreeMap<ColoringSizeVector, Vec<usize>>,
}

impl OptimalColorings {
    pub fn size_vectors(&self) -> impl Iterator<Item = &ColoringSizeVector> {
        self.witnesses.keys()
    }

    pub fn witness(&self, sizes: &ColoringSizeVector) -> Option<&[usize]> {
        self.witnesses.get(sizes).map(Vec::as_slice)
    }
}

/// All invariants of `H` relevant to perfect packings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticProfile {
    pub order: usize,
    pub ell: usize,
    pub sigma: usize,
    #[serde(with = "ratio_json")]
    pub chi_cr: Ratio<i64>,
    pub size_vectors: Vec<ColoringSizeVector>,
    pub diff_set: BTreeSet<u64>,
    pub hcf_chi: Hcf,
    pub component_orders: Vec<usize>,
    pub hcf_c: u64,
    pub hcf_is_one: bool,
    #[serde(with = "ratio_json")]
    pub chi_star: Ratio<i64>,
}

impl ChromaticProfile {
    /// The size vector attaining `sigma` (lexicographically least among ties).
    pub fn sigma_vector(&self) -> &ColoringSizeVector {
        self.size_vectors
            .iter()
            .find(|v| v.smallest() == self.sigma)
            .expect("sigma is attained by some size vector")
    }
}

pub fn chromatic_number(h: &Graph) -> Result<usize, InvariantError> {
    chromatic_number_with(h, ColoringOptions::default())
}

pub fn chromatic_number_with(h: &Graph, opts: ColoringOptions) -> Result<usize, InvariantError> {
    check_cap(h, opts.size_cap)?;
    Ok(coloring::chromatic_number_masked(h))
}

pub fn optimal_colorings(h: &Graph, opts: ColoringOptions) -> Result<OptimalColorings, InvariantError> {
    let ell = chromatic_number_with(h, opts)?;
    let table = coloring::optimal_partitions(h, ell);
    let witnesses = table
        .into_iter()
        .map(|(sizes, masks)| {
            let mut class_of = vec![0; h.vertex_count()];
            for (c, m) in masks.iter().enumerate() {
                for (v, slot) in class_of.iter_mut().enumerate() {
                    if m >> v & 1 == 1 {
                        *slot = c;
                    }
                }
            }
            (ColoringSizeVector(sizes), class_of)
        })
        .collect();
    Ok(OptimalColorings { ell, witnesses })
}

pub fn optimal_size_vectors(h: &Graph) -> Result<BTreeSet<ColoringSizeVector>, InvariantError> {
    Ok(optimal_colorings(h, ColoringOptions::default())?
        .witnesses
        .into_keys()
        .collect())
}

pub fn profile(h: &Graph) -> Result<ChromaticProfile, InvariantError> {
    profile_with(h, ColoringOptions::default())
}

pub fn profile_with(h: &Graph, opts: ColoringOptions) -> Result<ChromaticProfile, InvariantError> {
    let colorings = optimal_colorings(h, opts)?;
    Ok(profile_from_colorings(h, &colorings))
}

pub(crate) fn profile_from_colorings(h: &Graph, colorings: &OptimalColorings) -> ChromaticProfile {
    let order = h.vertex_count();
    let ell = colorings.ell;
    let size_vectors: Vec<ColoringSizeVector> = colorings.size_vectors().cloned().collect();
    let sigma = size_vectors
        .iter()
        .map(ColoringSizeVector::smallest)
        .min()
        .expect("every graph has an optimal colouring");
    // With one colour the formula degenerates to 0/0; the only class has
    // size |H| and chi_cr coincides with chi.
    let chi_cr = if ell >= 2 {
        Ratio::new(((ell - 1) * order) as i64, (order - sigma) as i64)
    } else {
        Ratio::from_integer(ell as i64)
    };
    let diff_set: BTreeSet<u64> = size_vectors.iter().flat_map(|v| v.diffs()).collect();
    let hcf_chi = Hcf::of(diff_set.iter().copied());
    let component_orders: Vec<usize> = h.components().iter().map(Vec::len).collect();
    let hcf_c = Hcf::of(component_orders.iter().map(|&c| c as u64))
        .finite()
        .expect("components are non-empty");
    let hcf_is_one = if ell == 2 {
        hcf_c == 1 && hcf_chi <= Hcf::Finite(2)
    } else {
        hcf_chi.is_one()
    };
    let chi_star = if hcf_is_one {
        chi_cr
    } else {
        Ratio::from_integer(ell as i64)
    };
    ChromaticProfile {
        order,
        ell,
        sigma,
        chi_cr,
        size_vectors,
        diff_set,
        hcf_chi,
        component_orders,
        hcf_c,
        hcf_is_one,
        chi_star,
    }
}

/// The bottlegraph: complete `ell`-partite with `ell - 1` classes of size
/// `z = |H| - sigma` and one class of size `z1 = (ell - 1) sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bottle {
    pub ell: usize,
    pub z1: usize,
    pub z: usize,
    #[serde(with = "ratio_json")]
    pub xi: Ratio<i64>,
    /// `[z, ..., z, z1]`; the small class is last.
    pub part_sizes: Vec<usize>,
}

impl Bottle {
    /// `|B*| = (ell - 1) |H|`.
    pub fn order(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    pub fn graph(&self) -> Graph {
        Graph::complete_multipartite(&self.part_sizes).expect("bottle sizes are valid")
    }

    /// `chi_cr(B*) = ell - 1 + xi`.
    pub fn critical_chromatic_number(&self) -> Ratio<i64> {
        Ratio::from_integer(self.ell as i64 - 1) + self.xi
    }
}

pub fn bottlegraph(h: &Graph) -> Result<Bottle, InvariantError> {
    bottle_from_profile(&profile(h)?)
}

pub fn bottle_from_profile(p: &ChromaticProfile) -> Result<Bottle, InvariantError> {
    if p.ell < 2 {
        return Err(InvariantError::ChromaticNumberTooSmall(p.ell));
    }
    let z1 = (p.ell - 1) * p.sigma;
    let z = p.order - p.sigma;
    let mut part_sizes = vec![z; p.ell - 1];
    part_sizes.push(z1);
    Ok(Bottle {
        ell: p.ell,
        z1,
        z,
        xi: Ratio::new(z1 as i64, z as i64),
        part_sizes,
    })
}

/// Lower bound and leading coefficient of the perfect-packing threshold
/// `delta(H, n)`; the upper bound carries an unspecified additive constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdBounds {
    pub n: usize,
    pub lower: i64,
    /// `1 - 1/chi*(H)`.
    #[serde(with = "ratio_json")]
    pub coefficient: Ratio<i64>,
    /// Whether the `-1` correction was applied (hcf(H) != 1 and chi(H) = 2).
    pub minus_one: bool,
    pub upper_symbolic: String,
}

pub fn threshold_bounds(h: &Graph, n: usize) -> Result<ThresholdBounds, InvariantError> {
    threshold_from_profile(&profile(h)?, n)
}

pub fn threshold_from_profile(p: &ChromaticProfile, n: usize) -> Result<ThresholdBounds, InvariantError> {
    if !n.is_multiple_of(p.order) {
        return Err(InvariantError::NotDivisible { n, order: p.order });
    }
    let coefficient = Ratio::from_integer(1) - p.chi_star.recip();
    let minus_one = !p.hcf_is_one && p.ell == 2;
    let lower = ceil_ratio(&(coefficient * Ratio::from_integer(n as i64))) - minus_one as i64;
    Ok(ThresholdBounds {
        n,
        lower,
        coefficient,
        minus_one,
        upper_symbolic: format!("{coefficient}*n + C"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphExpr;

    fn g(s: &str) -> Graph {
        s.parse::<GraphExpr>().unwrap().build().unwrap()
    }

    fn sv(v: &[usize]) -> ColoringSizeVector {
        ColoringSizeVector(v.to_vec())
    }

    #[test]
    fn chromatic_number_examples() {
        assert_eq!(chromatic_number(&g("C_5")).unwrap(), 3);
        assert_eq!(chromatic_number(&g("K_1")).unwrap(), 1);
        assert_eq!(chromatic_number(&g("K_{1,4}uC_4")).unwrap(), 2);
    }

    #[test]
    fn size_cap_refuses() {
        let big = Graph::cycle(17).unwrap();
        assert!(matches!(
            chromatic_number(&big),
            Err(InvariantError::SizeCapExceeded { n: 17, cap: 16 })
        ));
        let opts = ColoringOptions { size_cap: 20 };
        assert_eq!(chromatic_number_with(&big, opts).unwrap(), 3);
        assert!(matches!(chromatic_number(&Graph::empty(0)), Err(InvariantError::Empty)));
    }

    #[test]
    fn size_vector_examples() {
        let two_stars = optimal_size_vectors(&g("K_{1,2}uK_{1,4}")).unwrap();
        assert_eq!(two_stars, [sv(&[2, 6]), sv(&[3, 5])].into_iter().collect());
        let c5 = optimal_size_vectors(&g("C_5")).unwrap();
        assert_eq!(c5, [sv(&[1, 2, 2])].into_iter().collect());
    }

    #[test]
    fn profile_table_rows() {
        let p = profile(&g("K_{1,2}uC_6")).unwrap();
        assert_eq!(p.ell, 2);
        assert_eq!(p.chi_cr, Ratio::new(9, 5));
        assert_eq!(p.hcf_chi, Hcf::Finite(1));
        assert_eq!(p.hcf_c, 3);
        assert!(!p.hcf_is_one);
        assert_eq!(p.chi_star, Ratio::from_integer(2));

        let p = profile(&g("K_{1,2}uK_{1,4}")).unwrap();
        assert_eq!(p.chi_cr, Ratio::new(4, 3));
        assert_eq!(p.hcf_chi, Hcf::Finite(2));
        assert_eq!(p.hcf_c, 1);
        assert!(p.hcf_is_one);
        assert_eq!(p.chi_star, Ratio::new(4, 3));
    }

    #[test]
    fn complete_graphs() {
        for r in 2..=6 {
            let p = profile(&Graph::complete(r)).unwrap();
            assert_eq!(p.ell, r);
            assert_eq!(p.chi_cr, Ratio::from_integer(r as i64));
            assert_eq!(p.hcf_chi, Hcf::Infinite);
            assert_eq!(p.hcf_c, r as u64);
            assert!(!p.hcf_is_one);
            assert_eq!(p.chi_star, Ratio::from_integer(r as i64));
        }
    }

    #[test]
    fn single_colour_profile() {
        let p = profile(&Graph::complete(1)).unwrap();
        assert_eq!((p.ell, p.sigma), (1, 1));
        assert_eq!(p.chi_cr, Ratio::from_integer(1));
        assert!(p.diff_set.is_empty());
        assert_eq!(p.hcf_chi, Hcf::Infinite);
        assert!(matches!(
            bottle_from_profile(&p),
            Err(InvariantError::ChromaticNumberTooSmall(1))
        ));
    }

    #[test]
    fn bottle_examples() {
        let b = bottlegraph(&g("C_5")).unwrap();
        assert_eq!((b.z1, b.z, b.part_sizes.clone()), (2, 4, vec![4, 4, 2]));
        assert_eq!(b.xi, Ratio::new(1, 2));

        let b = bottlegraph(&g("K_3")).unwrap();
        assert_eq!((b.z1, b.z, b.part_sizes.clone()), (2, 2, vec![2, 2, 2]));
        assert_eq!(b.xi, Ratio::from_integer(1));

        let b = bottlegraph(&g("K_{1,2}uK_{1,4}")).unwrap();
        assert_eq!((b.z1, b.z, b.part_sizes.clone()), (2, 6, vec![6, 2]));
        assert_eq!(b.xi, Ratio::new(1, 3));
    }

    #[test]
    fn bottle_has_same_critical_chromatic_number() {
        for s in ["C_5", "K_3", "K_{1,2}uK_{1,4}", "K_{1,1,3}", "P_3"] {
            let h = g(s);
            let p = profile(&h).unwrap();
            let b = bottle_from_profile(&p).unwrap();
            assert_eq!(b.order(), (p.ell - 1) * p.order);
            assert_eq!(b.critical_chromatic_number(), p.chi_cr, "{s}");
            let opts = ColoringOptions { size_cap: 40 };
            let pb = profile_with(&b.graph(), opts).unwrap();
            assert_eq!(pb.chi_cr, p.chi_cr, "{s}");
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_bounds(&g("K_3"), 12).unwrap().lower, 8);
        assert_eq!(threshold_bounds(&g("C_5"), 30).unwrap().lower, 18);
        let t = threshold_bounds(&g("C_4"), 8).unwrap();
        assert_eq!(t.lower, 3);
        assert!(t.minus_one);
        assert!(matches!(
            threshold_bounds(&g("C_5"), 12),
            Err(InvariantError::NotDivisible { n: 12, order: 5 })
        ));
    }

    #[test]
    fn profile_json_shape() {
        let p = profile(&g("C_6")).unwrap();
        let v: serde_json::Value = serde_json::to_value(&p).unwrap();
        assert_eq!(v["hcf_chi"], "inf");
        assert_eq!(v["chi_cr"]["num"], 2);
        assert_eq!(v["chi_cr"]["den"], 1);
        let back: ChromaticProfile = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }
}
