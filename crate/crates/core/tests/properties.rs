//! Randomised invariants checked against brute-force references.

mod common;

use chromapack::arith::Hcf;
use chromapack::error::PackError;
use chromapack::extremal::{build_g1, build_komlos_bottle, certify_no_packing, check_certificate};
use chromapack::graph::Graph;
use chromapack::invariants::{bottle_from_profile, profile};
use chromapack::oracle::{greedy_disjoint_stars, guaranteed_star_count, has_perfect_packing, Mode, SearchOptions};
use chromapack::packer::{verify_plan, Packer, PlanViolation};
use chromapack::reference;
use num_rational::Ratio;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

fn nonempty_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(max_n).prop_filter("needs an edge", |g| g.edge_count() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn profile_matches_labelling(h in graph_strategy(7)) {
        let p = profile(&h).unwrap();
        let chi = reference::chromatic_number_by_labelling(&h);
        prop_assert_eq!(p.ell, chi);
        let brute = reference::size_vectors_by_labelling(&h, chi);
        let ours: std::collections::BTreeSet<Vec<usize>> =
            p.size_vectors.iter().map(|v| v.sizes().to_vec()).collect();
        prop_assert_eq!(&ours, &brute);
        prop_assert_eq!(p.sigma, brute.iter().map(|v| v[0]).min().unwrap());
        for v in &brute {
            prop_assert_eq!(v.iter().sum::<usize>(), h.vertex_count());
        }
    }

    #[test]
    fn critical_chromatic_number_bounds(h in nonempty_graph(7)) {
        let p = profile(&h).unwrap();
        let ell = Ratio::from_integer(p.ell as i64);
        prop_assert!(ell - 1 < p.chi_cr && p.chi_cr <= ell);
        prop_assert!(p.chi_star == p.chi_cr || p.chi_star == ell);
        prop_assert_eq!(p.chi_star == p.chi_cr, p.hcf_is_one || p.chi_cr == ell);
    }

    #[test]
    fn hcf_chi_is_gcd_of_differences(h in nonempty_graph(7)) {
        let p = profile(&h).unwrap();
        let diffs: Vec<u64> = p
            .size_vectors
            .iter()
            .flat_map(|v| v.sizes().windows(2).map(|w| (w[1] - w[0]) as u64).collect::<Vec<_>>())
            .collect();
        let g = diffs.iter().fold(0u64, |a, &b| num_integer::gcd(a, b));
        let expected = if g == 0 { Hcf::Infinite } else { Hcf::Finite(g) };
        prop_assert_eq!(p.hcf_chi, expected);
        let comps = h.components().iter().fold(0u64, |a, c| num_integer::gcd(a, c.len() as u64));
        prop_assert_eq!(p.hcf_c, comps);
    }

    #[test]
    fn bottle_has_expected_order(h in nonempty_graph(7)) {
        let p = profile(&h).unwrap();
        prop_assume!(p.ell >= 2);
        let b = bottle_from_profile(&p).unwrap();
        prop_assert_eq!(b.order(), (p.ell - 1) * h.vertex_count());
        prop_assert_eq!(b.critical_chromatic_number(), p.chi_cr);
        prop_assert_eq!(b.part_sizes.len(), p.ell);
    }

    #[test]
    fn g1_degree_and_certificate(h in nonempty_graph(5), k in 1usize..3) {
        let p = profile(&h).unwrap();
        prop_assume!(p.ell >= 2);
        let (host, spec) = build_g1(&h, k).unwrap();
        prop_assert_eq!(host.min_degree(), spec.claimed_min_degree);
        if let Ok(cert) = certify_no_packing(&spec) {
            prop_assert!(check_certificate(&cert, &spec).is_ok());
            if host.vertex_count() <= 12 {
                prop_assert!(!reference::has_perfect_packing(&host, &h));
            }
        }
    }

    #[test]
    fn bottle_construction_has_no_packing(h in nonempty_graph(5)) {
        let p = profile(&h).unwrap();
        prop_assume!(p.ell >= 2);
        if let Ok((host, spec)) = build_komlos_bottle(&h, 2) {
            prop_assert_eq!(host.min_degree(), spec.claimed_min_degree);
            let cert = certify_no_packing(&spec).unwrap();
            prop_assert!(check_certificate(&cert, &spec).is_ok());
            let d = has_perfect_packing(&host, &h, Mode::Decide, &SearchOptions::default()).unwrap();
            prop_assert!(!d.is_yes());
        }
    }

    #[test]
    fn oracle_matches_reference(host in graph_strategy(8), h in nonempty_graph(4)) {
        let d = has_perfect_packing(&host, &h, Mode::Decide, &SearchOptions::default()).unwrap();
        prop_assert_eq!(d.is_yes(), reference::has_perfect_packing(&host, &h));
    }

    #[test]
    fn stars_meet_guarantee(host in graph_strategy(8), i in 1usize..4) {
        let n = host.vertex_count();
        prop_assume!(host.edge_count() >= i * n);
        let stars = greedy_disjoint_stars(&host, i).unwrap();
        prop_assert!(stars.len() >= guaranteed_star_count(&host, i));
    }

    #[test]
    fn balanced_shift_plans_verify(a0 in -8i64..=8, a1 in -8i64..=8, m in 2i64..8) {
        let h: Graph = "C_5".parse::<chromapack::graph::GraphExpr>().unwrap().build().unwrap();
        let packer = Packer::new(&h).unwrap();
        let a = [a0, a1, -a0 - a1];
        prop_assume!(a[2].abs() <= 10);
        match packer.pack_balanced_shift(10 * m, &a) {
            Ok(plan) => {
                prop_assert!(verify_plan(&h, &plan).is_ok());
                prop_assert_eq!(plan.host.sizes.iter().map(|&s| s as i64).collect::<Vec<_>>(),
                    a.iter().map(|x| x + 10 * m).collect::<Vec<_>>());
            }
            Err(PackError::Infeasible { suggested, .. }) => {
                prop_assert!(suggested > 10 * m);
                prop_assert!(packer.pack_balanced_shift(suggested, &a).is_ok());
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn tampered_plans_are_rejected(a in -3i64..=3, extra in 1usize..4) {
        let h: Graph = "K_{1,2}uK_{1,4}".parse::<chromapack::graph::GraphExpr>().unwrap().build().unwrap();
        let packer = Packer::new(&h).unwrap();
        let mut plan = packer.pack_bipartite_shift(48, a).unwrap();
        prop_assert!(verify_plan(&h, &plan).is_ok());
        plan.placements[0].count += extra;
        let is_coverage = matches!(verify_plan(&h, &plan), Err(PlanViolation::Coverage { .. }));
        prop_assert!(is_coverage);
    }
}
