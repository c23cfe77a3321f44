use super::*;
use crate::graph::GraphExpr;
use crate::oracle::verify_packing;
use num_rational::Ratio;

fn g(s: &str) -> Graph {
    s.parse::<GraphExpr>().unwrap().build().unwrap()
}

fn packer(s: &str) -> Packer {
    Packer::new(&g(s)).unwrap()
}

fn assert_sound(p: &Packer, plan: &PackingPlan) {
    assert_eq!(p.verify(plan), Ok(()), "{}", plan.to_json());
    let host = plan.host.materialize();
    let realized = p.realize(plan);
    assert_eq!(verify_packing(&host, p.graph(), &realized), Ok(()));
    assert_eq!(plan.copy_count() * p.order(), plan.host.order());
}

#[test]
fn balanced_shift_c5() {
    let p = packer("C_5");
    let plain = p.pack_balanced_shift(10, &[0, 0, 0]).unwrap();
    assert_eq!(plain.host.sizes, vec![10, 10, 10]);
    assert_eq!(plain.placements.len(), 6);
    assert_eq!(plain.copy_count(), 6);
    assert_sound(&p, &plain);

    let shifted = p.pack_balanced_shift(10, &[1, -1, 0]).unwrap();
    assert_eq!(shifted.host.sizes, vec![11, 9, 10]);
    assert_eq!(shifted.copy_count(), 6);
    assert_eq!(shifted.copies_in(Stage::Shift), 1);
    assert_sound(&p, &shifted);
}

#[test]
fn balanced_shift_refusals() {
    assert!(matches!(
        packer("C_4").pack_balanced_shift(8, &[1, -1]),
        Err(PackError::WrongHcfChi(crate::arith::Hcf::Infinite, 1))
    ));
    let p = packer("C_5");
    assert!(matches!(p.pack_balanced_shift(7, &[0, 0, 0]), Err(PackError::Divisibility { .. })));
    assert!(matches!(
        p.pack_balanced_shift(20, &[11, -11, 0]),
        Err(PackError::DeviationTooLarge { deviation: 11, bound: 10 })
    ));
    match p.pack_balanced_shift(0, &[2, 2, -4]) {
        Err(PackError::Infeasible { suggested, .. }) => {
            assert!(p.pack_balanced_shift(suggested, &[2, 2, -4]).is_ok());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn bipartite_shift_example() {
    let p = packer("K_{1,2}uK_{1,4}");
    let plan = p.pack_bipartite_shift(48, 1).unwrap();
    assert_eq!(plan.host.sizes, vec![49, 47]);
    assert_eq!(plan.copies_in(Stage::Equalize), 1);
    assert_eq!(plan.copies_in(Stage::Parity), 3);
    assert_eq!(plan.copies_in(Stage::Mirrored), 8);
    let eq = plan.placements.iter().find(|x| x.stage == Stage::Equalize).unwrap();
    assert_eq!((eq.sizes.clone(), eq.assignment.clone()), (vec![3, 5], vec![1, 0]));
    assert_sound(&p, &plan);

    let mirrored = p.pack_bipartite_shift(48, 0).unwrap();
    assert!(mirrored.placements.iter().all(|x| x.stage == Stage::Mirrored));
    assert_sound(&p, &mirrored);
    assert_sound(&p, &p.pack_bipartite_shift(48, -3).unwrap());

    assert!(matches!(packer("C_6").pack_bipartite_shift(12, 1), Err(PackError::ComponentHcf(6))));
}

#[test]
fn two_cliques_example() {
    let p = packer("K_{1,2}uK_{1,4}");
    let sol = p.clique_split_solution();
    assert_eq!(sol.coefficients, vec![2, -1]);
    assert!(sol.holds());
    let plan = p.pack_two_cliques(16, 1).unwrap();
    assert_eq!(plan.host.sizes, vec![17, 15]);
    assert_eq!(plan.copies_in(Stage::Split), 3);
    assert_eq!(plan.copies_in(Stage::Whole), 1);
    assert_sound(&p, &plan);
    assert_sound(&p, &p.pack_two_cliques(16, -1).unwrap());
    let whole = p.pack_two_cliques(24, 0).unwrap();
    assert_eq!(whole.copies_in(Stage::Whole), 6);
    assert!(matches!(packer("C_6").pack_two_cliques(12, 1), Err(PackError::ComponentHcf(6))));
}

#[test]
fn bottle_expansion() {
    let p = packer("C_5");
    let copies = p.expand_bottle().unwrap();
    assert_eq!(copies.len(), 2);
    assert_eq!(coverage(&copies, 3), vec![4, 4, 2]);
    let k3 = packer("K_3").expand_bottle().unwrap();
    assert_eq!(coverage(&k3, 3), vec![2, 2, 2]);
    let bip = packer("K_{1,2}uK_{1,4}").expand_bottle().unwrap();
    assert_eq!(bip.len(), 1);
    assert_eq!((bip[0].sizes.clone(), bip[0].assignment.clone()), (vec![2, 6], vec![1, 0]));
}

#[test]
fn approach_examples() {
    let p = packer("C_5");
    let out = p.approach_bottle(&HostSpec::multipartite(vec![38, 38, 24]), 0).unwrap();
    assert_eq!(out.residual.sizes, vec![32, 32, 16]);
    assert_eq!(out.bottles_removed, 2);
    assert_eq!(out.deviations, vec![2, 2]);
    assert!(out.bottles_removed as i64 <= out.removal_bound);

    let exact = p.approach_bottle(&HostSpec::multipartite(vec![40, 40, 20]), 0).unwrap();
    assert_eq!(exact.bottles_removed, 0);
    assert_eq!(exact.residual.sizes, vec![40, 40, 20]);

    assert!(matches!(
        p.approach_bottle(&HostSpec::multipartite(vec![10, 70, 20]), 0),
        Err(PackError::Hypothesis(_))
    ));
}

#[test]
fn trim_examples() {
    let p = packer("C_5");
    let (plan, stats) = p.trim_to_exact_bottle(&HostSpec::multipartite(vec![4, 4, 2]), 0).unwrap();
    assert_eq!(plan.copy_count(), 2);
    assert_eq!(stats.residual_bottles, 1);
    assert_sound(&p, &plan);

    // (32,32,16) with D' = 10 deviates by (2,2,-4) from bottle shape.
    let host = HostSpec::multipartite(vec![32, 32, 16]);
    assert_eq!(p.bottle_deviations(&host.sizes, 10).unwrap(), vec![2, 2, -4]);
    match p.trim_to_exact_bottle(&host, 10) {
        Ok((plan, stats)) => {
            assert_eq!(stats.deviation_copies, 6);
            assert_sound(&p, &plan);
        }
        Err(e) => assert!(matches!(e.root(), PackError::Infeasible { .. }), "{e}"),
    }
    assert!(matches!(
        packer("C_4").trim_to_exact_bottle(&HostSpec::multipartite(vec![8, 8]), 0),
        Err(PackError::HcfNotOne)
    ));
}

#[test]
fn near_bottle_examples() {
    let p = packer("C_5");
    let host = HostSpec::multipartite(vec![38, 38, 24]);
    let opts = NearBottleOptions {
        d_prime: Some(10),
        ..Default::default()
    };
    let (plan, stats) = p.pack_near_bottle(&host, &opts).unwrap();
    assert_eq!(stats.deviation_copies, 6);
    assert!(stats.bounds_hold(3, 5));
    assert_sound(&p, &plan);

    let (auto, stats) = p.pack_near_bottle(&host, &NearBottleOptions::default()).unwrap();
    assert_eq!(stats.d_prime, 0);
    assert_sound(&p, &auto);

    // Exact bottle shape fails the strict upper inequality but packs directly.
    let exact = HostSpec::multipartite(vec![40, 40, 20]);
    assert!(p.pack_near_bottle(&exact, &NearBottleOptions::default()).is_err());
    let unchecked = NearBottleOptions {
        check_hypotheses: false,
        ..Default::default()
    };
    let (plan, stats) = p.pack_near_bottle(&exact, &unchecked).unwrap();
    assert_eq!(stats.residual_bottles, 10);
    assert_sound(&p, &plan);

    assert!(matches!(
        packer("K_{1,2}uC_6").pack_near_bottle(&HostSpec::multipartite(vec![50, 40]), &unchecked),
        Err(PackError::HcfNotOne)
    ));
}

#[test]
fn near_bottle_divisibility_stage() {
    let p = packer("C_5");
    // |F|/|H| = 21 is odd, so one copy goes first.
    let host = HostSpec::multipartite(vec![40, 40, 25]);
    let (plan, stats) = p.pack_near_bottle(&host, &NearBottleOptions::default()).unwrap();
    assert_eq!(stats.divisibility_copies, 1);
    assert_sound(&p, &plan);
}

#[test]
fn hypothesis_checks() {
    let p = packer("C_5");
    let (beta, d) = (Ratio::new(1, 100), Ratio::new(1, 10));
    assert!(p.check_near_bottle(&[38, 38, 24], beta, d).is_ok());
    assert!(p.check_near_bottle(&[40, 40, 20], beta, d).is_err());
    // (1 - 19/60)^10 is far above 1/100.
    assert!(p.check_near_bottle(&[38, 38, 60], beta, d).is_err());
    assert!(p.check_near_bottle(&[40, 30, 24], beta, d).is_err());
}

#[test]
fn plan_violations() {
    let p = packer("C_5");
    let mut plan = p.pack_balanced_shift(10, &[1, -1, 0]).unwrap();
    plan.placements[0].count -= 1;
    if plan.placements[0].count == 0 {
        plan.placements.remove(0);
    }
    assert!(matches!(p.verify(&plan), Err(PlanViolation::Coverage { .. })));

    let mut bad = p.pack_balanced_shift(10, &[0, 0, 0]).unwrap();
    bad.placements[0].sizes = vec![1, 1, 3];
    assert!(matches!(p.verify(&bad), Err(PlanViolation::UnknownSizeVector { .. })));

    let mut clash = p.pack_balanced_shift(10, &[0, 0, 0]).unwrap();
    clash.placements[0].assignment = vec![0, 0, 1];
    assert!(matches!(p.verify(&clash), Err(PlanViolation::NotInjective { .. })));

    let other = packer("K_3");
    assert!(matches!(other.verify(&plan), Err(PlanViolation::HashMismatch { .. })));
}

#[test]
fn realize_small_hosts() {
    let k3 = packer("K_3");
    let mut placements = k3.expand_bottle().unwrap();
    for x in &mut placements {
        x.count = 1;
    }
    let plan = k3.plan(HostSpec::multipartite(vec![2, 2, 2]), placements, vec![]);
    assert_sound(&k3, &plan);
    assert_eq!(k3.realize(&plan).copies.len(), 2);

    let c5 = packer("C_5");
    let plan = c5.plan(HostSpec::multipartite(vec![4, 4, 2]), c5.expand_bottle().unwrap(), vec![]);
    assert_sound(&c5, &plan);

    let empty = k3.plan(HostSpec::multipartite(vec![0, 0, 0]), vec![], vec![]);
    assert_eq!(k3.verify(&empty), Ok(()));
    assert!(k3.realize(&empty).copies.is_empty());
}

#[test]
fn shift_solutions_hold() {
    for h in ["C_5", "C_7", "K_{1,2}uK_{1,4}", "K_{1,4}uC_4", "P_5"] {
        let p = packer(h);
        let sol = p.shift_solution();
        assert!(sol.holds(), "{h}");
        assert_eq!(sol.value(), p.profile().hcf_chi.finite().unwrap() as i64);
    }
}

#[test]
fn serialization_is_deterministic() {
    let p = packer("C_5");
    let host = HostSpec::multipartite(vec![38, 38, 24]);
    let a = p.pack_near_bottle(&host, &NearBottleOptions::default()).unwrap().0.to_json();
    let b = p.pack_near_bottle(&host, &NearBottleOptions::default()).unwrap().0.to_json();
    assert_eq!(a, b);
    let parsed: PackingPlan = serde_json::from_str(&a).unwrap();
    assert_eq!(parsed.to_json(), a);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(v["meta"]["H_hash"].is_string());
    assert_eq!(v["host"]["kind"], "multipartite");
    assert!(v["placements"][0]["stage"].is_string());
}
