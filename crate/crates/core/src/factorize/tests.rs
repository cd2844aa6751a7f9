use super::claims::{build_control, build_instance};
use super::*;

fn run(id: &str, p: Params) -> VerificationReport {
    let inst = build_instance(id, &p, 1).unwrap();
    verify(&inst, &VerifyOptions { samples: 8, ..Default::default() })
}

fn meet(r: &VerificationReport) -> Option<u128> {
    r.strategies.iter().find_map(|s| s.intersection_order)
}

fn assert_pass(r: &VerificationReport, m: u128) {
    assert_eq!(r.overall, Verdict::Pass, "{}", serde_json::to_string_pretty(r).unwrap());
    for s in &r.strategies[..2] {
        if s.verdict.completed() {
            assert_eq!(s.intersection_order, Some(m), "{} {}", r.claim_id, s.name);
        }
    }
    assert!(r.expectation_met);
}

#[test]
fn row1_blown_sl24_meets_vector_stabilizer_in_4() {
    let r = run("1", Params::abq(2, 2, 2));
    assert_pass(&r, 4);
    assert_eq!(r.strategies[1].orbit_sizes, vec![15]);
    assert_eq!(r.strategies[0].structure_hint.as_deref(), Some("2^2"));
}

#[test]
fn row1_sp_exceptional_case_meets_in_24() {
    let r = run("1-Sp", Params::abq(4, 1, 2));
    assert_pass(&r, 24);
    assert_eq!(r.strategies[0].structure_hint.as_deref(), Some("S4"));
}

#[test]
fn row3_n4_meets_in_3() {
    let r = run("3", Params::nq(4, 2));
    assert_pass(&r, 3);
    assert_eq!(r.strategies[0].structure_hint.as_deref(), Some("C3"));
}

#[test]
fn row4_and_row5_have_trivial_intersection() {
    for id in ["4", "4-Sp", "5", "5-Sp"] {
        let r = run(id, Params::mq(2, 2));
        assert_pass(&r, 1);
        assert_eq!(r.orders.g.clone() * 1u32, r.orders.h.clone() * r.orders.k.clone(), "{id}");
        assert_eq!(r.tight, Some(true), "{id}");
    }
}

#[test]
fn g2_derived_controls_fail() {
    for id in ["neg-8-Sp", "neg-8"] {
        let inst = build_control(id, 1).unwrap();
        let r = verify(&inst, &VerifyOptions { samples: 8, ..Default::default() });
        assert_eq!(r.overall, Verdict::Fail, "{id}");
        assert!(r.expectation_met);
        assert_eq!(r.strategies[1].orbit_sizes, vec![1008], "{id}");
        assert_eq!(meet(&r), Some(6), "{id}");
    }
}

#[test]
fn row9_meets_in_d10() {
    let r = run("9", Params::default());
    assert_pass(&r, 10);
    assert_eq!(r.strategies[0].structure_hint.as_deref(), Some("D10"));
    let q = r.quotient.unwrap();
    assert!(q.projective_holds && q.linear_holds);
    assert_eq!(q.projective, ["3600".to_string(), "3600".to_string()]);
}

#[test]
fn strategies_agree_and_hints_name_small_groups() {
    let (a6, trans, stab) = crate::constructors::sporadic::a6_with_a5s().unwrap();
    let x = enumerate_smaller(&trans, &stab, 1).unwrap();
    assert_eq!(x.order, 10);
    assert_eq!(structure_hint(x.group.as_ref().unwrap()).as_deref(), Some("D10"));
    assert_eq!(structure_hint(&a6).as_deref(), Some("nonabelian of order 360"));
}

#[test]
fn enumerate_refuses_large_groups() {
    let k = crate::gf::field_of_order(2).unwrap();
    let g = crate::constructors::classical_generators(crate::orders::Family::SL, 4, &k).unwrap();
    let pg = crate::grpcore::build_chain(&g, crate::grpcore::PointKind::Vector, &[], 1).unwrap();
    assert!(matches!(enumerate_smaller(&pg, &pg, 1), Err(Error::Strategy(_))));
}

#[test]
fn tightness_distinguishes_affine_from_linear() {
    let k = crate::gf::field_of_order(2).unwrap();
    let v = crate::linalg::unit_vector(4, 0);
    let z_v = crate::constructors::stabilizer_subgroup(crate::constructors::StabKind::Vector, &k, 4, &v, None).unwrap();
    let z_vw = crate::constructors::stabilizer_subgroup(crate::constructors::StabKind::Antiflag, &k, 4, &v, Some(&v)).unwrap();
    let r = check_tight(&Side::Matrix(z_vw.clone()), &Side::Matrix(z_v.clone()), "2^3:SL_3(2)", 1).unwrap();
    assert!(!r.equal);
    assert_eq!((r.located_residual_order, r.catalog_residual_order), (168, 1344));
    assert!(check_tight_specs(&z_v, &z_v, 1).unwrap());
}

#[test]
fn sigma_l_residual_is_sl() {
    let k = crate::gf::field_of_order(2).unwrap();
    let h = crate::constructors::ext_subgroup(crate::constructors::Inner::SL, 2, &k, 2, crate::constructors::Twist::Psi).unwrap().group;
    let x = crate::constructors::ext_subgroup(crate::constructors::Inner::SL, 2, &k, 2, crate::constructors::Twist::None).unwrap().group;
    assert!(check_tight_specs(&h, &x, 1).unwrap());
}

#[test]
fn join_meet_on_s6_is_not_degenerate() {
    use crate::perm::Perm;
    let opts = crate::grpcore::ChainOptions::default();
    let (_, trans, stab) = crate::constructors::sporadic::a6_with_a5s().unwrap();
    let s6 = PermGroup::from_perms("S6", 6, &[Perm::from_cycles(6, &[&[0, 1]]), Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]])], &opts).unwrap();
    // PGL_2(5) on the projective line: A5 with x -> 2x
    let mut gens = trans.generators().to_vec();
    gens.push(Perm::from_cycles(6, &[&[1, 2, 4, 3]]));
    let h = PermGroup::from_perms("PGL_2(5)", 6, &gens, &opts).unwrap();
    assert_eq!(h.order(), 120);
    let a6 = s6.derived_subgroup(1);
    let r = props::join_meet(&a6, &h, &stab, 1).unwrap();
    assert_eq!((r.hl_cap_kl, r.product), (360, 360));
    assert!(r.holds);
}

#[test]
fn property_suite_on_row1_and_row9() {
    for (id, p, m) in [("1", Params::abq(2, 2, 2), 4u128), ("9", Params::default(), 10)] {
        let inst = build_instance(id, &p, 3).unwrap();
        let r = instance_property_suite(&inst, 50, 7).unwrap();
        assert_eq!(r.base_meet, m);
        assert!(r.passed(), "{:?}", r);
    }
}
