use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::constructors::{automorphism_element, classical_generators, ext_subgroup, stabilizer_subgroup, AutKind, Inner, StabKind, Twist};
use crate::gf::field_of_order;
use crate::linalg::{unit_vector, Mat};
use crate::orders::Family;

fn sl(n: usize, q: u64) -> GroupSpec {
    classical_generators(Family::SL, n, &field_of_order(q).unwrap()).unwrap()
}

fn e(n: usize, i: usize) -> ActionPoint {
    ActionPoint::Vector(unit_vector(n, i))
}

fn vector_chain(g: &GroupSpec) -> PermGroup {
    build_chain(g, PointKind::Vector, &[], 1).unwrap()
}

/// `H = SL_2(4)` blown up into `SL_4(2)`.
fn blown_sl24() -> GroupSpec {
    ext_subgroup(Inner::SL, 2, &field_of_order(2).unwrap(), 2, Twist::None).unwrap().group
}

#[test]
fn orbit_examples() {
    assert_eq!(orbit(&sl(2, 2), &e(2, 0), &OrbitOptions::default()).unwrap().size, 3);
    assert_eq!(orbit(&blown_sl24(), &e(4, 0), &OrbitOptions::default()).unwrap().size, 15);
    let k = field_of_order(2).unwrap();
    let kv = stabilizer_subgroup(StabKind::Vector, &k, 3, &unit_vector(3, 0), None).unwrap();
    assert_eq!(orbit(&kv, &e(3, 0), &OrbitOptions::default()).unwrap().size, 1);
}

#[test]
fn orbit_size_matches_brute_force() {
    // Close {e1} under the matrices directly.
    let h = blown_sl24();
    let k = field_of_order(2).unwrap();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([unit_vector(4, 0)]);
    let mut frontier = vec![unit_vector(4, 0)];
    while let Some(v) = frontier.pop() {
        for g in &h.gens {
            let w = g.apply_vector(&k, &v).unwrap();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    assert_eq!(seen.len(), 15);
}

#[test]
fn chain_orders() {
    assert_eq!(vector_chain(&sl(3, 2)).order(), 8 * 3 * 7);
    let sp = classical_generators(Family::Sp, 4, &field_of_order(2).unwrap()).unwrap();
    assert_eq!(vector_chain(&sp).order(), 16 * 3 * 15);
    let a6 = PermGroup::from_perms(
        "A6",
        6,
        &[Perm::from_cycles(6, &[&[0, 1, 2]]), Perm::from_cycles(6, &[&[1, 2, 3, 4, 5]])],
        &ChainOptions::default(),
    )
    .unwrap();
    assert_eq!(a6.order(), 360);
}

#[test]
fn chain_order_ignores_base_hint() {
    let g = sl(3, 3);
    let a = build_chain(&g, PointKind::Vector, &[e(3, 0)], 1).unwrap();
    let b = build_chain(&g, PointKind::Vector, &[e(3, 2), e(3, 1)], 7).unwrap();
    assert_eq!(a.order(), b.order());
    assert_eq!(a.order(), 5616);
}

#[test]
fn membership() {
    let g = sl(2, 4);
    let c = vector_chain(&g);
    for x in &g.gens {
        assert!(c.contains(x).unwrap());
    }
    let k = field_of_order(4).unwrap();
    assert!(c.contains(&GroupElement::identity(&k, 2)).unwrap());
    let d = GroupElement::linear(&k, Mat::diag(&k, &[k.primitive(), 1])).unwrap();
    assert!(!c.contains(&d).unwrap());
}

#[test]
fn stabilizers() {
    let c = vector_chain(&sl(2, 2));
    assert_eq!(c.stabilizer(&e(2, 0), 1).unwrap().order(), 2);

    let k = field_of_order(2).unwrap();
    let kv = stabilizer_subgroup(StabKind::Vector, &k, 4, &unit_vector(4, 0), None).unwrap();
    let kc = vector_chain(&kv);
    assert_eq!(kc.stabilizer(&e(4, 0), 1).unwrap().order(), kc.order());

    let h = vector_chain(&blown_sl24());
    let hv = h.stabilizer(&e(4, 0), 1).unwrap();
    assert_eq!(hv.order(), 4);
    assert!(hv.is_abelian());
    assert_eq!(hv.order_spectrum().unwrap().get(&2), Some(&3));
}

#[test]
fn orbit_stabilizer() {
    for (g, x) in [(sl(3, 2), e(3, 1)), (blown_sl24(), e(4, 2)), (sl(2, 5), e(2, 0))] {
        let o = orbit(&g, &x, &OrbitOptions::default()).unwrap().size as u128;
        let c = vector_chain(&g);
        assert_eq!(o * c.stabilizer(&x, 3).unwrap().order(), c.order());
    }
}

#[test]
fn residuals() {
    let c = vector_chain(&sl(3, 2));
    assert_eq!(c.solvable_residual(1).order(), 168);

    let k = field_of_order(4).unwrap();
    let sigma = sl(2, 4).adjoin("ΣL_2(4)", &[automorphism_element(AutKind::Phi, &k, 2)]);
    let s = vector_chain(&sigma);
    assert_eq!(s.order(), 120);
    let r = s.solvable_residual(1);
    assert_eq!(r.order(), 60);
    assert!(r.equals(&vector_chain(&sl(2, 4))));
    assert!(s.derived_subgroup(1).contains_group(&r));
    assert!(r.solvable_residual(2).equals(&r));

    let cyc = PermGroup::from_perms("C6", 6, &[Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]])], &ChainOptions::default()).unwrap();
    assert_eq!(cyc.solvable_residual(1).order(), 1);
}

#[test]
fn product_membership_examples() {
    let g = sl(4, 2);
    let h = blown_sl24();
    let w = e(4, 0);
    let ho = orbit(&h, &w, &OrbitOptions::default()).unwrap();
    let k = field_of_order(2).unwrap();
    assert!(product_membership(&ho, &GroupElement::identity(&k, 4), &w).unwrap());
    for x in &h.gens {
        assert!(product_membership(&ho, x, &w).unwrap());
    }
    let c = vector_chain(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let x = c.random_element(&mut rng).unwrap();
        assert!(product_membership(&ho, &x, &w).unwrap());
    }
}

#[test]
fn product_membership_matches_set_product() {
    // SL_2(3) with H = <h> for one element, K = G_{e1}; compare against HK
    // formed by multiplying out.
    let k = field_of_order(3).unwrap();
    let g = sl(2, 3);
    let c = vector_chain(&g);
    let dom = c.domain().unwrap().clone();
    let mut all = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for cc in 0..3 {
                for d in 0..3 {
                    let mut m = Mat::diag(&k, &[1, 1]);
                    m.set(0, 0, a);
                    m.set(0, 1, b);
                    m.set(1, 0, cc);
                    m.set(1, 1, d);
                    if m.det(&k) == 1 {
                        all.push(GroupElement::linear(&k, m).unwrap());
                    }
                }
            }
        }
    }
    assert_eq!(all.len(), 24);
    let w = e(2, 0);
    let kc = c.stabilizer(&w, 1).unwrap();
    let kp: Vec<Perm> = kc.elements(100).unwrap();
    for hgen in all.iter().filter(|x| !x.is_identity()) {
        let hs = GroupSpec::new("H", &k, 2, vec![hgen.clone()]).unwrap();
        let hp = c.subgroup("H", &dom.perms_of(&hs.gens).unwrap(), &ChainOptions::default()).unwrap();
        let prod: HashSet<Perm> = hp.elements(100).unwrap().iter().flat_map(|x| kp.iter().map(move |y| x.compose(y))).collect();
        let ho = orbit(&hs, &w, &OrbitOptions::default()).unwrap();
        for x in &all {
            let p = dom.perm_of(x).unwrap();
            assert_eq!(product_membership(&ho, x, &w).unwrap(), prod.contains(&p));
        }
    }
}

#[test]
fn orbit_budget_is_enforced() {
    // Pointed antiflags of GF(4)^6 force the hashed path; 4,193,280 points
    // cannot fit in 1 MiB.
    let k = field_of_order(4).unwrap();
    let x = crate::linalg::canonical_point(&k, crate::linalg::RawPoint::PointedAntiflag(&unit_vector(6, 0), &unit_vector(6, 0))).unwrap();
    let opts = OrbitOptions { mem_budget: 1 << 20, keep_members: false, ..Default::default() };
    match orbit(&sl(6, 4), &x, &opts) {
        Err(crate::Error::OrbitBudget { partial }) => assert!(partial > (1 << 20) / 48),
        other => panic!("expected a budget error, got {:?}", other.map(|o| o.size)),
    }
}
