//! Builds a verifiable [`Instance`] for every catalog claim and negative
//! control from the constructors.

use num_bigint::BigUint;
use num_traits::Pow;
use serde_json::json;

use super::{Instance, Omega, Quotient, Side, Stab, TightPair};
use crate::catalog::{self, Tier};
use crate::constructors::{
    automorphism_element, classical_generators, derived, ext_subgroup, g2_generators, sporadic, weil, AutKind, Inner, Twist,
};
use crate::error::{Error, Result};
use crate::gf::{field_of_order, Field};
use crate::grpcore::GroupSpec;
use crate::linalg::{unit_vector, ActionPoint};
use crate::orders::{self, Family, Params};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn e1(n: usize) -> ActionPoint {
    ActionPoint::Vector(unit_vector(n, 0))
}

/// `(e_1, ker e_1*)`.
fn pointed(n: usize) -> ActionPoint {
    ActionPoint::PointedAntiflag { v: unit_vector(n, 0), w: unit_vector(n, 0) }
}

fn line(n: usize) -> ActionPoint {
    ActionPoint::Projective { coords: unit_vector(n, 0), hyperplane: false }
}

fn vectors(q: u64, n: usize) -> BigUint {
    big(q).pow(n as u32) - 1u32
}

/// Number of pointed antiflags `(v, W)` of `GF(q)^n`.
fn pointed_count(q: u64, n: usize) -> BigUint {
    big(q).pow(n as u32 - 1) * vectors(q, n)
}

fn field(q: u64) -> Result<Field> {
    field_of_order(q)
}

/// `SL_n(q)`, extended by the listed automorphisms.
fn ambient(family: Family, n: usize, k: &Field, auts: &[AutKind], name: &str) -> Result<GroupSpec> {
    let g = classical_generators(family, n, k)?;
    if auts.is_empty() {
        return Ok(g);
    }
    let extra: Vec<_> = auts.iter().map(|&a| automorphism_element(a, k, n)).collect();
    Ok(g.adjoin(name, &extra))
}

/// `Inner_a(q^b)'` written over GF(q): the derived group where the inner
/// group is not perfect.
fn ext_perfect(inner: Inner, a: usize, k: &Field, b: usize, seed: u64) -> Result<GroupSpec> {
    let g = ext_subgroup(inner, a, k, b, Twist::None)?.group;
    let qb = (k.order() as u64).pow(b as u32);
    let imperfect = match inner {
        Inner::SL => false,
        Inner::Sp => matches!((a, qb), (2, 2) | (2, 3) | (4, 2)),
        Inner::G2 => qb == 2,
    };
    if imperfect {
        let mut d = derived(&g, seed)?;
        d.name = format!("{}'", g.name);
        Ok(d)
    } else {
        Ok(g)
    }
}

struct Base {
    id: String,
    params: Params,
    orders: orders::RowOrders,
    template: catalog::ClaimTemplate,
}

fn base(id: &str, p: &Params) -> Result<Base> {
    let c = catalog::instantiate(id, p)?;
    Ok(Base { id: id.to_string(), params: c.params, orders: c.orders, template: c.template })
}

fn instance(b: Base, mover: Side, stab: Stab, ambient: Option<Side>) -> Instance {
    let t = &b.template;
    Instance {
        claim_id: b.id,
        params: b.params,
        g_name: t.g.clone(),
        h_name: t.h.clone(),
        k_name: t.k.clone(),
        g_order: b.orders.g,
        h_order: b.orders.h,
        k_order: b.orders.k,
        mover,
        mover_is_h: true,
        stab,
        ambient,
        expected_meet: Some(b.orders.meet),
        expect_factorization: true,
        quotient: None,
        tight: None,
        notes: vec![],
        extra: None,
    }
}

fn point_stab(p: ActionPoint, index: BigUint) -> Stab {
    Stab::Point { omega: Omega::Point(p), index }
}

/// Rows 4–7: `G = SL_2m(q)` (possibly with `φ` or `φγ`), `H` the
/// extension-field group with its twist, `K = G_(v,W)`.
fn extension_row(b: Base) -> Result<Instance> {
    let id = b.id.clone();
    let (m, q) = (b.params.mv()? as usize, b.params.qv()?);
    let n = 2 * m;
    let k = field(q)?;
    let inner = if id.ends_with("-Sp") { Inner::Sp } else { Inner::SL };
    let dual = id.starts_with('5') || id.starts_with('7');
    let twist = if dual { Twist::PsiGamma } else { Twist::Psi };
    let auts: Vec<AutKind> = match (dual, q) {
        (true, 2) => vec![AutKind::Gamma],
        (true, _) => vec![AutKind::PhiGamma],
        (false, 2) => vec![],
        (false, _) => vec![AutKind::Phi],
    };
    let g = ambient(Family::SL, n, &k, &auts, &b.template.g)?;
    let h = ext_subgroup(inner, m, &k, 2, twist)?.group;
    let x = ext_subgroup(inner, m, &k, 2, Twist::None)?.group;
    let mut inst = instance(b, Side::Matrix(h.clone()), point_stab(pointed(n), pointed_count(q, n)), Some(Side::Matrix(g)));
    inst.tight = Some(TightPair { located: Side::Matrix(h), catalog: Side::Matrix(x.clone()), catalog_name: x.name });
    Ok(inst)
}

fn row12(b: Base, seed: u64) -> Result<Instance> {
    let (_, z) = sporadic::psl43(seed)?;
    let id = b.id.clone();
    let (w, tight, notes, extra) = match id.as_str() {
        "12-S5" => {
            let all = sporadic::s5_witnesses(&z, 24, seed)?;
            let sigs: Vec<_> = all.iter().map(|w| w.signature.clone()).collect();
            let w = all
                .iter()
                .find(|w| w.signature.as_ref().is_some_and(|s| s.points == vec![40]))
                .cloned()
                .ok_or_else(|| Error::SearchExhausted { tries: 24, seed })?;
            let a5 = w.group.derived_subgroup(seed);
            let tight = TightPair { located: Side::Perm(w.group.clone()), catalog: Side::Perm(a5), catalog_name: "A5 = S5'".into() };
            let notes = vec![format!(
                "{} S5 orbit signatures found; only those transitive on the 40 points factorize",
                all.len()
            )];
            (w, Some(tight), notes, Some(json!({ "s5_signatures": sigs })))
        }
        "12-4xA5" => (sporadic::x_4xa5(&z, seed)?, None, vec![], None),
        _ => (sporadic::x_2e4a5(&z, seed)?, None, vec![], None),
    };
    let sig = w.signature.clone();
    let mut inst = instance(b, Side::Perm(w.group.clone()), point_stab(line(4), big(40)), Some(Side::Perm(z)));
    inst.quotient = Some(Quotient { scalars: 2, lift: "SL_4(3)".into() });
    inst.tight = tight;
    inst.notes = notes;
    inst.notes.push(format!("witness: {}", w.note));
    inst.extra = Some(json!({ "signature": sig, "detail": extra }));
    Ok(inst)
}

fn row13(b: Base, seed: u64) -> Result<Instance> {
    let wg = weil::sl2_13_in_sl6_3(seed)?;
    let (_, z) = weil::psl63(seed)?;
    let x = weil::on_domain(&z, &wg.spec, seed)?;
    let twin = weil::on_domain(&z, &wg.twin, seed)?;
    let pt = z.index_of(&line(6))?;
    let y = z.stabilizer_of_indices("Y", &[pt], seed)?;
    let sl53 = orders::sl_order(5, 3);
    let catalog_y = big(3).pow(5u32) * &sl53;
    let alt_y = big(5).pow(3u32) * &sl53;
    let y_order = BigUint::from(y.order());
    let reading = if y_order == catalog_y {
        "3^5:SL_5(3) (catalog Y) matches the computed stabilizer"
    } else if y_order == alt_y {
        "5^3:SL_5(3) (alternative reading) matches the computed stabilizer"
    } else {
        "neither reading matches the computed stabilizer"
    };
    let twin_orbit = twin.orbit_of_index(pt).len();
    let extra = json!({
        "weil_certificate": wg.certificate,
        "y_discrepancy": {
            "computed_order": y_order.to_string(),
            "catalog_reading_3^5:SL_5(3)": catalog_y.to_string(),
            "alt_reading_5^3:SL_5(3)": alt_y.to_string(),
            "verdict": reading,
        },
        "twin_orbit_on_points": twin_orbit,
    });
    let mut inst = instance(b, Side::Perm(x), point_stab(line(6), big(364)), Some(Side::Perm(z)));
    inst.quotient = Some(Quotient { scalars: 2, lift: "SL_6(3)".into() });
    inst.notes.push(format!("Y discrepancy: {reading}"));
    inst.notes.push(format!("the conjugate X^delta has an orbit of length {twin_orbit} on the points"));
    inst.extra = Some(extra);
    Ok(inst)
}

/// Rows 14 and 15: `G_2(q²):<ψ>` inside `SL_12(q)` (with `φ` for q = 4).
fn row_g2(b: Base, q: u64) -> Result<Instance> {
    let k = field(q)?;
    let auts = if q == 2 { vec![] } else { vec![AutKind::Phi] };
    let g = ambient(Family::SL, 12, &k, &auts, &b.template.g)?;
    let h = ext_subgroup(Inner::G2, 6, &k, 2, Twist::Psi)?.group;
    let mut inst = instance(b, Side::Matrix(h), point_stab(pointed(12), pointed_count(q, 12)), Some(Side::Matrix(g)));
    if q == 4 {
        inst.notes.push("pointed antiflags of GF(4)^12 exceed the orbit budget; vector transitivity is reported instead".into());
    }
    Ok(inst)
}

/// Vector transitivity of Row 15's `H`, the reduced check for that row.
pub fn row15_vector_orbit(mem_budget: u64) -> Result<(u64, BigUint)> {
    let k = field(4)?;
    let h = ext_subgroup(Inner::G2, 6, &k, 2, Twist::Psi)?.group;
    let o = crate::grpcore::OrbitOptions { transporters: false, mem_budget, keep_members: false };
    let orb = crate::grpcore::orbit(&h, &e1(12), &o)?;
    Ok((orb.size, vectors(4, 12)))
}

/// The instance for a catalog claim at the given parameters.
pub fn build_instance(id: &str, p: &Params, seed: u64) -> Result<Instance> {
    let b = base(id, p)?;
    let pr = b.params;
    match id {
        "1" | "1-Sp" => {
            let (a, bb, q) = (pr.av()? as usize, pr.bv()? as usize, pr.qv()?);
            let n = a * bb;
            let k = field(q)?;
            let h = if id == "1" { ext_subgroup(Inner::SL, a, &k, bb, Twist::None)?.group } else { ext_perfect(Inner::Sp, a, &k, bb, seed)? };
            let g = classical_generators(Family::SL, n, &k)?;
            Ok(instance(b, Side::Matrix(h), point_stab(e1(n), vectors(q, n)), Some(Side::Matrix(g))))
        }
        "2" => {
            let (bb, q) = (pr.bv()? as usize, pr.qv()?);
            let n = 6 * bb;
            let k = field(q)?;
            let h = ext_perfect(Inner::G2, 6, &k, bb, seed)?;
            let g = classical_generators(Family::SL, n, &k)?;
            Ok(instance(b, Side::Matrix(h), point_stab(e1(n), vectors(q, n)), Some(Side::Matrix(g))))
        }
        "2-Sp" => {
            let q = pr.qv()?;
            let k = field(q)?;
            let h = ext_perfect(Inner::G2, 6, &k, 1, seed)?;
            let g = classical_generators(Family::Sp, 6, &k)?;
            Ok(instance(b, Side::Matrix(h), point_stab(e1(6), vectors(q, 6)), Some(Side::Matrix(g))))
        }
        "3" => {
            let (n, q) = (pr.n()? as usize, pr.qv()?);
            let k = field(q)?;
            let h = ext_perfect(Inner::Sp, n, &k, 1, seed)?;
            let g = classical_generators(Family::SL, n, &k)?;
            Ok(instance(b, Side::Matrix(h), point_stab(pointed(n), pointed_count(q, n)), Some(Side::Matrix(g))))
        }
        "4" | "4-Sp" | "5" | "5-Sp" | "6" | "6-Sp" | "7" | "7-Sp" => extension_row(b),
        "8" | "8-Sp" => {
            let q = pr.qv()?;
            let k = field(q)?;
            let h = g2_generators(&k)?;
            let fam = if id == "8" { Family::SL } else { Family::Sp };
            let g = classical_generators(fam, 6, &k)?;
            Ok(instance(b, Side::Matrix(h), point_stab(pointed(6), pointed_count(q, 6)), Some(Side::Matrix(g))))
        }
        "9" => {
            let (a6, trans, _) = sporadic::a6_with_a5s()?;
            let mut inst = instance(b, Side::Perm(trans), Stab::Point { omega: Omega::Index(5), index: big(6) }, Some(Side::Perm(a6)));
            inst.quotient = Some(Quotient { scalars: 2, lift: "SL_2(9)".into() });
            inst.notes.push("PSL_2(9) is modelled as A6 on six points".into());
            Ok(inst)
        }
        "10" => {
            let r = sporadic::row10(seed)?;
            let extra = json!({ "extension": r.extension, "candidates": r.candidates });
            let mut inst = instance(b, Side::Perm(r.x), Stab::Group(r.y), Some(Side::Perm(r.z)));
            inst.quotient = Some(Quotient { scalars: 3, lift: "SL_3(4).2".into() });
            inst.notes.push(format!("G = PSL_3(4):<{}> on points and lines", r.extension));
            inst.extra = Some(extra);
            Ok(inst)
        }
        "11" | "11-affine" => {
            let w = sporadic::a7_in_sl42(seed)?;
            let a7 = w.matrices.clone().ok_or_else(|| Error::Certification("A7 witness lacks matrices".into()))?;
            let k = field(2)?;
            let g = classical_generators(Family::SL, 4, &k)?;
            let stab = if id == "11" { point_stab(pointed(4), pointed_count(2, 4)) } else { point_stab(e1(4), vectors(2, 4)) };
            let mut inst = instance(b, Side::Matrix(a7), stab, Some(Side::Matrix(g)));
            inst.mover_is_h = false;
            inst.notes.push(format!("A7 located by {}", w.note));
            Ok(inst)
        }
        "12-S5" | "12-4xA5" | "12-2^4:A5" => row12(b, seed),
        "13" => row13(b, seed),
        "14" => row_g2(b, 2),
        "15" => row_g2(b, 4),
        _ => Err(Error::Catalog(format!("no builder for claim '{id}'"))),
    }
}

/// The two controls built on `G_2(2)'`, which must not factorize.
pub fn build_control(id: &str, seed: u64) -> Result<Instance> {
    let c = catalog::catalog()
        .negative_controls
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Catalog(format!("no negative control '{id}'")))?;
    let k = field(2)?;
    let h = ext_perfect(Inner::G2, 6, &k, 1, seed)?;
    let (g, g_order, k_order) = match id {
        "neg-8-Sp" => (classical_generators(Family::Sp, 6, &k)?, orders::sp_order(6, 2), orders::sp_order(4, 2)),
        _ => (classical_generators(Family::SL, 6, &k)?, orders::sl_order(6, 2), orders::sl_order(5, 2)),
    };
    Ok(Instance {
        claim_id: c.id.clone(),
        params: c.params,
        g_name: c.g.clone(),
        h_name: c.h.clone(),
        k_name: c.k.clone(),
        g_order,
        h_order: orders::g2_derived_order(2),
        k_order,
        mover: Side::Matrix(h),
        mover_is_h: true,
        stab: point_stab(pointed(6), pointed_count(2, 6)),
        ambient: Some(Side::Matrix(g)),
        expected_meet: None,
        expect_factorization: false,
        quotient: None,
        tight: None,
        notes: vec!["negative control: the factorization must fail".into()],
        extra: None,
    })
}

pub fn control_ids() -> Vec<String> {
    catalog::catalog().negative_controls.iter().map(|c| c.id.clone()).collect()
}

/// Desk-grid (and optionally extended) entries as `(claim, params, tier)`.
pub fn grid(include_extended: bool) -> Vec<(String, Params, Tier)> {
    catalog::desk_grid()
        .into_iter()
        .filter(|e| include_extended || e.tier == Tier::Desk)
        .map(|e| (e.claim, e.params, e.tier))
        .collect()
}

/// Smallest legal parameters for a claim, used by `--row`.
pub fn default_params(id: &str) -> Result<Params> {
    catalog::desk_grid()
        .into_iter()
        .find(|e| e.claim == id)
        .map(|e| e.params)
        .ok_or_else(|| Error::Catalog(format!("no default parameters for claim '{id}'")))
}
