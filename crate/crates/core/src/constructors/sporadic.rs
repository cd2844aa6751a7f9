//! Subgroups located by construction or seeded search: the two `A5`s of
//! `A6`, `A7 < SL_4(2)`, the `PSL_4(3)` subgroups and the `PSL_3(4).2`
//! analysis.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{field_of_order, Extension, Field, FieldSpec};
use crate::grpcore::{build_chain, ChainOptions, GroupSpec, PermGroup, PointKind};
use crate::linalg::{blowup, ActionPoint, GroupElement, Mat, RawPoint};
use crate::orders::{self, Family};
use crate::perm::Perm;

use super::classical::{classical_generators, sl_matrices};
use super::{element_of_order, generated_order, search};

pub const SEARCH_BUDGET: u64 = 2_000_000;

/// Orbit lengths on points and on hyperplanes of a projective domain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Signature {
    pub points: Vec<usize>,
    pub hyperplanes: Vec<usize>,
}

pub fn signature(g: &PermGroup) -> Result<Signature> {
    let dom = g.domain()?;
    let mut seen = vec![false; g.degree()];
    let mut sig = Signature { points: vec![], hyperplanes: vec![] };
    for i in 0..g.degree() as u32 {
        if seen[i as usize] {
            continue;
        }
        let orb = g.orbit_of_index(i);
        for &x in &orb {
            seen[x as usize] = true;
        }
        match dom.point(i) {
            ActionPoint::Projective { hyperplane: true, .. } | ActionPoint::Functional(_) => sig.hyperplanes.push(orb.len()),
            _ => sig.points.push(orb.len()),
        }
    }
    sig.points.sort_unstable();
    sig.hyperplanes.sort_unstable();
    Ok(sig)
}

/// A located subgroup on an ambient permutation domain.
#[derive(Clone, Debug)]
pub struct Witness {
    pub name: String,
    pub group: PermGroup,
    pub matrices: Option<GroupSpec>,
    pub signature: Option<Signature>,
    pub note: String,
}

/// Builds a subgroup of `ambient` from a list of elements, keeping only
/// those not already generated.
pub fn group_from_elements(ambient: &PermGroup, name: &str, elems: &[Perm], seed: u64) -> Result<PermGroup> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut cur = ambient.subgroup(name, &[], &ChainOptions { seed, ..Default::default() })?;
    for e in elems {
        if !cur.contains_perm(e) {
            gens.push(e.clone());
            cur = ambient.subgroup(name, &gens, &ChainOptions { seed, ..Default::default() })?;
        }
    }
    Ok(cur)
}

fn embed_matrix(from: &FieldSpec, to: &Field, m: &Mat) -> Result<Mat> {
    let emb = crate::gf::Embedding::new(&field_of_order(from.order() as u64)?, to)?;
    Mat::from_rows(to, &m.rows().iter().map(|r| r.iter().map(|&x| emb.apply(x)).collect()).collect::<Vec<_>>())
}

// ---- A6 ------------------------------------------------------------------

/// `A6` on six points with a transitive `A5` (`PSL_2(5)` on the projective
/// line, `∞ = 5`) and the point stabilizer `A5` of point 5.
pub fn a6_with_a5s() -> Result<(PermGroup, PermGroup, PermGroup)> {
    let opts = ChainOptions::default();
    let a6 = PermGroup::from_perms("A6", 6, &[Perm::from_cycles(6, &[&[0, 1, 2]]), Perm::from_cycles(6, &[&[1, 2, 3, 4, 5]])], &opts)?;
    let trans = PermGroup::from_perms(
        "A5 (transitive)",
        6,
        &[Perm::from_cycles(6, &[&[0, 1, 2, 3, 4]]), Perm::from_cycles(6, &[&[5, 0], &[1, 4]])],
        &opts,
    )?;
    let stab = PermGroup::from_perms("A5 (point stabilizer)", 6, &[Perm::from_cycles(6, &[&[0, 1, 2]]), Perm::from_cycles(6, &[&[0, 1, 2, 3, 4]])], &opts)?;
    Ok((a6, trans, stab))
}

// ---- A7 < SL_4(2) ----------------------------------------------------------

/// `A7` inside `SL_4(2) ≅ A8`, found as a random two-generated subgroup of
/// order 2520.
pub fn a7_in_sl42(seed: u64) -> Result<Witness> {
    let k = field_of_order(2)?;
    let g = classical_generators(Family::SL, 4, &k)?;
    let pg = build_chain(&g, PointKind::Vector, &[], seed)?;
    let found = search(SEARCH_BUDGET, seed, |rng| {
        let a = pg.random_perm(rng);
        let b = pg.random_perm(rng);
        (generated_order(15, &[a.clone(), b.clone()], seed).ok()? == 2520).then_some((a, b))
    })?;
    let dom = pg.domain()?;
    let gens = vec![dom.element_of_perm(&found.0)?, dom.element_of_perm(&found.1)?];
    let spec = GroupSpec::new("A7", &k, 4, gens)?.with_order(2520).with_provenance(format!("search:a7:seed={seed}"));
    let group = pg.subgroup("A7", &[found.0, found.1], &ChainOptions { seed, ..Default::default() })?;
    Ok(Witness { name: "A7".into(), group, matrices: Some(spec), signature: None, note: format!("random pair, seed {seed}") })
}

// ---- PSL_4(3) --------------------------------------------------------------

/// `SL_4(3)` and its image `PSL_4(3)` on the 80 points and hyperplanes.
pub fn psl43(seed: u64) -> Result<(GroupSpec, PermGroup)> {
    let k = field_of_order(3)?;
    let sl = classical_generators(Family::SL, 4, &k)?;
    let image = orders::projective_order(&orders::sl_order(4, 3), 2);
    let z = super::projective_image(&sl, orders::to_u128(&image), seed)?;
    Ok((sl, z))
}

fn witness_on(z: &PermGroup, name: &str, spec: GroupSpec, note: String, seed: u64) -> Result<Witness> {
    let perms = z.domain()?.perms_of(&spec.gens)?;
    let group = z.subgroup(name, &perms, &ChainOptions { seed, ..Default::default() })?;
    let signature = Some(signature(&group)?);
    Ok(Witness { name: name.into(), group, matrices: Some(spec), signature, note })
}

/// `4 × A5`: `SL_2(5) < SL_2(9)` with the scalars of order 8, written over
/// GF(3).  The lift has order 480.
pub fn x_4xa5(z: &PermGroup, seed: u64) -> Result<Witness> {
    let k3 = field_of_order(3)?;
    let k9 = field_of_order(9)?;
    let sl29 = classical_generators(Family::SL, 2, &k9)?;
    let pg = build_chain(&sl29, PointKind::Vector, &[], seed)?;
    let (a, b) = search(SEARCH_BUDGET, seed, |rng| {
        let a = element_of_order(&pg, 4, rng)?;
        let b = element_of_order(&pg, 3, rng)?;
        let ab = a.compose(&b).order();
        ((ab == 5 || ab == 10) && generated_order(80, &[a.clone(), b.clone()], seed).ok()? == 120).then_some((a, b))
    })?;
    let dom = pg.domain()?;
    let ext = Extension::new(&k3, &k9)?;
    let lam = Mat::scalar(&k9, 2, k9.primitive());
    let mut gens = Vec::new();
    for p in [&a, &b] {
        gens.push(blowup(&ext, dom.element_of_perm(p)?.mat(), 0)?);
    }
    gens.push(blowup(&ext, &lam, 0)?);
    let spec = GroupSpec::new("4xA5 lift", &k3, 4, gens)?.with_order(480).with_provenance(format!("search:sl25-in-sl29:seed={seed}"));
    let lift = build_chain(&spec, PointKind::Vector, &[], seed)?;
    if lift.order() != 480 {
        return Err(Error::Certification(format!("4xA5 lift has order {}", lift.order())));
    }
    witness_on(z, "4xA5", spec, "SL_2(5) < SL_2(9) with scalars of order 8".into(), seed)
}

fn kron(k: &FieldSpec, a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.n(), b.n());
    let mut out = Mat::zero(k, n * m);
    for i in 0..n {
        for j in 0..n {
            for r in 0..m {
                for c in 0..m {
                    out.set(i * m + r, j * m + c, k.mul(a.get(i, j), b.get(r, c)));
                }
            }
        }
    }
    out
}

fn matrix_closure(k: &FieldSpec, gens: &[Mat]) -> HashSet<Mat> {
    let id = Mat::identity(k, gens[0].n());
    let mut seen: HashSet<Mat> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(k, g).expect("square matrices");
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

/// `2^4:A5`: the solvable residual of the normalizer of `Q8 ⊗ D8` in
/// `SL_4(3)`; the lift has order 1920.
pub fn x_2e4a5(z: &PermGroup, seed: u64) -> Result<Witness> {
    let k = field_of_order(3)?;
    let m = |rows: [[i64; 2]; 2]| Mat::from_rows(&k, &rows.iter().map(|r| r.iter().map(|&x| k.from_int(x)).collect()).collect::<Vec<_>>());
    let i2 = Mat::identity(&k, 2);
    let qi = m([[0, 1], [-1, 0]])?;
    let qj = m([[1, 1], [1, -1]])?;
    let ds = m([[0, 1], [1, 0]])?;
    let dt = m([[1, 0], [0, -1]])?;
    let e_gens = vec![kron(&k, &qi, &i2), kron(&k, &qj, &i2), kron(&k, &i2, &ds), kron(&k, &i2, &dt)];
    let e_set = matrix_closure(&k, &e_gens);
    if e_set.len() != 32 {
        return Err(Error::Certification(format!("Q8 x D8 central product has order {}", e_set.len())));
    }
    let sl = classical_generators(Family::SL, 4, &k)?;
    let pg = build_chain(&sl, PointKind::Vector, &[], seed)?;
    let dom = pg.domain()?.clone();
    let normalizes = |g: &GroupElement| -> bool {
        let gi = g.inverse(&k);
        e_gens.iter().all(|e| {
            let c = gi.mat().mul(&k, e).and_then(|x| x.mul(&k, g.mat())).expect("square");
            e_set.contains(&c)
        })
    };
    let e_elems: Vec<GroupElement> = e_gens.iter().map(|e| GroupElement::linear(&k, e.clone()).expect("invertible")).collect();
    let mut gens = e_elems.clone();
    let mut order = 32u128;
    let mut round = 0u64;
    while round < 8 {
        let n = search(SEARCH_BUDGET, seed.wrapping_add(round), |rng| {
            let g = dom.element_of_perm(&pg.random_perm(rng)).ok()?;
            (normalizes(&g) && !e_set.contains(g.mat())).then_some(g)
        })?;
        gens.push(n);
        let spec = GroupSpec::new("N(E)", &k, 4, gens.clone())?;
        let new = build_chain(&spec, PointKind::Vector, &[], seed)?.order();
        if new == order && order > 32 {
            break;
        }
        order = new;
        round += 1;
    }
    let nspec = GroupSpec::new("N(E)", &k, 4, gens)?;
    let npg = build_chain(&nspec, PointKind::Vector, &[], seed)?;
    let res = npg.solvable_residual(seed);
    if res.order() != 1920 {
        return Err(Error::Certification(format!("normalizer residual has order {} (normalizer {})", res.order(), npg.order())));
    }
    let mats = res.generators().iter().map(|p| dom.element_of_perm(p)).collect::<Result<Vec<_>>>()?;
    let spec = GroupSpec::new("2^4:A5 lift", &k, 4, mats)?.with_order(1920).with_provenance(format!("search:normalizer-q8d8:seed={seed}"));
    witness_on(z, "2^4:A5", spec, format!("residual of N(Q8 x D8), normalizer order {}", npg.order()), seed)
}

fn commutator(a: &Perm, b: &Perm) -> Perm {
    a.inverse().compose(&b.inverse()).compose(a).compose(b)
}

/// Subgroups `S5` of `PSL_4(3)` from pairs with `a² = b⁴ = (ab)⁵ = [a,b]³ = 1`,
/// one witness per orbit signature.  Stops after `samples` hits.
pub fn s5_witnesses(z: &PermGroup, samples: usize, seed: u64) -> Result<Vec<Witness>> {
    let mut by_sig: BTreeMap<Signature, Witness> = BTreeMap::new();
    let mut hits = 0;
    let mut round = 0u64;
    while hits < samples {
        let s = seed.wrapping_add(round);
        let (a, b) = search(SEARCH_BUDGET, s, |rng| {
            let a = element_of_order(z, 2, rng)?;
            let b = element_of_order(z, 4, rng)?;
            let ab = a.compose(&b);
            if ab.order() != 5 || commutator(&a, &b).order() != 3 {
                return None;
            }
            (generated_order(z.degree(), &[a.clone(), b.clone()], s).ok()? == 120).then_some((a, b))
        })?;
        let group = z.subgroup("S5", &[a, b], &ChainOptions { seed: s, ..Default::default() })?;
        let sig = signature(&group)?;
        by_sig.entry(sig.clone()).or_insert_with(|| Witness {
            name: "S5".into(),
            group,
            matrices: None,
            signature: Some(sig),
            note: format!("presentation search, seed {s}"),
        });
        hits += 1;
        round += 1;
    }
    Ok(by_sig.into_values().collect())
}

// ---- PSL_3(4).2 ------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub index: usize,
    pub order: u128,
    pub recognized: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row10Candidate {
    pub extension: String,
    pub order: u128,
    pub pgl27_classes: Vec<ClassInfo>,
    pub m10_classes: Vec<ClassInfo>,
    /// `(j, i, |X_j ∩ Y_i|)` over all pairs, factorizing or not.
    pub meets: Vec<(usize, usize, u128)>,
    pub factorizing: Vec<(usize, usize)>,
    pub matches_claim: bool,
}

/// The chosen `Z`, with one factorizing `PGL_2(7)` and `M10`.
pub struct Row10 {
    pub candidates: Vec<Row10Candidate>,
    pub z: PermGroup,
    pub x: PermGroup,
    pub y: PermGroup,
    pub extension: String,
}

fn normalizer_by_enumeration(z: &PermGroup, elems: &[Perm], x: &PermGroup, seed: u64) -> Result<PermGroup> {
    let gens = x.generators().to_vec();
    let norm: Vec<Perm> = elems.iter().filter(|e| gens.iter().all(|g| x.contains_perm(&g.conjugate(e)))).cloned().collect();
    group_from_elements(z, &format!("N({})", x.name), &norm, seed)
}

fn has_order(spec: &BTreeMap<u64, u64>, o: u64) -> bool {
    spec.get(&o).copied().unwrap_or(0) > 0
}

/// Analyzes `L:<t>` for `t ∈ {φ, γ, φγ}`, `L = PSL_3(4)` on points and
/// lines: normalizers of the three `SL_3(2)` classes and of the three
/// hyperoval stabilizers, recognized by order and element orders.
pub fn row10(seed: u64) -> Result<Row10> {
    use super::classical::{automorphism_element, AutKind};
    let k = field_of_order(4)?;
    let k2 = field_of_order(2)?;
    let lam = k.primitive();
    let sl = classical_generators(Family::SL, 3, &k)?;
    let l_order = orders::to_u128(&orders::projective_order(&orders::sl_order(3, 4), 3)).expect("small");
    let l = super::projective_image(&sl, Some(l_order), seed)?;
    let dom = l.domain()?.clone();
    let delta = GroupElement::linear(&k, Mat::diag(&k, &[lam, 1, 1]))?;
    let sl32: Vec<GroupElement> =
        sl_matrices(&k2, 3).iter().map(|m| GroupElement::linear(&k, embed_matrix(&k2, &k, m)?)).collect::<Result<_>>()?;
    // hyperoval {(1,t,t²)} ∪ {(0,0,1), (0,1,0)}
    let mut oval: Vec<Vec<u32>> = k.elements().map(|t| vec![1, t, k.mul(t, t)]).collect();
    oval.push(vec![0, 0, 1]);
    oval.push(vec![0, 1, 0]);
    let l_elems = l.elements(1 << 16)?;
    let mut xs_l = Vec::new();
    let mut ys_l = Vec::new();
    for j in 0..3u64 {
        let dj = delta.pow(&k, j);
        let gens: Vec<Perm> = dom.perms_of(&sl32.iter().map(|g| g.conjugate(&k, &dj)).collect::<Vec<_>>())?;
        xs_l.push(l.subgroup(format!("SL_3(2)^d{j}"), &gens, &ChainOptions { seed, ..Default::default() })?);
        let pts: HashSet<u32> = oval
            .iter()
            .map(|v| {
                let img = dj.apply_vector(&k, v)?;
                dom.index_of(&crate::linalg::canonical_point(&k, RawPoint::Projective(&img))?)
            })
            .collect::<Result<_>>()?;
        let stab: Vec<Perm> = l_elems.iter().filter(|p| pts.iter().all(|&x| pts.contains(&p.apply(x)))).cloned().collect();
        let a6 = group_from_elements(&l, &format!("A6^d{j}"), &stab, seed)?;
        if a6.order() != 360 {
            return Err(Error::Certification(format!("hyperoval stabilizer has order {}", a6.order())));
        }
        ys_l.push(a6);
    }
    let mut candidates = Vec::new();
    let mut chosen: Option<(PermGroup, PermGroup, PermGroup, String)> = None;
    for (label, kind) in [("phi", AutKind::Phi), ("gamma", AutKind::Gamma), ("phi gamma", AutKind::PhiGamma)] {
        let t = dom.perm_of(&automorphism_element(kind, &k, 3))?;
        let mut gens = l.generators().to_vec();
        gens.push(t);
        let z = l.subgroup(format!("PSL_3(4):<{label}>"), &gens, &ChainOptions { known_order: Some(2 * l_order), seed, ..Default::default() })?;
        let z_elems = z.elements(1 << 17)?;
        let mut xs = Vec::new();
        let mut pgl = Vec::new();
        for (j, x) in xs_l.iter().enumerate() {
            let n = normalizer_by_enumeration(&z, &z_elems, x, seed)?;
            let spec = n.order_spectrum()?;
            pgl.push(ClassInfo { index: j, order: n.order(), recognized: n.order() == 336 && has_order(&spec, 8) });
            xs.push(n);
        }
        let mut ys = Vec::new();
        let mut m10 = Vec::new();
        for (i, y) in ys_l.iter().enumerate() {
            let n = normalizer_by_enumeration(&z, &z_elems, y, seed)?;
            let spec = n.order_spectrum()?;
            let ok = n.order() == 720 && has_order(&spec, 8) && !has_order(&spec, 6) && !has_order(&spec, 10);
            m10.push(ClassInfo { index: i, order: n.order(), recognized: ok });
            ys.push(n);
        }
        let mut meets = Vec::new();
        let mut factorizing = Vec::new();
        for (j, x) in xs.iter().enumerate() {
            for (i, y) in ys.iter().enumerate() {
                let meet = x.elements(1 << 12)?.iter().filter(|p| y.contains_perm(p)).count() as u128;
                if pgl[j].recognized && m10[i].recognized && x.order() * y.order() == meet * z.order() {
                    factorizing.push((j, i));
                }
                meets.push((j, i, meet));
            }
        }
        let n_pgl = pgl.iter().filter(|c| c.recognized).count();
        let n_m10 = m10.iter().filter(|c| c.recognized).count();
        // each PGL_2(7) factorizes with exactly two M10 classes, meeting in S_3
        let per_x = (0..xs.len()).all(|j| factorizing.iter().filter(|&&(a, _)| a == j).count() == 2);
        let matches = n_pgl == 3
            && n_m10 >= 2
            && per_x
            && factorizing.iter().all(|&(j, i)| meets.iter().any(|&(a, b, m)| a == j && b == i && m == 6));
        if matches && chosen.is_none() {
            let (j, i) = factorizing[0];
            chosen = Some((z.clone(), xs[j].clone(), ys[i].clone(), label.to_string()));
        }
        candidates.push(Row10Candidate {
            extension: label.into(),
            order: z.order(),
            pgl27_classes: pgl,
            m10_classes: m10,
            meets,
            factorizing,
            matches_claim: matches,
        });
    }
    let (z, x, y, extension) = chosen.ok_or_else(|| {
        let detail: Vec<String> = candidates.iter().map(|c| serde_json::to_string(c).unwrap_or_default()).collect();
        Error::Certification(format!("no extension of PSL_3(4) matches the claimed class structure: {}", detail.join("; ")))
    })?;
    Ok(Row10 { candidates, z, x, y, extension })
}


#[cfg(test)]
mod slow_tests {
    use super::*;

    #[test]
    fn s5_signatures_include_point_transitive_and_intransitive() {
        let (_, z) = psl43(5).unwrap();
        let ws = s5_witnesses(&z, 12, 9).unwrap();
        for w in &ws {
            eprintln!("{:?}", w.signature);
            assert_eq!(w.group.order(), 120);
        }
        assert!(ws.iter().any(|w| w.signature.as_ref().unwrap().points == vec![40]));
        assert!(ws.iter().any(|w| w.signature.as_ref().unwrap().points != vec![40]));
    }

    #[test]
    fn row10_has_a_matching_extension() {
        let r = row10(1).unwrap();
        for c in &r.candidates {
            eprintln!("{}", serde_json::to_string(c).unwrap());
        }
        assert_eq!(r.x.order() * r.y.order() / 6, r.z.order());
    }
}
