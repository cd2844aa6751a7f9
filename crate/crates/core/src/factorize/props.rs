//! Tight containment and the conjugation/intersection properties of
//! factorizations, checked on small permutation models.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{enumerate_smaller, Instance, Omega, Side, Stab};
use crate::error::{Error, Result};
use crate::grpcore::{build_chain_on, ChainOptions, Domain, PermGroup, PointKind, PointSpace};
use crate::perm::Perm;

#[derive(Clone, Debug, Serialize)]
pub struct TightReport {
    pub located: String,
    pub catalog: String,
    pub located_order: u128,
    pub located_residual_order: u128,
    pub catalog_residual_order: u128,
    /// Residuals equal as subgroups of the common ambient.
    pub equal: bool,
}

/// Both sides as permutation groups on one domain.
fn common(a: &Side, b: &Side, seed: u64) -> Result<(PermGroup, PermGroup)> {
    let opts = ChainOptions { seed, ..Default::default() };
    match (a, b) {
        (Side::Perm(x), Side::Perm(y)) => {
            if x.degree() != y.degree() {
                return Err(Error::Ambient(format!("{} and {} act on different domains", x.name, y.name)));
            }
            if let (Some(dx), Some(dy)) = (&x.domain, &y.domain) {
                if dx.kind() != dy.kind() || dx.space.n != dy.space.n || dx.space.q() != dy.space.q() {
                    return Err(Error::Ambient("domains of different kinds".into()));
                }
            }
            Ok((x.clone(), y.clone()))
        }
        (Side::Matrix(x), Side::Matrix(y)) => {
            if x.n != y.n || x.field.order() != y.field.order() {
                return Err(Error::Ambient(format!("{} and {} live in different ambients", x.name, y.name)));
            }
            let kind = if x.has_duality() || y.has_duality() { PointKind::VectorOrFunctional } else { PointKind::Vector };
            let dom = Arc::new(Domain::new(PointSpace::new(kind, &x.field, x.n)?)?);
            Ok((build_chain_on(x, &dom, &[], seed)?, build_chain_on(y, &dom, &[], seed)?))
        }
        (Side::Perm(p), Side::Matrix(m)) | (Side::Matrix(m), Side::Perm(p)) => {
            let perms = p.domain()?.perms_of(&m.gens)?;
            let mg = p.subgroup(m.name.clone(), &perms, &opts)?;
            Ok(if matches!(a, Side::Perm(_)) { (p.clone(), mg) } else { (mg, p.clone()) })
        }
    }
}

/// True iff the solvable residuals coincide as subgroups.
pub fn check_tight(located: &Side, catalog: &Side, catalog_name: &str, seed: u64) -> Result<TightReport> {
    let (h, x) = common(located, catalog, seed)?;
    let rh = h.solvable_residual(seed);
    let rx = x.solvable_residual(seed);
    Ok(TightReport {
        located: h.name.clone(),
        catalog: catalog_name.to_string(),
        located_order: h.order(),
        located_residual_order: rh.order(),
        catalog_residual_order: rx.order(),
        equal: rh.equals(&rx),
    })
}

/// [`check_tight`] for two matrix groups.
pub fn check_tight_specs(h: &crate::grpcore::GroupSpec, x: &crate::grpcore::GroupSpec, seed: u64) -> Result<bool> {
    Ok(check_tight(&Side::Matrix(h.clone()), &Side::Matrix(x.clone()), &x.name, seed)?.equal)
}

#[derive(Clone, Debug, Serialize)]
pub struct JoinMeetReport {
    pub l_order: u128,
    pub hl_cap_kl: u128,
    /// `|H∩KL|·|K∩HL| / |H∩K|`, the size of the product set.
    pub product: u128,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub claim_id: String,
    pub samples: usize,
    pub seed: u64,
    pub base_meet: u128,
    pub identity_sample_holds: bool,
    pub all_factorize: bool,
    pub meet_orders_preserved: bool,
    pub spectra_preserved: bool,
    pub join_meet: JoinMeetReport,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.identity_sample_holds && self.all_factorize && self.meet_orders_preserved && self.spectra_preserved && self.join_meet.holds
    }
}

fn conj(g: &PermGroup, x: &Perm, seed: u64) -> Result<PermGroup> {
    let gens: Vec<Perm> = g.generators().iter().map(|h| h.conjugate(x)).collect();
    let opts = ChainOptions { known_order: Some(g.order()), seed, ..Default::default() };
    g.subgroup(format!("{}^x", g.name), &gens, &opts)
}

fn join(a: &PermGroup, b: &PermGroup, seed: u64) -> Result<PermGroup> {
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    a.subgroup(format!("<{}, {}>", a.name, b.name), &gens, &ChainOptions { seed, ..Default::default() })
}

/// `HL ∩ KL = (H∩KL)(K∩HL)`, by counting (the product set lies inside the
/// left side, and the two factors meet in `H∩K`).
pub fn join_meet(l: &PermGroup, h: &PermGroup, k: &PermGroup, seed: u64) -> Result<JoinMeetReport> {
    let hl = join(h, l, seed)?;
    let kl = join(k, l, seed)?;
    let cap = if hl.contains_group(&kl) {
        kl.order()
    } else if kl.contains_group(&hl) {
        hl.order()
    } else {
        enumerate_smaller(&hl, &kl, seed)?.order
    };
    let a = enumerate_smaller(h, &kl, seed)?.order;
    let b = enumerate_smaller(k, &hl, seed)?.order;
    let m = enumerate_smaller(h, k, seed)?.order;
    let product = a * b / m;
    Ok(JoinMeetReport { l_order: l.order(), hl_cap_kl: cap, product, holds: cap == product && a * b % m == 0 })
}

/// Conjugation and join properties of `G = HK` given as permutation
/// groups: random conjugates `H^x K^y` still factorize `G` with the same
/// `|H^x ∩ K^y|` and element-order spectrum, and the `HL ∩ KL` identity
/// holds for `L = G^(∞)`.
pub fn property_suite(
    claim_id: &str,
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    samples: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let base = enumerate_smaller(h, k, seed)?;
    let base_group = base.group.clone().expect("enumeration yields generators");
    let base_spec = base_group.order_spectrum()?;
    let factorizes = |m: u128| g.order() * m == h.order() * k.order();
    let mut failures = Vec::new();
    let identity_sample_holds = factorizes(base.order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut all_factorize, mut meets, mut spectra) = (true, true, true);
    for i in 0..samples {
        let x = g.random_perm(&mut rng);
        let y = g.random_perm(&mut rng);
        let hx = conj(h, &x, seed)?;
        let ky = conj(k, &y, seed)?;
        let meet = enumerate_smaller(&hx, &ky, seed)?;
        if !factorizes(meet.order) {
            all_factorize = false;
            failures.push(format!("sample {i}: |G|·|H^x∩K^y| ≠ |H|·|K|"));
        }
        if meet.order != base.order {
            meets = false;
            failures.push(format!("sample {i}: |H^x∩K^y| = {} ≠ {}", meet.order, base.order));
        }
        if meet.group.as_ref().map(|m| m.order_spectrum()).transpose()?.as_ref() != Some(&base_spec) {
            spectra = false;
            failures.push(format!("sample {i}: element orders of H^x∩K^y differ"));
        }
    }
    let l = g.solvable_residual(seed);
    let join_meet = join_meet(&l, h, k, seed)?;
    Ok(PropertyReport {
        claim_id: claim_id.to_string(),
        samples,
        seed,
        base_meet: base.order,
        identity_sample_holds,
        all_factorize,
        meet_orders_preserved: meets,
        spectra_preserved: spectra,
        join_meet,
        failures,
    })
}

/// The property suite on a claim instance whose ambient acts on at most
/// 63 points.
pub fn instance_property_suite(inst: &Instance, samples: usize, seed: u64) -> Result<PropertyReport> {
    let opts = ChainOptions { seed, ..Default::default() };
    let (g, m) = match (&inst.ambient, &inst.mover) {
        (Some(Side::Perm(g)), Side::Perm(m)) => (g.clone(), m.clone()),
        (Some(Side::Matrix(g)), Side::Matrix(m)) => {
            let kind = if g.has_duality() { PointKind::VectorOrFunctional } else { PointKind::Vector };
            let dom = Arc::new(Domain::new(PointSpace::new(kind, &g.field, g.n)?)?);
            (build_chain_on(g, &dom, &[], seed)?, build_chain_on(m, &dom, &[], seed)?)
        }
        _ => return Err(Error::Strategy("property suite needs a permutation or matrix ambient matching the mover".into())),
    };
    if g.degree() > 63 {
        return Err(Error::Strategy(format!("ambient degree {} exceeds the small-scale bound 63", g.degree())));
    }
    let s = match &inst.stab {
        Stab::Point { omega: Omega::Index(i), .. } => g.stabilizer_of_indices("K", &[*i], seed)?,
        Stab::Point { omega: Omega::Point(p), .. } => g.stabilizer(p, seed)?,
        Stab::Group(k) => g.subgroup(k.name.clone(), k.generators(), &opts)?,
    };
    let (h, k) = if inst.mover_is_h { (m, s) } else { (s, m) };
    property_suite(&inst.claim_id, &g, &h, &k, samples, seed)
}
