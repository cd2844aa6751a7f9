//! Generic group machinery: named matrix groups, permutation images,
//! stabilizer chains, orbits and derived series.

pub mod chain;
pub mod domain;
pub mod orbit;
pub mod points;
pub mod residual;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{ActionPoint, GroupElement};
use crate::perm::Perm;

pub use chain::{Certificate, ChainOptions, StabChain, VerifyMode};
pub use domain::Domain;
pub use orbit::{OrbitOptions, OrbitSet};
pub use points::{PointKind, PointSpace};

/// A matrix group given by generators.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub field: Field,
    pub n: usize,
    pub gens: Vec<GroupElement>,
    pub claimed_order: Option<u128>,
    pub provenance: String,
}

impl GroupSpec {
    pub fn new(name: impl Into<String>, field: &Field, n: usize, gens: Vec<GroupElement>) -> Result<GroupSpec> {
        if gens.iter().any(|g| g.n() != n || g.mat().q() != field.order()) {
            return Err(Error::Ambient("generator outside the ambient".into()));
        }
        Ok(GroupSpec {
            name: name.into(),
            field: field.clone(),
            n,
            gens,
            claimed_order: None,
            provenance: String::new(),
        })
    }
    pub fn with_order(mut self, order: u128) -> Self {
        self.claimed_order = Some(order);
        self
    }
    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = p.into();
        self
    }
    pub fn has_duality(&self) -> bool {
        self.gens.iter().any(|g| g.dual())
    }
    pub fn is_linear(&self) -> bool {
        self.gens.iter().all(|g| g.is_linear())
    }
    /// Adds generators, dropping the claimed order.
    pub fn adjoin(&self, name: impl Into<String>, extra: &[GroupElement]) -> GroupSpec {
        let mut g = self.clone();
        g.name = name.into();
        g.gens.extend_from_slice(extra);
        g.claimed_order = None;
        g
    }
    /// Conjugate by `x`: generators `x^{-1} g x`.
    pub fn conjugate(&self, x: &GroupElement) -> GroupSpec {
        let mut out = self.clone();
        out.gens = self.gens.iter().map(|g| g.conjugate(&self.field, x)).collect();
        out
    }
    /// The natural vector-type action: vectors when no generator involves
    /// duality, vectors and functionals otherwise.
    pub fn natural_kind(&self) -> PointKind {
        if self.has_duality() {
            PointKind::VectorOrFunctional
        } else {
            PointKind::Vector
        }
    }
}

/// A permutation group with a certified stabilizer chain, optionally
/// attached to the domain it came from.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub name: String,
    pub domain: Option<Arc<Domain>>,
    pub chain: StabChain,
}

impl PermGroup {
    pub fn from_perms(name: impl Into<String>, degree: usize, gens: &[Perm], opts: &ChainOptions) -> Result<PermGroup> {
        Ok(PermGroup { name: name.into(), domain: None, chain: StabChain::build(degree, gens, opts)? })
    }

    pub fn degree(&self) -> usize {
        self.chain.degree()
    }
    pub fn order(&self) -> u128 {
        self.chain.order()
    }
    pub fn generators(&self) -> &[Perm] {
        self.chain.generators()
    }
    pub fn contains_perm(&self, p: &Perm) -> bool {
        self.chain.contains(p)
    }
    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        let d = self.domain()?;
        match d.perm_of(g) {
            Ok(p) => Ok(self.chain.contains(&p)),
            Err(Error::DualityOnVector) => Ok(false),
            Err(e) => Err(e),
        }
    }
    pub fn domain(&self) -> Result<&Arc<Domain>> {
        self.domain.as_ref().ok_or_else(|| Error::Params(format!("{} has no matrix domain", self.name)))
    }
    pub fn index_of(&self, x: &ActionPoint) -> Result<u32> {
        self.domain()?.index_of(x)
    }

    /// Subgroup of this group's domain generated by permutations.
    pub fn subgroup(&self, name: impl Into<String>, gens: &[Perm], opts: &ChainOptions) -> Result<PermGroup> {
        Ok(PermGroup { name: name.into(), domain: self.domain.clone(), chain: StabChain::build(self.degree(), gens, opts)? })
    }

    /// Pointwise stabilizer of a sequence of domain points.
    pub fn stabilizer_of_indices(&self, name: impl Into<String>, pts: &[u32], seed: u64) -> Result<PermGroup> {
        Ok(PermGroup { name: name.into(), domain: self.domain.clone(), chain: self.chain.stabilizer(pts, seed)? })
    }

    pub fn stabilizer(&self, x: &ActionPoint, seed: u64) -> Result<PermGroup> {
        let i = self.index_of(x)?;
        self.stabilizer_of_indices(format!("{}_{{pt}}", self.name), &[i], seed)
    }

    pub fn orbit_of_index(&self, i: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree()];
        seen[i as usize] = true;
        let mut out = vec![i];
        let mut ptr = 0;
        while ptr < out.len() {
            let x = out[ptr];
            for g in self.generators() {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            ptr += 1;
        }
        out
    }

    pub fn random_perm(&self, rng: &mut impl Rng) -> Perm {
        self.chain.random_element(rng)
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> Result<GroupElement> {
        let p = self.random_perm(rng);
        self.domain()?.element_of_perm(&p)
    }

    pub fn solvable_residual(&self, seed: u64) -> PermGroup {
        let c = residual::solvable_residual(self.degree(), &self.chain.strong_generators(), seed);
        PermGroup { name: format!("{}^(inf)", self.name), domain: self.domain.clone(), chain: c }
    }

    pub fn derived_subgroup(&self, seed: u64) -> PermGroup {
        let c = residual::derived_subgroup(self.degree(), &self.chain.strong_generators(), seed);
        PermGroup { name: format!("{}'", self.name), domain: self.domain.clone(), chain: c }
    }

    /// True when every generator of `other` lies in this group.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators().iter().all(|g| self.chain.contains(g))
    }

    pub fn equals(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }

    /// Multiset of element orders, by enumeration (small groups only).
    pub fn order_spectrum(&self) -> Result<BTreeMap<u64, u64>> {
        let elems = self.elements(1 << 20)?;
        let mut spec = BTreeMap::new();
        for e in &elems {
            *spec.entry(e.order()).or_insert(0) += 1;
        }
        Ok(spec)
    }

    /// All elements, refusing groups larger than `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Perm>> {
        if self.order() > cap {
            return Err(Error::Params(format!("group of order {} too large to enumerate", self.order())));
        }
        let mut seen: std::collections::HashSet<Perm> = std::collections::HashSet::new();
        let id = Perm::identity(self.degree());
        seen.insert(id.clone());
        let mut queue = vec![id];
        let mut ptr = 0;
        while ptr < queue.len() {
            let x = queue[ptr].clone();
            for g in self.generators() {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
            ptr += 1;
        }
        Ok(queue)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|a| g.iter().all(|b| a.compose(b) == b.compose(a)))
    }
}

/// Builds the permutation image of a matrix group on a domain of the given
/// kind, certified against the claimed order when one is present.
pub fn build_chain(g: &GroupSpec, kind: PointKind, base_hint: &[ActionPoint], seed: u64) -> Result<PermGroup> {
    let domain = Arc::new(Domain::new(PointSpace::new(kind, &g.field, g.n)?)?);
    build_chain_on(g, &domain, base_hint, seed)
}

pub fn build_chain_on(g: &GroupSpec, domain: &Arc<Domain>, base_hint: &[ActionPoint], seed: u64) -> Result<PermGroup> {
    let perms = domain.perms_of(&g.gens)?;
    let base: Vec<u32> = base_hint.iter().map(|x| domain.index_of(x)).collect::<Result<_>>()?;
    let opts = ChainOptions { base_hint: base, known_order: g.claimed_order, seed, ..Default::default() };
    let chain = StabChain::build(domain.degree(), &perms, &opts)?;
    Ok(PermGroup { name: g.name.clone(), domain: Some(domain.clone()), chain })
}

/// Orbit of a point under a matrix group, on the point space matching the
/// point's tag.
pub fn orbit(g: &GroupSpec, x: &ActionPoint, opts: &OrbitOptions) -> Result<OrbitSet> {
    let kind = match x {
        ActionPoint::Vector(_) if g.has_duality() => PointKind::VectorOrFunctional,
        ActionPoint::Vector(_) => PointKind::Vector,
        ActionPoint::Functional(_) => PointKind::VectorOrFunctional,
        ActionPoint::Projective { .. } => PointKind::Projective,
        ActionPoint::Antiflag { .. } => PointKind::Antiflag,
        ActionPoint::PointedAntiflag { .. } => PointKind::PointedAntiflag,
    };
    let space = PointSpace::new(kind, &g.field, g.n)?;
    orbit::orbit(&space, &g.gens, x, opts)
}

/// Decides `g ∈ HK` where `K` is the full stabilizer of `ω` in the ambient
/// group: `g = hk` iff `ω^{g^{-1}}` lies in `ω^H`.
pub fn product_membership(h_orbit: &OrbitSet, g: &GroupElement, omega: &ActionPoint) -> Result<bool> {
    let space = &h_orbit.space;
    let c = space.compile(&g.inverse(&space.field))?;
    let key = space.apply(&c, space.key_of(omega)?);
    h_orbit.contains_key(key).ok_or_else(|| Error::Params("orbit members were not retained".into()))
}

#[cfg(test)]
mod tests;
