//! Constructors for the groups appearing in the factorizations.

pub mod classical;
pub mod ext;
pub mod g2;
pub mod sporadic;
pub mod weil;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grpcore::{build_chain, ChainOptions, PermGroup, PointKind};
use crate::grpcore::GroupSpec;
use crate::perm::Perm;

pub use classical::{automorphism_element, classical_generators, stabilizer_subgroup, AutKind, StabKind};
pub use ext::{ext_subgroup, ExtGroup, Inner, Twist};
pub use g2::g2_generators;

/// The derived subgroup of a matrix group, computed on its natural vector
/// domain and read back as matrices.
pub fn derived(g: &GroupSpec, seed: u64) -> Result<GroupSpec> {
    let pg = build_chain(g, g.natural_kind(), &[], seed)?;
    let d = pg.derived_subgroup(seed);
    let dom = pg.domain()?;
    let gens = d.generators().iter().map(|p| dom.element_of_perm(p)).collect::<Result<Vec<_>>>()?;
    let mut out = GroupSpec::new(format!("{}'", g.name), &g.field, g.n, gens)?.with_provenance(format!("derived:{}", g.provenance));
    out.claimed_order = Some(d.order());
    Ok(out)
}

/// Permutation image on points and hyperplanes, certified against
/// `image_order` when given.
pub fn projective_image(g: &GroupSpec, image_order: Option<u128>, seed: u64) -> Result<PermGroup> {
    let mut spec = g.clone();
    spec.claimed_order = image_order;
    build_chain(&spec, PointKind::Projective, &[], seed)
}

/// Order of the subgroup generated by permutations (Schreier–Sims, verified).
pub fn generated_order(degree: usize, gens: &[Perm], seed: u64) -> Result<u128> {
    let opts = ChainOptions { seed, ..Default::default() };
    Ok(crate::grpcore::StabChain::build(degree, gens, &opts)?.order())
}

/// Runs a seeded randomized search for up to `budget` attempts.
pub fn search<T>(budget: u64, seed: u64, mut attempt: impl FnMut(&mut ChaCha8Rng) -> Option<T>) -> Result<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        if let Some(x) = attempt(&mut rng) {
            return Ok(x);
        }
    }
    Err(Error::SearchExhausted { tries: budget, seed })
}

/// A random power of a random element having exact order `o`, if the
/// sampled element's order is divisible by `o`.
pub fn element_of_order(g: &PermGroup, o: u64, rng: &mut ChaCha8Rng) -> Option<Perm> {
    let x = g.random_perm(rng);
    let n = x.order();
    (n % o == 0).then(|| x.pow(n / o))
}
