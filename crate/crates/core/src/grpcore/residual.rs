//! Normal closures, derived subgroups and solvable residuals of permutation
//! groups.

use crate::grpcore::chain::{ChainOptions, StabChain, VerifyMode};
use crate::perm::Perm;

/// Normal closure of `seeds` under conjugation by `ambient`.  The returned
/// chain is Schreier-verified and closed under conjugation by every ambient
/// generator.
pub fn normal_closure(degree: usize, ambient: &[Perm], seeds: &[Perm], seed: u64) -> StabChain {
    let start: Vec<Perm> = seeds.iter().filter(|g| !g.is_identity()).cloned().collect();
    let opts = ChainOptions { seed, verify: VerifyMode::Always, ..Default::default() };
    let mut chain = StabChain::build(degree, &start, &opts).expect("chains without a claimed order always build");
    let mut round = 0u64;
    loop {
        let gens = chain.generators().to_vec();
        let missing: Vec<Perm> = gens
            .iter()
            .flat_map(|n| ambient.iter().map(move |g| n.conjugate(g)))
            .filter(|c| !chain.contains(c))
            .collect();
        if missing.is_empty() {
            return chain;
        }
        round += 1;
        // one new generator at a time keeps the generating set small
        chain.extend(&missing[..1], seed.wrapping_add(round));
    }
}

/// `[G, G]` for `G = <gens>`.
pub fn derived_subgroup(degree: usize, gens: &[Perm], seed: u64) -> StabChain {
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            comms.push(a.commutator(b));
        }
    }
    normal_closure(degree, gens, &comms, seed)
}

/// Terms of the derived series down to its limit; the last entry is the
/// solvable residual.
pub fn derived_series(degree: usize, gens: &[Perm], seed: u64) -> Vec<StabChain> {
    let opts = ChainOptions { seed, verify: VerifyMode::Always, ..Default::default() };
    let mut series = vec![StabChain::build(degree, gens, &opts).expect("chain")];
    loop {
        let last = series.last().unwrap();
        let d = derived_subgroup(degree, &last.strong_generators(), seed);
        if d.order() == last.order() {
            return series;
        }
        let trivial = d.order() == 1;
        series.push(d);
        if trivial {
            return series;
        }
    }
}

pub fn solvable_residual(degree: usize, gens: &[Perm], seed: u64) -> StabChain {
    derived_series(degree, gens, seed).pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_series() {
        let s5 = vec![Perm::from_cycles(5, &[&[0, 1]]), Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]])];
        let series = derived_series(5, &s5, 1);
        let orders: Vec<u128> = series.iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![120, 60]);
        let s4 = vec![Perm::from_cycles(4, &[&[0, 1]]), Perm::from_cycles(4, &[&[0, 1, 2, 3]])];
        let orders: Vec<u128> = derived_series(4, &s4, 1).iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        let ab = vec![Perm::from_cycles(4, &[&[0, 1]]), Perm::from_cycles(4, &[&[2, 3]])];
        assert_eq!(solvable_residual(4, &ab, 1).order(), 1);
    }
}
