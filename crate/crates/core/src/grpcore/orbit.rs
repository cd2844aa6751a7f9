//! Breadth-first orbit enumeration on packed keys.
//!
//! Frontiers are expanded in parallel; membership goes through an atomic
//! bitset (when the key space fits the memory budget) or a hash set, so the
//! resulting point set does not depend on the schedule.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::grpcore::points::{CompiledElement, PointSpace};
use crate::linalg::{ActionPoint, GroupElement};
use crate::par;

/// Default orbit memory budget in bytes; overridable by `FACTORCHECK_MEM_BUDGET`.
pub const DEFAULT_MEM_BUDGET: u64 = 2 << 30;

pub fn default_mem_budget() -> u64 {
    std::env::var("FACTORCHECK_MEM_BUDGET").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MEM_BUDGET)
}

#[derive(Clone, Debug)]
pub struct OrbitOptions {
    /// Record a Schreier tree so every point has a witness word.
    pub transporters: bool,
    pub mem_budget: u64,
    /// Keep the member set for later membership queries.
    pub keep_members: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions { transporters: false, mem_budget: default_mem_budget(), keep_members: true }
    }
}

#[derive(Clone, Debug)]
enum Members {
    None,
    Bits(Vec<u64>),
    Sorted(Vec<u64>),
}

#[derive(Clone, Debug)]
pub struct OrbitSet {
    pub space: PointSpace,
    pub seed: u64,
    pub size: u64,
    members: Members,
    tree: Option<HashMap<u64, (u64, u32)>>,
}

struct AtomicBits(Vec<AtomicU64>);

impl AtomicBits {
    fn new(bits: u64) -> AtomicBits {
        AtomicBits((0..bits.div_ceil(64)).map(|_| AtomicU64::new(0)).collect())
    }
    /// Sets the bit; true when it was previously clear.
    #[inline]
    fn insert(&self, k: u64) -> bool {
        let mask = 1u64 << (k % 64);
        self.0[(k / 64) as usize].fetch_or(mask, Ordering::Relaxed) & mask == 0
    }
}

impl OrbitSet {
    pub fn contains_key(&self, key: u64) -> Option<bool> {
        match &self.members {
            Members::None => None,
            Members::Bits(b) => Some(b.get((key / 64) as usize).is_some_and(|w| w >> (key % 64) & 1 == 1)),
            Members::Sorted(v) => Some(v.binary_search(&key).is_ok()),
        }
    }

    pub fn contains(&self, x: &ActionPoint) -> Result<bool> {
        let key = self.space.key_of(x)?;
        self.contains_key(key).ok_or_else(|| Error::Params("orbit members were not retained".into()))
    }

    /// Sorted member keys.
    pub fn keys(&self) -> Option<Vec<u64>> {
        match &self.members {
            Members::None => None,
            Members::Sorted(v) => Some(v.clone()),
            Members::Bits(b) => Some(
                b.iter()
                    .enumerate()
                    .flat_map(|(i, &w)| (0..64).filter(move |j| w >> j & 1 == 1).map(move |j| i as u64 * 64 + j))
                    .collect(),
            ),
        }
    }

    /// Generator indices of a word carrying the seed to `key`.
    pub fn transporter_word(&self, key: u64) -> Option<Vec<u32>> {
        let tree = self.tree.as_ref()?;
        let mut word = Vec::new();
        let mut x = key;
        while x != self.seed {
            let &(parent, g) = tree.get(&x)?;
            word.push(g);
            x = parent;
        }
        word.reverse();
        Some(word)
    }
}

/// Orbit of `seed` under compiled generators.
pub fn orbit_keys(space: &PointSpace, gens: &[CompiledElement], seed: u64, opts: &OrbitOptions) -> Result<OrbitSet> {
    if opts.transporters {
        return orbit_with_tree(space, gens, seed, opts);
    }
    let bitset_bytes = space.key_space().div_ceil(8);
    if bitset_bytes <= opts.mem_budget / 2 {
        let bits = AtomicBits::new(space.key_space());
        bits.insert(seed);
        let mut size = 1u64;
        let mut frontier = vec![seed];
        while !frontier.is_empty() {
            let next = par::flat_map_chunks(&frontier, 4096, |chunk| {
                let mut out = Vec::new();
                for &x in chunk {
                    for g in gens {
                        let y = space.apply(g, x);
                        if bits.insert(y) {
                            out.push(y);
                        }
                    }
                }
                out
            });
            size += next.len() as u64;
            frontier = next;
        }
        let members = if opts.keep_members {
            Members::Bits(bits.0.into_iter().map(|a| a.into_inner()).collect())
        } else {
            Members::None
        };
        return Ok(OrbitSet { space: space.clone(), seed, size, members, tree: None });
    }
    // Hash slot, resize slack and frontier copies come to about 48 bytes per
    // point; images are produced a chunk at a time so the check stays tight.
    let max_points = opts.mem_budget / 48;
    let mut seen: HashSet<u64> = HashSet::from([seed]);
    let mut frontier = vec![seed];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for block in frontier.chunks(1 << 16) {
            let images = par::flat_map_chunks(block, 4096, |chunk| {
                chunk.iter().flat_map(|&x| gens.iter().map(move |g| space.apply(g, x))).collect()
            });
            for y in images {
                if seen.insert(y) {
                    next.push(y);
                }
            }
            if seen.len() as u64 > max_points {
                return Err(Error::OrbitBudget { partial: seen.len() as u64 });
            }
        }
        frontier = next;
    }
    let size = seen.len() as u64;
    let members = if opts.keep_members {
        let mut v: Vec<u64> = seen.into_iter().collect();
        v.sort_unstable();
        Members::Sorted(v)
    } else {
        Members::None
    };
    Ok(OrbitSet { space: space.clone(), seed, size, members, tree: None })
}

fn orbit_with_tree(space: &PointSpace, gens: &[CompiledElement], seed: u64, opts: &OrbitOptions) -> Result<OrbitSet> {
    let max_points = opts.mem_budget / 40;
    let mut tree: HashMap<u64, (u64, u32)> = HashMap::new();
    let mut order = vec![seed];
    let mut ptr = 0;
    while ptr < order.len() {
        let x = order[ptr];
        for (j, g) in gens.iter().enumerate() {
            let y = space.apply(g, x);
            if y != seed && !tree.contains_key(&y) {
                tree.insert(y, (x, j as u32));
                order.push(y);
            }
        }
        if order.len() as u64 > max_points {
            return Err(Error::OrbitBudget { partial: order.len() as u64 });
        }
        ptr += 1;
    }
    order.sort_unstable();
    Ok(OrbitSet { space: space.clone(), seed, size: order.len() as u64, members: Members::Sorted(order), tree: Some(tree) })
}

/// Orbit of a point under matrix generators.
pub fn orbit(space: &PointSpace, gens: &[GroupElement], x: &ActionPoint, opts: &OrbitOptions) -> Result<OrbitSet> {
    let compiled: Vec<CompiledElement> = gens.iter().map(|g| space.compile(g)).collect::<Result<_>>()?;
    let seed = space.key_of(x)?;
    orbit_keys(space, &compiled, seed, opts)
}
