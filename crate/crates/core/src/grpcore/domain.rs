//! Finite permutation domains built from a [`PointSpace`], used to turn
//! matrix groups into permutation groups for stabilizer chains.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::grpcore::points::{PointKind, PointSpace};
use crate::linalg::{self, ActionPoint, GroupElement, Mat};
use crate::par;
use crate::perm::Perm;

/// Largest permutation degree accepted for chain computations.
pub const MAX_DEGREE: u64 = 1 << 16;
const DENSE_LOOKUP: u64 = 1 << 26;

#[derive(Clone, Debug)]
enum Lookup {
    Dense(Vec<u32>),
    Hash(HashMap<u64, u32>),
}

#[derive(Clone, Debug)]
pub struct Domain {
    pub space: PointSpace,
    keys: Vec<u64>,
    lookup: Lookup,
}

impl Domain {
    pub fn new(space: PointSpace) -> Result<Domain> {
        if space.size() > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(space.size()));
        }
        let keys = space.enumerate();
        let lookup = if space.key_space() <= DENSE_LOOKUP {
            let mut t = vec![u32::MAX; space.key_space() as usize];
            for (i, &k) in keys.iter().enumerate() {
                t[k as usize] = i as u32;
            }
            Lookup::Dense(t)
        } else {
            Lookup::Hash(keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect())
        };
        Ok(Domain { space, keys, lookup })
    }

    pub fn degree(&self) -> usize {
        self.keys.len()
    }
    pub fn kind(&self) -> PointKind {
        self.space.kind
    }

    #[inline]
    fn index_of_key(&self, key: u64) -> Option<u32> {
        match &self.lookup {
            Lookup::Dense(t) => t.get(key as usize).copied().filter(|&i| i != u32::MAX),
            Lookup::Hash(h) => h.get(&key).copied(),
        }
    }

    pub fn index_of(&self, x: &ActionPoint) -> Result<u32> {
        let key = self.space.key_of(x)?;
        self.index_of_key(key).ok_or_else(|| Error::InvalidPoint("point outside the domain".into()))
    }

    pub fn point(&self, idx: u32) -> ActionPoint {
        self.space.point_of(self.keys[idx as usize])
    }

    pub fn perm_of(&self, g: &GroupElement) -> Result<Perm> {
        let c = self.space.compile(g)?;
        let images = par::map(&self.keys, |&k| self.index_of_key(self.space.apply(&c, k)).unwrap_or(u32::MAX));
        if images.contains(&u32::MAX) {
            return Err(Error::Ambient("element does not preserve the domain".into()));
        }
        Perm::from_images(images).ok_or_else(|| Error::Ambient("element is not a bijection".into()))
    }

    pub fn perms_of(&self, gens: &[GroupElement]) -> Result<Vec<Perm>> {
        gens.iter().map(|g| self.perm_of(g)).collect()
    }

    /// Recovers the semilinear element inducing a permutation of a vector
    /// (or vector-and-functional) domain.
    pub fn element_of_perm(&self, p: &Perm) -> Result<GroupElement> {
        let k = &self.space.field;
        let n = self.space.n;
        if !matches!(self.kind(), PointKind::Vector | PointKind::VectorOrFunctional) {
            return Err(Error::Params("elements are only recoverable on vector domains".into()));
        }
        let image = |v: &[u32]| -> Result<(Vec<u32>, bool)> {
            let idx = self.index_of(&ActionPoint::Vector(v.to_vec()))?;
            Ok(match self.point(p.apply(idx)) {
                ActionPoint::Vector(x) => (x, false),
                ActionPoint::Functional(x) => (x, true),
                _ => unreachable!(),
            })
        };
        let e1 = linalg::unit_vector(n, 0);
        let (r1, dual) = image(&e1)?;
        let lam = k.primitive();
        let (rl, _) = image(&linalg::scale(k, lam, &e1))?;
        let j = r1.iter().position(|&x| x != 0).unwrap();
        let ratio = k.mul(rl[j], k.inv(r1[j])?);
        let s = (0..k.degree()).find(|&s| k.frobenius(lam, s) == ratio).ok_or(Error::Singular)?;
        let back = (k.degree() - s) % k.degree();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let (r, d) = image(&linalg::unit_vector(n, i))?;
            if d != dual {
                return Err(Error::Ambient("inconsistent duality".into()));
            }
            rows.push(linalg::vec_frobenius(k, &r, back));
        }
        let g = GroupElement::new(k, Mat::from_rows(k, &rows)?, s, dual)?;
        if &self.perm_of(&g)? != p {
            return Err(Error::Ambient("permutation is not induced by a semilinear map".into()));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn round_trip_elements() {
        let k = make_field(2, 2).unwrap();
        let m = Mat::from_rows(&k, &[vec![1, 2, 0], vec![0, 1, 3], vec![2, 0, 1]]).unwrap();
        for (fa, dual) in [(0, false), (1, false), (1, true)] {
            let g = GroupElement::new(&k, m.clone(), fa, dual).unwrap();
            let kind = if dual { PointKind::VectorOrFunctional } else { PointKind::Vector };
            let d = Domain::new(PointSpace::new(kind, &k, 3).unwrap()).unwrap();
            let p = d.perm_of(&g).unwrap();
            assert_eq!(d.element_of_perm(&p).unwrap(), g);
            let h = g.compose(&k, &g).unwrap();
            assert_eq!(d.perm_of(&h).unwrap(), p.compose(&p));
        }
    }
}
