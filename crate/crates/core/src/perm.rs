//! Permutations of `0..degree` acting on the right: `i^(gh) = (i^g)^h`.

use std::fmt;

use num_integer::Integer;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for c in self.cycles() {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    /// Builds from an image list; returns `None` unless it is a bijection.
    pub fn from_images(images: Vec<u32>) -> Option<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm(images))
    }

    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Perm {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                img[x as usize] = c[(i + 1) % c.len()];
            }
        }
        Perm(img)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }
    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }
    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u32;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut out = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        out
    }

    /// `h^{-1} self h`.
    pub fn conjugate(&self, h: &Perm) -> Perm {
        let mut out = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[h.0[i] as usize] = h.0[j as usize];
        }
        Perm(out)
    }

    /// `self^{-1} h^{-1} self h`.
    pub fn commutator(&self, h: &Perm) -> Perm {
        self.inverse().compose(&self.conjugate(h))
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start as u32 {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                c.push(x);
                x = self.0[x as usize];
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.0.iter().enumerate().find(|(i, &j)| *i as u32 != j).map(|(i, _)| i as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_orientation() {
        let a = Perm::from_cycles(3, &[&[0, 1]]);
        let b = Perm::from_cycles(3, &[&[1, 2]]);
        let ab = a.compose(&b);
        // 0 -> 1 -> 2
        assert_eq!(ab.apply(0), 2);
        assert_eq!(ab.order(), 3);
        assert!(ab.compose(&ab.inverse()).is_identity());
        assert_eq!(a.conjugate(&b), b.inverse().compose(&a).compose(&b));
        assert_eq!(a.commutator(&b), a.inverse().compose(&b.inverse()).compose(&a).compose(&b));
        assert!(!a.is_even());
        assert!(ab.is_even());
        assert_eq!(ab.pow(3), Perm::identity(3));
        assert!(Perm::from_images(vec![0, 0, 1]).is_none());
    }
}
