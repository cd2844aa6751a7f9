//! The 6-dimensional Weil representation of `SL_2(13)`, realized over GF(3).
//!
//! Over GF(27) (which holds a 13th root of unity `ζ`) the odd functions on
//! GF(13) carry `u: δ_x -> ζ^{x²} δ_x` and a Fourier transform `w`.  The
//! representation is written over GF(3) by blowing it up to degree 18 and
//! spinning a vector from the null space of a group-algebra element.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{field_of_order, Extension, Field, FieldSpec};
use crate::grpcore::{build_chain, ChainOptions, GroupSpec, PermGroup, PointKind};
use crate::linalg::{self, blowup, GroupElement, Mat};

use super::search;

const P: i64 = 13;
const HALF: usize = 6;

/// Certificates for the witness pair `X`, `X^δ` in `PSL_6(3)`.
#[derive(Clone, Debug, Serialize)]
pub struct WeilCertificate {
    /// `k` in the kernel `ζ^{kxy}` and the scalar `c` (as a power of the
    /// generator of GF(27)).
    pub fourier_k: i64,
    pub fourier_scale_log: u32,
    pub order: u128,
    pub projective_order: u128,
    /// Dimension of the GF(3)-span of the group's matrices (36 means
    /// absolutely irreducible).
    pub envelope_dim: usize,
    /// Traces of `u` and `u²`; when they differ, no outer automorphism of
    /// `SL_2(13)` is induced by `GL_6(3)`, so the normalizer lies in
    /// `X·Z(GL_6(3)) ≤ SL_6(3)` and `X`, `X^δ` (`det δ = -1`) are not
    /// conjugate in `PSL_6(3)`.
    pub trace_u: u32,
    pub trace_u2: u32,
    pub non_conjugate: bool,
}

pub struct WeilGroup {
    pub spec: GroupSpec,
    /// The same group conjugated by `diag(-1, 1, ..., 1)`.
    pub twin: GroupSpec,
    pub certificate: WeilCertificate,
}

fn odd_part(k27: &Field, kk: i64, c: u32) -> Result<(Mat, Mat)> {
    let zeta = k27.pow(k27.primitive(), 2)?;
    let z = |e: i64| k27.pow(zeta, e.rem_euclid(P)).unwrap();
    let mut u = Mat::zero(k27, HALF);
    let mut w = Mat::zero(k27, HALF);
    for y in 1..=HALF as i64 {
        u.set(y as usize - 1, y as usize - 1, z(y * y));
        for x in 1..=HALF as i64 {
            let e = k27.sub(z(kk * x * y), z(-kk * x * y));
            w.set(y as usize - 1, x as usize - 1, k27.mul(c, e));
        }
    }
    Ok((u, w))
}

fn add_scaled(k: &FieldSpec, acc: &mut [Vec<u32>], m: &Mat, s: u32) {
    for (i, row) in acc.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = k.add(*x, k.mul(s, m.get(i, j)));
        }
    }
}

/// Spins `v` under the generators; returns an echelon basis of the span.
fn spin(k: &FieldSpec, gens: &[Mat], v: &[u32]) -> Vec<Vec<u32>> {
    let mut basis = linalg::span_basis(k, &[v.to_vec()]);
    let mut queue = vec![v.to_vec()];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.vec_mul(k, &x);
            if let Some(r) = linalg::reduce_against(k, &basis, &y) {
                basis.push(r);
                queue.push(y);
            }
        }
    }
    basis
}

/// Action of `g` on the span of `basis` (which `g` must preserve).
fn restrict(k: &FieldSpec, basis: &[Vec<u32>], g: &Mat) -> Result<Mat> {
    let d = basis.len();
    let mut pivots = Vec::new();
    // choose d independent columns
    for col in 0..basis[0].len() {
        let mut cand = pivots.clone();
        cand.push(col);
        let sub: Vec<Vec<u32>> = cand.iter().map(|&c| basis.iter().map(|r| r[c]).collect()).collect();
        if linalg::span_basis(k, &sub).len() == cand.len() {
            pivots = cand;
        }
        if pivots.len() == d {
            break;
        }
    }
    let bp = Mat::from_rows(k, &basis.iter().map(|r| pivots.iter().map(|&c| r[c]).collect()).collect::<Vec<_>>())?;
    let bp_inv = bp.inverse(k)?;
    let mut rows = Vec::with_capacity(d);
    for b in basis {
        let img = g.vec_mul(k, b);
        let yp: Vec<u32> = pivots.iter().map(|&c| img[c]).collect();
        let coords = bp_inv.vec_mul(k, &yp);
        // check that the image really lies in the span
        let back: Vec<u32> = (0..img.len()).map(|j| (0..d).fold(0, |acc, i| k.add(acc, k.mul(coords[i], basis[i][j])))).collect();
        if back != img {
            return Err(Error::Certification("spun space is not invariant".into()));
        }
        rows.push(coords);
    }
    Mat::from_rows(k, &rows)
}

/// Writes a GF(27)-representation over GF(3) when its character allows.
fn descend(k3: &Field, ext: &Extension, mats: &[Mat], seed: u64) -> Result<Vec<Mat>> {
    let blown: Vec<Mat> = mats.iter().map(|m| blowup(ext, m, 0).map(|g| g.mat().clone())).collect::<Result<_>>()?;
    let n = blown[0].n();
    let dim = mats[0].n();
    search(400, seed, |rng| {
        let mut acc = vec![vec![0u32; n]; n];
        for _ in 0..4 {
            let mut word = Mat::identity(k3, n);
            for _ in 0..rng.gen_range(1..7) {
                word = word.mul(k3, &blown[rng.gen_range(0..blown.len())]).ok()?;
            }
            add_scaled(k3, &mut acc, &word, rng.gen_range(1..k3.order()));
        }
        let ker = linalg::left_kernel(k3, &acc);
        if ker.is_empty() || ker.len() > ext.b {
            return None;
        }
        let basis = spin(k3, &blown, &ker[0]);
        if basis.len() != dim {
            return None;
        }
        blown.iter().map(|g| restrict(k3, &basis, g)).collect::<Result<Vec<_>>>().ok()
    })
}

fn trace(k: &FieldSpec, m: &Mat) -> u32 {
    (0..m.n()).fold(0, |acc, i| k.add(acc, m.get(i, i)))
}

/// Dimension of the linear span of the given matrices.
pub fn envelope_dim(k: &FieldSpec, mats: &[Mat]) -> usize {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    for m in mats {
        let flat: Vec<u32> = m.rows().concat();
        if let Some(r) = linalg::reduce_against(k, &basis, &flat) {
            basis.push(r);
        }
    }
    basis.len()
}

/// Constructs `SL_2(13) < SL_6(3)` and certifies its order, its projective
/// image `PSL_2(13)` and the non-conjugacy of `X` and `X^δ` in `PSL_6(3)`.
pub fn sl2_13_in_sl6_3(seed: u64) -> Result<WeilGroup> {
    let k3 = field_of_order(3)?;
    let k27 = field_of_order(27)?;
    let ext = Extension::new(&k3, &k27)?;
    let minus_one = Mat::scalar(&k27, HALF, k27.neg(1));
    for kk in [1i64, 2, -1, -2] {
        for clog in 0..26u32 {
            let c = k27.exp(clog as u64);
            let (u, w) = odd_part(&k27, kk, c)?;
            if w.mul(&k27, &w)? != minus_one {
                continue;
            }
            let Ok(gens) = descend(&k3, &ext, &[u.clone(), w.clone()], seed) else { continue };
            if gens.iter().any(|g| g.det(&k3) != 1) {
                continue;
            }
            let elems: Vec<GroupElement> = gens.iter().map(|g| GroupElement::linear(&k3, g.clone())).collect::<Result<_>>()?;
            let spec = GroupSpec::new("SL_2(13)", &k3, HALF, elems)?.with_provenance(format!("weil:k={kk}:c=mu^{clog}:seed={seed}"));
            let pg = build_chain(&spec, PointKind::Vector, &[], seed)?;
            if pg.order() != 2184 {
                continue;
            }
            let proj = build_chain(&spec, PointKind::Projective, &[], seed)?;
            let dom = pg.domain()?;
            let all = pg.elements(4096)?;
            let mats: Vec<Mat> = all.iter().map(|p| dom.element_of_perm(p).map(|g| g.mat().clone())).collect::<Result<_>>()?;
            let env = envelope_dim(&k3, &mats);
            let u3 = &gens[0];
            let tu = trace(&k3, u3);
            let tu2 = trace(&k3, &u3.mul(&k3, u3)?);
            let mut d = vec![1; HALF];
            d[0] = k3.neg(1);
            let delta = GroupElement::linear(&k3, Mat::diag(&k3, &d))?;
            let mut twin = spec.conjugate(&delta);
            twin.name = "SL_2(13)^delta".into();
            let spec = spec.with_order(2184);
            let twin = twin.with_order(2184);
            let certificate = WeilCertificate {
                fourier_k: kk,
                fourier_scale_log: clog,
                order: pg.order(),
                projective_order: proj.order(),
                envelope_dim: env,
                trace_u: tu,
                trace_u2: tu2,
                non_conjugate: env == HALF * HALF && tu != tu2,
            };
            return Ok(WeilGroup { spec, twin, certificate });
        }
    }
    Err(Error::SearchExhausted { tries: 4 * 26, seed })
}

/// `PSL_6(3)` on its 364 points and 364 hyperplanes.
pub fn psl63(seed: u64) -> Result<(GroupSpec, PermGroup)> {
    let k = field_of_order(3)?;
    let sl = super::classical_generators(crate::orders::Family::SL, 6, &k)?;
    let image = crate::orders::projective_order(&crate::orders::sl_order(6, 3), 2);
    let z = super::projective_image(&sl, crate::orders::to_u128(&image), seed)?;
    Ok((sl, z))
}

/// Images of a matrix group on the domain of `z`.
pub fn on_domain(z: &PermGroup, g: &GroupSpec, seed: u64) -> Result<PermGroup> {
    let perms = z.domain()?.perms_of(&g.gens)?;
    z.subgroup(g.name.clone(), &perms, &ChainOptions { seed, ..Default::default() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weil_representation_descends_and_certifies() {
        let w = sl2_13_in_sl6_3(1).unwrap();
        let c = &w.certificate;
        assert_eq!(c.order, 2184);
        assert_eq!(c.projective_order, 1092);
        assert_eq!(c.envelope_dim, 36);
        assert!(c.non_conjugate, "{c:?}");
    }
}
