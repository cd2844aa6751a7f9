//! Generators of SL, GL and Sp, point and antiflag stabilizers, and the
//! outer automorphism elements.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec};
use crate::grpcore::GroupSpec;
use crate::linalg::{self, GroupElement, Mat};
use crate::orders::{self, Family};

fn elem(k: &FieldSpec, m: Mat) -> GroupElement {
    GroupElement::linear(k, m).expect("generator is invertible")
}

/// `I + t·E_{ij}`: the row of `e_i` gains `t·e_j`.
pub fn transvection(k: &FieldSpec, n: usize, i: usize, j: usize, t: u32) -> Mat {
    let mut m = Mat::identity(k, n);
    m.set(i, j, t);
    m
}

/// The cycle `e_1 -> e_2 -> ... -> e_n -> ±e_1` with determinant 1.
fn cycle(k: &FieldSpec, n: usize) -> Mat {
    let mut m = Mat::zero(k, n);
    for i in 0..n - 1 {
        m.set(i, i + 1, 1);
    }
    m.set(n - 1, 0, if n % 2 == 0 { k.neg(1) } else { 1 });
    m
}

/// An additive basis `λ^0, ..., λ^(f-1)` of the field over its prime field.
pub fn additive_basis(k: &FieldSpec) -> Vec<u32> {
    (0..k.degree()).map(|j| k.exp(j as u64)).collect()
}

pub fn sl_matrices(k: &FieldSpec, n: usize) -> Vec<Mat> {
    if n < 2 {
        return Vec::new();
    }
    let mut gens: Vec<Mat> = additive_basis(k).into_iter().map(|t| transvection(k, n, 0, 1, t)).collect();
    gens.push(transvection(k, n, 1, 0, 1));
    if n > 2 {
        gens.push(cycle(k, n));
    }
    gens
}

/// Gram matrix of the standard alternating form on `e_1, f_1, ..., e_m, f_m`.
pub fn symplectic_gram(k: &FieldSpec, n: usize) -> Mat {
    let mut j = Mat::zero(k, n);
    for i in 0..n / 2 {
        j.set(2 * i, 2 * i + 1, 1);
        j.set(2 * i + 1, 2 * i, k.neg(1));
    }
    j
}

/// True when `g J gᵀ = J` (row convention).
pub fn preserves_form(k: &FieldSpec, g: &Mat, gram: &Mat) -> bool {
    g.mul(k, gram).and_then(|x| x.mul(k, &g.transpose())).map(|x| &x == gram).unwrap_or(false)
}

pub fn sp_matrices(k: &FieldSpec, n: usize) -> Vec<Mat> {
    let m = n / 2;
    let mut gens = Vec::new();
    for t in additive_basis(k) {
        gens.push(transvection(k, n, 0, 1, t));
    }
    gens.push(transvection(k, n, 1, 0, 1));
    if m >= 2 {
        // cycle the hyperbolic pairs
        let mut c = Mat::zero(k, n);
        for i in 0..m {
            let j = (i + 1) % m;
            c.set(2 * i, 2 * j, 1);
            c.set(2 * i + 1, 2 * j + 1, 1);
        }
        gens.push(c);
        // e_1 -> e_1 + e_2, f_2 -> f_2 - f_1
        let mut x = Mat::identity(k, n);
        x.set(0, 2, 1);
        x.set(3, 1, k.neg(1));
        gens.push(x);
    }
    gens
}

/// Generators of `SL_n(q)`, `GL_n(q)` or `Sp_n(q)` with the formula order.
pub fn classical_generators(family: Family, n: usize, k: &Field) -> Result<GroupSpec> {
    let q = k.order() as u64;
    if n < 2 {
        return Err(Error::Params(format!("degree {n} below 2")));
    }
    let order = orders::group_order(family, n as u64, q)?;
    let mats = match family {
        Family::SL => sl_matrices(k, n),
        Family::GL => {
            let mut g = sl_matrices(k, n);
            let mut d = vec![1; n];
            d[0] = k.primitive();
            g.push(Mat::diag(k, &d));
            g
        }
        Family::Sp => sp_matrices(k, n),
        Family::G2 => return Err(Error::Params("use the G2 constructor".into())),
    };
    let name = match family {
        Family::SL => format!("SL_{n}({q})"),
        Family::GL => format!("GL_{n}({q})"),
        Family::Sp => format!("Sp_{n}({q})"),
        Family::G2 => unreachable!(),
    };
    let gens = mats.into_iter().map(|m| elem(k, m)).collect();
    let mut g = GroupSpec::new(name, k, n, gens)?.with_provenance(format!("classical:{family:?}:{n}:{q}"));
    g.claimed_order = orders::to_u128(&order);
    Ok(g)
}

/// Embeds `m` in the lower-right corner of an identity of size `n`.
fn corner(k: &FieldSpec, n: usize, m: &Mat) -> Mat {
    let off = n - m.n();
    let mut out = Mat::identity(k, n);
    for i in 0..m.n() {
        for j in 0..m.n() {
            out.set(off + i, off + j, m.get(i, j));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabKind {
    /// `G_v = q^{n-1}:SL_{n-1}(q)`.
    Vector,
    /// `G_{v,W} = SL_{n-1}(q)`.
    Antiflag,
}

/// Stabilizer in `SL_n(q)` of `v` (and the hyperplane `ker w` for the
/// antiflag kind).  Built on the standard pair `(e_1, e_1*)` and moved into
/// place by a change of basis.
pub fn stabilizer_subgroup(kind: StabKind, k: &Field, n: usize, v: &[u32], w: Option<&[u32]>) -> Result<GroupSpec> {
    if v.len() != n || v.iter().all(|&x| x == 0) {
        return Err(Error::InvalidPoint("v must be a nonzero vector of the ambient".into()));
    }
    let q = k.order() as u64;
    let mut mats: Vec<Mat> = sl_matrices(k, n - 1).iter().map(|m| corner(k, n, m)).collect();
    let order = match kind {
        StabKind::Vector => {
            mats.extend(additive_basis(k).into_iter().map(|t| transvection(k, n, 1, 0, t)));
            orders::sl_order(n as u64 - 1, q) * num_bigint::BigUint::from(q).pow(n as u32 - 1)
        }
        StabKind::Antiflag => orders::sl_order(n as u64 - 1, q),
    };
    // basis change x with e_1 x = v and (for antiflags) rows 2..n spanning ker w
    let mut rows = vec![v.to_vec()];
    match (kind, w) {
        (StabKind::Antiflag, Some(w)) => {
            if linalg::pairing(k, v, w) == 0 {
                return Err(Error::InvalidPoint("v lies in W".into()));
            }
            let col: Vec<Vec<u32>> = w.iter().map(|&x| vec![x]).collect();
            rows.extend(linalg::left_kernel(k, &col));
        }
        (StabKind::Antiflag, None) => return Err(Error::InvalidPoint("antiflag stabilizer needs W".into())),
        (StabKind::Vector, _) => {
            for i in 0..n {
                if rows.len() == n {
                    break;
                }
                let mut cand = rows.clone();
                cand.push(linalg::unit_vector(n, i));
                if linalg::span_basis(k, &cand).len() == cand.len() {
                    rows = cand;
                }
            }
        }
    }
    let x = GroupElement::linear(k, Mat::from_rows(k, &rows)?)?;
    let gens: Vec<GroupElement> = mats.into_iter().map(|m| elem(k, m).conjugate(k, &x)).collect();
    let label = if kind == StabKind::Vector { "G_v" } else { "G_{v,W}" };
    let mut g = GroupSpec::new(format!("SL_{n}({q})_{label}"), k, n, gens)?.with_provenance(format!("stabilizer:{kind:?}:{n}:{q}"));
    g.claimed_order = orders::to_u128(&order);
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutKind {
    Phi,
    Gamma,
    PhiGamma,
}

/// `φ`, `γ` or `φγ` on `GF(q)^n` (identity matrix, twist and duality bits).
pub fn automorphism_element(kind: AutKind, k: &Field, n: usize) -> GroupElement {
    let (fa, dual) = match kind {
        AutKind::Phi => (1, false),
        AutKind::Gamma => (0, true),
        AutKind::PhiGamma => (1, true),
    };
    GroupElement::new(k, Mat::identity(k, n), fa % k.degree(), dual).expect("identity is invertible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_of_order;
    use crate::grpcore::{build_chain, PointKind};

    #[test]
    fn sp_generators_preserve_the_form() {
        for (n, q) in [(4usize, 2u64), (6, 2), (4, 3), (4, 4), (2, 8)] {
            let k = field_of_order(q).unwrap();
            let j = symplectic_gram(&k, n);
            for g in sp_matrices(&k, n) {
                assert!(preserves_form(&k, &g, &j), "Sp_{n}({q})");
            }
        }
    }

    #[test]
    fn generators_are_in_sl() {
        for (n, q) in [(2usize, 2u64), (3, 3), (4, 2), (5, 4), (4, 9)] {
            let k = field_of_order(q).unwrap();
            for m in sl_matrices(&k, n) {
                assert_eq!(m.det(&k), 1);
            }
        }
    }

    #[test]
    fn chain_orders_match_formulas() {
        for (fam, n, q) in [
            (Family::SL, 2usize, 2u64),
            (Family::SL, 3, 2),
            (Family::SL, 4, 2),
            (Family::SL, 2, 9),
            (Family::SL, 3, 4),
            (Family::GL, 2, 3),
            (Family::Sp, 4, 2),
            (Family::Sp, 4, 3),
            (Family::Sp, 6, 2),
        ] {
            let k = field_of_order(q).unwrap();
            let g = classical_generators(fam, n, &k).unwrap();
            let c = build_chain(&g, PointKind::Vector, &[], 7).unwrap();
            assert_eq!(Some(c.order()), g.claimed_order, "{}", g.name);
        }
    }

    #[test]
    fn stabilizers_have_expected_orders() {
        let k = field_of_order(2).unwrap();
        let e1 = linalg::unit_vector(4, 0);
        let cases = [
            (StabKind::Vector, 2usize, 2u128),
            (StabKind::Vector, 4, 1344),
            (StabKind::Antiflag, 4, 168),
        ];
        for (kind, n, expect) in cases {
            let v = linalg::unit_vector(n, 0);
            let g = stabilizer_subgroup(kind, &k, n, &v, Some(&v)).unwrap();
            let c = build_chain(&g, PointKind::Vector, &[], 3).unwrap();
            assert_eq!(c.order(), expect);
        }
        // a non-standard antiflag
        let v = vec![1, 1, 0, 1];
        let w = vec![0, 1, 1, 0];
        let g = stabilizer_subgroup(StabKind::Antiflag, &k, 4, &v, Some(&w)).unwrap();
        for x in &g.gens {
            assert_eq!(x.apply_vector(&k, &v).unwrap(), v);
            assert_eq!(x.map_functional(&k, &w).0, w);
        }
        assert!(stabilizer_subgroup(StabKind::Antiflag, &k, 4, &e1, Some(&linalg::unit_vector(4, 1))).is_err());
    }

    #[test]
    fn automorphism_orders() {
        let k4 = field_of_order(4).unwrap();
        let k16 = field_of_order(16).unwrap();
        let g = automorphism_element(AutKind::Gamma, &k4, 3);
        assert!(g.compose(&k4, &g).unwrap().is_identity());
        assert_eq!(automorphism_element(AutKind::PhiGamma, &k4, 2).order(&k4, 10), Some(2));
        assert_eq!(automorphism_element(AutKind::PhiGamma, &k16, 2).order(&k16, 10), Some(4));
        assert_eq!(automorphism_element(AutKind::Phi, &k16, 2).order(&k16, 10), Some(4));
    }
}
