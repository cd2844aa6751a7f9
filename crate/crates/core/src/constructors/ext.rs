//! Extension-field subgroups: a group over GF(q^b) written over GF(q),
//! optionally extended by the Frobenius `ψ` or by `ψγ♯`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf::{field_of_order, Extension, Field};
use crate::grpcore::GroupSpec;
use crate::linalg::{blowup, GroupElement, Mat};
use crate::orders;

use super::classical::{sl_matrices, sp_matrices};
use super::g2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inner {
    SL,
    Sp,
    G2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    None,
    /// The Frobenius `x -> x^p` of GF(q^b).
    Psi,
    /// `ψ` followed by the blown-up duality `γ♯`.
    PsiGamma,
}

/// The blown-up group with its extension data.
pub struct ExtGroup {
    pub group: GroupSpec,
    pub ext: Extension,
    /// The twisting element, when one was adjoined.
    pub twist: Option<GroupElement>,
}

fn inner_matrices(inner: Inner, big: &Field, a: usize) -> Result<Vec<Mat>> {
    Ok(match inner {
        Inner::SL => sl_matrices(big, a),
        Inner::Sp => {
            if a % 2 != 0 {
                return Err(Error::Params(format!("Sp needs even degree, got {a}")));
            }
            sp_matrices(big, a)
        }
        Inner::G2 => {
            if a != 6 {
                return Err(Error::Params("G2 acts in degree 6".into()));
            }
            g2::g2_generators(big)?.gens.into_iter().map(|g| g.mat().clone()).collect()
        }
    })
}

fn inner_order(inner: Inner, a: u64, qb: u64) -> BigUint {
    match inner {
        Inner::SL => orders::sl_order(a, qb),
        Inner::Sp => orders::sp_order(a, qb),
        Inner::G2 => orders::g2_order(qb),
    }
}

/// Elements of `GL_a(q^b)` normalizing the inner group, used to bring the
/// twist into determinant 1: one per nonzero `c`.
fn adjuster(inner: Inner, big: &Field, a: usize, c: u32) -> Mat {
    let mut d = vec![1; a];
    match inner {
        Inner::SL => d[0] = c,
        Inner::Sp => {
            for i in (0..a).step_by(2) {
                d[i] = c;
            }
        }
        Inner::G2 => d = vec![c; a],
    }
    Mat::diag(big, &d)
}

/// Gram matrix `Tr(μ^{i+j})` of the trace form on GF(q^b) over GF(q).
pub fn trace_gram(ext: &Extension) -> Mat {
    let big = ext.ext();
    let mu = big.primitive();
    let b = ext.b;
    let mut t = Mat::zero(ext.sub(), b);
    for i in 0..b {
        for j in 0..b {
            t.set(i, j, ext.trace(big.pow(mu, (i + j) as i64).unwrap()));
        }
    }
    t
}

/// `γ♯`: the duality of GF(q^b)^a composed with the trace, scaled by `c`.
pub fn gamma_sharp(ext: &Extension, a: usize, c: u32) -> Result<GroupElement> {
    let k = ext.sub();
    let b = ext.b;
    let t = trace_gram(ext);
    let mut m = Mat::zero(k, a * b);
    for blk in 0..a {
        for i in 0..b {
            for j in 0..b {
                m.set(blk * b + i, blk * b + j, k.mul(c, t.get(i, j)));
            }
        }
    }
    GroupElement::new(k, m, 0, true)
}

/// `Inner_a(q^b)` written over GF(q), with the requested twist.  The twist
/// is normalized (by a diagonal element normalizing the inner group, and a
/// scalar multiple of `γ♯`) so that its matrix part has determinant 1.
pub fn ext_subgroup(inner: Inner, a: usize, sub: &Field, b: usize, twist: Twist) -> Result<ExtGroup> {
    let q = sub.order() as u64;
    let qb = q.pow(b as u32);
    let big = field_of_order(qb)?;
    let ext = Extension::new(sub, &big)?;
    let mut gens = Vec::new();
    for m in inner_matrices(inner, &big, a)? {
        gens.push(blowup(&ext, &m, 0)?);
    }
    let mut order = inner_order(inner, a as u64, qb);
    let inner_name = match inner {
        Inner::SL => format!("SL_{a}({qb})"),
        Inner::Sp => format!("Sp_{a}({qb})"),
        Inner::G2 => format!("G2({qb})"),
    };
    let mut name = inner_name.clone();
    let mut tw = None;
    if twist != Twist::None {
        let psi0 = blowup(&ext, &Mat::identity(&big, a), 1)?;
        let mut found = None;
        'search: for c in 1..big.order() {
            let adj = blowup(&ext, &adjuster(inner, &big, a, c), 0)?;
            let psi = psi0.compose(sub, &adj)?;
            match twist {
                Twist::Psi => {
                    if psi.mat().det(sub) == 1 {
                        found = Some(psi);
                        break 'search;
                    }
                }
                Twist::PsiGamma => {
                    for s in 1..sub.order() {
                        let e = psi.compose(sub, &gamma_sharp(&ext, a, s)?)?;
                        if e.mat().det(sub) == 1 {
                            found = Some(e);
                            break 'search;
                        }
                    }
                }
                Twist::None => unreachable!(),
            }
        }
        let t = found.ok_or_else(|| Error::Params(format!("no determinant-1 twist for {inner_name} over GF({q})")))?;
        order *= big.degree() as u64;
        name = match twist {
            Twist::Psi => format!("{inner_name}:<psi>"),
            _ => format!("{inner_name}:<psi gamma>"),
        };
        gens.push(t.clone());
        tw = Some(t);
    }
    let n = a * b;
    let mut g = GroupSpec::new(name, sub, n, gens)?.with_provenance(format!("ext:{inner:?}:{a}:{qb}->{q}:{twist:?}"));
    g.claimed_order = orders::to_u128(&order);
    Ok(ExtGroup { group: g, ext, twist: tw })
}
