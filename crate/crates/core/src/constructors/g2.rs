//! `G_2(q) < Sp_6(q)` for even `q`, as automorphisms of the split octonions.
//!
//! Coordinates `[a, u1, u2, u3, v1, v2, v3, b]` with the Zorn product
//! `(a,u,v,b)(a',u',v',b') = (aa'+u·v', au'+b'u-v×v', a'v+bv'+u×u', bb'+v·u')`.
//! The root elements act on the 6-dimensional quotient of the trace-zero
//! part by the identity, ordered `u1, v1, u2, v2, u3, v3`.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec};
use crate::grpcore::GroupSpec;
use crate::linalg::{GroupElement, Mat};
use crate::orders;

use super::classical::additive_basis;

type Root = ((i32, i32), &'static [(usize, usize, i64)]);

/// Root derivations in column form: `(i, j, c)` means `D e_j` has
/// coefficient `c` at `e_i`.  Weights are on the torus
/// `diag(0, h1, h2, h3, -h1, -h2, -h3, 0)`, `h3 = -h1-h2`.
pub const ROOTS: [Root; 12] = [
    ((-2, -1), &[(3, 1, -1), (4, 6, 1)]),
    ((-1, -2), &[(3, 2, -1), (5, 6, 1)]),
    ((-1, -1), &[(0, 6, -1), (3, 0, 1), (3, 7, -1), (4, 2, -1), (5, 1, 1), (7, 6, 1)]),
    ((-1, 0), &[(0, 1, -1), (2, 6, -1), (3, 5, 1), (4, 0, 1), (4, 7, -1), (7, 1, 1)]),
    ((-1, 1), &[(2, 1, -1), (4, 5, 1)]),
    ((0, -1), &[(0, 2, -1), (1, 6, 1), (3, 4, -1), (5, 0, 1), (5, 7, -1), (7, 2, 1)]),
    ((0, 1), &[(0, 5, -1), (2, 0, 1), (2, 7, -1), (4, 3, 1), (6, 1, -1), (7, 5, 1)]),
    ((1, -1), &[(1, 2, -1), (5, 4, 1)]),
    ((1, 0), &[(0, 4, -1), (1, 0, 1), (1, 7, -1), (5, 3, -1), (6, 2, 1), (7, 4, 1)]),
    ((1, 1), &[(0, 3, -1), (1, 5, -1), (2, 4, 1), (6, 0, 1), (6, 7, -1), (7, 3, 1)]),
    ((1, 2), &[(2, 3, -1), (6, 5, 1)]),
    ((2, 1), &[(1, 3, -1), (6, 4, 1)]),
];

/// Simple roots `a` (short) and `b` (long) with their negatives.
const GENERATING_ROOTS: [(i32, i32); 4] = [(1, 0), (-1, 1), (-1, 0), (1, -1)];

/// Positions of `u1, v1, u2, v2, u3, v3` among the octonion coordinates.
const MODULE: [usize; 6] = [1, 4, 2, 5, 3, 6];

type IMat = [[i64; 8]; 8];

fn root_matrix(data: &[(usize, usize, i64)]) -> IMat {
    let mut x = [[0i64; 8]; 8];
    for &(i, j, c) in data {
        x[i][j] = c;
    }
    x
}

fn imul(a: &IMat, b: &IMat) -> IMat {
    let mut c = [[0i64; 8]; 8];
    for i in 0..8 {
        for k in 0..8 {
            if a[i][k] != 0 {
                for j in 0..8 {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

/// `X`, `X²/2`, `X³/6` for a root derivation.
fn divided_powers(x: &IMat) -> [IMat; 3] {
    let x2 = imul(x, x);
    let x3 = imul(&x2, x);
    let mut h2 = x2;
    let mut h3 = x3;
    for i in 0..8 {
        for j in 0..8 {
            assert!(x2[i][j] % 2 == 0 && x3[i][j] % 6 == 0, "divided powers are integral");
            h2[i][j] /= 2;
            h3[i][j] /= 6;
        }
    }
    [*x, h2, h3]
}

/// `x_r(t) = I + tX + t²X²/2 + t³X³/6` on the octonions, column form.
fn root_element_octonion(k: &FieldSpec, root: (i32, i32), t: u32) -> Result<Mat> {
    let data = ROOTS.iter().find(|r| r.0 == root).ok_or_else(|| Error::Params(format!("no root {root:?}")))?.1;
    let [x1, x2, x3] = divided_powers(&root_matrix(data));
    let t2 = k.mul(t, t);
    let t3 = k.mul(t2, t);
    let mut m = Mat::identity(k, 8);
    for i in 0..8 {
        for j in 0..8 {
            let mut e = m.get(i, j);
            for (c, tp) in [(x1[i][j], t), (x2[i][j], t2), (x3[i][j], t3)] {
                e = k.add(e, k.mul(k.from_int(c), tp));
            }
            m.set(i, j, e);
        }
    }
    Ok(m)
}

/// Restricts a column-form octonion automorphism to the 6-dimensional
/// module, in row form.
fn to_module(k: &FieldSpec, m: &Mat) -> Mat {
    let mut r = Mat::zero(k, 6);
    for (row, &src) in MODULE.iter().enumerate() {
        for (col, &dst) in MODULE.iter().enumerate() {
            r.set(row, col, m.get(dst, src));
        }
    }
    r
}

pub fn root_element(k: &FieldSpec, root: (i32, i32), t: u32) -> Result<GroupElement> {
    GroupElement::linear(k, to_module(k, &root_element_octonion(k, root, t)?))
}

/// Generators of `G_2(q)` inside `Sp_6(q)` (standard form on
/// `e_1, f_1, e_2, f_2, e_3, f_3`), `q` even.
pub fn g2_generators(k: &Field) -> Result<GroupSpec> {
    let q = k.order() as u64;
    if q % 2 != 0 {
        return Err(Error::Params(format!("G2({q}) in Sp6 needs even q")));
    }
    let mut gens = Vec::new();
    for &r in &GENERATING_ROOTS {
        for t in additive_basis(k) {
            gens.push(root_element(k, r, t)?);
        }
    }
    let order = orders::g2_order(q);
    let mut g = GroupSpec::new(format!("G2({q})"), k, 6, gens)?.with_provenance(format!("g2:octonion-roots:{q}"));
    g.claimed_order = orders::to_u128(&order);
    Ok(g)
}

/// Zorn product over the integers.
pub fn zorn(x: &[i64; 8], y: &[i64; 8]) -> [i64; 8] {
    let (a, u, v, b) = (x[0], [x[1], x[2], x[3]], [x[4], x[5], x[6]], x[7]);
    let (a2, u2, v2, b2) = (y[0], [y[1], y[2], y[3]], [y[4], y[5], y[6]], y[7]);
    let dot = |p: [i64; 3], q: [i64; 3]| p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
    let cross = |p: [i64; 3], q: [i64; 3]| [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]];
    let vv = cross(v, v2);
    let uu = cross(u, u2);
    let mut out = [0i64; 8];
    out[0] = a * a2 + dot(u, v2);
    for i in 0..3 {
        out[1 + i] = a * u2[i] + b2 * u[i] - vv[i];
        out[4 + i] = a2 * v[i] + b * v2[i] + uu[i];
    }
    out[7] = b * b2 + dot(v, u2);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::classical::{preserves_form, symplectic_gram};
    use crate::gf::field_of_order;
    use crate::grpcore::{build_chain, Certificate, PointKind};

    fn unit(i: usize) -> [i64; 8] {
        let mut e = [0; 8];
        e[i] = 1;
        e
    }

    fn apply_int(x: &IMat, v: &[i64; 8]) -> [i64; 8] {
        let mut out = [0; 8];
        for i in 0..8 {
            out[i] = (0..8).map(|j| x[i][j] * v[j]).sum();
        }
        out
    }

    #[test]
    fn roots_are_derivations_with_the_listed_weights() {
        for (w, data) in ROOTS {
            let x = root_matrix(data);
            for i in 0..8 {
                for j in 0..8 {
                    let (ei, ej) = (unit(i), unit(j));
                    let lhs = apply_int(&x, &zorn(&ei, &ej));
                    let a = zorn(&apply_int(&x, &ei), &ej);
                    let b = zorn(&ei, &apply_int(&x, &ej));
                    let rhs: Vec<i64> = (0..8).map(|t| a[t] + b[t]).collect();
                    assert_eq!(lhs.to_vec(), rhs, "root {w:?}");
                }
            }
            // weight: [H, X] = w(H) X for the torus with h = (1, 0) and (0, 1)
            for h in [(1i64, 0i64), (0, 1)] {
                let d = [0, h.0, h.1, -h.0 - h.1, -h.0, -h.1, h.0 + h.1, 0];
                let wt = w.0 as i64 * h.0 + w.1 as i64 * h.1;
                for &(i, j, _) in data {
                    assert_eq!(d[i] - d[j], wt, "root {w:?}");
                }
            }
        }
    }

    #[test]
    fn root_elements_are_automorphisms_preserving_the_form() {
        for q in [2u64, 4, 8] {
            let k = field_of_order(q).unwrap();
            let j = symplectic_gram(&k, 6);
            for (w, _) in ROOTS {
                for t in additive_basis(&k) {
                    let m = root_element_octonion(&k, w, t).unwrap();
                    // product structure constants mod 2 in the column form
                    for a in 0..8 {
                        for b in 0..8 {
                            let prod = zorn(&unit(a), &unit(b));
                            let ga: Vec<u32> = (0..8).map(|i| m.get(i, a)).collect();
                            let gb: Vec<u32> = (0..8).map(|i| m.get(i, b)).collect();
                            let mut lhs = vec![0u32; 8];
                            for (c, &pc) in prod.iter().enumerate() {
                                let col: Vec<u32> = (0..8).map(|i| m.get(i, c)).collect();
                                for i in 0..8 {
                                    lhs[i] = k.add(lhs[i], k.mul(k.from_int(pc), col[i]));
                                }
                            }
                            let mut rhs = vec![0u32; 8];
                            for x in 0..8 {
                                for y in 0..8 {
                                    let c = k.mul(ga[x], gb[y]);
                                    if c == 0 {
                                        continue;
                                    }
                                    let p = zorn(&unit(x), &unit(y));
                                    for i in 0..8 {
                                        rhs[i] = k.add(rhs[i], k.mul(c, k.from_int(p[i])));
                                    }
                                }
                            }
                            assert_eq!(lhs, rhs, "q={q} root {w:?}");
                        }
                    }
                    assert!(preserves_form(&k, &to_module(&k, &m), &j), "q={q} root {w:?}");
                }
            }
        }
    }

    #[test]
    fn g2_2_has_order_12096_and_derived_6048() {
        let k = field_of_order(2).unwrap();
        let g = g2_generators(&k).unwrap();
        let mut plain = g.clone();
        plain.claimed_order = None;
        let c = build_chain(&plain, PointKind::Vector, &[], 5).unwrap();
        assert_eq!(c.order(), 12096);
        assert_eq!(c.chain.certificate(), Certificate::SchreierVerified);
        assert_eq!(c.derived_subgroup(5).order(), 6048);
    }

    #[test]
    fn g2_4_order() {
        let k = field_of_order(4).unwrap();
        let g = g2_generators(&k).unwrap();
        let c = build_chain(&g, PointKind::Vector, &[], 5).unwrap();
        assert_eq!(c.order(), 251_596_800);
    }
}
