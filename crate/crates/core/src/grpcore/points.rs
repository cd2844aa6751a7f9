//! Packed point keys for the natural actions and compiled fast maps.
//!
//! Key layout (with `Q = q^n` and `pack` from [`crate::linalg::pack`]):
//!
//! | kind                | key                                    |
//! |---------------------|----------------------------------------|
//! | `Vector`            | `pack(v)`                              |
//! | `VectorOrFunctional`| `pack(x) + side·Q`, side 1 = functional |
//! | `Projective`        | `pack(x) + side·Q`, normalized `x`      |
//! | `Antiflag`          | `pack(v)·Q + pack(w)`, normalized       |
//! | `PointedAntiflag`   | `pack(v)·Q + pack(w)`, `w(v) = 1`       |

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{self, pack, unpack_into, ActionPoint, GroupElement, Mat, RawPoint};

const MAX_N: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointKind {
    Vector,
    VectorOrFunctional,
    Projective,
    Antiflag,
    PointedAntiflag,
}

impl PointKind {
    pub fn parse(s: &str) -> Result<PointKind> {
        Ok(match s {
            "vector" => PointKind::Vector,
            "vector-or-functional" | "pair-side" => PointKind::VectorOrFunctional,
            "projective" => PointKind::Projective,
            "antiflag" => PointKind::Antiflag,
            "pointed-antiflag" => PointKind::PointedAntiflag,
            _ => return Err(Error::Parse(format!("unknown action '{s}'"))),
        })
    }
}

/// A GF(2)-linear map on packed keys, stored as byte-indexed XOR tables.
#[derive(Clone, Debug)]
struct BitTables {
    tables: Vec<[u64; 256]>,
}

impl BitTables {
    fn new(bits: usize, image_of_bit: impl Fn(usize) -> u64) -> BitTables {
        let chunks = bits.div_ceil(8);
        let mut tables = vec![[0u64; 256]; chunks];
        for (c, t) in tables.iter_mut().enumerate() {
            let imgs: Vec<u64> = (0..8).map(|b| if c * 8 + b < bits { image_of_bit(c * 8 + b) } else { 0 }).collect();
            for byte in 1..256usize {
                let low = byte.trailing_zeros() as usize;
                t[byte] = t[byte & (byte - 1)] ^ imgs[low];
            }
        }
        BitTables { tables }
    }

    #[inline]
    fn apply(&self, key: u64) -> u64 {
        let mut out = 0;
        for (c, t) in self.tables.iter().enumerate() {
            out ^= t[((key >> (8 * c)) & 0xff) as usize];
        }
        out
    }
}

#[derive(Clone, Debug)]
enum LinMap {
    Bits(BitTables),
    Generic { mat: Mat, fa: u32 },
}

/// A group element prepared for repeated application to packed keys.
#[derive(Clone, Debug)]
pub struct CompiledElement {
    vec_map: LinMap,
    fun_map: LinMap,
    dual: bool,
}

/// The set of points of one kind in `GF(q)^n`.
#[derive(Clone, Debug)]
pub struct PointSpace {
    pub kind: PointKind,
    pub field: Field,
    pub n: usize,
    qn: u64,
}

impl PointSpace {
    pub fn new(kind: PointKind, field: &Field, n: usize) -> Result<PointSpace> {
        let q = field.order() as f64;
        let bits = match kind {
            PointKind::Antiflag | PointKind::PointedAntiflag => 2.0 * n as f64 * q.log2(),
            _ => n as f64 * q.log2() + 1.0,
        };
        if n == 0 || n > MAX_N || bits > 63.0 {
            return Err(Error::DegreeTooLarge((q.powi(n as i32)) as u64));
        }
        Ok(PointSpace { kind, field: field.clone(), n, qn: (field.order() as u64).pow(n as u32) })
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }
    /// `q^n`.
    pub fn qn(&self) -> u64 {
        self.qn
    }
    /// Upper bound (exclusive) on keys.
    pub fn key_space(&self) -> u64 {
        match self.kind {
            PointKind::Vector => self.qn,
            PointKind::VectorOrFunctional | PointKind::Projective => 2 * self.qn,
            PointKind::Antiflag | PointKind::PointedAntiflag => self.qn * self.qn,
        }
    }

    /// Number of points of this kind.
    pub fn size(&self) -> u64 {
        let q = self.q() as u64;
        let proj = (self.qn - 1) / (q - 1);
        match self.kind {
            PointKind::Vector => self.qn - 1,
            PointKind::VectorOrFunctional => 2 * (self.qn - 1),
            PointKind::Projective => 2 * proj,
            PointKind::Antiflag => proj * self.qn / q,
            PointKind::PointedAntiflag => (self.qn - 1) * self.qn / q,
        }
    }

    pub fn compile(&self, g: &GroupElement) -> Result<CompiledElement> {
        if g.n() != self.n || g.mat().q() != self.q() {
            return Err(Error::Ambient("element does not act on this space".into()));
        }
        if g.dual() && self.kind == PointKind::Vector {
            return Err(Error::DualityOnVector);
        }
        let k = &self.field;
        let make = |m: &Mat| -> LinMap {
            if k.p() == 2 {
                let kbits = k.degree() as usize;
                let bits = self.n * kbits;
                LinMap::Bits(BitTables::new(bits, |b| {
                    let mut v = vec![0u32; self.n];
                    v[b / kbits] = 1 << (b % kbits);
                    let img = linalg::vec_frobenius(k, &m.vec_mul(k, &v), g.fa());
                    pack(&img, self.q())
                }))
            } else {
                LinMap::Generic { mat: m.clone(), fa: g.fa() }
            }
        };
        Ok(CompiledElement { vec_map: make(g.mat()), fun_map: make(g.dual_mat()), dual: g.dual() })
    }

    #[inline]
    fn lin(&self, m: &LinMap, key: u64) -> u64 {
        match m {
            LinMap::Bits(t) => t.apply(key),
            LinMap::Generic { mat, fa } => {
                let k = &self.field;
                let mut v = [0u32; MAX_N];
                unpack_into(key, self.q(), &mut v[..self.n]);
                let mut out = [0u32; MAX_N];
                for (i, &c) in v[..self.n].iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (j, o) in out[..self.n].iter_mut().enumerate() {
                        *o = k.add(*o, k.mul(c, mat.get(i, j)));
                    }
                }
                if *fa != 0 {
                    for o in out[..self.n].iter_mut() {
                        *o = k.frobenius(*o, *fa);
                    }
                }
                pack(&out[..self.n], self.q())
            }
        }
    }

    /// Scales a packed vector so that its lead coordinate is 1; returns the
    /// new key and the scalar used.
    #[inline]
    fn normalize_key(&self, key: u64) -> (u64, u32) {
        if self.q() == 2 {
            return (key, 1);
        }
        let k = &self.field;
        let mut v = [0u32; MAX_N];
        unpack_into(key, self.q(), &mut v[..self.n]);
        let c = linalg::normalize(k, &mut v[..self.n]).expect("nonzero key");
        (pack(&v[..self.n], self.q()), c)
    }

    #[inline]
    fn scale_key(&self, key: u64, c: u32) -> u64 {
        if c == 1 {
            return key;
        }
        let k = &self.field;
        let mut v = [0u32; MAX_N];
        unpack_into(key, self.q(), &mut v[..self.n]);
        for x in v[..self.n].iter_mut() {
            *x = k.mul(c, *x);
        }
        pack(&v[..self.n], self.q())
    }

    /// Image of a key under a compiled element.
    #[inline]
    pub fn apply(&self, g: &CompiledElement, key: u64) -> u64 {
        let qn = self.qn;
        match self.kind {
            PointKind::Vector => self.lin(&g.vec_map, key),
            PointKind::VectorOrFunctional | PointKind::Projective => {
                let side = key / qn;
                let x = key % qn;
                let img = if side == 0 { self.lin(&g.vec_map, x) } else { self.lin(&g.fun_map, x) };
                let img = if self.kind == PointKind::Projective { self.normalize_key(img).0 } else { img };
                img + (side ^ u64::from(g.dual)) * qn
            }
            PointKind::Antiflag | PointKind::PointedAntiflag => {
                let (v, w) = (key / qn, key % qn);
                let (mut v, mut w) = (self.lin(&g.vec_map, v), self.lin(&g.fun_map, w));
                if g.dual {
                    std::mem::swap(&mut v, &mut w);
                }
                if self.kind == PointKind::Antiflag && self.q() != 2 {
                    let (nv, c) = self.normalize_key(v);
                    let ci = self.field.inv(c).unwrap();
                    v = nv;
                    w = self.scale_key(w, ci);
                }
                v * qn + w
            }
        }
    }

    pub fn key_of(&self, x: &ActionPoint) -> Result<u64> {
        let q = self.q();
        if x.dim() != self.n {
            return Err(Error::Dimension("point dimension".into()));
        }
        let k = &self.field;
        let bad = || Error::InvalidPoint(format!("{} point for a {:?} space", x.tag(), self.kind));
        Ok(match (self.kind, x) {
            (PointKind::Vector, ActionPoint::Vector(v)) => pack(v, q),
            (PointKind::VectorOrFunctional, ActionPoint::Vector(v)) => pack(v, q),
            (PointKind::VectorOrFunctional, ActionPoint::Functional(w)) => pack(w, q) + self.qn,
            (PointKind::Projective, ActionPoint::Projective { coords, hyperplane }) => {
                let raw = if *hyperplane { RawPoint::Hyperplane(coords) } else { RawPoint::Projective(coords) };
                let ActionPoint::Projective { coords, .. } = linalg::canonical_point(k, raw)? else { unreachable!() };
                pack(&coords, q) + u64::from(*hyperplane) * self.qn
            }
            (PointKind::Antiflag, ActionPoint::Antiflag { v, w }) => {
                let ActionPoint::Antiflag { v, w } = linalg::canonical_point(k, RawPoint::Antiflag(v, w))? else {
                    unreachable!()
                };
                pack(&v, q) * self.qn + pack(&w, q)
            }
            (PointKind::PointedAntiflag, ActionPoint::PointedAntiflag { v, w }) => {
                let ActionPoint::PointedAntiflag { v, w } = linalg::canonical_point(k, RawPoint::PointedAntiflag(v, w))?
                else {
                    unreachable!()
                };
                pack(&v, q) * self.qn + pack(&w, q)
            }
            _ => return Err(bad()),
        })
    }

    pub fn point_of(&self, key: u64) -> ActionPoint {
        let q = self.q();
        let un = |x: u64| linalg::unpack(x, q, self.n);
        match self.kind {
            PointKind::Vector => ActionPoint::Vector(un(key)),
            PointKind::VectorOrFunctional => {
                if key >= self.qn {
                    ActionPoint::Functional(un(key - self.qn))
                } else {
                    ActionPoint::Vector(un(key))
                }
            }
            PointKind::Projective => {
                ActionPoint::Projective { coords: un(key % self.qn), hyperplane: key >= self.qn }
            }
            PointKind::Antiflag => ActionPoint::Antiflag { v: un(key / self.qn), w: un(key % self.qn) },
            PointKind::PointedAntiflag => ActionPoint::PointedAntiflag { v: un(key / self.qn), w: un(key % self.qn) },
        }
    }

    fn is_normalized(&self, x: u64) -> bool {
        self.normalize_key(x).0 == x
    }

    /// All point keys of this kind, sorted.
    pub fn enumerate(&self) -> Vec<u64> {
        let qn = self.qn;
        let k = &self.field;
        match self.kind {
            PointKind::Vector => (1..qn).collect(),
            PointKind::VectorOrFunctional => (1..qn).chain(qn + 1..2 * qn).collect(),
            PointKind::Projective => {
                let pts: Vec<u64> = (1..qn).filter(|&x| self.is_normalized(x)).collect();
                pts.iter().copied().chain(pts.iter().map(|x| x + qn)).collect()
            }
            PointKind::Antiflag | PointKind::PointedAntiflag => {
                let mut out = Vec::new();
                let mut v = vec![0u32; self.n];
                let mut w = vec![0u32; self.n];
                for pv in 1..qn {
                    if self.kind == PointKind::Antiflag && !self.is_normalized(pv) {
                        continue;
                    }
                    unpack_into(pv, self.q(), &mut v);
                    for pw in 1..qn {
                        unpack_into(pw, self.q(), &mut w);
                        if linalg::pairing(k, &v, &w) == 1 {
                            out.push(pv * qn + pw);
                        }
                    }
                }
                out
            }
        }
    }
}
