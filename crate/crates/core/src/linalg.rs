//! Vectors, matrices and semilinear elements with an optional duality part.
//!
//! Conventions used throughout the crate:
//!
//! * vectors are rows and groups act on the right, `x -> x·g`;
//! * row `i` of a matrix is the image of the basis vector `e_i`;
//! * a [`GroupElement`] `(A, s, d)` maps a vector `x` to `(x·A)^(p^s)` and then,
//!   when `d = 1`, reinterprets the result as a functional;
//! * a functional `w` pairs with `v` as `w(v) = v·wᵀ`, so a linear map `A`
//!   moves functionals by `w -> w·A^{-T}`;
//! * `V` and its dual are identified through the standard dual basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{self, Extension, FieldSpec};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    q: u32,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Packs a vector over GF(q) as `sum c_i q^i`.
#[inline]
pub fn pack(v: &[u32], q: u32) -> u64 {
    v.iter().rev().fold(0u64, |acc, &c| acc * q as u64 + c as u64)
}

#[inline]
pub fn unpack_into(mut key: u64, q: u32, out: &mut [u32]) {
    for c in out.iter_mut() {
        *c = (key % q as u64) as u32;
        key /= q as u64;
    }
}

pub fn unpack(key: u64, q: u32, n: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    unpack_into(key, q, &mut v);
    v
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `w(v) = v·wᵀ`.
pub fn pairing(k: &FieldSpec, v: &[u32], w: &[u32]) -> u32 {
    v.iter().zip(w).fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
}

pub fn scale(k: &FieldSpec, c: u32, v: &[u32]) -> Vec<u32> {
    v.iter().map(|&x| k.mul(c, x)).collect()
}

pub fn vec_add(k: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect()
}

pub fn vec_frobenius(k: &FieldSpec, v: &[u32], s: u32) -> Vec<u32> {
    v.iter().map(|&x| k.frobenius(x, s)).collect()
}

/// Scales a nonzero vector so its first nonzero coordinate is 1; returns the
/// scalar used.
pub fn normalize(k: &FieldSpec, v: &mut [u32]) -> Result<u32> {
    let lead = *v.iter().find(|&&x| x != 0).ok_or_else(|| Error::InvalidPoint("zero vector".into()))?;
    let c = k.inv(lead)?;
    if c != 1 {
        for x in v.iter_mut() {
            *x = k.mul(c, *x);
        }
    }
    Ok(c)
}

impl Mat {
    pub fn zero(k: &FieldSpec, n: usize) -> Mat {
        Mat { n, q: k.order(), data: vec![0; n * n] }
    }
    pub fn identity(k: &FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zero(k, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }
    pub fn from_rows(k: &FieldSpec, rows: &[Vec<u32>]) -> Result<Mat> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix must be square".into()));
        }
        if rows.iter().flatten().any(|&x| x >= k.order()) {
            return Err(Error::Parse("matrix entry out of field range".into()));
        }
        Ok(Mat { n, q: k.order(), data: rows.concat() })
    }
    pub fn scalar(k: &FieldSpec, n: usize, c: u32) -> Mat {
        let mut m = Mat::zero(k, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }
    pub fn diag(k: &FieldSpec, d: &[u32]) -> Mat {
        let mut m = Mat::zero(k, d.len());
        for (i, &x) in d.iter().enumerate() {
            m.data[i * d.len() + i] = x;
        }
        m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.n + j] = x;
    }
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    fn check(&self, k: &FieldSpec, other: &Mat) -> Result<()> {
        if self.n != other.n || self.q != other.q || self.q != k.order() {
            return Err(Error::Ambient(format!(
                "matrix shapes {}x{}/GF({}) and {}x{}/GF({})",
                self.n, self.n, self.q, other.n, other.n, other.q
            )));
        }
        Ok(())
    }

    pub fn mul(&self, k: &FieldSpec, b: &Mat) -> Result<Mat> {
        self.check(k, b)?;
        let n = self.n;
        let mut out = Mat::zero(k, n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.data[idx] = k.add(out.data[idx], k.mul(a, b.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    /// `v·A`.
    pub fn vec_mul(&self, k: &FieldSpec, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = k.add(*o, k.mul(c, self.get(i, j)));
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[j * self.n + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn frobenius(&self, k: &FieldSpec, s: u32) -> Mat {
        Mat { n: self.n, q: self.q, data: self.data.iter().map(|&x| k.frobenius(x, s)).collect() }
    }

    pub fn map_entries(&self, q: u32, f: impl Fn(u32) -> u32) -> Mat {
        Mat { n: self.n, q, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// Reduced row echelon data: returns (rank, determinant, inverse if full rank).
    fn gauss(&self, k: &FieldSpec) -> (usize, u32, Option<Mat>) {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Mat::identity(k, n).data;
        let mut det = 1u32;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.swap(piv * n + j, rank * n + j);
                    inv.swap(piv * n + j, rank * n + j);
                }
                det = k.neg(det);
            }
            let pv = a[rank * n + col];
            det = k.mul(det, pv);
            let pinv = k.inv(pv).expect("pivot is nonzero");
            for j in 0..n {
                a[rank * n + j] = k.mul(a[rank * n + j], pinv);
                inv[rank * n + j] = k.mul(inv[rank * n + j], pinv);
            }
            for r in 0..n {
                let c = a[r * n + col];
                if r == rank || c == 0 {
                    continue;
                }
                let c = k.neg(c);
                for j in 0..n {
                    a[r * n + j] = k.add(a[r * n + j], k.mul(c, a[rank * n + j]));
                    inv[r * n + j] = k.add(inv[r * n + j], k.mul(c, inv[rank * n + j]));
                }
            }
            rank += 1;
        }
        let full = rank == n;
        (rank, if full { det } else { 0 }, full.then(|| Mat { n, q: self.q, data: inv }))
    }

    pub fn det(&self, k: &FieldSpec) -> u32 {
        self.gauss(k).1
    }
    pub fn rank(&self, k: &FieldSpec) -> usize {
        self.gauss(k).0
    }
    pub fn inverse(&self, k: &FieldSpec) -> Result<Mat> {
        self.gauss(k).2.ok_or(Error::Singular)
    }
    /// `A^{-T}`, the action of `A` on functionals.
    pub fn inverse_transpose(&self, k: &FieldSpec) -> Result<Mat> {
        Ok(self.inverse(k)?.transpose())
    }

    /// Text asset form: header `n q fa dual` followed by `n` rows.
    pub fn to_asset(&self, fa: u32, dual: bool) -> String {
        let mut s = format!("{} {} {} {}\n", self.n, self.q, fa, u8::from(dual));
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Null space of the map `x -> x·A` for a rectangular `rows x cols` matrix
/// stored row-major: returns a basis of `{x : x·A = 0}`.
pub fn left_kernel(k: &FieldSpec, a: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let r = a.len();
    if r == 0 {
        return vec![];
    }
    let c = a[0].len();
    // row reduce [A | I]
    let mut m: Vec<Vec<u32>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut x = row.clone();
            x.extend(unit_vector(r, i));
            x
        })
        .collect();
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| m[i][col] != 0) else { continue };
        m.swap(piv, rank);
        let pinv = k.inv(m[rank][col]).unwrap();
        m[rank] = scale(k, pinv, &m[rank]);
        for i in 0..r {
            if i != rank && m[i][col] != 0 {
                let f = k.neg(m[i][col]);
                let pr = scale(k, f, &m[rank]);
                m[i] = vec_add(k, &m[i], &pr);
            }
        }
        rank += 1;
    }
    m[rank..].iter().map(|row| row[c..].to_vec()).collect()
}

/// Row-reduces a list of vectors, returning an echelon basis of their span.
pub fn span_basis(k: &FieldSpec, vs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    for v in vs {
        if let Some(r) = reduce_against(k, &basis, v) {
            basis.push(r);
        }
    }
    basis
}

/// Reduces `v` modulo an echelon basis built by [`span_basis`]; returns the
/// normalized remainder if it is nonzero.
pub fn reduce_against(k: &FieldSpec, basis: &[Vec<u32>], v: &[u32]) -> Option<Vec<u32>> {
    let mut r = v.to_vec();
    for b in basis {
        let lead = b.iter().position(|&x| x != 0).unwrap();
        if r[lead] != 0 {
            let f = k.neg(r[lead]);
            r = vec_add(k, &r, &scale(k, f, b));
        }
    }
    normalize(k, &mut r).ok()?;
    Some(r)
}

/// A semilinear map with optional duality: see the module docs for the action.
#[derive(Clone)]
pub struct GroupElement {
    mat: Mat,
    inv_t: Mat,
    fa: u32,
    dual: bool,
}

impl PartialEq for GroupElement {
    fn eq(&self, o: &Self) -> bool {
        self.mat == o.mat && self.fa == o.fa && self.dual == o.dual
    }
}
impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.mat.hash(h);
        self.fa.hash(h);
        self.dual.hash(h);
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, fa={}, dual={})", self.mat, self.fa, u8::from(self.dual))
    }
}

impl GroupElement {
    pub fn new(k: &FieldSpec, mat: Mat, fa: u32, dual: bool) -> Result<GroupElement> {
        if mat.q != k.order() {
            return Err(Error::Ambient("matrix over the wrong field".into()));
        }
        let inv_t = mat.inverse_transpose(k)?;
        Ok(GroupElement { mat, inv_t, fa: fa % k.degree(), dual })
    }
    pub fn linear(k: &FieldSpec, mat: Mat) -> Result<GroupElement> {
        GroupElement::new(k, mat, 0, false)
    }
    pub fn identity(k: &FieldSpec, n: usize) -> GroupElement {
        let m = Mat::identity(k, n);
        GroupElement { inv_t: m.clone(), mat: m, fa: 0, dual: false }
    }
    pub fn mat(&self) -> &Mat {
        &self.mat
    }
    /// The matrix acting on functionals.
    pub fn dual_mat(&self) -> &Mat {
        &self.inv_t
    }
    pub fn fa(&self) -> u32 {
        self.fa
    }
    pub fn dual(&self) -> bool {
        self.dual
    }
    pub fn n(&self) -> usize {
        self.mat.n
    }
    pub fn is_identity(&self) -> bool {
        self.fa == 0 && !self.dual && self.mat.is_identity()
    }
    pub fn is_linear(&self) -> bool {
        self.fa == 0 && !self.dual
    }

    /// `g∘h`: apply `self` first, then `h`.
    pub fn compose(&self, k: &FieldSpec, h: &GroupElement) -> Result<GroupElement> {
        if self.n() != h.n() || self.mat.q != h.mat.q {
            return Err(Error::Ambient("composition across ambients".into()));
        }
        let f = k.degree();
        let back = (f - self.fa % f) % f;
        let (bm, bt) = if self.dual { (&h.inv_t, &h.mat) } else { (&h.mat, &h.inv_t) };
        let mat = self.mat.mul(k, &bm.frobenius(k, back))?;
        let inv_t = self.inv_t.mul(k, &bt.frobenius(k, back))?;
        Ok(GroupElement { mat, inv_t, fa: (self.fa + h.fa) % f, dual: self.dual ^ h.dual })
    }

    pub fn inverse(&self, k: &FieldSpec) -> GroupElement {
        let f = k.degree();
        let s = self.fa;
        // A^{-1} = (A^{-T})^T
        let ainv = self.inv_t.transpose().frobenius(k, s);
        let ainv_t = self.mat.transpose().frobenius(k, s);
        let (mat, inv_t) = if self.dual { (ainv_t, ainv) } else { (ainv, ainv_t) };
        GroupElement { mat, inv_t, fa: (f - s % f) % f, dual: self.dual }
    }

    pub fn pow(&self, k: &FieldSpec, e: u64) -> GroupElement {
        let mut result = GroupElement::identity(k, self.n());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(k, &base).unwrap();
            }
            base = base.compose(k, &base).unwrap();
            e >>= 1;
        }
        result
    }

    /// `h^{-1} g h`.
    pub fn conjugate(&self, k: &FieldSpec, h: &GroupElement) -> GroupElement {
        h.inverse(k).compose(k, self).unwrap().compose(k, h).unwrap()
    }

    /// Element order, searched up to `cap`.
    pub fn order(&self, k: &FieldSpec, cap: u64) -> Option<u64> {
        let mut x = self.clone();
        for i in 1..=cap {
            if x.is_identity() {
                return Some(i);
            }
            x = x.compose(k, self).unwrap();
        }
        None
    }

    /// Image of a vector; the flag reports whether the image is a functional.
    pub fn map_vector(&self, k: &FieldSpec, v: &[u32]) -> (Vec<u32>, bool) {
        let img = vec_frobenius(k, &self.mat.vec_mul(k, v), self.fa);
        (img, self.dual)
    }
    /// Image of a functional; the flag reports whether the image is a vector.
    pub fn map_functional(&self, k: &FieldSpec, w: &[u32]) -> (Vec<u32>, bool) {
        let img = vec_frobenius(k, &self.inv_t.vec_mul(k, w), self.fa);
        (img, self.dual)
    }
    /// Action on vectors, refusing duality.
    pub fn apply_vector(&self, k: &FieldSpec, v: &[u32]) -> Result<Vec<u32>> {
        if self.dual {
            return Err(Error::DualityOnVector);
        }
        Ok(self.map_vector(k, v).0)
    }

    /// Twists the matrix by the field automorphism: the element `φ^{-s} g φ^s`.
    pub fn frobenius_twist(&self, k: &FieldSpec, s: u32) -> GroupElement {
        GroupElement {
            mat: self.mat.frobenius(k, s),
            inv_t: self.inv_t.frobenius(k, s),
            fa: self.fa,
            dual: self.dual,
        }
    }

    pub fn to_asset(&self) -> String {
        self.mat.to_asset(self.fa, self.dual)
    }

    pub fn from_asset(text: &str) -> Result<GroupElement> {
        let mut nums = text.split_whitespace().map(|t| t.parse::<u64>().map_err(|e| Error::Parse(e.to_string())));
        let mut next = || nums.next().unwrap_or_else(|| Err(Error::Parse("truncated asset".into())));
        let n = next()? as usize;
        let q = next()?;
        let fa = next()? as u32;
        let dual = next()? != 0;
        let k = gf::field_of_order(q)?;
        let mut rows = vec![vec![0u32; n]; n];
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                *x = next()? as u32;
            }
        }
        GroupElement::new(&k, Mat::from_rows(&k, &rows)?, fa, dual)
    }
}

/// `sl_compose` on checked operands.
pub fn sl_compose(k: &FieldSpec, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    g.compose(k, h)
}

/// A point of one of the natural actions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ActionPoint {
    /// A nonzero vector.
    Vector(Vec<u32>),
    /// A nonzero functional.
    Functional(Vec<u32>),
    /// A 1-space (`hyperplane = false`) or the kernel of a functional.
    Projective { coords: Vec<u32>, hyperplane: bool },
    /// `(<v>, ker w)` modulo `(v, w) ~ (cv, c^{-1}w)`, normalized so the lead
    /// coordinate of `v` is 1 and `w(v) = 1`.
    Antiflag { v: Vec<u32>, w: Vec<u32> },
    /// `(v, ker w)` with `w` scaled so that `w(v) = 1`.
    PointedAntiflag { v: Vec<u32>, w: Vec<u32> },
}

impl ActionPoint {
    pub fn dim(&self) -> usize {
        match self {
            ActionPoint::Vector(v) | ActionPoint::Functional(v) => v.len(),
            ActionPoint::Projective { coords, .. } => coords.len(),
            ActionPoint::Antiflag { v, .. } | ActionPoint::PointedAntiflag { v, .. } => v.len(),
        }
    }
    pub fn tag(&self) -> &'static str {
        match self {
            ActionPoint::Vector(_) => "vector",
            ActionPoint::Functional(_) => "functional",
            ActionPoint::Projective { .. } => "projective",
            ActionPoint::Antiflag { .. } => "antiflag",
            ActionPoint::PointedAntiflag { .. } => "pointed-antiflag",
        }
    }
}

/// Raw input to [`canonical_point`].
pub enum RawPoint<'a> {
    Vector(&'a [u32]),
    Projective(&'a [u32]),
    Hyperplane(&'a [u32]),
    Antiflag(&'a [u32], &'a [u32]),
    PointedAntiflag(&'a [u32], &'a [u32]),
}

pub fn canonical_point(k: &FieldSpec, raw: RawPoint<'_>) -> Result<ActionPoint> {
    let nonzero = |v: &[u32]| -> Result<()> {
        if v.iter().all(|&x| x == 0) {
            return Err(Error::InvalidPoint("zero vector".into()));
        }
        if v.iter().any(|&x| x >= k.order()) {
            return Err(Error::InvalidPoint("coordinate outside the field".into()));
        }
        Ok(())
    };
    match raw {
        RawPoint::Vector(v) => {
            nonzero(v)?;
            Ok(ActionPoint::Vector(v.to_vec()))
        }
        RawPoint::Projective(v) | RawPoint::Hyperplane(v) => {
            let hyperplane = matches!(raw, RawPoint::Hyperplane(_));
            let mut c = v.to_vec();
            normalize(k, &mut c)?;
            Ok(ActionPoint::Projective { coords: c, hyperplane })
        }
        RawPoint::Antiflag(v, w) | RawPoint::PointedAntiflag(v, w) => {
            nonzero(v)?;
            nonzero(w)?;
            if v.len() != w.len() {
                return Err(Error::Dimension("vector and functional lengths differ".into()));
            }
            let pointed = matches!(raw, RawPoint::PointedAntiflag(..));
            let mut v = v.to_vec();
            if !pointed {
                normalize(k, &mut v)?;
            }
            let wv = pairing(k, &v, w);
            if wv == 0 {
                return Err(Error::InvalidPoint("vector lies in the hyperplane".into()));
            }
            let w = scale(k, k.inv(wv)?, w);
            Ok(if pointed { ActionPoint::PointedAntiflag { v, w } } else { ActionPoint::Antiflag { v, w } })
        }
    }
}

/// Right action of a group element on a point.
pub fn sl_apply(k: &FieldSpec, g: &GroupElement, x: &ActionPoint) -> Result<ActionPoint> {
    if x.dim() != g.n() {
        return Err(Error::Dimension(format!("point of dimension {} for degree {}", x.dim(), g.n())));
    }
    Ok(match x {
        ActionPoint::Vector(v) => ActionPoint::Vector(g.apply_vector(k, v)?),
        ActionPoint::Functional(w) => {
            if g.dual {
                return Err(Error::DualityOnVector);
            }
            ActionPoint::Functional(g.map_functional(k, w).0)
        }
        ActionPoint::Projective { coords, hyperplane } => {
            let (img, swap) = if *hyperplane { g.map_functional(k, coords) } else { g.map_vector(k, coords) };
            let raw = if *hyperplane != swap { RawPoint::Hyperplane(&img) } else { RawPoint::Projective(&img) };
            canonical_point(k, raw)?
        }
        ActionPoint::Antiflag { v, w } | ActionPoint::PointedAntiflag { v, w } => {
            let (iv, _) = g.map_vector(k, v);
            let (iw, _) = g.map_functional(k, w);
            let (nv, nw) = if g.dual { (iw, iv) } else { (iv, iw) };
            if matches!(x, ActionPoint::Antiflag { .. }) {
                canonical_point(k, RawPoint::Antiflag(&nv, &nw))?
            } else {
                canonical_point(k, RawPoint::PointedAntiflag(&nv, &nw))?
            }
        }
    })
}

/// Rewrites the `s`-twisted map `x -> (x·M)^(p^s)` of `GF(q^b)^a` as a
/// semilinear element of `GL_{ab}(q)`.  The GF(q)-basis is
/// `v_1, μv_1, ..., μ^{b-1}v_1, v_2, ...` with `μ` the generator of GF(q^b).
pub fn blowup(ext: &Extension, m: &Mat, s: u32) -> Result<GroupElement> {
    let big = ext.ext();
    let small = ext.sub();
    if m.q != big.order() {
        return Err(Error::Ambient("blowup input is not over the extension field".into()));
    }
    let a = m.n;
    let b = ext.b;
    let n = a * b;
    let mu = big.primitive();
    let fa = s % small.degree();
    let back = (small.degree() - fa) % small.degree();
    let mut rows = Vec::with_capacity(n);
    for j in 0..a {
        for kk in 0..b {
            let c = big.pow(mu, kk as i64)?;
            let img: Vec<u32> = m.row(j).iter().map(|&x| big.frobenius(big.mul(c, x), s)).collect();
            let mut row = Vec::with_capacity(n);
            for &y in &img {
                row.extend(ext.coords(y).iter().map(|&t| small.frobenius(t, back)));
            }
            rows.push(row);
        }
    }
    GroupElement::new(small, Mat::from_rows(small, &rows)?, fa, false)
}

/// Coordinates over GF(q) of a vector over GF(q^b), in the blowup basis.
pub fn blow_vector(ext: &Extension, v: &[u32]) -> Vec<u32> {
    v.iter().flat_map(|&x| ext.coords(x).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_invertible(k: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Mat {
        loop {
            let rows: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..k.order())).collect()).collect();
            let m = Mat::from_rows(k, &rows).unwrap();
            if m.det(k) != 0 {
                return m;
            }
        }
    }

    fn random_element(k: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> GroupElement {
        let m = random_invertible(k, n, rng);
        GroupElement::new(k, m, rng.gen_range(0..k.degree()), rng.gen_bool(0.5)).unwrap()
    }

    fn random_vec(k: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
        loop {
            let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..k.order())).collect();
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    }

    #[test]
    fn basic_matrix_ops() {
        let k = make_field(2, 2).unwrap();
        let l = k.primitive();
        let i = Mat::identity(&k, 2);
        assert_eq!(i.det(&k), 1);
        let d = Mat::diag(&k, &[l, k.mul(l, l)]);
        assert_eq!(d.det(&k), 1);
        assert_eq!(i.mul(&k, &d).unwrap(), d);
        let inv = d.inverse(&k).unwrap();
        assert!(d.mul(&k, &inv).unwrap().is_identity());
        let z = Mat::zero(&k, 2);
        assert_eq!(z.inverse(&k), Err(Error::Singular));
    }

    #[test]
    fn inverse_and_det_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, f) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let k = make_field(p, f).unwrap();
            for _ in 0..50 {
                let a = random_invertible(&k, 4, &mut rng);
                let b = random_invertible(&k, 4, &mut rng);
                let ab = a.mul(&k, &b).unwrap();
                assert_eq!(ab.det(&k), k.mul(a.det(&k), b.det(&k)));
                assert!(a.mul(&k, &a.inverse(&k).unwrap()).unwrap().is_identity());
                // inverse-transpose is multiplicative in the same order
                let lhs = ab.inverse_transpose(&k).unwrap();
                let rhs = a.inverse_transpose(&k).unwrap().mul(&k, &b.inverse_transpose(&k).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn compose_associative_and_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, f, n) in [(2, 2, 3), (2, 4, 2), (3, 2, 3), (2, 1, 4)] {
            let k = make_field(p, f).unwrap();
            for _ in 0..300 {
                let g = random_element(&k, n, &mut rng);
                let h = random_element(&k, n, &mut rng);
                let x = random_element(&k, n, &mut rng);
                let l = g.compose(&k, &h).unwrap().compose(&k, &x).unwrap();
                let r = g.compose(&k, &h.compose(&k, &x).unwrap()).unwrap();
                assert_eq!(l, r);
                assert!(g.compose(&k, &g.inverse(&k)).unwrap().is_identity());
                assert!(g.inverse(&k).compose(&k, &g).unwrap().is_identity());
                let v = random_vec(&k, n, &mut rng);
                let w = random_vec(&k, n, &mut rng);
                let gh = g.compose(&k, &h).unwrap();
                let points = [
                    canonical_point(&k, RawPoint::Projective(&v)).unwrap(),
                    canonical_point(&k, RawPoint::Hyperplane(&w)).unwrap(),
                ];
                for pt in points {
                    let a = sl_apply(&k, &gh, &pt).unwrap();
                    let b = sl_apply(&k, &h, &sl_apply(&k, &g, &pt).unwrap()).unwrap();
                    assert_eq!(a, b);
                }
                if pairing(&k, &v, &w) != 0 {
                    for pt in [
                        canonical_point(&k, RawPoint::Antiflag(&v, &w)).unwrap(),
                        canonical_point(&k, RawPoint::PointedAntiflag(&v, &w)).unwrap(),
                    ] {
                        let a = sl_apply(&k, &gh, &pt).unwrap();
                        let b = sl_apply(&k, &h, &sl_apply(&k, &g, &pt).unwrap()).unwrap();
                        assert_eq!(a, b);
                    }
                }
                if !g.dual() && !h.dual() {
                    let pt = ActionPoint::Vector(v.clone());
                    let a = sl_apply(&k, &gh, &pt).unwrap();
                    let b = sl_apply(&k, &h, &sl_apply(&k, &g, &pt).unwrap()).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn duality_and_frobenius_orders() {
        let k = make_field(2, 2).unwrap();
        let gamma = GroupElement::new(&k, Mat::identity(&k, 2), 0, true).unwrap();
        assert!(gamma.compose(&k, &gamma).unwrap().is_identity());
        let phg = GroupElement::new(&k, Mat::identity(&k, 2), 1, true).unwrap();
        assert_eq!(phg.order(&k, 100), Some(2));
        let k16 = make_field(2, 4).unwrap();
        let phg = GroupElement::new(&k16, Mat::identity(&k16, 2), 1, true).unwrap();
        assert_eq!(phg.order(&k16, 100), Some(4));
        let a = Mat::from_rows(&k, &[vec![1, 2], vec![0, 1]]).unwrap();
        let b = Mat::from_rows(&k, &[vec![1, 0], vec![3, 1]]).unwrap();
        let ab = GroupElement::linear(&k, a.mul(&k, &b).unwrap()).unwrap();
        let c = GroupElement::linear(&k, a).unwrap().compose(&k, &GroupElement::linear(&k, b).unwrap()).unwrap();
        assert_eq!(ab, c);
        assert_eq!(gamma.apply_vector(&k, &[1, 0]), Err(Error::DualityOnVector));
    }

    #[test]
    fn transvection_and_gamma_antiflag() {
        let k = make_field(2, 1).unwrap();
        let t = GroupElement::linear(&k, Mat::from_rows(&k, &[vec![1, 0], vec![1, 1]]).unwrap()).unwrap();
        assert_eq!(t.apply_vector(&k, &[0, 1]).unwrap(), vec![1, 1]);
        let gamma = GroupElement::new(&k, Mat::identity(&k, 4), 0, true).unwrap();
        let e1 = unit_vector(4, 0);
        let af = canonical_point(&k, RawPoint::Antiflag(&e1, &e1)).unwrap();
        assert_eq!(sl_apply(&k, &gamma, &af).unwrap(), af);
        // brute force: the basis-dual antiflags are exactly the gamma-fixed (e_i, e_i*) ones among standard pairs
        for i in 0..4 {
            for j in 0..4 {
                let (ei, ej) = (unit_vector(4, i), unit_vector(4, j));
                if let Ok(p) = canonical_point(&k, RawPoint::Antiflag(&ei, &ej)) {
                    assert_eq!(sl_apply(&k, &gamma, &p).unwrap() == p, i == j);
                }
            }
        }
    }

    #[test]
    fn canonical_forms() {
        let k = make_field(2, 2).unwrap();
        let l = k.primitive();
        let l2 = k.mul(l, l);
        let p = canonical_point(&k, RawPoint::Projective(&[l, 1])).unwrap();
        assert_eq!(p, ActionPoint::Projective { coords: vec![1, l2], hyperplane: false });
        let af = canonical_point(&k, RawPoint::Antiflag(&[1, 0], &[l, 0])).unwrap();
        assert_eq!(af, ActionPoint::Antiflag { v: vec![1, 0], w: vec![1, 0] });
        assert!(canonical_point(&k, RawPoint::Antiflag(&[1, 0], &[0, 1])).is_err());
        assert!(canonical_point(&k, RawPoint::Projective(&[0, 0])).is_err());
        let k9 = make_field(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let v = random_vec(&k9, 3, &mut rng);
            let w = random_vec(&k9, 3, &mut rng);
            if pairing(&k9, &v, &w) == 0 {
                continue;
            }
            let base = canonical_point(&k9, RawPoint::Antiflag(&v, &w)).unwrap();
            let pbase = canonical_point(&k9, RawPoint::Projective(&v)).unwrap();
            for c in 1..9 {
                let ci = k9.inv(c).unwrap();
                let cv = scale(&k9, c, &v);
                let cw = scale(&k9, ci, &w);
                assert_eq!(canonical_point(&k9, RawPoint::Antiflag(&cv, &cw)).unwrap(), base);
                assert_eq!(canonical_point(&k9, RawPoint::Projective(&cv)).unwrap(), pbase);
            }
        }
    }

    #[test]
    fn blowup_examples() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let ext = Extension::new(&f2, &f4).unwrap();
        let lam = Mat::from_rows(&f4, &[vec![f4.primitive()]]).unwrap();
        let b = blowup(&ext, &lam, 0).unwrap();
        // row images: 1 -> λ, λ -> λ² = 1 + λ
        assert_eq!(b.mat().rows(), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(b.mat().det(&f2), 1);
        assert!(blowup(&ext, &Mat::identity(&f4, 2), 0).unwrap().is_identity());
        let psi = blowup(&ext, &Mat::identity(&f4, 1), 1).unwrap();
        assert_eq!(psi.mat().rows(), vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(psi.fa(), 0);
        assert_eq!(psi.order(&f2, 10), Some(2));
        let f16 = make_field(2, 4).unwrap();
        let ext = Extension::new(&f4, &f16).unwrap();
        let psi = blowup(&ext, &Mat::identity(&f16, 1), 2).unwrap();
        assert_eq!(psi.fa(), 0);
        let psi = blowup(&ext, &Mat::identity(&f16, 1), 1).unwrap();
        assert_eq!(psi.fa(), 1);
        assert_eq!(psi.order(&f4, 10), Some(4));
    }

    #[test]
    fn blowup_is_multiplicative_and_norm_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (sp, sf, ef) in [(2u64, 1u32, 2u32), (2, 2, 4), (3, 1, 2)] {
            let small = make_field(sp, sf).unwrap();
            let big = make_field(sp, ef).unwrap();
            let ext = Extension::new(&small, &big).unwrap();
            for x in 1..big.order() {
                let m = Mat::from_rows(&big, &[vec![x]]).unwrap();
                let b = blowup(&ext, &m, 0).unwrap();
                assert_eq!(b.mat().det(&small), ext.norm(x));
            }
            for _ in 0..30 {
                let m = random_invertible(&big, 2, &mut rng);
                let n = random_invertible(&big, 2, &mut rng);
                let lhs = blowup(&ext, &m.mul(&big, &n).unwrap(), 0).unwrap();
                let rhs = blowup(&ext, &m, 0).unwrap().compose(&small, &blowup(&ext, &n, 0).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                // the blown map agrees with the original on vectors
                for s in 0..ef {
                    let g = blowup(&ext, &m, s).unwrap();
                    let v = random_vec(&big, 2, &mut rng);
                    let img: Vec<u32> = m.vec_mul(&big, &v).iter().map(|&y| big.frobenius(y, s)).collect();
                    assert_eq!(g.map_vector(&small, &blow_vector(&ext, &v)).0, blow_vector(&ext, &img));
                }
            }
        }
    }

    #[test]
    fn asset_round_trip() {
        let k = make_field(2, 2).unwrap();
        let g = GroupElement::new(&k, Mat::from_rows(&k, &[vec![1, 2], vec![0, 3]]).unwrap(), 1, true).unwrap();
        assert_eq!(GroupElement::from_asset(&g.to_asset()).unwrap(), g);
        assert!(GroupElement::from_asset("2 4 0").is_err());
    }

    #[test]
    fn kernels_and_spans() {
        let k = make_field(3, 1).unwrap();
        let a = vec![vec![1, 2], vec![2, 1], vec![1, 1]];
        let ker = left_kernel(&k, &a);
        assert_eq!(ker.len(), 1);
        let x = &ker[0];
        for j in 0..2 {
            let s = (0..3).fold(0, |acc, i| k.add(acc, k.mul(x[i], a[i][j])));
            assert_eq!(s, 0);
        }
        assert_eq!(span_basis(&k, &a).len(), 2);
        assert_eq!(pack(&[1, 2], 3), 7);
        assert_eq!(unpack(7, 3, 2), vec![1, 2]);
    }
}
