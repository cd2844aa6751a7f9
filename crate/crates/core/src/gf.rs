//! Arithmetic in small finite fields GF(p^f).
//!
//! An element is stored as an integer index in `0..p^f` whose base-`p` digits
//! are the coefficients of its polynomial representative (lowest degree
//! first).  That index is also the text encoding used by asset files.
//!
//! Every field is built from a fixed monic primitive modulus: Conway
//! polynomials for the sizes listed in [`CONWAY`], and the lexicographically
//! smallest primitive polynomial otherwise.  The class of `x` is the
//! distinguished generator of the multiplicative group.  Multiplication and
//! inversion go through log/antilog tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// Conway polynomials, coefficients lowest degree first (monic).
pub const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 1, &[9, 1]),
    (13, 1, &[11, 1]),
];

#[derive(Debug)]
enum Adder {
    Xor,
    Table(Vec<u16>),
    Digits,
}

/// Immutable descriptor of GF(p^f) with its arithmetic tables.
pub struct FieldSpec {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    adder: Adder,
}

/// Shared handle to a field; fields are interned so equal parameters give
/// pointer-equal handles.
pub type Field = Arc<FieldSpec>;

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.f)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f
    }
}
impl Eq for FieldSpec {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiply the polynomial with digit vector `rep` by `x` modulo `modulus`.
fn mul_by_x(rep: u32, p: u32, f: u32, modulus: &[u32]) -> u32 {
    let mut digits = to_digits(rep, p, f);
    let top = digits[f as usize - 1];
    for i in (1..f as usize).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    for (i, d) in digits.iter_mut().enumerate() {
        let sub = (top * modulus[i]) % p;
        *d = (*d + p - sub) % p;
    }
    from_digits(&digits, p)
}

fn to_digits(mut rep: u32, p: u32, f: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(f as usize);
    for _ in 0..f {
        out.push(rep % p);
        rep /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Returns the exp table if the class of `x` generates the multiplicative group.
fn primitive_cycle(p: u32, f: u32, modulus: &[u32]) -> Option<Vec<u32>> {
    let q = p.pow(f);
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut cur = 1u32;
    for i in 0..q - 1 {
        if i > 0 && cur == 1 {
            return None;
        }
        if cur == 0 {
            return None;
        }
        exp.push(cur);
        cur = mul_by_x(cur, p, f, modulus);
    }
    (cur == 1).then_some(exp)
}

fn search_modulus(p: u32, f: u32) -> Vec<u32> {
    let q = p.pow(f);
    for low in 0..q {
        let mut m = to_digits(low, p, f);
        m.push(1);
        if primitive_cycle(p, f, &m).is_some() {
            return m;
        }
    }
    unreachable!("a primitive polynomial always exists")
}

impl FieldSpec {
    fn build(p: u32, f: u32) -> Result<FieldSpec> {
        let modulus = CONWAY
            .iter()
            .find(|(cp, cf, _)| *cp == p && *cf == f)
            .map(|(_, _, m)| m.to_vec())
            .unwrap_or_else(|| search_modulus(p, f));
        FieldSpec::with_modulus(p, f, modulus)
    }

    fn with_modulus(p: u32, f: u32, modulus: Vec<u32>) -> Result<FieldSpec> {
        let q = p.pow(f);
        let exp1 = primitive_cycle(p, f, &modulus).ok_or_else(|| {
            Error::Params(format!("modulus {modulus:?} is not primitive over GF({p})"))
        })?;
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp1.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let mut exp = exp1.clone();
        exp.extend_from_slice(&exp1);
        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = to_digits(a, p, f).iter().map(|&x| (p - x) % p).collect();
                from_digits(&d, p)
            })
            .collect();
        let adder = if p == 2 {
            Adder::Xor
        } else if q <= 1024 {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let da = to_digits(a, p, f);
                for b in 0..q {
                    let db = to_digits(b, p, f);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = from_digits(&s, p) as u16;
                }
            }
            Adder::Table(t)
        } else {
            Adder::Digits
        };
        let primitive = exp[1 % exp1.len().max(1)];
        Ok(FieldSpec { p, f, q, modulus, primitive, exp, log, neg, adder })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.f
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The fixed generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        if self.q == 2 {
            1
        } else {
            self.primitive
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.adder {
            Adder::Xor => a ^ b,
            Adder::Table(t) => t[(a * self.q + b) as usize] as u32,
            Adder::Digits => {
                let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
                for _ in 0..self.f {
                    out += ((a % self.p + b % self.p) % self.p) * scale;
                    a /= self.p;
                    b /= self.p;
                    scale *= self.p;
                }
                out
            }
        }
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }
    #[inline]
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let m = self.q - 1;
        Ok(self.exp[((m - self.log[a as usize]) % m) as usize])
    }
    /// `a^e`; negative exponents go through the inverse.
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(Error::ZeroInverse),
            };
        }
        let m = (self.q - 1) as i64;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(m)) % m;
        Ok(self.exp[l as usize])
    }
    /// Discrete log to the base of [`FieldSpec::primitive`].
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }
    /// `primitive^i`.
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }
    /// `a^(p^s)`.
    pub fn frobenius(&self, a: u32, s: u32) -> u32 {
        if a == 0 || self.f == 1 {
            return a;
        }
        let m = (self.q - 1) as u64;
        let mut k = 1u64;
        for _ in 0..(s % self.f) {
            k = k * self.p as u64 % m;
        }
        self.exp[((self.log[a as usize] as u64 * k) % m) as usize]
    }
    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u32) -> u32 {
        let m = self.q - 1;
        let l = self.log[a as usize];
        m / num_integer::gcd(l, m)
    }
    /// Element of the prime subfield with the given integer value.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }
    pub fn elem(&self, rep: u32) -> Result<FieldElem<'_>> {
        if rep >= self.q {
            return Err(Error::Parse(format!("{rep} is not an element of GF({})", self.q)));
        }
        Ok(FieldElem { spec: self, rep })
    }
    /// Evaluates a polynomial with coefficients in the prime field at `x`.
    pub fn eval_prime_poly(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c % self.p))
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), Field>> {
    static R: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    R.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns the (interned) field GF(p^f).
pub fn make_field(p: u64, f: u32) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f == 0 || (p as f64).powi(f as i32) > MAX_ORDER as f64 {
        return Err(Error::FieldTooLarge { p, f });
    }
    let key = (p as u32, f);
    if let Some(fd) = registry().lock().unwrap().get(&key) {
        return Ok(fd.clone());
    }
    let built = Arc::new(FieldSpec::build(p as u32, f)?);
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry(key).or_insert(built).clone())
}

/// Field of order `q` (a prime power).
pub fn field_of_order(q: u64) -> Result<Field> {
    let (p, f) = prime_power(q).ok_or_else(|| Error::Params(format!("{q} is not a prime power")))?;
    make_field(p, f)
}

/// Splits `q = p^f`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

/// A field element bound to its field.
#[derive(Clone, Copy)]
pub struct FieldElem<'a> {
    spec: &'a FieldSpec,
    rep: u32,
}

impl fmt::Debug for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.rep, self.spec)
    }
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, o: &Self) -> bool {
        self.spec == o.spec && self.rep == o.rep
    }
}
impl Eq for FieldElem<'_> {}

/// Second operand of [`ff_op`].
#[derive(Clone, Copy, Debug)]
pub enum Operand<'a> {
    Elem(FieldElem<'a>),
    Exp(i64),
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfOp {
    Add,
    Mul,
    Inv,
    Pow,
    Neg,
}

impl<'a> FieldElem<'a> {
    pub fn rep(&self) -> u32 {
        self.rep
    }
    pub fn spec(&self) -> &'a FieldSpec {
        self.spec
    }
    fn same(&self, o: &FieldElem<'_>) -> Result<()> {
        if self.spec != o.spec {
            return Err(Error::FieldMismatch(self.spec.q as u64, o.spec.q as u64));
        }
        Ok(())
    }
    pub fn frobenius(&self, s: u32) -> FieldElem<'a> {
        FieldElem { spec: self.spec, rep: self.spec.frobenius(self.rep, s) }
    }
}

/// Checked field arithmetic on bound elements.
pub fn ff_op<'a>(kind: FfOp, a: FieldElem<'a>, b: Operand<'_>) -> Result<FieldElem<'a>> {
    let s = a.spec;
    let rep = match (kind, b) {
        (FfOp::Add, Operand::Elem(b)) => {
            a.same(&b)?;
            s.add(a.rep, b.rep)
        }
        (FfOp::Mul, Operand::Elem(b)) => {
            a.same(&b)?;
            s.mul(a.rep, b.rep)
        }
        (FfOp::Inv, _) => s.inv(a.rep)?,
        (FfOp::Neg, _) => s.neg(a.rep),
        (FfOp::Pow, Operand::Exp(e)) => s.pow(a.rep, e)?,
        (k, o) => return Err(Error::Params(format!("bad operand {o:?} for {k:?}"))),
    };
    Ok(FieldElem { spec: s, rep })
}

/// Ring embedding of GF(q) into GF(q^b) sending the generator of the small
/// field to the first (in log order) root of its modulus in the large one.
#[derive(Debug)]
pub struct Embedding {
    pub sub: Field,
    pub ext: Field,
    table: Vec<u32>,
    back: HashMap<u32, u32>,
}

impl Embedding {
    pub fn new(sub: &Field, ext: &Field) -> Result<Embedding> {
        let err = || Error::NoEmbedding { sub: sub.q as u64, ext: ext.q as u64 };
        if sub.p != ext.p || ext.f % sub.f != 0 {
            return Err(err());
        }
        let step = (ext.q - 1) / (sub.q - 1);
        // roots of the small modulus all lie in the multiplicative subgroup of order q-1
        let root = (0..sub.q - 1)
            .map(|j| ext.exp(j as u64 * step as u64))
            .find(|&r| {
                let v = sub.modulus.iter().rev().fold(0u32, |acc, &c| ext.add(ext.mul(acc, r), c));
                v == 0 && (sub.q == 2 || ext.mult_order(r) == sub.q - 1)
            })
            .ok_or_else(err)?;
        let mut table = vec![0u32; sub.q as usize];
        for i in 0..sub.q.saturating_sub(1) {
            let small = sub.exp(i as u64);
            let big = if sub.q == 2 { 1 } else { ext.pow(root, i as i64)? };
            table[small as usize] = big;
        }
        let back = table.iter().enumerate().map(|(i, &b)| (b, i as u32)).collect();
        Ok(Embedding { sub: sub.clone(), ext: ext.clone(), table, back })
    }

    pub fn apply(&self, a: u32) -> u32 {
        self.table[a as usize]
    }
    /// Preimage of an element lying in the image of the embedding.
    pub fn restrict(&self, a: u32) -> Option<u32> {
        self.back.get(&a).copied()
    }
}

/// Checked embedding of a bound element.
pub fn embed<'b>(a: FieldElem<'_>, emb: &'b Embedding) -> Result<FieldElem<'b>> {
    if *a.spec != *emb.sub {
        return Err(Error::NoEmbedding { sub: a.spec.q as u64, ext: emb.ext.q as u64 });
    }
    Ok(FieldElem { spec: &emb.ext, rep: emb.apply(a.rep) })
}

/// GF(q^b) viewed as a `b`-dimensional space over GF(q) with basis
/// `1, mu, ..., mu^(b-1)` where `mu` is the generator of the large field.
#[derive(Debug)]
pub struct Extension {
    pub emb: Embedding,
    pub b: usize,
    coords: Vec<u32>,
}

impl Extension {
    pub fn new(sub: &Field, ext: &Field) -> Result<Extension> {
        let emb = Embedding::new(sub, ext)?;
        let b = (ext.f / sub.f) as usize;
        let qs = sub.q as usize;
        let mu = ext.primitive();
        let powers: Vec<u32> = (0..b).map(|k| ext.pow(mu, k as i64).unwrap()).collect();
        let mut coords = vec![0u32; ext.q as usize * b];
        let mut c = vec![0u32; b];
        for idx in 0..qs.pow(b as u32) {
            let mut r = idx;
            for ck in c.iter_mut() {
                *ck = (r % qs) as u32;
                r /= qs;
            }
            let x = c.iter().zip(&powers).fold(0, |acc, (&ck, &pk)| ext.add(acc, ext.mul(emb.apply(ck), pk)));
            coords[x as usize * b..(x as usize + 1) * b].copy_from_slice(&c);
        }
        Ok(Extension { emb, b, coords })
    }
    pub fn sub(&self) -> &Field {
        &self.emb.sub
    }
    pub fn ext(&self) -> &Field {
        &self.emb.ext
    }
    /// Coordinates of `x` over the subfield.
    pub fn coords(&self, x: u32) -> &[u32] {
        &self.coords[x as usize * self.b..(x as usize + 1) * self.b]
    }
    /// Relative trace to the subfield.
    pub fn trace(&self, x: u32) -> u32 {
        let ext = self.ext();
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.b {
            acc = ext.add(acc, y);
            y = ext.frobenius(y, self.sub().f);
        }
        self.emb.restrict(acc).expect("trace lies in the subfield")
    }
    /// Relative norm to the subfield.
    pub fn norm(&self, x: u32) -> u32 {
        let ext = self.ext();
        let e = (ext.q - 1) / (self.sub().q - 1);
        self.emb.restrict(ext.pow(x, e as i64).unwrap()).expect("norm lies in the subfield")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_table_entries_are_primitive() {
        for &(p, f, m) in CONWAY {
            assert!(primitive_cycle(p, f, m).is_some(), "GF({p}^{f})");
            assert_eq!(m.len(), f as usize + 1);
        }
    }

    #[test]
    fn small_fields() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.primitive(), 1);
        let f4 = make_field(2, 2).unwrap();
        let l = f4.primitive();
        assert_eq!(f4.mul(l, l), f4.add(l, 1));
        assert_eq!(f4.inv(l).unwrap(), f4.add(l, 1));
        assert_eq!(f4.frobenius(l, 1), f4.add(l, 1));
        let f9 = make_field(3, 2).unwrap();
        let l9 = f9.primitive();
        assert_eq!(f9.pow(l9, 8).unwrap(), 1);
        assert_ne!(f9.pow(l9, 4).unwrap(), 1);
        // exhaustive order oracle: exactly phi(8) = 4 generators
        let gens = f9.elements().skip(1).filter(|&a| (1..8).all(|k| f9.pow(a, k).unwrap() != 1)).count();
        assert_eq!(gens, 4);
    }

    #[test]
    fn errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(2, 21), Err(Error::FieldTooLarge { .. })));
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.inv(0), Err(Error::ZeroInverse));
        let f3 = make_field(3, 1).unwrap();
        let a = f4.elem(1).unwrap();
        let b = f3.elem(1).unwrap();
        assert!(matches!(ff_op(FfOp::Add, a, Operand::Elem(b)), Err(Error::FieldMismatch(4, 3))));
        assert_eq!(ff_op(FfOp::Inv, f4.elem(0).unwrap(), Operand::None).unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, f) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (3, 3), (13, 1), (3, 4)] {
            let k = make_field(p, f).unwrap();
            let q = k.order();
            for a in 0..q {
                assert_eq!(k.add(a, k.neg(a)), 0);
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    if q <= 27 {
                        for c in 0..q {
                            assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                            assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                            assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism() {
        for (p, f) in [(2, 2), (2, 4), (3, 2), (2, 3)] {
            let k = make_field(p, f).unwrap();
            for a in k.elements() {
                assert_eq!(k.frobenius(k.frobenius(a, 1), 1), k.frobenius(a, 2));
                assert_eq!(k.frobenius(a, f), a);
                for b in k.elements() {
                    assert_eq!(k.frobenius(k.add(a, b), 1), k.add(k.frobenius(a, 1), k.frobenius(b, 1)));
                    assert_eq!(k.frobenius(k.mul(a, b), 1), k.mul(k.frobenius(a, 1), k.frobenius(b, 1)));
                }
            }
        }
        let f2 = make_field(2, 1).unwrap();
        assert!((0..5).all(|s| f2.frobenius(1, s) == 1));
    }

    #[test]
    fn embeddings() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let e = Embedding::new(&f2, &f4).unwrap();
        assert_eq!(e.apply(1), 1);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(e.apply(f2.add(a, b)), f4.add(e.apply(a), e.apply(b)));
            }
        }
        let e = Embedding::new(&f4, &f16).unwrap();
        let l16 = f16.primitive();
        assert_eq!(e.apply(f4.primitive()), f16.pow(l16, 5).unwrap());
        // minimal polynomial oracle: lambda_16^5 is a root of x^2+x+1
        let r = f16.pow(l16, 5).unwrap();
        assert_eq!(f16.add(f16.add(f16.mul(r, r), r), 1), 0);
        assert_eq!(f16.mult_order(r), 3);
        for (sp, sf, ep, ef) in [(2, 1, 2, 4), (2, 2, 2, 4), (3, 1, 3, 2), (2, 1, 2, 2)] {
            let s = make_field(sp, sf).unwrap();
            let x = make_field(ep, ef).unwrap();
            let e = Embedding::new(&s, &x).unwrap();
            let mut seen = std::collections::HashSet::new();
            for a in s.elements() {
                assert!(seen.insert(e.apply(a)));
                for b in s.elements() {
                    assert_eq!(e.apply(s.mul(a, b)), x.mul(e.apply(a), e.apply(b)));
                    assert_eq!(e.apply(s.add(a, b)), x.add(e.apply(a), e.apply(b)));
                }
            }
        }
        let f3 = make_field(3, 1).unwrap();
        assert!(Embedding::new(&f3, &f4).is_err());
        assert!(Embedding::new(&f16, &f4).is_err());
        let a = f3.elem(1).unwrap();
        let e = Embedding::new(&f2, &f4).unwrap();
        assert!(embed(a, &e).is_err());
    }

    #[test]
    fn lambda_q_outside_ground_field() {
        for (q, sub) in [(4u64, (2u64, 1u32)), (16, (2, 2))] {
            let big = field_of_order(q).unwrap();
            let small = make_field(sub.0, sub.1).unwrap();
            let e = Embedding::new(&small, &big).unwrap();
            let lam_q = big.pow(big.primitive(), small.order() as i64).unwrap();
            assert!(e.restrict(lam_q).is_none());
        }
    }

    #[test]
    fn extension_coordinates() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let x = Extension::new(&f2, &f4).unwrap();
        assert_eq!(x.coords(1), &[1, 0]);
        assert_eq!(x.coords(f4.primitive()), &[0, 1]);
        assert_eq!(x.norm(f4.primitive()), 1);
        let f9 = make_field(3, 2).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let x = Extension::new(&f3, &f9).unwrap();
        for a in f9.elements() {
            let n = x.norm(a);
            assert_eq!(x.emb.apply(n), f9.mul(a, f9.frobenius(a, 1)));
        }
    }
}
