//! The verification engine: decides `G = HK` by independent strategies,
//! computes `H ∩ K` explicitly and checks tight containment.
//!
//! Every claim is reduced to a *mover* (the factor whose orbit is computed)
//! and a *stabilizer side*, which is either the full stabilizer `G_ω` of a
//! point or an explicit small permutation group.

pub mod claims;
pub mod props;

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::constructors::sporadic::group_from_elements;
use crate::error::{Error, Result};
use crate::grpcore::{self, build_chain, ChainOptions, GroupSpec, OrbitOptions, OrbitSet, PermGroup, PointKind};
use crate::linalg::{ActionPoint, GroupElement};
use crate::orders::{ser_big, Params};
use crate::perm::Perm;

pub use props::{check_tight, check_tight_specs, instance_property_suite, PropertyReport, TightReport};

/// Largest group `intersect` will enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000;

/// A factor given by matrices or by permutations of a fixed domain.
#[derive(Clone, Debug)]
pub enum Side {
    Matrix(GroupSpec),
    Perm(PermGroup),
}

impl Side {
    pub fn name(&self) -> &str {
        match self {
            Side::Matrix(g) => &g.name,
            Side::Perm(p) => &p.name,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Omega {
    Point(ActionPoint),
    /// A point of a bare permutation domain.
    Index(u32),
}

#[derive(Clone, Debug)]
pub enum Stab {
    /// `G_ω`, where `G` is transitive on the `index` points of ω's type.
    Point { omega: Omega, index: BigUint },
    Group(PermGroup),
}

/// Projective bookkeeping for claims stated in `PSL`-type quotients.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// Order of the scalar kernel of the lift.
    pub scalars: u64,
    pub lift: String,
}

/// A located pair to compare residuals of.
#[derive(Clone, Debug)]
pub struct TightPair {
    pub located: Side,
    pub catalog: Side,
    pub catalog_name: String,
}

/// One claim instance ready for verification.
#[derive(Clone, Debug)]
pub struct Instance {
    pub claim_id: String,
    pub params: Params,
    pub g_name: String,
    pub h_name: String,
    pub k_name: String,
    pub g_order: BigUint,
    pub h_order: BigUint,
    pub k_order: BigUint,
    pub mover: Side,
    /// False when the mover is the claim's `K` (the stabilizer is `H`).
    pub mover_is_h: bool,
    pub stab: Stab,
    /// `G` itself, for sampling.
    pub ambient: Option<Side>,
    pub expected_meet: Option<BigUint>,
    pub expect_factorization: bool,
    pub quotient: Option<Quotient>,
    pub tight: Option<TightPair>,
    pub notes: Vec<String>,
    pub extra: Option<serde_json::Value>,
}

impl Instance {
    pub fn mover_order(&self) -> &BigUint {
        if self.mover_is_h {
            &self.h_order
        } else {
            &self.k_order
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
    Error(String),
}

impl Verdict {
    pub fn completed(&self) -> bool {
        matches!(self, Verdict::Pass | Verdict::Fail)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Skipped(r) => write!(f, "skipped({r})"),
            Verdict::Error(r) => write!(f, "error({r})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StrategyResult {
    pub name: String,
    pub verdict: Verdict,
    pub intersection_order: Option<u128>,
    /// Isomorphism-type hint from order, element orders and abelianness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_hint: Option<String>,
    pub orbit_sizes: Vec<u64>,
    pub wall_ms: Option<u64>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Orders {
    #[serde(serialize_with = "ser_big")]
    pub g: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub h: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub k: BigUint,
    #[serde(serialize_with = "ser_opt_big")]
    pub expected_meet: Option<BigUint>,
}

fn ser_opt_big<S: Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// The order identity at the linear and projective levels.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub scalars: u64,
    pub lift: String,
    /// `[|G|·|H∩K|, |H|·|K|]` for the lifts.
    pub linear: [String; 2],
    pub projective: [String; 2],
    pub linear_holds: bool,
    pub projective_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub params: Params,
    pub g: String,
    pub h: String,
    pub k: String,
    pub orders: Orders,
    pub expect: &'static str,
    pub strategies: Vec<StrategyResult>,
    pub tight: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tightness: Option<TightReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientReport>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<serde_json::Value>,
    pub overall: Verdict,
    /// True when the outcome is the expected one (controls expect `fail`).
    pub expectation_met: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub order_count: bool,
    pub transitivity: bool,
    pub sampling: bool,
    pub samples: usize,
    pub timings: bool,
    pub mem_budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 1,
            order_count: true,
            transitivity: true,
            sampling: true,
            samples: 32,
            timings: false,
            mem_budget: grpcore::orbit::default_mem_budget(),
        }
    }
}

/// `H ∩ K` with generators where available.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub order: u128,
    pub group: Option<PermGroup>,
    pub method: &'static str,
    /// Orbit lengths of the base points used by the stabilizer method.
    pub orbit_sizes: Vec<u64>,
    /// Whether an element interchanging the two halves of a pointed
    /// antiflag was found (groups with duality only).
    pub swapped: bool,
}

/// Base points and domain kind for the stabilizer of a matrix-group point.
fn point_base(spec: &GroupSpec, p: &ActionPoint) -> Result<(PointKind, Vec<ActionPoint>)> {
    Ok(match p {
        ActionPoint::Vector(_) => (spec.natural_kind(), vec![p.clone()]),
        ActionPoint::Functional(_) => (PointKind::VectorOrFunctional, vec![p.clone()]),
        ActionPoint::Projective { .. } => (PointKind::Projective, vec![p.clone()]),
        ActionPoint::PointedAntiflag { v, w } => {
            (PointKind::VectorOrFunctional, vec![ActionPoint::Vector(v.clone()), ActionPoint::Functional(w.clone())])
        }
        ActionPoint::Antiflag { .. } => {
            return Err(Error::Strategy("unpointed antiflags have no vector-domain stabilizer path".into()))
        }
    })
}

/// An element of `pg` interchanging points `a` and `b`, if one exists.
pub fn swapper(pg: &PermGroup, a: u32, b: u32, seed: u64) -> Result<Option<Perm>> {
    let chain = pg.chain.with_base_prefix(&[a, b], seed)?;
    let Some(t) = chain.transversal(0, b) else { return Ok(None) };
    // g = x·t with x in G_a needs b^x = a^{t^{-1}}
    let target = t.inverse().apply(a);
    let x = if target == b {
        Perm::identity(pg.degree())
    } else {
        match chain.transversal(1, target) {
            Some(x) => x,
            None => return Ok(None),
        }
    };
    let g = x.compose(&t);
    debug_assert!(g.apply(a) == b && g.apply(b) == a);
    Ok(Some(g))
}

/// `H_ω` for a matrix group via a chain whose base begins at ω.
pub fn matrix_point_stabilizer(spec: &GroupSpec, p: &ActionPoint, seed: u64) -> Result<Intersection> {
    let (kind, base) = point_base(spec, p)?;
    let pg = build_chain(spec, kind, &base, seed)?;
    let idx: Vec<u32> = base.iter().map(|x| pg.index_of(x)).collect::<Result<_>>()?;
    let chain = pg.chain.with_base_prefix(&idx, seed)?;
    let orbit_sizes = chain.orbit_lengths().iter().take(idx.len()).map(|&l| l as u64).collect();
    let pointwise = PermGroup { name: format!("{}_w", spec.name), domain: pg.domain.clone(), chain: chain.subchain(idx.len()) };
    let mut group = pointwise;
    let mut swapped = false;
    if matches!(p, ActionPoint::PointedAntiflag { .. }) && spec.has_duality() {
        if let Some(s) = swapper(&pg, idx[0], idx[1], seed)? {
            let mut gens = group.generators().to_vec();
            gens.push(s);
            let known = group.order() * 2;
            group = pg.subgroup(group.name.clone(), &gens, &ChainOptions { known_order: Some(known), seed, ..Default::default() })?;
            swapped = true;
        }
    }
    Ok(Intersection { order: group.order(), group: Some(group), method: "stabilizer", orbit_sizes, swapped })
}

/// Elements of the smaller group lying in the larger one.
pub fn enumerate_smaller(a: &PermGroup, b: &PermGroup, seed: u64) -> Result<Intersection> {
    if a.degree() != b.degree() {
        return Err(Error::Ambient("groups act on different domains".into()));
    }
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.order() > ENUMERATION_LIMIT {
        return Err(Error::Strategy(format!("both groups exceed {ENUMERATION_LIMIT} elements")));
    }
    let elems: Vec<Perm> = small.elements(ENUMERATION_LIMIT)?.into_iter().filter(|p| big.contains_perm(p)).collect();
    let g = group_from_elements(small, &format!("{} ∩ {}", a.name, b.name), &elems, seed)?;
    if g.order() != elems.len() as u128 {
        return Err(Error::Certification("intersection elements do not form a group".into()));
    }
    Ok(Intersection { order: g.order(), group: Some(g), method: "enumerate_smaller", orbit_sizes: vec![], swapped: false })
}

/// `mover ∩ stab`, by the stabilizer chain or by enumeration.
pub fn intersect(mover: &Side, stab: &Stab, seed: u64) -> Result<Intersection> {
    match (mover, stab) {
        (Side::Matrix(spec), Stab::Point { omega: Omega::Point(p), .. }) => matrix_point_stabilizer(spec, p, seed),
        (Side::Perm(pg), Stab::Point { omega, .. }) => {
            let i = match omega {
                Omega::Index(i) => *i,
                Omega::Point(p) => pg.index_of(p)?,
            };
            let s = pg.stabilizer_of_indices(format!("{}_w", pg.name), &[i], seed)?;
            let len = pg.order() / s.order().max(1);
            Ok(Intersection { order: s.order(), group: Some(s), method: "stabilizer", orbit_sizes: vec![len as u64], swapped: false })
        }
        (Side::Perm(pg), Stab::Group(k)) => enumerate_smaller(pg, k, seed),
        (Side::Matrix(_), Stab::Point { omega: Omega::Index(_), .. }) => {
            Err(Error::Strategy("a bare index needs a permutation mover".into()))
        }
        (Side::Matrix(_), Stab::Group(_)) => Err(Error::Strategy("explicit K needs a permutation mover".into())),
    }
}

fn orbit_of(mover: &Side, omega: &Omega, keep: bool, mem_budget: u64) -> Result<Orbit> {
    match (mover, omega) {
        (Side::Matrix(spec), Omega::Point(p)) => {
            let o = OrbitOptions { transporters: false, mem_budget, keep_members: keep };
            Ok(Orbit::Keys(grpcore::orbit(spec, p, &o)?))
        }
        (Side::Perm(pg), _) => {
            let i = match omega {
                Omega::Index(i) => *i,
                Omega::Point(p) => pg.index_of(p)?,
            };
            Ok(Orbit::Indices(i, pg.orbit_of_index(i).into_iter().collect()))
        }
        (Side::Matrix(_), Omega::Index(_)) => Err(Error::Strategy("a bare index needs a permutation mover".into())),
    }
}

enum Orbit {
    Keys(OrbitSet),
    Indices(u32, HashSet<u32>),
}

impl Orbit {
    fn size(&self) -> u64 {
        match self {
            Orbit::Keys(o) => o.size,
            Orbit::Indices(_, s) => s.len() as u64,
        }
    }
}

/// Known small groups by order and element-order multiset.
const KNOWN: &[(u128, &[(u64, u64)], &str)] = &[
    (6, &[(1, 1), (2, 3), (3, 2)], "S3"),
    (10, &[(1, 1), (2, 5), (5, 4)], "D10"),
    (21, &[(1, 1), (3, 14), (7, 6)], "7:3"),
    (24, &[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)], "SL_2(3)"),
    (24, &[(1, 1), (2, 9), (3, 8), (4, 6)], "S4"),
    (60, &[(1, 1), (2, 15), (3, 20), (5, 24)], "A5"),
    (168, &[(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)], "PSL_2(7)"),
    (720, &[(1, 1), (2, 75), (3, 80), (4, 180), (5, 144), (6, 240)], "S6"),
];

/// Isomorphism-type hint from order, element orders and abelianness.
pub fn structure_hint(g: &PermGroup) -> Option<String> {
    let n = g.order();
    if n == 1 {
        return Some("1".into());
    }
    if n > 1 << 16 {
        return None;
    }
    let spec = g.order_spectrum().ok()?;
    let list: Vec<(u64, u64)> = spec.iter().map(|(&a, &b)| (a, b)).collect();
    if let Some((_, _, name)) = KNOWN.iter().find(|(o, s, _)| *o == n && *s == list.as_slice()) {
        return Some(name.to_string());
    }
    if g.is_abelian() {
        let exp = spec.keys().copied().max().unwrap_or(1);
        if exp as u128 == n {
            return Some(format!("C{n}"));
        }
        if crate::gf::prime_power(exp).is_some_and(|(p, e)| e == 1 && p == exp) {
            let k = (n as f64).log(exp as f64).round() as u32;
            return Some(format!("{exp}^{k}"));
        }
        return Some(format!("abelian of order {n}"));
    }
    Some(format!("nonabelian of order {n}"))
}

fn random_word(spec: &GroupSpec, rng: &mut ChaCha8Rng) -> Result<GroupElement> {
    let k = &spec.field;
    let mut g = GroupElement::identity(k, spec.n);
    for _ in 0..24 {
        let x = &spec.gens[rng.gen_range(0..spec.gens.len())];
        let x = if rng.gen_bool(0.5) { x.inverse(k) } else { x.clone() };
        g = g.compose(k, &x)?;
    }
    Ok(g)
}

fn elapsed(t: Instant, on: bool) -> Option<u64> {
    on.then(|| t.elapsed().as_millis() as u64)
}

fn result(name: &str, seed: u64) -> StrategyResult {
    StrategyResult {
        name: name.into(),
        verdict: Verdict::Skipped("disabled".into()),
        intersection_order: None,
        structure_hint: None,
        orbit_sizes: vec![],
        wall_ms: None,
        seed,
        detail: None,
    }
}

fn error_verdict(e: &Error) -> Verdict {
    match e {
        Error::Strategy(m) => Verdict::Skipped(m.clone()),
        Error::DegreeTooLarge(d) => Verdict::Skipped(format!("domain of {d} points exceeds the chain budget")),
        Error::OrbitBudget { partial } => Verdict::Skipped(format!("orbit exceeded the memory budget after {partial} points")),
        e => Verdict::Error(e.to_string()),
    }
}

fn order_count(inst: &Instance, seed: u64) -> StrategyResult {
    let mut r = result("order-count", seed);
    match intersect(&inst.mover, &inst.stab, seed) {
        Ok(x) => {
            let lhs = &inst.g_order * BigUint::from(x.order);
            let rhs = &inst.h_order * &inst.k_order;
            r.verdict = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
            r.intersection_order = Some(x.order);
            r.structure_hint = x.group.as_ref().and_then(structure_hint);
            r.orbit_sizes = x.orbit_sizes;
            let mut d = format!("{}: |G|·|H∩K| = {lhs}, |H|·|K| = {rhs}", x.method);
            if x.swapped {
                d.push_str("; includes a duality interchanging v and W");
            }
            r.detail = Some(d);
        }
        Err(e) => r.verdict = error_verdict(&e),
    }
    r
}

fn transitivity(inst: &Instance, opts: &VerifyOptions, keep: bool) -> (StrategyResult, Option<Orbit>) {
    let mut r = result("transitivity", opts.seed);
    let Stab::Point { omega, index } = &inst.stab else {
        r.verdict = Verdict::Skipped("K is not a point stabilizer".into());
        return (r, None);
    };
    match orbit_of(&inst.mover, omega, keep, opts.mem_budget) {
        Ok(o) => {
            let size = BigUint::from(o.size());
            r.orbit_sizes = vec![o.size()];
            r.verdict = if &size == index { Verdict::Pass } else { Verdict::Fail };
            let m = inst.mover_order();
            if (m % &size).is_zero() {
                r.intersection_order = (m / &size).to_u128();
            }
            r.detail = Some(format!("|ω^M| = {size}, |G:G_ω| = {index}"));
            (r, Some(o))
        }
        Err(e) => {
            r.verdict = error_verdict(&e);
            (r, None)
        }
    }
}

fn sampling(inst: &Instance, opts: &VerifyOptions, orbit: Option<&Orbit>) -> StrategyResult {
    let mut r = result("sampling", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5a5a);
    let Some(ambient) = &inst.ambient else {
        r.verdict = Verdict::Skipped("no ambient generators".into());
        return r;
    };
    let outcome: Result<(usize, usize)> = (|| {
        let mut hits = 0;
        match (&inst.stab, ambient) {
            (Stab::Point { omega, .. }, _) => {
                let owned;
                let orbit = match orbit {
                    Some(o) => o,
                    None => {
                        owned = orbit_of(&inst.mover, omega, true, opts.mem_budget)?;
                        &owned
                    }
                };
                for _ in 0..opts.samples {
                    let inside = match (orbit, ambient, omega) {
                        (Orbit::Keys(set), Side::Matrix(g), Omega::Point(p)) => {
                            grpcore::product_membership(set, &random_word(g, &mut rng)?, p)?
                        }
                        (Orbit::Indices(i, set), Side::Perm(g), _) => set.contains(&g.random_perm(&mut rng).inverse().apply(*i)),
                        _ => return Err(Error::Strategy("ambient and mover use different models".into())),
                    };
                    hits += inside as usize;
                }
            }
            (Stab::Group(k), Side::Perm(g)) => {
                let Side::Perm(m) = &inst.mover else { return Err(Error::Strategy("explicit K needs permutations".into())) };
                let elems = m.elements(ENUMERATION_LIMIT)?;
                let inv: Vec<Perm> = elems.iter().map(|h| h.inverse()).collect();
                for _ in 0..opts.samples {
                    let x = g.random_perm(&mut rng);
                    hits += inv.iter().any(|hi| k.contains_perm(&hi.compose(&x))) as usize;
                }
            }
            _ => return Err(Error::Strategy("explicit K needs a permutation ambient".into())),
        }
        Ok((hits, opts.samples))
    })();
    match outcome {
        Ok((hits, n)) => {
            r.verdict = if hits == n { Verdict::Pass } else { Verdict::Fail };
            r.detail = Some(format!("{hits}/{n} random elements of G lie in HK"));
        }
        Err(e) => r.verdict = error_verdict(&e),
    }
    r
}

fn quotient_report(inst: &Instance, meet: Option<u128>) -> Option<QuotientReport> {
    let q = inst.quotient.as_ref()?;
    let meet = BigUint::from(meet?);
    let s = BigUint::from(q.scalars);
    // the scalar kernel lies in G, in both lifts and in their intersection
    let proj = [&inst.g_order * &meet, &inst.h_order * &inst.k_order];
    let lin = [&proj[0] * &s * &s, &proj[1] * &s * &s];
    Some(QuotientReport {
        scalars: q.scalars,
        lift: q.lift.clone(),
        linear_holds: lin[0] == lin[1],
        projective_holds: proj[0] == proj[1],
        linear: [lin[0].to_string(), lin[1].to_string()],
        projective: [proj[0].to_string(), proj[1].to_string()],
    })
}

/// Runs the enabled strategies on one instance.
pub fn verify(inst: &Instance, opts: &VerifyOptions) -> VerificationReport {
    let mut strategies = Vec::new();
    let mut notes = inst.notes.clone();

    let mut a = result("order-count", opts.seed);
    if opts.order_count {
        let t = Instant::now();
        a = order_count(inst, opts.seed);
        a.wall_ms = elapsed(t, opts.timings);
    }
    let mut b = result("transitivity", opts.seed);
    let mut orbit = None;
    if opts.transitivity {
        let t = Instant::now();
        let (r, o) = transitivity(inst, opts, opts.sampling);
        b = r;
        b.wall_ms = elapsed(t, opts.timings);
        orbit = o;
    }
    let mut c = result("sampling", opts.seed);
    if opts.sampling {
        let t = Instant::now();
        c = sampling(inst, opts, orbit.as_ref());
        c.wall_ms = elapsed(t, opts.timings);
    }
    drop(orbit);

    let certifying: Vec<&StrategyResult> = [&a, &b].into_iter().filter(|r| r.verdict.completed()).collect();
    let mut overall;
    let mut meet = None;
    if certifying.is_empty() {
        let why: Vec<String> = [&a, &b].iter().map(|r| format!("{}: {}", r.name, r.verdict)).collect();
        overall = Verdict::Skipped(format!("no certifying strategy completed ({})", why.join("; ")));
    } else {
        let holds = certifying[0].verdict == Verdict::Pass;
        overall = if holds { Verdict::Pass } else { Verdict::Fail };
        meet = certifying.iter().find_map(|r| r.intersection_order);
        if certifying.len() == 2 {
            let meets_differ = matches!((a.intersection_order, b.intersection_order), (Some(x), Some(y)) if x != y);
            if a.verdict != b.verdict || (holds && meets_differ) {
                notes.push(format!("strategies disagree: order-count {} vs transitivity {}", a.verdict, b.verdict));
                overall = Verdict::Fail;
            }
        }
        if holds && c.verdict == Verdict::Fail {
            notes.push("sampling found an element outside HK".into());
            overall = Verdict::Fail;
        }
        if overall == Verdict::Pass {
            if let (Some(exp), Some(m)) = (&inst.expected_meet, meet) {
                if *exp != BigUint::from(m) {
                    notes.push(format!("|H∩K| = {m} differs from the expected {exp}"));
                    overall = Verdict::Fail;
                }
            }
        }
    }
    let quotient = quotient_report(inst, meet);
    let tightness = inst.tight.as_ref().map(|t| check_tight(&t.located, &t.catalog, &t.catalog_name, opts.seed));
    let tight = match &tightness {
        Some(Ok(t)) => Some(t.equal),
        Some(Err(e)) => {
            notes.push(format!("tightness check failed to run: {e}"));
            None
        }
        // H is itself the catalog group
        None => Some(true),
    };
    strategies.extend([a, b, c]);
    let expectation_met = if inst.expect_factorization { overall == Verdict::Pass } else { overall == Verdict::Fail };
    VerificationReport {
        claim_id: inst.claim_id.clone(),
        params: inst.params,
        g: inst.g_name.clone(),
        h: inst.h_name.clone(),
        k: inst.k_name.clone(),
        orders: Orders {
            g: inst.g_order.clone(),
            h: inst.h_order.clone(),
            k: inst.k_order.clone(),
            expected_meet: inst.expected_meet.clone(),
        },
        expect: if inst.expect_factorization { "factorization" } else { "no factorization" },
        strategies,
        tight,
        tightness: tightness.and_then(|t| t.ok()),
        quotient,
        notes,
        extra: inst.extra.clone(),
        overall,
        expectation_met,
    }
}

/// Machine-readable one-line summary of a report.
pub fn summary_line(r: &VerificationReport) -> String {
    let meet = r.strategies.iter().find_map(|s| s.intersection_order).map(|m| m.to_string()).unwrap_or_else(|| "-".into());
    let strat: Vec<String> = r.strategies.iter().map(|s| format!("{}={}", s.name, s.verdict)).collect();
    format!(
        "{:<12} {:<16} {:<10} meet={:<8} {} {}",
        r.claim_id,
        r.params.to_string(),
        r.overall.to_string(),
        meet,
        if r.expectation_met { "ok" } else { "UNEXPECTED" },
        strat.join(" ")
    )
}

/// Sorted multiset of element orders, for reports.
pub fn spectrum(g: &PermGroup) -> Result<BTreeMap<u64, u64>> {
    g.order_spectrum()
}

#[cfg(test)]
mod tests;
