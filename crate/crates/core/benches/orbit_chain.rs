//! Orbit enumeration and chain construction, labelled by execution mode.
//!
//! `cargo bench -p factorcheck` measures the rayon build and
//! `cargo bench -p factorcheck --no-default-features` the sequential one;
//! criterion keeps both under `target/criterion/<mode>/...`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use factorcheck::constructors::classical_generators;
use factorcheck::factorize::claims::{build_instance, default_params};
use factorcheck::factorize::{verify, VerifyOptions};
use factorcheck::gf::field_of_order;
use factorcheck::grpcore::{build_chain, orbit, OrbitOptions, PointKind};
use factorcheck::linalg::{canonical_point, unit_vector, RawPoint};
use factorcheck::orders::Family;
use factorcheck::par;

fn mode() -> &'static str {
    if par::is_parallel() {
        "parallel"
    } else {
        "sequential"
    }
}

fn orbits(c: &mut Criterion) {
    let mut g = c.benchmark_group(mode());
    g.sample_size(10);
    for (n, q) in [(8usize, 2u64), (10, 2), (5, 4)] {
        let k = field_of_order(q).unwrap();
        let sl = classical_generators(Family::SL, n, &k).unwrap();
        let e1 = unit_vector(n, 0);
        let x = canonical_point(&k, RawPoint::PointedAntiflag(&e1, &e1)).unwrap();
        let opts = OrbitOptions { keep_members: false, ..Default::default() };
        g.bench_with_input(BenchmarkId::new("antiflag_orbit", format!("SL_{n}({q})")), &(), |b, _| {
            b.iter(|| orbit(&sl, &x, &opts).unwrap().size)
        });
    }
    g.finish();
}

fn chains(c: &mut Criterion) {
    let mut g = c.benchmark_group(mode());
    g.sample_size(10);
    for (fam, n, q) in [(Family::SL, 4usize, 3u64), (Family::Sp, 6, 2), (Family::SL, 8, 2)] {
        let k = field_of_order(q).unwrap();
        let spec = classical_generators(fam, n, &k).unwrap();
        g.bench_with_input(BenchmarkId::new("vector_chain", format!("{fam:?}_{n}({q})")), &(), |b, _| {
            b.iter(|| build_chain(&spec, PointKind::Vector, &[], 1).unwrap().order())
        });
    }
    g.finish();
}

fn claims(c: &mut Criterion) {
    let mut g = c.benchmark_group(mode());
    g.sample_size(10);
    for id in ["1", "9", "11"] {
        let inst = build_instance(id, &default_params(id).unwrap(), 1).unwrap();
        let opts = VerifyOptions { samples: 8, ..Default::default() };
        g.bench_with_input(BenchmarkId::new("verify", id), &(), |b, _| b.iter(|| verify(&inst, &opts).expectation_met));
    }
    g.finish();
}

criterion_group!(benches, orbits, chains, claims);
criterion_main!(benches);
