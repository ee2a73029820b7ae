use criterion::{black_box, criterion_group, criterion_main, Criterion};

use wiman_core::curves::{instantiate_moduli, shipped_catalog, CurveEntry};
use wiman_core::ffprobe::{count_points, default_primes, Reducer, DEFAULT_BUDGET};
use wiman_core::quadnet::delta5;
use wiman_core::ramify::{enumerate_zeuthen, fixed_points};
use wiman_core::symmetry::{closure, DEFAULT_GROUP_CAP};
use wiman_core::CycloField;

fn entry(id: &str) -> CurveEntry {
    let e = shipped_catalog().unwrap().into_iter().find(|e| e.id == id).unwrap();
    instantiate_moduli(&e, 1).unwrap()
}

fn arithmetic(c: &mut Criterion) {
    let f = CycloField::default_field();
    let a = &(&f.zeta_pow(7) + &f.int(3)) - &f.zeta_pow(41);
    let b = &f.zeta_pow(13) + &f.root(5, 2).unwrap();
    c.bench_function("cyclotomic product", |bn| bn.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("cyclotomic inverse", |bn| bn.iter(|| black_box(&a).inv()));
}

fn groups(c: &mut Criterion) {
    let bring = entry("p4q-15-bring").group_generators().unwrap();
    c.bench_function("closure of the Bring group", |bn| bn.iter(|| closure(black_box(&bring), DEFAULT_GROUP_CAP).unwrap()));
    let g192 = entry("p5-192").group_generators().unwrap();
    c.bench_function("closure of G192", |bn| bn.iter(|| closure(black_box(&g192), DEFAULT_GROUP_CAP).unwrap()));
}

fn fixed(c: &mut Criterion) {
    let e = entry("p4q-01");
    let (model, g) = (e.model().unwrap(), e.group_generators().unwrap().remove(0));
    c.bench_function("fixed points of a swap", |bn| bn.iter(|| fixed_points(&model, black_box(&g)).unwrap()));
    let e = entry("p5-192");
    let (model, g) = (e.model().unwrap(), e.group_generators().unwrap().remove(0));
    c.bench_function("fixed points on a net", |bn| bn.iter(|| fixed_points(&model, black_box(&g)).unwrap()));
}

fn nets(c: &mut Criterion) {
    let model = entry("p5-192").model().unwrap();
    c.bench_function("delta5 of G192", |bn| bn.iter(|| delta5(black_box(&model)).unwrap()));
}

fn finite_fields(c: &mut Criterion) {
    let r = Reducer::new(default_primes()[0].clone(), 1).unwrap();
    let bring = r.model(&entry("p4q-15-bring").model().unwrap()).unwrap();
    let mut group = c.benchmark_group("point counts mod 241");
    group.sample_size(10);
    group.bench_function("Bring", |bn| bn.iter(|| count_points(black_box(&bring), DEFAULT_BUDGET).unwrap()));
    let net = r.model(&entry("p5-64").model().unwrap()).unwrap();
    group.bench_function("net G64", |bn| bn.iter(|| count_points(black_box(&net), DEFAULT_BUDGET).unwrap()));
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("cyclic data, genus 6 up to order 60", |bn| bn.iter(|| enumerate_zeuthen(black_box(6), 60, false).unwrap()));
}

criterion_group!(benches, arithmetic, groups, fixed, nets, finite_fields, enumeration);
criterion_main!(benches);
