use criterion::{black_box, criterion_group, criterion_main, Criterion};
use quantic_core::flow::integrate;
use quantic_core::{BinaryQuantic, FlowConfig, Method};

fn flow(c: &mut Criterion) {
    let u = BinaryQuantic::from_integers(&[1, 0, 0, 0, 0, 1]).unwrap();
    let rk4 = FlowConfig::default();
    let rk45 = FlowConfig { method: Method::Rk45Adaptive, ..FlowConfig::default() };
    c.bench_function("integrate_rk4_p5q5", |b| {
        b.iter(|| integrate(black_box(&u), (1.0, 0.5), &rk4).unwrap())
    });
    c.bench_function("integrate_rk45_p5q5", |b| {
        b.iter(|| integrate(black_box(&u), (1.0, 0.5), &rk45).unwrap())
    });
}

criterion_group!(benches, flow);
criterion_main!(benches);
