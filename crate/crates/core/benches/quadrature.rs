use ache_core::jet::JetSpace;
use ache_core::parallel::{map_nodes, map_nodes_seq, ordered_sum};
use ache_core::tw_calculus::manifolds::HopfSphere;
use ache_core::tw_calculus::{jets_at, ContactManifold};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

/// Integral of `R^2` over the nodes, one Tanaka-Webster solve per node.
fn integrate(m: &HopfSphere, nodes: &[[f64; 3]], weights: &[f64], parallel: bool) -> f64 {
    let sp = JetSpace::new(3, 4);
    let f = |k: usize| {
        let j = jets_at(m, &sp, 4, nodes[k]).expect("regular node");
        weights[k] * j.volume.abs() * j.r.value().re.powi(2)
    };
    let vals = if parallel { map_nodes(nodes.len(), f) } else { map_nodes_seq(nodes.len(), f) };
    ordered_sum(vals)
}

fn bench(c: &mut Criterion) {
    let m = HopfSphere::berger(1.3);
    let q = m.quadrature(6);
    let mut g = c.benchmark_group("node_quadrature");
    g.sample_size(10);
    g.bench_function("rayon", |b| b.iter(|| integrate(black_box(&m), &q.nodes, &q.weights, true)));
    g.bench_function("sequential", |b| b.iter(|| integrate(black_box(&m), &q.nodes, &q.weights, false)));
    g.finish();
    assert_eq!(integrate(&m, &q.nodes, &q.weights, true), integrate(&m, &q.nodes, &q.weights, false));
}

criterion_group!(benches, bench);
criterion_main!(benches);
