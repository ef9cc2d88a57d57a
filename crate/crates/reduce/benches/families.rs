use criterion::{criterion_group, criterion_main, Criterion};
use snarklab_core::par::Exec;
use snarklab_core::ring::Kind;
use snarklab_reduce::families::{family_report, generate_pi};

fn bench_report(c: &mut Criterion) {
    let members = generate_pi(4, 7).unwrap();
    let mut g = c.benchmark_group("pi_4_7_report");
    g.sample_size(10);
    g.bench_function("sequential", |b| {
        b.iter(|| family_report(&members, Kind::Planar, 4, Exec::Sequential).unwrap())
    });
    g.bench_function("parallel", |b| b.iter(|| family_report(&members, Kind::Planar, 4, Exec::Parallel).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_report);
criterion_main!(benches);
