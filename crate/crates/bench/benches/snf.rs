use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use relchar_bench::scrambled_matrix;
use relchar_core::linalg::smith_normal_form;
use relchar_core::simplicial::product_space;
use relchar_core::{fixtures, Cone, ConeProduct, Space};

fn snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in [8usize, 16, 32] {
        let m = scrambled_matrix(n, n + 3, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    group.finish();
}

// Spaces are rebuilt inside the loop because chain data is memoized per space.
fn homology(c: &mut Criterion) {
    c.bench_function("homology/torus", |b| {
        b.iter(|| {
            let t = product_space(&fixtures::s1(), &fixtures::s1_6());
            black_box(Space::Abs(t).chain().homology(1).describe())
        })
    });
    c.bench_function("homology/cone_deg2_x_s1", |b| {
        b.iter(|| {
            let cp = ConeProduct::new(&Cone::new(&fixtures::deg2()), &fixtures::s1()).expect("product cone");
            black_box(cp.space().chain().homology(2).describe())
        })
    });
}

criterion_group!(benches, snf, homology);
criterion_main!(benches);
