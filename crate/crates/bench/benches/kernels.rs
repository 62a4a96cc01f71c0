use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dessins::bc::mgt_group;
use dessins::double::{verify_axioms, CocycleVariant};
use dessins::enumerate::enumerate_connected;
use dessins::hopf::{Convention, HopfAlgebra, HopfElement};
use dessins::poly::{brt, tutte, tutte_deletion_contraction};
use dessins::qsm::series::{polylog, zeta};
use dessins_bench::fixtures;

fn dessin_kernels(c: &mut Criterion) {
    for (name, x) in fixtures() {
        c.bench_function(&format!("canonical_form/{name}"), |b| b.iter(|| black_box(&x).canonical_form()));
        c.bench_function(&format!("tutte/{name}"), |b| b.iter(|| tutte(black_box(&x)).unwrap()));
        c.bench_function(&format!("tutte_dc/{name}"), |b| b.iter(|| tutte_deletion_contraction(black_box(&x))));
        c.bench_function(&format!("brt/{name}"), |b| b.iter(|| brt(black_box(&x)).unwrap()));
        c.bench_function(&format!("coproduct/{name}"), |b| {
            b.iter(|| {
                let mut alg = HopfAlgebra::new(Convention::Reduced);
                alg.coproduct(&HopfElement::dessin(black_box(&x))).unwrap()
            })
        });
    }
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_connected/4", |b| b.iter(|| enumerate_connected(black_box(4)).unwrap()));
}

fn numerics(c: &mut Criterion) {
    c.bench_function("zeta/3", |b| b.iter(|| zeta(black_box(3.0), 1e-12).unwrap()));
    c.bench_function("polylog/2.5", |b| b.iter(|| polylog(black_box(2.5), 0.3, 1e-12).unwrap()));
}

fn exact_algebra(c: &mut Criterion) {
    c.bench_function("mgt_group/12", |b| b.iter(|| mgt_group(black_box(12)).unwrap()));
    c.bench_function("verify_axioms/4", |b| b.iter(|| verify_axioms(black_box(4), 1, CocycleVariant::Floor).unwrap()));
}

criterion_group!(benches, dessin_kernels, enumeration, numerics, exact_algebra);
criterion_main!(benches);
