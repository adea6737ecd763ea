use criterion::{criterion_group, criterion_main, Criterion};
use pairkit_core::instances;
use pairkit_core::matrix::{all_matrices, dag_det, mat_mul};
use pairkit_core::pairs::Pair;
use pairkit_core::poly::{from_terms, poly_mul};
use pairkit_core::suite::{run_suite, SuiteConfig};
use pairkit_core::{cong, with_pair};

fn bench_det_sweep(c: &mut Criterion) {
    let p = instances::supertropical_boolean();
    let mats = all_matrices(&p, 2).unwrap();
    c.bench_function("dagdet_product_sweep_2x2", |b| {
        b.iter(|| {
            let mut acc = 0u32;
            for a in &mats {
                for m in mats.iter().take(9) {
                    let d = dag_det(&p, &mat_mul(&p, a, m)).unwrap();
                    acc = acc.wrapping_add(d as u32);
                }
            }
            acc
        })
    });
}

fn bench_congruences(c: &mut Criterion) {
    let p = instances::doubled_boolean();
    c.bench_function("congruence_enumeration_4el", |b| {
        b.iter(|| cong::enumerate_congruences(&p).unwrap().len())
    });
}

fn bench_convolution(c: &mut Criterion) {
    let p = instances::supertropical_boolean();
    let one = p.one();
    let f = from_terms(&p, vec![(0u32, one), (1, one), (2, one), (3, one)]);
    c.bench_function("poly_square_deg3", |b| {
        b.iter(|| poly_mul(&p, &f, &f).terms.len())
    });
}

fn bench_axiom_suite(c: &mut Criterion) {
    let inst = instances::lookup("supertropical-boolean").unwrap();
    c.bench_function("pair_suite_supertropical", |b| {
        b.iter(|| {
            let r = with_pair!(&inst, _p => run_suite(&inst, "pair.*", SuiteConfig::default()));
            r.checks.len()
        })
    });
}

criterion_group!(
    benches,
    bench_det_sweep,
    bench_congruences,
    bench_convolution,
    bench_axiom_suite
);
criterion_main!(benches);
