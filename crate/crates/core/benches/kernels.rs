//! Enumeration kernels on a one-thread rayon pool against the global pool.
//! Built with `--no-default-features` both arms run the sequential fallback.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;

use hallgebra::hall::hall_constants;
use hallgebra::par::is_parallel;
use hallgebra::protoab::ProtoAbelianInstance;
use hallgebra::schurweyl::check_sum_of_squares;
use hallgebra::waldhausen::{check_2segal_degree3, hecke_algebra, hecke_waldhausen};
use hallgebra::wreath::{wreath_character_table, FiniteGroup};
use hallgebra::DEFAULT_BUDGET;

fn kernels() -> Vec<(&'static str, Box<dyn Fn() + Send + Sync>)> {
    let p_groups = ProtoAbelianInstance::p_groups(2, 4).unwrap();
    let klein = FiniteGroup::klein();
    let s4 = FiniteGroup::symmetric(4);
    let s3_in_s4 = s4.parse_subgroup("sym:3").unwrap();
    let hw = hecke_waldhausen(&s4, &s3_in_s4, 3, DEFAULT_BUDGET).unwrap().into_simplicial();
    let (k2, s4b, hb) = (klein.clone(), s4.clone(), s3_in_s4.clone());
    vec![
        (
            "hall_ab2_groups_bound4",
            Box::new(move || {
                black_box(hall_constants(&p_groups, 4).unwrap());
            }),
        ),
        (
            "wreath_table_klein_n3",
            Box::new(move || {
                black_box(wreath_character_table(&klein, 3, 5000).unwrap());
            }),
        ),
        (
            "hecke_s4_s3",
            Box::new(move || {
                black_box(hecke_algebra(&s4b, &hb, DEFAULT_BUDGET).unwrap());
            }),
        ),
        (
            "segal_hecke_s4_s3",
            Box::new(move || {
                black_box(check_2segal_degree3(&hw, DEFAULT_BUDGET).unwrap());
            }),
        ),
        (
            "schurweyl_klein_n4_d3",
            Box::new(move || {
                black_box(check_sum_of_squares(&k2, 4, 3).unwrap());
            }),
        ),
    ]
}

fn bench(c: &mut Criterion) {
    let single = ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let global_threads = rayon::current_num_threads();
    let mut group = c.benchmark_group(if is_parallel() { "parallel" } else { "sequential" });
    group.sample_size(10);
    for (name, f) in kernels() {
        group.bench_function(BenchmarkId::new(name, "1-thread"), |b| b.iter(|| single.install(&f)));
        group.bench_function(BenchmarkId::new(name, format!("global-{global_threads}")), |b| b.iter(&f));
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
