use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use gamma2_bench::{angle, lattice};
use gamma2_core::cn::cn_polynomials;
use gamma2_core::exact::sturm_isolate;
use gamma2_core::identities::beta_l;
use gamma2_core::lambda_poly::{e_tilde_odd, p_poly_oracle};

fn polynomials(c: &mut Criterion) {
    let mut g = c.benchmark_group("polynomials");
    for k in [10usize, 30] {
        g.bench_with_input(BenchmarkId::new("recursion", k), &k, |b, &k| {
            b.iter(|| cn_polynomials(black_box(k)))
        });
    }
    g.sample_size(10);
    g.bench_function("oracle_k10", |b| b.iter(|| p_poly_oracle(black_box(10), 256)));
    g.bench_function("e_tilde_odd_k10", |b| b.iter(|| e_tilde_odd(black_box(10), 256)));
    g.finish();
}

fn roots(c: &mut Criterion) {
    let table = cn_polynomials(20);
    let mut g = c.benchmark_group("roots");
    for k in [5usize, 20] {
        let p = table.p(k).clone();
        g.bench_with_input(BenchmarkId::new("sturm_isolate", k), &p, |b, p| {
            b.iter(|| sturm_isolate(black_box(p)))
        });
    }
    g.finish();
}

fn arc(c: &mut Criterion) {
    let mut g = c.benchmark_group("arc");
    g.sample_size(10);
    for (k, n_max) in [(3usize, 2_000u64), (26, 10_000)] {
        let l = lattice(k, n_max);
        let th = angle(1.1);
        g.bench_function(format!("evaluate_k{k}_n{n_max}"), |b| b.iter(|| l.evaluate(black_box(&th))));
    }
    g.finish();
}

fn l_values(c: &mut Criterion) {
    c.bench_function("beta_l_k1_128", |b| b.iter(|| beta_l(black_box(1), 128)));
}

criterion_group!(benches, polynomials, roots, arc, l_values);
criterion_main!(benches);
