use criterion::{black_box, criterion_group, criterion_main, Criterion};
use symhom::homology::matrix_model_check;
use symhom::laws::run_suite;
use symhom::verify::{ex2_generators, ex2_model, triangle_family};
use symhom::{Engine, Filtration, FiniteComplex, Flavor, Label, Transport, Variant};
use symhom_bench::Fixtures;

fn algebra(c: &mut Criterion) {
    let f = Fixtures::load().unwrap();
    let eng = Engine::new(&f.t_mm);
    let gens = ex2_generators(&eng).unwrap();
    c.bench_function("closure/ex2-len4", |b| {
        b.iter(|| FiniteComplex::closure(&eng, black_box(&gens), 4, 0).unwrap())
    });
    c.bench_function("matrix-model/ex2-len3", |b| {
        b.iter(|| matrix_model_check(&eng, black_box(&gens), &ex2_model(), 3).unwrap())
    });
    let tri = Engine::new(&f.triple);
    let t1 = triangle_family(&tri, 1, Filtration::Unfiltered).unwrap();
    c.bench_function("diff/triangle", |b| b.iter(|| tri.diff(black_box(&t1)).unwrap()));
    let w = Engine::new(&f.t_mm_w);
    let x = w.parse("M[1;(a,b)](.x1,^x2)").unwrap();
    c.bench_function("filter-u/t_mm_w", |b| {
        b.iter(|| w.transport(black_box(&x), Transport::FilterU, 8).unwrap())
    });
}

fn floer(c: &mut Criterion) {
    let f = Fixtures::load().unwrap();
    let (a, b) = (Label::new("a").unwrap(), Label::new("b").unwrap());
    c.bench_function("domains/t_mm-uncached", |bench| {
        bench.iter(|| {
            let o = symhom::fixtures::t_mm().unwrap();
            let pts = symhom::Oracle::points(&o, &a, &b);
            o.diagram().domains(&a, &b, &pts[0], &pts[1], o.bound()).unwrap()
        })
    });
    let eng = Engine::new(&f.t_ml);
    c.bench_function("recover-cf/t_ml", |bench| {
        bench.iter(|| eng.recover_cf(&a, &b, Variant::Homology, Flavor::Hat).unwrap())
    });
}

fn laws(c: &mut Criterion) {
    let mut g = c.benchmark_group("laws");
    g.sample_size(10);
    g.bench_function("random-20", |b| {
        b.iter(|| run_suite(&[], 20, 10, black_box(3)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, algebra, floer, laws);
criterion_main!(benches);
