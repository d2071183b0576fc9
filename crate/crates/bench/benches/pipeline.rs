use criterion::{black_box, criterion_group, criterion_main, Criterion};

use floer_bench::{complex, KNOT_K, LEFT_TREFOIL};
use floer_core::graded_modules::random_lemma_trials;
use floer_core::lattice::{alpha_class, blowup_lattice, formal_dimension};
use floer_core::{build_cfk, parse_knot, surgery_homology, FlipMode};

fn cfk(c: &mut Criterion) {
    let mut g = c.benchmark_group("cfk");
    for (name, spec) in [("trefoil", LEFT_TREFOIL), ("K", KNOT_K)] {
        let k = parse_knot(spec).unwrap();
        g.bench_function(name, |b| b.iter(|| build_cfk(black_box(&k)).unwrap()));
    }
    g.finish();
}

fn surgery(c: &mut Criterion) {
    let k = complex(KNOT_K);
    let mut g = c.benchmark_group("surgery");
    g.sample_size(10);
    for mode in [FlipMode::Chain, FlipMode::Homology] {
        g.bench_function(format!("K -1 {}", mode.name()), |b| b.iter(|| surgery_homology(black_box(&k), -1, mode).unwrap()));
    }
    g.finish();
}

fn lemma(c: &mut Criterion) {
    c.bench_function("lemma 100 trials", |b| b.iter(|| random_lemma_trials(black_box(42), 100, 8, 3)));
}

fn lattice(c: &mut Criterion) {
    c.bench_function("formal dimension m=50", |b| {
        b.iter(|| {
            let l = blowup_lattice(black_box(50));
            formal_dimension(&l, &alpha_class(&l, 50).unwrap()).unwrap()
        })
    });
}

criterion_group!(benches, cfk, surgery, lemma, lattice);
criterion_main!(benches);
