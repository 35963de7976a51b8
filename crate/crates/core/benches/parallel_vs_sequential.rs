use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use aisemiring::catalog;
use aisemiring::criteria::{oracle_sweep, Family, Lemma};
use aisemiring::enumerate::{enumerate_ai_semirings, EnumerateOptions};
use aisemiring::eval::Evaluator;
use aisemiring::par::Execution;
use aisemiring::Identity;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    for n in [3, 4] {
        for (label, execution) in MODES {
            let opts = EnumerateOptions { execution, ..Default::default() };
            g.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| b.iter(|| enumerate_ai_semirings(n, opts).count()));
        }
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle_sweep");
    g.sample_size(10);
    for lemma in [Lemma::S2, Lemma::S10] {
        for (label, execution) in MODES {
            g.bench_function(BenchmarkId::new(label, lemma.name()), |b| {
                b.iter(|| oracle_sweep(lemma, Family::default(), execution).checked)
            });
        }
    }
    g.finish();
}

fn evaluator(c: &mut Criterion) {
    // `holds` visits every assignment; `fails` stops at the first witness.
    let prod = catalog::resolve("@prod:S_(4,12),S_(4,20)").unwrap();
    let holds: Identity = "x1^2x2^2x3^2x4^2x5^2 ≈ x1^4x2^2x3^2x4^2x5^2".parse().unwrap();
    let fails: Identity = "x1x2 + x3x2x4 + x5 ≈ x1x2 + x3x2x4 + x5x2".parse().unwrap();
    let mut g = c.benchmark_group("evaluator");
    g.sample_size(10);
    for (label, execution) in MODES {
        let ev = Evaluator { execution, ..Evaluator::default() };
        g.bench_function(BenchmarkId::new(label, "order16-holds"), |b| b.iter(|| ev.satisfies(&prod, &holds).unwrap()));
        g.bench_function(BenchmarkId::new(label, "order16-fails"), |b| b.iter(|| ev.satisfies(&prod, &fails).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, census, oracle, evaluator);
criterion_main!(benches);
