use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hstrata::quantum_affine::{verify_strata_inequality_with, AffineSpaceSpec, StrataOptions};
use hstrata::schubert::{
    build_schubert, cauchon_entries_with, verify_order_inequality, EnumerationOptions, SchubertSpec,
};
use hstrata::weyl::longest_element;
use hstrata::{Execution, RootSystem};

#[allow(clippy::needless_range_loop)]
fn random_skew(n: usize, seed: u64) -> AffineSpaceSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-3..=3);
            rows[i][j] = v;
            rows[j][i] = -v;
        }
    }
    AffineSpaceSpec::from_rows(&rows).unwrap()
}

const MODES: [(&str, Execution); 2] =
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn strata(c: &mut Criterion) {
    let mut group = c.benchmark_group("strata_inequality");
    group.sample_size(10);
    for n in [8, 11] {
        let spec = random_skew(n, n as u64);
        for (name, exec) in MODES {
            let opts = StrataOptions { execution: exec, ..Default::default() };
            group.bench_with_input(BenchmarkId::new(name, n), &spec, |b, spec| {
                b.iter(|| black_box(verify_strata_inequality_with(spec, &opts).unwrap()))
            });
        }
    }
    group.finish();
}

fn schubert(c: &mut Criterion) {
    let mut group = c.benchmark_group("schubert_pipeline");
    group.sample_size(10);
    for t in ["A3", "B3"] {
        let rs = RootSystem::new(t.parse().unwrap());
        let word = longest_element(&rs).reduced_word(&rs);
        let data = build_schubert(&SchubertSpec::new(rs.cartan_type(), word).unwrap()).unwrap();
        for (name, exec) in MODES {
            let opts = EnumerationOptions { execution: exec, ..Default::default() };
            group.bench_with_input(BenchmarkId::new(name, t), &data, |b, data| {
                b.iter(|| {
                    let entries = cauchon_entries_with(data, &opts).unwrap();
                    black_box(verify_order_inequality(data, &entries, exec))
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, strata, schubert);
criterion_main!(benches);
