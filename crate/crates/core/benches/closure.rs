use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hpkit_core::hairpin::{hi_closure_bounded_sequential, DEFAULT_WORD_CAP};
use hpkit_core::{Alphabet, HiParams, LanguageSet, Side};

fn seeds(alphabet: &Alphabet) -> LanguageSet {
    ["aab", "bba", "abab"]
        .iter()
        .map(|t| alphabet.parse_word(t).expect("seed word"))
        .collect()
}

fn bench_closure(c: &mut Criterion) {
    let alphabet = Alphabet::new(&["a", "b"], &[("a", "b")], false).expect("alphabet");
    let lang = seeds(&alphabet);
    let params = HiParams::new(2, 1, Side::Both).expect("params");
    let mut group = c.benchmark_group("bounded_closure");
    group.sample_size(10);
    for max_len in [8usize, 10, 12] {
        group.bench_with_input(
            BenchmarkId::new("sequential", max_len),
            &max_len,
            |b, &max_len| {
                b.iter(|| {
                    hi_closure_bounded_sequential(
                        &lang,
                        &params,
                        max_len,
                        DEFAULT_WORD_CAP,
                        &alphabet,
                    )
                    .expect("closure")
                })
            },
        );
        #[cfg(feature = "parallel")]
        group.bench_with_input(
            BenchmarkId::new("parallel", max_len),
            &max_len,
            |b, &max_len| {
                use hpkit_core::hairpin::hi_closure_bounded_parallel;
                b.iter(|| {
                    hi_closure_bounded_parallel(
                        &lang,
                        &params,
                        max_len,
                        DEFAULT_WORD_CAP,
                        &alphabet,
                    )
                    .expect("closure")
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_closure);
criterion_main!(benches);
