use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use line_bench::{Fixture, SEED};
use line_core::pke::{decrypt, decrypt_checked, encrypt, keygen};
use line_core::ParamSet;

fn pipeline(c: &mut Criterion) {
    for (name, p) in ParamSet::PRESETS {
        let f = Fixture::new(p, 32);
        let mut g = c.benchmark_group(name);
        g.throughput(Throughput::Elements(f.messages.len() as u64));
        g.bench_function("keygen", |b| {
            b.iter(|| keygen(black_box(p), &SEED).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("encrypt", f.messages.len()), &f, |b, f| {
            b.iter(|| {
                for m in &f.messages {
                    black_box(encrypt(&f.pk, m).unwrap());
                }
            })
        });
        g.bench_with_input(
            BenchmarkId::new("decrypt", f.ciphertexts.len()),
            &f,
            |b, f| {
                b.iter(|| {
                    for ct in &f.ciphertexts {
                        black_box(decrypt(&f.sk, ct).unwrap());
                    }
                })
            },
        );
        g.bench_with_input(
            BenchmarkId::new("decrypt_checked", f.ciphertexts.len()),
            &f,
            |b, f| {
                b.iter(|| {
                    for ct in &f.ciphertexts {
                        black_box(decrypt_checked(&f.sk, &f.pk, ct).unwrap());
                    }
                })
            },
        );
        g.finish();
    }
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
