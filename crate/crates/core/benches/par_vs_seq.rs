use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use greedy_circle::binary::{search_g_extremes_with, Frontier};
use greedy_circle::circle::{energy_with, midpoint_potential_with};
use greedy_circle::sequences::{canonical_structural, greedy_numerical, GreedyOptions};
use greedy_circle::{CirclePoint, Configuration, Exec, RieszParameter};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn energy(c: &mut Criterion) {
    let mut g = c.benchmark_group("energy");
    let s = RieszParameter::new(0.5).unwrap();
    for n in [1024usize, 4096] {
        let config = canonical_structural(n);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &config, |b, cfg| {
                b.iter(|| energy_with(black_box(cfg), s, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn midpoint(c: &mut Criterion) {
    let mut g = c.benchmark_group("midpoint_potential");
    let s = RieszParameter::new(1.5).unwrap();
    for n in [1u64 << 16, 1 << 20] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| midpoint_potential_with(black_box(n), s, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn greedy(c: &mut Criterion) {
    let mut g = c.benchmark_group("greedy_numerical");
    g.sample_size(10);
    let s = RieszParameter::new(0.5).unwrap();
    let init = Configuration::new(vec![
        CirclePoint::ONE,
        CirclePoint::turn(0.1).unwrap(),
        CirclePoint::turn(0.37).unwrap(),
    ])
    .unwrap();
    for (name, exec) in MODES {
        let options = GreedyOptions {
            exec,
            ..GreedyOptions::default()
        };
        g.bench_function(BenchmarkId::new(name, 128), |b| {
            b.iter(|| greedy_numerical(black_box(&init), s, 128, options).unwrap())
        });
    }
    g.finish();
}

fn theta_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("g_search");
    g.sample_size(10);
    let frontier = Frontier::bits(18);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 18), |b| {
            b.iter(|| search_g_extremes_with(0.5, black_box(&frontier), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, energy, midpoint, greedy, theta_search);
criterion_main!(benches);
