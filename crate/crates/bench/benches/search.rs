// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ldcforge::decpoly::{brute_force_m2, collision_search};

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("collision_search");
    g.sample_size(10);
    for m in [511u64, 2047, 8_388_607] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, m| {
            b.iter(|| collision_search(black_box(*m)))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("brute_force_m2");
    g.sample_size(10);
    for m in [511u64, 2047] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, m| {
            b.iter(|| brute_force_m2(black_box(*m)))
        });
    }
    g.finish();
}

criterion_group!(benches, search);
criterion_main!(benches);
