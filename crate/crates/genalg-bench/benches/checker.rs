//   Copyright 2026 genalg developers
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use genalg_core::{brute_force_assoc, f_condition_check, load_fixtures, GeneratedOp};

fn ops() -> Vec<(String, GeneratedOp)> {
    load_fixtures()
        .unwrap()
        .into_iter()
        .filter(|fx| fx.id.starts_with("FIX-6.1"))
        .map(|fx| (fx.id.clone(), fx.op().unwrap()))
        .collect()
}

fn f_condition(c: &mut Criterion) {
    let mut g = c.benchmark_group("f_condition_check");
    g.sample_size(10);
    for (id, op) in ops() {
        g.bench_function(id, |b| b.iter(|| f_condition_check(black_box(&op)).unwrap()));
    }
    g.finish();
}

fn brute_force(c: &mut Criterion) {
    let mut g = c.benchmark_group("brute_force_assoc");
    g.sample_size(10);
    for (id, op) in ops() {
        let grid = op.default_grid();
        g.bench_function(id, |b| b.iter(|| brute_force_assoc(black_box(&op), &grid).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, f_condition, brute_force);
criterion_main!(benches);
