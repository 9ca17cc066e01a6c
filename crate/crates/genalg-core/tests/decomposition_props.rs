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

mod common;

use common::{builtins, r, seeded_generator};
use genalg_core::{
    brute_force_assoc, weak_pseudo_inverse, ExtReal, GeneratedOp, IntervalPointSet, Mode, PiecewiseMonotone,
    RangeDecomposition, StarSystem,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

/// The largest point of `M ∩ [0, x]`, or `t(0)` below the range.
fn g_m_oracle(m: &IntervalPointSet, t0: &ExtReal, x: &ExtReal) -> ExtReal {
    match m.intersect(&IntervalPointSet::closed(ExtReal::zero(), x.clone())).sup() {
        Some((s, true)) => s,
        Some((s, false)) => panic!("sup {s} of M below {x} is not attained"),
        None => t0.clone(),
    }
}

fn value_grid(dec: &RangeDecomposition) -> Vec<ExtReal> {
    let eps = r(1, 1000);
    let mut vs: Vec<ExtReal> = (0..=120).map(|k| r(k, 30)).collect();
    for g in &dec.gaps {
        for e in [&g.b, &g.d] {
            vs.push(e.clone());
            if let Some(q) = e.as_q() {
                vs.push(ExtReal::from_q(q + eps.as_q().unwrap()));
                if let Ok(v) = ExtReal::try_from_q(q - eps.as_q().unwrap()) {
                    vs.push(v);
                }
            }
        }
    }
    vs.push(ExtReal::inf());
    vs.sort();
    vs.dedup();
    vs
}

fn m_grid(t: &PiecewiseMonotone) -> Vec<ExtReal> {
    let mut ms: Vec<ExtReal> = t.refined_grid().iter().map(|x| t.at(x)).collect();
    ms.extend(t.range_of().sample_points(2));
    ms.sort();
    ms.dedup();
    ms
}

/// Brute-force associativity of a binary operation on a finite grid.
fn assoc_on(grid: &[ExtReal], op: impl Fn(&ExtReal, &ExtReal) -> ExtReal) -> bool {
    grid.iter().all(|a| {
        grid.iter().all(|b| {
            let ab = op(a, b);
            grid.iter().all(|c| op(&ab, c) == op(a, &op(b, c)))
        })
    })
}

proptest! {
    #[test]
    fn reconstruction_and_projection(seed in any::<u64>()) {
        let t = seeded_generator(seed);
        let dec = RangeDecomposition::decompose(&t).unwrap();
        let m = t.range_of();
        prop_assert_eq!(dec.reconstruct(), m.clone());
        let weak = weak_pseudo_inverse(&t);
        for v in value_grid(&dec) {
            let g = dec.g_m(&v);
            prop_assert_eq!(g.clone(), t.at(&weak.at(&v)), "G_M({})", v);
            prop_assert_eq!(g, g_m_oracle(&m, &t.t0(), &v), "G_M({})", v);
        }
    }

    #[test]
    fn projection_collapses_exactly_empty_intervals(seed in any::<u64>()) {
        let t = seeded_generator(seed);
        let dec = RangeDecomposition::decompose(&t).unwrap();
        let m_star = t.range_of().difference(&IntervalPointSet::point(t.t0()));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let sup = t.refined_grid().iter().map(|x| t.at(x)).filter(|v| !v.is_inf()).max().unwrap_or_else(ExtReal::one);
        let top = (sup.to_f64() * 32.0) as i64 + 40;
        for _ in 0..500 {
            let a = r(rng.gen_range(0..top), 32);
            let b = r(rng.gen_range(0..top), 32);
            let (lo, hi) = (a.clone().min(b.clone()), a.clone().max(b.clone()));
            let empty = lo == hi || IntervalPointSet::open_closed(lo, hi).intersect(&m_star).is_empty();
            prop_assert_eq!(dec.g_m(&a) == dec.g_m(&b), empty, "{} {}", a, b);
        }
    }

    #[test]
    fn star_round_trips(seed in any::<u64>()) {
        let t = seeded_generator(seed);
        let dec = RangeDecomposition::decompose(&t).unwrap();
        let weak = weak_pseudo_inverse(&t);
        let ms = m_grid(&t);
        let mut ds: Vec<ExtReal> = ms.iter().map(|v| weak.at(v)).collect();
        ds.sort();
        ds.dedup();
        for f in builtins() {
            let star = StarSystem::new(&t, &f).unwrap();
            for x in &ms {
                for y in &ms {
                    let lhs = dec.otimes(&f, x, y).unwrap();
                    let rhs = star.t_star(&star.f_star(&weak.at(x), &weak.at(y)).unwrap()).unwrap();
                    prop_assert_eq!(lhs, rhs, "{} ⊗ {}", x, y);
                }
            }
            for x in &ds {
                prop_assert!(star.d().contains(x));
                for y in &ds {
                    let lhs = star.f_star(x, y).unwrap();
                    let prod = dec.otimes(&f, &star.t_star(x).unwrap(), &star.t_star(y).unwrap()).unwrap();
                    prop_assert_eq!(lhs, weak.at(&prod), "F*({}, {})", x, y);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn associativity_transfers(seed in any::<u64>()) {
        let t = seeded_generator(seed);
        let dec = RangeDecomposition::decompose(&t).unwrap();
        let weak = weak_pseudo_inverse(&t);
        for f in builtins() {
            let op = GeneratedOp::new(&t, &f, Mode::Supconorm).unwrap();
            let grid = op.default_grid();
            let mut ms: Vec<ExtReal> = grid.iter().map(|x| t.at(x)).collect();
            ms.sort();
            ms.dedup();
            let mut ds: Vec<ExtReal> = ms.iter().map(|v| weak.at(v)).collect();
            ds.sort();
            ds.dedup();
            let star = StarSystem::new(&t, &f).unwrap();
            let t_assoc = brute_force_assoc(&op, &grid).unwrap().is_none();
            let otimes_assoc = assoc_on(&ms, |a, b| dec.otimes(&f, a, b).unwrap());
            let star_assoc = assoc_on(&ds, |a, b| star.f_star(a, b).unwrap());
            prop_assert_eq!(otimes_assoc, star_assoc, "{}", f.name());
            prop_assert_eq!(otimes_assoc, t_assoc, "{}", f.name());
        }
    }
}
