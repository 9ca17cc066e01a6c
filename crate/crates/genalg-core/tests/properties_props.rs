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

use common::*;
use genalg_core::numerics::{q, Q};
use num::Signed;
use genalg_core::properties::{grid_cancel_witness, idempotence_criterion, uniform_grid};
use genalg_core::{
    cancellation_check, check_generator_condition, continuity_check, diagonal_powers, idempotent_points, limits_at,
    ExtReal, GeneratedOp, Mode,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn supconorm_fixture_ops() -> Vec<(String, GeneratedOp)> {
    fixtures()
        .into_iter()
        .filter_map(|fx| {
            let op = fx.op().ok()?;
            (op.mode() == Mode::Supconorm).then(|| (fx.id.clone(), op))
        })
        .collect()
}

/// The criterion and the exact point set both match `T(x, x) = x`.
fn idempotence_agrees(op: &GeneratedOp) -> Result<(), String> {
    let set = idempotent_points(op).map_err(|e| e.to_string())?.points;
    for x in op.default_grid() {
        let direct = op.eval(&x, &x).unwrap() == x;
        let crit = idempotence_criterion(op, &x).unwrap();
        if crit != direct || set.contains(&x) != direct {
            return Err(format!("x = {x}: T(x,x) = x is {direct}, criterion {crit}, set {}", set.contains(&x)));
        }
    }
    Ok(())
}

#[test]
fn idempotence_criterion_on_fixtures() {
    let jump = op("FIX-S7");
    assert!(idempotent_points(&jump).is_err());
    for (id, op) in supconorm_fixture_ops() {
        if !op.f().flags().gamma_member || !op.t().validate().left_continuous {
            continue;
        }
        if let Err(e) = idempotence_agrees(&op) {
            panic!("{id}: {e}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn idempotence_criterion_matches_diagonal(seed in any::<u64>(), k in 0usize..3) {
        let op = seeded_op(seed, &builtins()[k]);
        prop_assert!(idempotence_agrees(&op).is_ok(), "{:?}", idempotence_agrees(&op));
    }

    #[test]
    fn orbits_rise_under_the_generator_condition(seed in any::<u64>(), k in 0usize..3) {
        let op = seeded_op(seed, &builtins()[k]);
        if check_generator_condition(&op).unwrap().holds {
            for x in op.default_grid().into_iter().filter(|x| !x.is_zero() && *x < ExtReal::one()) {
                let orbit = diagonal_powers(&op, &x, 16).unwrap();
                prop_assert_eq!(&orbit.powers[0], &x);
                for w in orbit.powers.windows(2) {
                    prop_assert!(w[0] <= w[1], "orbit of {} falls: {:?}", x, orbit.powers);
                }
            }
        }
    }

    #[test]
    fn grid_witness_refutes_cancellation(seed in any::<u64>(), linprod in any::<bool>()) {
        let f = if linprod { genalg_core::SemigroupDescriptor::linprod() } else { genalg_core::SemigroupDescriptor::sum() };
        let op = seeded_op(seed, &f);
        if let Ok(rep) = cancellation_check(&op) {
            if let Some(w) = grid_cancel_witness(&op, &op.default_grid()).unwrap() {
                prop_assert!(!rep.conditionally_cancellative, "witness {:?}", w);
            }
            if let Some(w) = &rep.grid_witness {
                let (a, b) = (op.eval(&w.x1, &w.y).unwrap(), op.eval(&w.x2, &w.y).unwrap());
                prop_assert!(w.x1 != w.x2 && a == b && a < ExtReal::one());
            }
        }
    }
}

#[test]
fn cancellation_verdict_matches_grid_search_on_fixtures() {
    let mut bad = Vec::new();
    for (id, op) in supconorm_fixture_ops() {
        let Ok(rep) = cancellation_check(&op) else { continue };
        let literal = grid_cancel_witness(&op, &op.default_grid()).unwrap();
        if !rep.grid_agrees || rep.conditionally_cancellative != literal.is_none() {
            bad.push(format!(
                "{id}: analytic {} refined search {:?} default grid {:?}",
                rep.conditionally_cancellative, rep.grid_witness, literal
            ));
        }
    }
    assert!(bad.is_empty(), "disagreements:\n{}", bad.join("\n"));
}

/// `t = 2x + 1/2` on `[0, 1/8]`, `7x/4 + 25/32` on `(1/8, 3/8]`, `2x + 11/16`
/// on `(3/8, 1]` under SUM: the image condition fails only at `F(t0, t0) = 1`,
/// which no second pair reaches.
#[test]
fn image_condition_fails_without_a_collision() {
    let op = seeded_op(0, &genalg_core::SemigroupDescriptor::sum());
    assert_eq!(op.t().t0(), r(1, 2));
    let rep = cancellation_check(&op).unwrap();
    assert!(!rep.conditionally_cancellative);
    assert!(grid_cancel_witness(&op, &uniform_grid(401)).unwrap().is_none());
    // T(·, 0) is injective below 1: x ↦ t⁻¹(t(x) + 1/2)
    let vals: Vec<_> = uniform_grid(401).iter().map(|x| op.eval(x, &ExtReal::zero()).unwrap()).collect();
    for w in vals.windows(2) {
        assert!(w[0] < w[1] || w[1] == ExtReal::one());
    }
}

// ---------------------------------------------------------------------------
// continuity against approach sequences

const APPROACH: u32 = 10;

/// Along the approach `T` is eventually affine in `h` (quadratic under
/// LINPROD), so the last term is within twice the last step of the limit.
fn converges_to(seq: &[ExtReal], lim: &ExtReal) -> bool {
    let n = seq.len();
    let (a, b, l) = (seq[n - 2].as_q().unwrap(), seq[n - 1].as_q().unwrap(), lim.as_q().unwrap());
    let step = (a - b).abs();
    (b - l).abs() <= step.clone() + step
}

fn shifted(v: &ExtReal, h: &Q) -> Option<ExtReal> {
    ExtReal::try_from_q(v.as_q()? + h).ok()
}

/// `T` along `(x ∓ h_k, y ∓ h_k)` with `h_k = 2⁻ᵏ / 64`; an end of `[0, 1]`
/// stays fixed.
fn approach(op: &GeneratedOp, x: &ExtReal, y: &ExtReal, from_left: bool) -> Vec<ExtReal> {
    let step = |v: &ExtReal, h: &Q| -> ExtReal {
        let end = if from_left { v.is_zero() } else { *v == ExtReal::one() };
        if end {
            v.clone()
        } else {
            shifted(v, &if from_left { -h.clone() } else { h.clone() }).unwrap()
        }
    };
    (1..=APPROACH)
        .map(|k| {
            let h = q(1, 64 << k);
            op.eval(&step(x, &h), &step(y, &h)).unwrap()
        })
        .collect()
}

fn near_breakpoint(rng: &mut impl Rng, bps: &[ExtReal]) -> ExtReal {
    let b = bps[rng.gen_range(0..bps.len())].clone();
    match shifted(&b, &q(rng.gen_range(-1..=1), 32)) {
        Some(v) if v <= ExtReal::one() => v,
        _ => b,
    }
}

#[test]
fn continuity_flags_match_approach_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let fs = builtins();
    let mut checked = 0;
    for seed in 0..40u64 {
        let op = seeded_op(1000 + seed, &fs[seed as usize % 3]);
        let bps = op.t().breakpoints();
        for _ in 0..5 {
            let (x, y) = (near_breakpoint(&mut rng, &bps), near_breakpoint(&mut rng, &bps));
            let pc = limits_at(&op, &x, &y).unwrap();
            for from_left in [true, false] {
                let seq = approach(&op, &x, &y, from_left);
                let fixed = if from_left { x.is_zero() && y.is_zero() } else { x == ExtReal::one() && y == ExtReal::one() };
                // T is monotone in each argument, so the sequence is monotone
                for w in seq.windows(2) {
                    assert!(if from_left { w[0] <= w[1] } else { w[0] >= w[1] }, "seed {seed} ({x}, {y})");
                }
                let (lim, flag) = if from_left { (&pc.left, pc.left_continuous) } else { (&pc.right, pc.right_continuous) };
                let lim = if fixed { &pc.value } else { lim };
                assert!(converges_to(&seq, lim), "seed {seed} ({x}, {y}) left={from_left}: {:?} vs {lim}", seq);
                assert_eq!(converges_to(&seq, &pc.value), flag, "seed {seed} ({x}, {y}) left={from_left}");
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 200);
}

#[test]
fn strictly_increasing_left_continuous_t_gives_left_continuous_t_op() {
    let mut seen = 0;
    for seed in 0..400u64 {
        let t = seeded_generator(seed);
        if !t.is_strict() {
            continue;
        }
        for f in builtins() {
            let op = GeneratedOp::new(&t, &f, Mode::Supconorm).unwrap();
            let rep = continuity_check(&op).unwrap();
            assert!(rep.left_failures.is_empty(), "seed {seed} {}: {:?}", f.name(), rep.left_failures.first());
        }
        seen += 1;
    }
    assert!(seen >= 20, "only {seen} strictly increasing generators");
}
