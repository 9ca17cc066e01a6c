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

use common::{builtins, fixtures, seeded_decreasing, seeded_op};
use genalg_core::properties::axioms_on_grid;
use genalg_core::{
    brute_force_assoc, check_generator_condition, f_condition_check, frak_t, verify_triple, ExtReal, GeneratedOp,
    IntervalPointSet, Mode, SemigroupDescriptor, Verdict,
};
use proptest::prelude::*;

/// Checker against the grid oracle; returns the verdict.
fn agree(op: &GeneratedOp) -> Result<Verdict, TestCaseError> {
    let rep = f_condition_check(op).unwrap();
    let found = brute_force_assoc(op, &op.default_grid()).unwrap();
    match rep.verdict {
        Verdict::Associative => prop_assert!(found.is_none(), "grid witness {:?}", found),
        Verdict::NotAssociative => {
            let w = rep.witness.as_ref().expect("a NOT_ASSOCIATIVE verdict carries a witness");
            let again = verify_triple(op, &w.x, &w.y, &w.z).unwrap();
            prop_assert_eq!(&again, w);
            prop_assert_ne!(&again.lhs, &again.rhs);
        }
        Verdict::Unknown => prop_assert!(false, "checker could not decide"),
    }
    Ok(rep.verdict)
}

#[test]
fn checker_agrees_with_brute_force_on_seeded_generators() {
    let mut seen = std::collections::BTreeMap::new();
    for seed in 0..24u64 {
        for f in builtins() {
            let v = agree(&seeded_op(seed, &f)).unwrap_or_else(|e| panic!("seed {seed} {}: {e}", f.name()));
            *seen.entry(format!("{v:?}")).or_insert(0) += 1;
        }
    }
    // both verdicts are exercised
    assert!(seen.len() == 2, "{seen:?}");
}

#[test]
fn checker_agrees_with_brute_force_on_fixtures() {
    for fx in fixtures() {
        let Ok(op) = fx.op() else { continue };
        if op.dec().is_none() || op.f().is_table() {
            continue;
        }
        agree(&op).unwrap_or_else(|e| panic!("{}: {e}", fx.id));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn checker_agrees_with_brute_force(seed in any::<u64>(), k in 0usize..3) {
        agree(&seeded_op(seed, &builtins()[k]))?;
    }

    #[test]
    fn strict_verdict_is_the_frak_t_test(seed in any::<u64>(), linprod in any::<bool>()) {
        let f = if linprod { SemigroupDescriptor::linprod() } else { SemigroupDescriptor::sum() };
        let op = seeded_op(seed, &f);
        let rep = f_condition_check(&op).unwrap();
        let ft = frak_t(op.dec().unwrap(), op.f()).unwrap();
        let m = op.range();
        let m_star = m.difference(&IntervalPointSet::point(op.t().t0()));
        let disjoint = ft.t.intersect(&m_star).is_empty();
        prop_assert_eq!(rep.verdict == Verdict::Associative, disjoint, "T = {}, M = {}", ft.t, m);
        prop_assert!(!ft.t.contains(&ExtReal::zero()));
        if op.t().t0().is_zero() {
            prop_assert_eq!(disjoint, ft.t.intersect(m).is_empty());
        }
    }

    #[test]
    fn generator_condition_gives_a_supconorm(seed in any::<u64>(), k in 0usize..3) {
        let op = seeded_op(seed, &builtins()[k]);
        if check_generator_condition(&op).unwrap().holds {
            let grid = op.default_grid();
            for x in &grid {
                for y in &grid {
                    prop_assert!(op.eval(x, y).unwrap() >= x.clone().max(y.clone()));
                }
            }
            prop_assert!(brute_force_assoc(&op, &grid).unwrap().is_none());
            prop_assert_eq!(f_condition_check(&op).unwrap().verdict, Verdict::Associative);
        }
    }

    #[test]
    fn decreasing_generator_condition_gives_a_tnorm(seed in any::<u64>()) {
        let t = seeded_decreasing(seed);
        let op = GeneratedOp::new(&t, &SemigroupDescriptor::sum(), Mode::Norm).unwrap();
        if check_generator_condition(&op).unwrap().holds {
            let rep = axioms_on_grid(&op, &op.default_grid()).unwrap();
            prop_assert!(rep.is_tnorm(), "{:?}", rep);
        }
    }
}

#[test]
fn decreasing_condition_is_often_met() {
    let met = (0..40u64)
        .filter(|s| {
            let op = GeneratedOp::new(&seeded_decreasing(*s), &SemigroupDescriptor::sum(), Mode::Norm).unwrap();
            check_generator_condition(&op).unwrap().holds
        })
        .count();
    assert!(met >= 5, "only {met} of 40 generators meet the condition");
}
