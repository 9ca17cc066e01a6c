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

use common::{r, seeded_generator};
use genalg_core::{ExtReal, Formula, PiecewiseMonotone};
use proptest::prelude::*;

fn fine_grid(n: i64) -> Vec<ExtReal> {
    (0..=n).map(|k| r(k, n)).collect()
}

/// Membership in the range, from the segment formulas alone.
fn in_range_oracle(t: &PiecewiseMonotone, y: &ExtReal) -> bool {
    t.segments().iter().any(|s| match &s.formula {
        Formula::Constant(c) => c == y,
        Formula::Affine { a, b } => {
            let Some(yq) = y.as_q() else { return false };
            if a == &num::zero() {
                return b == yq;
            }
            ExtReal::try_from_q((yq - b) / a).is_ok_and(|x| s.contains(&x))
        }
        _ => unreachable!("random generators use constant and affine pieces"),
    })
}

proptest! {
    #[test]
    fn left_continuous_values_are_left_limits(seed in any::<u64>()) {
        let t = seeded_generator(seed);
        prop_assert!(t.validate().left_continuous);
        let mut xs = t.breakpoints();
        xs.extend(fine_grid(97));
        for x in xs.iter().filter(|x| !x.is_zero()) {
            prop_assert_eq!(t.eval(x).unwrap(), t.left_limit(x).unwrap(), "x = {}", x);
        }
    }

    #[test]
    fn range_matches_pointwise_values(seed in any::<u64>()) {
        let t = seeded_generator(seed);
        let m = t.range_of();
        for x in fine_grid(1000) {
            prop_assert!(m.contains(&t.eval(&x).unwrap()));
        }
        let top = t.refined_grid().iter().map(|x| t.at(x)).filter(|v| !v.is_inf()).max().unwrap_or_else(ExtReal::one);
        let top = top.as_q().unwrap().clone() + num::one::<genalg_core::Q>();
        for k in 0..=1000 {
            let y = ExtReal::from_q(top.clone() * genalg_core::numerics::q(k, 1000));
            prop_assert_eq!(m.contains(&y), in_range_oracle(&t, &y), "y = {} in {}", y, m);
        }
        prop_assert_eq!(m.contains(&ExtReal::inf()), in_range_oracle(&t, &ExtReal::inf()));
    }

    #[test]
    fn strictly_increasing_on_plateau_free_points(seed in any::<u64>()) {
        let t = seeded_generator(seed);
        let d = t.plateau_data().d;
        let mut reps: Vec<ExtReal> = t.refined_grid();
        reps.extend(d.sample_points(3));
        reps.retain(|x| d.contains(x));
        reps.sort();
        reps.dedup();
        for w in reps.windows(2) {
            prop_assert!(t.at(&w[0]) < t.at(&w[1]), "t({}) = {} vs t({}) = {}", w[0], t.at(&w[0]), w[1], t.at(&w[1]));
        }
    }
}
