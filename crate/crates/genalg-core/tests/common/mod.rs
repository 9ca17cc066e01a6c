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

#![allow(dead_code)]

pub mod tables;

use genalg_core::generators::build::{affine, constant, seg};
use genalg_core::numerics::q;
use genalg_core::{load_fixtures, Direction, ExtReal, Fixture, GeneratedOp, Mode, PiecewiseMonotone, SemigroupDescriptor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn r(n: i64, d: i64) -> ExtReal {
    ExtReal::ratio(n, d)
}

pub fn fixtures() -> Vec<Fixture> {
    load_fixtures().expect("bundled corpus loads")
}

pub fn fixture(id: &str) -> Fixture {
    fixtures().into_iter().find(|f| f.id == id).unwrap_or_else(|| panic!("no fixture {id}"))
}

pub fn op(id: &str) -> GeneratedOp {
    fixture(id).op().expect("fixture builds")
}

pub fn builtins() -> Vec<SemigroupDescriptor> {
    vec![SemigroupDescriptor::sum(), SemigroupDescriptor::max(), SemigroupDescriptor::linprod()]
}

/// A left-continuous non-decreasing generator with at most six segments,
/// breakpoints on a 1/8 grid and values on a 1/4 grid.
pub fn random_generator(rng: &mut impl Rng) -> PiecewiseMonotone {
    random_generator_with(rng, true)
}

/// As [`random_generator`]; with `left == false` each breakpoint belongs to
/// the piece on its right, so the result is right continuous.
pub fn random_generator_with(rng: &mut impl Rng, left: bool) -> PiecewiseMonotone {
    let n = rng.gen_range(1..=6usize);
    let mut cuts: Vec<i64> = (1..8).filter(|_| rng.gen_bool(0.5)).collect();
    while cuts.len() + 1 > n {
        cuts.remove(rng.gen_range(0..cuts.len()));
    }
    cuts.insert(0, 0);
    cuts.push(8);
    let mut level = q(rng.gen_range(0..3), 4);
    let mut segs = Vec::new();
    for (i, w) in cuts.windows(2).enumerate() {
        let (lo, hi) = (q(w[0], 8), q(w[1], 8));
        let last = i + 2 == cuts.len();
        let formula = match rng.gen_range(0..10) {
            0 if last => constant(ExtReal::inf()),
            0..=3 => constant(ExtReal::from_q(level.clone())),
            _ => {
                let slope = q(rng.gen_range(1..=8), 4);
                let b = level.clone() - slope.clone() * lo.clone();
                affine(slope, b)
            }
        };
        let end = match &formula {
            genalg_core::Formula::Affine { a, b } => a.clone() * hi.clone() + b.clone(),
            _ => level.clone(),
        };
        let (lc, hc) = if left { (i == 0, true) } else { (true, last) };
        segs.push(seg(ExtReal::from_q(lo), lc, ExtReal::from_q(hi), hc, formula));
        level = end + q(rng.gen_range(0..3), 4);
    }
    PiecewiseMonotone::new(Direction::NonDecreasing, segs).expect("random generator is valid")
}

pub fn seeded_generator(seed: u64) -> PiecewiseMonotone {
    random_generator(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn seeded_right_generator(seed: u64) -> PiecewiseMonotone {
    random_generator_with(&mut ChaCha8Rng::seed_from_u64(seed), false)
}

pub fn seeded_op(seed: u64, f: &SemigroupDescriptor) -> GeneratedOp {
    GeneratedOp::new(&seeded_generator(seed), f, Mode::Supconorm).expect("supconorm op builds")
}

/// A strictly decreasing generator with `t(1) = 0`, built from the right:
/// affine pieces with negative slope and occasional downward jumps.
pub fn random_decreasing(rng: &mut impl Rng) -> PiecewiseMonotone {
    let mut cuts: Vec<i64> = (1..8).filter(|_| rng.gen_bool(0.4)).collect();
    cuts.insert(0, 0);
    cuts.push(8);
    let mut level = q(0, 1);
    let mut segs = Vec::new();
    let n = cuts.len() - 1;
    for i in (0..n).rev() {
        let (lo, hi) = (q(cuts[i], 8), q(cuts[i + 1], 8));
        let slope = q(rng.gen_range(1..=8), 4);
        // value at the right end of this piece is `level`
        let b = level.clone() + slope.clone() * hi.clone();
        let start = b.clone() - slope.clone() * lo.clone();
        let right_owned = i + 1 == n || rng.gen_bool(0.5);
        segs.push(seg(ExtReal::from_q(lo), i == 0, ExtReal::from_q(hi), right_owned, affine(-slope, b)));
        level = start + if rng.gen_bool(0.3) { q(rng.gen_range(1..4), 4) } else { q(0, 1) };
    }
    segs.reverse();
    // a piece not owning its right end hands it to its neighbour
    for i in 0..segs.len() - 1 {
        let owned = segs[i].hi_closed;
        segs[i + 1].lo_closed = !owned;
    }
    PiecewiseMonotone::new(Direction::NonIncreasing, segs).expect("decreasing generator is valid")
}

pub fn seeded_decreasing(seed: u64) -> PiecewiseMonotone {
    random_decreasing(&mut ChaCha8Rng::seed_from_u64(seed))
}
