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

//! Pseudo-inverse, weak pseudo-inverse and quasi-inverse bounds, built as
//! closed-form piecewise functions on `[0, ∞]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{Direction, Formula, PiecewiseMonotone, Rel, Segment};
use crate::numerics::{ExtReal, IntervalPointSet};

fn sup_or(set: &IntervalPointSet, empty: ExtReal) -> ExtReal {
    set.sup().map(|(s, _)| s).unwrap_or(empty)
}

fn inf_or(set: &IntervalPointSet, empty: ExtReal) -> ExtReal {
    set.inf().map(|(s, _)| s).unwrap_or(empty)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Weak,
    Pseudo,
    Wedge,
    Vee,
}

fn oracle(t: &PiecewiseMonotone, kind: Kind, y: &ExtReal) -> ExtReal {
    let inc = t.is_non_decreasing();
    let zero = ExtReal::zero;
    match kind {
        Kind::Weak => sup_or(&t.level_set(if inc { Rel::Le } else { Rel::Ge }, y), zero()),
        Kind::Pseudo => sup_or(&t.level_set(if inc { Rel::Lt } else { Rel::Gt }, y), zero()),
        Kind::Wedge => sup_or(&t.level_set(Rel::Lt, y), zero()),
        Kind::Vee => inf_or(&t.level_set(Rel::Gt, y), ExtReal::one()),
    }
}

struct Piece {
    lo: ExtReal,
    hi: ExtReal,
    formula: Formula,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Attach {
    Left,
    Right,
    Alone,
}

/// Builds an inverse-like function on `[0, ∞]` from its pointwise oracle.
fn build(t: &PiecewiseMonotone, kind: Kind) -> PiecewiseMonotone {
    let direction = t.direction();
    if t.is_constant() {
        let c = match kind {
            Kind::Weak | Kind::Vee => ExtReal::one(),
            Kind::Pseudo | Kind::Wedge => ExtReal::zero(),
        };
        if matches!(kind, Kind::Weak | Kind::Pseudo) {
            let seg = Segment::new(ExtReal::zero(), true, ExtReal::Inf, true, Formula::Constant(c));
            return PiecewiseMonotone::with_domain(direction, vec![seg], ExtReal::Inf)
                .expect("constant inverse");
        }
    }
    let mut ys: Vec<ExtReal> = vec![ExtReal::zero(), ExtReal::Inf];
    for s in t.segments() {
        ys.push(s.limit_at_lo());
        ys.push(s.limit_at_hi());
    }
    ys.sort();
    ys.dedup();

    let strict_images: Vec<(&Segment, IntervalPointSet)> = t
        .segments()
        .iter()
        .filter(|s| !s.is_point() && !s.formula.is_constant())
        .map(|s| {
            let im = s.image();
            let (lo, _) = im.inf().unwrap();
            let (hi, _) = im.sup().unwrap();
            (s, IntervalPointSet::open(lo, hi))
        })
        .collect();

    // even indices are the breakpoints, odd indices the open gaps between them
    let mut pieces: Vec<Piece> = Vec::new();
    for (i, y) in ys.iter().enumerate() {
        pieces.push(Piece { lo: y.clone(), hi: y.clone(), formula: Formula::Constant(oracle(t, kind, y)) });
        let Some(next) = ys.get(i + 1) else { break };
        let rep = ExtReal::midpoint(y, next);
        let formula = strict_images
            .iter()
            .find(|(_, im)| im.contains(&rep))
            .and_then(|(s, _)| s.formula.inverse())
            .unwrap_or_else(|| Formula::Constant(oracle(t, kind, &rep)));
        pieces.push(Piece { lo: y.clone(), hi: next.clone(), formula });
    }

    // attach each breakpoint to a neighbour that agrees with it, constants first
    let n = pieces.len();
    let mut attach = vec![Attach::Alone; n];
    for i in (0..n).step_by(2) {
        let y = &pieces[i].lo;
        let v = pieces[i].formula.value_at(y);
        let agrees = |j: usize| pieces[j].formula.value_at(y) == v;
        let left = i > 0 && agrees(i - 1);
        let right = i + 1 < n && agrees(i + 1);
        attach[i] = match (left, right) {
            (true, true) if !pieces[i - 1].formula.is_constant() && pieces[i + 1].formula.is_constant() => {
                Attach::Right
            }
            (true, _) => Attach::Left,
            (false, true) => Attach::Right,
            (false, false) => Attach::Alone,
        };
    }
    let mut segs: Vec<Segment> = Vec::new();
    for (i, p) in pieces.into_iter().enumerate() {
        let seg = if i % 2 == 0 {
            if attach[i] != Attach::Alone {
                continue;
            }
            Segment::new(p.lo, true, p.hi, true, p.formula)
        } else {
            let lo_closed = attach[i - 1] == Attach::Right;
            let hi_closed = attach[i + 1] == Attach::Left;
            Segment::new(p.lo, lo_closed, p.hi, hi_closed, p.formula)
        };
        if let Some(last) = segs.last_mut() {
            if last.formula == seg.formula && last.hi == seg.lo && (last.hi_closed || seg.lo_closed) {
                last.hi = seg.hi;
                last.hi_closed = seg.hi_closed;
                continue;
            }
        }
        segs.push(seg);
    }
    PiecewiseMonotone::with_domain(direction, segs, ExtReal::Inf).expect("inverse construction is well formed")
}

/// `t⁽⁻¹⁾(y) = sup{ x : (t(x) − y)(t(1) − t(0)) < 0 }`, with `sup ∅ = 0`.
pub fn pseudo_inverse(t: &PiecewiseMonotone) -> PiecewiseMonotone {
    build(t, Kind::Pseudo)
}

/// `t^[-1](y) = sup{ x : t(x) ≤ y }` (non-decreasing) or
/// `sup{ x : t(x) ≥ y }` (non-increasing); `≡ 1` for constant `t`.
pub fn weak_pseudo_inverse(t: &PiecewiseMonotone) -> PiecewiseMonotone {
    build(t, Kind::Weak)
}

/// Lower and upper quasi-inverse bounds
/// `t^∧(y) = sup{ x : t(x) < y }` and `t^∨(y) = inf{ x : t(x) > y }`.
pub fn quasi_inverse_bounds(t: &PiecewiseMonotone) -> Result<(PiecewiseMonotone, PiecewiseMonotone)> {
    if !t.is_non_decreasing() {
        return Err(Error::PreconditionViolated("quasi-inverse bounds need a non-decreasing t".into()));
    }
    Ok((build(t, Kind::Wedge), build(t, Kind::Vee)))
}

/// `δ > 0` with `t` constant on `[x0, x0 + δ)` and jumping at `x0 + δ`,
/// when such a plateau starts at `x0`.
pub fn plateau_witness(t: &PiecewiseMonotone, tinv: &PiecewiseMonotone, x0: &ExtReal) -> Result<Option<ExtReal>> {
    if *x0 >= ExtReal::one() {
        return Err(Error::DomainError(format!("{x0} is outside [0, 1)")));
    }
    let v = t.at(x0);
    let u = tinv.at(&v);
    let tu = t.at(&u);
    let jumps = if t.is_non_decreasing() { tu > v } else { tu < v };
    Ok(jumps.then(|| {
        let (a, b) = (u.as_q().unwrap(), x0.as_q().unwrap());
        ExtReal::from_q(a - b)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<ExtReal>,
}

impl Check {
    pub(crate) fn from_witness(witness: Option<ExtReal>) -> Self {
        Check { holds: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub left_continuous: bool,
    pub strict: bool,
    /// `t(t^[-1](t(x))) = t(x)`
    pub retraction: Check,
    /// `t^[-1](t(x)) ≥ x`
    pub inverse_above_identity: Check,
    /// `t^[-1] = t⁽⁻¹⁾` (witness is a `y`)
    pub inverses_coincide: Check,
    /// Coincidence agrees with strict monotonicity.
    pub coincidence_matches_strictness: bool,
    /// Some plateau preimage is open on the right.
    pub plateau_set_nonempty: bool,
    /// Pointwise: some grid `x` has `t(t^[-1](t(x))) ≠ t(x)`.
    pub plateau_set_nonempty_pointwise: bool,
    pub plateau_equivalence_holds: bool,
    /// Left continuity or strictness forces the retraction identity.
    pub retraction_consistent_with_hypotheses: bool,
}

pub fn inverse_identities_report(t: &PiecewiseMonotone) -> IdentityReport {
    let weak = weak_pseudo_inverse(t);
    let pseudo = pseudo_inverse(t);
    let grid = t.refined_grid();
    let rep = t.validate();
    let inc = t.is_non_decreasing();

    let retraction = Check::from_witness(
        grid.iter().find(|x| t.at(&weak.at(&t.at(x))) != t.at(x)).cloned(),
    );
    let above = Check::from_witness(grid.iter().find(|x| weak.at(&t.at(x)) < **x).cloned());
    let mut ys = weak.refined_grid();
    ys.extend(pseudo.refined_grid());
    ys.sort();
    ys.dedup();
    let coincide = Check::from_witness(ys.iter().find(|y| weak.at(y) != pseudo.at(y)).cloned());

    let analytic = t
        .plateau_data()
        .plateaus
        .iter()
        .any(|(_, p)| p.sup().is_some_and(|(_, attained)| !attained));
    let pointwise = grid.iter().any(|x| {
        let tx = t.at(x);
        let back = t.at(&weak.at(&tx));
        if inc {
            back > tx
        } else {
            back < tx
        }
    });
    IdentityReport {
        left_continuous: rep.left_continuous,
        strict: rep.strict,
        coincidence_matches_strictness: coincide.holds == rep.strict,
        retraction_consistent_with_hypotheses: !(rep.left_continuous || rep.strict) || retraction.holds,
        retraction,
        inverse_above_identity: above,
        inverses_coincide: coincide,
        plateau_set_nonempty: analytic,
        plateau_set_nonempty_pointwise: pointwise,
        plateau_equivalence_holds: analytic == pointwise,
    }
}

/// Direction helper shared by callers that need the mirrored comparison.
pub fn dominates(direction: Direction, a: &ExtReal, b: &ExtReal) -> bool {
    match direction {
        Direction::NonDecreasing => a >= b,
        Direction::NonIncreasing => a <= b,
    }
}
