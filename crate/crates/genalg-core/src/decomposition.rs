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

//! Gap decomposition of a range, the projection `G_M`, the induced
//! operation `⊗` on the range and the star system `(t⋆, F⋆)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::PiecewiseMonotone;
use crate::inverses::weak_pseudo_inverse;
use crate::numerics::{ExtReal, IntervalPointSet};
use crate::semigroups::SemigroupDescriptor;

/// One gap `[b, d]` of the range; `c = b` is the attached point of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub b: ExtReal,
    pub d: ExtReal,
    pub c: ExtReal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeDecomposition {
    pub t0: ExtReal,
    pub gaps: Vec<Gap>,
    pub extra_points: Vec<ExtReal>,
    #[serde(skip)]
    m: IntervalPointSet,
}

fn precondition(t: &PiecewiseMonotone) -> Result<()> {
    if !t.is_non_decreasing() {
        return Err(Error::PreconditionViolated("t must be non-decreasing".into()));
    }
    if !t.validate().left_continuous {
        return Err(Error::PreconditionViolated("t must be left continuous".into()));
    }
    Ok(())
}

impl RangeDecomposition {
    pub fn decompose(t: &PiecewiseMonotone) -> Result<Self> {
        precondition(t)?;
        Self::from_range(t.range_of(), t.t0())
    }

    /// Decomposes a range `M` with least element `t0`.
    pub fn from_range(m: IntervalPointSet, t0: ExtReal) -> Result<Self> {
        let upper = IntervalPointSet::closed(t0.clone(), ExtReal::Inf);
        let holes = upper.difference(&m);
        let mut gaps = Vec::new();
        for h in holes.parts() {
            if h.lo_closed {
                return Err(Error::PreconditionViolated(format!(
                    "gap at {} has no attached lower point in the range",
                    h.lo
                )));
            }
            gaps.push(Gap { b: h.lo.clone(), d: h.hi.clone(), c: h.lo.clone() });
        }
        if gaps.is_empty() {
            gaps.push(Gap { b: ExtReal::Inf, d: ExtReal::Inf, c: ExtReal::Inf });
        }
        let mut dec = RangeDecomposition { t0, gaps, extra_points: Vec::new(), m };
        let attached: Vec<ExtReal> = dec.attached_points();
        dec.extra_points = dec.v_points().into_iter().filter(|v| !attached.contains(v)).collect();
        Ok(dec)
    }

    fn attached_points(&self) -> Vec<ExtReal> {
        let mut v: Vec<ExtReal> = self.gaps.iter().map(|g| g.c.clone()).collect();
        v.extend(self.gaps.iter().filter(|g| self.m.contains(&g.d)).map(|g| g.d.clone()));
        v.sort();
        v.dedup();
        v
    }

    /// The point set `V`: attached lower ends and upper ends lying in `M`.
    pub fn v_points(&self) -> Vec<ExtReal> {
        let mut v = self.attached_points();
        v.extend(self.extra_points.iter().cloned());
        v.sort();
        v.dedup();
        v
    }

    pub fn m(&self) -> &IntervalPointSet {
        &self.m
    }

    pub fn is_degenerate(&self) -> bool {
        self.gaps.len() == 1 && self.gaps[0].b.is_inf()
    }

    /// `[b_k, d_k] ∖ M`, the part of a gap outside the range.
    pub fn gap_region(&self, k: usize) -> IntervalPointSet {
        let g = &self.gaps[k];
        IntervalPointSet::closed(g.b.clone(), g.d.clone()).difference(&self.m)
    }

    /// `M` rebuilt as `V ∪ ([t0, ∞] ∖ ⋃ [b_k, d_k])`.
    pub fn reconstruct(&self) -> IntervalPointSet {
        let covered = self.gaps.iter().fold(IntervalPointSet::empty(), |acc, g| {
            acc.union(&IntervalPointSet::closed(g.b.clone(), g.d.clone()))
        });
        IntervalPointSet::closed(self.t0.clone(), ExtReal::Inf)
            .difference(&covered)
            .union(&IntervalPointSet::points(self.v_points()))
    }

    /// `G_M(x) = min(M ∩ [sup([0,x] ∩ M), inf([x,∞] ∩ M)])`, with
    /// `sup ∅ = 0` and `inf ∅ = ∞`.
    pub fn g_m(&self, x: &ExtReal) -> ExtReal {
        let below = self.m.intersect(&IntervalPointSet::closed(ExtReal::zero(), x.clone()));
        let above = self.m.intersect(&IntervalPointSet::closed(x.clone(), ExtReal::Inf));
        let s = below.sup().map(|(v, _)| v).unwrap_or_else(ExtReal::zero);
        let i = above.inf().map(|(v, _)| v).unwrap_or(ExtReal::Inf);
        let window = self.m.intersect(&IntervalPointSet::closed(s, i));
        window.inf().map(|(v, _)| v).unwrap_or_else(|| self.t0.clone())
    }

    /// `x ⊗ y = G_M(F(x, y))` for `x, y ∈ M`.
    pub fn otimes(&self, f: &SemigroupDescriptor, x: &ExtReal, y: &ExtReal) -> Result<ExtReal> {
        for v in [x, y] {
            if !self.m.contains(v) {
                return Err(Error::DomainError(format!("{v} is not in the range")));
            }
        }
        Ok(self.g_m(&f.try_eval(x, y)?))
    }
}

/// `t⋆ = t` restricted to `𝔻` and `F⋆(x, y) = t^[-1](F(t⋆(x), t⋆(y)))`.
#[derive(Clone, Debug)]
pub struct StarSystem {
    t: PiecewiseMonotone,
    tinv: PiecewiseMonotone,
    f: SemigroupDescriptor,
    d: IntervalPointSet,
}

impl StarSystem {
    pub fn new(t: &PiecewiseMonotone, f: &SemigroupDescriptor) -> Result<Self> {
        precondition(t)?;
        Ok(StarSystem {
            t: t.clone(),
            tinv: weak_pseudo_inverse(t),
            f: f.clone(),
            d: t.plateau_data().d,
        })
    }

    pub fn d(&self) -> &IntervalPointSet {
        &self.d
    }

    pub fn weak_inverse(&self) -> &PiecewiseMonotone {
        &self.tinv
    }

    pub fn t_star(&self, x: &ExtReal) -> Result<ExtReal> {
        if !self.d.contains(x) {
            return Err(Error::DomainError(format!("{x} is outside the plateau-free domain")));
        }
        Ok(self.t.at(x))
    }

    pub fn f_star(&self, x: &ExtReal, y: &ExtReal) -> Result<ExtReal> {
        let v = self.f.try_eval(&self.t_star(x)?, &self.t_star(y)?)?;
        Ok(self.tinv.at(&v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExtReal {
        ExtReal::ratio(n, d)
    }

    fn m1() -> IntervalPointSet {
        IntervalPointSet::closed(r(0, 1), r(1, 4))
            .union(&IntervalPointSet::point(r(1, 2)))
            .union(&IntervalPointSet::open_closed(r(3, 4), r(1, 1)))
    }

    #[test]
    fn gaps_of_a_range() {
        let dec = RangeDecomposition::from_range(m1(), r(0, 1)).unwrap();
        let pairs: Vec<_> = dec.gaps.iter().map(|g| (g.b.clone(), g.d.clone())).collect();
        assert_eq!(
            pairs,
            vec![(r(1, 4), r(1, 2)), (r(1, 2), r(3, 4)), (r(1, 1), ExtReal::Inf)]
        );
        assert_eq!(dec.v_points(), vec![r(1, 4), r(1, 2), r(1, 1)]);
        assert_eq!(dec.reconstruct(), m1());
    }

    #[test]
    fn degenerate_range() {
        let dec = RangeDecomposition::from_range(IntervalPointSet::closed(r(1, 1), ExtReal::Inf), r(1, 1)).unwrap();
        assert!(dec.is_degenerate());
        assert_eq!(dec.v_points(), vec![ExtReal::Inf]);
    }

    #[test]
    fn projection() {
        let dec = RangeDecomposition::from_range(m1(), r(0, 1)).unwrap();
        assert_eq!(dec.g_m(&r(3, 10)), r(1, 4));
        assert_eq!(dec.g_m(&r(7, 10)), r(1, 2));
        assert_eq!(dec.g_m(&r(3, 4)), r(1, 2));
        assert_eq!(dec.g_m(&r(9, 10)), r(9, 10));
        assert_eq!(dec.g_m(&r(5, 1)), r(1, 1));
        let f = SemigroupDescriptor::max();
        assert_eq!(dec.otimes(&f, &r(1, 4), &r(1, 2)).unwrap(), r(1, 2));
        assert!(dec.otimes(&f, &r(1, 3), &r(1, 2)).is_err());
    }

    #[test]
    fn unattached_gap_is_rejected() {
        let m = IntervalPointSet::closed_open(r(0, 1), r(1, 4)).union(&IntervalPointSet::closed(r(1, 2), ExtReal::Inf));
        assert!(matches!(
            RangeDecomposition::from_range(m, r(0, 1)),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
