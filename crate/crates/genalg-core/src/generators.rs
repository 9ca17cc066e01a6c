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

//! Piecewise monotone functions with closed-form segments, exact one-sided
//! limits and plateau bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{parse_q, ExtReal, IntervalPointSet, Part, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
}

/// Value on the signed extended line, used before nonnegativity is known.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Sx {
    NegInf,
    Fin(Q),
    PosInf,
}

impl Sx {
    fn signed_inf(positive: bool) -> Sx {
        if positive {
            Sx::PosInf
        } else {
            Sx::NegInf
        }
    }

    fn to_ext(&self) -> Option<ExtReal> {
        match self {
            Sx::NegInf => None,
            Sx::PosInf => Some(ExtReal::Inf),
            Sx::Fin(v) if v.is_negative() => None,
            Sx::Fin(v) => Some(ExtReal::Fin(v.clone())),
        }
    }
}

/// Closed-form segment formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Constant value; `Constant(Inf)` is the `POINT_INF` shape.
    Constant(ExtReal),
    /// `a·x + b`
    Affine { a: Q, b: Q },
    /// `c / (d − x)`
    Reciprocal { c: Q, d: Q },
    /// `d − c / x`
    InvReciprocal { c: Q, d: Q },
}

impl Formula {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Formula::Constant(ExtReal::Inf) => "POINT_INF",
            Formula::Constant(_) => "CONSTANT",
            Formula::Affine { .. } => "AFFINE",
            Formula::Reciprocal { .. } => "RECIPROCAL",
            Formula::InvReciprocal { .. } => "INV_RECIPROCAL",
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Formula::Constant(_))
    }

    /// `Some(true)` increasing, `Some(false)` decreasing, `None` constant.
    fn increasing(&self) -> Option<bool> {
        match self {
            Formula::Constant(_) => None,
            Formula::Affine { a, .. } => Some(a.is_positive()),
            Formula::Reciprocal { c, .. } | Formula::InvReciprocal { c, .. } => Some(c.is_positive()),
        }
    }

    /// Limit of the formula at `x`, approached from below or above.
    fn limit(&self, x: &ExtReal, from_below: bool) -> Sx {
        match self {
            Formula::Constant(v) => match v {
                ExtReal::Inf => Sx::PosInf,
                ExtReal::Fin(q) => Sx::Fin(q.clone()),
            },
            Formula::Affine { a, b } => match x {
                ExtReal::Inf => Sx::signed_inf(a.is_positive()),
                ExtReal::Fin(x) => Sx::Fin(a * x + b),
            },
            Formula::Reciprocal { c, d } => match x {
                ExtReal::Inf => Sx::Fin(Q::zero()),
                ExtReal::Fin(x) if x == d => {
                    // d − x → 0⁺ from below, 0⁻ from above
                    Sx::signed_inf(c.is_positive() == from_below)
                }
                ExtReal::Fin(x) => Sx::Fin(c / (d - x)),
            },
            Formula::InvReciprocal { c, d } => match x {
                ExtReal::Inf => Sx::Fin(d.clone()),
                ExtReal::Fin(x) if x.is_zero() => Sx::signed_inf(!c.is_positive()),
                ExtReal::Fin(x) => Sx::Fin(d - c / x),
            },
        }
    }

    /// Value at `x` as a point of a domain; `None` at a pole or where the
    /// value would be negative.
    pub fn value_at(&self, x: &ExtReal) -> Option<ExtReal> {
        match (self, x) {
            (Formula::Reciprocal { d, .. }, ExtReal::Fin(v)) if v == d => None,
            (Formula::InvReciprocal { .. }, ExtReal::Fin(v)) if v.is_zero() => None,
            _ => self.limit(x, false).to_ext(),
        }
    }

    /// The point where the (strict) formula takes the value `y`.
    fn solve(&self, y: &ExtReal) -> Option<ExtReal> {
        match (self, y) {
            (Formula::Constant(_), _) => None,
            (Formula::Affine { .. }, ExtReal::Inf) => Some(ExtReal::Inf),
            (Formula::Affine { a, b }, ExtReal::Fin(y)) => Sx::Fin((y - b) / a).to_ext(),
            (Formula::Reciprocal { d, .. }, ExtReal::Inf) => Sx::Fin(d.clone()).to_ext(),
            (Formula::Reciprocal { c, d }, ExtReal::Fin(y)) => {
                if y.is_zero() {
                    Some(ExtReal::Inf)
                } else {
                    Sx::Fin(d - c / y).to_ext()
                }
            }
            (Formula::InvReciprocal { .. }, ExtReal::Inf) => Some(ExtReal::zero()),
            (Formula::InvReciprocal { c, d }, ExtReal::Fin(y)) => {
                if y == d {
                    Some(ExtReal::Inf)
                } else {
                    Sx::Fin(c / (d - y)).to_ext()
                }
            }
        }
    }

    /// Inverse formula of a strict formula.
    pub fn inverse(&self) -> Option<Formula> {
        match self {
            Formula::Constant(_) => None,
            Formula::Affine { a, b } => {
                let ia = Q::from_integer(1.into()) / a;
                Some(Formula::Affine { b: -(b * &ia), a: ia })
            }
            Formula::Reciprocal { c, d } => Some(Formula::InvReciprocal { c: c.clone(), d: d.clone() }),
            Formula::InvReciprocal { c, d } => Some(Formula::Reciprocal { c: c.clone(), d: d.clone() }),
        }
    }

    fn params(&self) -> BTreeMap<String, String> {
        let s = |v: &Q| format!("{}/{}", v.numer(), v.denom());
        let mut m = BTreeMap::new();
        match self {
            Formula::Constant(ExtReal::Inf) => {}
            Formula::Constant(v) => {
                m.insert("c".to_string(), v.to_string());
            }
            Formula::Affine { a, b } => {
                m.insert("a".to_string(), s(a));
                m.insert("b".to_string(), s(b));
            }
            Formula::Reciprocal { c, d } | Formula::InvReciprocal { c, d } => {
                m.insert("c".to_string(), s(c));
                m.insert("d".to_string(), s(d));
            }
        }
        m
    }

    fn from_parts(kind: &str, params: &BTreeMap<String, String>) -> Result<Formula> {
        let get = |k: &str| -> Result<Q> {
            let v = params
                .get(k)
                .ok_or_else(|| Error::Parse(format!("{kind} segment needs parameter {k:?}")))?;
            parse_q(v)
        };
        Ok(match kind {
            "CONSTANT" => {
                let raw = params
                    .get("c")
                    .ok_or_else(|| Error::Parse("CONSTANT segment needs parameter \"c\"".into()))?;
                Formula::Constant(raw.parse()?)
            }
            "POINT_INF" => Formula::Constant(ExtReal::Inf),
            "AFFINE" => Formula::Affine { a: get("a")?, b: get("b")? },
            "RECIPROCAL" => Formula::Reciprocal { c: get("c")?, d: get("d")? },
            "INV_RECIPROCAL" => Formula::InvReciprocal { c: get("c")?, d: get("d")? },
            other => return Err(Error::Parse(format!("unknown segment kind {other:?}"))),
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Constant(v) => write!(f, "{v}"),
            Formula::Affine { a, b } => write!(f, "({a})x + ({b})"),
            Formula::Reciprocal { c, d } => write!(f, "({c})/(({d}) - x)"),
            Formula::InvReciprocal { c, d } => write!(f, "({d}) - ({c})/x"),
        }
    }
}

/// Order relation used by level sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

/// A formula on one sub-interval with explicit ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub lo: ExtReal,
    pub lo_closed: bool,
    pub hi: ExtReal,
    pub hi_closed: bool,
    pub formula: Formula,
}

#[derive(Serialize, Deserialize)]
struct SegmentJson {
    lo: ExtReal,
    lo_closed: bool,
    hi: ExtReal,
    hi_closed: bool,
    kind: String,
    #[serde(default)]
    params: BTreeMap<String, String>,
}

impl Segment {
    pub fn new(lo: ExtReal, lo_closed: bool, hi: ExtReal, hi_closed: bool, formula: Formula) -> Self {
        Segment { lo, lo_closed, hi, hi_closed, formula }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Constant on a sub-interval of positive length.
    pub fn is_plateau(&self) -> bool {
        !self.is_point() && self.formula.is_constant()
    }

    pub fn domain(&self) -> IntervalPointSet {
        IntervalPointSet::interval(self.lo.clone(), self.lo_closed, self.hi.clone(), self.hi_closed)
    }

    pub fn contains(&self, x: &ExtReal) -> bool {
        self.domain().contains(x)
    }

    fn lim_lo(&self) -> Sx {
        self.formula.limit(&self.lo, false)
    }

    fn lim_hi(&self) -> Sx {
        if self.is_point() {
            return self.lim_lo();
        }
        self.formula.limit(&self.hi, true)
    }

    /// Right limit of the formula at the lower end.
    pub fn limit_at_lo(&self) -> ExtReal {
        self.lim_lo().to_ext().expect("validated segment")
    }

    /// Left limit of the formula at the upper end.
    pub fn limit_at_hi(&self) -> ExtReal {
        self.lim_hi().to_ext().expect("validated segment")
    }

    /// Value at a point of the domain.
    pub fn value(&self, x: &ExtReal) -> ExtReal {
        if *x == self.hi && !self.is_point() {
            return self.limit_at_hi();
        }
        self.formula.limit(x, false).to_ext().expect("validated segment")
    }

    fn increasing(&self) -> Option<bool> {
        if self.is_point() {
            None
        } else {
            self.formula.increasing()
        }
    }

    /// Image of the segment.
    pub fn image(&self) -> IntervalPointSet {
        match self.increasing() {
            None => IntervalPointSet::point(self.limit_at_lo()),
            Some(true) => IntervalPointSet::interval(
                self.limit_at_lo(),
                self.lo_closed,
                self.limit_at_hi(),
                self.hi_closed,
            ),
            Some(false) => IntervalPointSet::interval(
                self.limit_at_hi(),
                self.hi_closed,
                self.limit_at_lo(),
                self.lo_closed,
            ),
        }
    }

    /// `{ x ∈ domain : f(x) rel y }`.
    pub fn level_set(&self, rel: Rel, y: &ExtReal) -> IntervalPointSet {
        let dom = self.domain();
        if rel == Rel::Eq {
            return self.level_set(Rel::Le, y).intersect(&self.level_set(Rel::Ge, y));
        }
        if matches!(rel, Rel::Gt | Rel::Ge) {
            let opp = if rel == Rel::Gt { Rel::Le } else { Rel::Lt };
            return dom.difference(&self.level_set(opp, y));
        }
        let strict = rel == Rel::Lt;
        let Some(inc) = self.increasing() else {
            let v = self.limit_at_lo();
            let holds = if strict { v < *y } else { v <= *y };
            return if holds { dom } else { IntervalPointSet::empty() };
        };
        let (lo_v, hi_v) = if inc {
            (self.limit_at_lo(), self.limit_at_hi())
        } else {
            (self.limit_at_hi(), self.limit_at_lo())
        };
        let below = if strict { *y <= lo_v } else { *y < lo_v };
        let above = if strict { *y > hi_v } else { *y >= hi_v };
        if below {
            return IntervalPointSet::empty();
        }
        if above {
            return dom;
        }
        let x = self.formula.solve(y).expect("crossing inside the domain");
        let half = if inc {
            IntervalPointSet::interval(ExtReal::zero(), true, x, !strict)
        } else {
            IntervalPointSet::interval(x, !strict, ExtReal::Inf, true)
        };
        dom.intersect(&half)
    }

    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedPartition(m));
        if self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed)) {
            return bad(format!("empty segment domain at {}", self.lo));
        }
        if self.lo.is_inf() && !self.is_point() {
            return bad("segment starting at inf".into());
        }
        match &self.formula {
            Formula::Affine { a, .. } if a.is_zero() => return bad("AFFINE slope must be nonzero".into()),
            Formula::Reciprocal { c, d } => {
                if c.is_zero() {
                    return bad("RECIPROCAL numerator must be nonzero".into());
                }
                let pole = ExtReal::try_from_q(d.clone()).ok();
                if let Some(p) = pole {
                    let inside = self.contains(&p) || (p > self.lo && p < self.hi);
                    if inside {
                        return bad(format!("RECIPROCAL pole {p} inside its segment"));
                    }
                }
            }
            Formula::InvReciprocal { c, .. } => {
                if c.is_zero() {
                    return bad("INV_RECIPROCAL numerator must be nonzero".into());
                }
                if self.contains(&ExtReal::zero()) {
                    return bad("INV_RECIPROCAL pole 0 inside its segment".into());
                }
            }
            _ => {}
        }
        let (l, h) = (self.lim_lo(), self.lim_hi());
        if l.to_ext().is_none() || h.to_ext().is_none() {
            return bad(format!(
                "negative values on segment starting at {}",
                self.lo
            ));
        }
        // a finite closed end may not sit on a pole
        if (self.lo_closed && !self.lo.is_inf() && l == Sx::PosInf && !self.formula.is_constant())
            || (self.hi_closed && !self.hi.is_inf() && h == Sx::PosInf && !self.formula.is_constant())
        {
            return bad(format!("infinite value at a closed end of segment at {}", self.lo));
        }
        Ok(())
    }
}

/// A monotone function on `[0, domain_hi]` given by finitely many segments.
/// Generators use `domain_hi = 1`; inverses use `domain_hi = ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseMonotone {
    direction: Direction,
    segments: Vec<Segment>,
    domain_hi: ExtReal,
}

#[derive(Serialize, Deserialize)]
struct PiecewiseJson {
    direction: Direction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain_hi: Option<ExtReal>,
    segments: Vec<SegmentJson>,
}

/// Report of structural properties of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub direction: Direction,
    pub left_continuous: bool,
    pub right_continuous: bool,
    pub continuous: bool,
    pub strict: bool,
    pub constant: bool,
    pub violations: Vec<ContinuityViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityViolation {
    pub property: String,
    pub point: ExtReal,
    pub left_limit: ExtReal,
    pub value: ExtReal,
    pub right_limit: ExtReal,
}

/// `(t(x⁻), t(x), t(x⁺))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub left: ExtReal,
    pub value: ExtReal,
    pub right: ExtReal,
}

/// Plateau bookkeeping: values of constant pieces and derived point sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlateauData {
    /// Values taken on sub-intervals of positive length.
    pub h: IntervalPointSet,
    /// Right suprema of the plateau preimages.
    pub g: IntervalPointSet,
    /// Points whose value is not a plateau value.
    pub w: IntervalPointSet,
    /// `g ∪ w`
    pub d: IntervalPointSet,
    /// Each plateau value with its full preimage.
    pub plateaus: Vec<(ExtReal, IntervalPointSet)>,
}

impl PiecewiseMonotone {
    pub fn new(direction: Direction, segments: Vec<Segment>) -> Result<Self> {
        Self::with_domain(direction, segments, ExtReal::one())
    }

    pub fn with_domain(direction: Direction, segments: Vec<Segment>, domain_hi: ExtReal) -> Result<Self> {
        let bad = |m: String| Err(Error::MalformedPartition(m));
        let (Some(first), Some(last)) = (segments.first(), segments.last()) else {
            return bad("no segments".into());
        };
        if !first.lo.is_zero() || !first.lo_closed {
            return bad("segments must start with a closed end at 0".into());
        }
        if last.hi != domain_hi || !last.hi_closed {
            return bad(format!("segments must end with a closed end at {domain_hi}"));
        }
        for s in &segments {
            s.check()?;
            if let Some(inc) = s.increasing() {
                if inc != (direction == Direction::NonDecreasing) {
                    return bad(format!("segment at {} runs against the declared direction", s.lo));
                }
            }
        }
        for w in segments.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.hi != b.lo {
                return bad(format!("gap or overlap between {} and {}", a.hi, b.lo));
            }
            if a.hi_closed == b.lo_closed {
                return bad(format!("point {} claimed by {} segments", a.hi, if a.hi_closed { "two" } else { "no" }));
            }
            let (end, start) = (a.limit_at_hi(), b.limit_at_lo());
            let ok = match direction {
                Direction::NonDecreasing => end <= start,
                Direction::NonIncreasing => end >= start,
            };
            if !ok {
                return bad(format!("monotonicity broken at {}", a.hi));
            }
        }
        Ok(PiecewiseMonotone { direction, segments, domain_hi })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: PiecewiseJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("generator json: {e}")))?;
        Self::from_json_value(j)
    }

    fn from_json_value(j: PiecewiseJson) -> Result<Self> {
        let segs = j
            .segments
            .iter()
            .map(|s| {
                Ok(Segment::new(
                    s.lo.clone(),
                    s.lo_closed,
                    s.hi.clone(),
                    s.hi_closed,
                    Formula::from_parts(&s.kind, &s.params)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_domain(j.direction, segs, j.domain_hi.unwrap_or_else(ExtReal::one))
    }

    fn to_json_value(&self) -> PiecewiseJson {
        PiecewiseJson {
            direction: self.direction,
            domain_hi: (!self.domain_hi.eq(&ExtReal::one())).then(|| self.domain_hi.clone()),
            segments: self
                .segments
                .iter()
                .map(|s| SegmentJson {
                    lo: s.lo.clone(),
                    lo_closed: s.lo_closed,
                    hi: s.hi.clone(),
                    hi_closed: s.hi_closed,
                    kind: s.formula.kind_name().to_string(),
                    params: s.formula.params(),
                })
                .collect(),
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.direction == Direction::NonDecreasing
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn domain_hi(&self) -> &ExtReal {
        &self.domain_hi
    }

    pub fn domain(&self) -> IntervalPointSet {
        IntervalPointSet::closed(ExtReal::zero(), self.domain_hi.clone())
    }

    fn check_domain(&self, x: &ExtReal) -> Result<()> {
        if *x > self.domain_hi {
            return Err(Error::DomainError(format!("{x} is outside [0, {}]", self.domain_hi)));
        }
        Ok(())
    }

    fn segment_at(&self, x: &ExtReal) -> &Segment {
        let i = self.segments.partition_point(|s| s.hi < *x || (s.hi == *x && !s.hi_closed));
        &self.segments[i]
    }

    pub fn eval(&self, x: &ExtReal) -> Result<ExtReal> {
        self.check_domain(x)?;
        Ok(self.segment_at(x).value(x))
    }

    /// Evaluation at a point already known to be in the domain.
    pub fn at(&self, x: &ExtReal) -> ExtReal {
        self.segment_at(x).value(x)
    }

    pub fn t0(&self) -> ExtReal {
        self.at(&ExtReal::zero())
    }

    pub fn t_end(&self) -> ExtReal {
        self.at(&self.domain_hi)
    }

    pub fn left_limit(&self, x: &ExtReal) -> Result<ExtReal> {
        self.check_domain(x)?;
        if x.is_zero() {
            return Ok(self.t0());
        }
        let s = self
            .segments
            .iter()
            .find(|s| s.lo < *x && *x <= s.hi)
            .expect("segments cover the domain");
        Ok(if *x == s.hi { s.limit_at_hi() } else { s.value(x) })
    }

    pub fn right_limit(&self, x: &ExtReal) -> Result<ExtReal> {
        self.check_domain(x)?;
        if *x == self.domain_hi {
            return Ok(if self.is_non_decreasing() && !self.domain_hi.is_inf() {
                ExtReal::Inf
            } else {
                self.t_end()
            });
        }
        let s = self
            .segments
            .iter()
            .find(|s| s.lo <= *x && *x < s.hi)
            .expect("segments cover the domain");
        Ok(if *x == s.lo { s.limit_at_lo() } else { s.value(x) })
    }

    pub fn eval_with_limits(&self, x: &ExtReal) -> Result<Limits> {
        Ok(Limits { left: self.left_limit(x)?, value: self.eval(x)?, right: self.right_limit(x)? })
    }

    /// Right limit with the domain end mapped to its own value, i.e. the
    /// limit inside the domain only.
    pub fn inner_right_limit(&self, x: &ExtReal) -> ExtReal {
        if *x == self.domain_hi {
            self.t_end()
        } else {
            self.right_limit(x).expect("in domain")
        }
    }

    /// All segment endpoints, sorted.
    pub fn breakpoints(&self) -> Vec<ExtReal> {
        let mut v: Vec<ExtReal> =
            self.segments.iter().flat_map(|s| [s.lo.clone(), s.hi.clone()]).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Breakpoints plus midpoints between consecutive ones.
    pub fn refined_grid(&self) -> Vec<ExtReal> {
        let b = self.breakpoints();
        let mut v = b.clone();
        for w in b.windows(2) {
            v.push(ExtReal::midpoint(&w[0], &w[1]));
        }
        v.sort();
        v.dedup();
        v
    }

    pub fn range_of(&self) -> IntervalPointSet {
        self.segments.iter().fold(IntervalPointSet::empty(), |acc, s| acc.union(&s.image()))
    }

    /// `{ x : t(x) rel y }`.
    pub fn level_set(&self, rel: Rel, y: &ExtReal) -> IntervalPointSet {
        self.segments
            .iter()
            .fold(IntervalPointSet::empty(), |acc, s| acc.union(&s.level_set(rel, y)))
    }

    /// `{ x : t(x) ∈ s }`.
    pub fn preimage(&self, s: &IntervalPointSet) -> IntervalPointSet {
        let mut out = IntervalPointSet::empty();
        for p in s.parts() {
            let lower = self.level_set(if p.lo_closed { Rel::Ge } else { Rel::Gt }, &p.lo);
            let upper = self.level_set(if p.hi_closed { Rel::Le } else { Rel::Lt }, &p.hi);
            out = out.union(&lower.intersect(&upper));
        }
        out
    }

    /// Some `x` with `t(x) = v`, if any.
    pub fn preimage_point(&self, v: &ExtReal) -> Option<ExtReal> {
        let set = self.level_set(Rel::Eq, v);
        let p = set.parts().first()?;
        Some(if p.lo_closed { p.lo.clone() } else { p.interior_point() })
    }

    pub fn is_strict(&self) -> bool {
        !self.segments.iter().any(Segment::is_plateau)
    }

    pub fn is_constant(&self) -> bool {
        self.range_of().as_singleton().is_some()
    }

    pub fn is_left_continuous(&self) -> bool {
        self.validate().left_continuous
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for x in self.breakpoints() {
            let l = self.eval_with_limits(&x).expect("breakpoint in domain");
            if !x.is_zero() && l.left != l.value {
                violations.push(ContinuityViolation {
                    property: "left_continuity".into(),
                    point: x.clone(),
                    left_limit: l.left.clone(),
                    value: l.value.clone(),
                    right_limit: l.right.clone(),
                });
            }
            if x != self.domain_hi && l.right != l.value {
                violations.push(ContinuityViolation {
                    property: "right_continuity".into(),
                    point: x.clone(),
                    left_limit: l.left,
                    value: l.value,
                    right_limit: l.right,
                });
            }
        }
        let left_continuous = !violations.iter().any(|v| v.property == "left_continuity");
        let right_continuous = !violations.iter().any(|v| v.property == "right_continuity");
        ValidationReport {
            direction: self.direction,
            left_continuous,
            right_continuous,
            continuous: left_continuous && right_continuous,
            strict: self.is_strict(),
            constant: self.is_constant(),
            violations,
        }
    }

    pub fn plateau_data(&self) -> PlateauData {
        let mut values: Vec<ExtReal> = self
            .segments
            .iter()
            .filter(|s| s.is_plateau())
            .map(|s| s.limit_at_lo())
            .collect();
        values.sort();
        values.dedup();
        let plateaus: Vec<(ExtReal, IntervalPointSet)> =
            values.iter().map(|c| (c.clone(), self.level_set(Rel::Eq, c))).collect();
        let g = IntervalPointSet::points(
            plateaus.iter().filter_map(|(_, p)| p.sup().map(|(s, _)| s)),
        );
        let covered = plateaus.iter().fold(IntervalPointSet::empty(), |acc, (_, p)| acc.union(p));
        let w = self.domain().difference(&covered);
        PlateauData { h: IntervalPointSet::points(values), d: g.union(&w), g, w, plateaus }
    }

    /// Parts of the domain where `t` is constant on a positive-length piece.
    pub fn plateau_segments(&self) -> impl Iterator<Item = &Segment> {
        self.segments.iter().filter(|s| s.is_plateau())
    }

    /// The domain as a set of raw parts, one per segment.
    pub fn segment_parts(&self) -> Vec<Part> {
        self.segments
            .iter()
            .map(|s| Part::new(s.lo.clone(), s.lo_closed, s.hi.clone(), s.hi_closed))
            .collect()
    }
}

impl Serialize for PiecewiseMonotone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewiseMonotone {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PiecewiseJson::deserialize(d)?;
        Self::from_json_value(j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for PiecewiseMonotone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let l = if s.lo_closed { '[' } else { '(' };
            let r = if s.hi_closed { ']' } else { ')' };
            write!(f, "{} on {l}{}, {}{r}", s.formula, s.lo, s.hi)?;
        }
        Ok(())
    }
}

/// Shorthand constructors for tests, fixtures and examples.
pub mod build {
    use super::*;

    pub fn seg(lo: ExtReal, lo_closed: bool, hi: ExtReal, hi_closed: bool, f: Formula) -> Segment {
        Segment::new(lo, lo_closed, hi, hi_closed, f)
    }

    pub fn constant(v: ExtReal) -> Formula {
        Formula::Constant(v)
    }

    pub fn affine(a: Q, b: Q) -> Formula {
        Formula::Affine { a, b }
    }

    pub fn reciprocal(c: Q, d: Q) -> Formula {
        Formula::Reciprocal { c, d }
    }

    pub fn identity() -> PiecewiseMonotone {
        PiecewiseMonotone::new(
            Direction::NonDecreasing,
            vec![seg(ExtReal::zero(), true, ExtReal::one(), true, affine(crate::numerics::q(1, 1), Q::zero()))],
        )
        .expect("identity is valid")
    }
}
