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

//! Idempotent points, diagonal powers and the limit property, conditional
//! cancellation, the t-supconorm criterion and continuity of `T`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::associativity::{brute_force_assoc, find_pair_in, GeneratedOp, Mode, PairWitness};
use crate::error::{Error, Result};
use crate::generators::{PiecewiseMonotone, Rel};
use crate::inverses::Check;
use crate::numerics::{f_image, ExtReal, IntervalPointSet};

/// Default cap on the number of diagonal powers.
pub const DEFAULT_N_MAX: usize = 64;

fn zero() -> ExtReal {
    ExtReal::zero()
}

fn one() -> ExtReal {
    ExtReal::one()
}

fn need_supconorm(op: &GeneratedOp) -> Result<()> {
    if op.mode() != Mode::Supconorm {
        return Err(Error::PreconditionViolated("this analysis needs SUPCONORM mode".into()));
    }
    Ok(())
}

fn need_continuous(op: &GeneratedOp) -> Result<()> {
    let flags = op.f().flags();
    if !flags.continuous || !flags.gamma_member {
        return Err(Error::PreconditionViolated(format!(
            "{} must be a continuous member of Γ",
            op.f().name()
        )));
    }
    Ok(())
}

fn inner_breakpoints(t: &PiecewiseMonotone) -> Vec<ExtReal> {
    t.breakpoints().into_iter().filter(|x| !x.is_zero() && *x < one()).collect()
}

/// Least element of a set, or a representative when the infimum is open.
fn pick(s: &IntervalPointSet) -> Option<ExtReal> {
    let p = s.parts().first()?;
    Some(if p.lo_closed { p.lo.clone() } else { p.interior_point() })
}

/// `(0, 1]`
fn unit_tail() -> IntervalPointSet {
    IntervalPointSet::open_closed(zero(), one())
}

/// `t` is constant on some `(0, ε)`.
fn initial_plateau(t: &PiecewiseMonotone) -> Result<bool> {
    let a = t.right_limit(&zero())?;
    Ok(!t.level_set(Rel::Eq, &a).intersect(&unit_tail()).is_empty())
}

// ---------------------------------------------------------------------------
// idempotence

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotenceReport {
    pub points: IntervalPointSet,
    /// `T(x, x) = x` for every `x`.
    pub idempotent: bool,
}

/// `x ∈ 𝔻` and `M ∩ [t(x), F(t(x), t(x))] = {t(x)}`; `1` always passes.
pub fn idempotence_criterion(op: &GeneratedOp, x: &ExtReal) -> Result<bool> {
    if *x == one() {
        return Ok(true);
    }
    let t = op.t();
    if !t.plateau_data().d.contains(x) {
        return Ok(false);
    }
    let v = t.eval(x)?;
    let w = op.f().try_eval(&v, &v)?;
    if w == v {
        return Ok(true);
    }
    Ok(op.range().intersect(&IntervalPointSet::interval(v, false, w, true)).is_empty())
}

/// The exact set of `x` with `T(x, x) = x`.
pub fn idempotent_points(op: &GeneratedOp) -> Result<IdempotenceReport> {
    need_supconorm(op)?;
    if !op.f().flags().gamma_member {
        return Err(Error::PreconditionViolated(format!("{} is not in Γ", op.f().name())));
    }
    // the criterion fails at jumps owned by the right piece
    if !op.t().validate().left_continuous {
        return Err(Error::PreconditionViolated("t must be left continuous".into()));
    }
    let f = op.f();
    let m = op.range();
    // range values v with M ∩ (v, F(v, v)] = ∅
    let mut ok = IntervalPointSet::empty();
    for p in m.parts() {
        if !p.is_point() {
            let inner = IntervalPointSet::interval(p.lo.clone(), p.lo_closed, p.hi.clone(), false);
            if f.is_table() {
                return Err(Error::UnsupportedSemigroup("a table operation needs a finite range".into()));
            }
            ok = ok.union(&f.idempotents_of(&inner).unwrap_or_else(|_| {
                IntervalPointSet::points(inner.sample_points(0).into_iter().filter(|v| f.is_idempotent(v)))
            }));
        }
        if p.hi_closed {
            let v = &p.hi;
            let fine = if v.is_inf() {
                true
            } else {
                let w = f.try_eval(v, v)?;
                let above = m.intersect(&IntervalPointSet::interval(v.clone(), false, ExtReal::Inf, true));
                match above.inf() {
                    None => true,
                    Some((n, attained)) => w < n || (w == n && !attained),
                }
            };
            if fine {
                ok = ok.union(&IntervalPointSet::point(v.clone()));
            }
        }
    }
    let t = op.t();
    let points = t
        .preimage(&ok)
        .intersect(&t.plateau_data().d)
        .intersect(&IntervalPointSet::closed_open(zero(), one()))
        .union(&IntervalPointSet::point(one()));
    let idempotent = points == IntervalPointSet::closed(zero(), one());
    Ok(IdempotenceReport { points, idempotent })
}

// ---------------------------------------------------------------------------
// diagonal powers and the limit property

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrbitClass {
    ReachesOne { n: usize },
    /// `T(x, v) = v` with `v < 1`; `n` is the index of the first repeat.
    FixedBelowOne { value: ExtReal, n: usize },
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalOrbit {
    pub x: ExtReal,
    /// `x_T^(1), x_T^(2), …`
    pub powers: Vec<ExtReal>,
    pub classification: OrbitClass,
}

/// `x_T^(1) = x`, `x_T^(n+1) = T(x, x_T^(n))`, stopped at `1`, at an exact
/// fixed point or after `n_max` terms.
pub fn diagonal_powers(op: &GeneratedOp, x: &ExtReal, n_max: usize) -> Result<DiagonalOrbit> {
    if n_max < 2 {
        return Err(Error::DomainError("n_max must be at least 2".into()));
    }
    if x.is_zero() || *x >= one() {
        return Err(Error::DomainError(format!("{x} is not in (0, 1)")));
    }
    let mut powers = vec![x.clone()];
    let mut classification = OrbitClass::Undecided;
    while powers.len() < n_max {
        let prev = powers.last().cloned().unwrap_or_else(zero);
        let next = op.eval(x, &prev)?;
        powers.push(next.clone());
        let n = powers.len();
        if next == one() {
            classification = OrbitClass::ReachesOne { n };
            break;
        }
        if next == prev {
            classification = OrbitClass::FixedBelowOne { value: next, n };
            break;
        }
    }
    Ok(DiagonalOrbit { x: x.clone(), powers, classification })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LimitVerdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitReport {
    pub verdict: LimitVerdict,
    /// The criterion that decided the verdict.
    pub basis: String,
    pub witness: Option<ExtReal>,
    /// `F(t(x), t(x)) ≥ t(x⁺)` on `(0, 1)`.
    pub diagonal_criterion: Check,
    /// `F(t(0⁺), t(x)) ≥ t(x⁺)` on `(0, 1)`.
    pub weak_criterion: Check,
    /// `F(t(0⁺), t(x)) > t(x⁺)` on `(0, 1)`.
    pub strict_criterion: Check,
    /// `t^[-1](t(x)) = t^[-1](t(x⁺))` on `(0, 1)`.
    pub inverse_hypothesis: Check,
    pub orbits: Vec<DiagonalOrbit>,
}

/// Points of `(0, 1)` where `F(a, t(x)) ≤ t(x⁺)`. Inside a segment
/// `t(x⁺) = t(x)`, so only the breakpoints need a direct evaluation.
fn strict_failures(op: &GeneratedOp, a: &ExtReal) -> Result<IntervalPointSet> {
    let t = op.t();
    let f = op.f();
    let mut bad = IntervalPointSet::empty();
    for x in inner_breakpoints(t) {
        if f.try_eval(a, &t.eval(&x)?)? <= t.right_limit(&x)? {
            bad = bad.union(&IntervalPointSet::point(x));
        }
    }
    let bad_values = if f.is_max() {
        IntervalPointSet::closed(a.clone(), ExtReal::Inf)
    } else if a.is_zero() {
        IntervalPointSet::carrier()
    } else {
        IntervalPointSet::point(ExtReal::Inf)
    };
    let interiors = t
        .segments()
        .iter()
        .filter(|s| s.lo < s.hi)
        .fold(IntervalPointSet::empty(), |acc, s| {
            acc.union(&IntervalPointSet::open(s.lo.clone(), s.hi.clone()))
        });
    Ok(bad.union(
        &t.preimage(&bad_values)
            .intersect(&interiors)
            .intersect(&IntervalPointSet::open(zero(), one())),
    ))
}

pub fn limit_property_check(op: &GeneratedOp) -> Result<LimitReport> {
    need_supconorm(op)?;
    need_continuous(op)?;
    let t = op.t();
    let f = op.f();
    let tinv = op.tinv();
    let a = t.right_limit(&zero())?;
    let bps = inner_breakpoints(t);

    let first = |pred: &dyn Fn(&ExtReal) -> Result<bool>| -> Result<Check> {
        for x in &bps {
            if pred(x)? {
                return Ok(Check::from_witness(Some(x.clone())));
            }
        }
        Ok(Check::from_witness(None))
    };
    let diagonal = first(&|x| {
        let v = t.eval(x)?;
        Ok(f.try_eval(&v, &v)? < t.right_limit(x)?)
    })?;
    let weak = first(&|x| Ok(f.try_eval(&a, &t.eval(x)?)? < t.right_limit(x)?))?;
    let hypothesis = first(&|x| Ok(tinv.at(&t.eval(x)?) != tinv.at(&t.right_limit(x)?)))?;
    let strict_bad = strict_failures(op, &a)?;
    let strict = Check::from_witness(
        bps.iter().find(|x| strict_bad.contains(x)).cloned().or_else(|| pick(&strict_bad)),
    );

    let mut report = LimitReport {
        verdict: LimitVerdict::Inconclusive,
        basis: String::new(),
        witness: None,
        diagonal_criterion: diagonal.clone(),
        weak_criterion: weak.clone(),
        strict_criterion: strict.clone(),
        inverse_hypothesis: hypothesis.clone(),
        orbits: Vec::new(),
    };
    let decide = |report: &mut LimitReport, v: LimitVerdict, basis: &str, w: Option<ExtReal>| {
        report.verdict = v;
        report.basis = basis.to_string();
        report.witness = w;
    };
    let fixes = |o: &DiagonalOrbit| matches!(o.classification, OrbitClass::FixedBelowOne { .. });

    if let Some(x) = diagonal.witness {
        // the orbit of x stalls at t^[-1](t(x))
        report.orbits.push(diagonal_powers(op, &x, DEFAULT_N_MAX)?);
        decide(&mut report, LimitVerdict::Fails, "F(t(x), t(x)) < t(x+)", Some(x));
        return Ok(report);
    }
    if let Some(y) = weak.witness {
        report.orbits.push(diagonal_powers(op, &y, DEFAULT_N_MAX)?);
        decide(&mut report, LimitVerdict::Fails, "F(t(0+), t(y)) < t(y+)", Some(y));
        return Ok(report);
    }
    if strict.holds {
        decide(&mut report, LimitVerdict::Holds, "F(t(0+), t(x)) > t(x+) on (0, 1)", None);
        return Ok(report);
    }
    if f.is_strict() && !initial_plateau(t)? {
        decide(
            &mut report,
            LimitVerdict::Holds,
            "strict F, t(x) > t(0+) for x > 0 and F(t(0+), t(x)) >= t(x+)",
            None,
        );
        return Ok(report);
    }
    if let (true, Some(y)) = (hypothesis.holds, strict.witness.clone()) {
        // some x in (0, y) with F(t(x), t(y)) ≤ t(y⁺) keeps the orbit of x
        // below t^[-1](t(y)) < 1
        let ty = t.eval(&y)?;
        if tinv.at(&ty) < one() {
            let u = f.preimage_fixed(&IntervalPointSet::closed(zero(), t.right_limit(&y)?), &ty)?;
            let xs = t.preimage(&u).intersect(&IntervalPointSet::open(zero(), y.clone()));
            if let Some(x) = pick(&xs) {
                for c in [y.clone(), x.clone()] {
                    let o = diagonal_powers(op, &c, DEFAULT_N_MAX)?;
                    let hit = fixes(&o);
                    report.orbits.push(o);
                    if hit {
                        decide(&mut report, LimitVerdict::Fails, "orbit bounded by t^[-1](t(y)) < 1", Some(c));
                        return Ok(report);
                    }
                }
                decide(&mut report, LimitVerdict::Fails, "orbit bounded by t^[-1](t(y)) < 1", Some(x));
                return Ok(report);
            }
        }
    }

    let mut starts: Vec<ExtReal> =
        op.default_grid().into_iter().filter(|x| !x.is_zero() && *x < one()).collect();
    starts.extend(strict.witness);
    starts.sort();
    starts.dedup();
    let mut undecided = false;
    for x in starts {
        let o = diagonal_powers(op, &x, DEFAULT_N_MAX)?;
        let class = o.classification.clone();
        report.orbits.push(o);
        match class {
            OrbitClass::FixedBelowOne { .. } => {
                decide(&mut report, LimitVerdict::Fails, "exact fixed point below 1", Some(x));
                return Ok(report);
            }
            OrbitClass::Undecided => undecided = true,
            OrbitClass::ReachesOne { .. } => {}
        }
    }
    if undecided {
        decide(&mut report, LimitVerdict::Inconclusive, "criteria undecided and some orbits truncated", None);
    } else {
        decide(&mut report, LimitVerdict::Holds, "every sampled orbit reaches 1", None);
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// cancellation

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancelWitness {
    pub x1: ExtReal,
    pub x2: ExtReal,
    pub y: ExtReal,
    /// `T(x1, y) = T(x2, y)`
    pub value: ExtReal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub holds: bool,
    pub witness: Option<PairWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellationReport {
    /// `t(0)` is a plateau value.
    pub degenerate: bool,
    /// The excluded set `C`; the plateau values unless chosen explicitly.
    pub c: IntervalPointSet,
    pub beta: Option<ExtReal>,
    pub alpha: Option<ExtReal>,
    /// `F(M∖C, M) ⊆ M ∪ [t(1), ∞]`
    pub image_condition: Option<PairCheck>,
    /// `F(ℍ, M) ⊆ [t(1), ∞]`
    pub plateau_condition: Option<PairCheck>,
    pub conditionally_cancellative: bool,
    pub cancellative: bool,
    pub grid_witness: Option<CancelWitness>,
    pub grid_agrees: bool,
}

/// `x1 < x2` and `y` on the grid with `T(x1, y) = T(x2, y) < 1`.
pub fn grid_cancel_witness(op: &GeneratedOp, grid: &[ExtReal]) -> Result<Option<CancelWitness>> {
    for y in grid {
        let mut seen: HashMap<ExtReal, ExtReal> = HashMap::new();
        for x in grid {
            let v = op.eval(x, y)?;
            if v >= one() {
                continue;
            }
            if let Some(x1) = seen.get(&v) {
                return Ok(Some(CancelWitness { x1: x1.clone(), x2: x.clone(), y: y.clone(), value: v }));
            }
            seen.insert(v, x.clone());
        }
    }
    Ok(None)
}

fn inclusion(op: &GeneratedOp, a: &IntervalPointSet, b: &IntervalPointSet, allowed: &IntervalPointSet) -> Result<PairCheck> {
    let bad = f_image(op.f(), a, b)?.difference(allowed);
    if bad.is_empty() {
        return Ok(PairCheck { holds: true, witness: None });
    }
    Ok(PairCheck { holds: false, witness: find_pair_in(op, a, b, &bad) })
}

/// `grid` plus points approaching `x` from both sides, at halving distances.
fn refine_near(grid: &[ExtReal], x: &ExtReal) -> Vec<ExtReal> {
    let mut out = grid.to_vec();
    let below = grid.iter().filter(|g| *g < x).max().cloned();
    let above = grid.iter().filter(|g| *g > x && !g.is_inf()).min().cloned();
    for end in below.into_iter().chain(above) {
        let mut p = end;
        for _ in 0..10 {
            p = ExtReal::midpoint(&p, x);
            out.push(p.clone());
        }
    }
    out.push(x.clone());
    out.sort();
    out.dedup();
    out
}

/// Conditional cancellation with the excluded set `C` taken as the plateau
/// values `ℍ`.
pub fn cancellation_check(op: &GeneratedOp) -> Result<CancellationReport> {
    cancellation_check_with(op, &op.t().plateau_data().h)
}

/// As [`cancellation_check`] with an explicit excluded set `C`.
pub fn cancellation_check_with(op: &GeneratedOp, c: &IntervalPointSet) -> Result<CancellationReport> {
    need_supconorm(op)?;
    if !op.f().is_strict() {
        return Err(Error::PreconditionViolated(format!("{} is not strict", op.f().name())));
    }
    let t = op.t();
    let m = op.range();
    let h = t.plateau_data().h;
    let grid = op.default_grid();
    let t0 = t.t0();

    if h.contains(&t0) {
        let cc = op.eval(&zero(), &zero())? == one();
        let grid_witness = grid_cancel_witness(op, &grid)?;
        return Ok(CancellationReport {
            degenerate: true,
            c: c.clone(),
            beta: Some(t0.clone()),
            alpha: Some(zero()),
            image_condition: None,
            plateau_condition: None,
            conditionally_cancellative: cc,
            cancellative: false,
            grid_agrees: cc == grid_witness.is_none(),
            grid_witness,
        });
    }

    let t1 = t.eval(&one())?;
    let upper = IntervalPointSet::closed(t1, ExtReal::Inf);
    let free = m.difference(c);
    let image_condition = inclusion(op, &free, m, &m.union(&upper))?;
    let plateau_condition = inclusion(op, &h, m, &upper)?;
    let cc = image_condition.holds && plateau_condition.holds;
    let mut grid_witness = grid_cancel_witness(op, &grid)?;
    if grid_witness.is_none() && !cc {
        // the default grid is often too coarse; refine near the analytic witness
        let mut search = grid;
        for w in [&image_condition.witness, &plateau_condition.witness].into_iter().flatten() {
            search = refine_near(&search, &w.x);
            search = refine_near(&search, &w.y);
        }
        grid_witness = grid_cancel_witness(op, &search)?;
    }
    let cancellative = t.is_strict() && f_image(op.f(), &free, m)?.is_subset(m);
    let beta = h.min();
    let alpha = beta.as_ref().and_then(|b| t.level_set(Rel::Eq, b).min());
    Ok(CancellationReport {
        degenerate: false,
        c: c.clone(),
        beta,
        alpha,
        image_condition: Some(image_condition),
        plateau_condition: Some(plateau_condition),
        conditionally_cancellative: cc,
        cancellative,
        grid_agrees: cc == grid_witness.is_none(),
        grid_witness,
    })
}

// ---------------------------------------------------------------------------
// axioms on a grid

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub witness: Option<Vec<ExtReal>>,
}

impl AxiomCheck {
    fn new(witness: Option<Vec<ExtReal>>) -> Self {
        AxiomCheck { holds: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub grid_size: usize,
    pub commutative: AxiomCheck,
    pub monotone: AxiomCheck,
    pub associative: AxiomCheck,
    /// `T(x, y) ≥ max{x, y}`
    pub above_max: AxiomCheck,
    /// `T(x, y) ≤ min{x, y}`
    pub below_min: AxiomCheck,
    /// `T(x, 0) = x`
    pub neutral_zero: AxiomCheck,
    /// `T(x, 1) = x`
    pub neutral_one: AxiomCheck,
}

impl AxiomReport {
    fn core(&self) -> bool {
        self.commutative.holds && self.monotone.holds && self.associative.holds
    }

    pub fn is_tnorm(&self) -> bool {
        self.core() && self.neutral_one.holds
    }

    pub fn is_tconorm(&self) -> bool {
        self.core() && self.neutral_zero.holds
    }

    pub fn is_supconorm(&self) -> bool {
        self.core() && self.above_max.holds
    }
}

/// Tests the t-norm / t-conorm axioms of `T` on every pair (and, for
/// associativity, every triple) of a grid.
pub fn axioms_on_grid(op: &GeneratedOp, grid: &[ExtReal]) -> Result<AxiomReport> {
    let mut g = grid.to_vec();
    g.sort();
    g.dedup();
    let n = g.len();
    let mut vals = vec![vec![zero(); n]; n];
    for (i, x) in g.iter().enumerate() {
        for (j, y) in g.iter().enumerate() {
            vals[i][j] = op.eval(x, y)?;
        }
    }
    let find = |pred: &dyn Fn(usize, usize) -> bool| -> Option<Vec<ExtReal>> {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| pred(i, j))
            .map(|(i, j)| vec![g[i].clone(), g[j].clone()])
    };
    let commutative = find(&|i, j| vals[i][j] != vals[j][i]);
    let monotone = find(&|i, j| i + 1 < n && (vals[i][j] > vals[i + 1][j] || vals[j][i] > vals[j][i + 1]));
    let above_max = find(&|i, j| vals[i][j] < g[i].max_of(&g[j]));
    let below_min = find(&|i, j| vals[i][j] > g[i].min_of(&g[j]));
    let neutral = |e: ExtReal| -> Result<Option<Vec<ExtReal>>> {
        for x in &g {
            if op.eval(x, &e)? != *x {
                return Ok(Some(vec![x.clone(), e.clone()]));
            }
        }
        Ok(None)
    };
    let neutral_zero = neutral(zero())?;
    let neutral_one = neutral(one())?;
    let associative = brute_force_assoc(op, &g)?.map(|w| vec![w.x, w.y, w.z]);
    Ok(AxiomReport {
        grid_size: n,
        commutative: AxiomCheck::new(commutative),
        monotone: AxiomCheck::new(monotone),
        associative: AxiomCheck::new(associative),
        above_max: AxiomCheck::new(above_max),
        below_min: AxiomCheck::new(below_min),
        neutral_zero: AxiomCheck::new(neutral_zero),
        neutral_one: AxiomCheck::new(neutral_one),
    })
}

/// `{0, 1/(n-1), …, 1}`
pub fn uniform_grid(n: usize) -> Vec<ExtReal> {
    let d = (n.max(2) - 1) as i64;
    (0..=d).map(|k| ExtReal::ratio(k, d)).collect()
}

// ---------------------------------------------------------------------------
// the t-supconorm criterion under conditional cancellation

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HSet {
    /// `kappa` or the gap index.
    pub label: String,
    pub set: IntervalPointSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupconormReport {
    pub h_sets: Vec<HSet>,
    /// `F(⋃ H, M) ∩ (M ∖ {t(0)})`
    pub intersection: IntervalPointSet,
    pub is_supconorm: bool,
    pub axioms: AxiomReport,
    pub grid_agrees: bool,
}

pub fn supconorm_equivalence_check(op: &GeneratedOp) -> Result<SupconormReport> {
    need_supconorm(op)?;
    let f = op.f();
    let t0 = op.t().t0();
    if !f.is_strict() || *f.neutral() != t0 {
        return Err(Error::PreconditionViolated(format!(
            "needs a strict F with t(0) = {t0} as neutral element"
        )));
    }
    let dec = op.dec().ok_or_else(|| Error::PreconditionViolated("t must be left continuous".into()))?;
    if !cancellation_check(op)?.conditionally_cancellative {
        return Err(Error::PreconditionViolated("T is not conditionally cancellative".into()));
    }
    let m = op.range();
    let fmm = f_image(f, m, m)?;
    let mut h_sets = Vec::new();
    if !t0.is_zero() {
        let z = fmm.intersect(&IntervalPointSet::closed_open(zero(), t0.clone()));
        h_sets.push(HSet { label: "kappa".into(), set: z.union(&IntervalPointSet::point(t0.clone())).o_hull() });
    } else {
        h_sets.push(HSet { label: "kappa".into(), set: IntervalPointSet::empty() });
    }
    for (k, g) in dec.gaps.iter().enumerate().filter(|(_, g)| !g.b.is_inf()) {
        let z = fmm.intersect(&IntervalPointSet::open(g.b.clone(), g.d.clone()));
        h_sets.push(HSet {
            label: k.to_string(),
            set: z.union(&IntervalPointSet::point(g.b.clone())).o_hull(),
        });
    }
    let union = h_sets.iter().fold(IntervalPointSet::empty(), |acc, h| acc.union(&h.set));
    let intersection = if union.is_empty() {
        union
    } else {
        f_image(f, &union, m)?.intersect(&m.difference(&IntervalPointSet::point(t0)))
    };
    let is_supconorm = intersection.is_empty();
    let axioms = axioms_on_grid(op, &op.default_grid())?;
    Ok(SupconormReport {
        grid_agrees: axioms.is_supconorm() == is_supconorm,
        h_sets,
        intersection,
        is_supconorm,
        axioms,
    })
}

// ---------------------------------------------------------------------------
// continuity

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointContinuity {
    pub x: ExtReal,
    pub y: ExtReal,
    pub value: ExtReal,
    /// `T(x⁻, y⁻)`
    pub left: ExtReal,
    /// `T(x⁺, y⁺)`
    pub right: ExtReal,
    pub left_continuous: bool,
    pub right_continuous: bool,
}

fn step_below(bps: &[ExtReal], x: &ExtReal) -> ExtReal {
    match bps.iter().rev().find(|b| *b < x) {
        Some(b) => ExtReal::midpoint(b, x),
        None => x.clone(),
    }
}

fn step_above(bps: &[ExtReal], x: &ExtReal) -> ExtReal {
    match bps.iter().find(|b| *b > x) {
        Some(b) => ExtReal::midpoint(x, b),
        None => x.clone(),
    }
}

/// Limit of `t^[-1](w)` along values approaching `target` from the side of
/// `probe`; equal values mean the approach is eventually constant.
fn inverse_limit(op: &GeneratedOp, target: &ExtReal, probe: &ExtReal) -> Result<ExtReal> {
    let tinv = op.tinv();
    Ok(if probe == target {
        tinv.at(target)
    } else if probe < target {
        tinv.left_limit(target)?
    } else {
        tinv.inner_right_limit(target)
    })
}

/// `T(x, y)` with its exact diagonal one-sided limits. A coordinate at the
/// end of `[0, 1]` stays fixed during the approach.
pub fn limits_at(op: &GeneratedOp, x: &ExtReal, y: &ExtReal) -> Result<PointContinuity> {
    let t = op.t();
    let f = op.f();
    let bps = t.breakpoints();
    let value = op.eval(x, y)?;
    let lim_below = |v: &ExtReal| -> Result<ExtReal> {
        if v.is_zero() {
            t.eval(v)
        } else {
            t.left_limit(v)
        }
    };
    let lim_above = |v: &ExtReal| -> Result<ExtReal> {
        if *v == one() {
            t.eval(v)
        } else {
            t.right_limit(v)
        }
    };
    // F is monotone, so one probe inside the last segment decides whether
    // F(t(·), t(·)) is constant along the approach.
    let left = if x.is_zero() && y.is_zero() {
        value.clone()
    } else {
        let target = f.try_eval(&lim_below(x)?, &lim_below(y)?)?;
        let probe = f.try_eval(&t.eval(&step_below(&bps, x))?, &t.eval(&step_below(&bps, y))?)?;
        inverse_limit(op, &target, &probe)?
    };
    let right = if *x == one() && *y == one() {
        value.clone()
    } else {
        let target = f.try_eval(&lim_above(x)?, &lim_above(y)?)?;
        let probe = f.try_eval(&t.eval(&step_above(&bps, x))?, &t.eval(&step_above(&bps, y))?)?;
        inverse_limit(op, &target, &probe)?
    };
    Ok(PointContinuity {
        left_continuous: left == value,
        right_continuous: right == value,
        x: x.clone(),
        y: y.clone(),
        value,
        left,
        right,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    pub t_continuous: bool,
    pub t_strictly_increasing: bool,
    pub pairs_checked: usize,
    pub left_failures: Vec<PointContinuity>,
    pub right_failures: Vec<PointContinuity>,
    pub continuous: bool,
    /// For strictly increasing `t`: right continuity agrees with
    /// `|M ∩ [F(t(x), t(y)), F(t(x⁺), t(y⁺))]| ≤ 1` at every checked pair.
    pub interval_criterion_agrees: Option<bool>,
    /// `T` is constant with this value.
    pub constant_value: Option<ExtReal>,
    /// `F(t(x), t(0⁺)) < F(t(x), t(y))` for all `x, y ∈ (0, 1)`.
    pub tconorm_criterion_applicable: bool,
    /// `t` continuous and strictly increasing on `(0, 1]` with
    /// `F(t(0⁺), t(0⁺)) = t(0⁺)`.
    pub tconorm_criterion: bool,
    pub axioms: AxiomReport,
    pub continuous_tconorm: bool,
}

/// Jump values of `t^[-1]`.
fn inverse_jumps(op: &GeneratedOp) -> Result<Vec<ExtReal>> {
    let tinv = op.tinv();
    let mut out = Vec::new();
    for w in tinv.breakpoints() {
        let at = tinv.at(&w);
        let left = if w.is_zero() { at.clone() } else { tinv.left_limit(&w)? };
        if left != at || tinv.inner_right_limit(&w) != at {
            out.push(w);
        }
    }
    Ok(out)
}

/// Grid pairs plus, for each grid `x`, the `y` where `F(t(x), t(y))` meets a
/// jump of `t^[-1]`.
fn continuity_candidates(op: &GeneratedOp) -> Result<Vec<(ExtReal, ExtReal)>> {
    let t = op.t();
    let f = op.f();
    let grid = op.default_grid();
    let jumps = inverse_jumps(op)?;
    let mut ys = grid.clone();
    for x in &grid {
        let tx = t.eval(x)?;
        for j in &jumps {
            let v = if f.is_max() {
                (tx < *j).then(|| j.clone())
            } else {
                f.residual(&tx, j)
            };
            let Some(v) = v else { continue };
            ys.push(op.tinv().at(&v));
            for p in t.level_set(Rel::Eq, &v).parts() {
                ys.push(p.lo.clone());
                ys.push(p.hi.clone());
                ys.push(p.interior_point());
            }
        }
    }
    ys.retain(|y| *y <= one());
    ys.sort();
    ys.dedup();
    let mut pairs = Vec::new();
    for x in &grid {
        for y in &ys {
            pairs.push((x.clone(), y.clone()));
            if !grid.contains(y) {
                pairs.push((y.clone(), x.clone()));
            }
        }
    }
    Ok(pairs)
}

pub fn continuity_check(op: &GeneratedOp) -> Result<ContinuityReport> {
    need_continuous(op)?;
    let t = op.t();
    let f = op.f();
    let m = op.range();
    let strict_t = t.is_strict();
    let pairs = continuity_candidates(op)?;
    let mut left_failures = Vec::new();
    let mut right_failures = Vec::new();
    let mut agrees = true;
    for (x, y) in &pairs {
        let pc = limits_at(op, x, y)?;
        if strict_t && *x < one() && *y < one() {
            let lo = f.try_eval(&t.eval(x)?, &t.eval(y)?)?;
            let hi = f.try_eval(&t.right_limit(x)?, &t.right_limit(y)?)?;
            let slice = m.intersect(&IntervalPointSet::closed(lo, hi));
            let small = slice.is_empty() || slice.as_singleton().is_some();
            agrees &= small == pc.right_continuous;
        }
        if !pc.left_continuous {
            left_failures.push(pc.clone());
        }
        if !pc.right_continuous {
            right_failures.push(pc);
        }
    }
    let continuous = left_failures.is_empty() && right_failures.is_empty();

    let v00 = op.eval(&zero(), &zero())?;
    let constant_value = (op.eval(&one(), &one())? == v00).then_some(v00);

    let a = t.right_limit(&zero())?;
    let finite_inside = t.level_set(Rel::Eq, &ExtReal::Inf).intersect(&IntervalPointSet::open(zero(), one())).is_empty();
    let applicable = f.is_strict() && finite_inside && !initial_plateau(t)?;
    let mut cont_tail = t.left_limit(&one())? == t.eval(&one())?;
    for x in inner_breakpoints(t) {
        let l = t.eval_with_limits(&x)?;
        cont_tail &= l.left == l.value && l.value == l.right;
    }
    let criterion = strict_t && cont_tail && f.try_eval(&a, &a)? == a;
    let axioms = axioms_on_grid(op, &op.default_grid())?;
    let continuous_tconorm = if applicable { criterion } else { continuous && axioms.is_tconorm() };

    Ok(ContinuityReport {
        t_continuous: t.validate().continuous,
        t_strictly_increasing: strict_t && t.is_non_decreasing(),
        pairs_checked: pairs.len(),
        left_failures,
        right_failures,
        continuous,
        interval_criterion_agrees: strict_t.then_some(agrees),
        constant_value,
        tconorm_criterion_applicable: applicable,
        tconorm_criterion: criterion,
        axioms,
        continuous_tconorm,
    })
}
