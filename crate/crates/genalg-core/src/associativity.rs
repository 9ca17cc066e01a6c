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

//! The generated operation `T(x, y) = t^[-1](F(t(x), t(y)))`, the generator
//! condition, the exact F-condition decision and a brute-force oracle.

use std::collections::HashMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decomposition::RangeDecomposition;
use crate::error::{Error, Result};
use crate::generators::PiecewiseMonotone;
use crate::inverses::weak_pseudo_inverse;
use crate::numerics::{f_image, ExtReal, IntervalPointSet, Part, Q};
use crate::semigroups::SemigroupDescriptor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    /// Non-increasing generator; `T` is a candidate t-norm.
    Norm,
    /// Non-decreasing generator; `T` is a candidate t-supconorm.
    Supconorm,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "norm" => Ok(Mode::Norm),
            "supconorm" => Ok(Mode::Supconorm),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// `T(x, y) = t^[-1](F(t(x), t(y)))` together with its ingredients.
#[derive(Clone, Debug)]
pub struct GeneratedOp {
    t: PiecewiseMonotone,
    f: SemigroupDescriptor,
    tinv: PiecewiseMonotone,
    dec: Option<RangeDecomposition>,
    mode: Mode,
    m: IntervalPointSet,
}

impl GeneratedOp {
    pub fn new(t: &PiecewiseMonotone, f: &SemigroupDescriptor, mode: Mode) -> Result<Self> {
        let ok = match mode {
            Mode::Supconorm => t.is_non_decreasing(),
            Mode::Norm => !t.is_non_decreasing(),
        };
        if !ok {
            return Err(Error::PreconditionViolated(format!(
                "{mode:?} mode does not match a {:?} generator",
                t.direction()
            )));
        }
        let dec = if mode == Mode::Supconorm && t.validate().left_continuous {
            RangeDecomposition::decompose(t).ok()
        } else {
            None
        };
        Ok(GeneratedOp {
            tinv: weak_pseudo_inverse(t),
            m: t.range_of(),
            t: t.clone(),
            f: f.clone(),
            dec,
            mode,
        })
    }

    pub fn t(&self) -> &PiecewiseMonotone {
        &self.t
    }

    pub fn f(&self) -> &SemigroupDescriptor {
        &self.f
    }

    pub fn tinv(&self) -> &PiecewiseMonotone {
        &self.tinv
    }

    pub fn dec(&self) -> Option<&RangeDecomposition> {
        self.dec.as_ref()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn range(&self) -> &IntervalPointSet {
        &self.m
    }

    pub fn eval(&self, x: &ExtReal, y: &ExtReal) -> Result<ExtReal> {
        let v = self.f.try_eval(&self.t.eval(x)?, &self.t.eval(y)?)?;
        Ok(self.tinv.at(&v))
    }

    /// Breakpoints of `t`, weak-inverse images of the range boundary points,
    /// `0`, `1`, and two rounds of midpoints between consecutive points.
    pub fn default_grid(&self) -> Vec<ExtReal> {
        let mut pts = self.t.breakpoints();
        pts.push(ExtReal::zero());
        pts.push(ExtReal::one());
        let mut anchors = self.m.finite_endpoints();
        anchors.push(self.t.t0());
        if let Some(dec) = &self.dec {
            for g in &dec.gaps {
                anchors.push(g.b.clone());
                anchors.push(g.d.clone());
            }
        }
        for a in anchors {
            pts.push(self.tinv.at(&a));
        }
        pts.sort();
        pts.dedup();
        // two rounds of midpoints
        for _ in 0..2 {
            let mut out = pts.clone();
            for w in pts.windows(2) {
                out.push(ExtReal::midpoint(&w[0], &w[1]));
            }
            out.sort();
            out.dedup();
            pts = out;
        }
        pts
    }
}

/// Outcome of the image-inclusion condition on the generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionOutcome {
    pub holds: bool,
    pub threshold: ExtReal,
    pub image: IntervalPointSet,
    pub allowed: IntervalPointSet,
    pub witness: Option<PairWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub x: ExtReal,
    pub y: ExtReal,
    pub tx: ExtReal,
    pub ty: ExtReal,
    pub value: ExtReal,
}

fn finite_points(m: &IntervalPointSet) -> Option<Vec<ExtReal>> {
    m.parts().iter().all(Part::is_point).then(|| m.isolated_points())
}

fn table_image(f: &SemigroupDescriptor, a: &[ExtReal], b: &[ExtReal]) -> Result<IntervalPointSet> {
    let mut v = Vec::new();
    for x in a {
        for y in b {
            v.push(f.try_eval(x, y)?);
        }
    }
    Ok(IntervalPointSet::points(v))
}

fn image_mm(f: &SemigroupDescriptor, m: &IntervalPointSet) -> Result<IntervalPointSet> {
    if f.is_table() {
        let pts = finite_points(m).ok_or_else(|| {
            Error::UnsupportedSemigroup("a table operation needs a finite range".into())
        })?;
        return table_image(f, &pts, &pts);
    }
    f_image(f, m, m)
}

/// Checks `F(Ran t, Ran t) ⊆ Ran t ∪ [threshold, ∞]`, where the threshold is
/// `t(1⁻)` for t-supconorms and `t(0⁺)` for t-norms.
pub fn check_generator_condition(op: &GeneratedOp) -> Result<ConditionOutcome> {
    let t = &op.t;
    let threshold = match op.mode {
        Mode::Supconorm => t.left_limit(&ExtReal::one())?,
        Mode::Norm => t.right_limit(&ExtReal::zero())?,
    };
    let m = &op.m;
    let image = image_mm(&op.f, m)?;
    let allowed = m.union(&IntervalPointSet::closed(threshold.clone(), ExtReal::Inf));
    let bad = image.difference(&allowed);
    let witness = if bad.is_empty() { None } else { find_pair(op, &bad) };
    Ok(ConditionOutcome { holds: bad.is_empty(), threshold, image, allowed, witness })
}

fn find_pair(op: &GeneratedOp, bad: &IntervalPointSet) -> Option<PairWitness> {
    find_pair_in(op, &op.m, &op.m, bad)
}

/// Some `a ∈ left`, `b ∈ right` with `F(a, b) ∈ bad`, mapped back through `t`.
pub(crate) fn find_pair_in(
    op: &GeneratedOp,
    left: &IntervalPointSet,
    right: &IntervalPointSet,
    bad: &IntervalPointSet,
) -> Option<PairWitness> {
    let f = &op.f;
    let pts = left.sample_points(4);
    let rpts = right.sample_points(4);
    let mut hit = None;
    'outer: for a in &pts {
        for b in &rpts {
            if let Ok(v) = f.try_eval(a, b) {
                if bad.contains(&v) {
                    hit = Some((a.clone(), b.clone(), v));
                    break 'outer;
                }
            }
        }
    }
    if hit.is_none() {
        // solve F(a, b) = v for a target inside the bad set
        let v = bad.parts()[0].interior_point();
        for a in &pts {
            if let Some(b) = f.residual(a, &v) {
                if right.contains(&b) {
                    hit = Some((a.clone(), b, v.clone()));
                    break;
                }
            }
        }
    }
    let (a, b, value) = hit?;
    let x = op.t.preimage_point(&a)?;
    let y = op.t.preimage_point(&b)?;
    Some(PairWitness { tx: a, ty: b, x, y, value })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleWitness {
    pub x: ExtReal,
    pub y: ExtReal,
    pub z: ExtReal,
    /// `T(T(x, y), z)`
    pub lhs: ExtReal,
    /// `T(x, T(y, z))`
    pub rhs: ExtReal,
}

/// Evaluates both bracketings of `T` on one triple.
pub fn verify_triple(op: &GeneratedOp, x: &ExtReal, y: &ExtReal, z: &ExtReal) -> Result<TripleWitness> {
    let lhs = op.eval(&op.eval(x, y)?, z)?;
    let rhs = op.eval(x, &op.eval(y, z)?)?;
    Ok(TripleWitness { x: x.clone(), y: y.clone(), z: z.clone(), lhs, rhs })
}

/// First triple of the grid, in lexicographic order, with
/// `T(T(x, y), z) ≠ T(x, T(y, z))`.
pub fn brute_force_assoc(op: &GeneratedOp, grid: &[ExtReal]) -> Result<Option<TripleWitness>> {
    let mut cache: HashMap<(ExtReal, ExtReal), ExtReal> = HashMap::new();
    let mut tval: HashMap<ExtReal, ExtReal> = HashMap::new();
    let mut ev = |a: &ExtReal, b: &ExtReal| -> Result<ExtReal> {
        if let Some(v) = cache.get(&(a.clone(), b.clone())) {
            return Ok(v.clone());
        }
        let mut tv = |x: &ExtReal| -> Result<ExtReal> {
            if let Some(v) = tval.get(x) {
                return Ok(v.clone());
            }
            let v = op.t.eval(x)?;
            tval.insert(x.clone(), v.clone());
            Ok(v)
        };
        let (ta, tb) = (tv(a)?, tv(b)?);
        let v = op.tinv.at(&op.f.try_eval(&ta, &tb)?);
        cache.insert((a.clone(), b.clone()), v.clone());
        Ok(v)
    };
    for x in grid {
        for y in grid {
            let xy = ev(x, y)?;
            for z in grid {
                let yz = ev(y, z)?;
                let lhs = ev(&xy, z)?;
                let rhs = ev(x, &yz)?;
                if lhs != rhs {
                    return Ok(Some(TripleWitness {
                        x: x.clone(),
                        y: y.clone(),
                        z: z.clone(),
                        lhs,
                        rhs,
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Associative,
    NotAssociative,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexRecord {
    /// `"tau"` or the gap number.
    pub index: String,
    pub m_k_y: IntervalPointSet,
    pub i_nonempty: bool,
    pub h: IntervalPointSet,
    pub image: IntervalPointSet,
    pub c1: bool,
    pub c2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub k: String,
    pub l: String,
    pub i_nonempty: bool,
    pub j: IntervalPointSet,
    pub c3: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellRecord {
    pub y: ExtReal,
    pub m_y: IntervalPointSet,
    pub indices: Vec<IndexRecord>,
    pub pairs: Vec<PairRecord>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrakT {
    pub t1: IntervalPointSet,
    pub t2: IntervalPointSet,
    pub t3: IntervalPointSet,
    pub t: IntervalPointSet,
    /// Whether every open cell was swept exactly.
    pub exact: bool,
    /// `𝔗 ∩ (M ∖ {t(0)}) ≠ ∅`, decided per sample.
    pub meets_range: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub verdict: Verdict,
    pub witness: Option<TripleWitness>,
    /// Failing range triple `(a, b, c)` with `(a⊗b)⊗c ≠ a⊗(b⊗c)`.
    pub range_witness: Option<[ExtReal; 3]>,
    pub samples: usize,
    pub records: Vec<CellRecord>,
    pub frak_t: Option<FrakT>,
}

struct Index {
    label: String,
    region: IntervalPointSet,
    base: ExtReal,
}

struct Ctx<'a> {
    f: &'a SemigroupDescriptor,
    dec: &'a RangeDecomposition,
    m: &'a IntervalPointSet,
    m_star: IntervalPointSet,
    indices: Vec<Index>,
}

struct Sample {
    record: CellRecord,
    t1: IntervalPointSet,
    t3: IntervalPointSet,
    meets: bool,
}

impl<'a> Ctx<'a> {
    fn new(f: &'a SemigroupDescriptor, dec: &'a RangeDecomposition) -> Self {
        let m = dec.m();
        let t0 = dec.t0.clone();
        let mut indices = vec![Index {
            label: "tau".into(),
            region: IntervalPointSet::closed_open(ExtReal::zero(), t0.clone()),
            base: t0.clone(),
        }];
        for (k, g) in dec.gaps.iter().enumerate() {
            let region = dec.gap_region(k);
            if !region.is_empty() {
                indices.push(Index { label: k.to_string(), region, base: g.b.clone() });
            }
        }
        Ctx { f, dec, m, m_star: m.difference(&IntervalPointSet::point(t0)), indices }
    }

    fn img(&self, a: &IntervalPointSet, b: &IntervalPointSet) -> IntervalPointSet {
        f_image(self.f, a, b).expect("built-in operation")
    }

    fn sample(&self, y: &ExtReal) -> Sample {
        let f = self.f;
        let yset = IntervalPointSet::point(y.clone());
        let pre = |s: &IntervalPointSet| self.m.intersect(&f.preimage_fixed(s, y).expect("built-in"));
        let m_y = pre(self.m);
        let mks: Vec<IntervalPointSet> = self.indices.iter().map(|ix| pre(&ix.region)).collect();
        // ∞ absorbs under every built-in F, so x₂ = ∞ never separates the two
        // bracketings; it is left out of the image tests.
        let m_y_fin = m_y.difference(&IntervalPointSet::point(ExtReal::inf()));
        let inf_my = m_y_fin.inf().map(|(v, _)| v);
        let mut t1 = IntervalPointSet::empty();
        let mut t3 = IntervalPointSet::empty();
        let mut meets = false;
        let mut passed = true;
        let mut indices = Vec::new();
        for (ix, mk) in self.indices.iter().zip(&mks) {
            let a = self.img(mk, &yset);
            let base = IntervalPointSet::point(ix.base.clone());
            let h = base.union(&a).o_hull();
            let image = self.img(&h, &m_y_fin);
            let i_nonempty = !mk.is_empty()
                && !m_y_fin.is_empty()
                && if f.is_strict() {
                    inf_my.as_ref().is_some_and(|v| !v.is_inf())
                } else {
                    let top = a.sup().map(|(s, _)| s).unwrap_or_else(ExtReal::zero).max_of(&ix.base);
                    inf_my.as_ref().is_some_and(|v| *v < top)
                };
            let hits = !image.intersect(&self.m_star).is_empty();
            meets |= hits;
            let c1 = !i_nonempty || !hits;
            passed &= c1;
            t1 = t1.union(&image);
            indices.push(IndexRecord {
                index: ix.label.clone(),
                m_k_y: mk.clone(),
                i_nonempty,
                h,
                image,
                c1,
                c2: c1,
            });
        }
        let mut pairs = Vec::new();
        for (i, ki) in self.indices.iter().enumerate() {
            for (j, lj) in self.indices.iter().enumerate() {
                let (mk, ml) = (&mks[i], &mks[j]);
                if mk.is_empty() || ml.is_empty() {
                    continue;
                }
                let p = self.img(&IntervalPointSet::point(ki.base.clone()), ml);
                let q = self.img(mk, &IntervalPointSet::point(lj.base.clone()));
                let same_point = matches!((p.as_singleton(), q.as_singleton()), (Some(a), Some(b)) if a == b);
                let i_nonempty = !same_point;
                let jset = p.union(&q).o_hull();
                let hits = !jset.intersect(&self.m_star).is_empty();
                meets |= hits;
                let c3 = !i_nonempty || !hits;
                passed &= c3;
                t3 = t3.union(&jset);
                pairs.push(PairRecord { k: ki.label.clone(), l: lj.label.clone(), i_nonempty, j: jset, c3 });
            }
        }
        Sample {
            record: CellRecord { y: y.clone(), m_y, indices, pairs, passed },
            t1,
            t3,
            meets,
        }
    }

    /// Values of `y` where the shape of some set of the condition may change.
    fn critical_values(&self) -> Vec<ExtReal> {
        let mut e0 = self.m.finite_endpoints();
        e0.push(self.dec.t0.clone());
        for g in &self.dec.gaps {
            e0.push(g.b.clone());
            e0.push(g.d.clone());
        }
        e0.retain(|v| !v.is_inf());
        e0.sort();
        e0.dedup();
        if self.f.is_max() {
            return e0;
        }
        let mut e1 = Vec::new();
        for a in &e0 {
            for b in &e0 {
                e1.push(self.f.eval(a, b));
            }
        }
        e1.sort();
        e1.dedup();
        let mut ys = e0.clone();
        let mut push_res = |p: &ExtReal, q: &ExtReal| {
            if let Some(y) = self.f.residual(p, q) {
                ys.push(y);
            }
        };
        for p in &e0 {
            for q in e0.iter().chain(&e1) {
                push_res(p, q);
            }
        }
        for p in &e1 {
            for q in &e0 {
                push_res(p, q);
            }
        }
        ys.sort();
        ys.dedup();
        ys
    }
}

/// Cells of `M`: isolated sample points and open intervals with interior
/// samples.
enum Cell {
    Point(ExtReal),
    Open { lo: ExtReal, hi: ExtReal, samples: Vec<ExtReal> },
}

fn cells(m: &IntervalPointSet, crit: &[ExtReal]) -> Vec<Cell> {
    let mut out = Vec::new();
    for p in m.parts() {
        if p.is_point() {
            out.push(Cell::Point(p.lo.clone()));
            continue;
        }
        let mut cuts = vec![p.lo.clone()];
        cuts.extend(crit.iter().filter(|c| **c > p.lo && **c < p.hi).cloned());
        cuts.push(p.hi.clone());
        if p.lo_closed {
            out.push(Cell::Point(p.lo.clone()));
        }
        for (i, w) in cuts.windows(2).enumerate() {
            if i > 0 {
                out.push(Cell::Point(w[0].clone()));
            }
            let samples: Vec<ExtReal> = match (&w[0], &w[1]) {
                (ExtReal::Fin(a), ExtReal::Fin(b)) => (1..=4)
                    .map(|j| ExtReal::Fin(a + (b - a) * Q::new(j.into(), 5.into())))
                    .collect(),
                (ExtReal::Fin(a), ExtReal::Inf) => {
                    (1..=4).map(|j| ExtReal::Fin(a + Q::from_integer(j.into()))).collect()
                }
                _ => Vec::new(),
            };
            out.push(Cell::Open { lo: w[0].clone(), hi: w[1].clone(), samples });
        }
        if p.hi_closed {
            out.push(Cell::Point(p.hi.clone()));
        }
    }
    out
}

/// `v(y) = (a + b·y) / (c + d·y)` through three samples; `None` if no such
/// function fits a fourth sample.
fn mobius_fit(pts: &[(Q, Q)]) -> Option<[Q; 4]> {
    let rows: Vec<[Q; 4]> = pts[..3]
        .iter()
        .map(|(y, v)| [Q::one(), y.clone(), -v.clone(), -(y * v)])
        .collect();
    let det3 = |c: [usize; 3]| -> Q {
        let m = |r: usize, k: usize| rows[r][c[k]].clone();
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    };
    let n = [det3([1, 2, 3]), -det3([0, 2, 3]), det3([0, 1, 3]), -det3([0, 1, 2])];
    if n.iter().all(Zero::is_zero) {
        return None;
    }
    let ok = pts.iter().all(|(y, v)| {
        let den = &n[2] + &n[3] * y;
        !den.is_zero() && (&n[0] + &n[1] * y) == v * den
    });
    ok.then_some(n)
}

fn mobius_at(n: &[Q; 4], y: &ExtReal) -> Option<ExtReal> {
    let v = match y {
        ExtReal::Fin(y) => {
            let num = &n[0] + &n[1] * y;
            let den = &n[2] + &n[3] * y;
            if den.is_zero() {
                return if num.is_zero() { None } else { Some(ExtReal::Inf) };
            }
            num / den
        }
        ExtReal::Inf => {
            if !n[3].is_zero() {
                &n[1] / &n[3]
            } else if !n[1].is_zero() {
                return Some(ExtReal::Inf);
            } else {
                &n[0] / &n[2]
            }
        }
    };
    ExtReal::try_from_q(v).ok()
}

/// Limits at both cell ends of one endpoint sampled at interior points.
fn endpoint_limits(ys: &[ExtReal], vs: &[ExtReal], lo: &ExtReal, hi: &ExtReal) -> Option<(ExtReal, ExtReal, bool)> {
    if vs.iter().all(|v| *v == vs[0]) {
        return Some((vs[0].clone(), vs[0].clone(), true));
    }
    if vs.iter().any(ExtReal::is_inf) {
        return None;
    }
    let pts: Vec<(Q, Q)> = ys
        .iter()
        .zip(vs)
        .map(|(y, v)| (y.as_q().unwrap().clone(), v.as_q().unwrap().clone()))
        .collect();
    let n = mobius_fit(&pts)?;
    Some((mobius_at(&n, lo)?, mobius_at(&n, hi)?, false))
}

/// Union over an open cell of a set whose endpoints move monotonically.
fn sweep(ys: &[ExtReal], sets: &[IntervalPointSet], lo: &ExtReal, hi: &ExtReal) -> Option<IntervalPointSet> {
    let shape = |s: &IntervalPointSet| {
        s.parts().iter().map(|p| (p.lo_closed, p.hi_closed, p.is_point())).collect::<Vec<_>>()
    };
    let s0 = shape(&sets[0]);
    if sets.iter().any(|s| shape(s) != s0) {
        return None;
    }
    let mut out = Vec::new();
    for i in 0..s0.len() {
        let los: Vec<ExtReal> = sets.iter().map(|s| s.parts()[i].lo.clone()).collect();
        let his: Vec<ExtReal> = sets.iter().map(|s| s.parts()[i].hi.clone()).collect();
        let (l0, l1, lconst) = endpoint_limits(ys, &los, lo, hi)?;
        let (h0, h1, hconst) = endpoint_limits(ys, &his, lo, hi)?;
        let (lo_v, lo_closed) = if lconst { (l0, s0[i].0) } else { (l0.min_of(&l1), false) };
        let (hi_v, hi_closed) = if hconst { (h0, s0[i].1) } else { (h0.max_of(&h1), false) };
        out.push(Part::new(lo_v, lo_closed, hi_v, hi_closed));
    }
    IntervalPointSet::from_parts(&out).ok()
}

fn otimes_witness(op: &GeneratedOp, a: &ExtReal, b: &ExtReal, c: &ExtReal) -> Option<TripleWitness> {
    let (x, y, z) = (op.tinv.at(a), op.tinv.at(b), op.tinv.at(c));
    let w = verify_triple(op, &x, &y, &z).ok()?;
    (w.lhs != w.rhs).then_some(w)
}

fn otimes_fails(dec: &RangeDecomposition, f: &SemigroupDescriptor, a: &ExtReal, b: &ExtReal, c: &ExtReal) -> bool {
    let l = dec.otimes(f, &dec.otimes(f, a, b).unwrap(), c).unwrap();
    let r = dec.otimes(f, a, &dec.otimes(f, b, c).unwrap()).unwrap();
    l != r
}

fn witness_near(op: &GeneratedOp, dec: &RangeDecomposition, rec: &CellRecord) -> Option<([ExtReal; 3], TripleWitness)> {
    let mut cands = rec.m_y.sample_points(6);
    for ix in &rec.indices {
        cands.extend(ix.m_k_y.sample_points(6));
    }
    cands.sort();
    cands.dedup();
    // small denominators first, for readable witnesses
    cands.sort_by_key(|v| v.as_q().map(|q| q.denom().clone()));
    let y = &rec.y;
    for a in &cands {
        for c in &cands {
            if otimes_fails(dec, &op.f, a, y, c) {
                if let Some(w) = otimes_witness(op, a, y, c) {
                    return Some(([a.clone(), y.clone(), c.clone()], w));
                }
            }
        }
    }
    None
}

/// Exact decision of the F-condition of the range of a left-continuous
/// non-decreasing generator.
pub fn f_condition_check(op: &GeneratedOp) -> Result<ConditionReport> {
    let dec = op.dec.as_ref().ok_or_else(|| {
        Error::PreconditionViolated("the condition needs a left-continuous non-decreasing generator".into())
    })?;
    if op.f.is_table() {
        return table_check(op, dec);
    }
    let ctx = Ctx::new(&op.f, dec);
    let crit = ctx.critical_values();
    let mut records = Vec::new();
    let mut t1 = IntervalPointSet::empty();
    let mut t3 = IntervalPointSet::empty();
    let mut exact = true;
    let mut meets = false;
    let mut failing: Option<usize> = None;
    let mut take = |s: Sample, records: &mut Vec<CellRecord>, failing: &mut Option<usize>| {
        if !s.record.passed && failing.is_none() {
            *failing = Some(records.len());
        }
        meets |= s.meets;
        records.push(s.record);
    };
    for cell in cells(ctx.m, &crit) {
        match cell {
            Cell::Point(y) => {
                let s = ctx.sample(&y);
                t1 = t1.union(&s.t1);
                t3 = t3.union(&s.t3);
                take(s, &mut records, &mut failing);
            }
            Cell::Open { lo, hi, samples } => {
                let ss: Vec<Sample> = samples.iter().map(|y| ctx.sample(y)).collect();
                let s1: Vec<IntervalPointSet> = ss.iter().map(|s| s.t1.clone()).collect();
                let s3: Vec<IntervalPointSet> = ss.iter().map(|s| s.t3.clone()).collect();
                for (sets, acc) in [(&s1, &mut t1), (&s3, &mut t3)] {
                    match sweep(&samples, sets, &lo, &hi) {
                        Some(u) => *acc = acc.union(&u),
                        None => {
                            exact = false;
                            for s in sets.iter() {
                                *acc = acc.union(s);
                            }
                        }
                    }
                }
                for s in ss {
                    take(s, &mut records, &mut failing);
                }
            }
        }
    }
    let frak = FrakT {
        t: t1.union(&t3),
        t2: t1.clone(),
        t1,
        t3,
        exact,
        meets_range: meets,
    };
    let (verdict, witness, range_witness) = match failing {
        None => (Verdict::Associative, None, None),
        Some(i) => match witness_near(op, dec, &records[i]) {
            Some((rw, w)) => (Verdict::NotAssociative, Some(w), Some(rw)),
            None => {
                let grid = op.default_grid();
                match brute_force_assoc(op, &grid)? {
                    Some(w) => (Verdict::NotAssociative, Some(w), None),
                    None => (Verdict::Unknown, None, None),
                }
            }
        },
    };
    Ok(ConditionReport {
        verdict,
        witness,
        range_witness,
        samples: records.len(),
        records,
        frak_t: Some(frak),
    })
}

fn table_check(op: &GeneratedOp, dec: &RangeDecomposition) -> Result<ConditionReport> {
    let pts = finite_points(dec.m())
        .ok_or_else(|| Error::UnsupportedSemigroup("a table operation needs a finite range".into()))?;
    for a in &pts {
        for b in &pts {
            for c in &pts {
                let l = dec.otimes(&op.f, &dec.otimes(&op.f, a, b)?, c)?;
                let r = dec.otimes(&op.f, a, &dec.otimes(&op.f, b, c)?)?;
                if l != r {
                    let w = otimes_witness(op, a, b, c);
                    let verdict = if w.is_some() { Verdict::NotAssociative } else { Verdict::Unknown };
                    return Ok(ConditionReport {
                        verdict,
                        witness: w,
                        range_witness: Some([a.clone(), b.clone(), c.clone()]),
                        samples: 0,
                        records: Vec::new(),
                        frak_t: None,
                    });
                }
            }
        }
    }
    Ok(ConditionReport {
        verdict: Verdict::Associative,
        witness: None,
        range_witness: None,
        samples: 0,
        records: Vec::new(),
        frak_t: None,
    })
}

/// The sets `𝔗₁`, `𝔗₂`, `𝔗₃` and `𝔗 = 𝔗₁ ∪ 𝔗₂ ∪ 𝔗₃`.
pub fn frak_t(dec: &RangeDecomposition, f: &SemigroupDescriptor) -> Result<FrakT> {
    if f.is_table() {
        return Err(Error::UnsupportedSemigroup("𝔗 sets need a built-in operation".into()));
    }
    let ctx = Ctx::new(f, dec);
    let crit = ctx.critical_values();
    let mut t1 = IntervalPointSet::empty();
    let mut t3 = IntervalPointSet::empty();
    let mut exact = true;
    let mut meets = false;
    for cell in cells(ctx.m, &crit) {
        match cell {
            Cell::Point(y) => {
                let s = ctx.sample(&y);
                meets |= s.meets;
                t1 = t1.union(&s.t1);
                t3 = t3.union(&s.t3);
            }
            Cell::Open { lo, hi, samples } => {
                let ss: Vec<Sample> = samples.iter().map(|y| ctx.sample(y)).collect();
                meets |= ss.iter().any(|s| s.meets);
                let s1: Vec<IntervalPointSet> = ss.iter().map(|s| s.t1.clone()).collect();
                let s3: Vec<IntervalPointSet> = ss.iter().map(|s| s.t3.clone()).collect();
                for (sets, acc) in [(&s1, &mut t1), (&s3, &mut t3)] {
                    match sweep(&samples, sets, &lo, &hi) {
                        Some(u) => *acc = acc.union(&u),
                        None => {
                            exact = false;
                            for s in sets.iter() {
                                *acc = acc.union(s);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(FrakT { t: t1.union(&t3), t2: t1.clone(), t1, t3, exact, meets_range: meets })
}
