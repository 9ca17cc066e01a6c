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

//! The carrier operation `F`: built-in monotone semigroups on `[0, ∞]` and
//! finite tables.

use std::collections::HashMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ExtReal, IntervalPointSet, Q};

/// A finite carrier with an explicit operation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableData {
    carrier: Vec<ExtReal>,
    table: Vec<Vec<ExtReal>>,
    index: HashMap<ExtReal, usize>,
}

impl TableData {
    pub fn carrier(&self) -> &[ExtReal] {
        &self.carrier
    }

    fn idx(&self, x: &ExtReal) -> Option<usize> {
        self.index.get(x).copied()
    }

    fn get(&self, x: &ExtReal, y: &ExtReal) -> Option<&ExtReal> {
        Some(&self.table[self.idx(x)?][self.idx(y)?])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemigroupKind {
    Sum,
    Max,
    LinProd,
    Table(TableData),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupFlags {
    pub commutative: bool,
    pub continuous: bool,
    pub strictly_monotone: bool,
    pub gamma_member: bool,
}

/// An associative monotone operation `F` with its neutral element and flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupDescriptor {
    kind: SemigroupKind,
    neutral: ExtReal,
    flags: SemigroupFlags,
}

#[derive(Deserialize)]
struct TableJson {
    carrier: Vec<ExtReal>,
    table: Vec<Vec<ExtReal>>,
}

impl SemigroupDescriptor {
    fn builtin(kind: SemigroupKind, strict: bool) -> Self {
        SemigroupDescriptor {
            kind,
            neutral: ExtReal::zero(),
            flags: SemigroupFlags {
                commutative: true,
                continuous: true,
                strictly_monotone: strict,
                gamma_member: true,
            },
        }
    }

    pub fn sum() -> Self {
        Self::builtin(SemigroupKind::Sum, true)
    }

    pub fn max() -> Self {
        Self::builtin(SemigroupKind::Max, false)
    }

    pub fn linprod() -> Self {
        Self::builtin(SemigroupKind::LinProd, true)
    }

    /// Builds a table semigroup after checking shape, closure and
    /// associativity exhaustively. Flags are computed, never declared.
    pub fn table(carrier: Vec<ExtReal>, table: Vec<Vec<ExtReal>>) -> Result<Self> {
        let s = Self::table_unchecked(carrier, table)?;
        let data = match &s.kind {
            SemigroupKind::Table(d) => d,
            _ => unreachable!(),
        };
        for x in &data.carrier {
            for y in &data.carrier {
                let xy = data.get(x, y).ok_or_else(|| {
                    Error::InvalidTable(format!("F({x}, {y}) leaves the carrier"))
                })?;
                for z in &data.carrier {
                    let yz = data.get(y, z).ok_or_else(|| {
                        Error::InvalidTable(format!("F({y}, {z}) leaves the carrier"))
                    })?;
                    let l = data.get(xy, z);
                    let r = data.get(x, yz);
                    if l.is_none() || l != r {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(s)
    }

    /// Builds a table semigroup checking only the shape. Intended for
    /// evidence gathering on deliberately broken tables.
    pub fn table_unchecked(carrier: Vec<ExtReal>, table: Vec<Vec<ExtReal>>) -> Result<Self> {
        let n = carrier.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!("table must be {n}x{n}")));
        }
        let mut index = HashMap::new();
        for (i, x) in carrier.iter().enumerate() {
            if index.insert(x.clone(), i).is_some() {
                return Err(Error::InvalidTable(format!("duplicate carrier element {x}")));
            }
        }
        let data = TableData { carrier, table, index };
        let c = &data.carrier;
        let closed = c.iter().all(|x| c.iter().all(|y| data.idx(&data.table[data.idx(x).unwrap()][data.idx(y).unwrap()]).is_some()));
        let at = |x: &ExtReal, y: &ExtReal| data.get(x, y).cloned();
        let commutative = c.iter().all(|x| c.iter().all(|y| at(x, y) == at(y, x)));
        let neutral = c
            .iter()
            .find(|e| c.iter().all(|x| at(e, x).as_ref() == Some(x) && at(x, e).as_ref() == Some(x)))
            .cloned()
            .unwrap_or_else(|| c.iter().min().cloned().unwrap());
        let mut monotone = true;
        let mut strict = true;
        for x in c {
            for y in c {
                for z in c {
                    if y < z {
                        let (a, b) = (at(x, y), at(x, z));
                        if a > b || a.is_none() || b.is_none() {
                            monotone = false;
                        }
                        if !x.is_inf() && a >= b {
                            strict = false;
                        }
                    }
                }
            }
        }
        let zero = ExtReal::zero();
        let above = c.iter().all(|x| match at(x, &zero) {
            Some(v) => v >= *x,
            None => true,
        });
        let flags = SemigroupFlags {
            commutative,
            continuous: false,
            strictly_monotone: strict && monotone,
            gamma_member: closed && commutative && monotone && above,
        };
        Ok(SemigroupDescriptor { kind: SemigroupKind::Table(data), neutral, flags })
    }

    /// Loads `{"carrier": [...], "table": [[...]]}`.
    pub fn table_from_json(text: &str) -> Result<Self> {
        let j: TableJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("table json: {e}")))?;
        Self::table(j.carrier, j.table)
    }

    pub fn kind(&self) -> &SemigroupKind {
        &self.kind
    }

    pub fn neutral(&self) -> &ExtReal {
        &self.neutral
    }

    pub fn flags(&self) -> SemigroupFlags {
        self.flags
    }

    pub fn is_strict(&self) -> bool {
        self.flags.strictly_monotone
    }

    pub fn is_continuous(&self) -> bool {
        self.flags.continuous
    }

    pub fn is_max(&self) -> bool {
        matches!(self.kind, SemigroupKind::Max)
    }

    pub fn is_table(&self) -> bool {
        matches!(self.kind, SemigroupKind::Table(_))
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SemigroupKind::Sum => "SUM",
            SemigroupKind::Max => "MAX",
            SemigroupKind::LinProd => "LINPROD",
            SemigroupKind::Table(_) => "TABLE",
        }
    }

    pub fn table_carrier(&self) -> Option<&[ExtReal]> {
        match &self.kind {
            SemigroupKind::Table(d) => Some(d.carrier()),
            _ => None,
        }
    }

    /// `F(x, y)`. Panics for a table argument outside the carrier.
    pub fn eval(&self, x: &ExtReal, y: &ExtReal) -> ExtReal {
        self.try_eval(x, y).expect("argument outside the table carrier")
    }

    pub fn try_eval(&self, x: &ExtReal, y: &ExtReal) -> Result<ExtReal> {
        Ok(match &self.kind {
            SemigroupKind::Sum => x.add(y),
            SemigroupKind::Max => x.max_of(y),
            SemigroupKind::LinProd => match (x, y) {
                (ExtReal::Fin(a), ExtReal::Fin(b)) => ExtReal::Fin(a + b + a * b),
                _ => ExtReal::Inf,
            },
            SemigroupKind::Table(d) => d.get(x, y).cloned().ok_or_else(|| {
                Error::DomainError(format!("({x}, {y}) is outside the table carrier"))
            })?,
        })
    }

    /// The `y` with `F(p, y) = v` for a strict built-in and finite `p <= v`.
    pub fn residual(&self, p: &ExtReal, v: &ExtReal) -> Option<ExtReal> {
        let (ExtReal::Fin(a), ExtReal::Fin(b)) = (p, v) else {
            return None;
        };
        if b < a {
            return None;
        }
        match self.kind {
            SemigroupKind::Sum => Some(ExtReal::Fin(b - a)),
            SemigroupKind::LinProd => Some(ExtReal::Fin((b - a) / (Q::one() + a))),
            _ => None,
        }
    }

    /// `{ x ∈ [0, ∞] : F(x, y) ∈ s }` for a built-in operation.
    pub fn preimage_fixed(&self, s: &IntervalPointSet, y: &ExtReal) -> Result<IntervalPointSet> {
        match &self.kind {
            SemigroupKind::Table(_) => Err(Error::UnsupportedSemigroup(
                "preimages are defined only for the built-in operations".into(),
            )),
            SemigroupKind::Max => {
                let above = IntervalPointSet::interval(y.clone(), false, ExtReal::Inf, true);
                let mut out = s.intersect(&above);
                if s.contains(y) {
                    out = out.union(&IntervalPointSet::closed(ExtReal::zero(), y.clone()));
                }
                Ok(out)
            }
            SemigroupKind::Sum | SemigroupKind::LinProd => {
                if y.is_inf() {
                    return Ok(if s.contains(&ExtReal::Inf) {
                        IntervalPointSet::carrier()
                    } else {
                        IntervalPointSet::empty()
                    });
                }
                let yq = y.as_q().unwrap().clone();
                let scale = match self.kind {
                    SemigroupKind::Sum => Q::one(),
                    _ => Q::one() + &yq,
                };
                let shifted = s.intersect(&IntervalPointSet::closed(y.clone(), ExtReal::Inf));
                Ok(shifted.map_increasing(|v| match v {
                    ExtReal::Inf => Some(ExtReal::Inf),
                    ExtReal::Fin(w) => {
                        let x = (w - &yq) / &scale;
                        if x < Q::zero() {
                            None
                        } else {
                            Some(ExtReal::Fin(x))
                        }
                    }
                }))
            }
        }
    }

    /// Convenience for the preimage of a single value.
    pub fn solutions_fixed(&self, v: &ExtReal, y: &ExtReal) -> Result<IntervalPointSet> {
        self.preimage_fixed(&IntervalPointSet::point(v.clone()), y)
    }

    /// Samples the semigroup axioms and reports every violation found.
    pub fn gamma_evidence(&self, sample_budget: usize) -> EvidenceReport {
        let grid: Vec<ExtReal> = match &self.kind {
            SemigroupKind::Table(d) => d.carrier.clone(),
            _ => {
                let n = ((sample_budget as f64).cbrt().floor() as usize).max(3);
                let mut g = vec![ExtReal::zero(), ExtReal::Inf];
                for j in 1..n - 1 {
                    g.push(ExtReal::ratio(j as i64, 3));
                }
                g.sort();
                g
            }
        };
        let mut violations = Vec::new();
        let mut triples = 0usize;
        let at = |x: &ExtReal, y: &ExtReal| self.try_eval(x, y).ok();
        for x in &grid {
            for y in &grid {
                let xy = at(x, y);
                if xy.is_none() {
                    violations.push(Violation::new("closure", vec![x.clone(), y.clone()]));
                    continue;
                }
                if xy != at(y, x) {
                    violations.push(Violation::new("commutativity", vec![x.clone(), y.clone()]));
                }
                if y.is_zero() && xy.as_ref().is_some_and(|v| v < x) {
                    violations.push(Violation::new("F(x,0) >= x", vec![x.clone()]));
                }
                for z in &grid {
                    triples += 1;
                    let l = xy.as_ref().and_then(|v| at(v, z));
                    let r = at(y, z).and_then(|v| at(x, &v));
                    if l.is_none() || l != r {
                        violations.push(Violation::new(
                            "associativity",
                            vec![x.clone(), y.clone(), z.clone()],
                        ));
                    }
                    if y < z && at(x, y) > at(x, z) {
                        violations.push(Violation::new(
                            "monotonicity",
                            vec![x.clone(), y.clone(), z.clone()],
                        ));
                    }
                }
            }
        }
        let mut strictness_witness = None;
        'outer: for x in grid.iter().filter(|x| !x.is_inf()) {
            for (i, y) in grid.iter().enumerate() {
                for z in &grid[i + 1..] {
                    if at(x, y).is_some() && at(x, y) == at(x, z) {
                        strictness_witness = Some([x.clone(), y.clone(), z.clone()]);
                        break 'outer;
                    }
                }
            }
        }
        if self.is_max() && strictness_witness.is_some() {
            strictness_witness = Some([ExtReal::one(), ExtReal::zero(), ExtReal::ratio(1, 2)]);
        }
        EvidenceReport {
            semigroup: self.name().to_string(),
            triples_checked: triples,
            violations,
            strictly_monotone_observed: strictness_witness.is_none(),
            strictly_monotone_flag: self.flags.strictly_monotone,
            strictness_witness,
        }
    }

    /// Idempotent elements of the probe set. Each satisfies
    /// `F(a, x) = max{a, x}` for every `x`.
    pub fn idempotents_of(&self, probe: &IntervalPointSet) -> Result<IntervalPointSet> {
        if !self.flags.continuous {
            return Err(Error::PreconditionViolated(format!(
                "{} is not continuous",
                self.name()
            )));
        }
        Ok(match self.kind {
            SemigroupKind::Max => probe.clone(),
            _ => probe.intersect(&IntervalPointSet::points([ExtReal::zero(), ExtReal::Inf])),
        })
    }

    /// Whether `F(a, a) = a`.
    pub fn is_idempotent(&self, a: &ExtReal) -> bool {
        self.try_eval(a, a).ok().as_ref() == Some(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: String,
    pub args: Vec<ExtReal>,
}

impl Violation {
    fn new(property: &str, args: Vec<ExtReal>) -> Self {
        Violation { property: property.to_string(), args }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvidenceReport {
    pub semigroup: String,
    pub triples_checked: usize,
    pub violations: Vec<Violation>,
    pub strictly_monotone_observed: bool,
    pub strictly_monotone_flag: bool,
    /// `(x, y, z)` with `x < ∞`, `y < z` and `F(x, y) = F(x, z)`.
    pub strictness_witness: Option<[ExtReal; 3]>,
}
