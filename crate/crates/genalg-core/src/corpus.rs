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

//! The bundled example corpus: generator/semigroup fixtures with exact
//! expectations, and a deterministic runner.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::associativity::{brute_force_assoc, f_condition_check, check_generator_condition, verify_triple, GeneratedOp, Mode, Verdict};
use crate::decomposition::RangeDecomposition;
use crate::error::{Error, Result};
use crate::generators::PiecewiseMonotone;
use crate::inverses::{pseudo_inverse, weak_pseudo_inverse};
use crate::numerics::{ExtReal, IntervalPointSet};
use crate::properties::{
    axioms_on_grid, cancellation_check, continuity_check, idempotent_points, limit_property_check, limits_at,
    uniform_grid, LimitVerdict,
};
use crate::semigroups::SemigroupDescriptor;

const BUNDLED: &[(&str, &str)] = &[
    ("fix-3_1.json", include_str!("../fixtures/fix-3_1.json")),
    ("fix-4_1a.json", include_str!("../fixtures/fix-4_1a.json")),
    ("fix-4_1b.json", include_str!("../fixtures/fix-4_1b.json")),
    ("fix-6_1a.json", include_str!("../fixtures/fix-6_1a.json")),
    ("fix-6_1b.json", include_str!("../fixtures/fix-6_1b.json")),
    ("fix-6_1c.json", include_str!("../fixtures/fix-6_1c.json")),
    ("fix-idem.json", include_str!("../fixtures/fix-idem.json")),
    ("fix-lim-1.json", include_str!("../fixtures/fix-lim-1.json")),
    ("fix-lim-2.json", include_str!("../fixtures/fix-lim-2.json")),
    ("fix-cont-1.json", include_str!("../fixtures/fix-cont-1.json")),
    ("fix-cont-2.json", include_str!("../fixtures/fix-cont-2.json")),
    ("fix-cont-3.json", include_str!("../fixtures/fix-cont-3.json")),
    ("fix-s7.json", include_str!("../fixtures/fix-s7.json")),
    ("fix-luk.json", include_str!("../fixtures/fix-luk.json")),
];

/// Environment variable naming a directory that replaces the bundled corpus.
pub const FIXTURES_ENV: &str = "GENALG_FIXTURES_DIR";

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Fixture {
    pub id: String,
    pub anchor: String,
    pub semigroup: String,
    #[serde(default)]
    pub mode: Option<String>,
    pub generator: PiecewiseMonotone,
    pub expectations: Vec<Expectation>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    Eval { x: ExtReal, y: ExtReal, value: ExtReal },
    TValue { x: ExtReal, value: ExtReal },
    WeakInverse { y: ExtReal, value: ExtReal },
    PseudoInverse { y: ExtReal, value: ExtReal },
    Range { set: String },
    Decomposition { gaps: Vec<(ExtReal, ExtReal)>, v: Vec<ExtReal> },
    GM { x: ExtReal, value: ExtReal },
    AssocVerdict { verdict: Verdict },
    GenCondition { holds: bool },
    BruteForceWitness { x: ExtReal, y: ExtReal, z: ExtReal, lhs: ExtReal, rhs: ExtReal },
    Idempotents { set: String },
    Limit {
        verdict: LimitVerdict,
        #[serde(default)]
        witness: Option<ExtReal>,
        #[serde(default)]
        fixed: Option<ExtReal>,
        #[serde(default)]
        n: Option<usize>,
    },
    CondCancellative { value: bool, grid_witness: bool },
    ContinuityRightFailure { x: ExtReal, y: ExtReal, value: ExtReal, right: ExtReal },
    Continuous { value: bool },
    ContinuousTconorm { value: bool },
    TContinuous { value: bool },
    TConstantValue { value: ExtReal },
    TnormAxioms { grid_n: usize, value: bool },
    EqualsLukasiewicz { grid_n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectationResult {
    pub kind: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub id: String,
    pub anchor: String,
    pub pass: bool,
    pub results: Vec<ExpectationResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub fixtures: Vec<FixtureResult>,
    pub expectations_passed: usize,
    pub expectations_failed: usize,
    pub pass: bool,
}

pub fn parse_semigroup(name: &str) -> Result<SemigroupDescriptor> {
    match name.to_ascii_lowercase().as_str() {
        "sum" => Ok(SemigroupDescriptor::sum()),
        "max" => Ok(SemigroupDescriptor::max()),
        "linprod" => Ok(SemigroupDescriptor::linprod()),
        other => Err(Error::Parse(format!("unknown semigroup {other:?}"))),
    }
}

impl Fixture {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn mode(&self) -> Result<Mode> {
        match &self.mode {
            Some(m) => m.parse(),
            None if self.generator.is_non_decreasing() => Ok(Mode::Supconorm),
            None => Ok(Mode::Norm),
        }
    }

    pub fn op(&self) -> Result<GeneratedOp> {
        GeneratedOp::new(&self.generator, &parse_semigroup(&self.semigroup)?, self.mode()?)
    }
}

/// The bundled corpus, or the `*.json` files of `GENALG_FIXTURES_DIR` when set.
pub fn load_fixtures() -> Result<Vec<Fixture>> {
    match std::env::var_os(FIXTURES_ENV) {
        Some(dir) => load_dir(Path::new(&dir)),
        None => BUNDLED.iter().map(|(_, text)| Fixture::from_json(text)).collect(),
    }
}

pub fn load_dir(dir: &Path) -> Result<Vec<Fixture>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            Fixture::from_json(&text)
        })
        .collect()
}

fn parse_set(s: &str) -> Result<IntervalPointSet> {
    s.parse()
}

fn show<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

fn result(kind: &str, expected: String, actual: Result<String>) -> ExpectationResult {
    match actual {
        Ok(actual) => ExpectationResult { kind: kind.into(), pass: actual == expected, expected, actual },
        Err(e) => ExpectationResult { kind: kind.into(), expected, actual: format!("error: {e}"), pass: false },
    }
}

fn kind_name(e: &Expectation) -> String {
    let v = serde_json::to_value(e).unwrap_or_default();
    v.get("kind").and_then(|k| k.as_str()).unwrap_or("unknown").to_string()
}

fn check(op: &GeneratedOp, e: &Expectation) -> ExpectationResult {
    let kind = kind_name(e);
    let t = op.t();
    match e {
        Expectation::Eval { x, y, value } => result(&kind, value.to_string(), op.eval(x, y).map(|v| v.to_string())),
        Expectation::TValue { x, value } => result(&kind, value.to_string(), t.eval(x).map(|v| v.to_string())),
        Expectation::WeakInverse { y, value } => {
            result(&kind, value.to_string(), Ok(weak_pseudo_inverse(t).at(y).to_string()))
        }
        Expectation::PseudoInverse { y, value } => {
            result(&kind, value.to_string(), Ok(pseudo_inverse(t).at(y).to_string()))
        }
        Expectation::Range { set } => {
            let expected = parse_set(set).map(|s| s.to_string()).unwrap_or_else(|e| format!("error: {e}"));
            result(&kind, expected, Ok(t.range_of().to_string()))
        }
        Expectation::Decomposition { gaps, v } => {
            let expected = show(&(gaps, v));
            let actual = RangeDecomposition::decompose(t).map(|d| {
                let g: Vec<(ExtReal, ExtReal)> = d.gaps.iter().map(|g| (g.b.clone(), g.d.clone())).collect();
                let exact = d.reconstruct() == t.range_of();
                if exact {
                    show(&(g, d.v_points()))
                } else {
                    format!("reconstruction differs: {}", d.reconstruct())
                }
            });
            result(&kind, expected, actual)
        }
        Expectation::GM { x, value } => result(
            &kind,
            value.to_string(),
            RangeDecomposition::decompose(t).map(|d| d.g_m(x).to_string()),
        ),
        Expectation::AssocVerdict { verdict } => {
            result(&kind, show(verdict), f_condition_check(op).map(|r| show(&r.verdict)))
        }
        Expectation::GenCondition { holds } => {
            result(&kind, holds.to_string(), check_generator_condition(op).map(|r| r.holds.to_string()))
        }
        Expectation::BruteForceWitness { x, y, z, lhs, rhs } => {
            let expected = format!("found; {lhs} vs {rhs}");
            let actual = (|| -> Result<String> {
                let found = brute_force_assoc(op, &op.default_grid())?.is_some();
                let w = verify_triple(op, x, y, z)?;
                Ok(format!("{}; {} vs {}", if found { "found" } else { "none" }, w.lhs, w.rhs))
            })();
            result(&kind, expected, actual)
        }
        Expectation::Idempotents { set } => {
            let expected = parse_set(set).map(|s| s.to_string()).unwrap_or_else(|e| format!("error: {e}"));
            result(&kind, expected, idempotent_points(op).map(|r| r.points.to_string()))
        }
        Expectation::Limit { verdict, witness, fixed, n } => {
            let expected = show(&(verdict, witness, fixed, n));
            let actual = limit_property_check(op).map(|r| {
                let orbit = r.orbits.iter().find(|o| Some(&o.x) == r.witness.as_ref());
                let (fx, nn) = match orbit.map(|o| &o.classification) {
                    Some(crate::properties::OrbitClass::FixedBelowOne { value, n }) => (Some(value.clone()), Some(*n)),
                    _ => (None, None),
                };
                let w = witness.as_ref().and(r.witness.clone());
                show(&(r.verdict, w, fixed.as_ref().and(fx), n.and(nn)))
            });
            result(&kind, expected, actual)
        }
        Expectation::CondCancellative { value, grid_witness } => {
            let expected = show(&(value, grid_witness));
            let actual = cancellation_check(op)
                .map(|r| show(&(r.conditionally_cancellative, r.grid_witness.is_some())));
            result(&kind, expected, actual)
        }
        Expectation::ContinuityRightFailure { x, y, value, right } => {
            let expected = show(&(x, y, value, right, false));
            let actual = limits_at(op, x, y).and_then(|pc| {
                let listed = continuity_check(op)?.right_failures.iter().any(|p| p.x == *x && p.y == *y);
                Ok(show(&(&pc.x, &pc.y, &pc.value, &pc.right, !listed)))
            });
            result(&kind, expected, actual)
        }
        Expectation::Continuous { value } => {
            result(&kind, value.to_string(), continuity_check(op).map(|r| r.continuous.to_string()))
        }
        Expectation::ContinuousTconorm { value } => {
            result(&kind, value.to_string(), continuity_check(op).map(|r| r.continuous_tconorm.to_string()))
        }
        Expectation::TContinuous { value } => {
            result(&kind, value.to_string(), Ok(t.validate().continuous.to_string()))
        }
        Expectation::TConstantValue { value } => {
            let actual = (|| -> Result<String> {
                let a = op.eval(&ExtReal::zero(), &ExtReal::zero())?;
                let b = op.eval(&ExtReal::one(), &ExtReal::one())?;
                Ok(if a == b { a.to_string() } else { format!("varies from {a} to {b}") })
            })();
            result(&kind, value.to_string(), actual)
        }
        Expectation::TnormAxioms { grid_n, value } => result(
            &kind,
            value.to_string(),
            axioms_on_grid(op, &uniform_grid(*grid_n)).map(|r| r.is_tnorm().to_string()),
        ),
        Expectation::EqualsLukasiewicz { grid_n } => {
            let actual = (|| -> Result<String> {
                let g = uniform_grid(*grid_n);
                for x in &g {
                    for y in &g {
                        let want = x.add(y).max_of(&ExtReal::one());
                        let want = ExtReal::from_q(want.as_q().cloned().unwrap_or_default() - num::one::<crate::Q>());
                        if op.eval(x, y)? != want {
                            return Ok(format!("differs at ({x}, {y})"));
                        }
                    }
                }
                Ok("equal".into())
            })();
            result(&kind, "equal".into(), actual)
        }
    }
}

pub fn run_fixture(fx: &Fixture) -> FixtureResult {
    let results = match fx.op() {
        Ok(op) => fx.expectations.iter().map(|e| check(&op, e)).collect(),
        Err(e) => vec![ExpectationResult {
            kind: "setup".into(),
            expected: "a generated operation".into(),
            actual: format!("error: {e}"),
            pass: false,
        }],
    };
    FixtureResult {
        id: fx.id.clone(),
        anchor: fx.anchor.clone(),
        pass: results.iter().all(|r| r.pass),
        results,
    }
}

pub fn run_corpus(fixtures: &[Fixture]) -> CorpusReport {
    let fixtures: Vec<FixtureResult> = fixtures.iter().map(run_fixture).collect();
    let passed = fixtures.iter().flat_map(|f| &f.results).filter(|r| r.pass).count();
    let failed = fixtures.iter().flat_map(|f| &f.results).filter(|r| !r.pass).count();
    CorpusReport { pass: failed == 0, fixtures, expectations_passed: passed, expectations_failed: failed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_parses() {
        for (name, text) in BUNDLED {
            let fx = Fixture::from_json(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!fx.expectations.is_empty(), "{name}");
        }
    }
}
