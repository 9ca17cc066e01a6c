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

//! Exact analysis of operations generated by monotone functions through
//! pseudo-inverses: `T(x, y) = t⁻¹(F(t(x), t(y)))`.

pub mod associativity;
pub mod decomposition;
pub mod error;
pub mod numerics;
pub mod generators;
pub mod properties;
pub mod corpus;
pub mod inverses;
pub mod semigroups;

pub use error::{Error, Result};
pub use numerics::{f_image, normalize, ExtReal, IntervalPointSet, Part, Q};
pub use semigroups::{EvidenceReport, SemigroupDescriptor, SemigroupFlags, SemigroupKind};
pub use generators::{Direction, Formula, Limits, PiecewiseMonotone, PlateauData, Rel, Segment, ValidationReport};
pub use inverses::{inverse_identities_report, Check, plateau_witness, pseudo_inverse, quasi_inverse_bounds, weak_pseudo_inverse, IdentityReport};
pub use decomposition::{Gap, RangeDecomposition, StarSystem};
pub use associativity::{brute_force_assoc, check_generator_condition, f_condition_check, frak_t, verify_triple, ConditionOutcome, ConditionReport, FrakT, GeneratedOp, Mode, PairWitness, TripleWitness, Verdict};
pub use properties::{
    axioms_on_grid, cancellation_check, cancellation_check_with, continuity_check, diagonal_powers, idempotent_points, limit_property_check,
    limits_at, supconorm_equivalence_check, AxiomReport, CancellationReport, ContinuityReport, DiagonalOrbit,
    IdempotenceReport, LimitReport, LimitVerdict, OrbitClass, SupconormReport,
};
pub use corpus::{load_fixtures, run_corpus, run_fixture, CorpusReport, Expectation, Fixture, FixtureResult};
