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

//! Piecewise tables and the probes used to compare them with the library.

use super::r;
use genalg_core::numerics::q;
use genalg_core::{ExtReal, IntervalPointSet};

pub type Piece = (&'static str, Box<dyn Fn(&ExtReal) -> ExtReal>);

pub fn set(s: &str) -> IntervalPointSet {
    s.parse().unwrap()
}

pub fn x_plus(n: i64, d: i64) -> Box<dyn Fn(&ExtReal) -> ExtReal> {
    Box::new(move |x| ExtReal::from_q(x.as_q().unwrap() + q(n, d)))
}

pub fn konst(v: ExtReal) -> Box<dyn Fn(&ExtReal) -> ExtReal> {
    Box::new(move |_| v.clone())
}

pub fn ident() -> Box<dyn Fn(&ExtReal) -> ExtReal> {
    Box::new(|x| x.clone())
}

/// Closed ends and five interior points of every piece.
pub fn probes(pieces: &[Piece]) -> Vec<ExtReal> {
    let mut out = Vec::new();
    for (s, _) in pieces {
        for p in set(s).parts() {
            if p.lo_closed {
                out.push(p.lo.clone());
            }
            if p.hi_closed {
                out.push(p.hi.clone());
            }
            if p.lo == p.hi {
                continue;
            }
            let hi = if p.hi.is_inf() { p.lo.add(&r(8, 1)) } else { p.hi.clone() };
            let mid = ExtReal::midpoint(&p.lo, &hi);
            let (a, b) = (ExtReal::midpoint(&p.lo, &mid), ExtReal::midpoint(&mid, &hi));
            out.push(ExtReal::midpoint(&p.lo, &a));
            out.push(ExtReal::midpoint(&b, &hi));
            out.extend([a, mid, b]);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every probe lies in exactly one piece and the library value equals the
/// table value there.
pub fn check_table(pieces: &[Piece], f: impl Fn(&ExtReal) -> ExtReal) -> usize {
    let ps = probes(pieces);
    for x in &ps {
        let owners: Vec<_> = pieces.iter().filter(|(s, _)| set(s).contains(x)).collect();
        assert_eq!(owners.len(), 1, "{x} lies in {} pieces", owners.len());
        assert_eq!(f(x), (owners[0].1)(x), "at {x}");
    }
    ps.len()
}

/// The weak and strict inverse tables of the FIX-3.1 generator.
pub fn weak_inverse_table() -> Vec<Piece> {
    vec![
        ("[0, 1/4)", ident()),
        ("[1/4, 1]", konst(r(1, 2))),
        ("(1, 5/4)", x_plus(-1, 2)),
        ("[5/4, 2)", konst(r(3, 4))),
        ("[2, 17/8)", konst(r(7, 8))),
        ("[17/8, 9/4)", x_plus(-5, 4)),
        ("[9/4, inf]", konst(ExtReal::one())),
    ]
}

pub fn pseudo_inverse_table() -> Vec<Piece> {
    vec![
        ("[0, 1/4]", ident()),
        ("(1/4, 1]", konst(r(1, 2))),
        ("(1, 5/4)", x_plus(-1, 2)),
        ("[5/4, 2]", konst(r(3, 4))),
        ("(2, 17/8)", konst(r(7, 8))),
        ("[17/8, 9/4)", x_plus(-5, 4)),
        ("[9/4, inf]", konst(ExtReal::one())),
    ]
}

/// `G_M` for the two range pairs, on `[t(0), sup M]`.
pub fn projection_table_a() -> Vec<Piece> {
    vec![
        ("(1/4, 1/2)", konst(r(1, 4))),
        ("(1/2, 3/4]", konst(r(1, 2))),
        ("[0, 1/4] ∪ {1/2} ∪ (3/4, 1]", ident()),
    ]
}

pub fn projection_table_b() -> Vec<Piece> {
    vec![
        ("(6/5, 3/2)", konst(r(6, 5))),
        ("(3/2, 5/2)", konst(r(3, 2))),
        ("(11/4, 4]", konst(r(11, 4))),
        ("[1, 6/5] ∪ {3/2} ∪ (5/2, 11/4] ∪ (4, inf]", ident()),
    ]
}
