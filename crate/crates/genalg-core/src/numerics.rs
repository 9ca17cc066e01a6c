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

//! Exact arithmetic on `[0, ∞]` and normalized finite unions of intervals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::semigroups::{SemigroupDescriptor, SemigroupKind};

/// Exact rational scalar used for formula coefficients.
pub type Q = BigRational;

/// Builds the rational `n / d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A nonnegative exact rational or `+∞`.
///
/// Variant order gives the total order: every finite value is below `Inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtReal {
    Fin(Q),
    Inf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Fin(Q::zero())
    }

    pub fn one() -> Self {
        ExtReal::Fin(Q::one())
    }

    pub fn inf() -> Self {
        ExtReal::Inf
    }

    pub fn int(n: i64) -> Self {
        Self::from_q(Q::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_q(q(n, d))
    }

    /// Wraps a rational. Panics on a negative value; use [`ExtReal::try_from_q`]
    /// for untrusted input.
    pub fn from_q(v: Q) -> Self {
        assert!(!v.is_negative(), "negative value {v} is outside [0, inf]");
        ExtReal::Fin(v)
    }

    pub fn try_from_q(v: Q) -> Result<Self> {
        if v.is_negative() {
            Err(Error::DomainError(format!("{v} is negative")))
        } else {
            Ok(ExtReal::Fin(v))
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtReal::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Fin(v) if v.is_zero())
    }

    pub fn as_q(&self) -> Option<&Q> {
        match self {
            ExtReal::Fin(v) => Some(v),
            ExtReal::Inf => None,
        }
    }

    pub fn add(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Fin(a), ExtReal::Fin(b)) => ExtReal::Fin(a + b),
            _ => ExtReal::Inf,
        }
    }

    /// Product with `0 · ∞ = 0`.
    pub fn mul(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Fin(a), ExtReal::Fin(b)) => ExtReal::Fin(a * b),
            (ExtReal::Fin(a), ExtReal::Inf) | (ExtReal::Inf, ExtReal::Fin(a)) if a.is_zero() => {
                ExtReal::zero()
            }
            _ => ExtReal::Inf,
        }
    }

    pub fn max_of(&self, other: &ExtReal) -> ExtReal {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min_of(&self, other: &ExtReal) -> ExtReal {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Midpoint of two values; `mid(a, ∞) = a + 1`.
    pub fn midpoint(a: &ExtReal, b: &ExtReal) -> ExtReal {
        match (a, b) {
            (ExtReal::Fin(x), ExtReal::Fin(y)) => ExtReal::Fin((x + y) / Q::from_integer(2.into())),
            (ExtReal::Fin(x), ExtReal::Inf) | (ExtReal::Inf, ExtReal::Fin(x)) => {
                ExtReal::Fin(x + Q::one())
            }
            _ => ExtReal::Inf,
        }
    }

    /// Decimal rendering with `sig` significant digits, rounded half away
    /// from zero. The rational form stays authoritative.
    pub fn to_decimal(&self, sig: usize) -> String {
        let v = match self {
            ExtReal::Inf => return "inf".to_string(),
            ExtReal::Fin(v) => v,
        };
        if v.is_zero() {
            return "0".to_string();
        }
        let ten = Q::from_integer(BigInt::from(10));
        let mut e: i64 = 0;
        let mut probe = v.clone();
        while probe >= ten {
            probe /= &ten;
            e += 1;
        }
        while probe < Q::one() {
            probe *= &ten;
            e -= 1;
        }
        // v = probe * 10^e with 1 <= probe < 10
        let shift = sig as i64 - 1 - e;
        let scale = BigInt::from(10).pow(shift.unsigned_abs() as u32);
        let scaled = if shift >= 0 {
            v * Q::from_integer(scale.clone())
        } else {
            v / Q::from_integer(scale.clone())
        };
        let half = q(1, 2);
        let n = (scaled + half).floor().to_integer();
        let digits = n.to_string();
        if shift <= 0 {
            let mut s = digits;
            s.push_str(&"0".repeat((-shift) as usize));
            return s;
        }
        let shift = shift as usize;
        let (int_part, frac_part) = if digits.len() > shift {
            let (a, b) = digits.split_at(digits.len() - shift);
            (a.to_string(), b.to_string())
        } else {
            ("0".to_string(), format!("{}{}", "0".repeat(shift - digits.len()), digits))
        };
        let frac = frac_part.trim_end_matches('0');
        if frac.is_empty() {
            int_part
        } else {
            format!("{int_part}.{frac}")
        }
    }

    /// Nearest `f64`, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::Inf => f64::INFINITY,
            ExtReal::Fin(v) => v.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Inf => write!(f, "inf"),
            ExtReal::Fin(v) => write!(f, "{}/{}", v.numer(), v.denom()),
        }
    }
}

/// Parses a rational from `"p/q"`, `"p"` or a finite decimal such as `"0.35"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((i, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = i.starts_with('-');
        let i_abs = i.trim_start_matches(['-', '+']);
        let int = if i_abs.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(i_abs).map_err(|_| bad())?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac_n = BigInt::from_str(frac).map_err(|_| bad())?;
        let v = Q::new(int * &scale + frac_n, scale);
        return Ok(if neg { -v } else { v });
    }
    BigInt::from_str(s).map(Q::from_integer).map_err(|_| bad())
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" || t.eq_ignore_ascii_case("infinity") {
            return Ok(ExtReal::Inf);
        }
        ExtReal::try_from_q(parse_q(t)?)
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for plain rationals rendered as `"p/q"`.
pub mod q_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", v.numer(), v.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// One interval of an [`IntervalPointSet`]; `lo == hi` with both ends closed
/// is an isolated point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    pub lo: ExtReal,
    pub lo_closed: bool,
    pub hi: ExtReal,
    pub hi_closed: bool,
}

impl Part {
    pub fn new(lo: ExtReal, lo_closed: bool, hi: ExtReal, hi_closed: bool) -> Self {
        Part { lo, lo_closed, hi, hi_closed }
    }

    pub fn point(x: ExtReal) -> Self {
        Part { lo: x.clone(), lo_closed: true, hi: x, hi_closed: true }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Less => false,
        }
    }

    pub fn contains(&self, x: &ExtReal) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    fn intersect(&self, other: &Part) -> Part {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Part { lo, lo_closed, hi, hi_closed }
    }

    /// A point strictly inside the part, or the point itself.
    pub fn interior_point(&self) -> ExtReal {
        if self.is_point() {
            self.lo.clone()
        } else {
            ExtReal::midpoint(&self.lo, &self.hi)
        }
    }
}

/// Normalized finite union of intervals and isolated points in `[0, ∞]`.
///
/// Parts are sorted, pairwise disjoint and never mergeable, so equality of
/// sets is equality of part lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalPointSet {
    parts: Vec<Part>,
}

/// Normal form of a list of raw interval descriptors.
pub fn normalize(raw_parts: &[Part]) -> Result<IntervalPointSet> {
    for p in raw_parts {
        if p.lo > p.hi {
            return Err(Error::InvalidInterval(format!(
                "lower end {} exceeds upper end {}",
                p.lo, p.hi
            )));
        }
    }
    Ok(IntervalPointSet::from_valid(raw_parts.to_vec()))
}

impl IntervalPointSet {
    pub fn empty() -> Self {
        IntervalPointSet { parts: Vec::new() }
    }

    pub fn from_parts(raw: &[Part]) -> Result<Self> {
        normalize(raw)
    }

    /// Normalizes parts, silently dropping empty ones (including `lo > hi`).
    pub(crate) fn from_valid(mut parts: Vec<Part>) -> Self {
        parts.retain(|p| !p.is_empty());
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Part> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(cur) = out.last_mut() {
                let touches = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
                if touches {
                    match p.hi.cmp(&cur.hi) {
                        Ordering::Greater => {
                            cur.hi = p.hi;
                            cur.hi_closed = p.hi_closed;
                        }
                        Ordering::Equal => cur.hi_closed |= p.hi_closed,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(p);
        }
        IntervalPointSet { parts: out }
    }

    pub fn point(x: ExtReal) -> Self {
        IntervalPointSet { parts: vec![Part::point(x)] }
    }

    pub fn points<I: IntoIterator<Item = ExtReal>>(xs: I) -> Self {
        Self::from_valid(xs.into_iter().map(Part::point).collect())
    }

    pub fn interval(lo: ExtReal, lo_closed: bool, hi: ExtReal, hi_closed: bool) -> Self {
        Self::from_valid(vec![Part::new(lo, lo_closed, hi, hi_closed)])
    }

    pub fn closed(lo: ExtReal, hi: ExtReal) -> Self {
        Self::interval(lo, true, hi, true)
    }

    pub fn open(lo: ExtReal, hi: ExtReal) -> Self {
        Self::interval(lo, false, hi, false)
    }

    pub fn open_closed(lo: ExtReal, hi: ExtReal) -> Self {
        Self::interval(lo, false, hi, true)
    }

    pub fn closed_open(lo: ExtReal, hi: ExtReal) -> Self {
        Self::interval(lo, true, hi, false)
    }

    /// The whole carrier `[0, ∞]`.
    pub fn carrier() -> Self {
        Self::closed(ExtReal::zero(), ExtReal::Inf)
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &ExtReal) -> bool {
        // parts are sorted; binary search on the lower end
        let idx = self.parts.partition_point(|p| p.lo <= *x);
        idx > 0 && self.parts[idx - 1].contains(x)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut all = self.parts.clone();
        all.extend(other.parts.iter().cloned());
        Self::from_valid(all)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let a = &self.parts[i];
            let b = &other.parts[j];
            let p = a.intersect(b);
            if !p.is_empty() {
                out.push(p);
            }
            let a_first = match a.hi.cmp(&b.hi) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => !a.hi_closed || b.hi_closed,
            };
            if a_first {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_valid(out)
    }

    /// Complement within `[0, ∞]`.
    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut lo = ExtReal::zero();
        let mut lo_closed = true;
        for p in &self.parts {
            out.push(Part::new(lo.clone(), lo_closed, p.lo.clone(), !p.lo_closed));
            lo = p.hi.clone();
            lo_closed = !p.hi_closed;
        }
        out.push(Part::new(lo, lo_closed, ExtReal::Inf, true));
        Self::from_valid(out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Infimum with a flag telling whether it is attained.
    pub fn inf(&self) -> Option<(ExtReal, bool)> {
        self.parts.first().map(|p| (p.lo.clone(), p.lo_closed))
    }

    /// Supremum with a flag telling whether it is attained.
    pub fn sup(&self) -> Option<(ExtReal, bool)> {
        self.parts.last().map(|p| (p.hi.clone(), p.hi_closed))
    }

    pub fn min(&self) -> Option<ExtReal> {
        self.inf().and_then(|(v, a)| a.then_some(v))
    }

    pub fn max(&self) -> Option<ExtReal> {
        self.sup().and_then(|(v, a)| a.then_some(v))
    }

    pub fn as_singleton(&self) -> Option<&ExtReal> {
        match self.parts.as_slice() {
            [p] if p.is_point() => Some(&p.lo),
            _ => None,
        }
    }

    /// Isolated points, in increasing order.
    pub fn isolated_points(&self) -> Vec<ExtReal> {
        self.parts.iter().filter(|p| p.is_point()).map(|p| p.lo.clone()).collect()
    }

    /// Every finite endpoint of every part.
    pub fn finite_endpoints(&self) -> Vec<ExtReal> {
        let mut v: Vec<ExtReal> = self
            .parts
            .iter()
            .flat_map(|p| [p.lo.clone(), p.hi.clone()])
            .filter(|x| !x.is_inf())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// `O(A)`: the union of `(min{x,y}, max{x,y}]` over all pairs of `A`.
    pub fn o_hull(&self) -> Self {
        let (Some((a, _)), Some((b, b_in))) = (self.inf(), self.sup()) else {
            return Self::empty();
        };
        if a == b {
            return Self::empty();
        }
        Self::interval(a, false, b, b_in)
    }

    /// Applies a strictly increasing continuous map to every endpoint.
    /// Endpoints mapped below zero are clamped to a closed `0`.
    pub fn map_increasing<F>(&self, f: F) -> Self
    where
        F: Fn(&ExtReal) -> Option<ExtReal>,
    {
        let mut out = Vec::new();
        for p in &self.parts {
            let hi = match f(&p.hi) {
                Some(h) => h,
                None => continue,
            };
            let (lo, lo_closed) = match f(&p.lo) {
                Some(l) => (l, p.lo_closed),
                None => (ExtReal::zero(), true),
            };
            out.push(Part::new(lo, lo_closed, hi, p.hi_closed));
        }
        Self::from_valid(out)
    }

    /// A few representative points per part: closed ends, the midpoint and
    /// points approaching each end.
    pub fn sample_points(&self, depth: u32) -> Vec<ExtReal> {
        let mut out = Vec::new();
        for p in &self.parts {
            if p.is_point() {
                out.push(p.lo.clone());
                continue;
            }
            if p.lo_closed {
                out.push(p.lo.clone());
            }
            if p.hi_closed {
                out.push(p.hi.clone());
            }
            match (&p.lo, &p.hi) {
                (ExtReal::Fin(a), ExtReal::Fin(b)) => {
                    let w = b - a;
                    out.push(ExtReal::Fin(a + &w / Q::from_integer(2.into())));
                    for k in 1..=depth {
                        let step = &w / Q::from_integer(BigInt::from(1u64 << (k + 1)));
                        out.push(ExtReal::Fin(a + &step));
                        out.push(ExtReal::Fin(b - &step));
                    }
                }
                (ExtReal::Fin(a), ExtReal::Inf) => {
                    for k in 0..=depth {
                        out.push(ExtReal::Fin(a + Q::from_integer(BigInt::from(1u64 << k))));
                        out.push(ExtReal::Fin(a + q(1, 1i64 << (k + 1))));
                    }
                }
                _ => {}
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for IntervalPointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            if p.is_point() {
                write!(f, "{{{}}}", p.lo)?;
            } else {
                let l = if p.lo_closed { '[' } else { '(' };
                let r = if p.hi_closed { ']' } else { ')' };
                write!(f, "{l}{}, {}{r}", p.lo, p.hi)?;
            }
        }
        Ok(())
    }
}

/// Parses the display form, e.g. `[0, 1/4] ∪ {1/2} ∪ (3/4, 1]` or `∅`.
impl FromStr for IntervalPointSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for piece in s.split('∪').map(str::trim) {
            let bad = || Error::Parse(format!("malformed set piece {piece:?}"));
            if let Some(inner) = piece.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
                for v in inner.split(',') {
                    parts.push(Part::point(v.trim().parse()?));
                }
                continue;
            }
            let lo_closed = match piece.chars().next() {
                Some('[') => true,
                Some('(') => false,
                _ => return Err(bad()),
            };
            let hi_closed = match piece.chars().last() {
                Some(']') => true,
                Some(')') => false,
                _ => return Err(bad()),
            };
            let body = &piece[1..piece.len() - 1];
            let (lo, hi) = body.split_once(',').ok_or_else(bad)?;
            parts.push(Part::new(lo.trim().parse()?, lo_closed, hi.trim().parse()?, hi_closed));
        }
        Self::from_parts(&parts)
    }
}

fn image_of_parts(kind: &SemigroupKind, f: &SemigroupDescriptor, a: &Part, b: &Part) -> Part {
    let lo = f.eval(&a.lo, &b.lo);
    let hi = f.eval(&a.hi, &b.hi);
    let (lo_closed, hi_closed) = match kind {
        SemigroupKind::Max => {
            let lo_closed = match a.lo.cmp(&b.lo) {
                Ordering::Greater => a.lo_closed,
                Ordering::Less => b.lo_closed,
                Ordering::Equal => a.lo_closed && b.lo_closed,
            };
            let hi_closed = (a.hi == hi && a.hi_closed) || (b.hi == hi && b.hi_closed);
            (lo_closed, hi_closed)
        }
        _ => {
            let lo_closed = if lo.is_inf() { true } else { a.lo_closed && b.lo_closed };
            let hi_closed = if hi.is_inf() {
                (a.hi.is_inf() && a.hi_closed) || (b.hi.is_inf() && b.hi_closed)
            } else {
                a.hi_closed && b.hi_closed
            };
            (lo_closed, hi_closed)
        }
    };
    Part::new(lo, lo_closed, hi, hi_closed)
}

/// Exact image `F(A, B) = { F(x, y) : x ∈ A, y ∈ B }` for the built-in
/// continuous monotone operations.
pub fn f_image(
    f: &SemigroupDescriptor,
    a: &IntervalPointSet,
    b: &IntervalPointSet,
) -> Result<IntervalPointSet> {
    let kind = f.kind();
    if matches!(kind, SemigroupKind::Table(_)) {
        return Err(Error::UnsupportedSemigroup(
            "set images are defined only for the built-in operations".into(),
        ));
    }
    let mut out = Vec::with_capacity(a.parts.len() * b.parts.len());
    for pa in &a.parts {
        for pb in &b.parts {
            out.push(image_of_parts(kind, f, pa, pb));
        }
    }
    Ok(IntervalPointSet::from_valid(out))
}

/// `F(A, {y})`, the image of a set under one fixed right argument.
pub fn f_image_point(
    f: &SemigroupDescriptor,
    a: &IntervalPointSet,
    y: &ExtReal,
) -> Result<IntervalPointSet> {
    f_image(f, a, &IntervalPointSet::point(y.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExtReal {
        ExtReal::ratio(n, d)
    }

    #[test]
    fn order_puts_infinity_last() {
        assert!(r(10_000, 1) < ExtReal::Inf);
        assert!(r(1, 3) < r(1, 2));
    }

    #[test]
    fn parse_and_render() {
        assert_eq!("0.35".parse::<ExtReal>().unwrap(), r(7, 20));
        assert_eq!("inf".parse::<ExtReal>().unwrap(), ExtReal::Inf);
        assert_eq!(r(17, 8).to_string(), "17/8");
        assert_eq!(r(2, 1).to_string(), "2/1");
        assert!("-1/2".parse::<ExtReal>().is_err());
        assert!("1/0".parse::<ExtReal>().is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(r(1, 3).to_decimal(12), "0.333333333333");
        assert_eq!(r(2, 3).to_decimal(12), "0.666666666667");
        assert_eq!(r(17, 8).to_decimal(12), "2.125");
        assert_eq!(r(1, 1).to_decimal(12), "1");
        assert_eq!(ExtReal::zero().to_decimal(12), "0");
        assert_eq!(r(1, 400).to_decimal(12), "0.0025");
    }

    #[test]
    fn adjacent_parts_merge() {
        let s = normalize(&[
            Part::new(r(0, 1), true, r(1, 4), true),
            Part::new(r(1, 4), false, r(1, 2), true),
        ])
        .unwrap();
        assert_eq!(s, IntervalPointSet::closed(r(0, 1), r(1, 2)));
    }

    #[test]
    fn disjoint_parts_stay() {
        let raw = [
            Part::new(r(0, 1), true, r(1, 4), true),
            Part::point(r(1, 2)),
            Part::new(r(3, 4), false, r(1, 1), true),
        ];
        let s = normalize(&raw).unwrap();
        assert_eq!(s.parts(), &raw);
    }

    #[test]
    fn shared_closed_endpoint_merges() {
        let s = normalize(&[
            Part::new(r(1, 2), false, r(3, 4), true),
            Part::new(r(3, 4), true, r(1, 1), false),
        ])
        .unwrap();
        assert_eq!(s, IntervalPointSet::open(r(1, 2), r(1, 1)));
    }

    #[test]
    fn reversed_descriptor_rejected() {
        let e = normalize(&[Part::new(r(1, 1), true, r(0, 1), true)]).unwrap_err();
        assert!(matches!(e, Error::InvalidInterval(_)));
    }

    #[test]
    fn set_display_round_trip() {
        let a: IntervalPointSet = "[0, 1/4] ∪ {1/2} ∪ (3/4, 1]".parse().unwrap();
        assert_eq!(a.to_string(), "[0/1, 1/4] ∪ {1/2} ∪ (3/4, 1/1]");
        assert_eq!(a.to_string().parse::<IntervalPointSet>().unwrap(), a);
        assert_eq!("∅".parse::<IntervalPointSet>().unwrap(), IntervalPointSet::empty());
        assert_eq!("{0, 1}".parse::<IntervalPointSet>().unwrap().isolated_points().len(), 2);
        assert!("[1, 2".parse::<IntervalPointSet>().is_err());
    }

    #[test]
    fn hull_examples() {
        assert!(IntervalPointSet::point(r(3, 1)).o_hull().is_empty());
        assert_eq!(
            IntervalPointSet::closed(r(1, 4), r(1, 2)).o_hull(),
            IntervalPointSet::open_closed(r(1, 4), r(1, 2))
        );
        assert_eq!(
            IntervalPointSet::points([r(0, 1), r(1, 1)]).o_hull(),
            IntervalPointSet::open_closed(r(0, 1), r(1, 1))
        );
        assert!(IntervalPointSet::empty().o_hull().is_empty());
    }

    #[test]
    fn complement_round_trip() {
        let s = IntervalPointSet::closed(r(0, 1), r(1, 4))
            .union(&IntervalPointSet::point(r(1, 2)))
            .union(&IntervalPointSet::open_closed(r(3, 4), r(1, 1)));
        assert_eq!(s.complement().complement(), s);
        assert!(s.intersect(&s.complement()).is_empty());
        assert_eq!(s.union(&s.complement()), IntervalPointSet::carrier());
    }

    #[test]
    fn image_examples() {
        let sum = SemigroupDescriptor::sum();
        let max = SemigroupDescriptor::max();
        let q4 = IntervalPointSet::closed(r(0, 1), r(1, 4));
        assert_eq!(f_image(&sum, &q4, &q4).unwrap(), IntervalPointSet::closed(r(0, 1), r(1, 2)));
        let unit = IntervalPointSet::closed(r(0, 1), r(1, 1));
        assert!(f_image(&sum, &IntervalPointSet::empty(), &unit).unwrap().is_empty());
        let a = IntervalPointSet::open(r(1, 4), r(1, 2));
        let b = IntervalPointSet::point(r(1, 2));
        assert_eq!(f_image(&max, &a, &b).unwrap(), b);
    }

    #[test]
    fn image_with_infinity() {
        let sum = SemigroupDescriptor::sum();
        let a = IntervalPointSet::closed(r(1, 1), ExtReal::Inf);
        let b = IntervalPointSet::point(r(2, 1));
        assert_eq!(f_image(&sum, &a, &b).unwrap(), IntervalPointSet::closed(r(3, 1), ExtReal::Inf));
        let open_top = IntervalPointSet::interval(r(1, 1), true, ExtReal::Inf, false);
        assert_eq!(
            f_image(&sum, &open_top, &b).unwrap(),
            IntervalPointSet::interval(r(3, 1), true, ExtReal::Inf, false)
        );
    }

    #[test]
    fn table_image_is_unsupported() {
        let t = SemigroupDescriptor::table(vec![ExtReal::zero()], vec![vec![ExtReal::zero()]]).unwrap();
        let s = IntervalPointSet::point(ExtReal::zero());
        assert!(matches!(f_image(&t, &s, &s), Err(Error::UnsupportedSemigroup(_))));
    }
}
