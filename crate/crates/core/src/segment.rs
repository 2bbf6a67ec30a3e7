//! Segments, multisegments and the regular-multisegment permutation.
//!
//! A segment is an integer interval `[a;b]`. The value `[a;a-1]` is allowed
//! and denotes the empty segment, which acts as the unit wherever segments
//! are read as standard classes. A [`Multisegment`] only ever holds nonempty
//! segments and keeps them sorted by right endpoint descending, then left
//! endpoint descending; that order is always an ordered form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    a: i64,
    b: i64,
}

impl Segment {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b < a - 1 {
            return Err(Error::InvalidSegment { a, b });
        }
        Ok(Segment { a, b })
    }

    /// The empty segment `[a;a-1]`.
    pub fn empty_at(a: i64) -> Self {
        Segment { a, b: a - 1 }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn is_empty(&self) -> bool {
        self.b < self.a
    }

    pub fn len(&self) -> usize {
        (self.b - self.a + 1) as usize
    }

    /// `[a-1;b-1]`.
    pub fn shifted_left(&self) -> Self {
        Segment {
            a: self.a - 1,
            b: self.b - 1,
        }
    }

    /// `[-b;-a]`.
    pub fn negated(&self) -> Self {
        Segment {
            a: -self.b,
            b: -self.a,
        }
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::DegenerateSegment(*self))
        } else {
            Ok(())
        }
    }

    /// Ordering predicate without the emptiness check, for internal scans
    /// over segments already known to be nonempty.
    pub(crate) fn precedes_unchecked(&self, other: &Segment) -> bool {
        self.a < other.a && other.a - 1 <= self.b && self.b < other.b
    }

    pub fn precedes(&self, other: &Segment) -> Result<bool> {
        self.require_nonempty()?;
        other.require_nonempty()?;
        Ok(self.precedes_unchecked(other))
    }

    pub fn linked(&self, other: &Segment) -> Result<bool> {
        Ok(self.precedes(other)? || other.precedes(self)?)
    }
}

/// Canonical storage order: right endpoint descending, then left endpoint
/// descending.
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        other.b.cmp(&self.b).then(other.a.cmp(&self.a))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{}]", self.a, self.b)
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Segment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Segment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let seg = cur.segment()?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("trailing input after segment"));
        }
        Ok(seg)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multisegment {
    segs: Vec<Segment>,
}

impl Multisegment {
    pub fn empty() -> Self {
        Multisegment { segs: Vec::new() }
    }

    /// Builds the canonical ordered form of a list of nonempty segments.
    pub fn new<I: IntoIterator<Item = Segment>>(segments: I) -> Result<Self> {
        let mut segs: Vec<Segment> = segments.into_iter().collect();
        if let Some(bad) = segs.iter().find(|s| s.is_empty()) {
            return Err(Error::DegenerateSegment(*bad));
        }
        segs.sort();
        Ok(Multisegment { segs })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        let segs = pairs
            .iter()
            .map(|&(a, b)| Segment::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Multisegment::new(segs)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<Segment> {
        self.segs.get(i).copied()
    }

    pub fn contains(&self, seg: &Segment) -> bool {
        self.segs.binary_search(seg).is_ok()
    }

    pub fn index_of(&self, seg: &Segment) -> Option<usize> {
        self.segs.binary_search(seg).ok()
    }

    /// Multiset union.
    pub fn union(&self, other: &Multisegment) -> Multisegment {
        let mut segs = Vec::with_capacity(self.segs.len() + other.segs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.segs.len() && j < other.segs.len() {
            if self.segs[i] <= other.segs[j] {
                segs.push(self.segs[i]);
                i += 1;
            } else {
                segs.push(other.segs[j]);
                j += 1;
            }
        }
        segs.extend_from_slice(&self.segs[i..]);
        segs.extend_from_slice(&other.segs[j..]);
        Multisegment { segs }
    }

    /// Removes the segments at the given canonical positions.
    pub fn without_indices(&self, indices: &[usize]) -> Multisegment {
        let segs = self
            .segs
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, s)| *s)
            .collect();
        Multisegment { segs }
    }

    /// Removes one copy of `seg`, if present.
    pub fn without(&self, seg: &Segment) -> Option<Multisegment> {
        let idx = self.index_of(seg)?;
        Some(self.without_indices(&[idx]))
    }

    pub fn with(&self, seg: Segment) -> Result<Multisegment> {
        let mut segs = self.segs.clone();
        segs.push(seg);
        Multisegment::new(segs)
    }

    pub fn negate(&self) -> Multisegment {
        let mut segs: Vec<Segment> = self.segs.iter().map(Segment::negated).collect();
        segs.sort();
        Multisegment { segs }
    }

    pub fn is_regular(&self) -> bool {
        self.repeated_endpoint().is_none()
    }

    fn repeated_endpoint(&self) -> Option<(&'static str, i64)> {
        // b is sorted, so repeats are adjacent.
        for w in self.segs.windows(2) {
            if w[0].b == w[1].b {
                return Some(("right", w[0].b));
            }
        }
        let mut lefts: Vec<i64> = self.segs.iter().map(|s| s.a).collect();
        lefts.sort_unstable();
        lefts
            .windows(2)
            .find(|w| w[0] == w[1])
            .map(|w| ("left", w[0]))
    }

    /// Strictly decreasing left and right endpoints in canonical order.
    pub fn is_ladder(&self) -> bool {
        self.segs
            .windows(2)
            .all(|w| w[1].b < w[0].b && w[1].a < w[0].a)
    }

    /// Each segment is the left shift of the previous one.
    pub fn is_speh(&self) -> bool {
        self.segs.windows(2).all(|w| w[1] == w[0].shifted_left())
    }

    /// The multiset of integers covered by the segments, with multiplicity.
    pub fn content(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for s in &self.segs {
            for x in s.a..=s.b {
                *out.entry(x).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn regular_profile(&self) -> Result<RegularProfile> {
        RegularProfile::new(self)
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.segs.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Multisegment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let m = cur.multisegment()?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("unexpected character"));
        }
        Ok(m)
    }
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Multisegment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A regular multisegment together with its permutation and the sorted
/// left endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularProfile {
    owner: Multisegment,
    sigma: Permutation,
    a_sorted: Vec<i64>,
}

impl RegularProfile {
    pub fn new(m: &Multisegment) -> Result<Self> {
        if let Some((kind, value)) = m.repeated_endpoint() {
            return Err(Error::NotRegular { kind, value });
        }
        let mut order: Vec<usize> = (0..m.len()).collect();
        order.sort_by_key(|&i| m.segs[i].a);
        let a_sorted = order.iter().map(|&i| m.segs[i].a).collect();
        let sigma = Permutation::from_images(order)?;
        Ok(RegularProfile {
            owner: m.clone(),
            sigma,
            a_sorted,
        })
    }

    pub fn multisegment(&self) -> &Multisegment {
        &self.owner
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    /// `a'_i = a_{sigma(i)}`, strictly increasing.
    pub fn a_sorted(&self) -> &[i64] {
        &self.a_sorted
    }

    /// Right endpoints in canonical (strictly decreasing) order.
    pub fn b(&self) -> Vec<i64> {
        self.owner.segs.iter().map(|s| s.b).collect()
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }
}

/// Character cursor shared by the text parsers of this crate.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    pub(crate) fn eat(&mut self, expected: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(expected) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, expected: char) -> Result<()> {
        if self.eat(expected) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{expected}'")))
        }
    }

    pub(crate) fn eat_str(&mut self, expected: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(expected) {
            self.pos += expected.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut neg = false;
        if matches!(self.peek(), Some('-') | Some('\u{2212}')) {
            neg = true;
            self.bump();
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        let value: i64 = self.src[digits_start..self.pos]
            .parse()
            .map_err(|_| Error::Parse {
                position: start,
                message: "integer out of range".into(),
            })?;
        Ok(if neg { -value } else { value })
    }

    pub(crate) fn segment(&mut self) -> Result<Segment> {
        self.expect('[')?;
        let start = self.pos;
        let a = self.integer()?;
        self.expect(';')?;
        let b = self.integer()?;
        self.expect(']')?;
        Segment::new(a, b).map_err(|e| Error::Parse {
            position: start,
            message: e.to_string(),
        })
    }

    /// Parses `seg (+ seg)*`, or nothing at all for the empty multisegment.
    /// Empty segments are accepted and dropped.
    pub(crate) fn multisegment(&mut self) -> Result<Multisegment> {
        self.skip_ws();
        let mut segs = Vec::new();
        if self.peek() != Some('[') {
            return Ok(Multisegment::empty());
        }
        loop {
            let s = self.segment()?;
            if !s.is_empty() {
                segs.push(s);
            }
            if !self.eat('+') {
                break;
            }
        }
        Multisegment::new(segs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: i64, b: i64) -> Segment {
        Segment::new(a, b).unwrap()
    }

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    #[test]
    fn precedes_examples() {
        assert!(seg(1, 3).precedes(&seg(4, 5)).unwrap());
        assert!(!seg(1, 2).precedes(&seg(4, 5)).unwrap());
        assert!(!seg(2, 4).precedes(&seg(2, 4)).unwrap());
    }

    #[test]
    fn linked_examples() {
        assert!(seg(1, 4).linked(&seg(3, 5)).unwrap());
        assert!(!seg(1, 5).linked(&seg(2, 4)).unwrap());
        assert!(!seg(0, 0).linked(&seg(0, 0)).unwrap());
    }

    #[test]
    fn empty_segment_rejected_by_predicates() {
        let e = Segment::empty_at(3);
        assert!(e.is_empty());
        assert_eq!(e.precedes(&seg(1, 2)), Err(Error::DegenerateSegment(e)));
        assert!(Segment::new(3, 1).is_err());
    }

    #[test]
    fn canonical_order() {
        let m = Multisegment::new([seg(0, 2), seg(2, 3), seg(1, 1)]).unwrap();
        assert_eq!(m.segments(), &[seg(2, 3), seg(0, 2), seg(1, 1)]);
        assert!(Multisegment::new([]).unwrap().is_empty());
        let m = Multisegment::new([seg(0, 4), seg(1, 4)]).unwrap();
        assert_eq!(m.segments(), &[seg(1, 4), seg(0, 4)]);
    }

    #[test]
    fn profile_examples() {
        let p = ms("[2;3]+[0;2]+[1;1]").regular_profile().unwrap();
        assert_eq!(p.sigma().one_line(), vec![2, 3, 1]);
        assert_eq!(p.a_sorted(), &[0, 1, 2]);
        let p = ms("[1;6]+[3;5]+[0;4]+[2;3]").regular_profile().unwrap();
        assert_eq!(p.sigma().one_line(), vec![3, 1, 4, 2]);
        let p = ms("[1;4]+[0;3]+[2;2]").regular_profile().unwrap();
        assert_eq!(p.sigma().one_line(), vec![2, 1, 3]);
    }

    #[test]
    fn ladder_profile_is_longest() {
        let p = ms("[2;5]+[1;3]+[0;0]").regular_profile().unwrap();
        assert_eq!(p.sigma(), &Permutation::longest(3));
    }

    #[test]
    fn non_regular_names_endpoint() {
        let err = ms("[1;4]+[0;4]").regular_profile().unwrap_err();
        assert_eq!(
            err,
            Error::NotRegular {
                kind: "right",
                value: 4
            }
        );
        let err = ms("[1;4]+[1;3]").regular_profile().unwrap_err();
        assert_eq!(
            err,
            Error::NotRegular {
                kind: "left",
                value: 1
            }
        );
    }

    #[test]
    fn negate_examples() {
        assert_eq!(ms("[2;3]+[0;2]").negate(), ms("[-3;-2]+[-2;0]"));
        let m = ms("[1;6]+[3;5]+[0;4]+[2;3]");
        assert_eq!(m.negate().negate(), m);
        let s = m.regular_profile().unwrap().sigma().clone();
        let t = m.negate().regular_profile().unwrap().sigma().clone();
        assert_eq!(t.one_line(), vec![2, 4, 1, 3]);
        assert_eq!(t, s.inverse());
    }

    #[test]
    fn family_examples() {
        assert!(ms("[2;5]+[1;3]+[0;0]").is_ladder());
        assert!(ms("[2;4]+[1;3]+[0;2]").is_speh());
        assert!(ms("[3;3]+[2;2]+[1;1]+[0;0]").is_speh());
        let m = ms("[1;5]+[0;4]+[2;3]");
        assert!(m.is_regular() && !m.is_ladder());
        assert!(ms("[4;7]+[1;2]").is_ladder());
    }

    #[test]
    fn parse_and_print() {
        let m: Multisegment = " [1;6] + [3;5]+[0; 4]+[2;3] ".parse().unwrap();
        assert_eq!(m.to_string(), "[1;6]+[3;5]+[0;4]+[2;3]");
        let m: Multisegment = "[-3;-2]+[-2;0]".parse().unwrap();
        assert_eq!(m.to_string(), "[-2;0]+[-3;-2]");
        assert_eq!("".parse::<Multisegment>().unwrap(), Multisegment::empty());
        // empty segments are units and vanish
        assert_eq!("[2;1]+[0;2]".parse::<Multisegment>().unwrap(), ms("[0;2]"));
    }

    #[test]
    fn parse_errors_carry_position() {
        match "[1;4]+[0,3]".parse::<Multisegment>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 8),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            "[1;4]+".parse::<Multisegment>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            "[4;1]".parse::<Multisegment>(),
            Err(Error::Parse { position: 1, .. })
        ));
    }

    #[test]
    fn content_counts_multiplicity() {
        let c = ms("[0;2]+[1;1]").content();
        assert_eq!(c.get(&1), Some(&2));
        assert_eq!(c.get(&0), Some(&1));
        assert_eq!(c.len(), 3);
    }
}
