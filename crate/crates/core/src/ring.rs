//! The Grothendieck ring in the standard basis.
//!
//! Basis elements are standard classes `ζ(m)` indexed by multisegments, and
//! the product of two basis elements is the basis element of the multiset
//! union. The empty multisegment is the unit.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::segment::{Multisegment, Segment};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    terms: BTreeMap<Multisegment, i64>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn one() -> Self {
        RingElement::basis(Multisegment::empty())
    }

    /// The standard class `ζ(m)`.
    pub fn basis(m: Multisegment) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        RingElement { terms }
    }

    /// `ζ([a;b])`, or the unit for an empty segment.
    pub fn segment(seg: Segment) -> Self {
        if seg.is_empty() {
            RingElement::one()
        } else {
            RingElement::basis(Multisegment::new([seg]).expect("nonempty"))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Multisegment::empty()) == 1
    }

    pub fn coefficient(&self, m: &Multisegment) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multisegment, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn add_term(&mut self, m: Multisegment, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, n: i64) -> Self {
        if n == 0 {
            return RingElement::zero();
        }
        RingElement {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), c * n))
                .collect(),
        }
    }

    fn mul_ref(&self, other: &RingElement) -> RingElement {
        let mut acc: BTreeMap<Multisegment, i64> = BTreeMap::new();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                *acc.entry(m1.union(m2)).or_insert(0) += c1 * c2;
            }
        }
        acc.retain(|_, c| *c != 0);
        RingElement { terms: acc }
    }

    fn add_ref(&self, other: &RingElement, sign: i64) -> RingElement {
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            *terms.entry(m.clone()).or_insert(0) += sign * c;
        }
        terms.retain(|_, c| *c != 0);
        RingElement { terms }
    }

    /// Terms as `(multisegment, coefficient)` pairs in canonical order.
    pub fn to_pairs(&self) -> Vec<(Multisegment, i64)> {
        self.terms.iter().map(|(m, &c)| (m.clone(), c)).collect()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Multisegment, i64)>>(pairs: I) -> Self {
        let mut terms: BTreeMap<Multisegment, i64> = BTreeMap::new();
        for (m, c) in pairs {
            *terms.entry(m).or_insert(0) += c;
        }
        terms.retain(|_, c| *c != 0);
        RingElement { terms }
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        self.add_ref(&rhs, 1)
    }
}

impl Add<&RingElement> for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.add_ref(rhs, 1)
    }
}

impl AddAssign<&RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &RingElement) {
        for (m, &c) in &rhs.terms {
            *self.terms.entry(m.clone()).or_insert(0) += c;
        }
        self.terms.retain(|_, c| *c != 0);
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        self.add_ref(&rhs, -1)
    }
}

impl Sub<&RingElement> for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.add_ref(rhs, -1)
    }
}

impl SubAssign<&RingElement> for RingElement {
    fn sub_assign(&mut self, rhs: &RingElement) {
        for (m, &c) in &rhs.terms {
            *self.terms.entry(m.clone()).or_insert(0) -= c;
        }
        self.terms.retain(|_, c| *c != 0);
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(-1)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(-1)
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        self.mul_ref(&rhs)
    }
}

impl Mul<&RingElement> for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.mul_ref(rhs)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "ζ({m})")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    multisegment: Multisegment,
    coefficient: i64,
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(m, &c)| TermRecord {
                multisegment: m.clone(),
                coefficient: c,
            })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        if records.iter().any(|r| r.coefficient == 0) {
            return Err(D::Error::custom("zero coefficient"));
        }
        Ok(RingElement::from_pairs(
            records.into_iter().map(|r| (r.multisegment, r.coefficient)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(s: &str) -> RingElement {
        RingElement::basis(s.parse().unwrap())
    }

    #[test]
    fn product_is_union() {
        assert_eq!(&z("[0;1]") * &z("[3;4]"), z("[3;4]+[0;1]"));
        assert_eq!(&RingElement::one() * &z("[0;1]"), z("[0;1]"));
        assert!((&RingElement::zero() * &z("[0;1]")).is_zero());
    }

    #[test]
    fn cancellation_and_bilinearity() {
        let x = &z("[0;2]") + &z("[1;1]").scale(3);
        assert!((&x + &x.scale(-1)).is_zero());
        let (a, b, c) = (z("[0;0]"), z("[2;5]"), z("[1;3]"));
        assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn add_term_removes_zero() {
        let mut x = z("[0;1]");
        x.add_term("[0;1]".parse().unwrap(), -1);
        assert!(x.is_zero());
    }

    #[test]
    fn segment_unit() {
        assert!(RingElement::segment(Segment::empty_at(4)).is_one());
    }

    #[test]
    fn display_and_json() {
        let x = z("[1;4]+[0;3]+[2;2]") - z("[0;4]+[1;3]+[2;2]");
        assert_eq!(x.to_string(), "ζ([1;4]+[0;3]+[2;2]) - ζ([0;4]+[1;3]+[2;2])");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(
            json,
            r#"[{"multisegment":"[1;4]+[0;3]+[2;2]","coefficient":1},{"multisegment":"[0;4]+[1;3]+[2;2]","coefficient":-1}]"#
        );
        let back: RingElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert_eq!(RingElement::zero().to_string(), "0");
        assert_eq!((RingElement::one().scale(-2)).to_string(), "-2");
    }

    fn arb_element() -> impl Strategy<Value = RingElement> {
        let seg = (0i64..4, 0i64..3).prop_map(|(a, l)| Segment::new(a, a + l).unwrap());
        let ms = proptest::collection::vec(seg, 0..3).prop_map(|v| Multisegment::new(v).unwrap());
        proptest::collection::vec((ms, -3i64..4), 0..4).prop_map(RingElement::from_pairs)
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb_element(), y in arb_element(), w in arb_element()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
            prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
            prop_assert_eq!(&(&x + &y) + &w, &x + &(&y + &w));
            prop_assert_eq!(&x * &RingElement::one(), x.clone());
            prop_assert!((&x - &x).is_zero());
        }

        #[test]
        fn json_roundtrip(x in arb_element()) {
            let s = serde_json::to_string(&x).unwrap();
            let back: RingElement = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
