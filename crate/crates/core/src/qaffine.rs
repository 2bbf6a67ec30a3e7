//! Loop-weight notation for quantum affine `sl_k`.
//!
//! A segment `[a;b]` corresponds to `Y_{b-a+1, -a-b}`. Rank only matters
//! for flagging factors with `i >= k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::segment::{Cursor, Multisegment, Segment};
use crate::tsystems::Relation;

pub fn seg_to_y(seg: &Segment) -> Result<(i64, i64)> {
    if seg.is_empty() {
        return Err(Error::DegenerateSegment(*seg));
    }
    Ok((seg.b() - seg.a() + 1, -seg.a() - seg.b()))
}

pub fn y_to_seg(i: i64, p: i64) -> Result<Segment> {
    if i < 1 {
        return Err(Error::InvalidLoopVariable {
            i,
            p,
            reason: "node index must be at least 1",
        });
    }
    if (i + p + 1).rem_euclid(2) != 0 {
        return Err(Error::InvalidLoopVariable {
            i,
            p,
            reason: "i + p + 1 must be even",
        });
    }
    Segment::new((1 - i - p) / 2, (i - p - 1) / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangeFlag {
    InRange,
    /// `i = k`: the factor is trivial at this rank.
    Trivial,
    /// `i > k`.
    Undefined,
}

impl RangeFlag {
    fn of(i: i64, rank: usize) -> RangeFlag {
        let k = rank as i64;
        match i.cmp(&k) {
            std::cmp::Ordering::Less => RangeFlag::InRange,
            std::cmp::Ordering::Equal => RangeFlag::Trivial,
            std::cmp::Ordering::Greater => RangeFlag::Undefined,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            RangeFlag::InRange => "in range",
            RangeFlag::Trivial => "trivial factor",
            RangeFlag::Undefined => "undefined at this rank",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct YFactor {
    pub i: i64,
    pub p: i64,
    pub flag: RangeFlag,
}

impl fmt::Display for YFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y_{{{},{}}}", self.i, self.p)
    }
}

/// A monomial in the `Y_{i,p}` at a fixed rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopWeight {
    pub rank: usize,
    pub factors: Vec<YFactor>,
}

impl LoopWeight {
    pub fn new(rank: usize, pairs: &[(i64, i64)]) -> Result<LoopWeight> {
        check_rank(rank)?;
        let mut factors = Vec::with_capacity(pairs.len());
        for &(i, p) in pairs {
            y_to_seg(i, p)?;
            factors.push(YFactor {
                i,
                p,
                flag: RangeFlag::of(i, rank),
            });
        }
        Ok(LoopWeight { rank, factors })
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn flagged(&self) -> impl Iterator<Item = &YFactor> {
        self.factors.iter().filter(|f| f.flag != RangeFlag::InRange)
    }

    /// The same monomial with trivial factors removed.
    pub fn without_trivial(&self) -> LoopWeight {
        LoopWeight {
            rank: self.rank,
            factors: self
                .factors
                .iter()
                .copied()
                .filter(|f| f.flag != RangeFlag::Trivial)
                .collect(),
        }
    }

    pub fn to_multisegment(&self) -> Multisegment {
        Multisegment::new(
            self.factors
                .iter()
                .map(|f| y_to_seg(f.i, f.p).expect("validated on construction")),
        )
        .expect("nonempty segments")
    }

    /// Parses concatenated `Y_{i,p}` factors; `1` or the empty string is the
    /// empty monomial.
    pub fn parse(text: &str, rank: usize) -> Result<LoopWeight> {
        let mut cur = Cursor::new(text);
        let mut pairs = Vec::new();
        cur.skip_ws();
        if !cur.eat('1') {
            while cur.eat('Y') {
                cur.expect('_')?;
                cur.expect('{')?;
                let i = cur.integer()?;
                cur.expect(',')?;
                let p = cur.integer()?;
                cur.expect('}')?;
                pairs.push((i, p));
            }
        }
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("expected 'Y_{i,p}'"));
        }
        LoopWeight::new(rank, &pairs)
    }
}

impl fmt::Display for LoopWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for y in &self.factors {
            write!(f, "{y}")?;
        }
        Ok(())
    }
}

fn check_rank(rank: usize) -> Result<()> {
    if rank < 2 {
        Err(Error::InvalidRank(rank))
    } else {
        Ok(())
    }
}

/// Factor-by-factor translation in canonical segment order.
pub fn translate_multisegment(m: &Multisegment, rank: usize) -> Result<LoopWeight> {
    let pairs: Vec<(i64, i64)> = m
        .segments()
        .iter()
        .map(|s| seg_to_y(s).expect("multisegments hold nonempty segments"))
        .collect();
    LoopWeight::new(rank, &pairs)
}

/// Some ordering has `p_{j+1} - p_j >= |i_{j+1} - i_j| + 2` throughout.
/// The inequality forces `p` to increase strictly, so sorting by `p` is the
/// only candidate.
pub fn is_snake(w: &LoopWeight) -> bool {
    let mut f: Vec<(i64, i64)> = w.factors.iter().map(|y| (y.p, y.i)).collect();
    f.sort_unstable();
    f.windows(2)
        .all(|x| x[1].0 - x[0].0 >= (x[1].1 - x[0].1).abs() + 2)
}

impl FromStr for LoopWeight {
    type Err = Error;

    /// Parses at an unbounded rank; use [`LoopWeight::parse`] to flag factors.
    fn from_str(s: &str) -> Result<Self> {
        LoopWeight::parse(s, usize::MAX >> 2)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FlagNote {
    pub factor: YFactor,
    pub segment: Segment,
    pub flag: RangeFlag,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationTranslation {
    pub rank: usize,
    pub monomial: LoopWeight,
    pub lhs: [LoopWeight; 2],
    pub rhs: Vec<[LoopWeight; 2]>,
    pub flags: Vec<FlagNote>,
    pub text: String,
    /// The relation with trivial factors removed, present when any occur.
    pub simplified: Option<String>,
}

fn module(w: &LoopWeight, source: &LoopWeight) -> String {
    if w == source {
        "L(M)".to_string()
    } else {
        format!("L({w})")
    }
}

fn render(lhs: &[LoopWeight; 2], rhs: &[[LoopWeight; 2]], source: &LoopWeight) -> String {
    let mut out = format!("{}·{} =", module(&lhs[0], source), module(&lhs[1], source));
    for (k, t) in rhs.iter().enumerate() {
        let sep = if k == 0 { " " } else { " + " };
        out.push_str(&format!(
            "{sep}{}·{}",
            module(&t[0], source),
            module(&t[1], source)
        ));
    }
    out
}

/// Renders a relation in loop-weight notation; every factor equal to the
/// source prints as `L(M)`.
pub fn translate_relation(rel: &Relation, rank: usize) -> Result<RelationTranslation> {
    check_rank(rank)?;
    let tr = |m: &Multisegment| translate_multisegment(m, rank);
    let monomial = tr(&rel.source)?;
    let lhs = [tr(&rel.lhs[0])?, tr(&rel.lhs[1])?];
    let mut rhs = Vec::with_capacity(rel.rhs.len());
    for t in &rel.rhs {
        rhs.push([tr(&t.factors[0])?, tr(&t.factors[1])?]);
    }
    let mut flags: Vec<FlagNote> = Vec::new();
    for w in std::iter::once(&monomial)
        .chain(lhs.iter())
        .chain(rhs.iter().flatten())
    {
        for y in w.flagged() {
            if !flags.iter().any(|n| n.factor == *y) {
                flags.push(FlagNote {
                    factor: *y,
                    segment: y_to_seg(y.i, y.p)?,
                    flag: y.flag,
                });
            }
        }
    }
    let text = render(&lhs, &rhs, &monomial);
    let simplified = flags.iter().any(|n| n.flag == RangeFlag::Trivial).then(|| {
        let strip = |w: &LoopWeight| w.without_trivial();
        let src = strip(&monomial);
        let l = [strip(&lhs[0]), strip(&lhs[1])];
        let r: Vec<[LoopWeight; 2]> = rhs.iter().map(|t| [strip(&t[0]), strip(&t[1])]).collect();
        render(&l, &r, &src)
    });
    Ok(RelationTranslation {
        rank,
        monomial,
        lhs,
        rhs,
        flags,
        text,
        simplified,
    })
}

impl fmt::Display for RelationTranslation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "M = {}", self.monomial)?;
        writeln!(f, "{}", self.text)?;
        for n in &self.flags {
            writeln!(
                f,
                "flag: {} from {} is a {} at k = {}",
                n.factor,
                n.segment,
                n.flag.describe(),
                self.rank
            )?;
        }
        if let Some(s) = &self.simplified {
            writeln!(f, "without trivial factors: {s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::regular_multisegments;
    use crate::tsystems::{relation_bottom, relation_top};
    use proptest::prelude::*;

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    #[test]
    fn correspondence_examples() {
        let s = |a, b| Segment::new(a, b).unwrap();
        assert_eq!(seg_to_y(&s(2, 3)).unwrap(), (2, -5));
        assert_eq!(seg_to_y(&s(0, 0)).unwrap(), (1, 0));
        assert_eq!(seg_to_y(&s(1, 6)).unwrap(), (6, -7));
        assert_eq!(y_to_seg(3, -2).unwrap(), s(0, 2));
        assert_eq!(y_to_seg(1, 0).unwrap(), s(0, 0));
        assert!(y_to_seg(2, 0).is_err());
        assert!(y_to_seg(0, -1).is_err());
        assert!(seg_to_y(&Segment::empty_at(3)).is_err());
    }

    #[test]
    fn monomials() {
        let w = translate_multisegment(&ms("[1;6]+[3;5]+[0;4]+[2;3]"), 7).unwrap();
        assert_eq!(w.to_string(), "Y_{6,-7}Y_{3,-8}Y_{5,-4}Y_{2,-5}");
        assert_eq!(w.flagged().count(), 0);
        let w = translate_multisegment(&ms("[0;6]"), 7).unwrap();
        assert_eq!(w.factors[0].flag, RangeFlag::Trivial);
        let w = translate_multisegment(&ms("[0;6]"), 6).unwrap();
        assert_eq!(w.factors[0].flag, RangeFlag::Undefined);
        assert_eq!(
            translate_multisegment(&Multisegment::empty(), 3)
                .unwrap()
                .to_string(),
            "1"
        );
        assert!(translate_multisegment(&ms("[0;1]"), 1).is_err());
        let back = LoopWeight::parse("Y_{2,-5}Y_{3,-2}Y_{1,-2}", 4).unwrap();
        assert_eq!(back.to_multisegment(), ms("[2;3]+[0;2]+[1;1]"));
        assert!(LoopWeight::parse("Y_{2,-4}", 4).is_err());
        assert!(LoopWeight::parse("Y_{2,-5}Z", 4).is_err());
    }

    #[test]
    fn first_relation() {
        let rel = relation_bottom(&ms("[2;3]+[0;2]+[1;1]")).unwrap();
        let t = translate_relation(&rel, 4).unwrap();
        assert_eq!(
            t.text,
            "L(Y_{2,-5}Y_{3,-2})·L(Y_{3,-2}Y_{1,-2}) = L(M)·L(Y_{3,-2}) + L(Y_{3,-2})·L(Y_{3,-4}Y_{3,-2})"
        );
        assert_eq!(t.monomial.to_string(), "Y_{2,-5}Y_{3,-2}Y_{1,-2}");
        assert!(t.flags.is_empty() && t.simplified.is_none());
    }

    #[test]
    fn second_relations() {
        let m = ms("[1;6]+[3;5]+[0;4]+[2;3]");
        let t = translate_relation(&relation_bottom(&m).unwrap(), 7).unwrap();
        assert_eq!(
            t.text,
            "L(Y_{6,-7}Y_{3,-8}Y_{5,-4})·L(Y_{6,-7}Y_{5,-4}Y_{2,-5}) = L(M)·L(Y_{6,-7}Y_{5,-4}) + L(Y_{6,-7}Y_{5,-4}Y_{1,-6})·L(Y_{6,-7}Y_{4,-7}Y_{5,-4})"
        );
        let t = translate_relation(&relation_top(&m).unwrap(), 7).unwrap();
        assert_eq!(
            t.text,
            "L(Y_{3,-8}Y_{5,-4}Y_{2,-5})·L(Y_{6,-7}Y_{3,-8}Y_{2,-5}) = L(M)·L(Y_{3,-8}Y_{2,-5}) + L(Y_{3,-8}Y_{4,-5}Y_{2,-5})·L(Y_{7,-6}Y_{3,-8}Y_{2,-5})"
        );
        assert_eq!(t.flags.len(), 1);
        assert_eq!(t.flags[0].factor.to_string(), "Y_{7,-6}");
        assert_eq!(t.flags[0].flag, RangeFlag::Trivial);
        assert_eq!(t.flags[0].segment, Segment::new(0, 6).unwrap());
        assert!(t
            .simplified
            .as_deref()
            .unwrap()
            .ends_with("+ L(Y_{3,-8}Y_{4,-5}Y_{2,-5})·L(Y_{3,-8}Y_{2,-5})"));
        let t8 = translate_relation(&relation_top(&m).unwrap(), 8).unwrap();
        assert!(t8.flags.is_empty());
    }

    #[test]
    fn snake_is_ladder_exhaustive() {
        for n in 1..=4 {
            for m in regular_multisegments(n, 0, 5) {
                let w = translate_multisegment(&m, 20).unwrap();
                assert_eq!(is_snake(&w), m.is_ladder(), "{m}");
            }
        }
        let w = translate_multisegment(&ms("[1;5]+[0;4]+[2;3]"), 8).unwrap();
        assert!(!is_snake(&w));
    }

    proptest! {
        #[test]
        fn roundtrip(a in -30i64..30, len in 1i64..20) {
            let s = Segment::new(a, a + len - 1).unwrap();
            let (i, p) = seg_to_y(&s).unwrap();
            prop_assert_eq!((i + p + 1).rem_euclid(2), 0);
            prop_assert_eq!(y_to_seg(i, p).unwrap(), s);
        }

        #[test]
        fn snake_matches_ladder(pairs in prop::collection::vec((-6i64..6, 0i64..6), 1..6)) {
            let m = Multisegment::new(
                pairs.iter().map(|&(a, l)| Segment::new(a, a + l).unwrap())
            ).unwrap();
            let w = translate_multisegment(&m, 40).unwrap();
            prop_assert_eq!(is_snake(&w), m.is_ladder());
            prop_assert_eq!(w.to_multisegment(), m.clone());
            prop_assert_eq!(w.to_string().parse::<LoopWeight>().unwrap().to_multisegment(), m);
        }
    }
}
