//! Matching conditions, good segments, the real criterion for regular
//! multisegments, and irreducibility certificates for products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::segment::{Multisegment, Segment};
use crate::tsystems::neighbors_bottom;

/// Largest `N` accepted by the exhaustive real criterion.
pub const REAL_CRITERION_BOUND: usize = 12;

/// Index sets of a probe segment against `m`, in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ArrowSets {
    pub x: Vec<usize>,
    pub xt: Vec<usize>,
    pub y: Vec<usize>,
    pub yt: Vec<usize>,
}

pub fn arrow_sets(delta: &Segment, m: &Multisegment) -> Result<ArrowSets> {
    if delta.is_empty() {
        return Err(Error::DegenerateSegment(*delta));
    }
    let shifted = delta.shifted_left();
    let mut out = ArrowSets::default();
    for (i, s) in m.segments().iter().enumerate() {
        if delta.precedes_unchecked(s) {
            out.x.push(i);
        }
        if s.precedes_unchecked(delta) {
            out.xt.push(i);
        }
        if shifted.precedes_unchecked(s) {
            out.y.push(i);
        }
        if s.shifted_left().precedes_unchecked(delta) {
            out.yt.push(i);
        }
    }
    Ok(out)
}

/// Whether some injective `f: from -> to` has `admissible(i, f(i))` for
/// every `i`. Augmenting paths.
pub fn matching_exists<F>(from: &[usize], to: &[usize], admissible: F) -> bool
where
    F: Fn(usize, usize) -> bool,
{
    if from.len() > to.len() {
        return false;
    }
    let adj: Vec<Vec<usize>> = from
        .iter()
        .map(|&i| {
            to.iter()
                .enumerate()
                .filter(|&(_, &j)| admissible(i, j))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; to.len()];

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, owner, seen)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }

    (0..from.len()).all(|u| augment(u, &adj, &mut owner, &mut vec![false; to.len()]))
}

/// `LC(Δ, m)`: a matching `X -> Y` with `Δ_{f(i)} ≺ Δ_i`.
pub fn lc(delta: &Segment, m: &Multisegment) -> Result<bool> {
    let sets = arrow_sets(delta, m)?;
    let s = m.segments();
    Ok(matching_exists(&sets.x, &sets.y, |i, j| {
        s[j].precedes_unchecked(&s[i])
    }))
}

/// `RC(Δ, m)`: a matching `X̃ -> Ỹ` with `Δ_i ≺ Δ_{f(i)}`.
pub fn rc(delta: &Segment, m: &Multisegment) -> Result<bool> {
    let sets = arrow_sets(delta, m)?;
    let s = m.segments();
    Ok(matching_exists(&sets.xt, &sets.yt, |i, j| {
        s[i].precedes_unchecked(&s[j])
    }))
}

/// Whether `Z(Δ) × Z(m)` is irreducible, by the matching criterion.
pub fn segment_product_irreducible(delta: &Segment, m: &Multisegment) -> Result<bool> {
    Ok(lc(delta, m)? && rc(delta, m)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Both,
    None,
}

impl Side {
    fn from_flags(left: bool, right: bool) -> Side {
        match (left, right) {
            (true, true) => Side::Both,
            (true, false) => Side::Left,
            (false, true) => Side::Right,
            (false, false) => Side::None,
        }
    }

    pub fn is_left(self) -> bool {
        matches!(self, Side::Left | Side::Both)
    }

    pub fn is_right(self) -> bool {
        matches!(self, Side::Right | Side::Both)
    }

    pub fn is_good(self) -> bool {
        self != Side::None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodSegmentReport {
    pub index: usize,
    pub segment: Segment,
    pub side: Side,
}

/// Side classification of `m[i]` from the matching conditions.
pub fn good_side(m: &Multisegment, i: usize) -> Result<Side> {
    let delta = m.get(i).ok_or(Error::IndexOutOfRange {
        index: i,
        size: m.len(),
    })?;
    if !(lc(&delta, m)? && rc(&delta, m)?) {
        return Ok(Side::None);
    }
    let minus = m.without_indices(&[i]);
    Ok(Side::from_flags(lc(&delta, &minus)?, rc(&delta, &minus)?))
}

/// Good-segment classification of every segment, by matchings.
pub fn good_segments(m: &Multisegment) -> Result<Vec<GoodSegmentReport>> {
    (0..m.len())
        .map(|i| {
            Ok(GoodSegmentReport {
                index: i,
                segment: m.segments()[i],
                side: good_side(m, i)?,
            })
        })
        .collect()
}

/// Classification for regular `m` from the shape criteria: a segment is
/// good left when it precedes nothing and the segments preceding it form a
/// ladder, and symmetrically on the right.
pub fn good_segments_fast(m: &Multisegment) -> Result<Vec<GoodSegmentReport>> {
    let profile = m.regular_profile()?;
    let inv = profile.sigma().inverse();
    let decreasing = |set: &[usize]| set.windows(2).all(|w| inv.at(w[0]) > inv.at(w[1]));
    let mut out = Vec::with_capacity(m.len());
    for (i, delta) in m.segments().iter().enumerate() {
        let sets = arrow_sets(delta, m)?;
        let left = sets.x.is_empty() && decreasing(&sets.xt);
        let right = sets.xt.is_empty() && decreasing(&sets.x);
        out.push(GoodSegmentReport {
            index: i,
            segment: *delta,
            side: Side::from_flags(left, right),
        });
    }
    Ok(out)
}

/// `LC` for a segment of a regular `m`, by monotonicity of `σ⁻¹` on `X`.
pub fn lc_fast_member(m: &Multisegment, i: usize) -> Result<bool> {
    let profile = m.regular_profile()?;
    let inv = profile.sigma().inverse();
    let sets = arrow_sets(&m.segments()[i], m)?;
    Ok(sets.x.windows(2).all(|w| inv.at(w[0]) > inv.at(w[1])))
}

/// `RC` for a segment of a regular `m`, by monotonicity of `σ⁻¹` on `X̃`.
pub fn rc_fast_member(m: &Multisegment, i: usize) -> Result<bool> {
    let profile = m.regular_profile()?;
    let inv = profile.sigma().inverse();
    let sets = arrow_sets(&m.segments()[i], m)?;
    Ok(sets.xt.windows(2).all(|w| inv.at(w[0]) > inv.at(w[1])))
}

/// `LC` and `RC` for a probe outside `m` with `Δ + m` regular: no arrows.
pub fn lc_rc_fast_probe(delta: &Segment, m: &Multisegment) -> Result<(bool, bool)> {
    m.with(*delta)?.regular_profile()?;
    let sets = arrow_sets(delta, m)?;
    Ok((sets.x.is_empty(), sets.xt.is_empty()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealWitness {
    /// 1 or 2, for the two inequality families.
    pub family: u8,
    /// 1-based canonical positions `j_1 < ... < j_r`.
    pub positions: Vec<usize>,
}

fn chain_holds(a: &[i64], b: &[i64], from: usize) -> bool {
    // a'_{i+1} < a'_i <= b'_{i+1} + 1 for i = from..r-1 (1-based)
    let r = a.len();
    (from..r).all(|i| a[i] < a[i - 1] && a[i - 1] <= b[i] + 1)
}

fn family_one(a: &[i64], b: &[i64]) -> bool {
    let r = a.len();
    chain_holds(a, b, 3) && a[2] < a[0] && a[0] <= b[2] + 1 && a[r - 1] < a[1] && a[1] < a[r - 2]
}

fn family_two(a: &[i64], b: &[i64]) -> bool {
    let r = a.len();
    let l = if r == 4 { 2 } else { r - 1 };
    chain_holds(a, b, 4)
        && a[3] < a[1]
        && a[1] <= b[3] + 1
        && a[2] < a[r - 1]
        && a[r - 1] < a[0]
        && a[0] < a[l - 1]
}

/// A subsequence violating the real criterion, if any. Exhaustive over
/// subsequences of length at least 4.
pub fn real_witness(m: &Multisegment) -> Result<Option<RealWitness>> {
    m.regular_profile()?;
    let n = m.len();
    if n > REAL_CRITERION_BOUND {
        return Err(Error::BoundExceeded {
            n,
            bound: REAL_CRITERION_BOUND,
        });
    }
    let segs = m.segments();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 4 {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let a: Vec<i64> = idx.iter().map(|&i| segs[i].a()).collect();
        let b: Vec<i64> = idx.iter().map(|&i| segs[i].b()).collect();
        for (family, holds) in [(1u8, family_one(&a, &b)), (2u8, family_two(&a, &b))] {
            if holds {
                return Ok(Some(RealWitness {
                    family,
                    positions: idx.iter().map(|i| i + 1).collect(),
                }));
            }
        }
    }
    Ok(None)
}

/// Whether `Z(m)` is real, for regular `m`. Pattern avoidance is a fast
/// sufficient check.
pub fn is_real_regular(m: &Multisegment) -> Result<bool> {
    let profile = m.regular_profile()?;
    if profile.sigma().avoids_4231_and_3412() {
        return Ok(true);
    }
    Ok(real_witness(m)?.is_none())
}

#[derive(Debug, Clone, Serialize)]
pub struct ExistenceReport {
    pub multisegment: Multisegment,
    pub good: Vec<GoodSegmentReport>,
    /// `Δ_1` or `Δ_{σ(1)}` is good.
    pub top_pair: bool,
    /// `Δ_N` or `Δ_{σ(N)}` is good.
    pub bottom_pair: bool,
    pub good_count: usize,
    /// `σ(N) = 1` implies `Δ_N` good right.
    pub bottom_special: bool,
    /// `σ(1) = N` implies `Δ_1` good left.
    pub top_special: bool,
    /// `σ(N) = 1` and `σ(1) = N` imply a ladder.
    pub ladder_special: bool,
    pub pass: bool,
}

/// Checks the existence statements for good segments of a regular
/// pattern-avoiding `m` with at least two segments.
pub fn existence_check(m: &Multisegment) -> Result<ExistenceReport> {
    let profile = m.regular_profile()?;
    profile.sigma().check_avoids_4231_and_3412()?;
    let n = m.len();
    if n < 2 {
        return Err(Error::Precondition("need N >= 2".into()));
    }
    let s = profile.sigma();
    let good = good_segments(m)?;
    let is_good = |i: usize| good[i].side.is_good();
    let top_pair = is_good(0) || is_good(s.at(0));
    let bottom_pair = is_good(n - 1) || is_good(s.at(n - 1));
    let good_count = good.iter().filter(|g| g.side.is_good()).count();
    let bottom_special = s.at(n - 1) != 0 || good[n - 1].side.is_right();
    let top_special = s.at(0) != n - 1 || good[0].side.is_left();
    let ladder_special = !(s.at(n - 1) == 0 && s.at(0) == n - 1) || m.is_ladder();
    let pass = top_pair
        && bottom_pair
        && good_count >= 2
        && bottom_special
        && top_special
        && ladder_special;
    Ok(ExistenceReport {
        multisegment: m.clone(),
        good,
        top_pair,
        bottom_pair,
        good_count,
        bottom_special,
        top_special,
        ladder_special,
        pass,
    })
}

/// One step of an irreducibility certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Step {
    /// One factor is the trivial representation.
    UnitBase,
    /// One factor is a single segment and both matching conditions hold.
    SegmentCheck { segment: Segment },
    /// The factors are a ladder and its inner part, or a neighbor pair of
    /// a ladder. Accepted from the literature, not proved here.
    LadderBase {
        ladder: Multisegment,
        shape: LadderShape,
        cited: bool,
    },
    /// A segment good on the same side of both factors is removed from
    /// both.
    Peel { segment: Segment, side: Side },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LadderShape {
    Inner,
    Neighbors,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub factors: [Multisegment; 2],
    #[serde(flatten)]
    pub step: Step,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Certificate>,
}

impl Certificate {
    pub fn depth(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(Certificate::depth)
            .max()
            .unwrap_or(0)
    }

    /// Steps along the (single) chain, root first.
    pub fn steps(&self) -> Vec<&Step> {
        let mut out = vec![&self.step];
        let mut cur = self;
        while let Some(c) = cur.children.first() {
            out.push(&c.step);
            cur = c;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CertificateOutcome {
    Certified { certificate: Certificate },
    Unknown { reason: String },
}

impl CertificateOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, CertificateOutcome::Certified { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertificateOutcome::Certified { certificate } => Some(certificate),
            CertificateOutcome::Unknown { .. } => None,
        }
    }
}

/// Tries to certify that `Z(m1) × Z(m2)` is irreducible.
pub fn certify_irreducible_product(m1: &Multisegment, m2: &Multisegment) -> CertificateOutcome {
    match certify(m1, m2) {
        Ok(Some(certificate)) => CertificateOutcome::Certified { certificate },
        Ok(None) => CertificateOutcome::Unknown {
            reason: "no certificate step applies".into(),
        },
        Err(Refuted(reason)) => CertificateOutcome::Unknown { reason },
    }
}

/// A definite negative answer from the single-segment criterion.
struct Refuted(String);

fn certify(
    m1: &Multisegment,
    m2: &Multisegment,
) -> std::result::Result<Option<Certificate>, Refuted> {
    let factors = [m1.clone(), m2.clone()];
    if m1.is_empty() || m2.is_empty() {
        return Ok(Some(Certificate {
            factors,
            step: Step::UnitBase,
            children: vec![],
        }));
    }
    for (single, other) in [(m1, m2), (m2, m1)] {
        if single.len() == 1 {
            let delta = single.segments()[0];
            let ok = segment_product_irreducible(&delta, other).expect("nonempty segment");
            if ok {
                return Ok(Some(Certificate {
                    factors,
                    step: Step::SegmentCheck { segment: delta },
                    children: vec![],
                }));
            }
            return Err(Refuted(format!(
                "Z({delta}) x Z({other}) is reducible: matching condition fails"
            )));
        }
    }
    if let Some((ladder, shape)) = ladder_base(m1, m2) {
        return Ok(Some(Certificate {
            factors,
            step: Step::LadderBase {
                ladder,
                shape,
                cited: true,
            },
            children: vec![],
        }));
    }
    let (g1, g2) = match (good_segments(m1), good_segments(m2)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(None),
    };
    let mut refusal = None;
    for side in [Side::Left, Side::Right] {
        let matches_side = |s: Side| {
            if side == Side::Left {
                s.is_left()
            } else {
                s.is_right()
            }
        };
        for r1 in g1.iter().filter(|r| matches_side(r.side)) {
            let Some(j) = m2.index_of(&r1.segment) else {
                continue;
            };
            if !matches_side(g2[j].side) {
                continue;
            }
            let n1 = m1.without_indices(&[r1.index]);
            let n2 = m2.without_indices(&[j]);
            match certify(&n1, &n2) {
                Ok(Some(child)) => {
                    return Ok(Some(Certificate {
                        factors,
                        step: Step::Peel {
                            segment: r1.segment,
                            side,
                        },
                        children: vec![child],
                    }))
                }
                Ok(None) => {}
                Err(e) => refusal = Some(e),
            }
        }
    }
    match refusal {
        Some(Refuted(r)) => Err(Refuted(format!("all peelings fail; last: {r}"))),
        None => Ok(None),
    }
}

/// Recognizes `{L, L minus its first and last segments}` and the neighbor
/// pair of a ladder `L`, in either order.
fn ladder_base(m1: &Multisegment, m2: &Multisegment) -> Option<(Multisegment, LadderShape)> {
    for (big, small) in [(m1, m2), (m2, m1)] {
        let n = big.len();
        if n >= 2 && big.is_ladder() && *small == big.without_indices(&[0, n - 1]) {
            return Some((big.clone(), LadderShape::Inner));
        }
    }
    for (p, q) in [(m1, m2), (m2, m1)] {
        if let Some(l) = ladder_from_neighbors(p, q) {
            return Some((l, LadderShape::Neighbors));
        }
    }
    None
}

/// Rebuilds `L` from `P = Σ[a_k; b_{k+1}]` (units dropped) and
/// `Q = Σ[a_{k+1}; b_k]`, then rechecks.
fn ladder_from_neighbors(p: &Multisegment, q: &Multisegment) -> Option<Multisegment> {
    if q.is_empty() || !q.is_ladder() || p.len() > q.len() {
        return None;
    }
    let qs = q.segments();
    let k = qs.len();
    // a_1 and b_N are unknown; Q supplies a_2..a_N and b_1..b_{N-1}
    let mut a: Vec<i64> = vec![0];
    a.extend(qs.iter().map(|s| s.a()));
    let mut b: Vec<i64> = qs.iter().map(|s| s.b()).collect();
    b.push(0);
    if k == 1 {
        let s = p.segments().first()?;
        a[0] = s.a();
        b[1] = s.b();
    } else {
        let b2 = b[1];
        a[0] = p
            .segments()
            .iter()
            .find(|s| s.b() == b2)
            .map_or(b2 + 1, |s| s.a());
        let a_last = a[k - 1];
        b[k] = p
            .segments()
            .iter()
            .find(|s| s.a() == a_last)
            .map_or(a_last - 1, |s| s.b());
    }
    let segs: Vec<Segment> = a
        .iter()
        .zip(&b)
        .map(|(&x, &y)| Segment::new(x, y).ok().filter(|s| !s.is_empty()))
        .collect::<Option<Vec<_>>>()?;
    let l = Multisegment::new(segs).ok()?;
    if !l.is_ladder() || l.len() != k + 1 {
        return None;
    }
    let (mp, mpp) = neighbors_bottom(&l).ok()?;
    (mp == *p && mpp == *q).then_some(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::regular_multisegments;

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    fn seg(s: &str) -> Segment {
        s.parse().unwrap()
    }

    /// Oracle: try every injection.
    fn matching_brute(from: &[usize], to: &[usize], ok: &dyn Fn(usize, usize) -> bool) -> bool {
        fn go(
            k: usize,
            from: &[usize],
            to: &[usize],
            used: &mut Vec<bool>,
            ok: &dyn Fn(usize, usize) -> bool,
        ) -> bool {
            if k == from.len() {
                return true;
            }
            for t in 0..to.len() {
                if !used[t] && ok(from[k], to[t]) {
                    used[t] = true;
                    if go(k + 1, from, to, used, ok) {
                        return true;
                    }
                    used[t] = false;
                }
            }
            false
        }
        go(0, from, to, &mut vec![false; to.len()], ok)
    }

    #[test]
    fn arrow_set_examples() {
        let m = ms("[2;3]+[1;1]");
        let s = arrow_sets(&seg("[0;2]"), &m).unwrap();
        assert_eq!(s.x, vec![0]);
        assert!(s.xt.is_empty());
        assert_eq!(
            arrow_sets(&seg("[0;2]"), &Multisegment::empty()).unwrap(),
            ArrowSets::default()
        );
        let m = ms("[2;3]+[0;2]+[1;1]");
        let s = arrow_sets(&seg("[0;2]"), &m).unwrap();
        assert!(!s.x.contains(&1) && !s.xt.contains(&1));
        assert!(arrow_sets(&Segment::empty_at(0), &m).is_err());
    }

    #[test]
    fn matching_examples() {
        assert!(matching_exists(&[], &[0], |_, _| false));
        assert!(matching_exists(&[0, 1], &[0, 1, 2], |_, _| true));
        assert!(!matching_exists(&[0, 1], &[0], |_, _| true));
        assert!(!matching_exists(&[0, 1], &[5, 6], |_, j| j == 5));
    }

    #[test]
    fn matching_matches_brute_force() {
        let mut state = 17u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            state >> 33
        };
        for _ in 0..2000 {
            let nf = (next() % 6) as usize;
            let nt = (next() % 7) as usize;
            let from: Vec<usize> = (0..nf).collect();
            let to: Vec<usize> = (0..nt).collect();
            let bits: Vec<bool> = (0..nf * nt.max(1)).map(|_| next() % 3 != 0).collect();
            let ok = |i: usize, j: usize| bits[i * nt + j];
            assert_eq!(
                matching_exists(&from, &to, ok),
                matching_brute(&from, &to, &ok)
            );
        }
    }

    #[test]
    fn lc_rc_examples() {
        assert!(!lc(&seg("[0;2]"), &ms("[1;3]")).unwrap());
        assert!(rc(&seg("[0;2]"), &ms("[1;3]")).unwrap());
        // unlinked probe
        assert!(lc(&seg("[0;0]"), &ms("[3;4]+[-3;-2]")).unwrap());
        assert!(rc(&seg("[0;0]"), &ms("[3;4]+[-3;-2]")).unwrap());
        let l = ms("[2;5]+[1;3]+[0;0]");
        assert!(lc(&l.segments()[0], &l.without_indices(&[0])).unwrap());
    }

    #[test]
    fn good_segment_examples() {
        let g = good_segments(&ms("[2;3]+[0;2]+[1;1]")).unwrap();
        assert_eq!(
            g.iter().map(|r| r.side).collect::<Vec<_>>(),
            vec![Side::None, Side::Right, Side::Right]
        );
        let g = good_segments(&ms("[1;6]+[3;5]+[0;4]+[2;3]")).unwrap();
        assert_eq!(
            g.iter().map(|r| r.side).collect::<Vec<_>>(),
            vec![Side::Left, Side::None, Side::None, Side::Right]
        );
        let g = good_segments(&ms("[1;4]")).unwrap();
        assert_eq!(g[0].side, Side::Both);
    }

    #[test]
    fn fast_paths_match_matchings_exhaustive_small() {
        for n in 1..=4 {
            for m in regular_multisegments(n, 0, 6) {
                assert_eq!(
                    good_segments(&m).unwrap(),
                    good_segments_fast(&m).unwrap(),
                    "{m}"
                );
                for i in 0..n {
                    let d = m.segments()[i];
                    assert_eq!(lc(&d, &m).unwrap(), lc_fast_member(&m, i).unwrap());
                    assert_eq!(rc(&d, &m).unwrap(), rc_fast_member(&m, i).unwrap());
                    let rest = m.without_indices(&[i]);
                    let (l, r) = lc_rc_fast_probe(&d, &rest).unwrap();
                    assert_eq!((lc(&d, &rest).unwrap(), rc(&d, &rest).unwrap()), (l, r));
                }
            }
        }
    }

    #[test]
    fn real_examples() {
        assert!(is_real_regular(&ms("[2;5]+[1;3]+[0;0]")).unwrap());
        assert!(is_real_regular(&ms("[2;3]+[0;2]+[1;1]")).unwrap());
        let m = ms("[2;7]+[3;6]+[0;5]+[1;4]");
        assert!(!is_real_regular(&m).unwrap());
        assert_eq!(
            real_witness(&m).unwrap(),
            Some(RealWitness {
                family: 2,
                positions: vec![1, 2, 3, 4]
            })
        );
    }

    #[test]
    fn avoidance_implies_real_small() {
        for n in 4..=5 {
            for m in regular_multisegments(n, 0, 6) {
                if m.regular_profile().unwrap().sigma().avoids_4231_and_3412() {
                    assert_eq!(real_witness(&m).unwrap(), None, "{m}");
                }
            }
        }
    }

    #[test]
    fn existence_examples() {
        assert!(
            existence_check(&ms("[1;6]+[3;5]+[0;4]+[2;3]"))
                .unwrap()
                .pass
        );
        assert!(existence_check(&ms("[3;4]+[0;1]")).unwrap().pass);
        for m in crate::sample::ladders(4, 0, 6) {
            let r = existence_check(&m).unwrap();
            assert!(r.pass);
            assert!(r.good[0].side.is_left() && r.good[3].side.is_right());
        }
        assert!(existence_check(&ms("[0;1]")).is_err());
    }

    #[test]
    fn certificate_examples() {
        let out = certify_irreducible_product(&ms("[0;2]"), &ms("[2;3]+[0;2]+[1;1]"));
        let c = out.certificate().unwrap();
        assert_eq!(
            c.step,
            Step::SegmentCheck {
                segment: seg("[0;2]")
            }
        );

        assert!(certify_irreducible_product(&ms("[0;0]"), &ms("[5;5]")).is_certified());

        let out = certify_irreducible_product(&ms("[1;6]+[0;4]+[3;3]"), &ms("[1;6]+[0;4]+[2;5]"));
        let steps = out
            .certificate()
            .unwrap()
            .steps()
            .into_iter()
            .cloned()
            .collect::<Vec<_>>();
        assert_eq!(steps.len(), 3);
        assert!(matches!(steps[0], Step::Peel { segment, .. } if segment == seg("[1;6]")));
        assert!(matches!(steps[1], Step::Peel { segment, .. } if segment == seg("[0;4]")));
        assert!(matches!(steps[2], Step::SegmentCheck { .. }));

        // linked pair: reducible
        assert!(!certify_irreducible_product(&ms("[0;1]"), &ms("[1;2]")).is_certified());
    }

    #[test]
    fn ladder_base_shapes() {
        let l = ms("[3;6]+[2;4]+[0;3]");
        let inner = l.without_indices(&[0, 2]);
        let out = certify_irreducible_product(&l, &inner);
        assert!(out.is_certified());
        let (p, q) = neighbors_bottom(&l).unwrap();
        assert_eq!(ladder_from_neighbors(&p, &q), Some(l.clone()));
        let speh = ms("[2;4]+[1;3]+[0;2]");
        let (p, q) = neighbors_bottom(&speh).unwrap();
        assert_eq!(ladder_from_neighbors(&p, &q), Some(speh));
    }

    #[test]
    fn certificate_json_shape() {
        let out = certify_irreducible_product(&ms("[0;2]"), &ms("[2;3]+[0;2]+[1;1]"));
        let v = serde_json::to_value(&out).unwrap();
        assert_eq!(v["status"], "certified");
        assert_eq!(v["certificate"]["kind"], "segment-check");
        assert_eq!(v["certificate"]["segment"], "[0;2]");
    }
}
