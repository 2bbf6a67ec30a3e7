//! Extended T-system relations and their verification in the ring.
//!
//! For a regular pattern-avoiding `m = Δ_1 + ... + Δ_N` (canonical order,
//! `b_1 > ... > b_N`) the bottom relation reads
//!
//! ```text
//! Z(m∖Δ_N) Z(m∖Δ_σ(N)) = Z(m) Z(m∖{Δ_N, Δ_σ(N)}) + Z(m') Z(m'')
//! ```
//!
//! and the top relation is the same statement for `Δ_1` and `Δ_σ(1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{content_conserved, expand_irreducible, formula_basis, FormulaBasis};
use crate::ring::RingElement;
use crate::segment::{Cursor, Multisegment, RegularProfile, Segment};
use crate::socle::{certify_irreducible_product, CertificateOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Bottom,
    Top,
    Ladder,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Bottom => "bottom",
            Provenance::Top => "top",
            Provenance::Ladder => "ladder",
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bottom" => Ok(Provenance::Bottom),
            "top" => Ok(Provenance::Top),
            "ladder" => Ok(Provenance::Ladder),
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown relation kind '{other}'"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RhsTerm {
    pub coefficient: i64,
    pub factors: [Multisegment; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub source: Multisegment,
    pub provenance: Provenance,
    pub lhs: [Multisegment; 2],
    pub rhs: Vec<RhsTerm>,
}

impl Relation {
    fn assemble(
        source: &Multisegment,
        provenance: Provenance,
        lhs: [Multisegment; 2],
        first: [Multisegment; 2],
        second: [Multisegment; 2],
    ) -> Relation {
        Relation {
            source: source.clone(),
            provenance,
            lhs,
            rhs: vec![
                RhsTerm {
                    coefficient: 1,
                    factors: first,
                },
                RhsTerm {
                    coefficient: 1,
                    factors: second,
                },
            ],
        }
    }

    /// Every multisegment occurring in the relation, lhs first.
    pub fn participants(&self) -> Vec<&Multisegment> {
        let mut out: Vec<&Multisegment> = self.lhs.iter().collect();
        for t in &self.rhs {
            out.extend(t.factors.iter());
        }
        out
    }

    /// Equality with each product read as an unordered pair of factors.
    /// Negation swaps the two left factors, for instance.
    pub fn same_up_to_factor_order(&self, other: &Relation) -> bool {
        fn key(p: &[Multisegment; 2]) -> [&Multisegment; 2] {
            if p[0] <= p[1] {
                [&p[0], &p[1]]
            } else {
                [&p[1], &p[0]]
            }
        }
        self.provenance == other.provenance
            && self.source == other.source
            && key(&self.lhs) == key(&other.lhs)
            && self.rhs.len() == other.rhs.len()
            && self
                .rhs
                .iter()
                .zip(&other.rhs)
                .all(|(x, y)| x.coefficient == y.coefficient && key(&x.factors) == key(&y.factors))
    }

    /// `(m', m'')`, the second right-hand product.
    pub fn neighbors(&self) -> Option<(&Multisegment, &Multisegment)> {
        self.rhs.get(1).map(|t| (&t.factors[0], &t.factors[1]))
    }
}

fn z(m: &Multisegment) -> String {
    format!("Z({m})")
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}×{} =",
            self.provenance.as_str(),
            z(&self.lhs[0]),
            z(&self.lhs[1])
        )?;
        for (k, t) in self.rhs.iter().enumerate() {
            let sep = if k == 0 { " " } else { " + " };
            let coef = if t.coefficient == 1 {
                String::new()
            } else {
                format!("{}·", t.coefficient)
            };
            write!(f, "{sep}{coef}{}×{}", z(&t.factors[0]), z(&t.factors[1]))?;
        }
        Ok(())
    }
}

fn parse_z(cur: &mut Cursor) -> Result<Multisegment> {
    if !cur.eat('Z') {
        return Err(cur.error("expected 'Z('"));
    }
    cur.expect('(')?;
    let m = cur.multisegment()?;
    cur.expect(')')?;
    Ok(m)
}

fn parse_times(cur: &mut Cursor) -> Result<()> {
    cur.skip_ws();
    match cur.peek() {
        Some('×') | Some('x') | Some('*') => {
            cur.bump();
            Ok(())
        }
        _ => Err(cur.error("expected '×'")),
    }
}

fn parse_product(cur: &mut Cursor) -> Result<[Multisegment; 2]> {
    let a = parse_z(cur)?;
    parse_times(cur)?;
    let b = parse_z(cur)?;
    Ok([a, b])
}

impl FromStr for Relation {
    type Err = Error;

    /// Parses the printed form. The kind prefix is optional and defaults to
    /// `bottom`; the source is the first factor of the first right-hand term.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut provenance = Provenance::Bottom;
        for p in [Provenance::Bottom, Provenance::Top, Provenance::Ladder] {
            if cur.eat_str(p.as_str()) {
                cur.expect(':')?;
                provenance = p;
                break;
            }
        }
        let lhs = parse_product(&mut cur)?;
        cur.expect('=')?;
        let mut rhs = Vec::new();
        loop {
            cur.skip_ws();
            let mut coefficient = 1;
            if matches!(cur.peek(), Some(c) if c.is_ascii_digit() || c == '-') {
                coefficient = cur.integer()?;
                cur.expect('·')?;
            }
            let factors = parse_product(&mut cur)?;
            rhs.push(RhsTerm {
                coefficient,
                factors,
            });
            if !cur.eat('+') {
                break;
            }
        }
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        let source = rhs[0].factors[0].clone();
        Ok(Relation {
            source,
            provenance,
            lhs,
            rhs,
        })
    }
}

/// Checks regularity, pattern avoidance and returns the profile.
fn avoiding_profile(m: &Multisegment) -> Result<RegularProfile> {
    let profile = m.regular_profile()?;
    profile.sigma().check_avoids_4231_and_3412()?;
    Ok(profile)
}

/// `I = {i | a_N <= a_i, b_i <= b_σ(N)}`, 0-based and increasing.
pub fn index_set_i(m: &Multisegment) -> Result<Vec<usize>> {
    let profile = m.regular_profile()?;
    let n = m.len();
    if n == 0 || profile.sigma().at(n - 1) == n - 1 {
        return Err(Error::UnlinkedBottom);
    }
    let s = m.segments();
    let a_n = s[n - 1].a();
    let b_top = s[profile.sigma().at(n - 1)].b();
    let set: Vec<usize> = (0..n)
        .filter(|&i| a_n <= s[i].a() && s[i].b() <= b_top)
        .collect();
    check_ladder(m, &set)?;
    Ok(set)
}

/// `J = {j | a_j <= a_1, b_σ(1) <= b_j}`, 0-based and increasing.
pub fn index_set_j(m: &Multisegment) -> Result<Vec<usize>> {
    let profile = m.regular_profile()?;
    let n = m.len();
    if n == 0 || profile.sigma().at(0) == 0 {
        return Err(Error::UnlinkedTop);
    }
    let s = m.segments();
    let a_1 = s[0].a();
    let b_bot = s[profile.sigma().at(0)].b();
    let set: Vec<usize> = (0..n)
        .filter(|&j| s[j].a() <= a_1 && b_bot <= s[j].b())
        .collect();
    check_ladder(m, &set)?;
    Ok(set)
}

fn check_ladder(m: &Multisegment, set: &[usize]) -> Result<()> {
    let sub = Multisegment::new(set.iter().map(|&i| m.segments()[i])).expect("nonempty");
    if sub.is_ladder() {
        Ok(())
    } else {
        Err(Error::IndexSetNotLadder(sub))
    }
}

/// `(a, b)` of a segment that may not satisfy `b >= a - 1`.
pub type Endpoints = (i64, i64);

/// The raw endpoint pairs `[a_{i_k}; b_{i_{k+1}}]` and `[a_{i_{k+1}}; b_{i_k}]`
/// before any unit or degeneracy handling.
pub fn neighbor_pairs(m: &Multisegment, set: &[usize]) -> (Vec<Endpoints>, Vec<Endpoints>) {
    let s = m.segments();
    let first = set.windows(2).map(|w| (s[w[0]].a(), s[w[1]].b())).collect();
    let second = set.windows(2).map(|w| (s[w[1]].a(), s[w[0]].b())).collect();
    (first, second)
}

/// Builds `(m', m'')` from an index set. Unit segments are dropped;
/// segments with `b < a - 1` are reported as an error.
fn neighbors_from(m: &Multisegment, set: &[usize]) -> Result<(Multisegment, Multisegment)> {
    let (first, second) = neighbor_pairs(m, set);
    let bad: Vec<(i64, i64)> = first
        .iter()
        .chain(&second)
        .copied()
        .filter(|&(a, b)| b < a - 1)
        .collect();
    if !bad.is_empty() {
        return Err(Error::DegenerateNeighbor {
            source_m: m.clone(),
            segments: bad,
        });
    }
    let rest = m.without_indices(set);
    let build = |pairs: &[(i64, i64)]| {
        let extra = pairs
            .iter()
            .map(|&(a, b)| Segment::new(a, b).expect("checked"))
            .filter(|s| !s.is_empty());
        rest.union(&Multisegment::new(extra).expect("nonempty"))
    };
    Ok((build(&first), build(&second)))
}

/// `(m', m'')` of the bottom relation. Needs only regularity and
/// `σ(N) ≠ N`; the relation builders add the pattern check.
pub fn neighbors_bottom(m: &Multisegment) -> Result<(Multisegment, Multisegment)> {
    let set = index_set_i(m)?;
    neighbors_from(m, &set)
}

/// `(m', m'')` of the top relation.
pub fn neighbors_top(m: &Multisegment) -> Result<(Multisegment, Multisegment)> {
    let set = index_set_j(m)?;
    neighbors_from(m, &set)
}

pub fn relation_bottom(m: &Multisegment) -> Result<Relation> {
    let profile = avoiding_profile(m)?;
    let (mp, mpp) = neighbors_bottom(m)?;
    let n = m.len();
    let sn = profile.sigma().at(n - 1);
    Ok(Relation::assemble(
        m,
        Provenance::Bottom,
        [m.without_indices(&[n - 1]), m.without_indices(&[sn])],
        [m.clone(), m.without_indices(&[n - 1, sn])],
        [mp, mpp],
    ))
}

pub fn relation_top(m: &Multisegment) -> Result<Relation> {
    let profile = avoiding_profile(m)?;
    let (mp, mpp) = neighbors_top(m)?;
    let s1 = profile.sigma().at(0);
    Ok(Relation::assemble(
        m,
        Provenance::Top,
        [m.without_indices(&[0]), m.without_indices(&[s1])],
        [m.clone(), m.without_indices(&[0, s1])],
        [mp, mpp],
    ))
}

/// The ladder relation written directly from the ladder's endpoints.
pub fn relation_ladder(m: &Multisegment) -> Result<Relation> {
    if !m.is_ladder() {
        return Err(Error::Precondition(format!("{m} is not a ladder")));
    }
    let n = m.len();
    if n < 2 {
        return Err(Error::UnlinkedBottom);
    }
    let all: Vec<usize> = (0..n).collect();
    let (mp, mpp) = neighbors_from(m, &all)?;
    Ok(Relation::assemble(
        m,
        Provenance::Ladder,
        [m.without_indices(&[n - 1]), m.without_indices(&[0])],
        [m.clone(), m.without_indices(&[0, n - 1])],
        [mp, mpp],
    ))
}

/// Applies `[a;b] -> [-b;-a]` to every multisegment of the relation.
pub fn negate_relation(rel: &Relation) -> Relation {
    Relation {
        source: rel.source.negate(),
        provenance: rel.provenance,
        lhs: [rel.lhs[0].negate(), rel.lhs[1].negate()],
        rhs: rel
            .rhs
            .iter()
            .map(|t| RhsTerm {
                coefficient: t.coefficient,
                factors: [t.factors[0].negate(), t.factors[1].negate()],
            })
            .collect(),
    }
}

/// The top relation of `m` obtained from the top relation of `-m`.
pub fn relation_top_via_negation(m: &Multisegment) -> Result<Relation> {
    let mut rel = negate_relation(&relation_top(&m.negate())?);
    rel.source = m.clone();
    Ok(rel)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Partial,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Partial => "PARTIAL",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Participant {
    pub multisegment: Multisegment,
    pub regular: bool,
    pub sigma: Option<String>,
    pub pattern_avoiding: Option<bool>,
    /// How the closed formula applies, or why it does not.
    pub expansion: std::result::Result<FormulaBasis, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub status: Status,
    /// `None` when some participant has no certified expansion.
    pub ring_equality: Option<bool>,
    pub content_conserved: Option<bool>,
    pub certificates: Vec<CertificateOutcome>,
    pub participants: Vec<Participant>,
    /// Basis elements where the two sides differ: `(multisegment, lhs - rhs)`.
    pub difference: Option<RingElement>,
}

fn describe(m: &Multisegment) -> Participant {
    let profile = m.regular_profile().ok();
    Participant {
        multisegment: m.clone(),
        regular: profile.is_some(),
        sigma: profile.as_ref().map(|p| p.sigma().to_string()),
        pattern_avoiding: profile.as_ref().map(|p| p.sigma().avoids_4231_and_3412()),
        expansion: formula_basis(m).map(|(_, b)| b).map_err(|e| e.to_string()),
    }
}

/// Left side and right side of the relation expanded in the standard basis.
pub fn expand_sides(rel: &Relation) -> Result<(RingElement, RingElement)> {
    let lhs = &expand_irreducible(&rel.lhs[0])? * &expand_irreducible(&rel.lhs[1])?;
    let mut rhs = RingElement::zero();
    for t in &rel.rhs {
        let prod = &expand_irreducible(&t.factors[0])? * &expand_irreducible(&t.factors[1])?;
        rhs += &prod.scale(t.coefficient);
    }
    Ok((lhs, rhs))
}

/// Exact ring check plus irreducibility certificates for the right side.
pub fn verify_relation(rel: &Relation) -> VerificationReport {
    let participants: Vec<Participant> = rel.participants().into_iter().map(describe).collect();
    let certificates: Vec<CertificateOutcome> = rel
        .rhs
        .iter()
        .map(|t| certify_irreducible_product(&t.factors[0], &t.factors[1]))
        .collect();
    let (ring_equality, content, difference) = match expand_sides(rel) {
        Ok((l, r)) => {
            let total = rel.lhs[0].union(&rel.lhs[1]);
            let content = content_conserved(&l, &total) && content_conserved(&r, &total);
            let diff = &l - &r;
            (Some(diff.is_zero()), Some(content), Some(diff))
        }
        Err(_) => (None, None, None),
    };
    let status = match ring_equality {
        Some(false) => Status::Fail,
        None => Status::Partial,
        Some(true) if certificates.iter().all(CertificateOutcome::is_certified) => Status::Pass,
        Some(true) => Status::Partial,
    };
    VerificationReport {
        status,
        ring_equality,
        content_conserved: content,
        certificates,
        participants,
        difference: difference.filter(|d| !d.is_zero()),
    }
}

/// For an instance whose `m'`/`m''` would contain a `b < a - 1` segment,
/// checks whether the relation holds with the second product read as zero.
#[derive(Debug, Clone, Serialize)]
pub struct DegenerateDiagnostic {
    pub source: Multisegment,
    pub provenance: Provenance,
    pub segments: Vec<(i64, i64)>,
    pub holds_with_zero_term: Option<bool>,
}

pub fn degenerate_diagnostic(
    m: &Multisegment,
    provenance: Provenance,
) -> Result<Option<DegenerateDiagnostic>> {
    let profile = avoiding_profile(m)?;
    let n = m.len();
    let (set, removed) = match provenance {
        Provenance::Top => {
            let s1 = profile.sigma().at(0);
            (index_set_j(m)?, [0, s1])
        }
        _ => {
            let sn = profile.sigma().at(n - 1);
            (index_set_i(m)?, [n - 1, sn])
        }
    };
    let (first, second) = neighbor_pairs(m, &set);
    let bad: Vec<(i64, i64)> = first
        .iter()
        .chain(&second)
        .copied()
        .filter(|&(a, b)| b < a - 1)
        .collect();
    if bad.is_empty() {
        return Ok(None);
    }
    let rel = Relation {
        source: m.clone(),
        provenance,
        lhs: [
            m.without_indices(&[removed[0]]),
            m.without_indices(&[removed[1]]),
        ],
        rhs: vec![RhsTerm {
            coefficient: 1,
            factors: [m.clone(), m.without_indices(&removed)],
        }],
    };
    let holds = expand_sides(&rel).ok().map(|(l, r)| l == r);
    Ok(Some(DegenerateDiagnostic {
        source: m.clone(),
        provenance,
        segments: bad,
        holds_with_zero_term: holds,
    }))
}

/// The sign identities used when the relation is derived from the
/// condensation identity, evaluated on one instance.
#[derive(Debug, Clone, Serialize)]
pub struct SignReport {
    pub sigma: String,
    pub sign_sigma: i64,
    /// `|I|`.
    pub r: usize,
    /// Dots in rows at or below `σ⁻¹(N)` and columns left of `σ(N)`.
    pub zone_b: usize,
    /// Dots in rows at or below `σ⁻¹(N)` and columns from `σ(N)` on.
    pub zone_c: usize,
    /// Dots above row `σ⁻¹(N)` in columns from `σ(N)` on; the derivation
    /// assumes none.
    pub upper_right: usize,
    pub sign_flat_n: i64,
    pub sign_flat_top: i64,
    pub sign_flat_both: i64,
    /// `sgn(σ̄^N) = sgn(σ)(-1)^{r-1}`.
    pub identity_n: bool,
    /// `sgn(σ̄^{σ⁻¹(N)}) = sgn(σ)(-1)^{r-1+#B}`.
    pub identity_top: bool,
    /// Removing both dots gives `sgn(σ)(-1)^{#B+1}`.
    pub identity_both: bool,
}

fn parity(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn sign_bookkeeping_check(m: &Multisegment) -> Result<SignReport> {
    let profile = avoiding_profile(m)?;
    let r = index_set_i(m)?.len();
    let s = profile.sigma();
    let n = s.len();
    let row_top = s.inverse().at(n - 1);
    let col = s.at(n - 1);
    let (mut zone_b, mut zone_c, mut upper_right) = (0, 0, 0);
    for i in 0..n {
        match (i >= row_top, s.at(i) >= col) {
            (true, false) => zone_b += 1,
            (true, true) => zone_c += 1,
            (false, true) => upper_right += 1,
            (false, false) => {}
        }
    }
    let sign = s.sign();
    let flat_n = s.flatten(n - 1)?.sign();
    let flat_top_perm = s.flatten(row_top)?;
    let flat_top = flat_top_perm.sign();
    let flat_both = flat_top_perm.flatten(n - 2)?.sign();
    Ok(SignReport {
        sigma: s.to_string(),
        sign_sigma: sign,
        r,
        zone_b,
        zone_c,
        upper_right,
        sign_flat_n: flat_n,
        sign_flat_top: flat_top,
        sign_flat_both: flat_both,
        identity_n: flat_n == sign * parity(r - 1),
        identity_top: flat_top == sign * parity(r - 1 + zone_b),
        identity_both: flat_both == sign * parity(zone_b + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::ladders;

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    #[test]
    fn index_sets() {
        assert_eq!(index_set_i(&ms("[2;3]+[0;2]+[1;1]")).unwrap(), vec![0, 2]);
        assert_eq!(
            index_set_i(&ms("[1;6]+[3;5]+[0;4]+[2;3]")).unwrap(),
            vec![1, 3]
        );
        assert_eq!(
            index_set_i(&ms("[3;6]+[2;4]+[0;3]")).unwrap(),
            vec![0, 1, 2]
        );
        assert_eq!(
            index_set_j(&ms("[1;6]+[3;5]+[0;4]+[2;3]")).unwrap(),
            vec![0, 2]
        );
        assert_eq!(index_set_i(&ms("[0;5]+[3;4]")), Err(Error::UnlinkedBottom));
        assert_eq!(index_set_j(&ms("[0;5]+[3;4]")), Err(Error::UnlinkedTop));
        // σ = 21 although the segments are far apart: I exists, m' degenerates
        assert_eq!(index_set_i(&ms("[3;4]+[0;1]")).unwrap(), vec![0, 1]);
        assert!(matches!(
            neighbors_bottom(&ms("[3;4]+[0;1]")),
            Err(Error::DegenerateNeighbor { .. })
        ));
    }

    #[test]
    fn first_example() {
        let m = ms("[2;3]+[0;2]+[1;1]");
        let (p, q) = neighbors_bottom(&m).unwrap();
        assert_eq!(p, ms("[0;2]"));
        assert_eq!(q, ms("[1;3]+[0;2]"));
        let rel = relation_bottom(&m).unwrap();
        assert_eq!(rel.lhs, [ms("[2;3]+[0;2]"), ms("[0;2]+[1;1]")]);
        assert_eq!(rel.rhs[0].factors, [m.clone(), ms("[0;2]")]);
        let rep = verify_relation(&rel);
        assert_eq!(rep.status, Status::Pass, "{rep:?}");
    }

    #[test]
    fn second_example_both_relations() {
        let m = ms("[1;6]+[3;5]+[0;4]+[2;3]");
        let bottom = relation_bottom(&m).unwrap();
        assert_eq!(
            bottom.neighbors().unwrap(),
            (&ms("[1;6]+[0;4]+[3;3]"), &ms("[1;6]+[0;4]+[2;5]"))
        );
        assert_eq!(
            bottom.lhs,
            [ms("[1;6]+[3;5]+[0;4]"), ms("[1;6]+[0;4]+[2;3]")]
        );
        let top = relation_top(&m).unwrap();
        assert_eq!(
            top.neighbors().unwrap(),
            (&ms("[3;5]+[2;3]+[1;4]"), &ms("[3;5]+[2;3]+[0;6]"))
        );
        for rel in [bottom, top] {
            let rep = verify_relation(&rel);
            assert_eq!(rep.ring_equality, Some(true));
            assert_eq!(rep.status, Status::Pass, "{rep:?}");
        }
    }

    #[test]
    fn negation_routes() {
        for m in [
            "[1;6]+[3;5]+[0;4]+[2;3]",
            "[2;3]+[0;2]+[1;1]",
            "[3;6]+[2;4]+[0;3]",
        ] {
            let m = ms(m);
            let top = relation_top(&m).unwrap();
            let via = relation_top_via_negation(&m).unwrap();
            assert!(via.same_up_to_factor_order(&top), "{m}");
            assert_ne!(via.lhs, top.lhs);
            if let Ok(b) = relation_bottom(&m) {
                let back = negate_relation(&relation_bottom(&m.negate()).unwrap());
                assert!(back.same_up_to_factor_order(&b), "{m}");
            }
        }
    }

    #[test]
    fn ladder_relation_matches_bottom() {
        for m in ladders(4, 0, 6) {
            match relation_bottom(&m) {
                Ok(b) => {
                    let l = relation_ladder(&m).unwrap();
                    assert_eq!(b.lhs, l.lhs);
                    assert_eq!(b.rhs, l.rhs);
                }
                Err(Error::DegenerateNeighbor { .. }) => {
                    assert!(relation_ladder(&m).is_err());
                }
                Err(e) => panic!("{m}: {e}"),
            }
        }
    }

    #[test]
    fn speh_chain() {
        let m = ms("[2;4]+[1;3]+[0;2]");
        let rel = relation_ladder(&m).unwrap();
        assert_eq!(
            rel.neighbors().unwrap(),
            (&ms("[2;3]+[1;2]"), &ms("[1;4]+[0;3]"))
        );
        assert_eq!(verify_relation(&rel).status, Status::Pass);
    }

    #[test]
    fn text_roundtrip() {
        let rel = relation_bottom(&ms("[2;3]+[0;2]+[1;1]")).unwrap();
        let text = rel.to_string();
        assert_eq!(
            text,
            "bottom: Z([2;3]+[0;2])×Z([0;2]+[1;1]) = Z([2;3]+[0;2]+[1;1])×Z([0;2]) + Z([0;2])×Z([1;3]+[0;2])"
        );
        assert_eq!(text.parse::<Relation>().unwrap(), rel);
        let bare = text.trim_start_matches("bottom: ");
        assert_eq!(bare.parse::<Relation>().unwrap(), rel);
        let two = relation_bottom(&ms("[3;4]+[1;3]")).unwrap();
        assert_eq!(two.to_string().parse::<Relation>().unwrap(), two);
        assert!(matches!(
            "Z([1;2])×Z([0;1]) = Z([1;2]".parse::<Relation>(),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn json_roundtrip() {
        let rel = relation_top(&ms("[1;6]+[3;5]+[0;4]+[2;3]")).unwrap();
        let s = serde_json::to_string(&rel).unwrap();
        assert_eq!(serde_json::from_str::<Relation>(&s).unwrap(), rel);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            relation_top(&ms("[0;5]+[3;4]")),
            Err(Error::UnlinkedTop)
        ));
        assert!(matches!(
            relation_bottom(&ms("[2;7]+[3;6]+[0;5]+[1;4]")),
            Err(Error::PatternViolation { .. })
        ));
        assert!(matches!(
            relation_bottom(&ms("[0;2]+[1;2]")),
            Err(Error::NotRegular { .. })
        ));
    }

    #[test]
    fn sign_data_for_3142() {
        let r = sign_bookkeeping_check(&ms("[1;6]+[3;5]+[0;4]+[2;3]")).unwrap();
        assert_eq!(r.sigma, "3142");
        assert_eq!((r.sign_sigma, r.sign_flat_n, r.r), (-1, -1, 2));
        assert!(!r.identity_n);
        assert_eq!(r.upper_right, 1);
    }

    #[test]
    fn sign_identities_hold_on_ladders() {
        for m in ladders(4, 0, 7) {
            let r = sign_bookkeeping_check(&m).unwrap();
            assert!(
                r.identity_n && r.identity_top && r.identity_both,
                "{m}: {r:?}"
            );
            assert_eq!(r.upper_right, 0);
        }
        let r = sign_bookkeeping_check(&ms("[1;2]+[0;1]")).unwrap();
        assert!(r.identity_n && r.identity_top && r.identity_both);
    }
}
