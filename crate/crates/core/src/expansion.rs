//! Standard-basis expansions of irreducible classes of regular
//! multisegments.
//!
//! Three routes are available. The bounded sum runs over `[σ₀, σ]`, the
//! full sum runs over `[id, σ]` and drops vanishing terms, and the
//! determinant route evaluates the masked matrix on `Γ[id, σ]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ferrers::masked_matrix;
use crate::perm::Permutation;
use crate::ring::RingElement;
use crate::segment::{Multisegment, RegularProfile, Segment};
use crate::socle::is_real_regular;

/// Why the closed formula applies to a multisegment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaBasis {
    /// `σ_m` avoids 4231 and 3412; all three routes are available.
    PatternAvoiding,
    /// Real by the subsequence criterion only; no determinant cross-check.
    RealOnly,
}

/// `σ₀`, the lower end of the bounded sum.
pub fn sigma0(profile: &RegularProfile) -> Result<Permutation> {
    let n = profile.len();
    let a = profile.a_sorted();
    let b = profile.b();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for j in (0..n).rev() {
        let x = a.iter().filter(|&&ak| ak <= b[j] + 1).count();
        let row = (0..x)
            .rev()
            .find(|&r| !used[r])
            .ok_or(Error::Sigma0Undefined {
                column: j + 1,
                bound: x,
            })?;
        used[row] = true;
        images[row] = j;
    }
    Permutation::from_images(images)
}

/// Checks that the closed formula may be used on `m`.
pub fn formula_basis(m: &Multisegment) -> Result<(RegularProfile, FormulaBasis)> {
    let profile = m.regular_profile()?;
    if profile.sigma().avoids_4231_and_3412() {
        Ok((profile, FormulaBasis::PatternAvoiding))
    } else if is_real_regular(m)? {
        Ok((profile, FormulaBasis::RealOnly))
    } else {
        Err(Error::NotCertified(m.clone()))
    }
}

/// The basis element `Π ζ([a'_i; b_{τ(i)}])`, or `None` when some factor
/// has `b < a' - 1`.
pub fn term(profile: &RegularProfile, tau: &Permutation) -> Option<Multisegment> {
    let a = profile.a_sorted();
    let b = profile.b();
    let mut segs = Vec::with_capacity(a.len());
    for (i, &ai) in a.iter().enumerate() {
        let bj = b[tau.at(i)];
        if bj < ai - 1 {
            return None;
        }
        if bj >= ai {
            segs.push(Segment::new(ai, bj).expect("nonempty"));
        }
    }
    Some(Multisegment::new(segs).expect("nonempty segments"))
}

fn alternating_sum<'a, I>(profile: &RegularProfile, perms: I) -> RingElement
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let s = profile.sigma().sign();
    RingElement::from_pairs(
        perms
            .into_iter()
            .filter_map(|tau| term(profile, tau).map(|m| (m, s * tau.sign()))),
    )
}

/// Full alternating sum over `[id, σ]`, vanishing terms dropped.
pub fn expand_irreducible(m: &Multisegment) -> Result<RingElement> {
    let (profile, _) = formula_basis(m)?;
    Ok(alternating_sum(
        &profile,
        &profile.sigma().bruhat_interval()?,
    ))
}

/// Alternating sum over `[σ₀, σ]` only.
pub fn expand_bounded(m: &Multisegment) -> Result<RingElement> {
    let (profile, _) = formula_basis(m)?;
    let s0 = sigma0(&profile)?;
    let mut perms = Vec::new();
    for tau in profile.sigma().bruhat_interval()? {
        if s0.bruhat_leq(&tau)? {
            perms.push(tau);
        }
    }
    Ok(alternating_sum(&profile, &perms))
}

/// `sgn(σ) det(M|Γ[id,σ])`.
pub fn expand_via_det(m: &Multisegment) -> Result<RingElement> {
    let profile = m.regular_profile()?;
    let mat = masked_matrix(&profile)?;
    Ok(mat.det().scale(profile.sigma().sign()))
}

/// True when every basis element of `x` covers the same integers, with
/// multiplicity, as `m`.
pub fn content_conserved(x: &RingElement, m: &Multisegment) -> bool {
    let c = m.content();
    x.terms().all(|(t, _)| t.content() == c)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub multisegment: Multisegment,
    pub sigma: String,
    pub sigma0: String,
    pub basis: FormulaBasis,
    pub bounded: RingElement,
    pub full: RingElement,
    /// Absent when the determinant route does not apply.
    pub determinant: Option<RingElement>,
    pub consistent: bool,
    /// Interval elements whose term is nonzero outside `[σ₀, σ]`, or zero
    /// inside it.
    pub offending: Vec<String>,
}

/// Runs all applicable routes and compares them.
pub fn expansion_consistency(m: &Multisegment) -> Result<ConsistencyReport> {
    let (profile, basis) = formula_basis(m)?;
    let s0 = sigma0(&profile)?;
    let bounded = expand_bounded(m)?;
    let full = expand_irreducible(m)?;
    let determinant = match basis {
        FormulaBasis::PatternAvoiding => Some(expand_via_det(m)?),
        FormulaBasis::RealOnly => None,
    };
    let mut offending = Vec::new();
    for tau in profile.sigma().bruhat_interval()? {
        let inside = s0.bruhat_leq(&tau)?;
        if inside != term(&profile, &tau).is_some() {
            offending.push(tau.to_string());
        }
    }
    let consistent =
        bounded == full && determinant.as_ref().is_none_or(|d| *d == full) && offending.is_empty();
    Ok(ConsistencyReport {
        multisegment: m.clone(),
        sigma: profile.sigma().to_string(),
        sigma0: s0.to_string(),
        basis,
        bounded,
        full,
        determinant,
        consistent,
        offending,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use crate::sample::regular_multisegments;

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    fn z(s: &str) -> RingElement {
        RingElement::basis(ms(s))
    }

    /// Oracle: σ₀ from the defining maximum, written with 1-based indices.
    fn sigma0_oracle(profile: &RegularProfile) -> Vec<usize> {
        let n = profile.len();
        let a = profile.a_sorted();
        let b = profile.b();
        let mut inv = vec![0usize; n + 1];
        for i in (1..=n).rev() {
            let x = (1..=n).filter(|&j| a[j - 1] <= b[i - 1] + 1).count();
            let taken: Vec<usize> = (i + 1..=n).map(|k| inv[k]).collect();
            inv[i] = (1..=x).filter(|j| !taken.contains(j)).max().unwrap();
        }
        let mut one_line = vec![0; n];
        for i in 1..=n {
            one_line[inv[i] - 1] = i;
        }
        one_line
    }

    #[test]
    fn section_example() {
        let x = expand_irreducible(&ms("[1;4]+[0;3]+[2;2]")).unwrap();
        assert_eq!(x, z("[1;4]+[0;3]+[2;2]") - z("[0;4]+[1;3]+[2;2]"));
        assert_eq!(expand_via_det(&ms("[1;4]+[0;3]+[2;2]")).unwrap(), x);
        assert_eq!(expand_bounded(&ms("[1;4]+[0;3]+[2;2]")).unwrap(), x);
    }

    #[test]
    fn three_segment_example() {
        let x = expand_irreducible(&ms("[2;3]+[0;2]+[1;1]")).unwrap();
        let expect =
            z("[2;3]+[1;1]+[0;2]") + z("[0;3]+[1;2]") - z("[1;3]+[0;2]") - z("[0;3]+[2;2]+[1;1]");
        assert_eq!(x, expect);
    }

    #[test]
    fn single_segment() {
        for s in ["[0;0]", "[-3;5]"] {
            assert_eq!(expand_irreducible(&ms(s)).unwrap(), z(s));
            assert_eq!(expand_via_det(&ms(s)).unwrap(), z(s));
        }
        assert!(expand_irreducible(&Multisegment::empty()).unwrap().is_one());
    }

    #[test]
    fn sigma0_examples() {
        let p = ms("[1;4]+[0;3]+[2;2]").regular_profile().unwrap();
        assert_eq!(sigma0(&p).unwrap(), Permutation::identity(3));
        let p = ms("[2;3]+[0;2]+[1;1]").regular_profile().unwrap();
        assert_eq!(sigma0(&p).unwrap(), Permutation::identity(3));
        let p = ms("[2;5]+[1;3]+[0;2]").regular_profile().unwrap();
        assert_eq!(sigma0(&p).unwrap(), Permutation::identity(3));
        // far-apart segments force a nontrivial lower bound
        let p = ms("[5;6]+[0;1]").regular_profile().unwrap();
        assert_eq!(sigma0(&p).unwrap().one_line(), vec![2, 1]);
    }

    #[test]
    fn sigma0_matches_oracle_and_characterization() {
        for n in 1..=5 {
            for m in regular_multisegments(n, 0, 6) {
                let p = m.regular_profile().unwrap();
                let s0 = sigma0(&p).unwrap();
                assert_eq!(s0.one_line(), sigma0_oracle(&p), "{m}");
                let a = p.a_sorted();
                let b = p.b();
                for tau in all_permutations(n) {
                    let bounded = (0..n).all(|i| a[i] <= b[tau.at(i)] + 1);
                    assert_eq!(s0.bruhat_leq(&tau).unwrap(), bounded, "{m} {tau}");
                }
            }
        }
    }

    #[test]
    fn not_certified() {
        // σ = 3412 and the real criterion finds a witness
        let m = ms("[2;7]+[3;6]+[0;5]+[1;4]");
        assert_eq!(expand_irreducible(&m), Err(Error::NotCertified(m.clone())));
        assert!(matches!(
            expand_irreducible(&ms("[0;3]+[1;3]")),
            Err(Error::NotRegular { .. })
        ));
        assert!(matches!(
            expand_via_det(&m),
            Err(Error::PatternViolation { .. })
        ));
    }

    #[test]
    fn routes_agree_exhaustive_small() {
        for n in 1..=3 {
            for m in regular_multisegments(n, 0, 7) {
                let r = expansion_consistency(&m).unwrap();
                assert!(r.consistent, "{m}: {r:?}");
                assert_eq!(r.full.coefficient(&m), 1);
                assert!(content_conserved(&r.full, &m));
            }
        }
    }

    #[test]
    fn ladders_consistent() {
        for m in [
            "[2;5]+[1;3]+[0;0]",
            "[3;6]+[2;5]+[1;4]+[0;3]",
            "[4;9]+[3;7]+[2;4]+[1;3]+[0;1]",
        ] {
            let r = expansion_consistency(&ms(m)).unwrap();
            assert!(r.consistent);
            assert_eq!(r.basis, FormulaBasis::PatternAvoiding);
        }
    }
}
