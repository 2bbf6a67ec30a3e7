//! Enumeration and seeded sampling of regular multisegments.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::segment::{Multisegment, Segment};

/// Every regular multisegment with `n` segments and all endpoints in
/// `lo..=hi`, in a fixed order.
pub fn regular_multisegments(n: usize, lo: i64, hi: i64) -> Vec<Multisegment> {
    let values: Vec<i64> = (lo..=hi).collect();
    let mut out = Vec::new();
    for bs in values.iter().copied().combinations(n) {
        let bs: Vec<i64> = bs.into_iter().rev().collect();
        for as_ in values.iter().copied().permutations(n) {
            if as_.iter().zip(&bs).all(|(a, b)| a <= b) {
                let segs = as_
                    .iter()
                    .zip(&bs)
                    .map(|(&a, &b)| Segment::new(a, b).expect("a <= b"));
                out.push(Multisegment::new(segs).expect("nonempty"));
            }
        }
    }
    out
}

/// Every ladder with `n` segments and endpoints in `lo..=hi`.
pub fn ladders(n: usize, lo: i64, hi: i64) -> Vec<Multisegment> {
    let values: Vec<i64> = (lo..=hi).collect();
    let mut out = Vec::new();
    for bs in values.iter().copied().combinations(n) {
        for as_ in values.iter().copied().combinations(n) {
            if as_.iter().zip(&bs).all(|(a, b)| a <= b) {
                let segs = as_
                    .iter()
                    .zip(&bs)
                    .map(|(&a, &b)| Segment::new(a, b).expect("a <= b"));
                out.push(Multisegment::new(segs).expect("nonempty"));
            }
        }
    }
    out
}

/// A uniformly drawn regular multisegment with `n` segments and endpoints
/// in `lo..=hi`, by rejection. Needs `hi - lo + 1 >= n`.
pub fn random_regular<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Multisegment {
    let values: Vec<i64> = (lo..=hi).collect();
    assert!(values.len() >= n, "window too small");
    loop {
        let mut bs: Vec<i64> = values.choose_multiple(rng, n).copied().collect();
        bs.sort_unstable_by(|x, y| y.cmp(x));
        let as_: Vec<i64> = values.choose_multiple(rng, n).copied().collect();
        if as_.iter().zip(&bs).all(|(a, b)| a <= b) {
            let segs = as_
                .iter()
                .zip(&bs)
                .map(|(&a, &b)| Segment::new(a, b).expect("a <= b"));
            return Multisegment::new(segs).expect("nonempty");
        }
    }
}

/// A random regular multisegment whose permutation avoids 4231 and 3412.
pub fn random_pattern_avoiding<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Multisegment {
    loop {
        let m = random_regular(rng, n, lo, hi);
        if m.regular_profile()
            .map(|p| p.sigma().avoids_4231_and_3412())
            .unwrap_or(false)
        {
            return m;
        }
    }
}
