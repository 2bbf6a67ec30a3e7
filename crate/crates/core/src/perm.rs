//! Permutations of `{0..N-1}` in one-line notation.
//!
//! Positions and values are 0-based internally. Text uses the usual 1-based
//! one-line notation, e.g. `3 1 4 2` or `3142`. Dots are drawn at row `i`,
//! column `sigma(i)`, with row 0 on top.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Default size limit for explicit interval enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation {
                    n,
                    detail: format!("value {} repeated or out of range", v + 1),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-based one-line notation.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        if let Some(&v) = values.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidPermutation {
                n,
                detail: format!("value {v} out of range"),
            });
        }
        Permutation::from_images(values.iter().map(|v| v - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The longest element `w0`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (0..n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn at(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        })
    }

    pub fn inversions(&self) -> usize {
        let n = self.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Sign from the inversion count.
    pub fn sign(&self) -> i64 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Sign from counting, for every dot, the dots strictly above and to
    /// the right of it.
    pub fn sign_by_dots(&self) -> i64 {
        let n = self.len();
        let mut count = 0;
        for r in 0..n {
            for r2 in 0..r {
                if self.images[r2] > self.images[r] {
                    count += 1;
                }
            }
        }
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Removes position `i` and closes the gap in values.
    pub fn flatten(&self, i: usize) -> Result<Self> {
        let n = self.len();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, size: n });
        }
        let removed = self.images[i];
        let images = self
            .images
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Ok(Permutation { images })
    }

    /// First occurrence of `pattern`, as increasing positions.
    ///
    /// Brute force over all position subsets: `O(C(N,k) * k log k)`.
    pub fn find_pattern(&self, pattern: &Permutation) -> Option<Vec<usize>> {
        let k = pattern.len();
        if k > self.len() {
            return None;
        }
        (0..self.len()).combinations(k).find(|idx| {
            (0..k).all(|s| {
                (s + 1..k).all(|t| {
                    (self.images[idx[s]] < self.images[idx[t]])
                        == (pattern.images[s] < pattern.images[t])
                })
            })
        })
    }

    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        self.find_pattern(pattern).is_some()
    }

    /// Checks avoidance of 4231 and 3412, naming an occurrence if any.
    pub fn check_avoids_4231_and_3412(&self) -> Result<()> {
        for pat in [pattern_4231(), pattern_3412()] {
            if let Some(pos) = self.find_pattern(&pat) {
                return Err(Error::PatternViolation {
                    sigma: self.to_string(),
                    pattern: pat.to_string(),
                    positions: pos.iter().map(|p| p + 1).collect(),
                });
            }
        }
        Ok(())
    }

    pub fn avoids_4231_and_3412(&self) -> bool {
        self.check_avoids_4231_and_3412().is_ok()
    }

    /// `r(i,j) = #{k <= i : sigma(k) <= j}` as an `N x N` table.
    pub fn rank_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut r: Vec<Vec<usize>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = (0..n)
                .map(|j| r.last().map_or(0, |above| above[j]) + usize::from(self.images[i] <= j))
                .collect();
            r.push(row);
        }
        r
    }

    /// Bruhat order by rank-matrix dominance.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let rp = self.rank_matrix();
        let rq = other.rank_matrix();
        Ok(rp
            .iter()
            .zip(&rq)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x >= y)))
    }

    /// `[id, self]`, by downward search over inversion-removing
    /// transpositions. Sorted.
    pub fn bruhat_interval(&self) -> Result<Vec<Permutation>> {
        self.bruhat_interval_bounded(DEFAULT_ENUMERATION_BOUND)
    }

    pub fn bruhat_interval_bounded(&self, bound: usize) -> Result<Vec<Permutation>> {
        let n = self.len();
        if n > bound {
            return Err(Error::BoundExceeded { n, bound });
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.clone());
        queue.push_back(self.clone());
        while let Some(p) = queue.pop_front() {
            for i in 0..n {
                for j in i + 1..n {
                    if p.images[i] > p.images[j] {
                        let mut q = p.clone();
                        q.images.swap(i, j);
                        if seen.insert(q.clone()) {
                            queue.push_back(q);
                        }
                    }
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// `[id, self]` by filtering all of `S_N` through [`Self::bruhat_leq`].
    pub fn bruhat_interval_by_filter(&self) -> Result<Vec<Permutation>> {
        let n = self.len();
        if n > DEFAULT_ENUMERATION_BOUND {
            return Err(Error::BoundExceeded {
                n,
                bound: DEFAULT_ENUMERATION_BOUND,
            });
        }
        let mut out = Vec::new();
        for p in all_permutations(n) {
            if p.bruhat_leq(self)? {
                out.push(p);
            }
        }
        out.sort();
        Ok(out)
    }
}

/// All permutations of size `n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (0..n).permutations(n).map(|images| Permutation { images })
}

pub fn pattern_4231() -> Permutation {
    Permutation {
        images: vec![3, 1, 2, 0],
    }
}

pub fn pattern_3412() -> Permutation {
    Permutation {
        images: vec![2, 3, 0, 1],
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.images {
                write!(f, "{}", v + 1)?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.one_line().iter().join(" "))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts comma- or space-separated values, or a single run of digits
    /// when every value is below 10.
    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<(usize, &str)> = s
            .char_indices()
            .filter(|(_, c)| !(c.is_whitespace() || *c == ','))
            .map(|(i, _)| i)
            .fold(Vec::<(usize, usize)>::new(), |mut acc, i| {
                match acc.last_mut() {
                    Some(last) if last.1 == i => last.1 = i + 1,
                    _ => acc.push((i, i + 1)),
                }
                acc
            })
            .into_iter()
            .map(|(a, b)| (a, &s[a..b]))
            .collect();
        let mut values = Vec::new();
        let compact = tokens.len() == 1 && tokens[0].1.len() > 1;
        for (pos, tok) in &tokens {
            if compact {
                for (k, c) in tok.char_indices() {
                    let d = c.to_digit(10).ok_or(Error::Parse {
                        position: pos + k,
                        message: format!("unexpected character '{c}'"),
                    })?;
                    values.push(d as usize);
                }
            } else {
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    position: *pos,
                    message: format!("expected a positive integer, found '{tok}'"),
                })?;
                values.push(v);
            }
        }
        Permutation::from_one_line(&values)
    }
}
