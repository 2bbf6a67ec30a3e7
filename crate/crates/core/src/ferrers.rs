//! Boards `Γ[id,σ]`, masked matrices over the ring and their determinants.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{pattern_3412, Permutation};
use crate::ring::RingElement;
use crate::segment::{RegularProfile, Segment};

/// A subset of the `N x N` grid. Rows and columns are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoardMask {
    n: usize,
    cells: Vec<Vec<bool>>,
}

impl BoardMask {
    pub fn empty(n: usize) -> Self {
        BoardMask {
            n,
            cells: vec![vec![false; n]; n],
        }
    }

    pub fn full(n: usize) -> Self {
        BoardMask {
            n,
            cells: vec![vec![true; n]; n],
        }
    }

    pub fn from_boxes<I: IntoIterator<Item = (usize, usize)>>(n: usize, boxes: I) -> Self {
        let mut b = BoardMask::empty(n);
        for (r, c) in boxes {
            b.cells[r][c] = true;
        }
        b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.cells[r][c]
    }

    pub fn insert(&mut self, r: usize, c: usize) {
        self.cells[r][c] = true;
    }

    pub fn boxes(&self) -> BTreeSet<(usize, usize)> {
        (0..self.n)
            .flat_map(|r| (0..self.n).map(move |c| (r, c)))
            .filter(|&(r, c)| self.cells[r][c])
            .collect()
    }

    pub fn box_count(&self) -> usize {
        self.cells.iter().flatten().filter(|&&x| x).count()
    }

    pub fn row(&self, r: usize) -> &[bool] {
        &self.cells[r]
    }

    pub fn column(&self, c: usize) -> Vec<bool> {
        self.cells.iter().map(|row| row[c]).collect()
    }

    pub fn contains_graph(&self, p: &Permutation) -> bool {
        p.len() == self.n && (0..self.n).all(|i| self.cells[i][p.at(i)])
    }

    /// Removes the given rows and columns and reindexes.
    pub fn remove(&self, rows: &[usize], cols: &[usize]) -> BoardMask {
        let keep_r: Vec<usize> = (0..self.n).filter(|r| !rows.contains(r)).collect();
        let keep_c: Vec<usize> = (0..self.n).filter(|c| !cols.contains(c)).collect();
        BoardMask {
            n: keep_r.len(),
            cells: keep_r
                .iter()
                .map(|&r| keep_c.iter().map(|&c| self.cells[r][c]).collect())
                .collect(),
        }
    }

    /// Every permutation whose graph lies in the board, sorted.
    pub fn permutations_inside(&self) -> Vec<Permutation> {
        fn go(
            b: &BoardMask,
            row: usize,
            used: &mut Vec<bool>,
            cur: &mut Vec<usize>,
            out: &mut Vec<Permutation>,
        ) {
            if row == b.n {
                out.push(Permutation::from_images(cur.clone()).expect("bijection"));
                return;
            }
            for c in 0..b.n {
                if b.cells[row][c] && !used[c] {
                    used[c] = true;
                    cur.push(c);
                    go(b, row + 1, used, cur, out);
                    cur.pop();
                    used[c] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut vec![false; self.n], &mut Vec::new(), &mut out);
        out
    }
}

/// `Γ[id,σ]` as a union of rectangles: box `(r,c)` is in when some dot
/// `(i1, σ(i1))` with `i1 <= r` and some dot `(i2, σ(i2))` with `i2 >= r`
/// satisfy `σ(i2) <= c <= σ(i1)`. Row `r` is therefore the column range
/// from `min_{i>=r} σ(i)` to `max_{i<=r} σ(i)`.
pub fn right_hull(sigma: &Permutation) -> BoardMask {
    let n = sigma.len();
    let mut board = BoardMask::empty(n);
    let mut suffix_min = vec![usize::MAX; n + 1];
    for i in (0..n).rev() {
        suffix_min[i] = suffix_min[i + 1].min(sigma.at(i));
    }
    let mut prefix_max = 0;
    for (r, &lo) in suffix_min.iter().take(n).enumerate() {
        prefix_max = prefix_max.max(sigma.at(r));
        for c in lo..=prefix_max {
            board.insert(r, c);
        }
    }
    board
}

/// Union of the graphs of all `σ' <= σ`.
pub fn hull_from_interval(sigma: &Permutation) -> Result<BoardMask> {
    let mut board = BoardMask::empty(sigma.len());
    for p in sigma.bruhat_interval()? {
        for i in 0..p.len() {
            board.insert(i, p.at(i));
        }
    }
    Ok(board)
}

/// An `N x N` matrix of ring elements restricted to a mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskedMatrix {
    entries: Vec<Vec<RingElement>>,
    mask: BoardMask,
}

impl MaskedMatrix {
    /// Zeroes the entries outside `mask`.
    pub fn new(mut entries: Vec<Vec<RingElement>>, mask: BoardMask) -> Result<Self> {
        let n = mask.n();
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(Error::SizeMismatch {
                left: entries.len(),
                right: n,
            });
        }
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                if !mask.contains(r, c) {
                    *e = RingElement::zero();
                }
            }
        }
        Ok(MaskedMatrix { entries, mask })
    }

    pub fn n(&self) -> usize {
        self.mask.n()
    }

    pub fn mask(&self) -> &BoardMask {
        &self.mask
    }

    pub fn entry(&self, r: usize, c: usize) -> &RingElement {
        &self.entries[r][c]
    }

    pub fn entries(&self) -> &[Vec<RingElement>] {
        &self.entries
    }

    /// Restricts to another mask of the same size.
    pub fn restrict(&self, mask: &BoardMask) -> Result<MaskedMatrix> {
        if mask.n() != self.n() {
            return Err(Error::SizeMismatch {
                left: mask.n(),
                right: self.n(),
            });
        }
        let mut both = BoardMask::empty(self.n());
        for (r, c) in mask.boxes() {
            if self.mask.contains(r, c) {
                both.insert(r, c);
            }
        }
        MaskedMatrix::new(self.entries.clone(), both)
    }

    /// `M_A^B`: drops the rows in `rows` and the columns in `cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<MaskedMatrix> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch {
                left: rows.len(),
                right: cols.len(),
            });
        }
        let n = self.n();
        for &i in rows.iter().chain(cols) {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, size: n });
            }
        }
        let uniq = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
        if !uniq(rows) || !uniq(cols) {
            return Err(Error::Precondition("repeated index in minor".into()));
        }
        let entries = (0..n)
            .filter(|r| !rows.contains(r))
            .map(|r| {
                (0..n)
                    .filter(|c| !cols.contains(c))
                    .map(|c| self.entries[r][c].clone())
                    .collect()
            })
            .collect();
        MaskedMatrix::new(entries, self.mask.remove(rows, cols))
    }

    /// Determinant by expansion along rows, memoized on the set of used
    /// columns: `O(2^N * N)` ring operations.
    pub fn det(&self) -> RingElement {
        let n = self.n();
        assert!(n < usize::BITS as usize, "matrix too large");
        let mut layer: HashMap<usize, RingElement> = HashMap::new();
        layer.insert(0, RingElement::one());
        for row in 0..n {
            let mut next: HashMap<usize, RingElement> = HashMap::new();
            for (used, acc) in &layer {
                for col in 0..n {
                    if used & (1 << col) != 0 || self.entries[row][col].is_zero() {
                        continue;
                    }
                    // columns already used to the right of `col` are inversions
                    let crossings = (used >> (col + 1)).count_ones();
                    let mut term = acc * &self.entries[row][col];
                    if crossings % 2 == 1 {
                        term = -term;
                    }
                    *next.entry(used | (1 << col)).or_default() += &term;
                }
            }
            next.retain(|_, v| !v.is_zero());
            layer = next;
        }
        layer.remove(&((1usize << n) - 1)).unwrap_or_default()
    }

    /// Determinant as `Σ sgn(σ') Π m_{i,σ'(i)}` over a supplied list of
    /// permutations (normally a Bruhat interval).
    pub fn det_over(&self, perms: &[Permutation]) -> RingElement {
        let mut total = RingElement::zero();
        for p in perms {
            let mut term = RingElement::one().scale(p.sign());
            for i in 0..self.n() {
                term = &term * &self.entries[i][p.at(i)];
                if term.is_zero() {
                    break;
                }
            }
            total += &term;
        }
        total
    }

    /// Determinant as the alternating sum over `[id,σ]`.
    pub fn det_by_interval(&self, sigma: &Permutation) -> Result<RingElement> {
        if sigma.len() != self.n() {
            return Err(Error::SizeMismatch {
                left: sigma.len(),
                right: self.n(),
            });
        }
        Ok(self.det_over(&sigma.bruhat_interval()?))
    }
}

impl fmt::Display for MaskedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "| {} |", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The entry `Z(a';b)`: zero below the unit boundary, the unit at
/// `b = a' - 1`, otherwise a single standard class.
pub fn segment_entry(a: i64, b: i64) -> RingElement {
    if b < a - 1 {
        RingElement::zero()
    } else if b == a - 1 {
        RingElement::one()
    } else {
        RingElement::segment(Segment::new(a, b).expect("valid"))
    }
}

/// The matrix `(Z(a'_i; b_j))` restricted to `Γ[id, σ_m]`.
pub fn masked_matrix(profile: &RegularProfile) -> Result<MaskedMatrix> {
    profile.sigma().check_avoids_4231_and_3412()?;
    Ok(masked_matrix_unchecked(profile))
}

pub(crate) fn masked_matrix_unchecked(profile: &RegularProfile) -> MaskedMatrix {
    let a = profile.a_sorted();
    let b = profile.b();
    let entries = a
        .iter()
        .map(|&ai| b.iter().map(|&bj| segment_entry(ai, bj)).collect())
        .collect();
    MaskedMatrix::new(entries, right_hull(profile.sigma())).expect("square")
}

/// A matrix whose entry `(i,j)` is a distinct indeterminate, encoded as the
/// singleton class `ζ([k;k])` with `k = i*N + j`. Distinct singletons are
/// algebraically independent in the ring.
pub fn generic_matrix(mask: &BoardMask) -> MaskedMatrix {
    let n = mask.n();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = (i * n + j) as i64;
                    RingElement::segment(Segment::new(k, k).expect("valid"))
                })
                .collect()
        })
        .collect();
    MaskedMatrix::new(entries, mask.clone()).expect("square")
}

/// Both sides of the condensation identity
/// `det(M) det(M_{a,a2}^{b,b2}) = det(M_a^b) det(M_{a2}^{b2}) - det(M_a^{b2}) det(M_{a2}^b)`.
pub fn lewis_carroll_sides(
    mat: &MaskedMatrix,
    a: usize,
    a2: usize,
    b: usize,
    b2: usize,
) -> Result<(RingElement, RingElement)> {
    if !(a < a2 && b < b2) {
        return Err(Error::Precondition("need a < a2 and b < b2".into()));
    }
    let lhs = &mat.det() * &mat.minor(&[a, a2], &[b, b2])?.det();
    let rhs = &(&mat.minor(&[a], &[b])?.det() * &mat.minor(&[a2], &[b2])?.det())
        - &(&mat.minor(&[a], &[b2])?.det() * &mat.minor(&[a2], &[b])?.det());
    Ok((lhs, rhs))
}

pub fn lewis_carroll_check(
    mat: &MaskedMatrix,
    a: usize,
    a2: usize,
    b: usize,
    b2: usize,
) -> Result<bool> {
    let (l, r) = lewis_carroll_sides(mat, a, a2, b, b2)?;
    Ok(l == r)
}

/// Compares the board `Γ[id,σ]` with row `i` and column `σ(i)` deleted to
/// the board of the flattened permutation, on generic entries.
pub fn flatten_board_check(sigma: &Permutation, i: usize) -> Result<bool> {
    sigma.check_avoids_4231_and_3412()?;
    let n = sigma.len();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, size: n });
    }
    let full = generic_matrix(&BoardMask::full(n));
    let lhs = full
        .restrict(&right_hull(sigma))?
        .minor(&[i], &[sigma.at(i)])?
        .det();
    let flat = sigma.flatten(i)?;
    let rhs = full
        .minor(&[i], &[sigma.at(i)])?
        .restrict(&right_hull(&flat))?
        .det();
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LineSide {
    Columns,
    Rows,
    Both,
}

/// Which of the pairs (columns `σ(N)`, `N`) or (rows `σ⁻¹(N)`, `N`) of
/// `Γ[id,σ]` coincide.
pub fn identical_line_side(sigma: &Permutation) -> Result<LineSide> {
    if let Some(pos) = sigma.find_pattern(&pattern_3412()) {
        return Err(Error::PatternViolation {
            sigma: sigma.to_string(),
            pattern: "3412".into(),
            positions: pos.iter().map(|p| p + 1).collect(),
        });
    }
    let n = sigma.len();
    if n == 0 || sigma.at(n - 1) == n - 1 {
        return Err(Error::Precondition("need σ(N) ≠ N".into()));
    }
    let board = right_hull(sigma);
    let last = n - 1;
    let cols = board.column(sigma.at(last)) == board.column(last);
    let rows = board.row(sigma.inverse().at(last)) == board.row(last);
    match (cols, rows) {
        (true, true) => Ok(LineSide::Both),
        (true, false) => Ok(LineSide::Columns),
        (false, true) => Ok(LineSide::Rows),
        (false, false) => Err(Error::NoIdenticalLines),
    }
}

/// ASCII picture of `Γ[id,σ]`: `*` dot, `#` other shaded box, `.` empty.
pub fn render_board(sigma: &Permutation) -> String {
    let board = right_hull(sigma);
    let mut out = String::new();
    for r in 0..sigma.len() {
        for c in 0..sigma.len() {
            out.push(if sigma.at(r) == c {
                '*'
            } else if board.contains(r, c) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}
