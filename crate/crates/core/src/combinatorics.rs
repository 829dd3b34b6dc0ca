//! Partitions, triangular sequences and their row/column partial sums.
//!
//! A triangular sequence of order `p` is a lower-triangular array
//! `a[i][j]`, `1 <= j <= i <= p - 1`, stored row-major. It is triangular
//! with respect to a partition `lambda` when
//!
//! * `0 <= a[i][j] <= lambda[j + 1]`, and
//! * every column partial sum below the diagonal is at most the diagonal
//!   entry: `a[j+1][j] + ... + a[j+i][j] <= a[j][j]`.
//!
//! Indices in this module follow the 1-based math convention.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers with at least one part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts, `p`. Zero parts count.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `r`-th part, 1-based.
    pub fn part(&self, r: usize) -> i64 {
        self.0[r - 1] as i64
    }

    /// Componentwise containment `self ⊆ other` (same number of parts).
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn max_part(&self) -> u32 {
        self.0[0]
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s)?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

/// Parses `"3,3,1"` into `[3, 3, 1]`. Whitespace around items is ignored.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse(s.to_string()));
    }
    trimmed
        .split(',')
        .map(|item| item.trim().parse::<T>().map_err(|_| Error::Parse(s.to_string())))
        .collect()
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (n, item) in items.iter().enumerate() {
        if n > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// Number of entries in a triangular array of order `p`.
pub fn triangle_len(p: usize) -> usize {
    p.saturating_sub(1) * p / 2
}

#[inline]
fn flat_index(i: usize, j: usize) -> usize {
    i * (i - 1) / 2 + (j - 1)
}

/// Lower-triangular array of order `p - 1`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangularSequence {
    p: usize,
    entries: Vec<i64>,
}

impl TriangularSequence {
    /// Builds the sequence from row-major entries
    /// `a11, a21, a22, a31, a32, a33, ...` without checking Def-style
    /// constraints; use [`TriangularSequence::validate`] for that.
    pub fn from_entries(p: usize, entries: Vec<i64>) -> Result<Self> {
        let expected = triangle_len(p);
        if entries.len() != expected {
            return Err(Error::EntryCount { p, expected, got: entries.len() });
        }
        Ok(TriangularSequence { p, entries })
    }

    /// Builds and validates against `lambda`.
    pub fn new(lambda: &Partition, entries: Vec<i64>) -> Result<Self> {
        let s = Self::from_entries(lambda.len(), entries)?;
        s.validate(lambda)?;
        Ok(s)
    }

    pub fn empty(p: usize) -> Self {
        TriangularSequence { p, entries: vec![0; triangle_len(p)] }
    }

    pub fn order(&self) -> usize {
        self.p
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Entry `a[i][j]`, 1-based, `1 <= j <= i <= p - 1`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        debug_assert!(1 <= j && j <= i && i < self.p);
        self.entries[flat_index(i, j)]
    }

    /// `R_j = a[j][1] + ... + a[j][j-1]`; `R_1 = 0`.
    pub fn row_sum(&self, j: usize) -> Result<i64> {
        self.check_index(j)?;
        Ok((1..j).map(|t| self.get(j, t)).sum())
    }

    /// `C_j = a[j+1][j] + ... + a[p-1][j]`; `C_{p-1} = 0`.
    pub fn col_sum(&self, j: usize) -> Result<i64> {
        self.check_index(j)?;
        Ok((j + 1..self.p).map(|t| self.get(t, j)).sum())
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j >= self.p {
            return Err(Error::IndexOutOfRange { index: j, max: self.p.saturating_sub(1) });
        }
        Ok(())
    }

    pub fn is_triangular_for(&self, lambda: &Partition) -> bool {
        self.validate(lambda).is_ok()
    }

    pub fn validate(&self, lambda: &Partition) -> Result<()> {
        if lambda.len() != self.p {
            return Err(Error::OrderMismatch { expected: lambda.len(), got: self.p });
        }
        let bad = || Error::NotTriangular { entries: self.entries.clone(), lambda: lambda.parts().to_vec() };
        for i in 1..self.p {
            for j in 1..=i {
                let a = self.get(i, j);
                if a < 0 || a > lambda.part(j + 1) {
                    return Err(bad());
                }
            }
        }
        // entries are nonnegative, so the prefix sums are bounded by the
        // full column sum
        for j in 1..self.p {
            let mut partial = 0;
            for i in j + 1..self.p {
                partial += self.get(i, j);
                if partial > self.get(j, j) {
                    return Err(bad());
                }
            }
        }
        Ok(())
    }

    /// The `(i, j, k) = (a21, a22, a11)` view of an order-3 sequence.
    pub fn as_index3(&self) -> Option<SequenceIndex3> {
        (self.p == 3).then(|| SequenceIndex3 { i: self.entries[1], j: self.entries[2], k: self.entries[0] })
    }
}

impl fmt::Display for TriangularSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_joined(f, &self.entries)?;
        f.write_str("]")
    }
}

/// Order-3 triangular sequence written as `(i, j, k) = (a21, a22, a11)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SequenceIndex3 {
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

impl SequenceIndex3 {
    pub fn new(i: i64, j: i64, k: i64) -> Self {
        SequenceIndex3 { i, j, k }
    }

    /// `0 <= k <= lambda_2`, `0 <= i <= k`, `0 <= j <= lambda_3`.
    pub fn is_valid_for(&self, lambda: &Partition) -> bool {
        lambda.len() == 3
            && (0..=lambda.part(2)).contains(&self.k)
            && (0..=self.k).contains(&self.i)
            && (0..=lambda.part(3)).contains(&self.j)
    }

    /// `f = j + k`, the quantity both swaps preserve.
    pub fn f(&self) -> i64 {
        self.j + self.k
    }

    pub fn to_sequence(self) -> TriangularSequence {
        TriangularSequence { p: 3, entries: vec![self.k, self.i, self.j] }
    }
}

impl fmt::Display for SequenceIndex3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// Every sequence in `S(lambda)`, in lexicographic order of the row-major
/// entry list. Yields a single empty sequence when `p = 1`.
pub fn enumerate_triangular_sequences(lambda: &Partition) -> TriangularSequences<'_> {
    TriangularSequences::new(lambda)
}

/// Odometer over `S(lambda)`.
///
/// Entries are visited row-major, which puts every diagonal entry `a[j][j]`
/// ahead of the entries below it in column `j`; the upper bound of each
/// position therefore depends only on earlier positions, and zero is always
/// admissible.
pub struct TriangularSequences<'a> {
    lambda: &'a Partition,
    cells: Vec<(usize, usize)>,
    current: Option<Vec<i64>>,
}

impl<'a> TriangularSequences<'a> {
    fn new(lambda: &'a Partition) -> Self {
        let p = lambda.len();
        let cells = (1..p).flat_map(|i| (1..=i).map(move |j| (i, j))).collect::<Vec<_>>();
        let current = Some(vec![0; cells.len()]);
        TriangularSequences { lambda, cells, current }
    }

    fn bound(&self, entries: &[i64], pos: usize) -> i64 {
        let (i, j) = self.cells[pos];
        let cap = self.lambda.part(j + 1);
        if i == j {
            return cap;
        }
        let diag = entries[flat_index(j, j)];
        let above: i64 = (j + 1..i).map(|t| entries[flat_index(t, j)]).sum();
        cap.min(diag - above)
    }
}

impl Iterator for TriangularSequences<'_> {
    type Item = TriangularSequence;

    fn next(&mut self) -> Option<TriangularSequence> {
        let out = self.current.take()?;
        let mut next = out.clone();
        for pos in (0..next.len()).rev() {
            if next[pos] < self.bound(&next, pos) {
                next[pos] += 1;
                next[pos + 1..].iter_mut().for_each(|e| *e = 0);
                self.current = Some(next);
                break;
            }
        }
        Some(TriangularSequence { p: self.lambda.len(), entries: out })
    }
}

/// All partitions `lambda ⊆ bound` with `bound.len()` parts, in colex order
/// (compare the last part first).
pub fn partitions_in_box(bound: &Partition) -> Vec<Partition> {
    let p = bound.len();
    let mut out = Vec::new();
    let mut parts = vec![0u32; p];
    fill_box(bound.parts(), 0, u32::MAX, &mut parts, &mut out);
    out.sort_by(|a, b| a.parts().iter().rev().cmp(b.parts().iter().rev()));
    out
}

fn fill_box(bound: &[u32], r: usize, cap: u32, parts: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if r == bound.len() {
        out.push(Partition(parts.clone()));
        return;
    }
    for v in 0..=bound[r].min(cap) {
        parts[r] = v;
        fill_box(bound, r + 1, v, parts, out);
    }
}
