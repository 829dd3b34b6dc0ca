//! Positive formulas for `p = 2` and `p = 3`.
//!
//! For `p = 3` every non-intersecting tuple counted with sign `-1` comes from
//! one of two inversions. A `(12)` tuple is repaired by a horizontal swap of
//! its first two paths, a `(23)` tuple by a diagonal swap of its last two.
//! Both swaps land on an identity tuple of another sequence with the same
//! `f = j + k`. [`verify_injection`] checks this extensionally: every image is
//! valid, and no two negative tuples share an image.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::{enumerate_triangular_sequences, Partition, SequenceIndex3, TriangularSequence};
use crate::determinant::sequence_determinant;
use crate::error::{Error, Result};
use crate::lattice::{
    diagonal_contact, diagonal_distance, end_points, horizontal_contact, horizontal_distance, start_points,
    DiagonalContact, Distance, LatticePath, LatticePoint, PointConfiguration,
};
use crate::oracle::{count_for_permutation, enumerate_tuples, paths_vertex_disjoint, Permutation, SignedTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SwapKind {
    Horizontal,
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapResult {
    /// `(pi_1*, pi_2*)` for a horizontal swap, `(pi_2*, pi_3*)` for a diagonal one.
    pub new_paths: (LatticePath, LatticePath),
    pub new_sequence: SequenceIndex3,
    pub translation: u64,
    pub kind: SwapKind,
}

/// Position of the start points behind a negative `p = 3` tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum InversionCase {
    /// `w = (12)`, `A_2` strictly south and strictly east of `A_1`.
    Case1,
    /// `w = (23)`, `A_2` north-west of `A_3`.
    Case2Nw,
    /// `w = (23)`, `A_2` south-east of `A_3`.
    Case2Se,
    /// `w = (23)`, `A_2` south-west of `A_3`, distinct from it.
    Case2Sw,
}

impl fmt::Display for InversionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InversionCase::Case1 => "case 1",
            InversionCase::Case2Nw => "subcase 2.1",
            InversionCase::Case2Se => "subcase 2.2",
            InversionCase::Case2Sw => "subcase 2.3",
        };
        f.write_str(s)
    }
}

/// Tags a permutation and start triple; `None` when neither inversion pattern applies.
pub fn classify(starts: &[LatticePoint], w: &Permutation) -> Option<InversionCase> {
    let (a1, a2, a3) = (starts[0], starts[1], starts[2]);
    if *w == Permutation::transposition(3, 1, 2) {
        return (a2.x > a1.x && a2.y < a1.y).then_some(InversionCase::Case1);
    }
    if *w != Permutation::transposition(3, 2, 3) || (a2.x >= a3.x && a2.y >= a3.y) {
        return None;
    }
    if a2.x < a3.x && a2.y >= a3.y {
        Some(InversionCase::Case2Nw)
    } else if a2.x >= a3.x && a2.y < a3.y {
        Some(InversionCase::Case2Se)
    } else {
        Some(InversionCase::Case2Sw)
    }
}

/// Horizontal swap of `pi1 : A_1 -> B_2` and `pi2 : A_2 -> B_1`.
///
/// The row of `A_2` meets `pi1` at `A_2*`, `l` units west of `A_2`. The
/// suffix of `pi1` from `A_2*` becomes `pi2*`; the head of `pi1` up to `A_2*`
/// is moved `l` units east and joined to `pi2`, giving `pi1*`.
/// The sequence becomes `(i, j - l, k + l)`.
pub fn horizontal_swap(pi1: &LatticePath, pi2: &LatticePath, seq: SequenceIndex3) -> Result<SwapResult> {
    let (a1, a2) = (pi1.start, pi2.start);
    if !(a2.x > a1.x && a2.y < a1.y) {
        return Err(Error::SwapPrecondition(format!("A_2 = {a2} is not strictly south-east of A_1 = {a1}")));
    }
    let contact = horizontal_contact(pi1, pi2)?.ok_or(Error::InfiniteDistance)?;
    if contact.point.x >= a2.x {
        return Err(Error::SwapPrecondition(format!("pi_1 meets the row of A_2 east of it, at {}", contact.point)));
    }
    let l = contact.length;
    let shift = l as i64;
    let pi2_star = pi1.suffix_from(contact.index);
    let pi1_star = pi1.prefix_to(contact.index).translated(LatticePoint::new(shift, 0)).concat(pi2);
    Ok(SwapResult {
        new_paths: (pi1_star, pi2_star),
        new_sequence: SequenceIndex3::new(seq.i, seq.j - shift, seq.k + shift),
        translation: l,
        kind: SwapKind::Horizontal,
    })
}

/// Diagonal swap of `pi2 : A_2 -> B_3` and `pi3 : A_3 -> B_2`.
///
/// Same surgery as the horizontal swap along a slope-1 line: the start of
/// `pi2` moves to `A_2 + (l, l)` and the start of `pi3` to `A_3 - (l, l)`.
/// The sequence becomes `(i - l, j, k)`.
pub fn diagonal_swap(pi2: &LatticePath, pi3: &LatticePath, seq: SequenceIndex3) -> Result<SwapResult> {
    let (a2, a3) = (pi2.start, pi3.start);
    if a2.x >= a3.x && a2.y >= a3.y {
        return Err(Error::SwapPrecondition(format!("A_2 = {a2} is weakly north-east of A_3 = {a3}")));
    }
    let contact = diagonal_contact(pi3, pi2)?.ok_or(Error::InfiniteDistance)?;
    let l = contact.length();
    let shift = LatticePoint::new(l as i64, l as i64);
    let (pi2_star, pi3_star) = match contact {
        // the line through A_3 meets pi2 at A_3 - (l, l)
        DiagonalContact::OnPrime(c) => {
            if c.point != a3 - shift {
                return Err(Error::SwapPrecondition(format!("diagonal through A_3 meets pi_2 at {} (north-east)", c.point)));
            }
            (pi2.prefix_to(c.index).translated(shift).concat(pi3), pi2.suffix_from(c.index))
        }
        // the line through A_2 meets pi3 at A_2 + (l, l)
        DiagonalContact::OnPi(c) => {
            if c.point != a2 + shift {
                return Err(Error::SwapPrecondition(format!("diagonal through A_2 meets pi_3 at {} (south-west)", c.point)));
            }
            (pi3.suffix_from(c.index), pi3.prefix_to(c.index).translated(LatticePoint::new(0, 0) - shift).concat(pi2))
        }
    };
    Ok(SwapResult {
        new_paths: (pi2_star, pi3_star),
        new_sequence: SequenceIndex3::new(seq.i - l as i64, seq.j, seq.k),
        translation: l,
        kind: SwapKind::Diagonal,
    })
}

/// `#Pi(i)`: non-intersecting pairs `A_r(i) -> B_r`, `p = 2`.
pub fn p2_pairs(lambda: &Partition, mu: &Partition, i: i64) -> Result<BigUint> {
    if lambda.len() != 2 {
        return Err(Error::WrongOrder { expected: 2, got: lambda.len() });
    }
    if !(0..=lambda.part(2)).contains(&i) {
        return Err(Error::Usage(format!("a_11 = {i} outside 0..={}", lambda.part(2))));
    }
    let s = TriangularSequence::new(lambda, vec![i])?;
    let config = PointConfiguration::from_partitions(lambda, mu, &s)?;
    Ok(count_for_permutation(&config, &Permutation::identity(2)))
}

/// One negative tuple and where the surgery sent it.
#[derive(Debug, Clone, Serialize)]
pub struct InjectionImage {
    pub source: SequenceIndex3,
    pub case: Option<InversionCase>,
    pub target: Option<SequenceIndex3>,
    pub translation: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct InjectionReport {
    pub f: i64,
    /// Identity tuples over all sequences with this `f`.
    pub positive: usize,
    /// Tuples with an odd permutation.
    pub negative: usize,
    pub horizontal: usize,
    pub diagonal: usize,
    /// Tuples with `(123)` or `(132)`; they carry sign `+1` but no swap handles them.
    pub other_positive: usize,
    pub partial_sum: String,
    pub images: Vec<InjectionImage>,
    pub violations: Vec<String>,
}

impl InjectionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Applies the swaps to every negative tuple at this `f` and checks that the
/// images are identity tuples of sequences in `S(lambda)` with the same `f`,
/// that they are vertex-disjoint, and that no image is hit twice.
pub fn verify_injection(lambda: &Partition, mu: &Partition, f: i64) -> Result<InjectionReport> {
    if lambda.len() != 3 || mu.len() != 3 {
        return Err(Error::WrongOrder { expected: 3, got: lambda.len().max(mu.len()) });
    }
    let max = lambda.part(2) + lambda.part(3);
    if !(0..=max).contains(&f) {
        return Err(Error::FOutOfRange { f, max });
    }
    let ends = end_points(mu, 3)?;
    let mut report = InjectionReport { f, ..Default::default() };
    let mut seen: HashMap<(SequenceIndex3, Vec<LatticePath>), SequenceIndex3> = HashMap::new();
    let mut sum = BigInt::zero();

    for s in enumerate_triangular_sequences(lambda) {
        let seq = s.as_index3().expect("order 3");
        if seq.f() != f {
            continue;
        }
        sum += sequence_determinant(lambda, mu, &s)?;
        let config = PointConfiguration::from_partitions(lambda, mu, &s)?;
        for w in Permutation::all(3) {
            let tuples = enumerate_tuples(&config, &w);
            if tuples.is_empty() {
                continue;
            }
            if w.is_identity() {
                report.positive += tuples.len();
                continue;
            }
            if w.sign() > 0 {
                report.other_positive += tuples.len();
                report.violations.push(format!("{} tuple(s) with w = {w} at {seq}", tuples.len()));
                continue;
            }
            report.negative += tuples.len();
            let case = classify(&config.starts, &w);
            for tuple in &tuples {
                let mut image = InjectionImage { source: seq, case, target: None, translation: None };
                match swap_tuple(lambda, seq, &config.starts, tuple, case) {
                    Ok((swap, paths)) => {
                        image.target = Some(swap.new_sequence);
                        image.translation = Some(swap.translation);
                        match swap.kind {
                            SwapKind::Horizontal => report.horizontal += 1,
                            SwapKind::Diagonal => report.diagonal += 1,
                        }
                        let problems = check_image(lambda, &ends, f, &swap, &paths);
                        report.violations.extend(problems.into_iter().map(|p| format!("{seq} w={w}: {p}")));
                        if let Some(prev) = seen.insert((swap.new_sequence, paths), seq) {
                            report.violations.push(format!(
                                "not injective: tuples at {prev} and {seq} both map to a tuple at {}",
                                swap.new_sequence
                            ));
                        }
                    }
                    Err(e) => report.violations.push(format!("{seq} w={w}: {e}")),
                }
                report.images.push(image);
            }
        }
    }
    if sum < BigInt::zero() {
        report.violations.push(format!("partial sum c(lambda, mu; {f}) = {sum} is negative"));
    }
    report.partial_sum = sum.to_string();
    Ok(report)
}

fn swap_tuple(
    lambda: &Partition,
    seq: SequenceIndex3,
    starts: &[LatticePoint],
    tuple: &SignedTuple,
    case: Option<InversionCase>,
) -> Result<(SwapResult, Vec<LatticePath>)> {
    // tuple.paths[r] ends at B_{r+1} and starts at A_{w(r+1)}
    let p = &tuple.paths;
    match case {
        Some(InversionCase::Case1) => {
            let swap = horizontal_swap(&p[1], &p[0], seq)?;
            let l = swap.translation as i64;
            if l > starts[1].x - starts[0].x {
                return Err(Error::Invariant(format!("case 1 translation {l} exceeds x_A2 - x_A1")));
            }
            let paths = vec![swap.new_paths.0.clone(), swap.new_paths.1.clone(), p[2].clone()];
            Ok((swap, paths))
        }
        Some(case) => {
            let swap = diagonal_swap(&p[2], &p[1], seq)?;
            let l = swap.translation as i64;
            let (a2, a3) = (starts[1], starts[2]);
            let (i, j, k) = (seq.i, seq.j, seq.k);
            let gap = lambda.part(3) - lambda.part(2);
            let bound = match case {
                InversionCase::Case2Nw => 2 * i - k - j - 1,
                InversionCase::Case2Se => gap + 2 * i - k - j - 1,
                _ => (a3.x - a2.x).max(a3.y - a2.y),
            };
            if l > bound {
                return Err(Error::Invariant(format!("{case} translation {l} exceeds its bound {bound}")));
            }
            let paths = vec![p[0].clone(), swap.new_paths.0.clone(), swap.new_paths.1.clone()];
            Ok((swap, paths))
        }
        None => Err(Error::Invariant(format!(
            "negative tuple with w = {} matches neither inversion case",
            tuple.permutation
        ))),
    }
}

fn check_image(
    lambda: &Partition,
    ends: &[LatticePoint],
    f: i64,
    swap: &SwapResult,
    paths: &[LatticePath],
) -> Vec<String> {
    let mut problems = Vec::new();
    let target = swap.new_sequence;
    if !target.is_valid_for(lambda) {
        problems.push(format!("image sequence {target} is not triangular"));
        return problems;
    }
    if target.f() != f {
        problems.push(format!("image sequence {target} has f = {}", target.f()));
    }
    let starts = start_points(lambda, &target.to_sequence()).expect("validated above");
    for (r, path) in paths.iter().enumerate() {
        if path.start != starts[r] || path.end() != ends[r] {
            problems.push(format!("image path {} runs {} -> {}, expected {} -> {}", r + 1, path.start, path.end(), starts[r], ends[r]));
        }
    }
    if !paths_vertex_disjoint(paths) {
        problems.push(format!("image tuple at {target} intersects"));
    }
    problems
}

/// Balanced identity triples at `s`: those that no swap can produce.
///
/// With `l_h = D_h(pi_1, pi_2)` and `l_d = D_d(pi_2, pi_3)`, a triple is
/// balanced when neither `(i, j + l_h, k - l_h)` (for finite `l_h`) nor
/// `(i + l_d, j, k)` (for finite `l_d`) lies in `S(lambda)`. An infinite
/// `l_h` alone does not make a triple balanced: it can still be the image of
/// a diagonal swap.
pub fn balanced_triples(lambda: &Partition, mu: &Partition, s: SequenceIndex3) -> Result<usize> {
    if lambda.len() != 3 {
        return Err(Error::WrongOrder { expected: 3, got: lambda.len() });
    }
    let seq = s.to_sequence();
    seq.validate(lambda)?;
    let config = PointConfiguration::from_partitions(lambda, mu, &seq)?;
    let mut count = 0;
    for tuple in enumerate_tuples(&config, &Permutation::identity(3)) {
        if is_balanced(lambda, s, &tuple.paths)? {
            count += 1;
        }
    }
    Ok(count)
}

pub fn is_balanced(lambda: &Partition, s: SequenceIndex3, paths: &[LatticePath]) -> Result<bool> {
    let undo_horizontal = match horizontal_distance(&paths[0], &paths[1])? {
        Distance::Finite(l) => Some(SequenceIndex3::new(s.i, s.j + l as i64, s.k - l as i64)),
        Distance::Infinite => None,
    };
    let undo_diagonal = match diagonal_distance(&paths[1], &paths[2])? {
        Distance::Finite(l) => Some(SequenceIndex3::new(s.i + l as i64, s.j, s.k)),
        Distance::Infinite => None,
    };
    let valid = |t: Option<SequenceIndex3>| t.is_some_and(|t| t.is_valid_for(lambda));
    Ok(!valid(undo_horizontal) && !valid(undo_diagonal))
}

/// `sum over s in S(lambda)` of [`balanced_triples`].
pub fn balanced_total(lambda: &Partition, mu: &Partition) -> Result<usize> {
    enumerate_triangular_sequences(lambda)
        .map(|s| balanced_triples(lambda, mu, s.as_index3().ok_or(Error::WrongOrder { expected: 3, got: lambda.len() })?))
        .sum()
}
