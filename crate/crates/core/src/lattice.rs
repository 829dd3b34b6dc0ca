//! Lattice points, monotone East/South paths, path counting and the two
//! path distances used by the swaps.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Partition, TriangularSequence};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    /// `y - x`; every step of a monotone path lowers it by one.
    pub fn diagonal(&self) -> i64 {
        self.y - self.x
    }

    /// `x - y`; every step raises it by one.
    pub fn antidiagonal(&self) -> i64 {
        self.x - self.y
    }

    /// `other` can be reached by East/South steps.
    pub fn reaches(&self, other: &LatticePoint) -> bool {
        other.x >= self.x && other.y <= self.y
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint::new(x, y)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    /// `x + 1`
    East,
    /// `y - 1`
    South,
}

impl Step {
    pub fn offset(self) -> LatticePoint {
        match self {
            Step::East => LatticePoint::new(1, 0),
            Step::South => LatticePoint::new(0, -1),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::East => 'E',
            Step::South => 'S',
        }
    }
}

/// A monotone lattice path: a start point and a word over `{E, S}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePath {
    pub start: LatticePoint,
    pub steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(start: LatticePoint, steps: Vec<Step>) -> Self {
        LatticePath { start, steps }
    }

    pub fn point(start: LatticePoint) -> Self {
        LatticePath { start, steps: Vec::new() }
    }

    /// Parses a step word such as `"EESE"`.
    pub fn from_word(start: LatticePoint, word: &str) -> Result<Self> {
        let steps = word
            .chars()
            .map(|c| match c {
                'E' | 'e' => Ok(Step::East),
                'S' | 's' => Ok(Step::South),
                _ => Err(Error::Parse(word.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticePath { start, steps })
    }

    pub fn word(&self) -> String {
        self.steps.iter().map(|s| s.as_char()).collect()
    }

    pub fn end(&self) -> LatticePoint {
        let east = self.steps.iter().filter(|s| **s == Step::East).count() as i64;
        let south = self.steps.len() as i64 - east;
        LatticePoint::new(self.start.x + east, self.start.y - south)
    }

    /// Visited vertices, start and end included.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        let mut cur = self.start;
        std::iter::once(self.start).chain(self.steps.iter().map(move |s| {
            cur = cur + s.offset();
            cur
        }))
    }

    pub fn vertex_set(&self) -> HashSet<LatticePoint> {
        self.points().collect()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.points().any(|q| q == p)
    }

    pub fn intersects(&self, other: &LatticePath) -> bool {
        let mine = self.vertex_set();
        other.points().any(|q| mine.contains(&q))
    }

    /// Number of steps before the path first visits `p`.
    pub fn position_of(&self, p: LatticePoint) -> Option<usize> {
        self.points().position(|q| q == p)
    }

    /// The subpath from vertex index `at` to the end.
    pub fn suffix_from(&self, at: usize) -> LatticePath {
        let start = self.points().nth(at).expect("index within path");
        LatticePath { start, steps: self.steps[at..].to_vec() }
    }

    /// The subpath from the start up to vertex index `at`.
    pub fn prefix_to(&self, at: usize) -> LatticePath {
        LatticePath { start: self.start, steps: self.steps[..at].to_vec() }
    }

    pub fn translated(&self, by: LatticePoint) -> LatticePath {
        LatticePath { start: self.start + by, steps: self.steps.clone() }
    }

    /// Appends `tail`, which must start where `self` ends.
    pub fn concat(&self, tail: &LatticePath) -> LatticePath {
        assert_eq!(self.end(), tail.start, "paths do not join");
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&tail.steps);
        LatticePath { start: self.start, steps }
    }

    /// Westmost vertex of the path on the row `y`: the vertex at which the
    /// path reaches that row.
    pub fn row_entry(&self, y: i64) -> Option<(usize, LatticePoint)> {
        self.points().enumerate().find(|(_, q)| q.y == y)
    }

    /// The unique vertex on the slope-1 line `y - x = c`, if any.
    pub fn diagonal_hit(&self, c: i64) -> Option<(usize, LatticePoint)> {
        self.points().enumerate().find(|(_, q)| q.diagonal() == c)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.word())
    }
}

/// Distance between paths; `Infinite` when the defining line misses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u64> {
        match self {
            Distance::Finite(l) => Some(l),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(l) => write!(f, "{l}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Start points `A_1..A_p` and end points `B_1..B_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointConfiguration {
    pub starts: Vec<LatticePoint>,
    pub ends: Vec<LatticePoint>,
    pub source: Option<ConfigSource>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConfigSource {
    pub lambda: Partition,
    pub mu: Partition,
    pub sequence: TriangularSequence,
}

impl PointConfiguration {
    pub fn new(starts: Vec<LatticePoint>, ends: Vec<LatticePoint>) -> Self {
        assert_eq!(starts.len(), ends.len(), "configuration needs as many starts as ends");
        PointConfiguration { starts, ends, source: None }
    }

    /// The configuration `(A_j(s), B_j)` attached to `(lambda, mu, s)`.
    pub fn from_partitions(lambda: &Partition, mu: &Partition, s: &TriangularSequence) -> Result<Self> {
        if lambda.len() != mu.len() {
            return Err(Error::LengthMismatch { lambda: lambda.len(), mu: mu.len() });
        }
        let starts = start_points(lambda, s)?;
        let ends = end_points(mu, mu.len())?;
        Ok(PointConfiguration {
            starts,
            ends,
            source: Some(ConfigSource { lambda: lambda.clone(), mu: mu.clone(), sequence: s.clone() }),
        })
    }

    pub fn order(&self) -> usize {
        self.starts.len()
    }
}

/// `B_j = (mu_j + p - j + 1, mu_j + p - j + 1)`.
pub fn end_points(mu: &Partition, p: usize) -> Result<Vec<LatticePoint>> {
    if mu.len() != p {
        return Err(Error::OrderMismatch { expected: p, got: mu.len() });
    }
    Ok((1..=p)
        .map(|j| {
            let c = mu.part(j) + (p - j) as i64 + 1;
            LatticePoint::new(c, c)
        })
        .collect())
}

/// `A_j(s) = (p - j + 1 + a_jj - R_j, lambda_j + p - j + 1 - R_j)` for `j < p`,
/// and `x_{A_p} = 1 + sum_t (C_t - a_tt)`, `y_{A_p} = lambda_p + x_{A_p}`.
pub fn start_points(lambda: &Partition, s: &TriangularSequence) -> Result<Vec<LatticePoint>> {
    s.validate(lambda)?;
    let p = lambda.len();
    let mut pts = Vec::with_capacity(p);
    for j in 1..p {
        let r = s.row_sum(j)?;
        let offset = (p - j) as i64 + 1;
        pts.push(LatticePoint::new(offset + s.get(j, j) - r, lambda.part(j) + offset - r));
    }
    let mut x = 1;
    for t in 1..p {
        x += s.col_sum(t)? - s.get(t, t);
    }
    pts.push(LatticePoint::new(x, lambda.part(p) + x));
    debug_assert!(satisfies_start_lemma(&pts), "start points {pts:?} break the configuration lemma");
    Ok(pts)
}

/// `A_1` strictly NE of `A_p`, and strictly N of every `A_l`, `1 < l < p`.
pub fn satisfies_start_lemma(starts: &[LatticePoint]) -> bool {
    let p = starts.len();
    if p < 2 {
        return true;
    }
    let a1 = starts[0];
    let ap = starts[p - 1];
    a1.x > ap.x && a1.y > ap.y && starts[1..p - 1].iter().all(|a| a1.y > a.y)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc *= (n - t) as u64;
        acc /= (t + 1) as u64;
    }
    acc
}

/// Number of monotone East/South paths from `a` to `b`.
pub fn path_count(a: LatticePoint, b: LatticePoint) -> BigUint {
    if !a.reaches(&b) {
        return BigUint::zero();
    }
    let dx = b.x - a.x;
    let dy = a.y - b.y;
    binomial(dx + dy, dx)
}

/// All monotone paths from `a` to `b`, lexicographic in the step word (E < S).
pub fn all_paths(a: LatticePoint, b: LatticePoint) -> Vec<LatticePath> {
    let mut out = Vec::new();
    if !a.reaches(&b) {
        return out;
    }
    let mut steps = Vec::new();
    walk(a, b, &mut steps, &mut |s| out.push(LatticePath::new(a, s.to_vec())));
    out
}

fn walk(cur: LatticePoint, b: LatticePoint, steps: &mut Vec<Step>, emit: &mut dyn FnMut(&[Step])) {
    if cur == b {
        emit(steps);
        return;
    }
    for step in [Step::East, Step::South] {
        let next = cur + step.offset();
        if next.reaches(&b) {
            steps.push(step);
            walk(next, b, steps, emit);
            steps.pop();
        }
    }
}

/// Horizontal distance `D_h(pi, pi')`, defined when `pi` starts strictly
/// north of `pi'`.
///
/// The horizontal line through the start `A'` of `pi'` meets `pi` in a run
/// of vertices on that row; the contact point `C` is the vertex where `pi`
/// reaches the row (its westmost vertex there). Returns `|A'C|`.
pub fn horizontal_distance(pi: &LatticePath, pi_prime: &LatticePath) -> Result<Distance> {
    Ok(horizontal_contact(pi, pi_prime)?.map_or(Distance::Infinite, |c| Distance::Finite(c.length)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contact {
    /// Vertex index of the contact point on the path that was hit.
    pub index: usize,
    pub point: LatticePoint,
    pub length: u64,
}

pub fn horizontal_contact(pi: &LatticePath, pi_prime: &LatticePath) -> Result<Option<Contact>> {
    let a = pi.start;
    let a_prime = pi_prime.start;
    if a.y <= a_prime.y {
        return Err(Error::NotStrictlyNorth(a.y, a_prime.y));
    }
    Ok(pi.row_entry(a_prime.y).map(|(index, point)| Contact {
        index,
        point,
        length: (point.x - a_prime.x).unsigned_abs(),
    }))
}

/// Which slope-1 line realised the diagonal distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalContact {
    /// The line through the start of `pi` meets `pi'`.
    OnPrime(Contact),
    /// The line through the start of `pi'` meets `pi`.
    OnPi(Contact),
}

impl DiagonalContact {
    pub fn length(&self) -> u64 {
        match self {
            DiagonalContact::OnPrime(c) | DiagonalContact::OnPi(c) => c.length,
        }
    }
}

/// Diagonal distance `D_d(pi, pi')`.
///
/// A monotone path crosses each line `y - x = c` at most once, so each of the
/// two slope-1 lines meets the other path in at most one vertex. Both lines
/// meet only when they coincide, and then the two segments have the same
/// length; a mismatch is reported as [`Error::AmbiguousDistance`].
pub fn diagonal_distance(pi: &LatticePath, pi_prime: &LatticePath) -> Result<Distance> {
    Ok(diagonal_contact(pi, pi_prime)?.map_or(Distance::Infinite, |c| Distance::Finite(c.length())))
}

pub fn diagonal_contact(pi: &LatticePath, pi_prime: &LatticePath) -> Result<Option<DiagonalContact>> {
    let a = pi.start;
    let a_prime = pi_prime.start;
    let through_a = pi_prime.diagonal_hit(a.diagonal()).map(|(index, point)| Contact {
        index,
        point,
        length: (point.x - a.x).unsigned_abs(),
    });
    let through_a_prime = pi.diagonal_hit(a_prime.diagonal()).map(|(index, point)| Contact {
        index,
        point,
        length: (point.x - a_prime.x).unsigned_abs(),
    });
    match (through_a, through_a_prime) {
        (Some(c), Some(c2)) if c.length != c2.length => Err(Error::AmbiguousDistance(c.length, c2.length)),
        (Some(c), _) => Ok(Some(DiagonalContact::OnPrime(c))),
        (None, Some(c)) => Ok(Some(DiagonalContact::OnPi(c))),
        (None, None) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_triangular_sequences, partitions_in_box, SequenceIndex3};

    fn pt(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn lambda333() -> Partition {
        "3,3,3".parse().unwrap()
    }

    #[test]
    fn end_points_examples() {
        let mu: Partition = "2,2,1".parse().unwrap();
        assert_eq!(end_points(&mu, 3).unwrap(), vec![pt(5, 5), pt(4, 4), pt(2, 2)]);
        assert_eq!(end_points(&"0,0".parse().unwrap(), 2).unwrap(), vec![pt(2, 2), pt(1, 1)]);
        assert_eq!(end_points(&"0".parse().unwrap(), 1).unwrap(), vec![pt(1, 1)]);
        assert!(end_points(&mu, 2).is_err());
    }

    #[test]
    fn end_points_strictly_ne_to_sw() {
        for mu in partitions_in_box(&"4,4,4,4".parse().unwrap()) {
            let b = end_points(&mu, 4).unwrap();
            assert!(b.windows(2).all(|w| w[0].x > w[1].x && w[0].y > w[1].y));
        }
    }

    #[test]
    fn start_points_examples() {
        let lambda = lambda333();
        // closed forms for p = 3
        let closed = |t: SequenceIndex3| {
            let (i, j, k) = (t.i, t.j, t.k);
            vec![pt(k + 3, 3 + 3), pt(2 - i + j, 3 + 2 - i), pt(1 - k + i - j, 3 + 1 - k + i - j)]
        };
        let s = SequenceIndex3::new(0, 2, 0);
        let a = start_points(&lambda, &s.to_sequence()).unwrap();
        assert_eq!(a, vec![pt(3, 6), pt(4, 5), pt(-1, 2)]);
        assert_eq!(a, closed(s));

        let s = SequenceIndex3::new(0, 0, 0);
        let a = start_points(&lambda, &s.to_sequence()).unwrap();
        assert_eq!(a, vec![pt(3, 6), pt(2, 5), pt(1, 4)]);

        for s in enumerate_triangular_sequences(&lambda) {
            let t = s.as_index3().unwrap();
            assert_eq!(start_points(&lambda, &s).unwrap(), closed(t));
        }

        let five: Partition = "5".parse().unwrap();
        assert_eq!(start_points(&five, &TriangularSequence::empty(1)).unwrap(), vec![pt(1, 6)]);

        let bad = TriangularSequence::from_entries(3, vec![0, 1, 0]).unwrap();
        assert!(start_points(&lambda, &bad).is_err());
    }

    #[test]
    fn start_lemma_holds_up_to_p5() {
        for bound in ["6,6", "5,5,5", "4,4,4,4", "3,3,3,3,3"] {
            for lambda in partitions_in_box(&bound.parse().unwrap()) {
                for s in enumerate_triangular_sequences(&lambda) {
                    let a = start_points(&lambda, &s).unwrap();
                    assert!(satisfies_start_lemma(&a), "lambda={lambda} s={s} a={a:?}");
                }
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 2), BigUint::from(3u32));
        assert_eq!(binomial(1, -1), BigUint::zero());
        assert_eq!(binomial(-1, 0), BigUint::zero());
        assert_eq!(binomial(2, 3), BigUint::zero());
        // Pascal triangle oracle
        let mut row = vec![BigUint::one()];
        for _ in 0..30 {
            let mut next = vec![BigUint::one()];
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigUint::one());
            row = next;
        }
        assert_eq!(row[15], BigUint::from(155_117_520u32));
        assert_eq!(binomial(30, 15), row[15]);
    }

    #[test]
    fn binomial_pascal_and_symmetry() {
        for n in 1..=40 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n, n - k));
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn path_count_matches_enumeration() {
        assert_eq!(path_count(pt(3, 6), pt(5, 5)), BigUint::from(3u32));
        assert_eq!(all_paths(pt(3, 6), pt(5, 5)).len(), 3);
        assert_eq!(path_count(pt(2, 2), pt(2, 2)), BigUint::one());
        assert_eq!(path_count(pt(2, 2), pt(1, 1)), BigUint::zero());
        for dx in -2..=8 {
            for dy in -2..=8 {
                let a = pt(1, 2);
                let b = pt(1 + dx, 2 - dy);
                let paths = all_paths(a, b);
                assert_eq!(path_count(a, b), BigUint::from(paths.len()));
                assert!(paths.iter().all(|p| p.end() == b && p.start == a));
                assert!(paths.windows(2).all(|w| w[0].word() < w[1].word()));
            }
        }
    }

    #[test]
    fn path_basics() {
        let p = LatticePath::from_word(pt(0, 3), "ESSE").unwrap();
        assert_eq!(p.end(), pt(2, 1));
        assert_eq!(p.points().collect::<Vec<_>>(), vec![pt(0, 3), pt(1, 3), pt(1, 2), pt(1, 1), pt(2, 1)]);
        assert_eq!(p.suffix_from(2), LatticePath::from_word(pt(1, 2), "SE").unwrap());
        assert_eq!(p.prefix_to(2).concat(&p.suffix_from(2)), p);
        assert_eq!(p.row_entry(1), Some((3, pt(1, 1))));
        assert_eq!(p.diagonal_hit(0), Some((3, pt(1, 1))));
        assert!(LatticePath::from_word(pt(0, 0), "EX").is_err());
    }

    #[test]
    fn horizontal_distance_examples() {
        // (0,2,0) negative pair: pi_1: A_1=(3,6) -> B_2=(4,4), pi_2: A_2=(4,5) -> B_1=(5,5)
        let pi1 = LatticePath::from_word(pt(3, 6), "SSE").unwrap();
        let pi2 = LatticePath::from_word(pt(4, 5), "E").unwrap();
        assert_eq!(horizontal_distance(&pi1, &pi2).unwrap(), Distance::Finite(1));

        let pi = LatticePath::from_word(pt(0, 1), "SS").unwrap();
        let other = LatticePath::point(pt(3, 0));
        assert_eq!(horizontal_distance(&pi, &other).unwrap(), Distance::Finite(3));

        let high = LatticePath::from_word(pt(0, 5), "EES").unwrap();
        assert_eq!(horizontal_distance(&high, &other).unwrap(), Distance::Infinite);

        assert!(matches!(horizontal_distance(&other, &pi), Err(Error::NotStrictlyNorth(0, 1))));
    }

    #[test]
    fn horizontal_contact_is_row_entry() {
        // pi runs along y = 0 from x = 0 to x = 2; A' = (4, 0)
        let pi = LatticePath::from_word(pt(0, 1), "SEES").unwrap();
        let a_prime = LatticePath::point(pt(4, 0));
        let c = horizontal_contact(&pi, &a_prime).unwrap().unwrap();
        assert_eq!(c.point, pt(0, 0));
        assert_eq!(c.length, 4);
    }

    #[test]
    fn diagonal_distance_examples() {
        let a = LatticePath::point(pt(0, 0));
        let b = LatticePath::point(pt(2, 2));
        assert_eq!(diagonal_distance(&a, &b).unwrap(), Distance::Finite(2));
        assert_eq!(diagonal_distance(&b, &a).unwrap(), Distance::Finite(2));

        let far = LatticePath::point(pt(0, 5));
        assert_eq!(diagonal_distance(&a, &far).unwrap(), Distance::Infinite);

        // the line y - x = 3 through (0,3) meets pi' at (2,5)
        let pi = LatticePath::point(pt(0, 3));
        let pi_prime = LatticePath::from_word(pt(2, 6), "SSS").unwrap();
        assert_eq!(diagonal_distance(&pi, &pi_prime).unwrap(), Distance::Finite(2));
    }

    #[test]
    fn diagonal_distance_finite_when_ending_on_main_diagonal() {
        let starts = [pt(-1, 2), pt(0, 5), pt(3, 6), pt(2, 2), pt(-3, 4)];
        let ends = [pt(1, 1), pt(2, 2), pt(0, 0)];
        for &a in &starts {
            for &a2 in &starts {
                for &b in &ends {
                    for &b2 in &ends {
                        for p in all_paths(a, b).iter().take(5) {
                            for q in all_paths(a2, b2).iter().take(5) {
                                assert!(diagonal_distance(p, q).unwrap().is_finite());
                            }
                        }
                    }
                }
            }
        }
    }
}
