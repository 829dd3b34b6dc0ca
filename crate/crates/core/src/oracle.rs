//! Brute-force ground truth for determinants: signed enumeration of
//! vertex-disjoint path tuples over all permutations of the start points.
//!
//! Two independent routes are provided. [`enumerate_tuples`] materialises
//! every tuple by depth-first search and is meant for small configurations;
//! [`count_nonintersecting`] counts tuples with a transfer matrix along the
//! antidiagonals `x - y = const` and stays fast for larger boxes.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticePath, LatticePoint, PointConfiguration, Step};

/// A permutation of `0..p`; `w[i]` is the start feeding the path that ends at `B_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v >= images.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Usage(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(p: usize) -> Self {
        Permutation((0..p).collect())
    }

    /// Transposition of the 1-based points `a` and `b`.
    pub fn transposition(p: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..p).collect();
        v.swap(a - 1, b - 1);
        Permutation(v)
    }

    /// All permutations of `0..p` in lexicographic order.
    pub fn all(p: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..p).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..p.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..p).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inversions(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// `(-1)^{l(w)}`.
    pub fn sign(&self) -> i32 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, e.g. `(12)`, `(123)`; `id` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let mut seen = vec![false; self.0.len()];
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            f.write_str("(")?;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                write!(f, "{}", cur + 1)?;
                cur = self.0[cur];
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A vertex-disjoint tuple `pi_i : A_{w(i)} -> B_i` with sign `eps(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedTuple {
    pub permutation: Permutation,
    pub paths: Vec<LatticePath>,
    pub sign: i32,
}

impl SignedTuple {
    pub fn is_vertex_disjoint(&self) -> bool {
        paths_vertex_disjoint(&self.paths)
    }
}

pub fn paths_vertex_disjoint(paths: &[LatticePath]) -> bool {
    let mut seen = HashSet::new();
    paths.iter().flat_map(|p| p.points()).all(|q| seen.insert(q))
}

/// Every vertex-disjoint tuple for the permutation `w`, ordered
/// lexicographically by the concatenated step words.
pub fn enumerate_tuples(config: &PointConfiguration, w: &Permutation) -> Vec<SignedTuple> {
    let p = config.order();
    assert_eq!(w.len(), p, "permutation order must match the configuration");
    let starts: Vec<LatticePoint> = w.images().iter().map(|&i| config.starts[i]).collect();
    if starts.iter().zip(&config.ends).any(|(a, b)| !a.reaches(b)) {
        return Vec::new();
    }
    let mut search = TupleSearch {
        starts: &starts,
        ends: &config.ends,
        occupied: HashSet::new(),
        done: Vec::new(),
        out: Vec::new(),
    };
    search.next_path(0);
    let sign = w.sign();
    search
        .out
        .into_iter()
        .map(|paths| SignedTuple { permutation: w.clone(), paths, sign })
        .collect()
}

struct TupleSearch<'a> {
    starts: &'a [LatticePoint],
    ends: &'a [LatticePoint],
    occupied: HashSet<LatticePoint>,
    done: Vec<LatticePath>,
    out: Vec<Vec<LatticePath>>,
}

impl TupleSearch<'_> {
    fn next_path(&mut self, idx: usize) {
        if idx == self.starts.len() {
            self.out.push(self.done.clone());
            return;
        }
        let a = self.starts[idx];
        let b = self.ends[idx];
        if self.occupied.contains(&a) || self.occupied.contains(&b) {
            return;
        }
        self.occupied.insert(a);
        let mut steps = Vec::new();
        self.extend(idx, a, b, &mut steps);
        self.occupied.remove(&a);
    }

    fn extend(&mut self, idx: usize, cur: LatticePoint, b: LatticePoint, steps: &mut Vec<Step>) {
        if cur == b {
            self.done.push(LatticePath::new(self.starts[idx], steps.clone()));
            self.next_path(idx + 1);
            self.done.pop();
            return;
        }
        for step in [Step::East, Step::South] {
            let next = cur + step.offset();
            if !next.reaches(&b) || self.occupied.contains(&next) {
                continue;
            }
            self.occupied.insert(next);
            steps.push(step);
            self.extend(idx, next, b, steps);
            steps.pop();
            self.occupied.remove(&next);
        }
    }
}

/// Number of vertex-disjoint tuples `pi_i : starts[i] -> ends[i]`.
///
/// Each step raises `x - y` by one, so a path meets every antidiagonal between
/// its endpoints exactly once. The state on an antidiagonal is the
/// `x`-coordinate of each live path; disjointness is distinctness of those
/// coordinates on every antidiagonal.
pub fn count_nonintersecting(starts: &[LatticePoint], ends: &[LatticePoint]) -> BigUint {
    let p = starts.len();
    assert_eq!(p, ends.len());
    if p == 0 {
        return BigUint::one();
    }
    if starts.iter().zip(ends).any(|(a, b)| !a.reaches(b)) {
        return BigUint::zero();
    }
    let first: Vec<i64> = starts.iter().map(|a| a.antidiagonal()).collect();
    let last: Vec<i64> = ends.iter().map(|b| b.antidiagonal()).collect();
    let lo = *first.iter().min().expect("nonempty");
    let hi = *last.iter().max().expect("nonempty");

    // None = path not started or already finished
    type State = Vec<Option<i64>>;
    let enter = |state: &mut State, d: i64| {
        for i in 0..p {
            if first[i] == d {
                state[i] = Some(starts[i].x);
            }
        }
    };
    let distinct = |state: &State| {
        let mut xs: Vec<i64> = state.iter().flatten().copied().collect();
        xs.sort_unstable();
        xs.windows(2).all(|w| w[0] != w[1])
    };

    let mut init: State = vec![None; p];
    enter(&mut init, lo);
    if !distinct(&init) {
        return BigUint::zero();
    }
    let mut layer: HashMap<State, BigUint> = HashMap::from([(init, BigUint::one())]);
    for d in lo..hi {
        let mut next_layer: HashMap<State, BigUint> = HashMap::new();
        for (state, count) in layer {
            // paths ending on this antidiagonal retire; the rest take a step
            let movers: Vec<usize> = (0..p).filter(|&i| state[i].is_some() && last[i] > d).collect();
            for mask in 0..(1u32 << movers.len()) {
                let mut next: State = state.clone();
                for i in 0..p {
                    if last[i] == d {
                        next[i] = None;
                    }
                }
                let mut ok = true;
                for (bit, &i) in movers.iter().enumerate() {
                    let x = state[i].expect("live") + i64::from((mask >> bit) & 1);
                    // remaining steps after moving to antidiagonal d + 1
                    let remaining = last[i] - (d + 1);
                    let dx = ends[i].x - x;
                    if dx < 0 || dx > remaining {
                        ok = false;
                        break;
                    }
                    next[i] = Some(x);
                }
                if !ok {
                    continue;
                }
                enter(&mut next, d + 1);
                if distinct(&next) {
                    *next_layer.entry(next).or_insert_with(BigUint::zero) += &count;
                }
            }
        }
        layer = next_layer;
    }
    layer.values().sum()
}

/// Number of vertex-disjoint tuples for one permutation, via the transfer matrix.
pub fn count_for_permutation(config: &PointConfiguration, w: &Permutation) -> BigUint {
    let starts: Vec<LatticePoint> = w.images().iter().map(|&i| config.starts[i]).collect();
    count_nonintersecting(&starts, &config.ends)
}

/// `sum_w eps(w) * #(vertex-disjoint tuples for w)`.
pub fn signed_count(config: &PointConfiguration) -> BigInt {
    Permutation::all(config.order())
        .iter()
        .map(|w| {
            let n = BigInt::from(count_for_permutation(config, w));
            if w.sign() < 0 {
                -n
            } else {
                n
            }
        })
        .sum()
}

/// All tuples with sign `-1`, grouped in permutation order. `p = 3` only.
pub fn negative_tuples(config: &PointConfiguration) -> Result<Vec<SignedTuple>> {
    if config.order() != 3 {
        return Err(Error::WrongOrder { expected: 3, got: config.order() });
    }
    Ok(Permutation::all(3)
        .iter()
        .filter(|w| w.sign() < 0)
        .flat_map(|w| enumerate_tuples(config, w))
        .collect())
}
