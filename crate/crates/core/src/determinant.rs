//! The matrices `M(s)`, their determinants, and the sums `c(lambda, mu)`
//! and `c(lambda, mu; f)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::combinatorics::{enumerate_triangular_sequences, Partition, TriangularSequence};
use crate::error::{Error, Result};
use crate::lattice::{binomial, path_count, PointConfiguration};

/// Square matrix of exact integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == rows.len()), "matrix must be square");
        BinomialMatrix { rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// 1-based entry `m_{rc}`.
    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        &self.rows[r - 1][c - 1]
    }

    pub fn determinant(&self) -> BigInt {
        determinant(self)
    }
}

impl fmt::Display for BinomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

fn check_lengths(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.len() != mu.len() {
        return Err(Error::LengthMismatch { lambda: lambda.len(), mu: mu.len() });
    }
    Ok(())
}

/// `M(s)` from the binomial closed form:
/// row `r < p` holds `C(lambda_r - a_rr, mu_c + r - c + R_r - a_rr)`, and the
/// bottom row holds `C(lambda_p, mu_c + p - c + sum_t (a_tt - C_t))`.
pub fn build_matrix_closed_form(
    lambda: &Partition,
    mu: &Partition,
    s: &TriangularSequence,
) -> Result<BinomialMatrix> {
    check_lengths(lambda, mu)?;
    s.validate(lambda)?;
    let p = lambda.len();
    let mut rows = Vec::with_capacity(p);
    for r in 1..p {
        let diag = s.get(r, r);
        let rsum = s.row_sum(r)?;
        let top = lambda.part(r) - diag;
        rows.push(
            (1..=p)
                .map(|c| {
                    let bottom = mu.part(c) + r as i64 - c as i64 + rsum - diag;
                    BigInt::from(binomial(top, bottom))
                })
                .collect(),
        );
    }
    let mut shift = 0;
    for t in 1..p {
        shift += s.get(t, t) - s.col_sum(t)?;
    }
    rows.push(
        (1..=p)
            .map(|c| BigInt::from(binomial(lambda.part(p), mu.part(c) + (p - c) as i64 + shift)))
            .collect(),
    );
    Ok(BinomialMatrix { rows })
}

/// `M = (#paths(A_r -> B_c))`.
pub fn build_matrix_path_counts(config: &PointConfiguration) -> BinomialMatrix {
    let rows = config
        .starts
        .iter()
        .map(|&a| config.ends.iter().map(|&b| BigInt::from(path_count(a, b))).collect())
        .collect();
    BinomialMatrix { rows }
}

/// Exact determinant.
///
/// Orders up to 3 use cofactor expansion. Larger matrices use Bareiss
/// fraction-free elimination, first in checked `i128` and on overflow in
/// arbitrary precision.
pub fn determinant(m: &BinomialMatrix) -> BigInt {
    let n = m.order();
    if n <= 3 {
        return cofactor_small(&m.rows);
    }
    let small: Option<Vec<Vec<i128>>> =
        m.rows.iter().map(|r| r.iter().map(|v| v.to_i128()).collect()).collect();
    if let Some(mut a) = small {
        if let Some(d) = bareiss_i128(&mut a) {
            return BigInt::from(d);
        }
    }
    bareiss_big(m.rows.clone())
}

fn cofactor_small(a: &[Vec<BigInt>]) -> BigInt {
    match a.len() {
        0 => BigInt::one(),
        1 => a[0][0].clone(),
        2 => &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0],
        3 => {
            &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1])
                - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
                + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0])
        }
        _ => unreachable!("cofactor expansion is only used for order <= 3"),
    }
}

/// Bareiss elimination; `None` on overflow.
fn bareiss_i128(a: &mut [Vec<i128>]) -> Option<i128> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => a.swap(k, r),
                None => return Some(0),
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// `c(lambda, mu)` with its per-sequence breakdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub total: BigInt,
    pub per_sequence: Vec<(TriangularSequence, BigInt)>,
    /// `f -> c(lambda, mu; f)` for `0 <= f <= lambda_2 + lambda_3`; only for `p = 3`.
    pub per_f: BTreeMap<i64, BigInt>,
    pub oracle_checked: bool,
}

impl CoefficientReport {
    pub fn order(&self) -> usize {
        self.lambda.len()
    }

    /// Smallest partial sum, `p = 3` only.
    pub fn min_partial(&self) -> Option<&BigInt> {
        self.per_f.values().min()
    }

    /// Determinants whose sequence has `j + k = f` (order 3), in enumeration order.
    pub fn terms_at(&self, f: i64) -> impl Iterator<Item = &(TriangularSequence, BigInt)> {
        self.per_sequence.iter().filter(move |(s, _)| s.as_index3().is_some_and(|t| t.f() == f))
    }

    pub fn has_negative_term(&self) -> bool {
        self.per_sequence.iter().any(|(_, d)| d.is_negative())
    }
}

/// `det M(s)` for one sequence.
pub fn sequence_determinant(lambda: &Partition, mu: &Partition, s: &TriangularSequence) -> Result<BigInt> {
    Ok(determinant(&build_matrix_closed_form(lambda, mu, s)?))
}

/// `c(lambda, mu) = sum over s in S(lambda) of det M(s)`.
pub fn coefficient(lambda: &Partition, mu: &Partition) -> Result<CoefficientReport> {
    check_lengths(lambda, mu)?;
    let seqs: Vec<TriangularSequence> = enumerate_triangular_sequences(lambda).collect();
    let per_sequence = seqs
        .into_par_iter()
        .map(|s| {
            let d = sequence_determinant(lambda, mu, &s)?;
            Ok((s, d))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = per_sequence.iter().map(|(_, d)| d).sum();
    let mut per_f = BTreeMap::new();
    if lambda.len() == 3 {
        for f in 0..=lambda.part(2) + lambda.part(3) {
            per_f.insert(f, BigInt::zero());
        }
        for (s, d) in &per_sequence {
            let t = s.as_index3().expect("order 3");
            *per_f.get_mut(&t.f()).expect("f within range") += d;
        }
    }
    Ok(CoefficientReport { lambda: lambda.clone(), mu: mu.clone(), total, per_sequence, per_f, oracle_checked: false })
}

/// Total only; avoids materialising the breakdown. Used by the scanner.
pub fn coefficient_total(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    check_lengths(lambda, mu)?;
    enumerate_triangular_sequences(lambda).map(|s| sequence_determinant(lambda, mu, &s)).sum()
}

/// `c(lambda, mu; f)`: the sum of `det M(i, j, k)` over `j + k = f`, `p = 3`.
pub fn partial_sum(lambda: &Partition, mu: &Partition, f: i64) -> Result<BigInt> {
    check_lengths(lambda, mu)?;
    if lambda.len() != 3 {
        return Err(Error::WrongOrder { expected: 3, got: lambda.len() });
    }
    let max = lambda.part(2) + lambda.part(3);
    if !(0..=max).contains(&f) {
        return Err(Error::FOutOfRange { f, max });
    }
    enumerate_triangular_sequences(lambda)
        .filter(|s| s.as_index3().is_some_and(|t| t.f() == f))
        .map(|s| sequence_determinant(lambda, mu, &s))
        .sum()
}
