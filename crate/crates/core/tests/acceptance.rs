//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the lines always reach the log.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use binodet::combinatorics::{enumerate_triangular_sequences, partitions_in_box, TriangularSequence};
use binodet::determinant::{
    build_matrix_closed_form, build_matrix_path_counts, coefficient, coefficient_total, determinant, sequence_determinant,
};
use binodet::lattice::{path_count, LatticePoint, PointConfiguration};
use binodet::oracle::{count_for_permutation, enumerate_tuples, signed_count, Permutation};
use binodet::scanner::{run_scan, ScanJob, ScanMode};
use binodet::surgery::{balanced_total, p2_pairs, verify_injection};
use binodet::Partition;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `mu ⊆ lambda ⊆ bound`, lambda-major.
fn contained_pairs(bound: &str) -> Vec<(Partition, Partition)> {
    partitions_in_box(&part(bound))
        .into_iter()
        .flat_map(|l| partitions_in_box(&l).into_iter().map(move |m| (l.clone(), m)))
        .collect()
}

/// Every `(lambda, mu)` with both inside `bound`.
fn all_pairs(bound: &str) -> Vec<(Partition, Partition)> {
    let box_ = partitions_in_box(&part(bound));
    box_.iter().flat_map(|l| box_.iter().map(move |m| (l.clone(), m.clone()))).collect()
}

fn triples(pairs: &[(Partition, Partition)]) -> Vec<(Partition, Partition, TriangularSequence)> {
    pairs
        .iter()
        .flat_map(|(l, m)| enumerate_triangular_sequences(l).map(move |s| (l.clone(), m.clone(), s)))
        .collect()
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_binodet"))
        .args(["compute", "--lambda", "3,3,3", "--mu", "2,2,1", "--f", "2", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), || format!("exit status {:?}", out.status.code()))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["total"] == "12", || format!("total {}", v["total"]))?;
    let terms = v["terms"].as_array().ok_or("no terms")?;
    // entries are a11, a21, a22 = k, i, j
    let got: Vec<((i64, i64, i64), String)> = terms
        .iter()
        .map(|t| {
            let s: Vec<i64> = serde_json::from_value(t["s"].clone()).unwrap();
            ((s[1], s[2], s[0]), t["det"].as_str().unwrap().to_string())
        })
        .collect();
    let want = [((0, 2, 0), "0"), ((0, 1, 1), "3"), ((1, 1, 1), "6"), ((0, 0, 2), "3"), ((1, 0, 2), "3"), ((2, 0, 2), "-3")];
    let want: Vec<((i64, i64, i64), String)> = want.iter().map(|(s, d)| (*s, d.to_string())).collect();
    ensure(got == want, || format!("terms {got:?}"))?;
    ensure(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    Ok(format!("c = 12 from 0+3+6+3+3-3 in {} ms", elapsed.as_millis()))
}

fn random_point(rng: &mut StdRng) -> LatticePoint {
    LatticePoint::new(rng.random_range(-3..=8), rng.random_range(-3..=8))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0usize;
    for bound in ["4", "4,4", "4,4,4"] {
        let t = triples(&all_pairs(bound));
        let bad: Vec<String> = t
            .par_iter()
            .filter_map(|(l, m, s)| {
                let config = PointConfiguration::from_partitions(l, m, s).unwrap();
                let det = determinant(&build_matrix_closed_form(l, m, s).unwrap());
                let signed = signed_count(&config);
                (det != signed).then(|| format!("lambda={l} mu={m} s={s}: det {det} signed {signed}"))
            })
            .collect();
        ensure(bad.is_empty(), || format!("{} mismatches, first {}", bad.len(), bad[0]))?;
        checked += t.len();
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut brute = 0usize;
    for n in 0..200 {
        let p = rng.random_range(1..=3);
        let starts: Vec<LatticePoint> = (0..p).map(|_| random_point(&mut rng)).collect();
        let ends: Vec<LatticePoint> = (0..p).map(|_| random_point(&mut rng)).collect();
        let config = PointConfiguration::new(starts, ends);
        let det = determinant(&build_matrix_path_counts(&config));
        let signed = signed_count(&config);
        ensure(det == signed, || format!("random config #{n} {config:?}: det {det} signed {signed}"))?;
        // explicit tuple enumeration where it stays small
        let small = config.starts.iter().all(|a| config.ends.iter().all(|b| path_count(*a, *b) <= BigUint::from(400u32)));
        if small {
            let by_tuples: i64 = Permutation::all(p)
                .iter()
                .map(|w| w.sign() as i64 * enumerate_tuples(&config, w).len() as i64)
                .sum();
            ensure(BigInt::from(by_tuples) == det, || format!("random config #{n}: enumerated {by_tuples} det {det}"))?;
            brute += 1;
        }
    }
    Ok(format!("{checked} (lambda, mu, s) triples and 200 random configurations ({brute} also by explicit enumeration)"))
}

fn matrix_cross_validation() -> Outcome {
    let mut checked = 0usize;
    for bound in ["6", "6,6", "6,6,6", "6,6,6,6"] {
        let lambdas = partitions_in_box(&part(bound));
        let mus = lambdas.clone();
        let mismatches: usize = lambdas
            .par_iter()
            .map(|l| {
                let mut bad = 0usize;
                for s in enumerate_triangular_sequences(l) {
                    for m in &mus {
                        let config = PointConfiguration::from_partitions(l, m, &s).unwrap();
                        if build_matrix_closed_form(l, m, &s).unwrap() != build_matrix_path_counts(&config) {
                            bad += 1;
                        }
                    }
                }
                bad
            })
            .sum();
        let count: usize = lambdas.iter().map(|l| enumerate_triangular_sequences(l).count()).sum::<usize>() * mus.len();
        ensure(mismatches == 0, || format!("bound {bound}: {mismatches} of {count} matrices differ"))?;
        checked += count;
    }
    Ok(format!("{checked} (lambda, mu, s) triples, every entry equal"))
}

fn positivity_sweep() -> Outcome {
    let mut parts = Vec::new();
    for bound in ["5,5", "4,4,4"] {
        let job = ScanJob::new(part(bound), ScanMode::Coefficients);
        let summary = run_scan(&job, None, |_, _| Ok(())).map_err(|e| e.to_string())?;
        ensure(summary.violations == 0, || format!("bound {bound}: {summary}"))?;
        let min = summary.min_coefficient.clone().ok_or("no pairs")?;
        ensure(min.is_positive(), || format!("bound {bound}: {summary}"))?;
        parts.push(format!("{bound}: {} pairs, min c = {min}", summary.pairs));
    }
    Ok(parts.join("; "))
}

fn partial_sums() -> Outcome {
    let pairs = contained_pairs("4,4,4");
    let mut partials = 0usize;
    for (l, m) in &pairs {
        let r = coefficient(l, m).map_err(|e| e.to_string())?;
        for (f, v) in &r.per_f {
            ensure(!v.is_negative(), || format!("lambda={l} mu={m}: c(f={f}) = {v}"))?;
        }
        ensure(r.per_f[&0].is_positive(), || format!("lambda={l} mu={m}: c(f=0) = {}", r.per_f[&0]))?;
        let total: BigInt = r.per_f.values().sum();
        ensure(total == r.total, || format!("lambda={l} mu={m}: partial sums add to {total}, c = {}", r.total))?;
        partials += r.per_f.len();
    }
    Ok(format!("{} pairs, {partials} partial sums, all >= 0, every f = 0 sum > 0", pairs.len()))
}

fn p2_formula() -> Outcome {
    let pairs = contained_pairs("5,5");
    let mut dets = 0usize;
    for (l, m) in &pairs {
        let mut sum = BigInt::zero();
        for i in 0..=l.part(2) {
            let s = TriangularSequence::new(l, vec![i]).unwrap();
            let det = sequence_determinant(l, m, &s).map_err(|e| e.to_string())?;
            let count = BigInt::from(p2_pairs(l, m, i).map_err(|e| e.to_string())?);
            ensure(det == count, || format!("lambda={l} mu={m} i={i}: det {det} #Pi {count}"))?;
            ensure(!det.is_negative(), || format!("lambda={l} mu={m} i={i}: det {det}"))?;
            sum += count;
            dets += 1;
        }
        let c = coefficient_total(l, m).map_err(|e| e.to_string())?;
        ensure(sum == c, || format!("lambda={l} mu={m}: sum #Pi {sum} c {c}"))?;
    }
    Ok(format!("{} pairs, {dets} determinants equal to #Pi(i)", pairs.len()))
}

fn balanced_formula() -> Outcome {
    let pairs = contained_pairs("4,4,4");
    let bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|(l, m)| {
            let b = BigInt::from(balanced_total(l, m).unwrap());
            let c = coefficient_total(l, m).unwrap();
            (b != c).then(|| format!("lambda={l} mu={m}: balanced {b} c {c}"))
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} of {} pairs differ, first {}", bad.len(), pairs.len(), bad[0]))?;
    Ok(format!("{} pairs, balanced count = c in each", pairs.len()))
}

fn injection() -> Outcome {
    let pairs = contained_pairs("4,4,4");
    let reports: Vec<_> = pairs
        .par_iter()
        .flat_map_iter(|(l, m)| (0..=l.part(2) + l.part(3)).map(move |f| verify_injection(l, m, f).unwrap()))
        .collect();
    let (mut neg, mut h, mut d) = (0, 0, 0);
    for r in &reports {
        ensure(r.is_ok(), || format!("f={}: {}", r.f, r.violations.join("; ")))?;
        neg += r.negative;
        h += r.horizontal;
        d += r.diagonal;
    }
    ensure(neg > 0 && neg == h + d, || format!("{neg} negative tuples, {h} horizontal + {d} diagonal swaps"))?;
    Ok(format!("{} (lambda, mu, f): {neg} negative tuples mapped ({h} horizontal, {d} diagonal), injective", reports.len()))
}

fn excluded_permutations() -> Outcome {
    let excluded: Vec<Permutation> =
        ["(13)", "(123)", "(132)"].iter().map(|n| Permutation::all(3).into_iter().find(|w| w.to_string() == *n).unwrap()).collect();
    let t = triples(&contained_pairs("4,4,4"));
    let found: Vec<String> = t
        .par_iter()
        .flat_map_iter(|(l, m, s)| {
            let config = PointConfiguration::from_partitions(l, m, s).unwrap();
            excluded
                .iter()
                .filter(|w| !count_for_permutation(&config, w).is_zero())
                .map(|w| format!("lambda={l} mu={m} s={s} w={w}"))
                .collect::<Vec<_>>()
        })
        .collect();
    ensure(found.is_empty(), || format!("{} tuples found, first {}", found.len(), found[0]))?;
    Ok(format!("{} configurations, no tuple for (13), (123), (132)", t.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked example", worked_example),
        ("oracle equivalence", oracle_equivalence),
        ("matrix cross-validation", matrix_cross_validation),
        ("positivity sweep", positivity_sweep),
        ("partial-sum nonnegativity", partial_sums),
        ("p = 2 positive formula", p2_formula),
        ("balanced-triple formula", balanced_formula),
        ("injection verification", injection),
        ("negative-permutation exclusion", excluded_permutations),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} ({secs:.1} s): {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name} ({secs:.1} s): {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
