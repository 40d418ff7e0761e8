//! Independent reference constructions shared by the integration tests.
//!
//! None of these go through `build_t1`/`build_zgt2`: type-1 sets are built by
//! enumerating every k-subset of intervals and intersecting them directly, and
//! zSlices by taking unions of min over every j-subset of group sets.

#![allow(dead_code)]

use iaa_core::{Interval, StepFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const M1: [(f64, f64); 3] = [(2.0, 5.0), (4.0, 5.0), (3.0, 6.0)];
pub const M2: [(f64, f64); 3] = [(1.0, 4.0), (3.0, 5.0), (4.0, 6.0)];
pub const M3: [(f64, f64); 3] = [(2.0, 4.0), (4.0, 5.0), (4.0, 7.0)];
pub const T1: [(f64, f64); 3] = M1;
pub const N1: [(f64, f64); 2] = [(2.0, 5.0), (2.5, 5.5)];
pub const N2: [(f64, f64); 2] = [(6.0, 8.0), (7.0, 10.0)];
pub const SPLIT: [(f64, f64); 4] = [(2.0, 5.0), (3.0, 5.0), (6.0, 8.0), (3.0, 7.0)];

pub fn intervals(pairs: &[(f64, f64)]) -> Vec<Interval> {
    pairs.iter().map(|&(a, b)| Interval::new(a, b).unwrap()).collect()
}

/// All k-element index subsets of `0..n`, in lexical order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Union over k of level `k/n` on every k-wise intersection of the intervals.
pub fn t1_by_subsets(ivs: &[Interval]) -> StepFunction {
    let n = ivs.len();
    let mut acc = StepFunction::zero();
    for k in 1..=n {
        let level = k as f64 / n as f64;
        for subset in subsets(n, k) {
            let inter = subset
                .iter()
                .skip(1)
                .try_fold(ivs[subset[0]], |acc, &i| acc.intersect(&ivs[i]));
            if let Some(inter) = inter {
                acc = acc.pointwise_max(&StepFunction::constant_on(inter, level).unwrap());
            }
        }
    }
    acc
}

/// zSlice j = union over j-subsets of the intersection of those sets.
pub fn zslices_by_subsets(sets: &[StepFunction]) -> Vec<StepFunction> {
    let n = sets.len();
    (1..=n)
        .map(|j| {
            subsets(n, j).into_iter().fold(StepFunction::zero(), |acc, subset| {
                let inter = subset
                    .iter()
                    .skip(1)
                    .fold(sets[subset[0]].clone(), |m, &i| m.pointwise_min(&sets[i]));
                acc.pointwise_max(&inter)
            })
        })
        .collect()
}

/// Fraction of closed intervals containing `x`.
pub fn coverage(ivs: &[(f64, f64)], x: f64) -> f64 {
    ivs.iter().filter(|&&(a, b)| a <= x && x <= b).count() as f64 / ivs.len() as f64
}

/// `j`-th largest of the values (1-based).
pub fn kth_largest(values: &[f64], j: usize) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v[j - 1]
}

/// Abscissae `lo, lo + h, ...` as `i / denom` so that integers are hit exactly.
pub fn fine_grid(lo: i64, hi: i64, denom: i64) -> impl Iterator<Item = f64> {
    (lo * denom..=hi * denom).map(move |i| i as f64 / denom as f64)
}

/// Brute-force integral of a membership oracle by the midpoint rule on a
/// grid of `1/denom`; exact for step functions with breakpoints on that grid.
pub fn midpoint_integral(f: impl Fn(f64) -> f64, lo: i64, hi: i64, denom: i64) -> f64 {
    let h = 1.0 / denom as f64;
    (lo * denom..hi * denom).map(|i| f((i as f64 + 0.5) * h) * h).sum()
}

/// Random intervals with endpoints on a 0.25 grid inside `[0, 10]`.
pub fn random_intervals(rng: &mut ChaCha8Rng, n: usize) -> Vec<Interval> {
    (0..n)
        .map(|_| {
            let a = rng.random_range(0..=40) as f64 * 0.25;
            let b = rng.random_range(0..=40) as f64 * 0.25;
            Interval::new(a.min(b), a.max(b)).unwrap()
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
