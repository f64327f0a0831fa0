//! Rearrangement classes, exact histograms and equidistribution tests.
//!
//! Words of a class are visited in lexicographic order. Any rank range can be
//! started directly through [`unrank`], which is how work is split across threads;
//! every worker fills its own histogram and the results are merged.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::ClassicStat;
use crate::statistic::Statistic;
use crate::word::{multinomial, Letter, MultisetSpec, Word};

/// Rearranges `w` into the next word in lexicographic order; `false` after the last.
pub fn next_rearrangement(w: &mut [Letter]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| w[i] < w[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).expect("w[i+1] qualifies");
    w.swap(i, j);
    w[i + 1..].reverse();
    true
}

/// Lazily yields every rearrangement of a multiset once, lexicographically ascending.
pub struct Rearrangements {
    current: Option<Vec<Letter>>,
}

impl Iterator for Rearrangements {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let w = self.current.as_mut()?;
        let out = Word::new(w.clone()).expect("multiset letters are positive");
        if !next_rearrangement(w) {
            self.current = None;
        }
        Some(out)
    }
}

pub fn enumerate_words(m: &MultisetSpec) -> Rearrangements {
    Rearrangements { current: Some(m.sorted_letters()) }
}

/// 0-based lexicographic rank of `w` within its rearrangement class.
pub fn rank(w: &[Letter]) -> Result<u64> {
    let m = MultisetSpec::from_letters(w);
    let values: Vec<Letter> = m.support().collect();
    let mut left = m.multiplicities();
    let mut r = 0u64;
    for &x in w {
        let k = values.binary_search(&x).expect("letter from the same word");
        for s in 0..k {
            if left[s] > 0 {
                left[s] -= 1;
                r += multinomial(&left).ok_or_else(|| Error::TooLarge(m.to_string()))?;
                left[s] += 1;
            }
        }
        left[k] -= 1;
    }
    Ok(r)
}

/// The rearrangement of `m` with lexicographic rank `r`.
pub fn unrank(m: &MultisetSpec, mut r: u64) -> Result<Word> {
    let total = m.multinomial()?;
    if r >= total {
        return Err(Error::Inconsistent(format!("rank {r} out of range for {m} ({total} words)")));
    }
    let values: Vec<Letter> = m.support().collect();
    let mut left = m.multiplicities();
    let mut out = Vec::with_capacity(m.size());
    for _ in 0..m.size() {
        for (k, &v) in values.iter().enumerate() {
            if left[k] == 0 {
                continue;
            }
            left[k] -= 1;
            let block = multinomial(&left).ok_or_else(|| Error::TooLarge(m.to_string()))?;
            if r < block {
                out.push(v);
                break;
            }
            r -= block;
            left[k] += 1;
        }
    }
    Word::new(out)
}

/// Calls `f` on the words with ranks `start..start + count`.
pub fn for_each_in_range(m: &MultisetSpec, start: u64, count: u64, mut f: impl FnMut(&[Letter])) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    let mut w = unrank(m, start)?.into_letters();
    for k in 0..count {
        f(&w);
        if k + 1 < count && !next_rearrangement(&mut w) {
            return Err(Error::Inconsistent(format!("range {start}+{count} runs past the end of {m}")));
        }
    }
    Ok(())
}

/// Runs `work` on `threads` contiguous rank ranges in parallel and merges the
/// partial results in range order.
pub fn par_fold<T: Send>(
    m: &MultisetSpec,
    threads: usize,
    init: impl Fn() -> T + Sync,
    work: impl Fn(&mut T, &[Letter]) + Sync,
    merge: impl Fn(&mut T, T),
) -> Result<T> {
    let total = m.multinomial()?;
    let threads = threads.max(1) as u64;
    let chunk = total.div_ceil(threads).max(1);
    let ranges: Vec<(u64, u64)> = (0..threads)
        .map(|t| (t * chunk, ((t + 1) * chunk).min(total)))
        .filter(|(a, b)| a < b)
        .collect();
    let run = |(a, b): (u64, u64)| -> Result<T> {
        let mut acc = init();
        for_each_in_range(m, a, b - a, |w| work(&mut acc, w))?;
        Ok(acc)
    };
    let parts: Vec<Result<T>> = if ranges.len() <= 1 {
        ranges.into_iter().map(run).collect()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = ranges.into_iter().map(|r| s.spawn(move || run(r))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    let mut out = init();
    for p in parts {
        merge(&mut out, p?);
    }
    Ok(out)
}

/// Exact counts of statistic values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Histogram {
    pub counts: BTreeMap<u64, u64>,
}

impl Histogram {
    pub fn add(&mut self, value: u64) {
        *self.counts.entry(value).or_insert(0) += 1;
    }

    pub fn merge(&mut self, other: Histogram) {
        for (k, c) in other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `value<TAB>count` lines sorted by value.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for (k, c) in &self.counts {
            let _ = writeln!(s, "{k}\t{c}");
        }
        s
    }
}

impl<const N: usize> From<[(u64, u64); N]> for Histogram {
    fn from(pairs: [(u64, u64); N]) -> Self {
        Histogram { counts: pairs.into_iter().collect() }
    }
}

/// Exact counts of `(des, stat)` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JointHistogram {
    pub counts: BTreeMap<(u64, u64), u64>,
}

impl JointHistogram {
    pub fn add(&mut self, des: u64, value: u64) {
        *self.counts.entry((des, value)).or_insert(0) += 1;
    }

    pub fn merge(&mut self, other: JointHistogram) {
        for (k, c) in other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Counts of the first coordinate alone.
    pub fn des_marginal(&self) -> Histogram {
        let mut h = Histogram::default();
        for (&(d, _), &c) in &self.counts {
            *h.counts.entry(d).or_insert(0) += c;
        }
        h
    }

    /// `des<TAB>value<TAB>count` lines.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for ((d, v), c) in &self.counts {
            let _ = writeln!(s, "{d}\t{v}\t{c}");
        }
        s
    }
}

// JSON object keys must be strings, so pairs travel as `[des, value, count]` rows.
impl Serialize for JointHistogram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<[u64; 3]> = self.counts.iter().map(|(&(d, v), &c)| [d, v, c]).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JointHistogram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<[u64; 3]>::deserialize(d)?;
        Ok(JointHistogram { counts: rows.into_iter().map(|[d, v, c]| ((d, v), c)).collect() })
    }
}

/// Machine-readable distribution report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionReport<H> {
    pub multiset: MultisetSpec,
    pub stat: String,
    pub counts: H,
    pub total: u64,
}

pub fn distribution(stat: &Statistic, m: &MultisetSpec, threads: usize) -> Result<Histogram> {
    par_fold(m, threads, Histogram::default, |h, w| h.add(stat.eval(w)), Histogram::merge)
}

pub fn joint_distribution(stat: &Statistic, m: &MultisetSpec, threads: usize) -> Result<JointHistogram> {
    par_fold(
        m,
        threads,
        JointHistogram::default,
        |h, w| h.add(ClassicStat::Des.eval(w), stat.eval(w)),
        JointHistogram::merge,
    )
}

pub fn equidistributed(a: &Statistic, b: &Statistic, m: &MultisetSpec, joint_with_des: bool, threads: usize) -> Result<bool> {
    if joint_with_des {
        Ok(joint_distribution(a, m, threads)? == joint_distribution(b, m, threads)?)
    } else {
        Ok(distribution(a, m, threads)? == distribution(b, m, threads)?)
    }
}

/// Coefficients of the q-multinomial coefficient of `m`, computed as a product of
/// Gaussian binomials built by the q-Pascal rule. No words are enumerated.
pub fn maj_reference_polynomial(m: &MultisetSpec) -> Histogram {
    let mut poly = vec![1u64];
    let mut n = 0;
    for k in m.multiplicities() {
        n += k;
        poly = poly_mul(&poly, &gaussian_binomial(n, k));
    }
    Histogram { counts: poly.into_iter().enumerate().filter(|&(_, c)| c > 0).map(|(e, c)| (e as u64, c)).collect() }
}

/// `[n choose k]_q` via `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
fn gaussian_binomial(n: usize, k: usize) -> Vec<u64> {
    // row[j] holds [i choose j]_q for the current i
    let mut row: Vec<Vec<u64>> = vec![vec![1]];
    for i in 1..=n {
        let mut next = vec![vec![1u64]; i + 1];
        for j in 1..i {
            let mut p = row[j - 1].clone();
            let shifted = &row[j];
            if p.len() < shifted.len() + j {
                p.resize(shifted.len() + j, 0);
            }
            for (e, &c) in shifted.iter().enumerate() {
                p[e + j] += c;
            }
            next[j] = p;
        }
        row = next;
    }
    row.swap_remove(k)
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// All multisets `{1: m1, ..., k: mk}` with `m1 + ... + mk = n` for `1 <= n <= max_size`:
/// every ordered multiplicity profile, not just the sorted ones, since a pattern
/// combination need not be symmetric under relabeling of values.
pub fn corpus(max_size: usize) -> Vec<MultisetSpec> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        let mut parts = Vec::new();
        compositions(n, &mut parts, &mut out);
    }
    out
}

fn compositions(left: usize, parts: &mut Vec<usize>, out: &mut Vec<MultisetSpec>) {
    if left == 0 {
        out.push(MultisetSpec::from_multiplicities(parts).expect("parts are positive"));
        return;
    }
    for first in 1..=left {
        parts.push(first);
        compositions(left - first, parts, out);
        parts.pop();
    }
}

/// Every word of every multiset in [`corpus`].
pub fn corpus_words(max_size: usize) -> impl Iterator<Item = Word> {
    corpus(max_size).into_iter().flat_map(|m| enumerate_words(&m))
}
