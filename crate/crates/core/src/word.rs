//! Words over a multiset and their multisets.
//!
//! A [`Word`] is a finite sequence of positive integer letters. Statistics only
//! look at the relative order of letters, so the alphabet does not have to be
//! `{1..k}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::NonPositiveLetter(0));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn multiset(&self) -> MultisetSpec {
        MultisetSpec::from_letters(&self.0)
    }

    /// Comma separated letters, the canonical text form.
    pub fn to_csv(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        parts.join(",")
    }

    /// Letters grouped into descent blocks separated by dashes, e.g. `3-54-41-1-42-53`.
    ///
    /// Letters inside a block are written back to back when every letter is a single
    /// digit and comma separated otherwise, so [`Word::from_str`] reads the output back.
    pub fn dashed(&self) -> String {
        let single_digit = self.0.iter().all(|&l| l < 10);
        let blocks = crate::descent::descent_blocks(self);
        let rendered: Vec<String> = blocks
            .blocks()
            .iter()
            .map(|range| {
                let parts: Vec<String> = self.0[range.clone()].iter().map(|l| l.to_string()).collect();
                if single_digit {
                    parts.concat()
                } else {
                    parts.join(",")
                }
            })
            .collect();
        rendered.join("-")
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl TryFrom<Vec<Letter>> for Word {
    type Error = Error;

    fn try_from(letters: Vec<Letter>) -> Result<Self> {
        Word::new(letters)
    }
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `3,5,4,4` as well as the dashed display forms `3-54-4` and `3-5,4-4`.
    /// A dash-only form with no commas is read one digit per letter.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let fail = |reason: &str| Error::WordParse { input: s.to_string(), reason: reason.to_string() };
        if trimmed.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        if trimmed.contains('-') && !trimmed.contains(',') {
            for ch in trimmed.chars().filter(|c| !c.is_whitespace() && *c != '-') {
                let d = ch.to_digit(10).ok_or_else(|| fail("expected a digit"))?;
                letters.push(d);
            }
        } else {
            for tok in trimmed.split([',', '-']) {
                let tok = tok.trim();
                if tok.is_empty() {
                    return Err(fail("empty letter"));
                }
                let v: u64 = tok.parse().map_err(|_| fail("expected a positive integer"))?;
                let v = Letter::try_from(v).map_err(|_| fail("letter too large"))?;
                letters.push(v);
            }
        }
        if letters.contains(&0) {
            return Err(fail("letters must be positive"));
        }
        Ok(Word(letters))
    }
}

/// Replaces the i-th smallest entry by i. Only defined when entries are distinct.
pub fn reduce(seq: &[Letter]) -> Result<Word> {
    let mut sorted: Vec<Letter> = seq.to_vec();
    sorted.sort_unstable();
    if let Some(pair) = sorted.windows(2).find(|p| p[0] == p[1]) {
        return Err(Error::DuplicateEntry(pair[0]));
    }
    let letters = seq
        .iter()
        .map(|x| sorted.binary_search(x).expect("present") as Letter + 1)
        .collect();
    Ok(Word(letters))
}

/// Reduced form allowing repeated entries: distinct values become `1..=m` in order.
pub(crate) fn reduce_weak(seq: &[Letter]) -> Vec<Letter> {
    let mut sorted: Vec<Letter> = seq.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    seq.iter().map(|x| sorted.binary_search(x).expect("present") as Letter + 1).collect()
}

/// The k-th occurrence (left to right) of each value gets index k.
pub fn duplicate_indices(w: &[Letter]) -> Vec<u32> {
    let mut seen: BTreeMap<Letter, u32> = BTreeMap::new();
    w.iter()
        .map(|&v| {
            let c = seen.entry(v).or_insert(0);
            *c += 1;
            *c
        })
        .collect()
}

/// Multiplicities of a multiset of positive letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<Letter, usize>", into = "BTreeMap<Letter, usize>")]
pub struct MultisetSpec {
    counts: BTreeMap<Letter, usize>,
}

impl MultisetSpec {
    pub fn new(counts: BTreeMap<Letter, usize>) -> Result<Self> {
        if counts.contains_key(&0) {
            return Err(Error::NonPositiveLetter(0));
        }
        if let Some((v, _)) = counts.iter().find(|(_, &c)| c == 0) {
            return Err(Error::MultisetParse {
                input: format!("{counts:?}"),
                reason: format!("multiplicity of {v} must be positive"),
            });
        }
        Ok(MultisetSpec { counts })
    }

    /// Multiset `{1: m[0], 2: m[1], ...}`.
    pub fn from_multiplicities(mults: &[usize]) -> Result<Self> {
        let counts = mults.iter().enumerate().map(|(i, &m)| (i as Letter + 1, m)).collect();
        Self::new(counts)
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut counts = BTreeMap::new();
        for &l in letters {
            *counts.entry(l).or_insert(0) += 1;
        }
        MultisetSpec { counts }
    }

    pub fn size(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = Letter> + '_ {
        self.counts.keys().copied()
    }

    pub fn multiplicity(&self, v: Letter) -> usize {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.counts.values().copied().collect()
    }

    /// The lexicographically smallest rearrangement (letters in weakly increasing order).
    pub fn sorted_letters(&self) -> Vec<Letter> {
        self.counts.iter().flat_map(|(&v, &c)| std::iter::repeat_n(v, c)).collect()
    }

    /// n! / prod m(a)!, the size of the rearrangement class.
    pub fn multinomial(&self) -> Result<u64> {
        multinomial(&self.multiplicities()).ok_or_else(|| Error::TooLarge(self.to_string()))
    }
}

/// Multinomial coefficient, `None` on overflow.
pub fn multinomial(mults: &[usize]) -> Option<u64> {
    // product of binomials C(m1+..+mk, mk)
    let mut total: u64 = 1;
    let mut n: u64 = 0;
    for &m in mults {
        for i in 1..=m as u64 {
            n += 1;
            // total * n / i stays integral at each step
            total = u64::try_from(u128::from(total) * u128::from(n) / u128::from(i)).ok()?;
        }
    }
    Some(total)
}

impl TryFrom<BTreeMap<Letter, usize>> for MultisetSpec {
    type Error = Error;

    fn try_from(counts: BTreeMap<Letter, usize>) -> Result<Self> {
        MultisetSpec::new(counts)
    }
}

impl From<MultisetSpec> for BTreeMap<Letter, usize> {
    fn from(m: MultisetSpec) -> Self {
        m.counts
    }
}

impl fmt::Display for MultisetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|(v, c)| format!("{v}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for MultisetSpec {
    type Err = Error;

    /// `1:2,2:1` (braces optional).
    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: String| Error::MultisetParse { input: s.to_string(), reason };
        let body = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        let mut counts = BTreeMap::new();
        if body.is_empty() {
            return Ok(MultisetSpec::default());
        }
        for part in body.split(',') {
            let (v, c) = part
                .split_once(':')
                .ok_or_else(|| fail(format!("expected value:count, got {part:?}")))?;
            let v: Letter = v.trim().parse().map_err(|_| fail(format!("bad value {v:?}")))?;
            let c: usize = c.trim().parse().map_err(|_| fail(format!("bad count {c:?}")))?;
            if counts.insert(v, c).is_some() {
                return Err(fail(format!("value {v} listed twice")));
            }
        }
        MultisetSpec::new(counts).map_err(|e| fail(e.to_string()))
    }
}
