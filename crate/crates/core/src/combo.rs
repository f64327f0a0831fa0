//! Integer-weighted sums of vincular patterns.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{pattern_code, VincularPattern};
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coefficient: u64,
    pub pattern: VincularPattern,
}

/// A statistic of the form `Σ k·(pattern count)`.
///
/// Equal patterns are merged on construction, so a pattern written twice is stored
/// once with coefficient 2. Term order is the order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StatCombo {
    name: Option<String>,
    terms: Vec<Term>,
}

impl StatCombo {
    pub fn new(terms: impl IntoIterator<Item = (u64, VincularPattern)>) -> Result<Self> {
        let mut merged: Vec<Term> = Vec::new();
        for (coefficient, pattern) in terms {
            if coefficient == 0 {
                return Err(Error::ComboParse { input: pattern.to_string(), reason: "coefficients must be at least 1".into() });
            }
            match merged.iter_mut().find(|t| t.pattern == pattern) {
                Some(t) => t.coefficient += coefficient,
                None => merged.push(Term { coefficient, pattern }),
            }
        }
        Ok(StatCombo { name: None, terms: merged })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of pattern instances counted with multiplicity.
    pub fn instance_count(&self) -> u64 {
        self.terms.iter().map(|t| t.coefficient).sum()
    }

    /// Adds `other`'s terms, merging equal patterns. The name is dropped.
    pub fn plus(&self, other: &StatCombo) -> StatCombo {
        let all = self.terms.iter().chain(&other.terms).map(|t| (t.coefficient, t.pattern.clone()));
        StatCombo::new(all).expect("coefficients are positive")
    }

    /// Terms sorted by pattern, for order-insensitive comparison.
    pub fn canonical_terms(&self) -> Vec<(VincularPattern, u64)> {
        let mut v: Vec<_> = self.terms.iter().map(|t| (t.pattern.clone(), t.coefficient)).collect();
        v.sort();
        v
    }

    /// Same statistic regardless of term order or name.
    pub fn same_terms(&self, other: &StatCombo) -> bool {
        self.canonical_terms() == other.canonical_terms()
    }

    /// `Σ coefficient × count_occurrences` by the per-pattern counters.
    pub fn eval(&self, w: &[Letter]) -> u64 {
        self.terms.iter().map(|t| t.coefficient * t.pattern.count(w)).sum()
    }

    pub fn compile(&self) -> CompiledCombo {
        CompiledCombo::new(self)
    }

    /// Combination text without the name.
    pub fn formula(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| if t.coefficient == 1 { t.pattern.to_string() } else { format!("{}*{}", t.coefficient, t.pattern) })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for StatCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.formula())
    }
}

impl FromStr for StatCombo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: String| Error::ComboParse { input: s.to_string(), reason };
        if s.trim().is_empty() {
            return Err(fail("empty combination".into()));
        }
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let raw = raw.trim();
            let (coefficient, pat) = match raw.split_once('*') {
                Some((k, pat)) => (k.trim().parse::<u64>().map_err(|_| fail(format!("bad coefficient {k:?}")))?, pat),
                None => (1, raw),
            };
            let pattern = pat.parse::<VincularPattern>().map_err(|e| fail(e.to_string()))?;
            terms.push((coefficient, pattern));
        }
        StatCombo::new(terms).map_err(|e| fail(e.to_string()))
    }
}

impl Serialize for StatCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.formula())
    }
}

impl<'de> Deserialize<'de> for StatCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Table-driven evaluator for combos made of adjacent pairs and length-3 patterns
/// with an adjacency. One sweep over `(adjacent pair, other letter)` triples
/// replaces a separate count per term. Anything else falls back to direct counting.
#[derive(Debug, Clone)]
pub struct CompiledCombo {
    pair: [u64; 9],
    /// `[ab]c`: adjacent pair followed later by one letter.
    after: [u64; 27],
    /// `a[bc]`: one letter followed later by an adjacent pair.
    before: [u64; 27],
    use_after: bool,
    use_before: bool,
    rest: Vec<Term>,
}

impl CompiledCombo {
    pub fn new(c: &StatCombo) -> CompiledCombo {
        let mut cc = CompiledCombo { pair: [0; 9], after: [0; 27], before: [0; 27], use_after: false, use_before: false, rest: Vec::new() };
        for t in c.terms() {
            let p = &t.pattern;
            match (p.len(), p.adjacent()) {
                (2, Some(_)) => cc.pair[pattern_code(p.letters())] += t.coefficient,
                (3, Some(0)) => {
                    cc.after[pattern_code(p.letters())] += t.coefficient;
                    cc.use_after = true;
                }
                (3, Some(1)) => {
                    cc.before[pattern_code(p.letters())] += t.coefficient;
                    cc.use_before = true;
                }
                _ => cc.rest.push(t.clone()),
            }
        }
        cc
    }

    pub fn eval(&self, w: &[Letter]) -> u64 {
        let mut total = 0;
        for i in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[i], w[i + 1]);
            total += self.pair[code2(x, y)];
            if self.use_after {
                for &z in &w[i + 2..] {
                    total += self.after[code3(x, y, z)];
                }
            }
            if self.use_before {
                for &z in &w[..i] {
                    total += self.before[code3(z, x, y)];
                }
            }
        }
        total + self.rest.iter().map(|t| t.coefficient * t.pattern.count(w)).sum::<u64>()
    }
}

#[inline]
fn code2(a: Letter, b: Letter) -> usize {
    3 * (b < a) as usize + (a < b) as usize
}

#[inline]
fn code3(a: Letter, b: Letter, c: Letter) -> usize {
    // rank = number of distinct smaller values among the other two
    let ra = (b < a) as usize + (c < a && c != b) as usize;
    let rb = (a < b) as usize + (c < b && c != a) as usize;
    let rc = (a < c) as usize + (b < c && b != a) as usize;
    9 * ra + 3 * rb + rc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::order_code;

    #[test]
    fn parse_and_normalize() {
        let c: StatCombo = "2[31] + [31]2 + 2[31] + [21]".parse().unwrap();
        assert_eq!(c.to_string(), "2*2[31] + [31]2 + [21]");
        assert_eq!(c.instance_count(), 4);
        let d: StatCombo = "2*2[31]+[31]2+[21]".parse().unwrap();
        assert_eq!(c, d);
        let e: StatCombo = "[21] + 2*2[31] + [31]2".parse().unwrap();
        assert_ne!(c, e);
        assert!(c.same_terms(&e));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "2[31] +", "0*[21]", "x*[21]", "[21] + [3]"] {
            assert!(bad.parse::<StatCombo>().is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn json_round_trip() {
        let c: StatCombo = "2*2[31] + [31]2 + [21]".parse().unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: StatCombo = serde_json::from_str(&s).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn fast_codes_agree_with_reduction() {
        for a in 1..=3 {
            for b in 1..=3 {
                assert_eq!(code2(a, b), order_code(&[a, b]));
                for c in 1..=3 {
                    assert_eq!(code3(a, b, c), order_code(&[a, b, c]), "{a}{b}{c}");
                }
            }
        }
    }

    #[test]
    fn compiled_matches_direct() {
        let c: StatCombo = "2*2[31] + [31]2 + [21]1 + 2[21] + [21] + 231 + [22]1".parse().unwrap();
        let cc = c.compile();
        for w in [vec![3, 4, 1, 5, 6, 2], vec![2, 2, 1, 3, 1, 2], vec![], vec![1], vec![5, 4, 3, 2, 1]] {
            assert_eq!(cc.eval(&w), c.eval(&w), "{w:?}");
        }
    }
}
