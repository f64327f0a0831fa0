//! Vincular patterns over words and occurrence counting.
//!
//! A pattern is a reduced word (repeated letters allowed) with at most one pair of
//! positions that must be adjacent in an occurrence. In text, the adjacent pair is
//! bracketed: `2[31]` is 2 followed by an adjacent 31.
//!
//! Occurrences must be order-and-equality isomorphic to the pattern, so the two
//! `2`s of `[21]2` match equal letters of the word.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VincularPattern {
    letters: Vec<u8>,
    /// 0-based index `j` such that positions `j` and `j + 1` must be adjacent.
    adjacent: Option<usize>,
}

impl VincularPattern {
    pub fn new(letters: Vec<u8>, adjacent: Option<usize>) -> Result<Self> {
        let fail = |reason: &str| Error::PatternParse { input: render(&letters, adjacent), reason: reason.to_string() };
        if letters.is_empty() {
            return Err(fail("empty pattern"));
        }
        let mut distinct = letters.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.iter().enumerate().any(|(i, &l)| l as usize != i + 1) {
            return Err(fail("letters are not reduced"));
        }
        if let Some(j) = adjacent {
            if j + 1 >= letters.len() {
                return Err(fail("adjacency outside the pattern"));
            }
        }
        Ok(VincularPattern { letters, adjacent })
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// 0-based start of the adjacent pair, if any.
    pub fn adjacent(&self) -> Option<usize> {
        self.adjacent
    }

    pub fn has_repeated_letters(&self) -> bool {
        let mut sorted = self.letters.clone();
        sorted.sort_unstable();
        sorted.windows(2).any(|p| p[0] == p[1])
    }

    fn matches(&self, w: &[Letter], idx: &[usize]) -> bool {
        let p = &self.letters;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if w[idx[a]].cmp(&w[idx[b]]) != p[a].cmp(&p[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Calls `visit` with the index tuple of every occurrence, by exhaustive search
    /// over increasing index tuples (pruned by the adjacency).
    pub fn for_each_occurrence(&self, w: &[Letter], mut visit: impl FnMut(&[usize])) {
        let mut idx = Vec::with_capacity(self.len());
        self.extend(w, &mut idx, &mut visit);
    }

    fn extend(&self, w: &[Letter], idx: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        let k = idx.len();
        if k == self.len() {
            if self.matches(w, idx) {
                visit(idx);
            }
            return;
        }
        let from = idx.last().map_or(0, |&i| i + 1);
        // leave room for the remaining letters
        let to = (w.len() + k + 1).saturating_sub(self.len());
        if self.adjacent.is_some_and(|j| j + 1 == k) {
            if from < to {
                idx.push(from);
                self.extend(w, idx, visit);
                idx.pop();
            }
            return;
        }
        for i in from..to {
            idx.push(i);
            self.extend(w, idx, visit);
            idx.pop();
        }
    }

    /// Reference counter: enumerates every index tuple.
    pub fn count_brute(&self, w: &[Letter]) -> u64 {
        let mut c = 0;
        self.for_each_occurrence(w, |_| c += 1);
        c
    }

    /// Number of occurrences in `w`.
    pub fn count(&self, w: &[Letter]) -> u64 {
        let p = &self.letters;
        let n = w.len();
        let ord = |a: usize, b: usize| p[a].cmp(&p[b]);
        let fits2 = |x: Letter, y: Letter| x.cmp(&y) == ord(0, 1);
        let fits3 = |x: Letter, y: Letter, z: Letter| {
            x.cmp(&y) == ord(0, 1) && x.cmp(&z) == ord(0, 2) && y.cmp(&z) == ord(1, 2)
        };
        match (p.len(), self.adjacent) {
            (1, _) => n as u64,
            (2, Some(_)) => w.windows(2).filter(|q| fits2(q[0], q[1])).count() as u64,
            (2, None) => {
                let mut c = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        c += fits2(w[i], w[j]) as u64;
                    }
                }
                c
            }
            (3, Some(0)) => {
                let mut c = 0;
                for i in 0..n.saturating_sub(1) {
                    let (x, y) = (w[i], w[i + 1]);
                    if !fits2(x, y) {
                        continue;
                    }
                    for &z in &w[i + 2..] {
                        c += fits3(x, y, z) as u64;
                    }
                }
                c
            }
            (3, Some(_)) => {
                let mut c = 0;
                for i in 1..n.saturating_sub(1) {
                    let (y, z) = (w[i], w[i + 1]);
                    if y.cmp(&z) != ord(1, 2) {
                        continue;
                    }
                    for &x in &w[..i] {
                        c += fits3(x, y, z) as u64;
                    }
                }
                c
            }
            (3, None) => {
                let mut c = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if !fits2(w[i], w[j]) {
                            continue;
                        }
                        for k in j + 1..n {
                            c += fits3(w[i], w[j], w[k]) as u64;
                        }
                    }
                }
                c
            }
            _ => self.count_brute(w),
        }
    }

    /// Occurrences in which every pattern position carrying the same letter as
    /// position `anchor` (0-based) is matched by a word letter equal to `value`.
    pub fn count_restricted(&self, anchor: usize, value: Letter, w: &[Letter]) -> Result<u64> {
        if anchor >= self.len() {
            return Err(Error::AnchorOutOfRange { anchor, len: self.len() });
        }
        let target = self.letters[anchor];
        let tied: Vec<usize> = (0..self.len()).filter(|&k| self.letters[k] == target).collect();
        let mut c = 0;
        self.for_each_occurrence(w, |idx| {
            if tied.iter().all(|&k| w[idx[k]] == value) {
                c += 1;
            }
        });
        Ok(c)
    }

    /// Replaces one letter by its decrement and reduces, keeping the adjacency.
    /// Returns `None` when the decrement does not create an equality (letter 1).
    pub fn weaken_at(&self, i: usize) -> Option<VincularPattern> {
        let l = *self.letters.get(i)?;
        if l == 1 {
            return None;
        }
        let mut letters: Vec<Letter> = self.letters.iter().map(|&x| Letter::from(x)).collect();
        letters[i] -= 1;
        let reduced = crate::word::reduce_weak(&letters).into_iter().map(|x| x as u8).collect();
        Some(VincularPattern { letters: reduced, adjacent: self.adjacent })
    }
}

fn render(letters: &[u8], adjacent: Option<usize>) -> String {
    let mut s = String::new();
    for (i, l) in letters.iter().enumerate() {
        if Some(i) == adjacent {
            s.push('[');
        }
        s.push_str(&l.to_string());
        if adjacent.is_some_and(|j| j + 1 == i) {
            s.push(']');
        }
    }
    s
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.letters, self.adjacent))
    }
}

impl FromStr for VincularPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::PatternParse { input: s.to_string(), reason: reason.to_string() };
        let mut letters = Vec::new();
        let mut open: Option<usize> = None;
        let mut adjacent = None;
        for ch in s.trim().chars() {
            match ch {
                '[' => {
                    if open.is_some() || adjacent.is_some() {
                        return Err(fail("at most one bracketed pair is allowed"));
                    }
                    open = Some(letters.len());
                }
                ']' => {
                    let start = open.take().ok_or_else(|| fail("unmatched ']'"))?;
                    if letters.len() - start != 2 {
                        return Err(fail("a bracket must hold exactly two letters"));
                    }
                    adjacent = Some(start);
                }
                d if d.is_ascii_digit() => letters.push(d as u8 - b'0'),
                c if c.is_whitespace() => {}
                other => return Err(fail(&format!("unexpected character {other:?}"))),
            }
        }
        if open.is_some() {
            return Err(fail("unclosed '['"));
        }
        VincularPattern::new(letters, adjacent).map_err(|e| match e {
            Error::PatternParse { reason, .. } => fail(&reason),
            other => other,
        })
    }
}

impl serde::Serialize for VincularPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for VincularPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reduced order type of a short sequence in base 3, used as a table index.
#[cfg(test)]
pub(crate) fn order_code(vals: &[Letter]) -> usize {
    crate::word::reduce_weak(vals).iter().fold(0, |acc, &l| acc * 3 + (l as usize - 1))
}

pub(crate) fn pattern_code(p: &[u8]) -> usize {
    p.iter().fold(0, |acc, &l| acc * 3 + (l as usize - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> VincularPattern {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let q = p("2[31]");
        assert_eq!(q.letters(), &[2, 3, 1]);
        assert_eq!(q.adjacent(), Some(1));
        let q = p("[21]2");
        assert_eq!(q.letters(), &[2, 1, 2]);
        assert_eq!(q.adjacent(), Some(0));
        let q = p("231");
        assert_eq!(q.adjacent(), None);
        assert_eq!(p("[21]").to_string(), "[21]");
        assert_eq!(p("1[21]").to_string(), "1[21]");
    }

    #[test]
    fn parse_errors() {
        for bad in ["2[3]1", "[231]", "[21][1]", "[2]1", "241", "2[31", "21]", "0", "", "2a1", "[12]2["] {
            assert!(bad.parse::<VincularPattern>().is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn counting_examples() {
        let w = [3, 4, 1, 5, 6, 2];
        assert_eq!(p("231").count(&w), 7);
        assert_eq!(p("2[31]").count(&w), 4);
        assert_eq!(p("231").count_brute(&w), 7);
        assert_eq!(p("2[31]").count_brute(&w), 4);
        assert_eq!(p("[21]").count(&[1, 2, 3]), 0);
    }

    #[test]
    fn repeated_letters_need_equal_values() {
        // [21]2 on 3,1,3: the two 3s match the two 2s
        assert_eq!(p("[21]2").count(&[3, 1, 3]), 1);
        assert_eq!(p("[21]2").count(&[3, 1, 2]), 0);
        assert_eq!(p("[22]1").count(&[2, 2, 1]), 1);
        assert_eq!(p("[11]").count(&[1, 1, 2, 2]), 2);
    }

    #[test]
    fn restricted_examples() {
        let w = [6, 5, 2, 5, 3, 3, 4, 1];
        assert_eq!(p("[31]2").count_restricted(0, 5, &w).unwrap(), 4);
        let w = [4, 3, 2, 1, 4, 4, 1, 4];
        assert_eq!(p("[21]2").count_restricted(0, 4, &w).unwrap(), 4);
        // anchoring either 2 ties both
        assert_eq!(p("[21]2").count_restricted(2, 4, &w).unwrap(), 4);
        assert_eq!(p("[21]2").count_restricted(0, 9, &w).unwrap(), 0);
        assert!(p("[21]2").count_restricted(3, 4, &w).is_err());
    }

    #[test]
    fn weakening() {
        let q = p("2[31]");
        assert_eq!(q.weaken_at(0), Some(p("1[21]")));
        assert_eq!(q.weaken_at(1), Some(p("2[21]")));
        assert_eq!(q.weaken_at(2), None);
        assert_eq!(p("[21]").weaken_at(0), Some(p("[11]")));
    }

    #[test]
    fn order_codes_match_pattern_codes() {
        assert_eq!(order_code(&[5, 9, 2]), pattern_code(&[2, 3, 1]));
        assert_eq!(order_code(&[4, 4, 1]), pattern_code(&[2, 2, 1]));
        assert_eq!(order_code(&[7, 3]), pattern_code(&[2, 1]));
    }
}
