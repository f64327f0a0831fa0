use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::descent::{letter_profiles, Position};
use crate::error::{Error, Result};
use crate::word::{Letter, MultisetSpec};

/// `(value, duplicate index, position, right embracing number)` of one letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourTupleLetter {
    pub value: Letter,
    pub dup: u32,
    pub position: Position,
    pub r: u32,
}

impl FourTupleLetter {
    pub fn new(value: Letter, dup: u32, position: Position, r: u32) -> Self {
        FourTupleLetter { value, dup, position, r }
    }

    pub fn key(&self) -> (Letter, u32) {
        (self.value, self.dup)
    }
}

impl fmt::Display for FourTupleLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.value, self.dup, self.position, self.r)
    }
}

/// A set of 4-tuple-letters, kept sorted by `(value, dup)` for display.
///
/// Duplicated keys are representable so that invalid user input can be reported
/// by [`super::validate_tuple_set`] instead of being rejected at parse time.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TupleSet {
    elements: Vec<FourTupleLetter>,
}

impl TupleSet {
    pub fn new(mut elements: Vec<FourTupleLetter>) -> Self {
        elements.sort_by_key(|t| (t.value, t.dup, t.position, t.r));
        TupleSet { elements }
    }

    pub fn elements(&self) -> &[FourTupleLetter] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, value: Letter, dup: u32) -> Option<&FourTupleLetter> {
        self.elements.iter().find(|t| t.value == value && t.dup == dup)
    }

    /// Elements of one value, in increasing duplicate index.
    pub fn restrict(&self, value: Letter) -> Vec<FourTupleLetter> {
        self.elements.iter().filter(|t| t.value == value).copied().collect()
    }

    pub fn values(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self.elements.iter().map(|t| t.value).collect();
        v.dedup();
        v
    }

    /// Values of the descent tops, with multiplicity.
    pub fn destop(&self) -> Vec<Letter> {
        self.elements.iter().filter(|t| t.position.is_descent_top()).map(|t| t.value).collect()
    }

    /// Values of the descent bottoms, with multiplicity.
    pub fn desbot(&self) -> Vec<Letter> {
        self.elements.iter().filter(|t| t.position.is_descent_bottom()).map(|t| t.value).collect()
    }

    pub fn multiset(&self) -> MultisetSpec {
        let letters: Vec<Letter> = self.elements.iter().map(|t| t.value).collect();
        MultisetSpec::from_letters(&letters)
    }

    /// One `v d position r` line per element.
    pub fn to_text(&self) -> String {
        self.elements.iter().map(|t| format!("{t}\n")).collect()
    }
}

impl fmt::Display for TupleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for TupleSet {
    type Err = Error;

    /// Blank lines and lines starting with `#` are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut elements = Vec::new();
        for (n, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fail = |reason: String| Error::TupleParse { line: n + 1, reason };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [v, d, p, r] = fields[..] else {
                return Err(fail(format!("expected 4 fields, found {}", fields.len())));
            };
            let value: Letter = v.parse().map_err(|_| fail(format!("bad value {v:?}")))?;
            let dup: u32 = d.parse().map_err(|_| fail(format!("bad duplicate index {d:?}")))?;
            if value == 0 || dup == 0 {
                return Err(fail("value and duplicate index must be positive".into()));
            }
            let position = p.parse::<Position>().map_err(|_| fail(format!("unknown position {p:?}")))?;
            let r: u32 = r.parse().map_err(|_| fail(format!("bad embracing number {r:?}")))?;
            elements.push(FourTupleLetter { value, dup, position, r });
        }
        Ok(TupleSet::new(elements))
    }
}

/// 4-tuple-letters of `w` in word order.
pub fn delta_sequence(w: &[Letter]) -> Vec<FourTupleLetter> {
    letter_profiles(w)
        .into_iter()
        .map(|p| FourTupleLetter { value: p.value, dup: p.dup_index, position: p.position, r: p.r_embr })
        .collect()
}

pub fn delta(w: &[Letter]) -> TupleSet {
    TupleSet::new(delta_sequence(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Position::*;

    #[test]
    fn delta_of_small_example() {
        let got = delta(&[4, 3, 1, 4, 4, 2]);
        let want = TupleSet::new(vec![
            FourTupleLetter::new(4, 1, Closer, 0),
            FourTupleLetter::new(3, 1, Insider, 1),
            FourTupleLetter::new(1, 1, Opener, 0),
            FourTupleLetter::new(4, 2, Outsider, 0),
            FourTupleLetter::new(4, 3, Closer, 0),
            FourTupleLetter::new(2, 1, Opener, 0),
        ]);
        assert_eq!(got, want);
        assert_eq!(delta(&[5]).elements(), &[FourTupleLetter::new(5, 1, Outsider, 0)]);
    }

    #[test]
    fn delta_of_long_example() {
        let seq = delta_sequence(&[3, 5, 4, 4, 1, 1, 4, 2, 5, 3]);
        let dups: Vec<u32> = seq.iter().map(|t| t.dup).collect();
        let pos: Vec<Position> = seq.iter().map(|t| t.position).collect();
        let r: Vec<u32> = seq.iter().map(|t| t.r).collect();
        assert_eq!(dups, [1, 1, 1, 2, 1, 2, 3, 1, 2, 2]);
        assert_eq!(pos, [Outsider, Closer, Opener, Closer, Opener, Outsider, Closer, Opener, Closer, Opener]);
        assert_eq!(r, [2, 0, 1, 1, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn text_round_trip() {
        let w = delta(&[3, 5, 4, 4, 1, 1, 4, 2, 5, 3]);
        let back: TupleSet = w.to_text().parse().unwrap();
        assert_eq!(back, w);
        assert_eq!(w.to_text().lines().next(), Some("1 1 opener 0"));
    }

    #[test]
    fn parse_errors() {
        assert!("4 1 closer".parse::<TupleSet>().is_err());
        assert!("4 1 middle 0".parse::<TupleSet>().is_err());
        assert!("0 1 closer 0".parse::<TupleSet>().is_err());
        let e = "# comment\n\n4 x closer 0".parse::<TupleSet>().unwrap_err();
        assert!(matches!(e, Error::TupleParse { line: 3, .. }));
    }

    #[test]
    fn destop_and_desbot() {
        let w = delta(&[3, 5, 4, 4, 1, 1, 4, 2, 5, 3]);
        assert_eq!(w.destop().len(), 4);
        assert_eq!(w.desbot().len(), 4);
    }
}
