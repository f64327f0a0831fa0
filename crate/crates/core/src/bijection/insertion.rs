use std::fmt;

use serde::Serialize;

use super::tuple::{delta, FourTupleLetter, TupleSet};
use crate::descent::{descent_blocks, Position};
use crate::error::{Error, Result};
use crate::word::{duplicate_indices, Letter, Word};

/// A block of an insertion: finite letters `(value, dup)` in decreasing value order,
/// optionally preceded by the `∞` marker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub letters: Vec<(Letter, u32)>,
    pub open: bool,
}

impl Block {
    /// Largest finite letter.
    pub fn top(&self) -> Letter {
        self.letters[0].0
    }

    /// Open, and `v` can go right after the `∞`.
    pub fn embraceable(&self, v: Letter) -> bool {
        self.open && self.top() < v
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.open {
            parts.push("∞".into());
        }
        parts.extend(self.letters.iter().map(|(v, d)| format!("{v}_{d}")));
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Insertion {
    pub blocks: Vec<Block>,
}

impl Insertion {
    /// Every multi-letter block decreases strictly and equal values appear in
    /// increasing duplicate index.
    pub fn is_valid(&self) -> bool {
        let strict = self.blocks.iter().all(|b| !b.letters.is_empty() && b.letters.windows(2).all(|p| p[0].0 > p[1].0));
        let mut last_dup = std::collections::BTreeMap::new();
        let ordered = self.blocks.iter().flat_map(|b| &b.letters).all(|&(v, d)| {
            let prev = last_dup.insert(v, d);
            prev.is_none_or(|p| p < d)
        });
        strict && ordered
    }

    fn count_embraceable(&self, v: Letter) -> usize {
        self.blocks.iter().filter(|b| b.embraceable(v)).count()
    }

    /// Index of the `k`-th (1-based) `v`-embraceable open block from the right.
    fn nth_embraceable_from_right(&self, v: Letter, k: usize) -> Option<usize> {
        self.blocks.iter().enumerate().rev().filter(|(_, b)| b.embraceable(v)).nth(k.checked_sub(1)?).map(|(i, _)| i)
    }

    fn block_holding(&self, key: (Letter, u32)) -> Option<usize> {
        self.blocks.iter().position(|b| b.letters.contains(&key))
    }

    /// Concatenation of the finite letters; meaningful once no block is open.
    pub fn word(&self) -> Vec<Letter> {
        self.blocks.iter().flat_map(|b| b.letters.iter().map(|&(v, _)| v)).collect()
    }
}

impl fmt::Display for Insertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(Block::to_string).collect();
        f.write_str(&parts.join(" - "))
    }
}

/// The `v_i`-insertion of `w`: letters smaller than `v`, and copies of `v` from the
/// `i`-th on, are "present". A descent block survives when its opener is present;
/// its absent letters (a prefix, being the largest) collapse into one `∞`.
pub fn v_insertion(w: &[Letter], v: Letter, i: u32) -> Result<Insertion> {
    let dups = duplicate_indices(w);
    if i == 0 || !w.iter().zip(&dups).any(|(&x, &d)| x == v && d == i) {
        return Err(Error::MissingOccurrence { value: v, dup: i });
    }
    let present = |k: usize| w[k] < v || (w[k] == v && dups[k] >= i);
    let mut blocks = Vec::new();
    for range in descent_blocks(w).blocks() {
        if !present(range.end - 1) {
            continue;
        }
        let letters: Vec<(Letter, u32)> = range.clone().filter(|&k| present(k)).map(|k| (w[k], dups[k])).collect();
        let open = range.clone().any(|k| !present(k));
        blocks.push(Block { letters, open });
    }
    Ok(Insertion { blocks })
}

/// One insertion step of ζ: the letter inserted and the insertion after it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaStep {
    pub value: Letter,
    pub dup: u32,
    pub insertion: Insertion,
}

impl fmt::Display for ZetaStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}-insertion: {}", self.value, self.dup, self.insertion)
    }
}

pub fn zeta(set: &TupleSet) -> Result<Word> {
    zeta_traced(set).map(|(w, _)| w)
}

/// Rebuilds the word from its 4-tuple-letters by inserting values in increasing
/// order and, within a value, duplicate indices in decreasing order.
///
/// With `e` the right embracing number of the letter being inserted:
/// a descent top goes into the `(e+1)`-th embraceable open block from the right
/// (closing it if it is a closer); any other letter starts a new block placed
/// immediately left of the `e`-th embraceable open block from the right (the far
/// right end when `e = 0`) or of the block holding the next copy of its value,
/// whichever comes first.
pub fn zeta_traced(set: &TupleSet) -> Result<(Word, Vec<ZetaStep>)> {
    let mut order: Vec<FourTupleLetter> = set.elements().to_vec();
    order.sort_by_key(|t| (t.value, std::cmp::Reverse(t.dup)));
    let mut state = Insertion::default();
    let mut steps = Vec::with_capacity(order.len());
    for t in &order {
        insert_one(&mut state, t)?;
        steps.push(ZetaStep { value: t.value, dup: t.dup, insertion: state.clone() });
    }
    if state.blocks.iter().any(|b| b.open) {
        return Err(Error::NotConstructible {
            value: order.last().map_or(0, |t| t.value),
            dup: order.last().map_or(0, |t| t.dup),
            reason: "open blocks remain after the last insertion".into(),
        });
    }
    let word = Word::new(state.word())?;
    if &delta(&word) != set {
        return Err(Error::Inconsistent(format!("rebuilt word {word} does not carry the given 4-tuple-letters")));
    }
    Ok((word, steps))
}

fn insert_one(state: &mut Insertion, t: &FourTupleLetter) -> Result<()> {
    let fail = |reason: String| Error::NotConstructible { value: t.value, dup: t.dup, reason };
    let e = t.r as usize;
    let available = state.count_embraceable(t.value);
    if t.position.is_descent_top() {
        let j = state
            .nth_embraceable_from_right(t.value, e + 1)
            .ok_or_else(|| fail(format!("needs {} embraceable open blocks, found {available}", e + 1)))?;
        let block = &mut state.blocks[j];
        block.letters.insert(0, (t.value, t.dup));
        if t.position == Position::Closer {
            block.open = false;
        }
    } else {
        let at_eob = if e == 0 {
            state.blocks.len()
        } else {
            state
                .nth_embraceable_from_right(t.value, e)
                .ok_or_else(|| fail(format!("needs {e} embraceable open blocks, found {available}")))?
        };
        let at_next = state.block_holding((t.value, t.dup + 1)).unwrap_or(usize::MAX);
        let block = Block { letters: vec![(t.value, t.dup)], open: t.position == Position::Opener };
        state.blocks.insert(at_eob.min(at_next), block);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_examples() {
        let s = v_insertion(&[5, 2, 3, 5, 3, 4, 1, 5, 3, 1], 3, 2).unwrap();
        assert_eq!(s.to_string(), "∞ 2_1 - ∞ 3_2 - ∞ 1_1 - ∞ 3_3 1_2");
        let s = v_insertion(&[1, 1], 1, 2).unwrap();
        assert_eq!(s.blocks, vec![Block { letters: vec![(1, 2)], open: false }]);
        assert_eq!(v_insertion(&[4], 4, 1).unwrap().to_string(), "4_1");
        assert_eq!(v_insertion(&[4, 1], 1, 1).unwrap().to_string(), "∞ 1_1");
        assert!(v_insertion(&[1, 1], 1, 3).is_err());
        assert!(v_insertion(&[1, 1], 2, 1).is_err());
    }

    #[test]
    fn zeta_steps_of_small_example() {
        let (w, steps) = zeta_traced(&delta(&[4, 3, 1, 4, 4, 2])).unwrap();
        assert_eq!(w.letters(), &[4, 3, 1, 4, 4, 2]);
        let shown: Vec<String> = steps.iter().map(ZetaStep::to_string).collect();
        assert_eq!(
            shown,
            [
                "1_1-insertion: ∞ 1_1",
                "2_1-insertion: ∞ 1_1 - ∞ 2_1",
                "3_1-insertion: ∞ 3_1 1_1 - ∞ 2_1",
                "4_3-insertion: ∞ 3_1 1_1 - 4_3 2_1",
                "4_2-insertion: ∞ 3_1 1_1 - 4_2 - 4_3 2_1",
                "4_1-insertion: 4_1 3_1 1_1 - 4_2 - 4_3 2_1",
            ]
        );
        assert!(steps.iter().all(|s| s.insertion.is_valid()));
    }

    #[test]
    fn zeta_reports_missing_blocks() {
        let set: TupleSet = "1 1 closer 0\n2 1 opener 0\n".parse().unwrap();
        assert!(matches!(zeta(&set), Err(Error::NotConstructible { value: 1, dup: 1, .. })));
        let set: TupleSet = "1 1 opener 0\n".parse().unwrap();
        assert!(matches!(zeta(&set), Err(Error::NotConstructible { .. })));
    }
}
