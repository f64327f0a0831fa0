//! Descent blocks, letter positions and embracing numbers.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::word::{duplicate_indices, Letter};

/// Where a letter sits inside its descent block.
///
/// The closer is the leftmost (largest) letter of a block of length at least two,
/// the opener its rightmost (smallest) letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Opener,
    Closer,
    Insider,
    Outsider,
}

impl Position {
    pub const ALL: [Position; 4] = [Position::Opener, Position::Closer, Position::Insider, Position::Outsider];

    pub fn from_status(descent_bottom: bool, descent_top: bool) -> Position {
        match (descent_bottom, descent_top) {
            (true, false) => Position::Opener,
            (false, true) => Position::Closer,
            (true, true) => Position::Insider,
            (false, false) => Position::Outsider,
        }
    }

    pub fn is_descent_top(self) -> bool {
        matches!(self, Position::Insider | Position::Closer)
    }

    pub fn is_descent_bottom(self) -> bool {
        matches!(self, Position::Insider | Position::Opener)
    }

    pub fn name(self) -> &'static str {
        match self {
            Position::Opener => "opener",
            Position::Closer => "closer",
            Position::Insider => "insider",
            Position::Outsider => "outsider",
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "opener" => Ok(Position::Opener),
            "closer" => Ok(Position::Closer),
            "insider" => Ok(Position::Insider),
            "outsider" => Ok(Position::Outsider),
            other => Err(Error::TupleParse { line: 0, reason: format!("unknown position {other:?}") }),
        }
    }
}

/// Maximal strictly decreasing runs of a word.
///
/// Blocks are stored as 0-based half-open ranges into the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentDecomposition {
    blocks: Vec<Range<usize>>,
    positions: Vec<Position>,
}

impl DescentDecomposition {
    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    /// Index of the block holding the letter at `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.blocks.partition_point(|b| b.end <= i)
    }
}

pub fn descent_blocks(w: &[Letter]) -> DescentDecomposition {
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=w.len() {
        if i == w.len() || w[i - 1] <= w[i] {
            blocks.push(start..i);
            start = i;
        }
    }
    let mut positions = vec![Position::Outsider; w.len()];
    for b in &blocks {
        if b.len() >= 2 {
            positions[b.start] = Position::Closer;
            positions[b.end - 1] = Position::Opener;
            for p in &mut positions[b.start + 1..b.end - 1] {
                *p = Position::Insider;
            }
        }
    }
    DescentDecomposition { blocks, positions }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// Which notion of "block embraces a letter" to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbraceRule {
    /// A consecutive pair `w_j > a > w_{j+1}` inside a block. This is the rule the
    /// involution machinery relies on; it is what [`embracing_numbers`] uses.
    StrictPair,
    /// `O(B) < a < C(B)` on the whole block. Differs from `StrictPair` when `a`
    /// equals an interior letter of the block.
    StrictBlock,
    /// `C(B) >= a > O(B)`, the convention behind `Res`/`Les` of the word statistics
    /// `mak`, `mad`, `makl`, `madl`.
    Weak,
}

/// Right (or left) embracing numbers under the consecutive-pair rule: for the letter
/// at `i`, the number of pairs `(j, j+1)` on that side of `i` with `w_j > w_i > w_{j+1}`.
pub fn embracing_numbers(w: &[Letter], side: Side) -> Vec<u32> {
    embracing_numbers_with(w, side, EmbraceRule::StrictPair)
}

pub fn embracing_numbers_with(w: &[Letter], side: Side, rule: EmbraceRule) -> Vec<u32> {
    let n = w.len();
    match rule {
        EmbraceRule::StrictPair => (0..n)
            .map(|i| {
                let a = w[i];
                let pairs = match side {
                    Side::Right => (i + 1)..n.saturating_sub(1),
                    Side::Left => 0..i.saturating_sub(1),
                };
                pairs.filter(|&j| w[j] > a && a > w[j + 1]).count() as u32
            })
            .collect(),
        EmbraceRule::StrictBlock | EmbraceRule::Weak => {
            let dec = descent_blocks(w);
            (0..n)
                .map(|i| {
                    let a = w[i];
                    let own = dec.block_of(i);
                    let candidates: &[Range<usize>] = match side {
                        Side::Right => &dec.blocks[own + 1..],
                        Side::Left => &dec.blocks[..own],
                    };
                    candidates
                        .iter()
                        .filter(|b| b.len() >= 2)
                        .filter(|b| {
                            let closer = w[b.start];
                            let opener = w[b.end - 1];
                            match rule {
                                EmbraceRule::Weak => closer >= a && a > opener,
                                _ => closer > a && a > opener,
                            }
                        })
                        .count() as u32
                })
                .collect()
        }
    }
}

/// Everything the bijection needs to know about one letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterProfile {
    pub value: Letter,
    pub dup_index: u32,
    pub position: Position,
    pub r_embr: u32,
    pub l_embr: u32,
}

pub fn letter_profiles(w: &[Letter]) -> Vec<LetterProfile> {
    let dups = duplicate_indices(w);
    let dec = descent_blocks(w);
    let right = embracing_numbers(w, Side::Right);
    let left = embracing_numbers(w, Side::Left);
    (0..w.len())
        .map(|i| LetterProfile {
            value: w[i],
            dup_index: dups[i],
            position: dec.positions[i],
            r_embr: right[i],
            l_embr: left[i],
        })
        .collect()
}
