//! The involution `Φ = ζ∘ε∘δ` on words.
//!
//! `δ` records each letter as a 4-tuple-letter, `ε` swaps descent-top statuses among
//! equal letters, and `ζ` rebuilds a word by inserting letters in increasing value.
//! `Φ` preserves the multiset, `des`, and each letter's value, duplicate index and
//! right and left embracing numbers.

mod epsilon;
mod insertion;
mod trace;
mod tuple;
mod validate;

pub use epsilon::{epsilon, f_map, h_combine, FMap};
pub use insertion::{v_insertion, zeta, zeta_traced, Block, Insertion, ZetaStep};
pub use trace::{phi_traced, PhiTrace};
pub use tuple::{delta, delta_sequence, FourTupleLetter, TupleSet};
pub use validate::{validate_tuple_set, Condition, ValidityReport, Violation};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// `Φ(w)`. An error here means a broken invariant, not bad input.
pub fn phi(w: &[Letter]) -> Result<Word> {
    zeta(&epsilon(&delta(w))).map_err(|e| Error::Inconsistent(format!("Φ failed on {}: {e}", render(w))))
}

fn render(w: &[Letter]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
