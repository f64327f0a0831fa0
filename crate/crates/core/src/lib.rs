//! Mahonian statistics on words (multiset permutations): vincular pattern
//! counting, the descent-preserving involution `Φ = ζ∘ε∘δ`, exhaustive
//! equidistribution checks and a miner for pattern extensions.

pub mod bijection;
pub mod builtin;
pub mod combo;
pub mod descent;
pub mod enumeration;
pub mod error;
pub mod miner;
pub mod pattern;
pub mod statistic;
pub mod stats;
pub mod verify;
pub mod word;

pub use builtin::{base_combo, builtin, builtin_names};
pub use combo::{CompiledCombo, StatCombo, Term};
pub use descent::{descent_blocks, embracing_numbers, letter_profiles, DescentDecomposition, LetterProfile, Position, Side};
pub use error::{Error, Result};
pub use pattern::VincularPattern;
pub use statistic::Statistic;
pub use stats::{ClassicStat, DefinitionalStat};
pub use word::{duplicate_indices, reduce, Letter, MultisetSpec, Word};
