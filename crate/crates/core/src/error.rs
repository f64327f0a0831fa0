use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letters must be positive integers, found {0}")]
    NonPositiveLetter(u64),

    #[error("reduced form is only defined on distinct entries; {0} occurs twice")]
    DuplicateEntry(u32),

    #[error("cannot parse word {input:?}: {reason}")]
    WordParse { input: String, reason: String },

    #[error("cannot parse multiset {input:?}: {reason}")]
    MultisetParse { input: String, reason: String },

    #[error("cannot parse pattern {input:?}: {reason}")]
    PatternParse { input: String, reason: String },

    #[error("cannot parse combination {input:?}: {reason}")]
    ComboParse { input: String, reason: String },

    #[error("unknown statistic {0:?}")]
    UnknownStatistic(String),

    #[error("anchor {anchor} is out of range for a pattern of length {len}")]
    AnchorOutOfRange { anchor: usize, len: usize },

    #[error("word has fewer than {dup} occurrences of {value}")]
    MissingOccurrence { value: u32, dup: u32 },

    #[error("cannot parse 4-tuple-letter line {line}: {reason}")]
    TupleParse { line: usize, reason: String },

    #[error("4-tuple-letter ({value},{dup}) is not constructible: {reason}")]
    NotConstructible { value: u32, dup: u32, reason: String },

    #[error("4-tuple-letter set is not consistent: {0}")]
    Inconsistent(String),

    #[error("rearrangement class of {0} is too large to count in 64 bits")]
    TooLarge(String),
}
