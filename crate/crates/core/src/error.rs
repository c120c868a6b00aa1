use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} occurs {count} time(s); every letter must occur exactly twice")]
    NotDoubleOccurrence { letter: u32, count: usize },

    #[error("bad token {0:?}: expected a positive integer or a run of letters a-z")]
    BadToken(String),

    #[error("word has {chords} chords, above the enumeration limit of {limit}")]
    TooManyChords { chords: usize, limit: usize },

    #[error("requested {requested} exceeds the cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("invalid band {b}:{d}")]
    BadBand { b: usize, d: usize },

    #[error("bad cuts {cuts:?} for a base word of length {len} ({blocks} blocks expected)")]
    BadCuts { cuts: Vec<usize>, len: usize, blocks: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("move site does not match the word")]
    StaleSite,

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("invalid invariant spec: {0}")]
    InvalidSpec(String),

    #[error("coefficient does not fit in 64 bits")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
