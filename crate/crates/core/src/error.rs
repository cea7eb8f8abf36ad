use thiserror::Error;

/// Errors shared across the crate. Parse errors carry 1-based line numbers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: duplicate codeword '{word}'")]
    DuplicateCodeword { word: String, line: usize },

    #[error("line {line}: length {len} differs from first codeword length {expected}")]
    RaggedLine { line: usize, len: usize, expected: usize },

    #[error("line {line}: illegal character '{ch}' (codewords are strings over 0/1)")]
    IllegalCharacter { ch: char, line: usize },

    #[error("a code needs at least two codewords")]
    TooFewCodewords,

    #[error("blocklength {n} exceeds the 64-bit codeword limit")]
    BlocklengthTooLarge { n: usize },

    #[error("codeword lengths differ: {left} vs {right}")]
    LengthMismatch { left: u32, right: u32 },

    #[error("codeword index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("position {pos} out of range 1..={n}")]
    PositionOutOfRange { pos: u32, n: u32 },

    #[error("blocklength {n} exceeds the enumeration cap {cap}")]
    EnumerationCapExceeded { n: u32, cap: u32 },

    #[error("crossover probability must satisfy 0 < p < 1/2, got {p}")]
    CrossoverOutOfRange { p: String },

    #[error("cannot parse '{text}' as a rational number")]
    InvalidRational { text: String },

    #[error("spectrum lengths differ: {left} vs {right}")]
    SpectrumLengthMismatch { left: u32, right: u32 },

    #[error("code is not canonical: the first codeword must be all-zero")]
    NotCanonical,

    #[error("partition index k={k} out of range 0..{ell}")]
    LevelOutOfRange { k: u32, ell: u32 },

    #[error("cannot draw {m} distinct codewords of blocklength {n}")]
    InfeasibleCodeSize { n: u32, m: usize },

    #[error("invalid sweep configuration: {detail}")]
    InvalidSweepConfig { detail: String },

    #[error("internal consistency failure: {detail}")]
    Inconsistency { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
