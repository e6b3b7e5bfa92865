//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid pattern letter '{0}' (expected a-f)")]
    InvalidPatternLetter(char),

    #[error("invalid pattern digit {0} (expected 1-6, 0 is padding only)")]
    InvalidPatternDigit(u32),

    #[error("digit string has embedded zero digit at position {0} (zeros are trailing padding only)")]
    EmbeddedZeroDigit(usize),

    #[error("invalid symbol '{0}' (expected 0, 1 or ?)")]
    InvalidSymbol(char),

    #[error("word has {found} '?' symbols, expected exactly one")]
    HoleCount { found: usize },

    #[error("prefix contains an unresolved '?' at position {position} and no fill symbol was given")]
    UnresolvedHole { position: usize },

    #[error("{0}")]
    Precondition(String),

    #[error("digit {digit} out of range for base {base}")]
    DigitRange { digit: u32, base: u32 },

    #[error("base {0} is not a valid numeration base (need >= 2)")]
    InvalidBase(u32),

    #[error("track bases mismatch: {0}")]
    BaseMismatch(String),

    #[error("track index {index} out of range ({tracks} tracks)")]
    TrackIndex { index: usize, tracks: usize },

    #[error("operation needs at least {need} tracks, automaton has {have}")]
    TooFewTracks { need: usize, have: usize },

    #[error("state cap exceeded: {0}")]
    StateCap(String),

    #[error("walnut text, line {line}: {msg}")]
    WalnutParse { line: usize, msg: String },

    #[error("regex, offset {pos}: {msg}")]
    RegexParse { pos: usize, msg: String },

    #[error("formula, offset {pos}: {msg}")]
    FormulaParse { pos: usize, msg: String },

    #[error("script, line {line}: {msg}")]
    Script { line: usize, msg: String },

    #[error("variable {var} used with conflicting bases {a} and {b}")]
    BaseConflict { var: String, a: u32, b: u32 },

    #[error("unknown name '{0}'")]
    UnknownName(String),

    #[error("name '{0}' is already defined")]
    DuplicateName(String),

    #[error("'{name}' takes {expected} arguments, got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("formula has free variables: {0}")]
    NotClosed(String),

    #[error("not a Stewart word: {0}")]
    NotStewart(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
