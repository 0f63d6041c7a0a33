use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet size {0} out of range 1..=64")]
    AlphabetSize(usize),
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("operands are over different alphabets")]
    AlphabetMismatch,
    #[error("tier symbol {0:?} is not in the alphabet")]
    TierNotSubset(char),
    #[error("literal symbol {0:?} is not on the tier")]
    SymbolOffTier(char),
    #[error("an expression may use only one tier, found {0:?} and {1:?}")]
    MixedTiers(String, String),
    #[error("literal has an empty payload")]
    EmptyLiteral,
    #[error("threshold must be at least 1, got {0}")]
    Threshold(usize),
    #[error("threshold counting supports substring and tier literals only")]
    CountingUnsupported,
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("residue {residue} out of range for modulus {modulus}")]
    Residue { residue: u32, modulus: u32 },
    #[error("expression syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("malformed language name {0:?}")]
    MalformedName(String),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("automaton is not minimal")]
    NotMinimal,
    #[error("ATT format error at line {line}: {msg}")]
    Att { line: usize, msg: String },
    #[error("sampler exhausted: no accepted strings remain at length {0}")]
    Exhausted(usize),
    #[error("string is not accepted by the sampler")]
    NotAccepted,
    #[error("language unusable at benchmark lengths: {0}")]
    Unusable(String),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("malformed record at {path}:{line}: {msg}")]
    Record {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("prediction file has {found} records but split has {expected}")]
    CountMismatch { expected: usize, found: usize },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("manifest error: {0}")]
    Manifest(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
    let path = path.into();
    move |source| Error::Io { path, source }
}
