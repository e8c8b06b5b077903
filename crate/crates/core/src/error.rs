use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: {msg}")]
    Semantic { line: usize, msg: String },

    #[error("invalid machine: {0}")]
    Invalid(String),

    #[error("symbol `{0}` is not in the input alphabet")]
    NotInAlphabet(String),

    #[error("malformed configuration: {0}")]
    MalformedConfiguration(String),

    #[error("machine is not weight-reducing (cycle through {cycle:?})")]
    NotWeightReducing { cycle: Vec<String> },

    #[error("construction requires a machine without endmarkers")]
    EndMarked,

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("argument out of range: {0}")]
    Argument(String),

    #[error("alphabets differ: {0:?} vs {1:?}")]
    AlphabetMismatch(Vec<String>, Vec<String>),

    #[error("state budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("fooling set broken: prefixes {first:?} and {second:?} are not distinguished")]
    Indistinguishable { first: String, second: String },
}

pub type Result<T> = std::result::Result<T, Error>;
