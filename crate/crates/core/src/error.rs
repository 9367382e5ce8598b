use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ambient mismatch: O_{left} vs O_{right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("letter {letter} out of range for n = {n}")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("n must be at least 2, got {0}")]
    BadAmbient(usize),

    #[error("element has a term of gauge degree {degree}; product states only evaluate the core F_n")]
    NotInCore { degree: i64 },

    #[error("scalar {0} is not unimodular")]
    NotUnimodular(String),

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("quasi-free expansion would produce {terms} terms (limit {limit})")]
    ExpansionTooLarge { terms: u128, limit: u128 },

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("measure with a Haar component has no atomic model")]
    UnsupportedMeasure,

    #[error("simulation context mismatch")]
    ContextMismatch,

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

impl Error {
    /// Errors caused by malformed input text rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Syntax { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
