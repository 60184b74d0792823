use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("distributions are not homometric: |a_{index}| = {left} but |b_{index}| = {right}")]
    NotHomometric {
        index: usize,
        left: f64,
        right: f64,
    },

    #[error("invalid torus selection ({j}, {k}) for modulus {modulus}")]
    InvalidSelection { j: usize, k: usize, modulus: usize },

    #[error("torus weights must be positive and finite, got ({0}, {1})")]
    InvalidWeights(f64, f64),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("empty chord list")]
    EmptyChordList,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
