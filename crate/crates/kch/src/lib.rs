//! Exact symbolic engine for the Legendrian DGA of a braid closure's
//! conormal lift: braid-word parsing, the braid-group action on the free
//! tilde algebra, assembly of the full noncommutative differential, internal
//! verification, and brute-force augmentation counting over prime fields.

pub mod augment;
pub mod braid;
pub mod dga;
pub mod docs;
pub mod matrix;
pub mod ncpoly;
pub mod phimap;
pub mod treecalc;

pub use braid::{BraidWord, ComponentMap};
pub use dga::{DgaPresentation, VerifyReport};
pub use matrix::NcMatrix;
pub use ncpoly::{Alphabet, ChordFamily, ChordLetter, CoeffSymbol, Grade, HomMonomial, NcPoly};
pub use phimap::PhiMatrices;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("symbol {symbol} out of range for alphabet {alphabet}")]
    SymbolOutOfRange { symbol: String, alphabet: String },

    #[error("chord letter {chord} invalid for alphabet {alphabet}")]
    ChordOutOfRange { chord: String, alphabet: String },

    #[error("missing substitution image for {0}")]
    MissingImage(String),

    #[error("differential image for {0} is not homogeneous of the required degree")]
    InhomogeneousImage(String),

    #[error("strand count must be at least 1")]
    InvalidStrandCount,

    #[error("braid parse error at token {position}: zero letter")]
    ZeroLetter { position: usize },

    #[error("braid parse error at token {position}: generator index out of range (letter {letter}, {strands} strands)")]
    GeneratorOutOfRange {
        position: usize,
        letter: i64,
        strands: u32,
    },

    #[error("braid parse error at token {position}: invalid token {token:?}")]
    InvalidToken { position: usize, token: String },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("search budget exceeded: census requires {required} assignments, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
