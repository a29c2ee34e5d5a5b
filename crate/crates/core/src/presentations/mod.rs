//! Finitely presented groups: words over signed generators, free and cyclic
//! reduction, certified Tietze moves, substitution homomorphisms and
//! abelianization by integer Smith normal form.

mod assignment;
mod presentation;
mod smith;
mod tietze;
mod word;

use thiserror::Error;

pub use assignment::{
    evaluate, substitute, verify_homomorphism, GeneratorAssignment, GroupElement,
    HomomorphismReport,
};
pub use presentation::Presentation;
pub use smith::{abelianization, exponent_matrix, smith_diagonal, AbelianInvariants};
pub use tietze::{expand_derivation, tietze_apply, ConjugatedRelator, TietzeCertificate};
pub use word::{cyclic_reduce, equivalent_relators, free_reduce, Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("exponent {0} is not +1 or -1")]
    InvalidExponent(i64),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("generator `{0}` has no image")]
    UnmappedGenerator(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("no relator eliminates generator `{0}`")]
    NoEliminatingRelator(String),
    #[error("malformed presentation JSON: {0}")]
    Json(String),
}
