//! Finite simplicial complexes of dimension at most 3, built from polygon
//! identifications, with collapse search and the `A ∪_C B` splitting check.
//!
//! Vertices are interned as `u32` ids with a shared name table; a simplex is
//! a sorted id list. Facets keep their listing order, which is what the
//! facet ids used by [`SimplicialComplex::facets_by_id`] refer to.

mod collapse;
mod complex;
mod polygon;
mod split;

use thiserror::Error;

pub use collapse::{
    is_collapsible, is_collapsible_with, verify_collapse_sequence, CollapseSequence, CollapseVerdict,
    NonCollapsible, SearchOptions,
};
pub use complex::{Simplex, SimplicialComplex, MAX_DIM};
pub use polygon::{polygon_complex_with_sides, polygon_identification_complex, IdentificationPolygon};
pub use split::{parse_facet_ids, split_check, PartOutcome, SplitPart, SplitReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("a simplex lists a vertex twice")]
    RepeatedVertex,
    #[error("empty simplex")]
    EmptySimplex,
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("simplex of dimension {0} exceeds the supported maximum")]
    DimensionTooHigh(usize),
    #[error("({face:?}, {coface:?}) is not a free pair")]
    NotFreePair { face: Vec<String>, coface: Vec<String> },
    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("identification did not give a simplicial complex: {0}")]
    NotSimplicial(String),
    #[error("polygon word is empty")]
    DegenerateWord,
    #[error("complex is empty")]
    Empty,
    #[error("search budget of {budget} states exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("malformed JSON: {0}")]
    Json(String),
}
