//! Oriented link diagrams, Wirtinger presentations, and surgery relators.
//!
//! # Sign convention
//!
//! Diagrams are drawn in the plane, viewed from above. A crossing has sign
//! `+1` when the over strand, turned counterclockwise through less than a
//! half turn, points along the under strand:
//!
//! ```text
//!        +1                              -1
//!
//!   under_out     over            over        under_out
//!        ^       ^                    ^       ^
//!         \     /                      \     /
//!          \   /                        \   /
//!           \ /                          \ /
//!            /                            \
//!           / \                          / \
//!          /   \                        /   \
//!      over     under_in          under_in    over
//! ```
//!
//! At every crossing the Wirtinger relation is
//! `under_out = over^{-ε} · under_in · over^{ε}`, stored as the relator
//! `under_out · over^{-ε} · under_in^{-1} · over^{ε}`.
//!
//! # Shipped diagrams
//!
//! [`crate::data::mazur_link`] is the two-component Mazur link `Γ ∪ ζ` with arcs
//! `x1..x9`; `Γ` is component 0 (`x1..x6`) and `ζ` is component 1
//! (`x7, x8, x9`). Its signed Gauss code, with crossing `k` the `k`-th entry
//! of the crossing list, is
//!
//! ```text
//! Γ: 4 -2 -3 6 2 -4 -5 8 -9 5 7 -1      (starts on x3)
//! ζ: 9 1 3 -6 -7 -8                     (starts on x7)
//! signs: - - + - - + - - -
//! ```
//!
//! `Γ` runs through the disk bounded by `ζ` three times with alternating
//! orientation, the linking number is -1, the writhe of `Γ` is -3, and the
//! last crossing gives `x1 = x7^{-1} x2 x7`.
//!
//! [`crate::data::c_curve`] is the preimage of `Γ` in the connected double cover of
//! the solid torus `S³ − N(ζ)`, drawn by stacking two copies of the tangle,
//! together with the preimage of `ζ`.

mod diagram;
mod gauss;
mod wirtinger;

use thiserror::Error;

use crate::presentations::PresentationError;

pub use diagram::{validate_diagram, Crossing, DiagramReport, LinkDiagram};
pub use gauss::GaussCode;
pub use wirtinger::{
    adjoin_relators, extend_over_diagram, linking_number, longitude_word, meridian_word, relators_from_json,
    seifert_longitude_word, wirtinger, writhe, Provenance, SurgeryRelator,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("unknown arc `{0}`")]
    UnknownArc(String),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("images of arcs {0:?} are not determined")]
    Underdetermined(Vec<String>),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}
