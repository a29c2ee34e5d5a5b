//! Towers of free products `G_j = A_1 ∗ … ∗ A_j` of finite groups, with the
//! bonding maps that kill the last factor, and their comparison up to
//! pro-isomorphism.
//!
//! Only finite factors are supported. Factor sequences are given by an
//! alphabet with multiplicities in `ℕ ∪ {∞}`; the pro-isomorphism type of
//! the tower depends only on how often each isomorphism class of factor
//! occurs, which is what [`pro_isomorphic`] compares. Certificates are
//! checked independently: [`build_ladder`] turns a matching into explicit
//! factor-wise maps and [`ladder_verify`] checks that the ladder commutes
//! using free-product normal forms.

mod free_product;
mod group;
mod ladder;
mod proiso;
mod sequence;

use thiserror::Error;

pub use free_product::{FreeProduct, FreeProductWord};
pub use group::{
    group_isomorphic, homomorphisms, is_admissible_factor, FiniteGroup, MAX_ISO_ORDER, MAX_TABLE_ORDER,
};
pub use ladder::{ladder_verify, FactorMap, FactorwiseMap, Ladder};
pub use proiso::{build_ladder, pro_isomorphic, refute_ladders, Certificate, FactorClass, ProIsoReport, Refutation};
pub use sequence::{FactorSequence, Multiplicity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProError {
    #[error("`{label}` is not a group table: {why}")]
    NotAGroup { label: String, why: String },
    #[error("group of order {order} exceeds the limit {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("syllable ({position}, {element}) is out of range")]
    InvalidSyllable { position: usize, element: usize },
    #[error("factor `{0}` is trivial")]
    InadmissibleFactor(String),
    #[error("malformed ladder: {0}")]
    MalformedLadder(String),
    #[error("invalid factor sequence: {0}")]
    InvalidSequence(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}
