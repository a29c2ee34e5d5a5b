//! Inputs shipped with the crate (the files under `data/`).

use crate::complexes::{parse_facet_ids, IdentificationPolygon, SimplicialComplex};
use crate::hyperbolic::{AssignmentSpec, Isometry, Triangle};
use crate::links::{relators_from_json, GaussCode, LinkDiagram, SurgeryRelator};
use crate::presentations::{GeneratorAssignment, Presentation};
use crate::prosequences::FactorSequence;

pub const MAZUR_LINK_JSON: &str = include_str!("../data/mazur_link.json");
pub const MAZUR_LINK_GAUSS_JSON: &str = include_str!("../data/mazur_link.gauss.json");
pub const MAZUR_RELATORS_JSON: &str = include_str!("../data/mazur_relators.json");
pub const C_CURVE_JSON: &str = include_str!("../data/c_curve.json");
pub const C_CURVE_GAUSS_JSON: &str = include_str!("../data/c_curve.gauss.json");
pub const UNKNOT_JSON: &str = include_str!("../data/unknot.json");
pub const TREFOIL_JSON: &str = include_str!("../data/trefoil.json");

/// Component index of `Γ` in [`mazur_link`].
pub const GAMMA: usize = 0;
/// Component index of `ζ` in [`mazur_link`].
pub const ZETA: usize = 1;

pub fn mazur_link() -> LinkDiagram {
    LinkDiagram::from_json(MAZUR_LINK_JSON).expect("shipped diagram is valid")
}

pub fn mazur_link_gauss() -> GaussCode {
    GaussCode::from_json(MAZUR_LINK_GAUSS_JSON).expect("shipped Gauss code parses")
}

/// `r_ζ` (0-framed filling of `ζ`) and `r_Γ` (2-handle along `Γ`), as words.
pub fn mazur_relators() -> Vec<SurgeryRelator> {
    relators_from_json(&mazur_link(), MAZUR_RELATORS_JSON).expect("shipped relators parse")
}

pub fn c_curve() -> LinkDiagram {
    LinkDiagram::from_json(C_CURVE_JSON).expect("shipped diagram is valid")
}

pub fn c_curve_gauss() -> GaussCode {
    GaussCode::from_json(C_CURVE_GAUSS_JSON).expect("shipped Gauss code parses")
}

pub fn unknot() -> LinkDiagram {
    LinkDiagram::from_json(UNKNOT_JSON).expect("shipped diagram is valid")
}

pub fn trefoil() -> LinkDiagram {
    LinkDiagram::from_json(TREFOIL_JSON).expect("shipped diagram is valid")
}

pub const TRIANGLE_REP_JSON: &str = include_str!("../data/triangle_rep.json");
pub const TRIANGLE_GROUP_JSON: &str = include_str!("../data/triangle_group.json");
pub const TWO_GENERATOR_JSON: &str = include_str!("../data/two_generator.json");

/// `⟨β, γ | γ⁷, β⁵, (βγ)²⟩`.
pub fn triangle_group() -> Presentation {
    Presentation::from_json(TRIANGLE_GROUP_JSON).expect("shipped presentation parses")
}

/// `⟨α, β | α⁻⁷β⁵, β⁴α⁻²β⁻¹α⁻²⟩`.
pub fn two_generator() -> Presentation {
    Presentation::from_json(TWO_GENERATOR_JSON).expect("shipped presentation parses")
}

pub fn triangle_rep() -> (Triangle, GeneratorAssignment<Isometry>) {
    AssignmentSpec::from_json(TRIANGLE_REP_JSON)
        .and_then(|s| s.build())
        .expect("shipped assignment builds")
}

pub const DUNCE_HAT_POLYGON_JSON: &str = include_str!("../data/dunce_hat.polygon.json");
pub const JESTER_HAT_POLYGON_JSON: &str = include_str!("../data/jester_hat.polygon.json");
pub const DUNCE_HAT_JSON: &str = include_str!("../data/dunce_hat.json");
pub const JESTER_HAT_JSON: &str = include_str!("../data/jester_hat.json");
pub const JESTER_A_IDS: &str = include_str!("../data/jester_A.ids");
pub const JESTER_B_IDS: &str = include_str!("../data/jester_B.ids");
pub const JESTER_A_COLLAPSE_JSON: &str = include_str!("../data/jester_A.collapse.json");

/// Word `a a a⁻¹` on a triangle.
pub fn dunce_hat_polygon() -> IdentificationPolygon {
    IdentificationPolygon::from_json(DUNCE_HAT_POLYGON_JSON).expect("shipped polygon parses")
}

/// Word `a a⁻¹ a b b⁻¹ b` on a hexagon.
pub fn jester_hat_polygon() -> IdentificationPolygon {
    IdentificationPolygon::from_json(JESTER_HAT_POLYGON_JSON).expect("shipped polygon parses")
}

pub fn dunce_hat() -> SimplicialComplex {
    SimplicialComplex::from_json(DUNCE_HAT_JSON).expect("shipped complex parses")
}

pub fn jester_hat() -> SimplicialComplex {
    SimplicialComplex::from_json(JESTER_HAT_JSON).expect("shipped complex parses")
}

/// Facet ids of the two halves of [`jester_hat`].
pub fn jester_split_ids() -> (Vec<usize>, Vec<usize>) {
    (
        parse_facet_ids(JESTER_A_IDS).expect("shipped ids parse"),
        parse_facet_ids(JESTER_B_IDS).expect("shipped ids parse"),
    )
}

/// A recorded collapse of the `A` half, as named steps.
pub fn jester_a_collapse() -> Vec<(Vec<String>, Vec<String>)> {
    serde_json::from_str(JESTER_A_COLLAPSE_JSON).expect("shipped sequence parses")
}

/// Seed images of two arcs of [`mazur_link`] under the triangle-group
/// representation, and the arc whose image certifies nontriviality.
pub const MAZUR_SEEDS_JSON: &str = include_str!("../data/mazur_seeds.json");

pub const Z2_Z3_SEQ_JSON: &str = include_str!("../data/z2_z3.seq.json");
pub const Z3_Z2_SEQ_JSON: &str = include_str!("../data/z3_z2.seq.json");
pub const Z2_Z5_SEQ_JSON: &str = include_str!("../data/z2_z5.seq.json");
pub const Z2_NO_Z5_SEQ_JSON: &str = include_str!("../data/z2_no_z5.seq.json");

/// Loads one of the shipped factor sequences.
pub fn sequence(text: &str) -> FactorSequence {
    FactorSequence::from_json(text).expect("shipped sequence parses")
}
