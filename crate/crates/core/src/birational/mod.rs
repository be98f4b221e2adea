//! Birational self-maps of ℙ¹×ℙ¹: exact composition, indeterminacy,
//! degree growth.

mod bipoly;
mod degrees;
mod indeterminacy;
mod map;

pub use bipoly::BiPoly;
pub use degrees::{
    degree_against, degree_sequence, family_lambda, stability_check, xie_lower_bound, DegreeStep,
    StabilityReport, XieDecision, XieInput, DEFAULT_ITERATE_CAP,
};
pub use indeterminacy::{indeterminacy_set, Axis, IndeterminacyComponent, IndeterminacySet, P1Point};
pub use map::{
    degree_matrix_product, BiRationalFunction, BirationalMapJson, BirationalSelfMap, ComponentJson,
    InverseJson, MonomialJson, DEFAULT_DEGREE_CAP,
};
