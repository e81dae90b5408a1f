//! Ringel-Hall algebras of Dynkin quivers over prime fields, by brute force,
//! and the integration map into the quantum affine space.

mod algebra;
mod euler;
mod integrate;

pub use algebra::{iso_classes, HallAlgebra, HallElement, IsoClass};
pub use euler::{euler_form, skew_matches_euler, validate_euler_form, EulerMismatch};
pub use integrate::{
    check_integration_homomorphism, compare_at, integrate, verify_exp_sum, verify_hn_identity, HnIdentity,
    SpecializedMismatch,
};
