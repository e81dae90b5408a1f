//! Truncated series in q-commuting variables and the quantum dilogarithm.
//!
//! A [`QSeries`] is `y^offset * sum c_gamma y^gamma` with `gamma` in the
//! positive cone and `|gamma| <= D`, where `y^a y^b = v^{lambda(a,b)} y^{a+b}`.

mod dilog;
mod identities;
mod intertwiner;
mod series;
mod skew;
mod word;

pub use dilog::{dilog, dilog_coeff, quantum_exp, q_factorial};
pub use identities::{
    conj_factor_check, conj_factor_sides, kronecker_identity, kronecker_sides, shift_identity_check,
    shift_identity_sides, twist_involution_check, twist_involution_sides, kronecker_form, kronecker_right_word,
    LaurentZ, KRONECKER_MAX_DEPTH,
};
pub use intertwiner::{fg_generator_image, fg_generator_image_by_conjugation, phi_plus_image};
pub use series::{cone_exponents, series_inv, series_mul, Mismatch, QSeries, SeriesJson, TermJson, Verdict};
pub use skew::{monomial_mul, skew_from_quiver, ExpVec, SkewForm};
pub use word::{eval_word, Factor, Word};

use thiserror::Error;

use crate::coeffs::CoeffError;
use crate::quiver::QuiverError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("exponent has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("series live over different skew forms")]
    FormMismatch,
    #[error("series truncated at different depths ({left} and {right})")]
    DepthMismatch { left: u32, right: u32 },
    #[error("constant term is zero, series is not invertible")]
    NotInvertible,
    #[error("the dilogarithm needs a nonzero exponent")]
    ZeroExponent,
    #[error("exponent {0} has a negative entry")]
    NegativeExponent(ExpVec),
    #[error("the dilogarithm needs a nonzero coefficient")]
    ZeroCoefficient,
    #[error("cannot move offset {from} to {to}: target must be componentwise smaller")]
    BadRebase { from: ExpVec, to: ExpVec },
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("depth {got} exceeds the supported maximum {max}: {reason}")]
    DepthTooLarge { max: u32, got: u32, reason: String },
    #[error("word syntax error at byte {pos}: {msg}")]
    WordSyntax { pos: usize, msg: String },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}
