//! Representations of Dynkin quivers over prime fields, stability, and the
//! product formulas attached to them.
//!
//! Following the convention for the Hall algebra, a representation of a
//! quiver `Q` is a representation of `Q^op`: each arrow `i -> j` of `Q`
//! carries a linear map `V_j -> V_i`.

mod diagram;
mod order;
mod rep;
mod stability;

pub use diagram::{positive_roots, source_sequence, tits_form, DynkinQuiver, DynkinType};
pub use order::{decreasing_extensions, hom_order, verify_corollary, CorollaryReport, HomOrder, MAX_EXTENSIONS};
pub use rep::{ext1_dim, hom_dim, indecomposable, opposite_arrows, FqRep, Subrep};
pub(crate) use stability::first_collinear_pair;
pub use stability::{
    is_generic, phase_lt, random_generic_charge, reineke_product, reineke_word, root_subreps, stables, stables_from,
    CentralCharge, ChargeJson,
};

use thiserror::Error;

use crate::qtorus::{ExpVec, SeriesError};
use crate::quiver::QuiverError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("not a Dynkin quiver: {0}")]
    NotDynkin(String),
    #[error("{0} is not a positive root")]
    NotARoot(ExpVec),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("representations do not match: {0}")]
    ShapeMismatch(String),
    #[error("{what} has size {got}, above the guard {limit} (raise it with QDILOG_GUARD)")]
    Guard { what: String, got: usize, limit: usize },
    #[error("charge of {0} is zero or has phase outside [0, pi)")]
    BadCharge(ExpVec),
    #[error("charge is not generic: {0} and {1} have collinear charges")]
    NotGeneric(ExpVec, ExpVec),
    #[error("Hom order is not antisymmetric between {0} and {1}")]
    NotAntisymmetric(ExpVec, ExpVec),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("bad input: {0}")]
    Input(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}
