//! Exact arithmetic in `Q(q^{1/2})`.
//!
//! Everything is written in the variable `v = q^{1/2}`. A [`QRat`] is a
//! reduced fraction of a Laurent polynomial in `v` over a monic polynomial
//! with nonzero constant term, which makes `==` decide field equality.

mod parse;
mod poly;
mod qrat;
mod render;
mod surd;

pub use poly::HalfLaurent;
pub use qrat::{q_pow_minus_one, rat, QRat};
pub use render::render_laurent;
pub use surd::SurdValue;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at {at}")]
    Pole { at: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `f` evaluated at `q^{1/2} = t`.
pub fn qrat_specialize(f: &QRat, t: &num_rational::BigRational) -> Result<num_rational::BigRational, CoeffError> {
    f.specialize(t)
}
