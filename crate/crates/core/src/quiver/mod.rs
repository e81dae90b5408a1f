//! Quivers, framed quivers, exchange-matrix mutation and green sequences.

mod framed;
mod green;
#[allow(clippy::module_inception)]
mod quiver;
mod tropical;

pub use framed::{Color, FramedJson, FramedQuiver};
pub use green::{first_maximal, green_search, seq_from_json, GreenSeq, GreenSeqJson, Step, StepJson};
pub use quiver::{Quiver, QuiverJson};
pub use tropical::{dt_invariant, frozen_iso, tropical_e, tropical_word, DtResult};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("2-cycle between vertex {vertex} and vertex {other}")]
    TwoCycle { vertex: usize, other: usize },
    #[error("vertex {vertex} is frozen and cannot be mutated")]
    FrozenVertex { vertex: usize },
    #[error("c-vector of vertex {vertex} has mixed signs: {row:?}")]
    SignCoherence { vertex: usize, row: Vec<i64> },
    #[error("invalid exchange matrix: {0}")]
    BadMatrix(String),
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("no maximal green sequence found up to length {depth}")]
    NoMaximalGreen { depth: usize },
}
