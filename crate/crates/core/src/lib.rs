//! Exact computations with quantum dilogarithms attached to quivers.

pub mod coeffs;
pub mod dynkinrep;
pub mod guard;
pub mod hall;
pub mod linalg;
pub mod qtorus;
pub mod quiver;
pub mod service;
