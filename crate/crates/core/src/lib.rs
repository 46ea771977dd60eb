//! Tetrahedral two-loop integral: Clausen and dilogarithm machinery,
//! quadrature, integer relation detection and identity checks.

pub mod feynman;
pub mod identities;
pub mod mpcore;
pub mod polylog;
pub mod pslq;
pub mod quad;

pub use mpcore::{Complex, MpError, PrecisionCtx, Real};
