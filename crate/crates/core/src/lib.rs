//! Exact quantum-torus methods for Kauffman bracket skein algebras.
//!
//! Scalars live in `Z[t, 1/t]` with `t = q^{1/2}`, or in a cyclotomic
//! quotient when `t` is specialized to a root of unity.

pub mod cheby;
pub mod cli;
pub mod curves;
pub mod error;
pub mod qcoeff;
pub mod qtorus;
pub mod qtrace;
pub mod statesum;
pub mod surface;

pub use error::{Error, Result};
