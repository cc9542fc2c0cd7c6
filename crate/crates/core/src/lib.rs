//! Fueter mapping in Clifford analysis: exact Clifford arithmetic, axial
//! calculus, closed-form monogenic monomials, sphere-integral kernels and a
//! numerical inverse.

pub mod axial;
pub mod clifford;
pub mod constants;
pub mod error;
pub mod fueter;
pub mod intrinsic;
pub mod inverse;
pub mod kernels;
pub mod poly;
pub mod quadrature;

pub use error::{FueterError, Result};
