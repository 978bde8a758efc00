//! Numerical verification of Fourier transform inversion.
//!
//! The crate evaluates, at desk scale, the objects that appear in an
//! elementary proof of the inversion theorem: the contour-integral form of the
//! Heaviside step, principal-value inversion in one and two variables, the
//! first-order ODE reconstruction, Riemann localization, and a continuous
//! integrable function for which inversion fails at the origin.

// Validity checks are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceleration;
pub mod cli;
pub mod counterexample;
pub mod error;
pub mod inversion;
pub mod localization;
pub mod multivar;
pub mod perron;
pub mod quadrature;
pub mod testfns;
pub mod transform;

pub use error::{Error, Result};
