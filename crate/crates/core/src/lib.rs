//! Photon statistics of squeezed light focused through a disordered
//! scattering lens, with prolate-spheroidal super-resolution estimates.
//!
//! The crate is organised bottom-up:
//!
//! - [`random_media`] samples transmission/reflection coefficients.
//! - [`quantum_stats`] gives closed-form focus-mode moments.
//! - [`gaussian_oracle`] recomputes them from covariance matrices and Fock tensors.
//! - [`prolate`] builds Slepian bases and point-spread functions.
//! - [`ensemble`] runs seeded Monte Carlo sweeps.
//! - [`cli`] wires everything to the `speckle` binary.

// `!(x > 0.0)` style guards are used on purpose: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod ensemble;
pub mod error;
pub mod gaussian_oracle;
pub mod prolate;
pub mod quantum_stats;
pub mod random_media;
pub mod stats;

pub use error::{Error, Result};
