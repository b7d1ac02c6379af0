use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("fed mode count {fed} out of range for {channels} channels")]
    ModeCount { fed: usize, channels: usize },

    #[error("closed-form variance requires zero coherent and squeezing phases (got {alpha_phase}, {squeeze_phase})")]
    NonzeroPhase { alpha_phase: f64, squeeze_phase: f64 },

    #[error("Fano factor undefined for zero mean photon number")]
    ZeroMean,

    #[error("SNR undefined for zero photon-number variance")]
    ZeroVariance,

    #[error("unphysical Gaussian state: det V = {det} < 1/4")]
    Unphysical { det: f64 },

    #[error("mode coefficients are not normalized: sum |c|^2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("Fock truncation deficit {deficit:e} exceeds tolerance {tolerance:e}")]
    Truncation { deficit: f64, tolerance: f64 },

    #[error("prolate eigenvalue {index} moved by {shift:e} under quadrature refinement")]
    Convergence { index: usize, shift: f64 },

    #[error("prolate eigenvalue {index} = {value:e} is below the resolvable floor")]
    Unresolved { index: usize, value: f64 },

    #[error("no half-maximum crossing on [0, {z_max}]")]
    NoCrossing { z_max: f64 },

    #[error("all reconstruction coefficients below Q = {q} are zero")]
    AllZero { q: usize },

    #[error("photon budget too small: reconstruction SNR with one mode is {snr:e} < 1")]
    TooDim { snr: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
