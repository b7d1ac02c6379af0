//! Independent engines for the focus-mode photon statistics.
//!
//! The Gaussian engine propagates first and second quadrature moments through
//! the shaped input-output relation for arbitrary phases; the Fock engine
//! ([`fock`]) builds the input state number by number on a truncated basis.
//! Neither uses the closed forms in [`crate::quantum_stats`].
//!
//! Convention: `x = (a + a^dag)/sqrt 2`, `p = (a - a^dag)/(i sqrt 2)`, so the
//! vacuum has `V = I/2`. `S(zeta)` with `zeta = g e^{i phi_s}` squeezes the
//! quadrature at angle `phi_s / 2`.

pub mod fock;

use nalgebra::{Matrix2, Rotation2, Vector2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantum_stats::{focus_moments, PhotonMoments, SqueezedInput};
use crate::random_media::{coupling_sums, sample_realization, DisorderParams, ScatteringRealization};

pub use fock::{complete_unitary, fock_output_means, fock_photon_moments, squeezed_coherent_amplitudes};

const DET_TOLERANCE: f64 = 1e-12;

/// Single-mode Gaussian state: quadrature means and covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianModeState {
    pub mean: Vector2<f64>,
    pub cov: Matrix2<f64>,
}

impl GaussianModeState {
    pub fn vacuum() -> Self {
        Self {
            mean: Vector2::zeros(),
            cov: Matrix2::identity() * 0.5,
        }
    }

    pub fn coherent(alpha: Complex64) -> Self {
        Self {
            mean: Vector2::new(alpha.re, alpha.im) * 2f64.sqrt(),
            cov: Matrix2::identity() * 0.5,
        }
    }

    /// Covariance of `S(g e^{i phi_s})|0>`.
    pub fn squeezed_vacuum_cov(g: f64, squeeze_phase: f64) -> Matrix2<f64> {
        let rot = Rotation2::new(squeeze_phase / 2.0).into_inner();
        let diag = Matrix2::new((-2.0 * g).exp(), 0.0, 0.0, (2.0 * g).exp()) * 0.5;
        rot * diag * rot.transpose()
    }

    /// Mixes the state with vacuum on a beam splitter of intensity
    /// transmittance `|p|^2`.
    pub fn through_beam_splitter(&self, transmittance: f64) -> Self {
        Self {
            mean: self.mean * transmittance.sqrt(),
            cov: self.cov * transmittance + Matrix2::identity() * (0.5 * (1.0 - transmittance)),
        }
    }

    pub fn is_physical(&self) -> bool {
        let sym = (self.cov[(0, 1)] - self.cov[(1, 0)]).abs() <= DET_TOLERANCE * self.cov.abs().max();
        sym && self.cov.determinant() >= 0.25 - DET_TOLERANCE * (1.0 + self.cov.trace().powi(2))
    }
}

/// Weights of the input modes that make up the focus mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeCoefficients {
    pub coeffs: Vec<Complex64>,
}

impl ModeCoefficients {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if coeffs.is_empty() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { coeffs })
    }

    /// Shaped focus mode `(|t_1|, ..., |t_N|, r_1, ..., r_M, |t_{N+1}|, ..., |t_M|)`:
    /// fed ports first, every vacuum port after them.
    pub fn shaped(real: &ScatteringRealization, fed: usize) -> Result<Self> {
        let m = real.channels();
        if fed == 0 || fed > m {
            return Err(Error::ModeCount { fed, channels: m });
        }
        let fed_part = real.t_amp[..fed].iter().map(|&a| Complex64::new(a, 0.0));
        let reflected = real
            .r_amp
            .iter()
            .zip(&real.r_phase)
            .map(|(&a, &p)| Complex64::from_polar(a, p));
        let unfed = real.t_amp[fed..].iter().map(|&a| Complex64::new(a, 0.0));
        Self::new(fed_part.chain(reflected).chain(unfed).collect())
    }

    /// Shaped focus mode with every vacuum port merged into one mode of
    /// weight `sqrt(1 - T_N)`. Any unitary mixing of vacuum inputs is vacuum,
    /// so this has the same focus statistics as [`Self::shaped`] with only
    /// `N + 1` modes.
    pub fn shaped_merged(real: &ScatteringRealization, fed: usize) -> Result<Self> {
        let m = real.channels();
        if fed == 0 || fed > m {
            return Err(Error::ModeCount { fed, channels: m });
        }
        let vacuum_weight: f64 = real.r_amp.iter().chain(&real.t_amp[fed..]).map(|a| a * a).sum();
        let coeffs = real.t_amp[..fed]
            .iter()
            .map(|&a| Complex64::new(a, 0.0))
            .chain(std::iter::once(Complex64::new(vacuum_weight.sqrt(), 0.0)))
            .collect();
        Self::new(coeffs)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Focus-mode Gaussian state for `fed` squeezed-coherent ports, all other
/// ports vacuum.
pub fn output_gaussian_state(
    real: &ScatteringRealization,
    input: &SqueezedInput,
    fed: usize,
) -> Result<GaussianModeState> {
    input.validate()?;
    let m = real.channels();
    if real.r_amp.len() != m {
        return Err(Error::invalid("realization", "reflection and transmission channel counts differ"));
    }
    if fed == 0 || fed > m {
        return Err(Error::ModeCount { fed, channels: m });
    }
    let fed_amp = &real.t_amp[..fed];
    let fed_weight: f64 = fed_amp.iter().map(|a| a * a).sum();
    let vacuum_weight: f64 = real.r_amp.iter().chain(&real.t_amp[fed..]).map(|a| a * a).sum();
    let field = Complex64::from_polar(input.alpha_mag, input.alpha_phase) * fed_amp.iter().sum::<f64>();

    let squeezed = GaussianModeState::squeezed_vacuum_cov(input.squeeze, input.squeeze_phase);
    Ok(GaussianModeState {
        mean: GaussianModeState::coherent(field).mean,
        cov: squeezed * fed_weight + Matrix2::identity() * (0.5 * vacuum_weight),
    })
}

/// Photon-number mean and variance of a single-mode Gaussian state.
pub fn gaussian_photon_moments(state: &GaussianModeState) -> Result<PhotonMoments> {
    if !state.is_physical() {
        return Err(Error::Unphysical {
            det: state.cov.determinant(),
        });
    }
    let v = &state.cov;
    let d = &state.mean;
    let mean = (v.trace() - 1.0) / 2.0 + d.norm_squared() / 2.0;
    let variance = ((v * v).trace() - 0.5) / 2.0 + (d.transpose() * v * d)[(0, 0)];
    Ok(PhotonMoments { mean, variance })
}

/// Relative difference `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_error(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// One randomized analytic-versus-Gaussian comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleCase {
    pub case: usize,
    pub channels: usize,
    pub fed: usize,
    pub disorder: f64,
    pub squeeze: f64,
    pub alpha2: f64,
    pub mean_analytic: f64,
    pub mean_oracle: f64,
    pub variance_analytic: f64,
    pub variance_oracle: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub cases: Vec<OracleCase>,
    pub worst: OracleCase,
}

impl OracleReport {
    pub fn max_rel_err(&self) -> f64 {
        self.worst.rel_err
    }
}

/// Compares the closed forms against the Gaussian engine on random
/// instances: `M` in 1..=64, `N <= M`, `s` in (1, 10], `g` in [0, 2],
/// `|alpha|^2` in [0, 1e5], zero phases.
pub fn oracle_check(cases: usize, seed: u64) -> Result<OracleReport> {
    if cases == 0 {
        return Err(Error::invalid("cases", "need at least one case"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(cases);
    for case in 0..cases {
        let channels = rng.random_range(1..=64usize);
        let fed = rng.random_range(1..=channels);
        let disorder = 10.0 - rng.random_range(0.0..9.0);
        let squeeze = rng.random_range(0.0..=2.0);
        let alpha2 = rng.random_range(0.0..=1e5);
        let real = sample_realization(&DisorderParams::new(channels, disorder)?, rng.random())?;
        let input = SqueezedInput::aligned(alpha2, squeeze, fed)?;

        let analytic = focus_moments(&coupling_sums(&real), &input)?;
        let oracle = gaussian_photon_moments(&output_gaussian_state(&real, &input, fed)?)?;
        let rel_err = relative_error(analytic.mean, oracle.mean)
            .max(relative_error(analytic.variance, oracle.variance));
        out.push(OracleCase {
            case,
            channels,
            fed,
            disorder,
            squeeze,
            alpha2,
            mean_analytic: analytic.mean,
            mean_oracle: oracle.mean,
            variance_analytic: analytic.variance,
            variance_oracle: oracle.variance,
            rel_err,
        });
    }
    let worst = *out
        .iter()
        .max_by(|a, b| a.rel_err.total_cmp(&b.rel_err))
        .expect("nonempty");
    Ok(OracleReport { cases: out, worst })
}
