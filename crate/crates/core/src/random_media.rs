//! Random scattering-lens realizations for a single focus mode.
//!
//! A realization holds the moduli and phases of the `M` transmission
//! coefficients `t_{a'b}` and the `M` reflection coefficients `r_{b'b}` that
//! feed output mode `b`. Wavefront shaping compensates every transmission
//! phase, so the shaped focus only ever sees `|t|`; the phases are kept for
//! diagnostics.
//!
//! Sampling keeps two things exact that a naive "draw Gaussians, divide by the
//! norm" scheme cannot both keep when `s != 2`: flux conservation
//! `sum |t|^2 + sum |r|^2 = 1` and the ensemble mean `E[sum |t|^2] = 1/s`.
//! Each channel is drawn as a circular complex Gaussian (Rayleigh modulus,
//! uniform phase) and the two blocks are rescaled so that the transmitted
//! fraction follows `Beta(2M/s, 2M(1 - 1/s))`. At `s = 2` this is exactly
//! the distribution of a normalized vector of `2M` i.i.d. complex Gaussians.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};

/// Flux conservation tolerance accepted by [`ScatteringRealization::from_parts`].
pub const FLUX_TOLERANCE: f64 = 1e-12;

/// Disorder model of the scattering lens.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisorderParams {
    /// Number of transmission channels `M` (also the number of reflection channels).
    pub channels: usize,
    /// Disorder strength `s = L / l`.
    pub disorder: f64,
}

impl DisorderParams {
    pub fn new(channels: usize, disorder: f64) -> Result<Self> {
        let params = Self { channels, disorder };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.channels == 0 {
            return Err(Error::invalid("channels", "need at least one channel"));
        }
        if !(self.disorder > 1.0) || !self.disorder.is_finite() {
            return Err(Error::invalid(
                "disorder",
                format!("s must be finite and > 1, got {}", self.disorder),
            ));
        }
        Ok(())
    }

    /// Ensemble mean of a single `|t|^2`, `1/(Ms)`.
    pub fn mean_transmission(&self) -> f64 {
        1.0 / (self.channels as f64 * self.disorder)
    }

    /// Ensemble mean of a single `|r|^2`, `(1 - 1/s)/M`.
    pub fn mean_reflection(&self) -> f64 {
        (1.0 - 1.0 / self.disorder) / self.channels as f64
    }
}

/// One sampled row of the scattering matrix, restricted to the focus mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatteringRealization {
    pub t_amp: Vec<f64>,
    pub t_phase: Vec<f64>,
    pub r_amp: Vec<f64>,
    pub r_phase: Vec<f64>,
}

impl ScatteringRealization {
    /// Builds a realization from explicit moduli and phases, checking flux
    /// conservation to [`FLUX_TOLERANCE`].
    pub fn from_parts(
        t_amp: Vec<f64>,
        t_phase: Vec<f64>,
        r_amp: Vec<f64>,
        r_phase: Vec<f64>,
    ) -> Result<Self> {
        if t_amp.is_empty() {
            return Err(Error::invalid("t_amp", "need at least one channel"));
        }
        if t_amp.len() != t_phase.len() || r_amp.len() != r_phase.len() {
            return Err(Error::invalid("phases", "length differs from amplitudes"));
        }
        if t_amp.iter().chain(&r_amp).any(|a| !(*a >= 0.0)) {
            return Err(Error::invalid("amplitudes", "must be nonnegative"));
        }
        let real = Self {
            t_amp,
            t_phase,
            r_amp,
            r_phase,
        };
        let flux = real.flux();
        if (flux - 1.0).abs() > FLUX_TOLERANCE {
            return Err(Error::invalid(
                "amplitudes",
                format!("sum |t|^2 + sum |r|^2 = {flux}, expected 1"),
            ));
        }
        Ok(real)
    }

    /// Zero-phase realization from moduli alone.
    pub fn from_amplitudes(t_amp: Vec<f64>, r_amp: Vec<f64>) -> Result<Self> {
        let t_phase = vec![0.0; t_amp.len()];
        let r_phase = vec![0.0; r_amp.len()];
        Self::from_parts(t_amp, t_phase, r_amp, r_phase)
    }

    pub fn channels(&self) -> usize {
        self.t_amp.len()
    }

    /// Total outgoing flux, `sum |t|^2 + sum |r|^2`.
    pub fn flux(&self) -> f64 {
        self.t_amp.iter().chain(&self.r_amp).map(|a| a * a).sum()
    }
}

/// The sums of coupling coefficients that enter the focus-mode statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingSums {
    pub channels: usize,
    /// `sum_{a'} T_{a'b}`
    pub sum_t: f64,
    /// `sum_{a'} |t_{a'b}|`
    pub sum_abs_t: f64,
    /// `sum_{b'} R_{b'b}`
    pub sum_r: f64,
    #[serde(skip)]
    prefix_t: Vec<f64>,
    #[serde(skip)]
    prefix_abs_t: Vec<f64>,
}

impl CouplingSums {
    /// `sum_{a' <= n} T_{a'b}`; `n` is clamped to the channel count.
    pub fn partial_sum_t(&self, n: usize) -> f64 {
        self.prefix_t[n.min(self.channels)]
    }

    /// `sum_{a' <= n} |t_{a'b}|`; `n` is clamped to the channel count.
    pub fn partial_sum_abs_t(&self, n: usize) -> f64 {
        self.prefix_abs_t[n.min(self.channels)]
    }
}

pub fn coupling_sums(real: &ScatteringRealization) -> CouplingSums {
    let channels = real.channels();
    let mut prefix_t = Vec::with_capacity(channels + 1);
    let mut prefix_abs_t = Vec::with_capacity(channels + 1);
    let (mut acc_t, mut acc_abs) = (0.0, 0.0);
    prefix_t.push(0.0);
    prefix_abs_t.push(0.0);
    for &a in &real.t_amp {
        acc_t += a * a;
        acc_abs += a;
        prefix_t.push(acc_t);
        prefix_abs_t.push(acc_abs);
    }
    let sum_r = real.r_amp.iter().map(|a| a * a).sum();
    CouplingSums {
        channels,
        sum_t: acc_t,
        sum_abs_t: acc_abs,
        sum_r,
        prefix_t,
        prefix_abs_t,
    }
}

/// Stateless per-trial seed: a SplitMix64 finalizer over `(master, index)`.
///
/// Serial and parallel runs that agree on trial indices see identical streams.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn circular_gaussian_block<R: Rng>(rng: &mut R, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut power = Vec::with_capacity(n);
    let mut phase = Vec::with_capacity(n);
    for _ in 0..n {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        power.push(re * re + im * im);
        phase.push(im.atan2(re).rem_euclid(TAU));
    }
    (power, phase)
}

fn rescale_block(power: &[f64], total: f64) -> Vec<f64> {
    let norm: f64 = power.iter().sum();
    power.iter().map(|p| (total * p / norm).sqrt()).collect()
}

pub fn sample_realization(params: &DisorderParams, seed: u64) -> Result<ScatteringRealization> {
    params.validate()?;
    let m = params.channels as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (t_power, t_phase) = circular_gaussian_block(&mut rng, params.channels);
    let (r_power, r_phase) = circular_gaussian_block(&mut rng, params.channels);

    let split = Beta::new(2.0 * m / params.disorder, 2.0 * m * (1.0 - 1.0 / params.disorder))
        .map_err(|e| Error::invalid("disorder", e.to_string()))?;
    let transmitted: f64 = split.sample(&mut rng);
    let transmitted = transmitted.clamp(0.0, 1.0);

    let mut t_amp = rescale_block(&t_power, transmitted);
    let mut r_amp = rescale_block(&r_power, 1.0 - transmitted);

    let flux: f64 = t_amp.iter().chain(&r_amp).map(|a| a * a).sum();
    let scale = flux.sqrt().recip();
    t_amp.iter_mut().chain(r_amp.iter_mut()).for_each(|a| *a *= scale);

    Ok(ScatteringRealization {
        t_amp,
        t_phase,
        r_amp,
        r_phase,
    })
}

/// Ensemble mean and standard error of the transmitted and reflected flux.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingStats {
    pub trials: usize,
    pub mean_sum_t: f64,
    pub stderr_sum_t: f64,
    pub mean_sum_r: f64,
    pub stderr_sum_r: f64,
}

pub fn ensemble_coupling_stats(
    params: &DisorderParams,
    trials: usize,
    seed: u64,
) -> Result<CouplingStats> {
    if trials == 0 {
        return Err(Error::invalid("trials", "need at least one trial"));
    }
    let sums = (0..trials)
        .map(|i| sample_realization(params, trial_seed(seed, i as u64)).map(|r| coupling_sums(&r).sum_t))
        .collect::<Result<Vec<_>>>()?;
    let (mean, stderr) = crate::stats::mean_stderr(&sums);
    Ok(CouplingStats {
        trials,
        mean_sum_t: mean,
        stderr_sum_t: stderr,
        mean_sum_r: 1.0 - mean,
        stderr_sum_r: stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_bad_params() {
        assert!(DisorderParams::new(0, 2.0).is_err());
        assert!(DisorderParams::new(10, 1.0).is_err());
        assert!(DisorderParams::new(10, 0.5).is_err());
        assert!(DisorderParams::new(10, f64::NAN).is_err());
    }

    #[test]
    fn near_unit_disorder_transmits_everything() {
        let params = DisorderParams::new(1, 1.0 + 1e-9).unwrap();
        let real = sample_realization(&params, 3).unwrap();
        assert!(real.r_amp[0] < 1e-3, "r = {}", real.r_amp[0]);
        assert_relative_eq!(real.t_amp[0], 1.0, epsilon = 1e-6);
    }

    #[test]
    fn sampled_flux_is_exact() {
        let params = DisorderParams::new(50, 2.0).unwrap();
        let real = sample_realization(&params, 42).unwrap();
        let sums = coupling_sums(&real);
        assert!(sums.sum_t > 0.0 && sums.sum_t < 1.0);
        assert!((sums.sum_t + sums.sum_r - 1.0).abs() < 1e-14);
        assert!(real.t_phase.iter().all(|p| (0.0..TAU).contains(p)));
    }

    #[test]
    fn same_seed_same_bits() {
        let params = DisorderParams::new(17, 3.5).unwrap();
        let a = sample_realization(&params, 99).unwrap();
        let b = sample_realization(&params, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_realization(&params, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn coupling_sums_single_channel() {
        let real = ScatteringRealization::from_amplitudes(vec![1.0], vec![0.0]).unwrap();
        let sums = coupling_sums(&real);
        assert_eq!(sums.sum_t, 1.0);
        assert_eq!(sums.sum_abs_t, 1.0);
        assert_eq!(sums.sum_r, 0.0);
    }

    #[test]
    fn coupling_sums_two_channels() {
        let real = ScatteringRealization::from_amplitudes(
            vec![0.25f64.sqrt(), 0.25f64.sqrt()],
            vec![0.5f64.sqrt(), 0.0],
        )
        .unwrap();
        let sums = coupling_sums(&real);
        assert_relative_eq!(sums.sum_t, 0.5, epsilon = 1e-15);
        assert_relative_eq!(sums.sum_abs_t, 1.0, epsilon = 1e-15);
        assert_relative_eq!(sums.sum_r, 0.5, epsilon = 1e-15);
        assert_relative_eq!(sums.partial_sum_t(1), 0.25, epsilon = 1e-15);
        assert_relative_eq!(sums.partial_sum_abs_t(1), 0.5, epsilon = 1e-15);
        assert_eq!(sums.partial_sum_t(0), 0.0);
    }

    #[test]
    fn from_parts_rejects_flux_violation() {
        let err = ScatteringRealization::from_amplitudes(vec![0.5], vec![0.5]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { .. }));
        assert!(ScatteringRealization::from_amplitudes(vec![-1.0], vec![0.0]).is_err());
    }

    #[test]
    fn trial_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> = (0..10_000).map(|i| trial_seed(7, i)).collect();
        assert_eq!(seeds.len(), 10_000);
        assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
    }

    #[test]
    fn ensemble_mean_transmission_tracks_inverse_disorder() {
        for (s, tol) in [(2.0, 0.01), (6.0, 0.005)] {
            let params = DisorderParams::new(50, s).unwrap();
            let stats = ensemble_coupling_stats(&params, 10_000, 11).unwrap();
            assert!((stats.mean_sum_t - 1.0 / s).abs() < tol, "s={s}: {stats:?}");
            assert_eq!(stats.mean_sum_r, 1.0 - stats.mean_sum_t);
        }
        assert!(ensemble_coupling_stats(&DisorderParams::new(5, 2.0).unwrap(), 0, 1).is_err());
    }
}
