//! Closed-form photon statistics of the wavefront-shaped focus mode.
//!
//! Input ports `a' <= N` carry the displaced squeezed vacuum
//! `D(alpha) S(zeta)|0>` with `zeta = g e^{i phi_s}`; every other input port
//! (unfed transmission channels and all reflection channels) is vacuum.
//! With `T_N = sum_{a'<=N} |t|^2`, `A_N = sum_{a'<=N} |t|` and
//! `U = sum_{a'>N} |t|^2` the exact moments are
//!
//! ```text
//! <n>    = T_N sinh^2 g + |alpha|^2 A_N^2
//! Var(n) = 2 T_N^2 sinh^2 g cosh^2 g + T_N (R + U) sinh^2 g
//!        + |alpha|^2 A_N^2 [1 - T_N (1 - e^{-2g})]
//! ```
//!
//! The variance is only valid for `phi_alpha = phi_s = 0` (amplitude
//! squeezing aligned with the coherent field); other phases go through
//! [`crate::gaussian_oracle`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::random_media::CouplingSums;

/// Planck constant, J s (exact SI value).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light in vacuum, m/s (exact SI value).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Product of identical squeezed-coherent states on the first `fed_modes` ports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SqueezedInput {
    pub alpha_mag: f64,
    pub alpha_phase: f64,
    pub squeeze: f64,
    pub squeeze_phase: f64,
    pub fed_modes: usize,
}

impl SqueezedInput {
    /// Zero-phase input parameterized by coherent intensity `|alpha|^2`.
    pub fn aligned(alpha2: f64, squeeze: f64, fed_modes: usize) -> Result<Self> {
        if !(alpha2 >= 0.0) || !alpha2.is_finite() {
            return Err(Error::invalid("alpha2", format!("must be finite and >= 0, got {alpha2}")));
        }
        let input = Self {
            alpha_mag: alpha2.sqrt(),
            alpha_phase: 0.0,
            squeeze,
            squeeze_phase: 0.0,
            fed_modes,
        };
        input.validate()?;
        Ok(input)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.squeeze >= 0.0) || !self.squeeze.is_finite() {
            return Err(Error::invalid("squeeze", format!("g must be finite and >= 0, got {}", self.squeeze)));
        }
        if !(self.alpha_mag >= 0.0) || !self.alpha_mag.is_finite() {
            return Err(Error::invalid("alpha_mag", "must be finite and >= 0"));
        }
        if self.fed_modes == 0 {
            return Err(Error::invalid("fed_modes", "need at least one fed mode"));
        }
        Ok(())
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha_mag * self.alpha_mag
    }

    /// Squeezed-vacuum photon number per mode, `sinh^2 g`.
    pub fn squeezed_photons(&self) -> f64 {
        self.squeeze.sinh().powi(2)
    }

    fn require_zero_phase(&self) -> Result<()> {
        if self.alpha_phase != 0.0 || self.squeeze_phase != 0.0 {
            return Err(Error::NonzeroPhase {
                alpha_phase: self.alpha_phase,
                squeeze_phase: self.squeeze_phase,
            });
        }
        Ok(())
    }
}

/// First two moments of the focus-mode photon number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhotonMoments {
    pub mean: f64,
    pub variance: f64,
}

impl PhotonMoments {
    pub fn fano(&self) -> Result<f64> {
        fano(self)
    }

    pub fn snr(&self) -> Result<f64> {
        snr(self)
    }
}

/// Beam-splitter loss on the focus mode with vacuum in the other port.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossChannel {
    /// `|q|^2`
    pub loss_rate: f64,
}

impl LossChannel {
    pub fn new(loss_rate: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&loss_rate) {
            return Err(Error::invalid("loss_rate", format!("|q|^2 must lie in [0, 1], got {loss_rate}")));
        }
        Ok(Self { loss_rate })
    }

    pub fn lossless() -> Self {
        Self { loss_rate: 0.0 }
    }

    /// `|p|^2 = 1 - |q|^2`
    pub fn transmittance(&self) -> f64 {
        1.0 - self.loss_rate
    }
}

fn fed_count(sums: &CouplingSums, input: &SqueezedInput) -> Result<usize> {
    input.validate()?;
    let n = input.fed_modes;
    if n == 0 || n > sums.channels {
        return Err(Error::ModeCount {
            fed: n,
            channels: sums.channels,
        });
    }
    Ok(n)
}

fn require_full_filling(sums: &CouplingSums, input: &SqueezedInput) -> Result<()> {
    if input.fed_modes != sums.channels {
        return Err(Error::ModeCount {
            fed: input.fed_modes,
            channels: sums.channels,
        });
    }
    Ok(())
}

/// Exact mean photon number with every transmission channel fed (`N = M`).
pub fn mean_photon(sums: &CouplingSums, input: &SqueezedInput) -> Result<f64> {
    require_full_filling(sums, input)?;
    mean_photon_partial(sums, input)
}

/// Exact photon-number variance with every transmission channel fed.
pub fn variance_photon(sums: &CouplingSums, input: &SqueezedInput) -> Result<f64> {
    require_full_filling(sums, input)?;
    variance_photon_partial(sums, input)
}

/// Exact mean photon number when only the first `N <= M` channels are fed.
pub fn mean_photon_partial(sums: &CouplingSums, input: &SqueezedInput) -> Result<f64> {
    let n = fed_count(sums, input)?;
    let fed_t = sums.partial_sum_t(n);
    let fed_abs_t = sums.partial_sum_abs_t(n);
    let coherent = input.alpha2() * fed_abs_t * fed_abs_t;
    Ok(fed_t * input.squeezed_photons() + coherent)
}

/// Exact photon-number variance when only the first `N <= M` channels are fed.
///
/// The `T_N U sinh^2 g` term is the beat between the squeezed ports and the
/// empty transmission ports; it vanishes at `N = M`.
pub fn variance_photon_partial(sums: &CouplingSums, input: &SqueezedInput) -> Result<f64> {
    let n = fed_count(sums, input)?;
    input.require_zero_phase()?;
    let g = input.squeeze;
    let sh2 = input.squeezed_photons();
    let ch2 = g.cosh().powi(2);
    let fed_t = sums.partial_sum_t(n);
    let fed_abs_t = sums.partial_sum_abs_t(n);
    let unfed_t = sums.sum_t - fed_t;
    let coherent = input.alpha2() * fed_abs_t * fed_abs_t;
    let bracket = 1.0 - fed_t * (-(-2.0 * g).exp_m1());

    let squeezed = fed_t * fed_t * 2.0 * sh2 * ch2 + fed_t * sums.sum_r * sh2;
    let beat = fed_t * unfed_t * sh2;
    Ok(squeezed + beat + coherent * bracket)
}

/// Exact mean and variance for `input.fed_modes <= M`.
pub fn focus_moments(sums: &CouplingSums, input: &SqueezedInput) -> Result<PhotonMoments> {
    Ok(PhotonMoments {
        mean: mean_photon_partial(sums, input)?,
        variance: variance_photon_partial(sums, input)?,
    })
}

/// Bright-beam approximations: `<n> ~ |alpha|^2 A_N^2` and
/// `Var(n) ~ <n> [1 - T_N (1 - e^{-2g})]`.
pub fn focus_moments_large_alpha(sums: &CouplingSums, input: &SqueezedInput) -> Result<PhotonMoments> {
    let n = fed_count(sums, input)?;
    input.require_zero_phase()?;
    let fed_abs_t = sums.partial_sum_abs_t(n);
    let mean = input.alpha2() * fed_abs_t * fed_abs_t;
    let variance = mean * (1.0 - sums.partial_sum_t(n) * (-(-2.0 * input.squeeze).exp_m1()));
    Ok(PhotonMoments { mean, variance })
}

pub fn fano(m: &PhotonMoments) -> Result<f64> {
    if m.mean == 0.0 {
        return Err(Error::ZeroMean);
    }
    Ok(m.variance / m.mean)
}

/// `<n>^2 / Var(n)`
pub fn snr(m: &PhotonMoments) -> Result<f64> {
    if m.variance == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(m.mean * m.mean / m.variance)
}

/// Ensemble-averaged bright-beam Fano factor, `1 - (1 - e^{-2g})/s`.
pub fn asymptotic_avg_fano(s: f64, g: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::invalid("disorder", format!("s must be > 1, got {s}")));
    }
    Ok(1.0 + (-2.0 * g).exp_m1() / s)
}

/// `R / <n>` in the bright-beam ensemble limit, `1 / asymptotic_avg_fano`.
pub fn asymptotic_avg_snr_ratio(s: f64, g: f64) -> Result<f64> {
    asymptotic_avg_fano(s, g).map(f64::recip)
}

pub fn apply_loss(m: &PhotonMoments, loss: &LossChannel) -> PhotonMoments {
    let p2 = loss.transmittance();
    let q2 = loss.loss_rate;
    PhotonMoments {
        mean: p2 * m.mean,
        variance: p2 * p2 * m.variance + p2 * q2 * m.mean,
    }
}

/// Mean photon number delivered to the focus: `P t f lambda / (h c)`.
pub fn photon_budget(wavelength: f64, power: f64, duration: f64, focus_fraction: f64) -> Result<f64> {
    for (name, v) in [("wavelength", wavelength), ("power", power), ("duration", duration)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::invalid(name, format!("must be finite and > 0, got {v}")));
        }
    }
    if !(focus_fraction > 0.0 && focus_fraction <= 1.0) {
        return Err(Error::invalid("focus_fraction", format!("must lie in (0, 1], got {focus_fraction}")));
    }
    Ok(power * duration * focus_fraction * wavelength / (PLANCK * SPEED_OF_LIGHT))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random_media::{coupling_sums, ScatteringRealization};
    use approx::assert_relative_eq;

    fn sums(t: &[f64], r: &[f64]) -> CouplingSums {
        let real = ScatteringRealization::from_amplitudes(
            t.iter().map(|x| x.sqrt()).collect(),
            r.iter().map(|x| x.sqrt()).collect(),
        )
        .unwrap();
        coupling_sums(&real)
    }

    #[test]
    fn coherent_through_half_transmission() {
        let s = sums(&[0.5], &[0.5]);
        let input = SqueezedInput::aligned(10.0, 0.0, 1).unwrap();
        assert_relative_eq!(mean_photon(&s, &input).unwrap(), 5.0, epsilon = 1e-12);
    }

    #[test]
    fn squeezed_vacuum_mean() {
        let s = sums(&[0.5], &[0.5]);
        let input = SqueezedInput::aligned(0.0, 1.5, 1).unwrap();
        let expected = 0.5 * 1.5f64.sinh().powi(2);
        assert_relative_eq!(mean_photon(&s, &input).unwrap(), expected, max_relative = 1e-14);
        assert_relative_eq!(expected, 2.266_915_5, epsilon = 1e-7);
    }

    #[test]
    fn bright_full_transmission_mean() {
        let s = sums(&[1.0], &[0.0]);
        let input = SqueezedInput::aligned(10_000.0, 1.5, 1).unwrap();
        assert_relative_eq!(mean_photon(&s, &input).unwrap(), 10_004.534, epsilon = 1e-3);
    }

    #[test]
    fn coherent_variance_equals_mean() {
        let s = sums(&[0.2, 0.1, 0.15], &[0.3, 0.25, 0.0]);
        let input = SqueezedInput::aligned(1234.5, 0.0, 3).unwrap();
        let m = focus_moments(&s, &input).unwrap();
        assert_eq!(m.mean, m.variance);
        assert_eq!(fano(&m).unwrap(), 1.0);
    }

    #[test]
    fn single_mode_squeezed_coherent_variance() {
        let s = sums(&[1.0], &[0.0]);
        for (g, a2) in [(0.3, 2.0), (1.5, 100.0), (2.0, 0.0)] {
            let input = SqueezedInput::aligned(a2, g, 1).unwrap();
            let sh2 = g.sinh().powi(2);
            let ch2 = g.cosh().powi(2);
            let expected = 2.0 * sh2 * ch2 + a2 * (-2.0 * g).exp();
            assert_relative_eq!(variance_photon(&s, &input).unwrap(), expected, max_relative = 1e-13);
        }
    }

    #[test]
    fn variance_requires_zero_phase_and_full_filling() {
        let s = sums(&[0.3, 0.2], &[0.5, 0.0]);
        let mut input = SqueezedInput::aligned(1.0, 1.0, 2).unwrap();
        input.squeeze_phase = 0.1;
        assert!(matches!(variance_photon(&s, &input), Err(Error::NonzeroPhase { .. })));
        let input = SqueezedInput::aligned(1.0, 1.0, 1).unwrap();
        assert!(matches!(mean_photon(&s, &input), Err(Error::ModeCount { .. })));
        let input = SqueezedInput::aligned(1.0, 1.0, 3).unwrap();
        assert!(matches!(mean_photon_partial(&s, &input), Err(Error::ModeCount { .. })));
    }

    #[test]
    fn partial_reduces_to_full_bitwise() {
        let s = sums(&[0.11, 0.07, 0.02, 0.2], &[0.3, 0.1, 0.1, 0.1]);
        let input = SqueezedInput::aligned(777.0, 1.2, 4).unwrap();
        assert_eq!(mean_photon(&s, &input).unwrap(), mean_photon_partial(&s, &input).unwrap());
        assert_eq!(variance_photon(&s, &input).unwrap(), variance_photon_partial(&s, &input).unwrap());
    }

    #[test]
    fn partial_filling_examples() {
        let s = sums(&[0.3, 0.2], &[0.5, 0.0]);
        let input = SqueezedInput::aligned(10.0, 0.0, 1).unwrap();
        assert_relative_eq!(mean_photon_partial(&s, &input).unwrap(), 3.0, epsilon = 1e-12);
        assert_relative_eq!(variance_photon_partial(&s, &input).unwrap(), 3.0, epsilon = 1e-12);

        let s = sums(&[0.1, 0.4], &[0.5, 0.0]);
        let input = SqueezedInput::aligned(0.0, 1.5, 1).unwrap();
        assert_relative_eq!(mean_photon_partial(&s, &input).unwrap(), 0.453_383_1, epsilon = 1e-7);
    }

    #[test]
    fn fano_and_snr_basics() {
        let m = PhotonMoments { mean: 100.0, variance: 100.0 };
        assert_eq!(fano(&m).unwrap(), 1.0);
        assert_eq!(snr(&m).unwrap(), 100.0);
        let m = PhotonMoments { mean: 1e4, variance: 0.5e4 };
        assert_eq!(snr(&m).unwrap(), 2e4);
        assert_eq!(fano(&PhotonMoments { mean: 0.0, variance: 0.0 }), Err(Error::ZeroMean));
        assert_eq!(snr(&PhotonMoments { mean: 1.0, variance: 0.0 }), Err(Error::ZeroVariance));
    }

    #[test]
    fn bright_half_transmission_fano() {
        let s = sums(&[0.5], &[0.5]);
        let input = SqueezedInput::aligned(1e4, 1.5, 1).unwrap();
        let f = focus_moments(&s, &input).unwrap().fano().unwrap();
        // subdominant terms lift F above the bright-beam value 0.52489
        assert_relative_eq!(f, 0.527_390_06, epsilon = 1e-8);
        assert!((f - 0.52489).abs() < 3e-3, "F = {f}");
        let strong = SqueezedInput::aligned(1e12, 3.0, 1).unwrap();
        let f = focus_moments(&s, &strong).unwrap().fano().unwrap();
        assert!((f - asymptotic_avg_fano(2.0, 3.0).unwrap()).abs() < 1e-6, "F = {f}");
    }

    #[test]
    fn asymptotic_forms() {
        assert_relative_eq!(asymptotic_avg_fano(2.0, 50.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_eq!(asymptotic_avg_fano(3.0, 0.0).unwrap(), 1.0);
        assert_eq!(asymptotic_avg_snr_ratio(3.0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(asymptotic_avg_fano(6.0, 1.5).unwrap(), 0.841_63, epsilon = 1e-5);
        assert_relative_eq!(asymptotic_avg_snr_ratio(2.0, 1.5).unwrap(), 1.9052, epsilon = 1e-4);
        assert!(asymptotic_avg_fano(1.0, 1.0).is_err());
    }

    #[test]
    fn loss_channel() {
        let m = PhotonMoments { mean: 200.0, variance: 100.0 };
        assert_eq!(apply_loss(&m, &LossChannel::lossless()), m);
        let gone = apply_loss(&m, &LossChannel::new(1.0).unwrap());
        assert_eq!(gone.mean, 0.0);
        let lossy = apply_loss(&m, &LossChannel::new(0.3).unwrap());
        assert_relative_eq!(lossy.fano().unwrap(), 0.65, epsilon = 1e-14);
        assert!(LossChannel::new(1.5).is_err());
        assert!(LossChannel::new(-0.1).is_err());
    }

    #[test]
    fn photon_budget_reference_case() {
        let n = photon_budget(694e-9, 1e-3, 1e-3, 0.01).unwrap();
        assert!((n / 3.47e10 - 1.0).abs() < 0.01, "n = {n:e}");
        assert_eq!(photon_budget(694e-9, 2e-3, 1e-3, 0.01).unwrap(), 2.0 * n);
        assert!(photon_budget(694e-9, 1e-3, 0.0, 0.01).is_err());
        assert!(photon_budget(694e-9, 1e-3, 1e-3, 1.5).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn loss_law_is_affine_in_fano(mean in 1e-3f64..1e6, f in 0.01f64..3.0, q2 in 0.0f64..1.0) {
                prop_assume!(q2 < 1.0);
                let m = PhotonMoments { mean, variance: f * mean };
                let lossy = apply_loss(&m, &LossChannel::new(q2).unwrap());
                let expected = (1.0 - q2) * f + q2;
                prop_assert!((lossy.fano().unwrap() - expected).abs() < 1e-12);
            }

            #[test]
            fn asymptotic_fano_monotone(s in 1.01f64..20.0, g in 0.0f64..3.0, ds in 0.01f64..5.0, dg in 0.01f64..1.0) {
                let f = asymptotic_avg_fano(s, g).unwrap();
                prop_assert!(asymptotic_avg_fano(s, g + dg).unwrap() < f);
                prop_assert!(asymptotic_avg_fano(s + ds, g).unwrap() > f);
            }

            #[test]
            fn bright_squeezed_focus_is_sub_poissonian(
                t in proptest::collection::vec(0.01f64..1.0, 1..8),
                keep in 0.05f64..1.0,
                g in 1.0f64..2.0,
                a2 in 450.0f64..1e5,
            ) {
                let total: f64 = t.iter().sum();
                let t: Vec<f64> = t.iter().map(|x| x / total * keep).collect();
                let mut r = vec![0.0; t.len()];
                r[0] = 1.0 - keep;
                let s = sums(&t, &r);
                let input = SqueezedInput::aligned(a2, g, t.len()).unwrap();
                prop_assert!(focus_moments(&s, &input).unwrap().fano().unwrap() < 1.0);
            }
        }
    }
}
