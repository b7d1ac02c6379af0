//! Seeded Monte Carlo sweeps over disorder realizations.
//!
//! Trial `i` always draws its realization from `trial_seed(master, i)`, so
//! every axis value of a sweep sees the same disorder (common random numbers)
//! unless the axis changes the disorder strength itself. Trials run on a rayon
//! pool and are collected in index order; every reduction is a sequential sum
//! over that order, which makes summaries bitwise independent of the worker
//! count.
//!
//! The ensemble Fano factor `F` reported here is the mean of the per-trial
//! Fano factors, and the SNR ratio is `R / <n> = 1 / F`. The ratio of mean
//! variance to mean photon number is kept as `fano_ratio_of_means`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::prolate::{self, ProlateBasis};
use crate::quantum_stats::{apply_loss, focus_moments, LossChannel, PhotonMoments, SqueezedInput};
use crate::random_media::{coupling_sums, sample_realization, trial_seed, CouplingSums, DisorderParams};
use crate::stats::mean_stderr;

/// Parameter swept by [`run_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    SqueezeG,
    DisorderS,
    /// `N / M`, rounded to the nearest whole number of fed channels.
    ModeFillRatio,
    /// `|q|^2`
    LossRate,
    /// `|alpha|^2 / (|alpha|^2 + sinh^2 g)` at fixed `g`.
    CoherentFraction,
    /// Coherent photons per fed channel, `|alpha|^2`.
    PhotonBudget,
}

/// Everything a sweep holds fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleConfig {
    pub channels: usize,
    pub fed_modes: usize,
    pub disorder: f64,
    pub squeeze: f64,
    pub alpha2: f64,
    pub loss_rate: f64,
    pub trials: usize,
    pub seed: u64,
    /// Size of the rayon pool; `None` uses the global pool.
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        Self {
            channels: 50,
            fed_modes: 50,
            disorder: 2.0,
            squeeze: 1.5,
            alpha2: 1e4,
            loss_rate: 0.0,
            trials: 1000,
            seed: 1,
            workers: None,
        }
    }
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<()> {
        DisorderParams::new(self.channels, self.disorder)?;
        SqueezedInput::aligned(self.alpha2, self.squeeze, self.fed_modes)?;
        LossChannel::new(self.loss_rate)?;
        if self.fed_modes > self.channels {
            return Err(Error::ModeCount {
                fed: self.fed_modes,
                channels: self.channels,
            });
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials", "need at least one trial"));
        }
        if self.workers == Some(0) {
            return Err(Error::invalid("workers", "need at least one worker"));
        }
        Ok(())
    }

    fn disorder_params(&self) -> Result<DisorderParams> {
        DisorderParams::new(self.channels, self.disorder)
    }

    fn input(&self) -> Result<SqueezedInput> {
        SqueezedInput::aligned(self.alpha2, self.squeeze, self.fed_modes)
    }

    /// Copy of `self` with `axis` set to `value`.
    pub fn with_axis(&self, axis: Axis, value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::invalid("axis_values", format!("{value} is not finite")));
        }
        let mut cfg = *self;
        match axis {
            Axis::SqueezeG => cfg.squeeze = value,
            Axis::DisorderS => cfg.disorder = value,
            Axis::ModeFillRatio => {
                let n = (value * self.channels as f64).round();
                if !(n >= 1.0 && n <= self.channels as f64) {
                    return Err(Error::invalid(
                        "mode_fill_ratio",
                        format!("N/M = {value} gives no whole channel count in 1..={}", self.channels),
                    ));
                }
                cfg.fed_modes = n as usize;
            }
            Axis::LossRate => cfg.loss_rate = value,
            Axis::CoherentFraction => {
                let sh2 = self.squeeze.sinh().powi(2);
                if !(0.0..1.0).contains(&value) || sh2 == 0.0 {
                    return Err(Error::invalid(
                        "coherent_fraction",
                        format!("need 0 <= fraction < 1 and g > 0, got {value} at g = {}", self.squeeze),
                    ));
                }
                cfg.alpha2 = value * sh2 / (1.0 - value);
            }
            Axis::PhotonBudget => cfg.alpha2 = value,
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// A sweep: one axis, its values, and the fixed configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub axis: Axis,
    pub axis_values: Vec<f64>,
    pub fixed: EnsembleConfig,
}

/// Ensemble statistics at one axis value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummaryRow {
    pub axis_value: f64,
    pub mean_n: f64,
    pub stderr_n: f64,
    pub mean_variance: f64,
    /// Mean of the per-trial Fano factors.
    pub fano: f64,
    pub stderr_fano: f64,
    /// Mean variance over mean photon number.
    pub fano_ratio_of_means: f64,
    /// `1 / fano`
    pub snr_ratio: f64,
    pub stderr_snr: f64,
    pub trials: usize,
}

/// Per-trial result of [`run_fano_scatter`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialFano {
    pub trial: usize,
    pub seed: u64,
    pub mean_n: f64,
    pub variance: f64,
    pub fano: f64,
}

fn in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::invalid("workers", e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn sample_sums(cfg: &EnsembleConfig) -> Result<Vec<CouplingSums>> {
    let params = cfg.disorder_params()?;
    let seed = cfg.seed;
    in_pool(cfg.workers, || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| sample_realization(&params, trial_seed(seed, i as u64)).map(|r| coupling_sums(&r)))
            .collect::<Result<Vec<_>>>()
    })?
}

/// Lossy moments and Fano factor of every trial. The Fano factor goes through
/// `|p|^2 F + |q|^2`, which stays defined at total loss where the mean vanishes.
fn trial_moments(sums: &[CouplingSums], cfg: &EnsembleConfig) -> Result<Vec<(PhotonMoments, f64)>> {
    let input = cfg.input()?;
    let loss = LossChannel::new(cfg.loss_rate)?;
    sums.iter()
        .map(|s| {
            let m = focus_moments(s, &input)?;
            let f = loss.transmittance() * m.fano()? + loss.loss_rate;
            Ok((apply_loss(&m, &loss), f))
        })
        .collect()
}

fn summarize(axis_value: f64, trials: &[(PhotonMoments, f64)]) -> Result<SummaryRow> {
    let means: Vec<f64> = trials.iter().map(|(m, _)| m.mean).collect();
    let variances: Vec<f64> = trials.iter().map(|(m, _)| m.variance).collect();
    let fanos: Vec<f64> = trials.iter().map(|(_, f)| *f).collect();
    let (mean_n, stderr_n) = mean_stderr(&means);
    let (mean_variance, _) = mean_stderr(&variances);
    let (fano, stderr_fano) = mean_stderr(&fanos);
    Ok(SummaryRow {
        axis_value,
        mean_n,
        stderr_n,
        mean_variance,
        fano,
        stderr_fano,
        fano_ratio_of_means: mean_variance / mean_n,
        snr_ratio: 1.0 / fano,
        stderr_snr: stderr_fano / (fano * fano),
        trials: trials.len(),
    })
}

/// Exact per-trial Fano factors of the shaped focus.
pub fn run_fano_scatter(cfg: &EnsembleConfig) -> Result<Vec<TrialFano>> {
    cfg.validate()?;
    let sums = sample_sums(cfg)?;
    let trials = trial_moments(&sums, cfg)?;
    Ok(trials
        .iter()
        .enumerate()
        .map(|(i, (m, f))| TrialFano {
            trial: i,
            seed: trial_seed(cfg.seed, i as u64),
            mean_n: m.mean,
            variance: m.variance,
            fano: *f,
        })
        .collect())
}

/// Ensemble summary at every axis value.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SummaryRow>> {
    spec.fixed.validate()?;
    if spec.axis_values.is_empty() {
        return Err(Error::invalid("axis_values", "need at least one value"));
    }
    let configs = spec
        .axis_values
        .iter()
        .map(|&v| spec.fixed.with_axis(spec.axis, v))
        .collect::<Result<Vec<_>>>()?;

    let shared = match spec.axis {
        Axis::DisorderS => None,
        _ => Some(sample_sums(&spec.fixed)?),
    };
    let mut rows = Vec::with_capacity(configs.len());
    for (cfg, &value) in configs.iter().zip(&spec.axis_values) {
        let resampled;
        let sums = match &shared {
            Some(sums) => sums,
            None => {
                resampled = sample_sums(cfg)?;
                &resampled
            }
        };
        rows.push(summarize(value, &trial_moments(sums, cfg)?)?);
    }
    Ok(rows)
}

/// One loss sweep per squeezing strength.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LossCurve {
    pub squeeze: f64,
    pub rows: Vec<SummaryRow>,
}

/// `R / <n_L>` against `|q|^2` for each `g`, all on the same realizations.
pub fn run_loss_sweep(g_list: &[f64], loss_grid: &[f64], fixed: &EnsembleConfig) -> Result<Vec<LossCurve>> {
    if g_list.is_empty() {
        return Err(Error::invalid("g", "need at least one squeezing value"));
    }
    g_list
        .iter()
        .map(|&g| {
            let spec = SweepSpec {
                axis: Axis::LossRate,
                axis_values: loss_grid.to_vec(),
                fixed: EnsembleConfig { squeeze: g, ..*fixed },
            };
            Ok(LossCurve {
                squeeze: g,
                rows: run_sweep(&spec)?,
            })
        })
        .collect()
}

/// Which illumination a super-resolution row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Illumination {
    Coherent,
    Squeezed { disorder: f64 },
}

impl std::fmt::Display for Illumination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Illumination::Coherent => write!(f, "coherent"),
            Illumination::Squeezed { disorder } => write!(f, "{disorder}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuperresRow {
    pub illumination: Illumination,
    /// Mean photon number at the focus.
    pub mean_n: f64,
    /// Illumination SNR handed to the prolate reconstruction.
    pub budget: f64,
    pub q: usize,
    pub w: f64,
    pub w_q: f64,
    pub j: f64,
}

/// Settings of the prolate reconstruction used by [`run_superres_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuperresConfig {
    pub bandwidth: f64,
    pub epsilon: f64,
    pub quad_order: usize,
}

impl Default for SuperresConfig {
    fn default() -> Self {
        Self {
            bandwidth: 1.0,
            epsilon: 0.01,
            quad_order: 256,
        }
    }
}

/// Largest basis the quadrature can certify for bandwidth `c`.
pub fn default_basis(cfg: &SuperresConfig) -> Result<ProlateBasis> {
    let k = prolate::resolved_count(cfg.bandwidth, cfg.quad_order, prolate::RESOLUTION_FLOOR)?.min(cfg.quad_order / 4);
    prolate::build_basis(cfg.bandwidth, k.max(1), cfg.quad_order)
}

/// Super-resolution factor against mean photon number: a coherent baseline
/// with illumination SNR `S = <n>`, then one curve per disorder strength with
/// `S = <n> / F` and `F` the ensemble Fano factor at `fixed`.
pub fn run_superres_sweep(
    disorders: &[f64],
    mean_photons: &[f64],
    fixed: &EnsembleConfig,
    recon: &SuperresConfig,
) -> Result<Vec<SuperresRow>> {
    if mean_photons.is_empty() {
        return Err(Error::invalid("budgets", "need at least one photon number"));
    }
    let fano = run_sweep(&SweepSpec {
        axis: Axis::DisorderS,
        axis_values: disorders.to_vec(),
        fixed: *fixed,
    })?;
    let basis = default_basis(recon)?;

    let mut curves = vec![(Illumination::Coherent, 1.0)];
    curves.extend(
        fano.iter()
            .map(|row| (Illumination::Squeezed { disorder: row.axis_value }, row.fano)),
    );
    let mut rows = Vec::with_capacity(curves.len() * mean_photons.len());
    for (illumination, f) in curves {
        for &n in mean_photons {
            let budget = n / f;
            let report = prolate::superres_factor(&basis, budget, recon.epsilon)?;
            rows.push(SuperresRow {
                illumination,
                mean_n: n,
                budget,
                q: report.q,
                w: report.w,
                w_q: report.w_q,
                j: report.j,
            });
        }
    }
    Ok(rows)
}
