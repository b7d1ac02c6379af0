//! Brute-force photon statistics on a truncated multimode Fock basis.
//!
//! Each fed port holds `D(alpha) S(zeta)|0>` expanded number by number; the
//! remaining ports are vacuum. The coefficient vector is completed to a
//! unitary by Gram-Schmidt and the output-mode number operators
//! `b_k = sum_j U_kj a_j` are applied directly to the product state, so
//! `<n_k> = ||b_k psi||^2` and `<n_k^2> = ||b_k^dag b_k psi||^2`.
//! Only practical for a handful of modes.

use num_complex::Complex64;

use super::ModeCoefficients;
use crate::error::{Error, Result};
use crate::quantum_stats::{PhotonMoments, SqueezedInput};

/// Largest truncated-norm deficit accepted before moments are trusted.
pub const TRUNCATION_TOLERANCE: f64 = 1e-10;
/// Upper bound on the per-mode cutoff.
pub const MAX_CUTOFF: usize = 256;
/// Upper bound on the number of modes.
pub const MAX_MODES: usize = 3;

/// Fock amplitudes `<n|D(alpha) S(zeta)|0>` for `n = 0..=cutoff`, and the
/// probability mass lost above the cutoff.
///
/// Uses the annihilation-type eigen-relation of the state,
/// `[(a - alpha) cosh g + (a^dag - alpha^*) e^{i phi_s} sinh g] psi = 0`,
/// as a three-term recurrence seeded by the exact vacuum overlap.
pub fn squeezed_coherent_amplitudes(input: &SqueezedInput, cutoff: usize) -> (Vec<Complex64>, f64) {
    let g = input.squeeze;
    let (ch, sh, th) = (g.cosh(), g.sinh(), g.tanh());
    let alpha = Complex64::from_polar(input.alpha_mag, input.alpha_phase);
    let rot = Complex64::from_polar(1.0, input.squeeze_phase);
    let gamma = alpha * ch + alpha.conj() * rot * sh;

    let mut psi = Vec::with_capacity(cutoff + 1);
    let log0 = -0.5 * alpha.norm_sqr() - 0.5 * alpha.conj().powi(2) * rot * th;
    psi.push(log0.exp() / ch.sqrt());
    for n in 0..cutoff {
        let prev = if n == 0 { Complex64::new(0.0, 0.0) } else { psi[n - 1] };
        let next = (gamma * psi[n] - rot * sh * (n as f64).sqrt() * prev) / (ch * ((n + 1) as f64).sqrt());
        psi.push(next);
    }
    let kept: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
    (psi, (1.0 - kept).max(0.0))
}

/// Rows of a unitary whose first row is `coeffs`, completed by Gram-Schmidt
/// against the standard basis.
pub fn complete_unitary(coeffs: &ModeCoefficients) -> Vec<Vec<Complex64>> {
    let k = coeffs.len();
    let mut rows: Vec<Vec<Complex64>> = vec![coeffs.coeffs.clone()];
    for e in 0..k {
        if rows.len() == k {
            break;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); k];
        v[e] = Complex64::new(1.0, 0.0);
        // two passes keep the completed rows orthogonal to rounding level
        for _ in 0..2 {
            for row in &rows {
                let overlap: Complex64 = row.iter().zip(&v).map(|(r, x)| r.conj() * x).sum();
                v.iter_mut().zip(row).for_each(|(x, r)| *x -= overlap * r);
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            rows.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    rows
}

/// Dense state on a product of truncated single-mode spaces.
struct FockTensor {
    dims: Vec<usize>,
    strides: Vec<usize>,
    data: Vec<Complex64>,
}

impl FockTensor {
    fn zeros(dims: &[usize]) -> Self {
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        Self {
            dims: dims.to_vec(),
            strides,
            data: vec![Complex64::new(0.0, 0.0); dims.iter().product()],
        }
    }

    fn product(modes: &[Vec<Complex64>], dims: &[usize]) -> Self {
        let mut t = Self::zeros(dims);
        for idx in 0..t.data.len() {
            let mut amp = Complex64::new(1.0, 0.0);
            for (k, mode) in modes.iter().enumerate() {
                let n = (idx / t.strides[k]) % t.dims[k];
                amp *= mode.get(n).copied().unwrap_or_default();
            }
            t.data[idx] = amp;
        }
        t
    }

    fn occupation(&self, idx: usize, mode: usize) -> usize {
        (idx / self.strides[mode]) % self.dims[mode]
    }

    /// `out += c * a_mode psi`
    fn add_lowered(&self, mode: usize, c: Complex64, out: &mut FockTensor) {
        let stride = self.strides[mode];
        for idx in 0..self.data.len() {
            let n = self.occupation(idx, mode);
            if n + 1 < self.dims[mode] {
                out.data[idx] += c * ((n + 1) as f64).sqrt() * self.data[idx + stride];
            }
        }
    }

    /// `out += c * a_mode^dag psi`
    fn add_raised(&self, mode: usize, c: Complex64, out: &mut FockTensor) {
        let stride = self.strides[mode];
        for idx in 0..self.data.len() {
            let n = self.occupation(idx, mode);
            if n > 0 {
                out.data[idx] += c * (n as f64).sqrt() * self.data[idx - stride];
            }
        }
    }

    fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }
}

fn prepare(coeffs: &ModeCoefficients, input: &SqueezedInput, cutoff: usize) -> Result<FockTensor> {
    input.validate()?;
    let k = coeffs.len();
    if k > MAX_MODES {
        return Err(Error::invalid("coeffs", format!("at most {MAX_MODES} modes, got {k}")));
    }
    if input.fed_modes > k {
        return Err(Error::ModeCount {
            fed: input.fed_modes,
            channels: k,
        });
    }
    if cutoff == 0 || cutoff > MAX_CUTOFF {
        return Err(Error::invalid("cutoff", format!("must lie in 1..={MAX_CUTOFF}")));
    }

    let (mut fed, deficit) = squeezed_coherent_amplitudes(input, cutoff);
    if deficit > TRUNCATION_TOLERANCE {
        return Err(Error::Truncation {
            deficit,
            tolerance: TRUNCATION_TOLERANCE,
        });
    }
    let kept = (1.0 - deficit).sqrt();
    fed.iter_mut().for_each(|c| *c /= kept);

    let vacuum = vec![Complex64::new(1.0, 0.0)];
    let modes: Vec<Vec<Complex64>> = (0..k)
        .map(|j| if j < input.fed_modes { fed.clone() } else { vacuum.clone() })
        .collect();
    // one spare level per mode so a single creation operator never truncates
    let dims: Vec<usize> = modes.iter().map(|m| m.len() + 1).collect();
    Ok(FockTensor::product(&modes, &dims))
}

fn output_moments(psi: &FockTensor, row: &[Complex64]) -> PhotonMoments {
    let mut lowered = FockTensor::zeros(&psi.dims);
    for (j, &c) in row.iter().enumerate() {
        psi.add_lowered(j, c, &mut lowered);
    }
    let mut number = FockTensor::zeros(&psi.dims);
    for (j, &c) in row.iter().enumerate() {
        lowered.add_raised(j, c.conj(), &mut number);
    }
    let mean = lowered.norm_sqr();
    PhotonMoments {
        mean,
        variance: number.norm_sqr() - mean * mean,
    }
}

/// Focus-mode photon moments for `input.fed_modes` squeezed-coherent ports
/// followed by vacuum ports, weighted by `coeffs`.
pub fn fock_photon_moments(coeffs: &ModeCoefficients, input: &SqueezedInput, cutoff: usize) -> Result<PhotonMoments> {
    let psi = prepare(coeffs, input, cutoff)?;
    let unitary = complete_unitary(coeffs);
    Ok(output_moments(&psi, &unitary[0]))
}

/// Mean photon number in every output mode of the completed unitary. Their
/// sum equals the total input photon number.
pub fn fock_output_means(coeffs: &ModeCoefficients, input: &SqueezedInput, cutoff: usize) -> Result<Vec<f64>> {
    let psi = prepare(coeffs, input, cutoff)?;
    Ok(complete_unitary(coeffs)
        .iter()
        .map(|row| output_moments(&psi, row).mean)
        .collect())
}
