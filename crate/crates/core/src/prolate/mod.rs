//! Prolate spheroidal (Slepian) functions and super-resolved point-spread
//! functions.
//!
//! The functions `phi_k` solve
//!
//! ```text
//! int_{-1}^{1} sin(c(z - z')) / (pi (z - z')) phi_k(z') dz' = lambda_k phi_k(z)
//! ```
//!
//! normalized to `int_{-1}^{1} phi_k^2 = 1` and taken to vanish outside
//! `[-1, 1]`. They are computed by the Nystrom method on Gauss-Legendre nodes.
//! The sinc kernel commutes with reflection `z -> -z`, so the even and odd
//! sectors are diagonalized separately: parity is then exact, and the tiny
//! eigenvalues of each sector sit above a noise floor set by that sector's
//! norm rather than by `lambda_0`.

mod quadrature;

use std::f64::consts::PI;
use std::io::Write;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};

pub use quadrature::{barycentric_eval, barycentric_weights, gauss_legendre};

/// Maximum eigenvalue shift tolerated when the quadrature order is doubled.
pub const SELF_CONVERGENCE_TOLERANCE: f64 = 1e-9;
/// Eigenvalues at or below this are indistinguishable from rounding noise in
/// either parity sector and are refused by [`build_basis`].
pub const RESOLUTION_FLOOR: f64 = 1e-14;
/// Grid step used to bracket half-maximum crossings.
pub const HALF_WIDTH_STEP: f64 = 1e-3;

/// `sin(c(z - z')) / (pi (z - z'))`, with the removable singularity filled in.
pub fn sinc_kernel(c: f64, z: f64, zp: f64) -> f64 {
    let d = z - zp;
    if d == 0.0 {
        c / PI
    } else {
        (c * d).sin() / (PI * d)
    }
}

/// Classical diffraction-limited point-spread function `sin(cz)/(pi z)`.
pub fn classical_psf(c: f64, z: f64) -> f64 {
    sinc_kernel(c, z, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Parity {
    Even,
    Odd,
}

struct SectorMode {
    lambda: f64,
    parity: Parity,
    /// Values on the positive half of the grid.
    half: Vec<f64>,
}

/// Diagonalizes one parity sector of the Nystrom matrix
/// `sqrt(w_i) K(x_i, x_j) sqrt(w_j)` on the positive nodes.
fn solve_sector(c: f64, pos: &[f64], w: &[f64], parity: Parity, with_vectors: bool) -> Vec<SectorMode> {
    let h = pos.len();
    let sign = match parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    };
    let mat = DMatrix::from_fn(h, h, |i, j| {
        let k = sinc_kernel(c, pos[i], pos[j]) + sign * sinc_kernel(c, pos[i], -pos[j]);
        (w[i] * w[j]).sqrt() * k
    });
    let mat = (&mat + mat.transpose()) * 0.5;
    if !with_vectors {
        return mat
            .symmetric_eigenvalues()
            .iter()
            .map(|&lambda| SectorMode {
                lambda,
                parity,
                half: Vec::new(),
            })
            .collect();
    }
    let eig = SymmetricEigen::new(mat);
    (0..h)
        .map(|k| {
            let v = eig.eigenvectors.column(k);
            // full-grid vector is (+-v, v)/sqrt 2; phi = u / sqrt(w)
            let half = (0..h).map(|i| v[i] / (2.0 * w[i]).sqrt()).collect();
            SectorMode {
                lambda: eig.eigenvalues[k],
                parity,
                half,
            }
        })
        .collect()
}

/// Full nodes and weights, then the positive half of each.
type SplitGrid = (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>);

fn split_grid(quad_order: usize) -> Result<SplitGrid> {
    if quad_order < 8 || !quad_order.is_multiple_of(2) {
        return Err(Error::invalid("quad_order", format!("must be even and >= 8, got {quad_order}")));
    }
    let (nodes, weights) = gauss_legendre(quad_order);
    let h = quad_order / 2;
    let pos = nodes[h..].to_vec();
    let pos_w = weights[h..].to_vec();
    Ok((nodes, weights, pos, pos_w))
}

fn check_bandwidth(c: f64) -> Result<()> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::invalid("bandwidth", format!("c must be finite and > 0, got {c}")));
    }
    Ok(())
}

fn sorted_modes(c: f64, quad_order: usize, with_vectors: bool) -> Result<(Vec<f64>, Vec<f64>, Vec<SectorMode>)> {
    check_bandwidth(c)?;
    let (nodes, weights, pos, pos_w) = split_grid(quad_order)?;
    let mut modes = solve_sector(c, &pos, &pos_w, Parity::Even, with_vectors);
    modes.extend(solve_sector(c, &pos, &pos_w, Parity::Odd, with_vectors));
    modes.sort_by(|a, b| b.lambda.total_cmp(&a.lambda));
    Ok((nodes, weights, modes))
}

/// Every Nystrom eigenvalue at the given quadrature order, descending.
/// Values near `1e-16` and below are rounding noise.
pub fn full_spectrum(c: f64, quad_order: usize) -> Result<Vec<f64>> {
    Ok(sorted_modes(c, quad_order, false)?.2.into_iter().map(|m| m.lambda).collect())
}

/// Number of eigenvalues above `floor`; useful for picking `K`.
pub fn resolved_count(c: f64, quad_order: usize, floor: f64) -> Result<usize> {
    Ok(full_spectrum(c, quad_order)?.iter().take_while(|&&l| l > floor).count())
}

/// Leading `K` prolate eigenpairs sampled on a Gauss-Legendre grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ProlateBasis {
    pub bandwidth: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub lambda: Vec<f64>,
    /// `phi[k][i] = phi_k(nodes[i])`
    pub phi: Vec<Vec<f64>>,
    bary: Vec<f64>,
}

/// Builds the leading `k` eigenpairs and certifies them against a solve at
/// twice the quadrature order.
pub fn build_basis(c: f64, k: usize, quad_order: usize) -> Result<ProlateBasis> {
    if k == 0 || k > quad_order / 4 {
        return Err(Error::invalid("K", format!("need 1 <= K <= quad_order/4 = {}", quad_order / 4)));
    }
    let (nodes, weights, modes) = sorted_modes(c, quad_order, true)?;
    let bary = barycentric_weights(&nodes, &weights);
    let h = quad_order / 2;

    let mut lambda = Vec::with_capacity(k);
    let mut phi = Vec::with_capacity(k);
    for (index, mode) in modes.into_iter().take(k).enumerate() {
        let prev = lambda.last().copied().unwrap_or(1.0);
        if !(mode.lambda > RESOLUTION_FLOOR && mode.lambda < prev) {
            return Err(Error::Unresolved {
                index,
                value: mode.lambda,
            });
        }
        let sign = match mode.parity {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        };
        let mut full = vec![0.0; quad_order];
        for (i, v) in mode.half.iter().enumerate() {
            full[h + i] = *v;
            full[h - 1 - i] = sign * v;
        }
        // phi_k(0) > 0 for even k, phi_k'(0) > 0 for odd k
        let orient = match mode.parity {
            Parity::Even => barycentric_eval(&nodes, &bary, &full, 0.0),
            Parity::Odd => full[h],
        };
        if orient < 0.0 {
            full.iter_mut().for_each(|v| *v = -*v);
        }
        lambda.push(mode.lambda);
        phi.push(full);
    }

    let refined = full_spectrum(c, 2 * quad_order)?;
    for (index, (a, b)) in lambda.iter().zip(&refined).enumerate() {
        let shift = (a - b).abs();
        if shift > SELF_CONVERGENCE_TOLERANCE {
            return Err(Error::Convergence { index, shift });
        }
    }

    Ok(ProlateBasis {
        bandwidth: c,
        nodes,
        weights,
        lambda,
        phi,
        bary,
    })
}

impl ProlateBasis {
    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// `phi_k(z)`, zero outside `[-1, 1]`.
    pub fn eval(&self, k: usize, z: f64) -> f64 {
        if z.abs() > 1.0 {
            return 0.0;
        }
        if k % 2 == 1 && z == 0.0 {
            return 0.0;
        }
        barycentric_eval(&self.nodes, &self.bary, &self.phi[k], z)
    }

    /// `max |<phi_j, phi_k> - delta_jk|` under the quadrature inner product.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.len() {
            for k in 0..=j {
                let ip: f64 = self
                    .weights
                    .iter()
                    .zip(&self.phi[j])
                    .zip(&self.phi[k])
                    .map(|((w, a), b)| w * a * b)
                    .sum();
                let target = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((ip - target).abs());
            }
        }
        worst
    }

    /// Sign changes of `phi_k` across the grid.
    pub fn sign_changes(&self, k: usize) -> usize {
        self.phi[k]
            .iter()
            .filter(|v| **v != 0.0)
            .collect::<Vec<_>>()
            .windows(2)
            .filter(|p| p[0].signum() != p[1].signum())
            .count()
    }

    /// `sup_{i,j} |sum_k lambda_k phi_k(z_i) phi_k(z_j) - K(z_i, z_j)|`.
    pub fn kernel_reconstruction_error(&self) -> f64 {
        let n = self.nodes.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let approx: f64 = (0..self.len()).map(|k| self.lambda[k] * self.phi[k][i] * self.phi[k][j]).sum();
                let exact = sinc_kernel(self.bandwidth, self.nodes[i], self.nodes[j]);
                worst = worst.max((approx - exact).abs());
            }
        }
        worst
    }
}

/// `h^(r)(0, z) = sum_{k<Q} phi_k(0) phi_k(z)` for a point source at the origin.
pub fn reconstruction_psf(basis: &ProlateBasis, q: usize, z: f64) -> Result<f64> {
    check_q(basis, q)?;
    Ok((0..q).step_by(2).map(|k| basis.eval(k, 0.0) * basis.eval(k, z)).sum())
}

fn check_q(basis: &ProlateBasis, q: usize) -> Result<()> {
    if q == 0 || q > basis.len() {
        return Err(Error::invalid("Q", format!("need 1 <= Q <= K = {}, got {q}", basis.len())));
    }
    Ok(())
}

/// Sampled point-spread function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsfCurve {
    pub z: Vec<f64>,
    pub values: Vec<f64>,
}

impl PsfCurve {
    pub fn sample(profile: impl Fn(f64) -> f64, z_min: f64, z_max: f64, points: usize) -> Self {
        let points = points.max(2);
        let step = (z_max - z_min) / (points - 1) as f64;
        let z: Vec<f64> = (0..points).map(|i| z_min + step * i as f64).collect();
        let values = z.iter().map(|&z| profile(z)).collect();
        Self { z, values }
    }

    /// Value at the sample closest to `z = 0`.
    pub fn peak(&self) -> f64 {
        let i = self
            .z
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        self.values[i]
    }
}

/// Smallest `z > 0` where `profile` drops to half of `profile(0)`.
///
/// Brackets the crossing on a grid of step [`HALF_WIDTH_STEP`] and refines by
/// bisection to well below `1e-6`.
pub fn half_width(profile: impl Fn(f64) -> f64, z_max: f64) -> Result<f64> {
    let peak = profile(0.0);
    if !(peak > 0.0) {
        return Err(Error::invalid("profile", format!("peak at z = 0 must be positive, got {peak}")));
    }
    let half = 0.5 * peak;
    let steps = (z_max / HALF_WIDTH_STEP).ceil() as usize;
    let mut lo = 0.0;
    let mut hi = None;
    for i in 1..=steps {
        let z = (i as f64 * HALF_WIDTH_STEP).min(z_max);
        if profile(z) <= half {
            hi = Some(z);
            break;
        }
        lo = z;
    }
    let mut hi = hi.ok_or(Error::NoCrossing { z_max })?;
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if profile(mid) <= half {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Half-width at half maximum of the classical PSF.
pub fn classical_half_width(c: f64) -> Result<f64> {
    check_bandwidth(c)?;
    half_width(|z| classical_psf(c, z), PI / c)
}

/// Half-width at half maximum of the reconstruction PSF with `q` modes.
pub fn reconstruction_half_width(basis: &ProlateBasis, q: usize) -> Result<f64> {
    check_q(basis, q)?;
    half_width(|z| reconstruction_psf(basis, q, z).unwrap_or(0.0), 1.0 + 2.0 * HALF_WIDTH_STEP)
}

/// Prolate coefficients of a top-hat illumination of width `epsilon` centred
/// at the origin carrying `budget` photons: `a_k = sqrt(S eps) phi_k(0)`.
pub fn point_object_coeffs(basis: &ProlateBasis, budget: f64, epsilon: f64) -> Result<Vec<f64>> {
    if !(budget >= 0.0) || !budget.is_finite() {
        return Err(Error::invalid("budget", format!("must be finite and >= 0, got {budget}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid("epsilon", format!("must lie in (0, 1), got {epsilon}")));
    }
    let amp = (budget * epsilon).sqrt();
    Ok((0..basis.len())
        .map(|k| if k % 2 == 1 { 0.0 } else { amp * basis.eval(k, 0.0) })
        .collect())
}

/// `R^(r) = (sum_{k<Q} a_k^2)^2 / sum_{k<Q} a_k^2 / lambda_k`.
pub fn reconstruction_snr(basis: &ProlateBasis, coeffs: &[f64], q: usize) -> Result<f64> {
    check_q(basis, q)?;
    if coeffs.len() < q {
        return Err(Error::invalid("coeffs", format!("need at least Q = {q} coefficients")));
    }
    let signal: f64 = coeffs[..q].iter().map(|a| a * a).sum();
    if signal == 0.0 {
        return Err(Error::AllZero { q });
    }
    let noise: f64 = coeffs[..q].iter().zip(&basis.lambda).map(|(a, l)| a * a / l).sum();
    Ok(signal * signal / noise)
}

/// Largest `Q <= K` whose reconstruction SNR is at least one.
pub fn choose_q(basis: &ProlateBasis, coeffs: &[f64]) -> Result<usize> {
    let first = match reconstruction_snr(basis, coeffs, 1) {
        Ok(r) => r,
        Err(Error::AllZero { .. }) => 0.0,
        Err(e) => return Err(e),
    };
    if first < 1.0 {
        return Err(Error::TooDim { snr: first });
    }
    let mut best = 1;
    for q in 2..=basis.len() {
        if reconstruction_snr(basis, coeffs, q)? >= 1.0 {
            best = q;
        }
    }
    Ok(best)
}

/// Classical and reconstruction half-widths at a fixed mode count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Resolution {
    pub q: usize,
    pub w: f64,
    pub w_q: f64,
    pub j: f64,
}

pub fn resolution_at(basis: &ProlateBasis, q: usize) -> Result<Resolution> {
    let w = classical_half_width(basis.bandwidth)?;
    let w_q = reconstruction_half_width(basis, q)?;
    Ok(Resolution { q, w, w_q, j: w / w_q })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReconstructionReport {
    pub q: usize,
    pub w: f64,
    pub w_q: f64,
    pub j: f64,
    /// Reconstruction SNR at the chosen `Q`.
    pub snr: f64,
}

/// Super-resolution factor `J = W / W_Q` for a point object lit by `budget`
/// photons' worth of illumination SNR.
pub fn superres_factor(basis: &ProlateBasis, budget: f64, epsilon: f64) -> Result<ReconstructionReport> {
    let coeffs = point_object_coeffs(basis, budget, epsilon)?;
    let q = choose_q(basis, &coeffs)?;
    let res = resolution_at(basis, q)?;
    Ok(ReconstructionReport {
        q,
        w: res.w,
        w_q: res.w_q,
        j: res.j,
        snr: reconstruction_snr(basis, &coeffs, q)?,
    })
}

/// Writes the basis as text: a `#` header with `c`, `K` and the eigenvalues,
/// a column header, then one row per grid node `z,weight,phi_0,...`.
pub fn write_basis<W: Write>(basis: &ProlateBasis, mut out: W) -> std::io::Result<()> {
    let lambdas: Vec<String> = basis.lambda.iter().map(|l| format!("{l:?}")).collect();
    writeln!(out, "# c={} K={} lambda={}", basis.bandwidth, basis.len(), lambdas.join(","))?;
    let cols: Vec<String> = (0..basis.len()).map(|k| format!("phi_{k}")).collect();
    writeln!(out, "z,weight,{}", cols.join(","))?;
    for (i, (z, w)) in basis.nodes.iter().zip(&basis.weights).enumerate() {
        let vals: Vec<String> = basis.phi.iter().map(|p| format!("{:?}", p[i])).collect();
        writeln!(out, "{z:?},{w:?},{}", vals.join(","))?;
    }
    Ok(())
}
