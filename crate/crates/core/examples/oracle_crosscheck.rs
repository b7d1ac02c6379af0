//! Cross-checks the closed forms against the covariance-matrix engine and a
//! truncated Fock-space simulation.

use num_complex::Complex64;
use speckle::gaussian_oracle::{
    fock_photon_moments, gaussian_photon_moments, oracle_check, output_gaussian_state, GaussianModeState,
    ModeCoefficients,
};
use speckle::quantum_stats::{focus_moments, SqueezedInput};
use speckle::random_media::{coupling_sums, sample_realization, DisorderParams};

fn main() -> speckle::Result<()> {
    let report = oracle_check(500, 7)?;
    let w = report.worst;
    println!(
        "500 random cases, worst relative error {:.2e} (M = {}, N = {}, g = {:.3}, alpha2 = {:.0})",
        w.rel_err, w.channels, w.fed, w.squeeze, w.alpha2
    );

    // two channels, one fed: small enough for a Fock tensor
    let real = sample_realization(&DisorderParams::new(2, 3.0)?, 5)?;
    let input = SqueezedInput::aligned(2.0, 0.4, 1)?;
    let closed = focus_moments(&coupling_sums(&real), &input)?;
    let gaussian = gaussian_photon_moments(&output_gaussian_state(&real, &input, 1)?)?;
    let fock = fock_photon_moments(&ModeCoefficients::shaped_merged(&real, 1)?, &input, 40)?;
    for (name, m) in [("closed form", closed), ("covariance", gaussian), ("Fock", fock)] {
        println!("{name:>12}: <n> = {:.12}  Var = {:.12}", m.mean, m.variance);
    }

    // a phase-squeezed input leaves the closed forms and is handled by the oracle only
    let phase = SqueezedInput {
        squeeze_phase: std::f64::consts::PI,
        ..input
    };
    let coeffs = ModeCoefficients::shaped_merged(&real, 1)?;
    let m = fock_photon_moments(&coeffs, &phase, 40)?;
    println!("phase-squeezed input: F = {:.4}", m.fano()?);

    let coherent = GaussianModeState::coherent(Complex64::new(3.0, 0.0)).through_beam_splitter(0.5);
    println!("coherent state after 50% loss: F = {:.12}", gaussian_photon_moments(&coherent)?.fano()?);
    Ok(())
}
