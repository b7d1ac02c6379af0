//! Reconstruction point-spread functions and the super-resolution factor
//! reachable with coherent and squeezed illumination.

use speckle::ensemble::{default_basis, run_superres_sweep, EnsembleConfig, Illumination, SuperresConfig};
use speckle::prolate::{classical_psf, reconstruction_psf, resolution_at};

fn main() -> speckle::Result<()> {
    let recon = SuperresConfig::default();
    let basis = default_basis(&recon)?;
    for q in (1..=basis.len()).step_by(2) {
        let r = resolution_at(&basis, q)?;
        println!("Q = {q}: W = {:.4}, W_Q = {:.4}, J = {:.3}", r.w, r.w_q, r.j);
    }
    println!("\n   z   classical  Q=7");
    for i in 0..=8 {
        let z = 0.125 * i as f64;
        println!("{z:.3}  {:>9.5}  {:>8.5}", classical_psf(1.0, z), reconstruction_psf(&basis, 7, z)?);
    }

    let photons = [1e6, 1e8, 2e8, 3e8, 4e8, 6e8, 8e8, 1e9, 3.5e10];
    let rows = run_superres_sweep(&[2.0, 8.0], &photons, &EnsembleConfig::default(), &recon)?;
    println!("\n{:>10} {:>14} {:>10} {:>10}", "<n>", "coherent", "s = 2", "s = 8");
    for (i, n) in photons.iter().enumerate() {
        let j = |ill: Illumination| rows.iter().filter(|r| r.illumination == ill).nth(i).map_or(f64::NAN, |r| r.j);
        println!(
            "{n:>10.1e} {:>14.3} {:>10.3} {:>10.3}",
            j(Illumination::Coherent),
            j(Illumination::Squeezed { disorder: 2.0 }),
            j(Illumination::Squeezed { disorder: 8.0 })
        );
    }
    Ok(())
}
