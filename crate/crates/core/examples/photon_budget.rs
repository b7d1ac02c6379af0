//! Mean photon number a pulsed laser puts into the focus.

use speckle::quantum_stats::photon_budget;

fn main() -> speckle::Result<()> {
    // ruby laser line, 1 mW for 1 ms, 1% of the light in the focus
    let n = photon_budget(694e-9, 1e-3, 1e-3, 0.01)?;
    println!("{n:.4e} photons");
    for fraction in [1e-4, 1e-3, 1e-2, 1e-1] {
        println!("focus fraction {fraction:.0e}: {:.3e}", photon_budget(694e-9, 1e-3, 1e-3, fraction)?);
    }
    Ok(())
}
