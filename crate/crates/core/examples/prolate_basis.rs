//! Slepian eigenvalues and eigenfunctions of the finite sinc kernel.
//!
//! cargo run --example prolate_basis -- [c]

use std::f64::consts::PI;

use speckle::prolate::{build_basis, full_spectrum, resolved_count, RESOLUTION_FLOOR};

fn main() -> speckle::Result<()> {
    let c: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1.0);
    let spectrum = full_spectrum(c, 256)?;
    let k = resolved_count(c, 256, RESOLUTION_FLOOR)?;
    println!("c = {c}: {k} resolvable eigenvalues, trace {:.12} vs 2c/pi = {:.12}", spectrum.iter().sum::<f64>(), 2.0 * c / PI);

    let basis = build_basis(c, k, 256)?;
    for (i, l) in basis.lambda.iter().enumerate() {
        println!(
            "  lambda_{i} = {l:.6e}  phi_{i}(0) = {:+.5}  sign changes {}",
            basis.eval(i, 0.0),
            basis.sign_changes(i)
        );
    }
    println!("orthonormality error {:.1e}", basis.orthonormality_error());
    println!("kernel reconstruction error {:.1e}", basis.kernel_reconstruction_error());

    println!("\n   z   {}", (0..k.min(4)).map(|i| format!("   phi_{i}  ")).collect::<String>());
    for i in 0..=10 {
        let z = -1.0 + 0.2 * i as f64;
        let row: String = (0..k.min(4)).map(|j| format!(" {:+.5}  ", basis.eval(j, z))).collect();
        println!("{z:+.1}  {row}");
    }
    Ok(())
}
