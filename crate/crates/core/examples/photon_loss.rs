//! SNR gain under detection loss for several squeezing strengths.

use speckle::ensemble::{run_loss_sweep, EnsembleConfig};

fn main() -> speckle::Result<()> {
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
    let curves = run_loss_sweep(&[0.5, 1.0, 1.5], &grid, &EnsembleConfig::default())?;
    print!("{:>6}", "|q|^2");
    for c in &curves {
        print!("  g = {:<5}", c.squeeze);
    }
    println!();
    for (i, q2) in grid.iter().enumerate() {
        print!("{q2:>6.1}");
        for c in &curves {
            print!("  {:>9.4}", c.rows[i].snr_ratio);
        }
        println!();
    }
    Ok(())
}
