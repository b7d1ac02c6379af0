//! Feeding only N of the M transmission channels with squeezed light.

use speckle::ensemble::{run_sweep, Axis, EnsembleConfig, SweepSpec};

fn main() -> speckle::Result<()> {
    let rows = run_sweep(&SweepSpec {
        axis: Axis::ModeFillRatio,
        axis_values: (1..=10).map(|i| i as f64 / 10.0).collect(),
        fixed: EnsembleConfig::default(),
    })?;
    for r in rows {
        let bar = "#".repeat(((r.snr_ratio - 1.0) * 40.0).round() as usize);
        println!("N/M = {:.1}: <n> = {:>10.1}  R/<n> = {:.4} {bar}", r.axis_value, r.mean_n, r.snr_ratio);
    }
    Ok(())
}
