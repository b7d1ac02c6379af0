//! Ensemble Fano factor across the whole range of coherent intensity.

use speckle::ensemble::{run_sweep, Axis, EnsembleConfig, SweepSpec};
use speckle::quantum_stats::asymptotic_avg_fano;

fn main() -> speckle::Result<()> {
    let fixed = EnsembleConfig::default();
    let fractions: Vec<f64> = (0..10).map(|i| i as f64 * 0.1).chain([0.95, 0.99, 0.999]).collect();
    for r in run_sweep(&SweepSpec {
        axis: Axis::CoherentFraction,
        axis_values: fractions,
        fixed,
    })? {
        println!("fraction {:.3}: F = {:.4}", r.axis_value, r.fano);
    }
    let at_450 = run_sweep(&SweepSpec {
        axis: Axis::PhotonBudget,
        axis_values: vec![450.0],
        fixed,
    })?[0];
    println!(
        "|alpha|^2 = 450: F = {:.4}, bright-beam limit {:.4}",
        at_450.fano,
        asymptotic_avg_fano(2.0, 1.5)?
    );
    Ok(())
}
