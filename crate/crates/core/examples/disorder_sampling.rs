//! Draws scattering-lens realizations and checks the ensemble transmission.
//!
//! cargo run --example disorder_sampling -- [M] [s] [trials]

use speckle::random_media::{coupling_sums, ensemble_coupling_stats, sample_realization, trial_seed, DisorderParams};

fn main() -> speckle::Result<()> {
    let mut args = std::env::args().skip(1);
    let channels: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(50);
    let disorder: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(2.0);
    let trials: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(10_000);

    let params = DisorderParams::new(channels, disorder)?;
    for i in 0..3 {
        let real = sample_realization(&params, trial_seed(42, i))?;
        let sums = coupling_sums(&real);
        println!(
            "trial {i}: sum T = {:.4}  sum R = {:.4}  (sum |t|)^2 = {:.3}  flux - 1 = {:.1e}",
            sums.sum_t,
            sums.sum_r,
            sums.sum_abs_t.powi(2),
            real.flux() - 1.0
        );
    }

    let stats = ensemble_coupling_stats(&params, trials, 42)?;
    println!(
        "{trials} trials: <sum T> = {:.5} +- {:.5}, expected 1/s = {:.5}",
        stats.mean_sum_t,
        stats.stderr_sum_t,
        channels as f64 * params.mean_transmission()
    );
    Ok(())
}
