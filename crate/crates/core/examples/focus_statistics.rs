//! Photon statistics of a single shaped focus, exact and bright-beam.

use speckle::quantum_stats::{
    apply_loss, asymptotic_avg_fano, focus_moments, focus_moments_large_alpha, LossChannel, SqueezedInput,
};
use speckle::random_media::{coupling_sums, sample_realization, DisorderParams};

fn main() -> speckle::Result<()> {
    let real = sample_realization(&DisorderParams::new(50, 2.0)?, 7)?;
    let sums = coupling_sums(&real);
    println!("sum T = {:.4}, sum R = {:.4}", sums.sum_t, sums.sum_r);
    println!("{:>6} {:>10} {:>14} {:>10} {:>10} {:>10}", "g", "alpha2", "<n>", "F", "F_bright", "SNR/<n>");
    for g in [0.0, 0.5, 1.0, 1.5] {
        for alpha2 in [10.0, 1e4] {
            let input = SqueezedInput::aligned(alpha2, g, 50)?;
            let m = focus_moments(&sums, &input)?;
            let bright = focus_moments_large_alpha(&sums, &input)?;
            println!(
                "{g:>6.2} {alpha2:>10.0} {:>14.2} {:>10.5} {:>10.5} {:>10.5}",
                m.mean,
                m.fano()?,
                bright.fano()?,
                m.snr()? / m.mean
            );
        }
    }
    println!("ensemble bright-beam F at s = 2, g = 1.5: {:.5}", asymptotic_avg_fano(2.0, 1.5)?);

    let m = focus_moments(&sums, &SqueezedInput::aligned(1e4, 1.5, 50)?)?;
    for q2 in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let lossy = apply_loss(&m, &LossChannel::new(q2)?);
        println!("|q|^2 = {q2:.2}: <n> = {:>12.2}  variance = {:>12.2}", lossy.mean, lossy.variance);
    }
    Ok(())
}
