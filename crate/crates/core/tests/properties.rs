use proptest::prelude::*;

use speckle::ensemble::{run_sweep, Axis, EnsembleConfig, SweepSpec};
use speckle::gaussian_oracle::{gaussian_photon_moments, output_gaussian_state, relative_error};
use speckle::quantum_stats::{focus_moments, focus_moments_large_alpha, SqueezedInput};
use speckle::random_media::{coupling_sums, sample_realization, DisorderParams};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_matches_covariance_engine(
        channels in 1usize..=64,
        fed_frac in 0.0f64..1.0,
        s in 1.01f64..10.0,
        g in 0.0f64..2.0,
        alpha2 in 0.0f64..1e5,
        seed in any::<u64>(),
    ) {
        let fed = 1 + ((channels - 1) as f64 * fed_frac) as usize;
        let real = sample_realization(&DisorderParams::new(channels, s).unwrap(), seed).unwrap();
        let input = SqueezedInput::aligned(alpha2, g, fed).unwrap();
        let a = focus_moments(&coupling_sums(&real), &input).unwrap();
        let b = gaussian_photon_moments(&output_gaussian_state(&real, &input, fed).unwrap()).unwrap();
        prop_assert!(relative_error(a.mean, b.mean) < 1e-10);
        prop_assert!(relative_error(a.variance, b.variance) < 1e-10);
    }

    #[test]
    fn flux_is_conserved_and_fano_positive(channels in 1usize..=80, s in 1.01f64..20.0, seed in any::<u64>()) {
        let real = sample_realization(&DisorderParams::new(channels, s).unwrap(), seed).unwrap();
        prop_assert!((real.flux() - 1.0).abs() < 1e-12);
        let sums = coupling_sums(&real);
        let f = focus_moments(&sums, &SqueezedInput::aligned(1e4, 1.0, channels).unwrap()).unwrap().fano().unwrap();
        prop_assert!(f > 0.0 && f < 1.0);
    }

    #[test]
    fn bright_beam_limit_is_approached(channels in 1usize..=50, s in 1.01f64..10.0, g in 0.0f64..1.5, seed in any::<u64>()) {
        let sums = coupling_sums(&sample_realization(&DisorderParams::new(channels, s).unwrap(), seed).unwrap());
        let input = SqueezedInput::aligned(1e10, g, channels).unwrap();
        let exact = focus_moments(&sums, &input).unwrap().fano().unwrap();
        let approx = focus_moments_large_alpha(&sums, &input).unwrap().fano().unwrap();
        prop_assert!((exact - approx).abs() < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sweeps_are_order_and_worker_independent(seed in any::<u64>(), workers in 1usize..=6) {
        let values = vec![1.5, 0.0, 0.7];
        let fixed = EnsembleConfig { trials: 40, seed, ..EnsembleConfig::default() };
        let serial = run_sweep(&SweepSpec { axis: Axis::SqueezeG, axis_values: values.clone(), fixed: EnsembleConfig { workers: Some(1), ..fixed } }).unwrap();
        let pooled = run_sweep(&SweepSpec { axis: Axis::SqueezeG, axis_values: values, fixed: EnsembleConfig { workers: Some(workers), ..fixed } }).unwrap();
        prop_assert_eq!(&serial, &pooled);
        // each axis value sees the same realizations, so permuting the list permutes the rows
        let reversed = run_sweep(&SweepSpec { axis: Axis::SqueezeG, axis_values: vec![0.7, 0.0, 1.5], fixed }).unwrap();
        prop_assert!((reversed[2].fano - serial[0].fano).abs() < 1e-12);
        prop_assert!((reversed[0].snr_ratio - serial[2].snr_ratio).abs() < 1e-12);
        prop_assert_eq!(serial[1].fano, 1.0);
    }
}
