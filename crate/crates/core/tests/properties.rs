use nomafair::experiments::{run_distribution, run_fairness_sweep, AccessScheme};
use nomafair::region::{noma_boundary, oma_boundary, region_contains};
use nomafair::{SimConfig, UserChannels};
use proptest::prelude::*;

proptest! {
    #[test]
    fn oma_region_inside_noma(lg1 in -12.0f64..-4.0, lg2 in -12.0f64..-4.0, lp in -1.0f64..5.0) {
        let ch = UserChannels::new(&[10f64.powf(lg1), 10f64.powf(lg2)], 10f64.powf(lp), 1e-9).unwrap();
        let noma = noma_boundary(&ch, 2).unwrap();
        for p in oma_boundary(&ch, 64).unwrap().samples {
            prop_assert!(region_contains(&noma, p), "{p:?}");
        }
    }
}

fn small() -> SimConfig {
    SimConfig {
        trials: 300,
        n_subcarriers: 8,
        seed: 99,
        ..SimConfig::default()
    }
}

#[test]
fn sweep_independent_of_threads() {
    let grid = [0.0, 20.0, 40.0];
    let a = run_fairness_sweep(&small(), &grid, 1).unwrap();
    let b = run_fairness_sweep(&small(), &grid, 6).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.total_disagreements(), 0);
}

#[test]
fn distribution_independent_of_threads() {
    let cfg = SimConfig {
        trials: 10,
        ..small()
    };
    let a = run_distribution(&cfg, 1).unwrap();
    let b = run_distribution(&cfg, 3).unwrap();
    for s in AccessScheme::ALL {
        assert_eq!(a.scheme(s).samples, b.scheme(s).samples);
    }
    assert!(a.max_sum_rate_gap < 1e-12);
}

#[test]
fn seed_changes_results() {
    let grid = [20.0];
    let a = run_fairness_sweep(&small(), &grid, 1).unwrap();
    let b = run_fairness_sweep(
        &SimConfig {
            seed: 100,
            ..small()
        },
        &grid,
        1,
    )
    .unwrap();
    assert_ne!(a, b);
}
