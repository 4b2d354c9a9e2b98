//! Shared inputs for the criterion benches.

use nomafair::{SimConfig, UserChannels};

/// Log-spaced aggregate SNRs from 1e-2 to 1e12.
pub fn gamma_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 10f64.powf(-2.0 + 14.0 * i as f64 / (n - 1) as f64))
        .collect()
}

/// A `k`-user channel with geometrically spread gains.
pub fn channel(k: usize) -> UserChannels {
    let gains: Vec<f64> = (0..k).map(|i| 1e-10 * 1.7f64.powi(i as i32)).collect();
    UserChannels::new(&gains, 0.1, 1e-12).expect("valid channel")
}

/// Reduced Monte Carlo configuration so one iteration stays in milliseconds.
pub fn small_sim(trials: usize) -> SimConfig {
    SimConfig {
        trials,
        n_subcarriers: 16,
        seed: 1,
        ..SimConfig::default()
    }
}
