//! Channel and rate model for a single subcarrier shared by `K` uplink users.
//!
//! All users transmit at the same power `p0`. Gains are kept sorted
//! ascending (weakest user first) together with the permutation back to the
//! caller's user ids, so rates can always be reported per user identity.
//!
//! Rates are in bit/s/Hz. With `Γ = (p0 / noise) · Σ|h_i|²` and the
//! normalized gains `α_k = |h_k|² / Σ|h_i|²`, both schemes reach the same
//! sum rate `log2(1 + Γ)`:
//!
//! * NOMA with SIC, strongest user decoded first: user `k` is interfered only
//!   by the weaker users `1..k-1`, which makes its rate the increment
//!   `g(φ_k) − g(φ_{k−1})` of `g(x) = log2(1 + Γx)`.
//! * OMA with the sum-rate optimal time shares `α_k`: user `k` gets
//!   `α_k · log2(1 + Γ)`, the increment of the linear map `f(x) = x·log2(1 + Γ)`.

use std::fmt;

use serde::Serialize;

use crate::error::{ensure_positive, Error, Result};

/// Multiple access scheme that produced a rate allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Scheme {
    Noma,
    Oma,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Noma => f.write_str("NOMA"),
            Scheme::Oma => f.write_str("OMA"),
        }
    }
}

/// Per-user channel power gains on one subcarrier, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct UserChannels {
    gains: Vec<f64>,
    order: Vec<usize>,
    p0: f64,
    noise: f64,
}

impl UserChannels {
    /// Builds the channel set from gains given in user-id order.
    ///
    /// `p0` and `noise` are linear powers in milliwatts. Equal gains keep
    /// their original relative order.
    pub fn new(gains: &[f64], p0: f64, noise: f64) -> Result<Self> {
        if gains.is_empty() {
            return Err(Error::NoUsers);
        }
        for (user, &value) in gains.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidGain { user, value });
            }
        }
        ensure_positive("p0", p0)?;
        ensure_positive("noise", noise)?;

        let mut order: Vec<usize> = (0..gains.len()).collect();
        // stable: ties stay in user-id order
        order.sort_by(|&a, &b| gains[a].total_cmp(&gains[b]));
        let sorted = order.iter().map(|&i| gains[i]).collect();
        Ok(Self {
            gains: sorted,
            order,
            p0,
            noise,
        })
    }

    /// Gains sorted ascending.
    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    /// `order()[i]` is the user id of the `i`-th weakest user.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn noise(&self) -> f64 {
        self.noise
    }

    pub fn num_users(&self) -> usize {
        self.gains.len()
    }

    /// Gains in user-id order.
    pub fn gains_by_user(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.gains.len()];
        for (&user, &g) in self.order.iter().zip(&self.gains) {
            out[user] = g;
        }
        out
    }

    /// Received SNR `p0·g/noise` of the `i`-th weakest user.
    pub fn snr(&self, i: usize) -> f64 {
        self.p0 * self.gains[i] / self.noise
    }

    pub(crate) fn expect_users(&self, expected: usize) -> Result<()> {
        if self.gains.len() == expected {
            Ok(())
        } else {
            Err(Error::UserCount {
                expected,
                actual: self.gains.len(),
            })
        }
    }
}

/// Aggregate SNR and the normalized / accumulated gains of a channel set.
#[derive(Debug, Clone, PartialEq)]
pub struct FairnessContext {
    pub gamma: f64,
    /// Normalized gains in sorted order, summing to one.
    pub alpha: Vec<f64>,
    /// Running sums of `alpha` with a leading zero; `phi.len() == K + 1`.
    pub phi: Vec<f64>,
}

impl FairnessContext {
    pub fn num_users(&self) -> usize {
        self.alpha.len()
    }
}

/// Per-user rates in user-id order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateAllocation {
    pub rates: Vec<f64>,
    pub scheme: Scheme,
    pub sum_rate: f64,
}

impl RateAllocation {
    fn from_sorted(ch: &UserChannels, sorted_rates: &[f64], scheme: Scheme) -> Self {
        let mut rates = vec![0.0; sorted_rates.len()];
        for (&user, &r) in ch.order.iter().zip(sorted_rates) {
            rates[user] = r;
        }
        let sum_rate = rates.iter().sum();
        Self {
            rates,
            scheme,
            sum_rate,
        }
    }
}

/// `log2(1 + x)` without losing precision for small `x`.
#[inline]
pub(crate) fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

/// Normalized gains `α`, their running sums `φ`, and the aggregate SNR `Γ`.
pub fn normalized_gains(ch: &UserChannels) -> FairnessContext {
    let total: f64 = ch.gains.iter().sum();
    let alpha: Vec<f64> = ch.gains.iter().map(|g| g / total).collect();
    let mut phi = Vec::with_capacity(alpha.len() + 1);
    phi.push(0.0);
    let mut acc = 0.0;
    for g in &ch.gains {
        acc += g;
        phi.push(acc / total);
    }
    FairnessContext {
        gamma: ch.p0 / ch.noise * total,
        alpha,
        phi,
    }
}

/// Sum rate `log2(1 + Γ)` shared by both schemes.
pub fn sum_rate(ctx: &FairnessContext) -> f64 {
    log2_1p(ctx.gamma)
}

/// NOMA rates with SIC, strongest user decoded first.
pub fn noma_rates(ch: &UserChannels) -> RateAllocation {
    let mut interference = 0.0;
    let sorted: Vec<f64> = ch
        .gains
        .iter()
        .map(|&g| {
            let sinr = ch.p0 * g / (ch.p0 * interference + ch.noise);
            interference += g;
            log2_1p(sinr)
        })
        .collect();
    RateAllocation::from_sorted(ch, &sorted, Scheme::Noma)
}

/// OMA rates with time shares proportional to the channel gains.
pub fn oma_rates(ch: &UserChannels) -> RateAllocation {
    let ctx = normalized_gains(ch);
    let total = sum_rate(&ctx);
    let sorted: Vec<f64> = ctx.alpha.iter().map(|a| a * total).collect();
    RateAllocation::from_sorted(ch, &sorted, Scheme::Oma)
}

fn check_fraction(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "x",
            value: x,
            domain: "[0, 1]",
        })
    }
}

/// Logarithmic map `g(x) = log2(1 + Γx)`; NOMA rates are its increments.
pub fn g_map(x: f64, gamma: f64) -> Result<f64> {
    check_fraction(x)?;
    ensure_positive("gamma", gamma)?;
    Ok(log2_1p(gamma * x))
}

/// Linear map `f(x) = x · log2(1 + Γ)`; OMA rates are its increments.
pub fn f_map(x: f64, gamma: f64) -> Result<f64> {
    check_fraction(x)?;
    ensure_positive("gamma", gamma)?;
    Ok(x * log2_1p(gamma))
}
