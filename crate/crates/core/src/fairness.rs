//! Jain's fairness index and the two-user NOMA/OMA fairness indicator.
//!
//! For two users with `|h₁|² ≤ |h₂|²` both schemes share the sum rate, so
//! the more fair scheme is the one with the smaller sum of squared rates
//! (SSR). `SSR_OMA − SSR_NOMA` changes sign exactly once on `(0, 0.5)`, at
//! `α₁ = β(Γ)`. NOMA is at least as fair iff `α₁ ≤ β`, or equivalently iff
//! `|h₁|²/|h₂|² ≤ β/(1−β)`.
//!
//! Writing `L = ln(1+Γ)`, the crossing satisfies `1 + Γβ = (1+Γ)^(1−β)`,
//! whose solution is
//!
//! ```text
//! β = W( (1+Γ)^(1+1/Γ) · L / Γ ) / L − 1/Γ
//! ```
//!
//! with natural logarithms throughout. The high-SNR form is
//! `β̃ = W(L) / L`.

use serde::Serialize;

use crate::error::{ensure_positive, Error, Result};
use crate::lambert::{lambert_w0, lambert_w0_ln};
use crate::rate::{log2_1p, normalized_gains, UserChannels};

/// Residual on `ln(1+Γβ) − (1−β)·ln(1+Γ)`, relative to `ln(1+Γ)`, above
/// which the closed form is replaced by bisection.
const CLOSED_FORM_TOL: f64 = 1e-10;
const BISECTION_EPS: f64 = 1e-9;
const BISECTION_ITERS: usize = 200;

/// Jain's index `(Σr)² / (K·Σr²)`, in `[1/K, 1]`.
pub fn jains_index(rates: &[f64]) -> Result<f64> {
    if rates.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for &r in rates {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::Domain {
                name: "rate",
                value: r,
                domain: "[0, inf)",
            });
        }
        sum += r;
        sum_sq += r * r;
    }
    if sum == 0.0 {
        return Err(Error::AllZeroRates);
    }
    let k = rates.len() as f64;
    // rounding can push the ratio a hair outside its bounds
    Ok((sum * sum / (k * sum_sq)).clamp(1.0 / k, 1.0))
}

fn check_alpha1(alpha1: f64, gamma: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&alpha1) {
        return Err(Error::Domain {
            name: "alpha1",
            value: alpha1,
            domain: "[0, 0.5]",
        });
    }
    ensure_positive("gamma", gamma)
}

/// Sum of squared OMA rates, `(log2(1+Γ))² · (1 + 2α₁² − 2α₁)`.
pub fn ssr_oma(alpha1: f64, gamma: f64) -> Result<f64> {
    check_alpha1(alpha1, gamma)?;
    let total = log2_1p(gamma);
    Ok(total * total * (1.0 + 2.0 * alpha1 * alpha1 - 2.0 * alpha1))
}

/// Sum of squared NOMA rates,
/// `(log2(1+Γ))² + 2(log2(1+Γα₁))² − 2·log2(1+Γ)·log2(1+Γα₁)`.
pub fn ssr_noma(alpha1: f64, gamma: f64) -> Result<f64> {
    check_alpha1(alpha1, gamma)?;
    let total = log2_1p(gamma);
    let weak = log2_1p(gamma * alpha1);
    Ok(total * total + 2.0 * weak * weak - 2.0 * total * weak)
}

/// Point where `SSR_NOMA` is smallest on `[0, 0.5]`: `(√(1+Γ) − 1)/Γ`.
///
/// This is where the weak user's NOMA rate is exactly half the sum rate.
pub fn ssr_noma_minimizer(gamma: f64) -> Result<f64> {
    ensure_positive("gamma", gamma)?;
    // (√(1+Γ) − 1)/Γ rewritten as 1/(√(1+Γ) + 1) to avoid cancellation
    Ok(1.0 / ((1.0 + gamma).sqrt() + 1.0))
}

/// Normalized crossing residual `(ln(1+Γa) − (1−a)·ln(1+Γ)) / ln(1+Γ)`.
///
/// Negative below `β`, positive above it. `SSR_OMA − SSR_NOMA` factors as
/// `−(ln(1+Γa) − a·L)·(ln(1+Γa) − (1−a)·L)` up to a `1/ln²2` factor, and the
/// first factor is positive on `(0, 1)`.
fn crossing_residual(a: f64, gamma: f64, ln_total: f64) -> f64 {
    ((gamma * a).ln_1p() - (1.0 - a) * ln_total) / ln_total
}

fn beta_closed_form(gamma: f64) -> Result<f64> {
    let ln_total = gamma.ln_1p();
    // ln of (1+Γ)^(1+1/Γ) · L / Γ
    let ln_arg = (1.0 + 1.0 / gamma) * ln_total + ln_total.ln() - gamma.ln();
    let w = lambert_w0_ln(ln_arg)?;
    Ok(w / ln_total - 1.0 / gamma)
}

fn beta_bisection(gamma: f64) -> f64 {
    let ln_total = gamma.ln_1p();
    let (mut lo, mut hi) = (BISECTION_EPS, 0.5 - BISECTION_EPS);
    for _ in 0..BISECTION_ITERS {
        let mid = 0.5 * (lo + hi);
        if crossing_residual(mid, gamma, ln_total) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// The threshold `β(Γ)` on the weak user's normalized gain.
///
/// Uses the Lambert-W closed form and falls back to bisection when its
/// crossing residual exceeds `1e-10` (this happens for `Γ ≲ 1e-5`, where
/// `W/L` and `1/Γ` cancel).
pub fn beta_exact(gamma: f64) -> Result<f64> {
    ensure_positive("gamma", gamma)?;
    let ln_total = gamma.ln_1p();
    let beta = beta_closed_form(gamma)?;
    if beta > 0.0 && beta < 0.5 && crossing_residual(beta, gamma, ln_total).abs() <= CLOSED_FORM_TOL
    {
        Ok(beta)
    } else {
        Ok(beta_bisection(gamma))
    }
}

/// High-SNR approximation `β̃ = W(ln(1+Γ)) / ln(1+Γ)`.
pub fn beta_high_snr(gamma: f64) -> Result<f64> {
    ensure_positive("gamma", gamma)?;
    let ln_total = gamma.ln_1p();
    Ok(lambert_w0(ln_total)? / ln_total)
}

/// Thresholds that depend only on `Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FairnessThreshold {
    pub gamma: f64,
    pub beta: f64,
    pub beta_high_snr: f64,
    /// `β/(1−β)`, compared against `|h₁|²/|h₂|²`.
    pub ratio_threshold: f64,
}

impl FairnessThreshold {
    pub fn new(gamma: f64) -> Result<Self> {
        let beta = beta_exact(gamma)?;
        Ok(Self {
            gamma,
            beta,
            beta_high_snr: beta_high_snr(gamma)?,
            ratio_threshold: beta / (1.0 - beta),
        })
    }

    /// `β̃/(1−β̃)`.
    pub fn ratio_threshold_high_snr(&self) -> f64 {
        self.beta_high_snr / (1.0 - self.beta_high_snr)
    }
}

/// Outcome of the fairness indicator for one user pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FairnessDecision {
    pub beta: f64,
    pub beta_high_snr: f64,
    pub ratio_threshold: f64,
    /// `|h₁|²/|h₂|²` with user 1 the weaker one.
    pub gain_ratio: f64,
    pub noma_more_fair: bool,
}

impl FairnessDecision {
    /// Verdict with `β̃` in place of `β`.
    pub fn noma_more_fair_high_snr(&self) -> bool {
        self.gain_ratio <= self.beta_high_snr / (1.0 - self.beta_high_snr)
    }
}

/// Applies the indicator to a two-user channel: NOMA is at least as fair as
/// OMA iff `|h₁|²/|h₂|² ≤ β/(1−β)`.
pub fn noma_more_fair(ch: &UserChannels) -> Result<FairnessDecision> {
    ch.expect_users(2)?;
    let ctx = normalized_gains(ch);
    let threshold = FairnessThreshold::new(ctx.gamma)?;
    let gain_ratio = ch.gains()[0] / ch.gains()[1];
    Ok(FairnessDecision {
        beta: threshold.beta,
        beta_high_snr: threshold.beta_high_snr,
        ratio_threshold: threshold.ratio_threshold,
        gain_ratio,
        noma_more_fair: gain_ratio <= threshold.ratio_threshold,
    })
}
