//! Principal branch of the Lambert W function on nonnegative arguments.
//!
//! `W(x)` is the `w ≥ 0` with `w·eʷ = x`. Two entry points are provided:
//! [`lambert_w0`] for ordinary `f64` arguments and [`lambert_w0_ln`] for
//! arguments given as `ln x`, which covers inputs far beyond `f64::MAX`.

use crate::error::{Error, Result};

const MAX_ITER: usize = 100;
const STEP_TOL: f64 = 1e-14;

/// Above this `ln x` the log-domain solver is used.
pub const LOG_DOMAIN_THRESHOLD: f64 = 700.0;

/// `W₀(x)` for finite `x ≥ 0`, by Halley iteration from `ln(1 + x)`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            domain: "[0, inf)",
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.ln() > LOG_DOMAIN_THRESHOLD {
        return Ok(w0_log_domain(x.ln()));
    }

    let mut w = x.ln_1p();
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= STEP_TOL * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

/// `W₀(x)` for `x` supplied as `ln x`.
///
/// Inputs with `ln x ≤ 700` go through [`lambert_w0`]; larger ones are
/// solved by [`w0_log_domain`].
pub fn lambert_w0_ln(ln_x: f64) -> Result<f64> {
    if ln_x.is_nan() || ln_x == f64::INFINITY {
        return Err(Error::Domain {
            name: "ln_x",
            value: ln_x,
            domain: "(-inf, inf)",
        });
    }
    if ln_x == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if ln_x <= LOG_DOMAIN_THRESHOLD {
        lambert_w0(ln_x.exp())
    } else {
        Ok(w0_log_domain(ln_x))
    }
}

/// Solves `w + ln w = t` for `w > 0`, i.e. `W₀(eᵗ)`, without forming `eᵗ`.
///
/// Starts from the asymptotic expansion `L₁ − L₂ + L₂/L₁` (with `L₁ = t`,
/// `L₂ = ln t`) when `t > 1` and refines with Halley steps; for large `t`
/// two steps already reach machine precision.
pub fn w0_log_domain(t: f64) -> f64 {
    let mut w = if t > 1.0 {
        let l2 = t.ln();
        t - l2 + l2 / t
    } else {
        t.exp().ln_1p()
    };
    for _ in 0..MAX_ITER {
        let f = w + w.ln() - t;
        let d1 = 1.0 + 1.0 / w;
        let d2 = -1.0 / (w * w);
        let step = 2.0 * f * d1 / (2.0 * d1 * d1 - f * d2);
        let mut next = w - step;
        if next <= 0.0 {
            next = w / 2.0;
        }
        let moved = (next - w).abs();
        w = next;
        if moved <= STEP_TOL * (1.0 + w.abs()) {
            break;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn bisect_w(x: f64) -> f64 {
        let (mut lo, mut hi) = (0.0f64, x.max(1.0));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid.exp() > x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn exact_points() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert!((lambert_w0(E).unwrap() - 1.0).abs() <= 1e-15);
        assert_eq!(lambert_w0_ln(f64::NEG_INFINITY).unwrap(), 0.0);
        assert!((lambert_w0_ln(1.0).unwrap() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn omega_constant() {
        let oracle = bisect_w(1.0);
        assert!((oracle - 0.567_143_290_409_783_8).abs() < 1e-12);
        assert!((lambert_w0(1.0).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(lambert_w0(-1e-3).is_err());
        assert!(lambert_w0(f64::INFINITY).is_err());
        assert!(lambert_w0(f64::NAN).is_err());
        assert!(lambert_w0_ln(f64::NAN).is_err());
        assert!(lambert_w0_ln(f64::INFINITY).is_err());
    }

    #[test]
    fn residual_on_log_grid() {
        for i in 0..=308 {
            let x = 10f64.powf(-8.0 + i as f64);
            if !x.is_finite() {
                break;
            }
            let w = lambert_w0(x).unwrap();
            let rel = w * w.exp() / x - 1.0;
            assert!(rel.abs() <= 1e-12, "x={x:e} rel={rel:e}");
        }
    }

    #[test]
    fn log_domain_solver_matches_direct() {
        for i in 0..=60 {
            let t = -18.0 + i as f64 * 11.5;
            if t > 700.0 {
                break;
            }
            let direct = lambert_w0(t.exp()).unwrap();
            let logd = w0_log_domain(t);
            assert!((direct - logd).abs() <= 1e-13 * direct.max(1e-300), "t={t}");
        }
    }

    #[test]
    fn log_domain_residual_beyond_f64() {
        for &t in &[700.5, 710.0, 1e3, 5e3, 1e4, 1e6] {
            let w = lambert_w0_ln(t).unwrap();
            let res = w + w.ln() - t;
            // one ulp of t is the best achievable residual in this form
            assert!(res.abs() <= 4.0 * f64::EPSILON * t, "t={t} res={res:e}");
        }
    }

    #[test]
    fn monotone() {
        let mut prev = -1.0;
        for i in 0..2000 {
            let x = 10f64.powf(-8.0 + i as f64 * 0.15);
            if !x.is_finite() {
                break;
            }
            let w = lambert_w0(x).unwrap();
            assert!(w > prev);
            prev = w;
        }
    }
}
