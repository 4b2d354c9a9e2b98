//! Two-user capacity regions of NOMA and OMA.
//!
//! The NOMA region is the pentagon bounded by the single-user rate limits and
//! the sum-rate face joining the two SIC corner points. The OMA region is
//! traced by giving user 1 the fraction `t` of the subcarrier; each user keeps
//! its average power `p0`, so its SNR during its own share is scaled by `1/t`.
//! Rate pairs are always `(user 0, user 1)` in the caller's user-id order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rate::{log2_1p, normalized_gains, sum_rate, Scheme, UserChannels};

/// Tolerance, in bit/s/Hz, for counting a point as inside a region.
pub const CONTAINMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }

    pub fn sum(&self) -> f64 {
        self.r1 + self.r2
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.r1 * c, self.r2 * c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledPoint {
    pub label: String,
    pub point: RatePair,
}

/// Piecewise-linear boundary of a capacity region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionBoundary {
    pub scheme: Scheme,
    pub corner_points: Vec<LabeledPoint>,
    /// Boundary points ordered by increasing `r1`.
    pub samples: Vec<RatePair>,
}

impl RegionBoundary {
    pub fn corner(&self, label: &str) -> Option<RatePair> {
        self.corner_points
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.point)
    }
}

/// Single-user rates `log2(1 + p0·g_k/σ²)` in user-id order.
fn single_user_rates(ch: &UserChannels) -> RatePair {
    let by_user = ch.gains_by_user();
    let snr = |g: f64| ch.p0() * g / ch.noise();
    RatePair::new(log2_1p(snr(by_user[0])), log2_1p(snr(by_user[1])))
}

/// The two SIC corner points with every user at full power.
///
/// `A` decodes user 1 first, leaving user 0 interference-free; `B` decodes
/// user 0 first. Both lie on the sum-rate face `r1 + r2 = log2(1 + Γ)`.
pub fn noma_corners(ch: &UserChannels) -> Result<[LabeledPoint; 2]> {
    ch.expect_users(2)?;
    let total = sum_rate(&normalized_gains(ch));
    let single = single_user_rates(ch);
    Ok([
        LabeledPoint {
            label: "A".into(),
            point: RatePair::new(single.r1, total - single.r1),
        },
        LabeledPoint {
            label: "B".into(),
            point: RatePair::new(total - single.r2, single.r2),
        },
    ])
}

/// Upper boundary of the NOMA region: `(0, R₂max)`, corner `B`, `n_segment`
/// points on the segment `B→A` (corners included), and `(R₁max, 0)`.
pub fn noma_boundary(ch: &UserChannels, n_segment: usize) -> Result<RegionBoundary> {
    let [a, b] = noma_corners(ch)?;
    let n_segment = n_segment.max(2);
    let single = single_user_rates(ch);
    let mut samples = Vec::with_capacity(n_segment + 2);
    samples.push(RatePair::new(0.0, single.r2));
    for i in 0..n_segment {
        let s = i as f64 / (n_segment - 1) as f64;
        samples.push(RatePair::new(
            b.point.r1 + s * (a.point.r1 - b.point.r1),
            b.point.r2 + s * (a.point.r2 - b.point.r2),
        ));
    }
    samples.push(RatePair::new(single.r1, 0.0));
    Ok(RegionBoundary {
        scheme: Scheme::Noma,
        corner_points: vec![a, b],
        samples,
    })
}

/// Rate of a user holding a fraction `t` of the resource at average SNR `snr`.
fn shared_rate(t: f64, snr: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        t * log2_1p(snr / t)
    }
}

/// OMA boundary `(t·log2(1 + s₁/t), (1−t)·log2(1 + s₂/(1−t)))` for
/// `n_samples` uniform `t` in `[0, 1]`, plus the sum-rate optimal point `C`
/// at `t = α` of user 0, where it touches the NOMA sum-rate face.
pub fn oma_boundary(ch: &UserChannels, n_samples: usize) -> Result<RegionBoundary> {
    ch.expect_users(2)?;
    if n_samples < 2 {
        return Err(Error::Domain {
            name: "n_samples",
            value: n_samples as f64,
            domain: "[2, inf)",
        });
    }
    let by_user = ch.gains_by_user();
    let snr = |g: f64| ch.p0() * g / ch.noise();
    let (s1, s2) = (snr(by_user[0]), snr(by_user[1]));
    let at = |t: f64| RatePair::new(shared_rate(t, s1), shared_rate(1.0 - t, s2));

    let t_opt = by_user[0] / (by_user[0] + by_user[1]);
    let mut ts: Vec<f64> = (0..n_samples)
        .map(|i| i as f64 / (n_samples - 1) as f64)
        .collect();
    if !ts.contains(&t_opt) {
        ts.push(t_opt);
        ts.sort_by(f64::total_cmp);
    }
    Ok(RegionBoundary {
        scheme: Scheme::Oma,
        corner_points: vec![
            LabeledPoint {
                label: "C".into(),
                point: at(t_opt),
            },
            LabeledPoint {
                label: "user2_only".into(),
                point: at(0.0),
            },
            LabeledPoint {
                label: "user1_only".into(),
                point: at(1.0),
            },
        ],
        samples: ts.into_iter().map(at).collect(),
    })
}

/// Whether `pt` lies weakly below the piecewise-linear upper boundary.
///
/// Boundary samples must be ordered by non-decreasing `r1`; a vertical run
/// of samples at the same `r1` counts with its highest point.
pub fn region_contains(boundary: &RegionBoundary, pt: RatePair) -> bool {
    let s = &boundary.samples;
    if s.is_empty() || pt.r1 < -CONTAINMENT_TOL || pt.r2 < -CONTAINMENT_TOL {
        return false;
    }
    let x_max = s.last().map(|p| p.r1).unwrap_or(0.0);
    if pt.r1 > x_max + CONTAINMENT_TOL {
        return false;
    }
    let x = pt.r1.clamp(s[0].r1, x_max);
    let mut ceiling = f64::NEG_INFINITY;
    for w in s.windows(2) {
        let (p, q) = (w[0], w[1]);
        if x < p.r1 || x > q.r1 {
            continue;
        }
        let y = if q.r1 > p.r1 {
            p.r2 + (q.r2 - p.r2) * (x - p.r1) / (q.r1 - p.r1)
        } else {
            p.r2.max(q.r2)
        };
        ceiling = ceiling.max(y);
    }
    if s.len() == 1 {
        ceiling = s[0].r2;
    }
    pt.r2 <= ceiling + CONTAINMENT_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rate::oma_rates;

    fn fig_pair(snr1_db: f64, snr2_db: f64) -> UserChannels {
        let noise = 1e-9;
        let gains = [
            10f64.powf(snr1_db / 10.0) * noise,
            10f64.powf(snr2_db / 10.0) * noise,
        ];
        UserChannels::new(&gains, 100.0, noise).unwrap()
    }

    #[test]
    fn symmetric_corners_mirror() {
        let ch = fig_pair(20.0, 20.0);
        let [a, b] = noma_corners(&ch).unwrap();
        assert!((a.point.r1 - b.point.r2).abs() < 1e-12);
        assert!((a.point.r2 - b.point.r1).abs() < 1e-12);
    }

    #[test]
    fn corners_on_sum_rate_face() {
        let ch = fig_pair(18.0, 28.0);
        let total = sum_rate(&normalized_gains(&ch));
        for c in noma_corners(&ch).unwrap() {
            assert!((c.point.sum() - total).abs() <= 1e-9);
        }
        let nb = noma_boundary(&ch, 11).unwrap();
        for p in &nb.samples[1..nb.samples.len() - 1] {
            assert!((p.sum() - total).abs() <= 1e-9);
        }
    }

    #[test]
    fn dominant_user_collapses_corners() {
        let ch = UserChannels::new(&[1e-12, 1.0], 10.0, 1.0).unwrap();
        let [a, b] = noma_corners(&ch).unwrap();
        assert!(a.point.r1 < 1e-9 && b.point.r1 < 1e-9);
        assert!((a.point.r2 - b.point.r2).abs() < 1e-9);
    }

    #[test]
    fn oma_endpoints_and_optimum() {
        let ch = fig_pair(18.0, 28.0);
        let ob = oma_boundary(&ch, 2).unwrap();
        // endpoints plus the inserted optimum
        assert_eq!(ob.samples.len(), 3);
        let single = single_user_rates(&ch);
        assert_eq!(ob.samples[0], RatePair::new(0.0, single.r2));
        assert_eq!(ob.samples[2], RatePair::new(single.r1, 0.0));

        let c = ob.corner("C").unwrap();
        let oma = oma_rates(&ch);
        assert!((c.r1 - oma.rates[0]).abs() < 1e-12);
        assert!((c.r2 - oma.rates[1]).abs() < 1e-12);
        let total = sum_rate(&normalized_gains(&ch));
        assert!((c.sum() - total).abs() < 1e-9);
    }

    #[test]
    fn containment_probes() {
        let ch = fig_pair(18.0, 28.0);
        let nb = noma_boundary(&ch, 2).unwrap();
        assert!(region_contains(&nb, RatePair::new(0.0, 0.0)));
        for c in &nb.corner_points {
            assert!(region_contains(&nb, c.point));
            assert!(!region_contains(&nb, c.point.scale(1.01)));
        }
        assert!(!region_contains(&nb, RatePair::new(-0.1, 0.0)));
        let ob = oma_boundary(&ch, 200).unwrap();
        for p in &ob.samples {
            assert!(region_contains(&nb, *p));
        }
    }

    #[test]
    fn rejects_wrong_shape() {
        let three = UserChannels::new(&[1.0, 2.0, 3.0], 1.0, 1.0).unwrap();
        assert!(noma_corners(&three).is_err());
        assert!(oma_boundary(&three, 10).is_err());
        let two = UserChannels::new(&[1.0, 2.0], 1.0, 1.0).unwrap();
        assert!(oma_boundary(&two, 1).is_err());
    }
}
