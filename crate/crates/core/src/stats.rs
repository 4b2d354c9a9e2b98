//! Empirical distribution helpers for rate samples.

use serde::Serialize;

use crate::error::{Error, Result};

fn check_samples(samples: &[f64]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if let Some(&bad) = samples.iter().find(|x| !x.is_finite()) {
        return Err(Error::Domain {
            name: "sample",
            value: bad,
            domain: "finite",
        });
    }
    Ok(())
}

/// Linearly interpolated quantile of `samples` at level `q ∈ [0, 1]`.
pub fn percentile(samples: &[f64], q: f64) -> Result<f64> {
    check_samples(samples)?;
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain {
            name: "q",
            value: q,
            domain: "[0, 1]",
        });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(percentile_sorted(&sorted, q))
}

/// Same as [`percentile`] for already sorted, non-empty input.
pub fn percentile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Histogram with uniform bins over `[0, upper]`, normalized to unit mass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    /// Fraction of samples per bin; sums to one.
    pub mass: Vec<f64>,
}

impl Histogram {
    pub fn new(samples: &[f64], n_bins: usize, upper: f64) -> Result<Self> {
        check_samples(samples)?;
        if n_bins == 0 || !(upper > 0.0 && upper.is_finite()) {
            return Err(Error::Domain {
                name: "upper",
                value: upper,
                domain: "(0, inf) with at least one bin",
            });
        }
        let width = upper / n_bins as f64;
        let mut counts = vec![0u64; n_bins];
        for &x in samples {
            let bin = ((x / width).floor().max(0.0) as usize).min(n_bins - 1);
            counts[bin] += 1;
        }
        let n = samples.len() as f64;
        Ok(Self {
            edges: (0..=n_bins).map(|i| i as f64 * width).collect(),
            mass: counts.iter().map(|&c| c as f64 / n).collect(),
        })
    }

    pub fn bin_width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }

    /// Mass divided by bin width.
    pub fn density(&self) -> Vec<f64> {
        let w = self.bin_width();
        self.mass.iter().map(|m| m / w).collect()
    }
}

/// Empirical CDF `P(X ≤ x)` evaluated at each point of `grid`.
pub fn ecdf_at(sorted: &[f64], grid: &[f64]) -> Vec<f64> {
    let n = sorted.len() as f64;
    grid.iter()
        .map(|&x| sorted.partition_point(|&s| s <= x) as f64 / n)
        .collect()
}

/// Spearman rank correlation (average ranks for ties).
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for &k in &idx[i..=j] {
                r[k] = avg;
            }
            i = j + 1;
        }
        r
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn percentile_examples() {
        let v = [3.0, 1.0, 4.0, 2.0];
        assert_eq!(percentile(&v, 0.0).unwrap(), 1.0);
        assert_eq!(percentile(&v, 1.0).unwrap(), 4.0);
        assert_eq!(percentile(&v, 0.5).unwrap(), 2.5);
        assert_eq!(percentile(&[], 0.5), Err(Error::EmptySamples));
        assert!(percentile(&v, 1.5).is_err());
    }

    #[test]
    fn histogram_mass_sums_to_one() {
        let v: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.37) % 5.0).collect();
        let h = Histogram::new(&v, 100, 5.0).unwrap();
        assert_eq!(h.mass.len(), 100);
        assert!((h.mass.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((h.density().iter().sum::<f64>() * h.bin_width() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ecdf_monotone() {
        let mut v = vec![0.5, 0.1, 0.9, 0.3];
        v.sort_by(f64::total_cmp);
        let grid = [0.0, 0.2, 0.5, 1.0];
        assert_eq!(ecdf_at(&v, &grid), vec![0.0, 0.25, 0.75, 1.0]);
    }

    #[test]
    fn spearman_signs() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert!((spearman(&x, &[10.0, 20.0, 30.0, 40.0]) - 1.0).abs() < 1e-12);
        assert!((spearman(&x, &[4.0, 3.0, 2.0, 1.0]) + 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn matches_sort_and_index(v in prop::collection::vec(-100.0f64..100.0, 1..200), q in 0.0f64..=1.0) {
            // reference: explicit order statistics with interpolation
            let mut s = v.clone();
            s.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let h = (s.len() - 1) as f64 * q;
            let below = s[h.floor() as usize];
            let above = s[h.ceil() as usize];
            let reference = below + (h - h.floor()) * (above - below);
            let got = percentile(&v, q).unwrap();
            prop_assert!((got - reference).abs() <= 1e-12 * reference.abs().max(1.0));
        }
    }
}
