//! Monte Carlo harnesses: the NOMA-vs-OMA fairness probability sweep over
//! transmit power, and the per-user rate distribution of NOMA, OMA and the
//! hybrid scheme under random pairing.
//!
//! Every trial draws from its own RNG stream keyed by `(seed, experiment,
//! index)` and results are reduced in trial order, so any thread count gives
//! the same output bit for bit.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{drop_pair, network_drop, stream_rng, SimConfig};
use crate::error::{Error, Result};
use crate::fairness::{jains_index, noma_more_fair};
use crate::rate::{noma_rates, oma_rates, RateAllocation, Scheme, UserChannels};
use crate::stats::{ecdf_at, percentile_sorted, Histogram};

/// `|J_NOMA − J_OMA|` at or below this counts as a tie.
pub const JAIN_TIE_TOL: f64 = 1e-9;
pub const HISTOGRAM_BINS: usize = 100;
pub const CDF_POINTS: usize = 1001;
pub const DEFAULT_SWEEP_PAIRS: usize = 10_000;
pub const DEFAULT_DISTRIBUTION_DROPS: usize = 100;
/// Transmit power used for the rate distribution unless configured.
pub const DEFAULT_DISTRIBUTION_P0_DBM: f64 = 40.0;

const SWEEP_DOMAIN: u64 = 0x5357_0000;
const DISTRIBUTION_DOMAIN: u64 = 0xD157;

/// Defaults for the fairness sweep.
pub fn sweep_config() -> SimConfig {
    SimConfig {
        trials: DEFAULT_SWEEP_PAIRS,
        ..SimConfig::default()
    }
}

/// Defaults for the rate distribution.
pub fn distribution_config() -> SimConfig {
    SimConfig {
        trials: DEFAULT_DISTRIBUTION_DROPS,
        p0_dbm: DEFAULT_DISTRIBUTION_P0_DBM,
        ..SimConfig::default()
    }
}

/// The sweep grid `0, 5, …, 40` dBm.
pub fn default_p0_grid() -> Vec<f64> {
    (0..=8).map(|i| i as f64 * 5.0).collect()
}

/// Picks NOMA for the pair when the fairness indicator strictly favors it,
/// OMA otherwise (including exact ties).
pub fn hybrid_select(pair: &UserChannels) -> Result<RateAllocation> {
    let decision = noma_more_fair(pair)?;
    if decision.gain_ratio < decision.ratio_threshold {
        Ok(noma_rates(pair))
    } else {
        Ok(oma_rates(pair))
    }
}

/// Runs `f(0..n)` on `threads` workers and returns results in index order.
fn run_indexed<T, F>(n: usize, threads: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    if threads <= 1 {
        return (0..n as u64).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to start worker threads");
    pool.install(|| (0..n as u64).into_par_iter().map(f).collect())
}

#[derive(Debug, Clone, Copy)]
struct PairTrial {
    metric: bool,
    metric_hsnr: bool,
    noma_fairer: bool,
    tie: bool,
}

fn pair_trial(pair: &UserChannels) -> Result<PairTrial> {
    let decision = noma_more_fair(pair)?;
    let jn = jains_index(&noma_rates(pair).rates)?;
    let jo = jains_index(&oma_rates(pair).rates)?;
    Ok(PairTrial {
        metric: decision.noma_more_fair,
        metric_hsnr: decision.noma_more_fair_high_snr(),
        noma_fairer: jn >= jo,
        tie: (jn - jo).abs() <= JAIN_TIE_TOL,
    })
}

/// Statistics for one transmit power.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub p0_dbm: f64,
    /// `Pr{|h₁|²/|h₂|² ≤ β/(1−β)}`.
    pub prob_metric: f64,
    /// Same with the high-SNR `β̃`.
    pub prob_metric_hsnr: f64,
    /// `Pr{J_NOMA ≥ J_OMA}`.
    pub prob_actual: f64,
    pub n_trials: usize,
    pub n_ties: usize,
    /// Non-tie pairs where the exact indicator and the Jain comparison differ.
    pub n_disagree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn p0_grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.p0_dbm).collect()
    }

    pub fn prob_actual(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.prob_actual).collect()
    }

    pub fn prob_metric(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.prob_metric).collect()
    }

    pub fn prob_metric_hsnr(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.prob_metric_hsnr).collect()
    }

    pub fn total_disagreements(&self) -> usize {
        self.points.iter().map(|p| p.n_disagree).sum()
    }
}

/// Probability that NOMA is at least as fair as OMA, per transmit power.
///
/// Each point draws `cfg.trials` independent pairs, each from a fresh drop.
pub fn run_fairness_sweep(cfg: &SimConfig, p0_grid: &[f64], threads: usize) -> Result<SweepResult> {
    cfg.validate()?;
    if p0_grid.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut points = Vec::with_capacity(p0_grid.len());
    for (idx, &p0_dbm) in p0_grid.iter().enumerate() {
        let point_cfg = cfg.with_p0_dbm(p0_dbm);
        point_cfg.validate()?;
        let domain = SWEEP_DOMAIN + idx as u64;
        let trials = run_indexed(cfg.trials, threads, |t| {
            let mut rng = stream_rng(cfg.seed, domain, t);
            pair_trial(&drop_pair(&point_cfg, &mut rng)?)
        })?;

        let n = trials.len();
        let count = |pred: fn(&PairTrial) -> bool| trials.iter().filter(|t| pred(t)).count();
        points.push(SweepPoint {
            p0_dbm,
            prob_metric: count(|t| t.metric) as f64 / n as f64,
            prob_metric_hsnr: count(|t| t.metric_hsnr) as f64 / n as f64,
            prob_actual: count(|t| t.noma_fairer) as f64 / n as f64,
            n_trials: n,
            n_ties: count(|t| t.tie),
            n_disagree: count(|t| !t.tie && t.metric != t.noma_fairer),
        });
    }
    Ok(SweepResult { points })
}

/// Rate allocation policy compared in the distribution experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AccessScheme {
    Noma,
    Oma,
    Hybrid,
}

impl AccessScheme {
    pub const ALL: [AccessScheme; 3] =
        [AccessScheme::Noma, AccessScheme::Oma, AccessScheme::Hybrid];

    pub fn name(&self) -> &'static str {
        match self {
            AccessScheme::Noma => "noma",
            AccessScheme::Oma => "oma",
            AccessScheme::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for AccessScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Pooled per-user rates of one scheme and their summaries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeDistribution {
    pub scheme: AccessScheme,
    /// Rates in (drop, user id) order.
    pub samples: Vec<f64>,
    pub histogram: Histogram,
    pub cdf_grid: Vec<f64>,
    pub cdf: Vec<f64>,
    /// Jain's index over all pooled user rates.
    pub jain: f64,
    pub p10: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionResult {
    pub schemes: Vec<SchemeDistribution>,
    /// Fraction of pairs on which the hybrid scheme chose NOMA.
    pub noma_selection_fraction: f64,
    /// Largest relative spread of a pair's sum rate across the three schemes.
    pub max_sum_rate_gap: f64,
    pub n_drops: usize,
    pub n_pairs: usize,
}

impl DistributionResult {
    pub fn scheme(&self, scheme: AccessScheme) -> &SchemeDistribution {
        self.schemes
            .iter()
            .find(|s| s.scheme == scheme)
            .expect("all schemes are present")
    }
}

struct DropRates {
    noma: Vec<f64>,
    oma: Vec<f64>,
    hybrid: Vec<f64>,
    noma_chosen: usize,
    max_gap: f64,
}

fn drop_rates(cfg: &SimConfig, index: u64) -> Result<DropRates> {
    let mut rng = stream_rng(cfg.seed, DISTRIBUTION_DOMAIN, index);
    let drop = network_drop(cfg, &mut rng)?;
    let n = drop.gains.len();
    let mut out = DropRates {
        noma: vec![0.0; n],
        oma: vec![0.0; n],
        hybrid: vec![0.0; n],
        noma_chosen: 0,
        max_gap: 0.0,
    };
    for (pair, ch) in drop.pairs.iter().zip(&drop.channels) {
        let noma = noma_rates(ch);
        let oma = oma_rates(ch);
        let hybrid = hybrid_select(ch)?;
        if hybrid.scheme == Scheme::Noma {
            out.noma_chosen += 1;
        }
        let sums = [noma.sum_rate, oma.sum_rate, hybrid.sum_rate];
        let hi = sums.iter().copied().fold(f64::MIN, f64::max);
        let lo = sums.iter().copied().fold(f64::MAX, f64::min);
        out.max_gap = out.max_gap.max((hi - lo) / hi);
        for (i, &user) in pair.iter().enumerate() {
            out.noma[user] = noma.rates[i];
            out.oma[user] = oma.rates[i];
            out.hybrid[user] = hybrid.rates[i];
        }
    }
    Ok(out)
}

/// Pooled per-user rate statistics over `cfg.trials` drops of
/// `cfg.n_subcarriers` randomly paired subcarriers.
pub fn run_distribution(cfg: &SimConfig, threads: usize) -> Result<DistributionResult> {
    cfg.validate()?;
    let drops = run_indexed(cfg.trials, threads, |d| drop_rates(cfg, d))?;

    let mut pooled: [Vec<f64>; 3] = Default::default();
    let mut noma_chosen = 0;
    let mut max_gap = 0.0f64;
    for d in drops {
        pooled[0].extend(d.noma);
        pooled[1].extend(d.oma);
        pooled[2].extend(d.hybrid);
        noma_chosen += d.noma_chosen;
        max_gap = max_gap.max(d.max_gap);
    }

    let upper = pooled.iter().flatten().copied().fold(0.0f64, f64::max);
    let cdf_grid: Vec<f64> = (0..CDF_POINTS)
        .map(|i| upper * i as f64 / (CDF_POINTS - 1) as f64)
        .collect();

    let mut schemes = Vec::with_capacity(3);
    for (scheme, samples) in AccessScheme::ALL.into_iter().zip(pooled) {
        let mut sorted = samples.clone();
        sorted.sort_by(f64::total_cmp);
        let jain = jains_index(&samples)?;
        schemes.push(SchemeDistribution {
            scheme,
            histogram: Histogram::new(&samples, HISTOGRAM_BINS, upper)?,
            cdf: ecdf_at(&sorted, &cdf_grid),
            cdf_grid: cdf_grid.clone(),
            jain,
            p10: percentile_sorted(&sorted, 0.1),
            mean: samples.iter().sum::<f64>() / samples.len() as f64,
            samples,
        });
    }
    let n_pairs = cfg.trials * cfg.n_subcarriers;
    Ok(DistributionResult {
        schemes,
        noma_selection_fraction: noma_chosen as f64 / n_pairs as f64,
        max_sum_rate_gap: max_gap,
        n_drops: cfg.trials,
        n_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hybrid_on_symmetric_pair_is_oma() {
        let ch = UserChannels::new(&[2.0, 2.0], 10.0, 1.0).unwrap();
        assert_eq!(hybrid_select(&ch).unwrap().scheme, Scheme::Oma);
    }

    #[test]
    fn hybrid_on_asymmetric_pair_is_noma() {
        let ch = UserChannels::new(&[1e-3, 1.0], 50.0, 1.0).unwrap();
        let jn = jains_index(&noma_rates(&ch).rates).unwrap();
        let jo = jains_index(&oma_rates(&ch).rates).unwrap();
        assert!(jn > jo);
        assert_eq!(hybrid_select(&ch).unwrap().scheme, Scheme::Noma);
    }

    #[test]
    fn hybrid_rejects_wrong_user_count() {
        let ch = UserChannels::new(&[1.0], 1.0, 1.0).unwrap();
        assert!(hybrid_select(&ch).is_err());
    }

    #[test]
    fn hybrid_is_the_fairer_of_the_two() {
        let cfg = SimConfig::default();
        for t in 0..2000 {
            let ch = drop_pair(
                &cfg.with_p0_dbm((t % 9) as f64 * 5.0),
                &mut stream_rng(1, 77, t),
            )
            .unwrap();
            let jh = jains_index(&hybrid_select(&ch).unwrap().rates).unwrap();
            let jn = jains_index(&noma_rates(&ch).rates).unwrap();
            let jo = jains_index(&oma_rates(&ch).rates).unwrap();
            assert!(jh >= jn.max(jo) - 1e-12, "trial {t}");
        }
    }

    #[test]
    fn small_sweep_is_consistent() {
        let cfg = SimConfig {
            trials: 500,
            seed: 4,
            ..sweep_config()
        };
        let res = run_fairness_sweep(&cfg, &[0.0, 20.0, 40.0], 1).unwrap();
        assert_eq!(res.points.len(), 3);
        for p in &res.points {
            assert_eq!(p.n_trials, 500);
            assert_eq!(p.n_disagree, 0);
            for v in [p.prob_metric, p.prob_metric_hsnr, p.prob_actual] {
                assert!((0.0..=1.0).contains(&v));
            }
        }
        let parallel = run_fairness_sweep(&cfg, &[0.0, 20.0, 40.0], 4).unwrap();
        assert_eq!(res, parallel);
        assert!(run_fairness_sweep(&cfg, &[], 1).is_err());
    }

    #[test]
    fn small_distribution_is_consistent() {
        let cfg = SimConfig {
            trials: 3,
            n_subcarriers: 16,
            seed: 8,
            ..distribution_config()
        };
        let res = run_distribution(&cfg, 1).unwrap();
        assert_eq!(res.n_pairs, 48);
        assert!(res.max_sum_rate_gap <= 1e-9);
        for s in &res.schemes {
            assert_eq!(s.samples.len(), 96);
            assert!((s.histogram.mass.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(s.cdf.windows(2).all(|w| w[1] >= w[0]));
            assert_eq!(*s.cdf.last().unwrap(), 1.0);
        }
        assert_eq!(res, run_distribution(&cfg, 3).unwrap());
    }
}
