//! Random single-cell network drops.
//!
//! Users are dropped uniformly by area in the annulus between `min_distance`
//! and `cell_radius` around the base station, attenuated by the urban-macro
//! path loss `128.1 + 37.6·log10(d/km)` dB, optionally faded (Rayleigh,
//! unit mean power) and shadowed, then paired at random onto subcarriers.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rate::UserChannels;

pub const DEFAULT_CELL_RADIUS_M: f64 = 400.0;
pub const DEFAULT_MIN_DISTANCE_M: f64 = 35.0;
pub const DEFAULT_SUBCARRIERS: usize = 128;
pub const DEFAULT_NOISE_DBM: f64 = -90.0;
pub const USERS_PER_SUBCARRIER: usize = 2;

pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Fading {
    Rayleigh,
    None,
}

impl fmt::Display for Fading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fading::Rayleigh => f.write_str("rayleigh"),
            Fading::None => f.write_str("none"),
        }
    }
}

impl FromStr for Fading {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rayleigh" => Ok(Fading::Rayleigh),
            "none" | "off" => Ok(Fading::None),
            other => Err(format!(
                "unknown fading mode `{other}` (expected rayleigh|none)"
            )),
        }
    }
}

/// Simulation parameters. Powers are in dBm, distances in meters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub cell_radius: f64,
    pub min_distance: f64,
    pub n_subcarriers: usize,
    pub users_per_subcarrier: usize,
    pub noise_dbm: f64,
    pub p0_dbm: f64,
    pub fading: Fading,
    /// Log-normal shadowing standard deviation in dB; 0 disables it.
    pub shadowing_std_db: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            cell_radius: DEFAULT_CELL_RADIUS_M,
            min_distance: DEFAULT_MIN_DISTANCE_M,
            n_subcarriers: DEFAULT_SUBCARRIERS,
            users_per_subcarrier: USERS_PER_SUBCARRIER,
            noise_dbm: DEFAULT_NOISE_DBM,
            p0_dbm: 20.0,
            fading: Fading::Rayleigh,
            shadowing_std_db: 0.0,
            trials: 10_000,
            seed: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, reason: String| {
            Err(Error::Config {
                key: key.into(),
                reason,
            })
        };
        if !(self.min_distance > 0.0 && self.min_distance.is_finite()) {
            return bad("min_distance_m", "must be positive".into());
        }
        if !(self.cell_radius > self.min_distance && self.cell_radius.is_finite()) {
            return bad(
                "cell_radius_m",
                format!("must exceed min_distance_m ({})", self.min_distance),
            );
        }
        if self.n_subcarriers == 0 {
            return bad("n_subcarriers", "must be at least 1".into());
        }
        if self.users_per_subcarrier != USERS_PER_SUBCARRIER {
            return bad("users_per_subcarrier", "only 2 is supported".into());
        }
        if self.trials == 0 {
            return bad("trials", "must be at least 1".into());
        }
        if !self.noise_dbm.is_finite() {
            return bad("noise_dbm", "must be finite".into());
        }
        if !self.p0_dbm.is_finite() {
            return bad("p0_dbm", "must be finite".into());
        }
        if !(self.shadowing_std_db >= 0.0 && self.shadowing_std_db.is_finite()) {
            return bad("shadowing_std_db", "must be non-negative".into());
        }
        Ok(())
    }

    pub fn with_p0_dbm(&self, p0_dbm: f64) -> Self {
        Self {
            p0_dbm,
            ..self.clone()
        }
    }

    pub fn p0_mw(&self) -> f64 {
        dbm_to_mw(self.p0_dbm)
    }

    pub fn noise_mw(&self) -> f64 {
        dbm_to_mw(self.noise_dbm)
    }

    pub fn num_users(&self) -> usize {
        self.n_subcarriers * self.users_per_subcarrier
    }
}

/// User location relative to the base station.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Position {
    pub distance: f64,
    pub angle: f64,
}

impl Position {
    pub fn x(&self) -> f64 {
        self.distance * self.angle.cos()
    }

    pub fn y(&self) -> f64 {
        self.distance * self.angle.sin()
    }
}

/// One realization of the cell: user positions, gains and the pairing.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkDrop {
    pub positions: Vec<Position>,
    /// Channel gain of every user, by user id.
    pub gains: Vec<f64>,
    /// User ids sharing each subcarrier.
    pub pairs: Vec<[usize; 2]>,
    /// Per-subcarrier channels; user `i` of `channels[s]` is `pairs[s][i]`.
    pub channels: Vec<UserChannels>,
}

/// Independent generator for work item `index` of experiment `domain`.
///
/// Streams depend only on `(seed, domain, index)`, so trials can run in any
/// order or thread and still draw the same numbers.
pub fn stream_rng(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ domain.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index);
    rng
}

fn draw_positions<R: Rng + ?Sized>(n: usize, cfg: &SimConfig, rng: &mut R) -> Vec<Position> {
    let r0_sq = cfg.min_distance * cfg.min_distance;
    let span = cfg.cell_radius * cfg.cell_radius - r0_sq;
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let angle = rng.random::<f64>() * std::f64::consts::TAU;
            let distance = (u * span + r0_sq)
                .sqrt()
                .clamp(cfg.min_distance, cfg.cell_radius);
            Position { distance, angle }
        })
        .collect()
}

/// Drops `2·n_subcarriers` users uniformly by area over the annulus.
pub fn drop_users<R: Rng + ?Sized>(cfg: &SimConfig, rng: &mut R) -> Vec<Position> {
    draw_positions(cfg.num_users(), cfg, rng)
}

/// Urban-macro path loss in dB at distance `d` meters.
pub fn path_loss_db(d: f64, min_distance: f64) -> Result<f64> {
    if !(d >= min_distance && d.is_finite()) {
        return Err(Error::Domain {
            name: "distance",
            value: d,
            domain: "[min_distance, inf)",
        });
    }
    Ok(128.1 + 37.6 * (d / 1000.0).log10())
}

/// Small-scale power factor: `|z|²` with `z ~ CN(0, 1)`, or 1 without fading.
pub fn fading_power<R: Rng + ?Sized>(mode: Fading, rng: &mut R) -> f64 {
    match mode {
        Fading::None => 1.0,
        Fading::Rayleigh => {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            0.5 * (re * re + im * im)
        }
    }
}

/// Linear channel power gain of a user at distance `d` meters.
pub fn channel_gain<R: Rng + ?Sized>(d: f64, cfg: &SimConfig, rng: &mut R) -> Result<f64> {
    let mut loss_db = path_loss_db(d, cfg.min_distance)?;
    if cfg.shadowing_std_db > 0.0 {
        let s: f64 = StandardNormal.sample(rng);
        loss_db += cfg.shadowing_std_db * s;
    }
    let mut gain = 10f64.powf(-loss_db / 10.0) * fading_power(cfg.fading, rng);
    if gain <= 0.0 {
        // |z|² = 0 only when both normals are exactly zero
        gain = f64::MIN_POSITIVE;
    }
    Ok(gain)
}

/// Shuffles the users and assigns consecutive pairs to subcarriers.
pub fn random_pairing<R: Rng + ?Sized>(
    positions: Vec<Position>,
    cfg: &SimConfig,
    rng: &mut R,
) -> Result<NetworkDrop> {
    if !positions.len().is_multiple_of(2) {
        return Err(Error::OddUserCount(positions.len()));
    }
    let gains = positions
        .iter()
        .map(|p| channel_gain(p.distance, cfg, rng))
        .collect::<Result<Vec<_>>>()?;
    let mut ids: Vec<usize> = (0..positions.len()).collect();
    ids.shuffle(rng);
    let (p0, noise) = (cfg.p0_mw(), cfg.noise_mw());
    let pairs: Vec<[usize; 2]> = ids.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
    let channels = pairs
        .iter()
        .map(|&[a, b]| UserChannels::new(&[gains[a], gains[b]], p0, noise))
        .collect::<Result<Vec<_>>>()?;
    Ok(NetworkDrop {
        positions,
        gains,
        pairs,
        channels,
    })
}

/// A full drop: positions for every user, then gains and pairing.
pub fn network_drop<R: Rng + ?Sized>(cfg: &SimConfig, rng: &mut R) -> Result<NetworkDrop> {
    let positions = drop_users(cfg, rng);
    random_pairing(positions, cfg, rng)
}

/// Two freshly dropped users sharing one subcarrier.
pub fn drop_pair<R: Rng + ?Sized>(cfg: &SimConfig, rng: &mut R) -> Result<UserChannels> {
    let positions = draw_positions(2, cfg, rng);
    let g0 = channel_gain(positions[0].distance, cfg, rng)?;
    let g1 = channel_gain(positions[1].distance, cfg, rng)?;
    UserChannels::new(&[g0, g1], cfg.p0_mw(), cfg.noise_mw())
}
