//! Flat `key = value` configuration files.
//!
//! One key per line; `#` starts a comment; blank lines are ignored. Powers
//! are given in dBm and distances in meters.
//!
//! ```text
//! # sweep defaults
//! cell_radius_m = 400
//! noise_dbm = -90
//! fading = rayleigh
//! p0_grid = 0:40:5
//! seed = 1
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::channel::{Fading, SimConfig};
use crate::error::{Error, Result};

pub const KEYS: &[&str] = &[
    "cell_radius_m",
    "min_distance_m",
    "n_subcarriers",
    "users_per_subcarrier",
    "noise_dbm",
    "p0_dbm",
    "p0_grid",
    "fading",
    "shadowing_std_db",
    "trials",
    "seed",
];

/// Parsed configuration file: simulation parameters plus an optional P0 grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub sim: SimConfig,
    pub p0_grid: Option<Vec<f64>>,
    /// Keys that appeared in the file.
    pub explicit: HashSet<String>,
}

fn config_err(key: &str, reason: impl Into<String>) -> Error {
    Error::Config {
        key: key.into(),
        reason: reason.into(),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| config_err(key, format!("cannot parse `{value}`")))
}

/// Parses `start:stop:step` (inclusive of `stop` when it lies on the grid).
pub fn parse_p0_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(config_err("p0_grid", "expected start:stop:step"));
    }
    let start: f64 = parse_num("p0_grid", parts[0])?;
    let stop: f64 = parse_num("p0_grid", parts[1])?;
    let step: f64 = parse_num("p0_grid", parts[2])?;
    if !(step > 0.0 && step.is_finite()) || !start.is_finite() || !stop.is_finite() {
        return Err(config_err(
            "p0_grid",
            "step must be positive and bounds finite",
        ));
    }
    if stop < start {
        return Err(config_err("p0_grid", "stop is below start"));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

/// Parses a config file on top of `base`.
pub fn parse_config(text: &str, base: SimConfig) -> Result<ConfigFile> {
    let mut sim = base;
    let mut p0_grid = None;
    let mut explicit = HashSet::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(config_err(
                line,
                format!("line {}: expected `key = value`", lineno + 1),
            ));
        };
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(config_err(key, "unknown key"));
        }
        if !explicit.insert(key.to_string()) {
            return Err(config_err(key, "given more than once"));
        }
        match key {
            "cell_radius_m" => sim.cell_radius = parse_num(key, value)?,
            "min_distance_m" => sim.min_distance = parse_num(key, value)?,
            "n_subcarriers" => sim.n_subcarriers = parse_num(key, value)?,
            "users_per_subcarrier" => sim.users_per_subcarrier = parse_num(key, value)?,
            "noise_dbm" => sim.noise_dbm = parse_num(key, value)?,
            "p0_dbm" => sim.p0_dbm = parse_num(key, value)?,
            "p0_grid" => p0_grid = Some(parse_p0_grid(value)?),
            "fading" => sim.fading = value.parse::<Fading>().map_err(|e| config_err(key, e))?,
            "shadowing_std_db" => sim.shadowing_std_db = parse_num(key, value)?,
            "trials" => sim.trials = parse_num(key, value)?,
            "seed" => sim.seed = parse_num(key, value)?,
            _ => unreachable!("key list and match arms out of sync"),
        }
    }
    sim.validate()?;
    Ok(ConfigFile {
        sim,
        p0_grid,
        explicit,
    })
}

/// Renders a config in the same format, readable by [`parse_config`].
pub fn render_config(sim: &SimConfig, p0_grid: Option<&[f64]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "cell_radius_m = {}", sim.cell_radius);
    let _ = writeln!(out, "min_distance_m = {}", sim.min_distance);
    let _ = writeln!(out, "n_subcarriers = {}", sim.n_subcarriers);
    let _ = writeln!(out, "users_per_subcarrier = {}", sim.users_per_subcarrier);
    let _ = writeln!(out, "noise_dbm = {}", sim.noise_dbm);
    let _ = writeln!(out, "p0_dbm = {}", sim.p0_dbm);
    if let Some(grid) = p0_grid {
        if let [first, second, ..] = grid {
            let _ = writeln!(
                out,
                "p0_grid = {}:{}:{}",
                first,
                grid[grid.len() - 1],
                second - first
            );
        } else if let [only] = grid {
            let _ = writeln!(out, "p0_grid = {only}:{only}:1");
        }
    }
    let _ = writeln!(out, "fading = {}", sim.fading);
    let _ = writeln!(out, "shadowing_std_db = {}", sim.shadowing_std_db);
    let _ = writeln!(out, "trials = {}", sim.trials);
    let _ = writeln!(out, "seed = {}", sim.seed);
    out
}
