//! Synthetic fingerprint generator.
//!
//! Desk-scale stand-in for a real survey: beacons at fixed planar positions,
//! reference points drawn uniformly inside each space's rectangle, and RSS
//! from the log-distance path-loss model with Gaussian shadowing:
//!
//! ```text
//! RSS_i = P0 − 10·η·log10(d_i / d0) + N(0, σ²),   clipped to [−110, −30] dBm
//! ```
//!
//! with `d_i` clamped below at `d0` so a receiver on top of a beacon reads
//! exactly `P0` when σ = 0.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{DatasetError, RawFingerprint};
use crate::seed::rng_from;

const RSS_FLOOR_DBM: f64 = -110.0;
const RSS_CEIL_DBM: f64 = -30.0;

/// Axis-aligned rectangle for one symbolic space.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpaceRect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl SpaceRect {
    fn is_empty(&self) -> bool {
        !(self.x_min < self.x_max && self.y_min < self.y_max)
    }
}

/// Generator spec. Serialized as the `gen` config JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorConfig {
    /// One rectangle per symbolic space; the rectangle index is the label.
    pub spaces: Vec<SpaceRect>,
    /// Planar beacon positions; the beacon index is the RSS column.
    pub beacons: Vec<[f64; 2]>,
    pub samples_per_space: usize,
    /// Path-loss exponent η.
    pub eta: f64,
    /// Shadowing standard deviation in dB.
    pub sigma_db: f64,
    /// Received power at the reference distance, dBm.
    pub p0_dbm: f64,
    /// Reference distance in meters.
    pub d0_m: f64,
}

impl GeneratorConfig {
    /// Desk-scale default: six adjacent 5 m × 5 m spaces in a 2×3 grid and
    /// 30 beacons laid out 5 per space.
    pub fn desk(samples_per_space: usize) -> Self {
        let mut spaces = Vec::new();
        for gy in 0..2 {
            for gx in 0..3 {
                spaces.push(SpaceRect {
                    x_min: gx as f64 * 5.0,
                    x_max: (gx + 1) as f64 * 5.0,
                    y_min: gy as f64 * 5.0,
                    y_max: (gy + 1) as f64 * 5.0,
                });
            }
        }
        let mut beacons = Vec::new();
        for rect in &spaces {
            let cx = (rect.x_min + rect.x_max) / 2.0;
            let cy = (rect.y_min + rect.y_max) / 2.0;
            beacons.push([cx, cy]);
            for (dx, dy) in [(-1.7, -1.7), (1.7, -1.7), (-1.7, 1.7), (1.7, 1.7)] {
                beacons.push([cx + dx, cy + dy]);
            }
        }
        Self {
            spaces,
            beacons,
            samples_per_space,
            eta: 2.5,
            sigma_db: 6.0,
            p0_dbm: -45.0,
            d0_m: 1.0,
        }
    }

    fn validate(&self) -> Result<(), DatasetError> {
        if self.spaces.is_empty() {
            return Err(DatasetError::BadGeometry("no spaces defined".into()));
        }
        if let Some(i) = self.spaces.iter().position(SpaceRect::is_empty) {
            return Err(DatasetError::BadGeometry(format!(
                "space {i} has an empty rectangle"
            )));
        }
        if self.beacons.is_empty() {
            return Err(DatasetError::BadGeometry("no beacons defined".into()));
        }
        if self.samples_per_space == 0 {
            return Err(DatasetError::BadGeometry("samples_per_space is 0".into()));
        }
        if !(self.d0_m > 0.0) || !(self.eta > 0.0) || self.sigma_db < 0.0 {
            return Err(DatasetError::BadGeometry(
                "d0_m and eta must be positive, sigma_db non-negative".into(),
            ));
        }
        Ok(())
    }

    /// Number of RSS columns this config produces.
    pub fn n(&self) -> usize {
        self.beacons.len()
    }

    /// Check the beacon count against an externally required column count.
    pub fn expect_n(&self, n: usize) -> Result<(), DatasetError> {
        if self.beacons.len() != n {
            return Err(DatasetError::BadGeometry(format!(
                "config has {} beacons but {} RSS columns are required",
                self.beacons.len(),
                n
            )));
        }
        Ok(())
    }
}

/// RSS at distance `d` from a beacon, before shadowing noise.
pub fn path_loss_rss(config: &GeneratorConfig, d: f64) -> f64 {
    let d = d.max(config.d0_m);
    config.p0_dbm - 10.0 * config.eta * (d / config.d0_m).log10()
}

/// Generate `samples_per_space` fingerprints per space, deterministically
/// for a fixed seed. Space 0's samples come first, then space 1's, and so on.
pub fn synth_corpus(
    config: &GeneratorConfig,
    seed: u64,
) -> Result<Vec<RawFingerprint>, DatasetError> {
    config.validate()?;
    let mut rng = rng_from(seed);
    let mut out = Vec::with_capacity(config.spaces.len() * config.samples_per_space);
    for (label, rect) in config.spaces.iter().enumerate() {
        for _ in 0..config.samples_per_space {
            let px = rng.random_range(rect.x_min..rect.x_max);
            let py = rng.random_range(rect.y_min..rect.y_max);
            let rss = config
                .beacons
                .iter()
                .map(|&[bx, by]| {
                    let d = ((px - bx).powi(2) + (py - by).powi(2)).sqrt();
                    let shadow: f64 = rng.sample::<f64, _>(StandardNormal) * config.sigma_db;
                    (path_loss_rss(config, d) + shadow).clamp(RSS_FLOOR_DBM, RSS_CEIL_DBM)
                })
                .collect();
            out.push(RawFingerprint { rss, label });
        }
    }
    Ok(out)
}
