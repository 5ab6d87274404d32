//! Fingerprint ingestion and recurrence-plot construction.
//!
//! The pipeline here is: raw RSS vectors (dBm) → min-max standardization
//! fitted on the training rows only → per-fingerprint recurrence plot
//! `r[i][j] = |x_i − x_j|` → stratified train/test split → controlled
//! class imbalancing by random downsampling.

mod csv_io;
mod synth;

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::container::{Container, ContainerError};
use crate::seed::rng_from;

pub use csv_io::{load_csv, write_csv, CsvSchema};
pub use synth::{path_loss_rss, synth_corpus, GeneratorConfig, SpaceRect};

/// Sentinel substituted for missing/undetected beacon readings, in dBm.
/// The weakest plausible BLE reading, so absence lands near 0 after scaling.
pub const MISSING_RSS_DBM: f64 = -110.0;

/// Default beacon count: ten beacons on each of three floors.
pub const DEFAULT_BEACONS: usize = 30;

/// Default number of symbolic spaces.
pub const DEFAULT_SPACES: usize = 6;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("row {row}: {reason}")]
    MalformedRow { row: usize, reason: String },
    #[error("row {row}: label {label} outside [0, {classes})")]
    UnknownLabel {
        row: usize,
        label: i64,
        classes: usize,
    },
    #[error("file contains no data rows")]
    EmptyFile,
    #[error("operation requires a non-empty input")]
    EmptyInput,
    #[error("fingerprint component {value} at index {index} outside [0, 1]")]
    DomainError { index: usize, value: f64 },
    #[error("class {label} has {count} samples; at least 2 are needed to stratify")]
    ClassTooSmall { label: usize, count: usize },
    #[error("ratio {ratio} leaves no samples for minority classes (majority count {majority})")]
    RatioTooLarge { ratio: usize, majority: usize },
    #[error("bad generator geometry: {0}")]
    BadGeometry(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Container(#[from] ContainerError),
    #[error("container of kind {got:?} is not a plot set")]
    WrongContainerKind { got: String },
}

/// Raw RSS readings in dBm with a symbolic-space label.
#[derive(Debug, Clone, PartialEq)]
pub struct RawFingerprint {
    pub rss: Vec<f64>,
    pub label: usize,
}

/// A standardized fingerprint: every component in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Fingerprint {
    pub x: Vec<f64>,
    pub label: usize,
}

/// An n×n matrix of pairwise component distances in `[0, 1]`.
///
/// Plots built by [`to_recurrence_plot`] are symmetric with a zero diagonal;
/// synthetic plots emitted by the oversamplers keep the `[0, 1]` range but
/// need not keep the exact recurrence geometry, and carry `synthetic = true`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrencePlot {
    n: usize,
    data: Vec<f64>,
    pub label: usize,
    pub synthetic: bool,
}

impl RecurrencePlot {
    /// Wrap an existing n² matrix. Validates only the `[0, 1]` range.
    pub fn from_matrix(n: usize, data: Vec<f64>, label: usize, synthetic: bool) -> Self {
        assert_eq!(data.len(), n * n, "matrix data must have n*n entries");
        debug_assert!(
            data.iter().all(|v| (0.0..=1.0).contains(v)),
            "recurrence plot entries must lie in [0, 1]"
        );
        Self {
            n,
            data,
            label,
            synthetic,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// The flattened n² vector the oversamplers and the classifier consume.
    pub fn flat(&self) -> &[f64] {
        &self.data
    }

    /// True when symmetry and the zero diagonal hold exactly.
    pub fn is_recurrence_consistent(&self) -> bool {
        for i in 0..self.n {
            if self.get(i, i) != 0.0 {
                return false;
            }
            for j in 0..i {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether a set plays the training or testing role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetRole {
    Train,
    Test,
}

/// A collection of labeled recurrence plots with class-count bookkeeping.
#[derive(Debug, Clone)]
pub struct LabeledSet {
    plots: Vec<RecurrencePlot>,
    class_counts: BTreeMap<usize, usize>,
    pub role: SetRole,
}

impl LabeledSet {
    pub fn new(plots: Vec<RecurrencePlot>, role: SetRole) -> Self {
        let mut class_counts = BTreeMap::new();
        for p in &plots {
            *class_counts.entry(p.label).or_insert(0) += 1;
        }
        Self {
            plots,
            class_counts,
            role,
        }
    }

    pub fn plots(&self) -> &[RecurrencePlot] {
        &self.plots
    }

    pub fn len(&self) -> usize {
        self.plots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plots.is_empty()
    }

    pub fn class_counts(&self) -> &BTreeMap<usize, usize> {
        &self.class_counts
    }

    pub fn count(&self, label: usize) -> usize {
        self.class_counts.get(&label).copied().unwrap_or(0)
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.class_counts.keys().copied()
    }

    /// Append plots, keeping the class counts consistent.
    pub fn extend(&mut self, plots: impl IntoIterator<Item = RecurrencePlot>) {
        for p in plots {
            *self.class_counts.entry(p.label).or_insert(0) += 1;
            self.plots.push(p);
        }
    }

    /// Persist as a plot-set container (labels and synthetic flags in the
    /// manifest, plot matrices as one blob).
    pub fn save(&self, path: &std::path::Path) -> Result<(), DatasetError> {
        let n = self.plots.first().map_or(0, RecurrencePlot::n);
        let labels: Vec<usize> = self.plots.iter().map(|p| p.label).collect();
        let synthetic: Vec<bool> = self.plots.iter().map(|p| p.synthetic).collect();
        let meta = serde_json::json!({
            "n": n,
            "role": self.role,
            "labels": labels,
            "synthetic": synthetic,
        });
        let mut c = Container::new("plot-set", meta);
        let mut data = Vec::with_capacity(self.plots.len() * n * n);
        for p in &self.plots {
            data.extend_from_slice(p.flat());
        }
        c.push_blob("plots", data);
        c.write_to(path).map_err(DatasetError::from)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, DatasetError> {
        let c = Container::read_from(path)?;
        if c.kind != "plot-set" {
            return Err(DatasetError::WrongContainerKind { got: c.kind });
        }
        let n = c.meta["n"].as_u64().unwrap_or(0) as usize;
        let role = if c.meta["role"] == "test" {
            SetRole::Test
        } else {
            SetRole::Train
        };
        let labels: Vec<usize> =
            serde_json::from_value(c.meta["labels"].clone()).unwrap_or_default();
        let synthetic: Vec<bool> =
            serde_json::from_value(c.meta["synthetic"].clone()).unwrap_or_default();
        let data = c.blob("plots")?;
        let plots = labels
            .iter()
            .enumerate()
            .map(|(i, &label)| {
                RecurrencePlot::from_matrix(
                    n,
                    data[i * n * n..(i + 1) * n * n].to_vec(),
                    label,
                    synthetic.get(i).copied().unwrap_or(false),
                )
            })
            .collect();
        Ok(Self::new(plots, role))
    }
}

/// Per-feature min/max fitted on training rows only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingParams {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

/// Fit per-feature min/max over the training rows.
///
/// A degenerate feature (min = max) has its max bumped to `min + 1` so the
/// scaled value is 0 instead of dividing by zero.
pub fn fit_scaling(train: &[RawFingerprint]) -> Result<ScalingParams, DatasetError> {
    let first = train.first().ok_or(DatasetError::EmptyInput)?;
    let n = first.rss.len();
    let mut min = vec![f64::INFINITY; n];
    let mut max = vec![f64::NEG_INFINITY; n];
    for fp in train {
        for (i, &v) in fp.rss.iter().enumerate() {
            min[i] = min[i].min(v);
            max[i] = max[i].max(v);
        }
    }
    for i in 0..n {
        if max[i] == min[i] {
            max[i] = min[i] + 1.0;
        }
    }
    Ok(ScalingParams { min, max })
}

/// Min-max scale a raw fingerprint into `[0, 1]^n`, clamping out-of-range
/// values (test rows may fall outside the training range).
pub fn standardize(raw: &RawFingerprint, p: &ScalingParams) -> Fingerprint {
    let x = raw
        .rss
        .iter()
        .zip(p.min.iter().zip(&p.max))
        .map(|(&v, (&lo, &hi))| ((v - lo) / (hi - lo)).clamp(0.0, 1.0))
        .collect();
    Fingerprint {
        x,
        label: raw.label,
    }
}

/// Build the recurrence plot `r[i][j] = |x_i − x_j|` of a fingerprint.
pub fn to_recurrence_plot(f: &Fingerprint) -> Result<RecurrencePlot, DatasetError> {
    let n = f.x.len();
    for (index, &value) in f.x.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(DatasetError::DomainError { index, value });
        }
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            let d = (f.x[i] - f.x[j]).abs();
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    Ok(RecurrencePlot {
        n,
        data,
        label: f.label,
        synthetic: false,
    })
}

/// Per-class stratified shuffle split.
///
/// Each class contributes `floor(count × train_fraction)` plots to the train
/// set and the remainder to the test set; deterministic for a fixed seed.
pub fn split_train_test(
    plots: Vec<RecurrencePlot>,
    train_fraction: f64,
    seed: u64,
) -> Result<(LabeledSet, LabeledSet), DatasetError> {
    assert!(
        train_fraction > 0.0 && train_fraction < 1.0,
        "train_fraction must lie strictly between 0 and 1"
    );
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, p) in plots.iter().enumerate() {
        by_class.entry(p.label).or_default().push(i);
    }
    for (&label, idx) in &by_class {
        if idx.len() < 2 {
            return Err(DatasetError::ClassTooSmall {
                label,
                count: idx.len(),
            });
        }
    }
    let mut rng = rng_from(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for idx in by_class.values_mut() {
        idx.shuffle(&mut rng);
        let take = (idx.len() as f64 * train_fraction).floor() as usize;
        train_idx.extend_from_slice(&idx[..take]);
        test_idx.extend_from_slice(&idx[take..]);
    }
    // keep a deterministic, input-order-independent layout
    train_idx.sort_unstable();
    test_idx.sort_unstable();
    let mut slots: Vec<Option<RecurrencePlot>> = plots.into_iter().map(Some).collect();
    let take_all = |idx: &[usize], slots: &mut Vec<Option<RecurrencePlot>>| {
        idx.iter().map(|&i| slots[i].take().unwrap()).collect::<Vec<_>>()
    };
    let train = LabeledSet::new(take_all(&train_idx, &mut slots), SetRole::Train);
    let test = LabeledSet::new(take_all(&test_idx, &mut slots), SetRole::Test);
    Ok((train, test))
}

/// Downsample the minority classes so each keeps
/// `floor(majority_count / ratio)` uniformly chosen plots.
///
/// `majority_count` is the largest class count outside `minority`. Majority
/// classes pass through untouched, in their original order.
pub fn make_imbalanced(
    train: &LabeledSet,
    minority: &BTreeSet<usize>,
    ratio: usize,
    seed: u64,
) -> Result<LabeledSet, DatasetError> {
    assert!(ratio >= 1, "ratio must be at least 1");
    assert!(
        !minority.is_empty() && train.labels().any(|l| !minority.contains(&l)),
        "minority must be a proper nonempty subset of the labels"
    );
    let majority = train
        .class_counts()
        .iter()
        .filter(|(l, _)| !minority.contains(l))
        .map(|(_, &c)| c)
        .max()
        .unwrap_or(0);
    let keep = majority / ratio;
    if keep == 0 {
        return Err(DatasetError::RatioTooLarge { ratio, majority });
    }

    let mut rng = rng_from(seed);
    let mut kept: Vec<Option<&RecurrencePlot>> = train.plots().iter().map(Some).collect();
    for &label in minority {
        let mut idx: Vec<usize> = train
            .plots()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.label == label)
            .map(|(i, _)| i)
            .collect();
        idx.shuffle(&mut rng);
        for &i in &idx[keep.min(idx.len())..] {
            kept[i] = None;
        }
    }
    let plots = kept.into_iter().flatten().cloned().collect();
    Ok(LabeledSet::new(plots, train.role))
}
