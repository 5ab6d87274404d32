//! Confusion matrix, per-class precision/recall/F1, grouped reports and the
//! relative-change transform used by the result tables.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("label lists have different lengths ({truth} vs {predicted})")]
    LengthMismatch { truth: usize, predicted: usize },
    #[error("label {label} out of range for {classes} classes")]
    LabelOutOfRange { label: usize, classes: usize },
    #[error("relative change undefined: baseline is zero")]
    ZeroBaseline,
}

/// K×K count matrix; rows are true classes, columns predicted classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    classes: usize,
    counts: Vec<u64>,
}

impl ConfusionMatrix {
    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn count(&self, truth: usize, predicted: usize) -> u64 {
        self.counts[truth * self.classes + predicted]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Row sum: how many evaluated samples truly belong to `class`.
    pub fn true_count(&self, class: usize) -> u64 {
        (0..self.classes).map(|p| self.count(class, p)).sum()
    }

    /// Column sum: how many samples were predicted as `class`.
    pub fn predicted_count(&self, class: usize) -> u64 {
        (0..self.classes).map(|t| self.count(t, class)).sum()
    }
}

/// Tally true/predicted label pairs into a confusion matrix.
pub fn confusion(
    truth: &[usize],
    predicted: &[usize],
    classes: usize,
) -> Result<ConfusionMatrix, MetricsError> {
    if truth.len() != predicted.len() {
        return Err(MetricsError::LengthMismatch {
            truth: truth.len(),
            predicted: predicted.len(),
        });
    }
    let mut counts = vec![0u64; classes * classes];
    for (&t, &p) in truth.iter().zip(predicted) {
        for label in [t, p] {
            if label >= classes {
                return Err(MetricsError::LabelOutOfRange { label, classes });
            }
        }
        counts[t * classes + p] += 1;
    }
    Ok(ConfusionMatrix { classes, counts })
}

/// Precision, recall and F1 for one class. Zero denominators yield 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Per-class metrics from a confusion matrix.
///
/// `precision = TP/(TP+FP)`, `recall = TP/(TP+FN)`; any zero denominator
/// yields 0, and F1 is 0 whenever `precision + recall = 0`.
pub fn class_metrics(cm: &ConfusionMatrix) -> Vec<ClassMetrics> {
    (0..cm.classes)
        .map(|c| {
            let tp = cm.count(c, c) as f64;
            let predicted = cm.predicted_count(c) as f64;
            let truth = cm.true_count(c) as f64;
            let precision = if predicted > 0.0 { tp / predicted } else { 0.0 };
            let recall = if truth > 0.0 { tp / truth } else { 0.0 };
            let f1 = if precision + recall > 0.0 {
                2.0 * precision * recall / (precision + recall)
            } else {
                0.0
            };
            ClassMetrics {
                precision,
                recall,
                f1,
            }
        })
        .collect()
}

/// How group metrics aggregate over their classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    /// Unweighted mean of per-class metrics.
    #[default]
    Macro,
    /// Pooled TP/FP/FN over the group's classes.
    Micro,
}

/// Metrics for the minority group, the majority group and all classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub minority: ClassMetrics,
    pub majority: ClassMetrics,
    pub overall: ClassMetrics,
}

/// Aggregate per-class metrics into minority/majority/overall groups.
///
/// `minority` must be a proper nonempty subset of the class indices.
pub fn group_report(per_class: &[ClassMetrics], minority: &BTreeSet<usize>) -> GroupReport {
    group_report_with(per_class, None, minority, Aggregation::Macro)
}

/// As [`group_report`] but with an explicit aggregation mode. Micro
/// aggregation needs the confusion matrix to pool counts.
pub fn group_report_with(
    per_class: &[ClassMetrics],
    cm: Option<&ConfusionMatrix>,
    minority: &BTreeSet<usize>,
    aggregation: Aggregation,
) -> GroupReport {
    let classes = per_class.len();
    let all: Vec<usize> = (0..classes).collect();
    let minority_idx: Vec<usize> = all.iter().copied().filter(|c| minority.contains(c)).collect();
    let majority_idx: Vec<usize> = all
        .iter()
        .copied()
        .filter(|c| !minority.contains(c))
        .collect();

    let aggregate = |idx: &[usize]| -> ClassMetrics {
        match aggregation {
            Aggregation::Macro => {
                let n = idx.len().max(1) as f64;
                let sum = |f: fn(&ClassMetrics) -> f64| idx.iter().map(|&c| f(&per_class[c])).sum::<f64>();
                ClassMetrics {
                    precision: sum(|m| m.precision) / n,
                    recall: sum(|m| m.recall) / n,
                    f1: sum(|m| m.f1) / n,
                }
            }
            Aggregation::Micro => {
                let cm = cm.expect("micro aggregation requires the confusion matrix");
                let tp: u64 = idx.iter().map(|&c| cm.count(c, c)).sum();
                let predicted: u64 = idx.iter().map(|&c| cm.predicted_count(c)).sum();
                let truth: u64 = idx.iter().map(|&c| cm.true_count(c)).sum();
                let precision = if predicted > 0 {
                    tp as f64 / predicted as f64
                } else {
                    0.0
                };
                let recall = if truth > 0 { tp as f64 / truth as f64 } else { 0.0 };
                let f1 = if precision + recall > 0.0 {
                    2.0 * precision * recall / (precision + recall)
                } else {
                    0.0
                };
                ClassMetrics {
                    precision,
                    recall,
                    f1,
                }
            }
        }
    };

    GroupReport {
        minority: aggregate(&minority_idx),
        majority: aggregate(&majority_idx),
        overall: aggregate(&all),
    }
}

/// Relative change of `value` against `baseline`: `(value − baseline) / baseline`.
pub fn relative_change(value: f64, baseline: f64) -> Result<f64, MetricsError> {
    if baseline == 0.0 {
        return Err(MetricsError::ZeroBaseline);
    }
    Ok((value - baseline) / baseline)
}
