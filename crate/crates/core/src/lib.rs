//! Imbalanced indoor-positioning fingerprints, rebalanced.
//!
//! `rpover` turns RSS fingerprint vectors into recurrence-plot images,
//! constructs controlled class-imbalanced training sets, rebalances them with
//! four oversamplers (SMOTE, ADASYN, a convolutional VAE and a conditional
//! VAE), trains a one-vs-one RBF SVM on the result and reports grouped
//! precision/recall/F1 as relative changes against the imbalanced baseline.
//!
//! The pieces compose as a pipeline:
//!
//! ```text
//! raw RSS ──standardize──► fingerprints ──|x_i − x_j|──► recurrence plots
//!    │                                                        │
//!    └── synth_corpus (log-distance simulator)        split / imbalance
//!                                                             │
//!                       SMOTE / ADASYN / VAE / CVAE ◄─────────┤
//!                                  │                          │
//!                              balanced set ──► SVM ──► group report
//! ```
//!
//! Every stochastic step is a pure function of its inputs and an explicit
//! seed; the experiment [`harness`] derives per-stage seeds from one master
//! seed so whole runs reproduce byte-for-byte.

pub mod classic;
pub mod classifier;
pub mod container;
pub mod dataset;
pub mod generative;
pub mod harness;
pub mod metrics;
pub mod seed;

pub use dataset::{Fingerprint, LabeledSet, RawFingerprint, RecurrencePlot, ScalingParams};
pub use metrics::{ConfusionMatrix, GroupReport};
