//! Data-split k-nearest-neighbor density and entropy estimation with
//! windowed entropy-shift anomaly detection for sensor signals.
//!
//! The pipeline estimates a signal's probability density without assuming
//! a parametric form: the samples are split into an estimation part of M
//! reference points and an evaluation part of N query points, the density
//! at each query point follows from the distance to its k-th nearest
//! reference point, and averaging the log densities yields a
//! bias-corrected Shannon (or Renyi) entropy estimate. Anomalies announce
//! themselves as entropy shifts: a detector calibrates the distribution of
//! window entropies on clean data and flags windows that leave the
//! calibrated quantile band.
//!
//! Modules:
//! - [`numerics`]: log-gamma, digamma, unit-ball volumes
//! - [`neighbors`]: exact k-NN distance queries over point sets
//! - [`density`]: data-split and full-dataset k-NN density estimates
//! - [`entropy`]: Shannon and Renyi estimators, bias model, k selection
//! - [`signals`]: seeded Gaussian test signals and offset injection
//! - [`detector`]: windowed calibration, scoring, detrending
//! - [`evaluation`]: ROC/AUC, Q-Q data, estimator-vs-closed-form reports
//! - [`ingest`]: delimited trace files and deterministic report artifacts

pub mod density;
pub mod detector;
pub mod entropy;
pub mod error;
pub mod evaluation;
pub mod ingest;
pub mod neighbors;
pub mod numerics;
pub mod signals;

pub use density::{
    density_full, density_split, split, DensityEstimate, SplitDataset, SplitMode, DEFAULT_K,
    DEFAULT_SPLIT_FRACTION,
};
pub use detector::{
    calibrate, preprocess_detrend, score, window_scores, Baseline, Confusion, DetectionReport,
    DetectorConfig,
};
pub use entropy::{
    bias_model, gaussian_entropy_closed_form, renyi_entropy, select_k, shannon_entropy,
    BiasModelParams, EntropyEstimate,
};
pub use error::{Error, Result};
pub use evaluation::{
    estimator_report, normal_quantile, qq_gaussian, roc, EstimatorReport, QqSeries, RocCurve,
    TrialResult,
};
pub use ingest::{
    read_series, write_report, Delimiter, Report, ReportFormat, TraceFile,
};
pub use neighbors::{
    euclidean_distance, knn_distance_cross, knn_distance_in_sample, NeighborIndex, PointSet,
};
pub use signals::{generate_gaussian, inject_anomalies, AnomalySpec};
