//! Windowed entropy-shift anomaly detection.
//!
//! A baseline distribution of window entropies is calibrated on
//! anomaly-free data; thresholds are empirical quantiles of that
//! distribution at the configured confidence. Scoring slides the same
//! windows over new data and flags any window whose entropy falls outside
//! the thresholds.

use crate::density::{split, SplitMode};
use crate::entropy::shannon_entropy;
use crate::error::{Error, Result};
use crate::neighbors::PointSet;
use serde::{Deserialize, Serialize};

/// Minimum number of calibration windows for a usable baseline.
pub const MIN_CALIBRATION_WINDOWS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorConfig {
    pub k: usize,
    pub split_fraction: f64,
    pub window_len: usize,
    pub stride: usize,
    /// Coverage of the calibration quantile band, e.g. 0.95.
    pub confidence: f64,
    /// Flag both unusually high and unusually low entropies; one-sided
    /// (upper only) catches spikes but not variance collapse.
    pub two_sided: bool,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            k: crate::density::DEFAULT_K,
            split_fraction: crate::density::DEFAULT_SPLIT_FRACTION,
            window_len: 1000,
            stride: 500,
            confidence: 0.95,
            two_sided: true,
        }
    }
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidConfig(format!("k = {} must be >= 2", self.k)));
        }
        if self.window_len < 4 * self.k {
            return Err(Error::InvalidConfig(format!(
                "window_len = {} must be at least 4k = {}",
                self.window_len,
                4 * self.k
            )));
        }
        if self.stride == 0 {
            return Err(Error::InvalidConfig("stride must be >= 1".into()));
        }
        if self.confidence <= 0.0 || self.confidence >= 1.0 || self.confidence.is_nan() {
            return Err(Error::InvalidConfig(format!(
                "confidence = {} must lie in (0, 1)",
                self.confidence
            )));
        }
        if self.split_fraction <= 0.0 || self.split_fraction >= 1.0 || self.split_fraction.is_nan() {
            return Err(Error::InvalidFraction(self.split_fraction));
        }
        Ok(())
    }
}

/// Calibrated distribution of window entropies on clean data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Baseline {
    pub entropies: Vec<f64>,
    pub center: f64,
    pub lower_threshold: f64,
    pub upper_threshold: f64,
}

/// Per-window detection outcome; `flags[i]` holds exactly when `scores[i]`
/// falls outside `threshold_used`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub window_starts: Vec<usize>,
    pub scores: Vec<f64>,
    pub flags: Vec<bool>,
    pub threshold_used: (f64, f64),
    pub confusion: Option<Confusion>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub true_positives: usize,
    pub false_positives: usize,
    pub true_negatives: usize,
    pub false_negatives: usize,
}

fn window_starts(len: usize, config: &DetectorConfig) -> Vec<usize> {
    (0..=len - config.window_len)
        .step_by(config.stride)
        .collect()
}

fn window_entropy(series: &PointSet, start: usize, config: &DetectorConfig) -> Result<f64> {
    let window = series.window(start, config.window_len)?;
    let parts = split(&window, config.split_fraction, SplitMode::Sequential)?;
    Ok(shannon_entropy(&parts, config.k)?.corrected)
}

/// Corrected entropy of every window as (start index, score) pairs, in
/// ascending start order. A window whose k-NN radius degenerates to zero
/// scores +inf instead of aborting the scan.
pub fn window_scores(series: &PointSet, config: &DetectorConfig) -> Result<Vec<(usize, f64)>> {
    config.validate()?;
    if series.len() < config.window_len {
        return Err(Error::TooShort {
            len: series.len(),
            window_len: config.window_len,
        });
    }
    window_starts(series.len(), config)
        .into_iter()
        .map(|s| match window_entropy(series, s, config) {
            Ok(h) => Ok((s, h)),
            Err(Error::DegenerateNeighborhood { .. }) => Ok((s, f64::INFINITY)),
            Err(e) => Err(e),
        })
        .collect()
}

/// Linear-interpolation quantile of an ascending-sorted slice.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = p * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Slides windows over anomaly-free data and records the empirical
/// distribution of window entropies with its quantile thresholds.
pub fn calibrate(clean: &PointSet, config: &DetectorConfig) -> Result<Baseline> {
    config.validate()?;
    if clean.len() < 2 * config.window_len {
        return Err(Error::SeriesTooShort {
            len: clean.len(),
            min: 2 * config.window_len,
        });
    }
    let starts = window_starts(clean.len(), config);
    if starts.len() < MIN_CALIBRATION_WINDOWS {
        return Err(Error::TooFewWindows {
            got: starts.len(),
            need: MIN_CALIBRATION_WINDOWS,
        });
    }
    let mut entropies = Vec::with_capacity(starts.len());
    for &s in &starts {
        entropies.push(window_entropy(clean, s, config)?);
    }
    let mut sorted = entropies.clone();
    sorted.sort_unstable_by(f64::total_cmp);
    let (lower, upper) = if config.two_sided {
        (
            quantile_sorted(&sorted, (1.0 - config.confidence) / 2.0),
            quantile_sorted(&sorted, (1.0 + config.confidence) / 2.0),
        )
    } else {
        (f64::NEG_INFINITY, quantile_sorted(&sorted, config.confidence))
    };
    Ok(Baseline {
        center: quantile_sorted(&sorted, 0.5),
        lower_threshold: lower,
        upper_threshold: upper,
        entropies,
    })
}

/// Scores every window of `series` against the baseline thresholds.
///
/// A window whose k-NN radius degenerates to zero (constant data) is
/// itself anomalous: it is flagged with an infinite score rather than
/// aborting the scan. When per-sample `labels` are supplied, a window
/// counts as truly anomalous if it contains at least one labeled sample,
/// and the confusion counts are filled in.
pub fn score(
    series: &PointSet,
    baseline: &Baseline,
    config: &DetectorConfig,
    labels: Option<&[bool]>,
) -> Result<DetectionReport> {
    config.validate()?;
    if series.len() < config.window_len {
        return Err(Error::TooShort {
            len: series.len(),
            window_len: config.window_len,
        });
    }
    if let Some(l) = labels {
        if l.len() != series.len() {
            return Err(Error::LengthMismatch {
                left: l.len(),
                right: series.len(),
            });
        }
    }
    let scored = window_scores(series, config)?;
    let starts: Vec<usize> = scored.iter().map(|&(s, _)| s).collect();
    let scores: Vec<f64> = scored.into_iter().map(|(_, h)| h).collect();
    let flags: Vec<bool> = scores
        .iter()
        .map(|&v| v < baseline.lower_threshold || v > baseline.upper_threshold)
        .collect();
    let confusion = labels.map(|l| {
        let mut c = Confusion {
            true_positives: 0,
            false_positives: 0,
            true_negatives: 0,
            false_negatives: 0,
        };
        for (i, &s) in starts.iter().enumerate() {
            let truth = l[s..s + config.window_len].iter().any(|&b| b);
            match (flags[i], truth) {
                (true, true) => c.true_positives += 1,
                (true, false) => c.false_positives += 1,
                (false, false) => c.true_negatives += 1,
                (false, true) => c.false_negatives += 1,
            }
        }
        c
    });
    Ok(DetectionReport {
        window_starts: starts,
        scores,
        flags,
        threshold_used: (baseline.lower_threshold, baseline.upper_threshold),
        confusion,
    })
}

/// Subtracts a centered moving median (window `window`, odd) from each
/// sample; at the edges the window shrinks to whatever indices exist.
/// Slow drifts are removed while isolated spikes survive in the residual.
pub fn preprocess_detrend(series: &PointSet, window: usize) -> Result<PointSet> {
    if window < 3 || window.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "detrend window must be odd and >= 3, got {window}"
        )));
    }
    let values = series.scalars()?;
    if values.len() < window {
        return Err(Error::SeriesTooShort {
            len: values.len(),
            min: window,
        });
    }
    let half = window / 2;
    let mut out = Vec::with_capacity(values.len());
    let mut buf = Vec::with_capacity(window);
    for i in 0..values.len() {
        let lo = i.saturating_sub(half);
        let hi = (i + half + 1).min(values.len());
        buf.clear();
        buf.extend_from_slice(&values[lo..hi]);
        buf.sort_unstable_by(f64::total_cmp);
        let mid = buf.len() / 2;
        let median = if buf.len() % 2 == 1 {
            buf[mid]
        } else {
            0.5 * (buf[mid - 1] + buf[mid])
        };
        out.push(values[i] - median);
    }
    PointSet::from_scalars(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::{generate_gaussian, inject_anomalies, AnomalySpec};

    fn test_config() -> DetectorConfig {
        DetectorConfig {
            window_len: 200,
            stride: 100,
            ..DetectorConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        let mut c = DetectorConfig::default();
        assert!(c.validate().is_ok());
        c.window_len = 31;
        assert!(c.validate().is_err());
        c = DetectorConfig {
            stride: 0,
            ..DetectorConfig::default()
        };
        assert!(c.validate().is_err());
        c = DetectorConfig {
            confidence: 1.0,
            ..DetectorConfig::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn calibrate_requires_enough_windows() {
        let config = test_config();
        // 19 windows: len = 18 * stride + window_len
        let series = generate_gaussian(18 * 100 + 200, 0.0, 4.0, 1).unwrap();
        assert!(matches!(
            calibrate(&series, &config),
            Err(Error::TooFewWindows { got: 19, need: 20 })
        ));
        let series = generate_gaussian(19 * 100 + 200, 0.0, 4.0, 1).unwrap();
        assert!(calibrate(&series, &config).is_ok());
    }

    #[test]
    fn calibrate_centers_on_closed_form() {
        let config = DetectorConfig::default();
        let series = generate_gaussian(100_000, 0.0, 4.0, 2).unwrap();
        let baseline = calibrate(&series, &config).unwrap();
        let oracle = crate::entropy::gaussian_entropy_closed_form(4.0).unwrap();
        assert!(
            (baseline.center - oracle).abs() < 0.1,
            "center {} vs {oracle}",
            baseline.center
        );
        assert!(baseline.lower_threshold <= baseline.center);
        assert!(baseline.center <= baseline.upper_threshold);
    }

    #[test]
    fn degenerate_quantiles_collapse() {
        let sorted = vec![2.0; 40];
        assert_eq!(quantile_sorted(&sorted, 0.025), 2.0);
        assert_eq!(quantile_sorted(&sorted, 0.975), 2.0);
    }

    #[test]
    fn score_rejects_short_series() {
        let config = test_config();
        let clean = generate_gaussian(19 * 100 + 200, 0.0, 4.0, 3).unwrap();
        let baseline = calibrate(&clean, &config).unwrap();
        let short = generate_gaussian(150, 0.0, 4.0, 4).unwrap();
        assert!(matches!(
            score(&short, &baseline, &config, None),
            Err(Error::TooShort { .. })
        ));
    }

    #[test]
    fn flags_recomputable_from_scores_and_thresholds() {
        let config = test_config();
        let clean = generate_gaussian(30_000, 0.0, 4.0, 5).unwrap();
        let baseline = calibrate(&clean, &config).unwrap();
        let fresh = generate_gaussian(10_000, 0.0, 4.0, 6).unwrap();
        let report = score(&fresh, &baseline, &config, None).unwrap();
        let (lo, hi) = report.threshold_used;
        for (i, &s) in report.scores.iter().enumerate() {
            assert_eq!(report.flags[i], s < lo || s > hi);
        }
        assert!(report
            .window_starts
            .windows(2)
            .all(|w| w[1] == w[0] + config.stride));
    }

    #[test]
    fn scoring_is_deterministic() {
        let config = test_config();
        let clean = generate_gaussian(30_000, 0.0, 4.0, 7).unwrap();
        let baseline = calibrate(&clean, &config).unwrap();
        let series = generate_gaussian(8_000, 0.0, 4.0, 8).unwrap();
        let a = score(&series, &baseline, &config, None).unwrap();
        let b = score(&series, &baseline, &config, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn injected_windows_score_above_clean_mean() {
        let config = DetectorConfig {
            window_len: 500,
            stride: 250,
            ..DetectorConfig::default()
        };
        let clean = generate_gaussian(30_000, 0.0, 4.0, 9).unwrap();
        let baseline = calibrate(&clean, &config).unwrap();
        let mut anomalous_scores = Vec::new();
        let mut clean_scores = Vec::new();
        for seed in 0..20u64 {
            let series = generate_gaussian(10_000, 0.0, 4.0, 20 + seed).unwrap();
            let spec = AnomalySpec::strided_offsets(series.len()).unwrap();
            let (injected, labels) = inject_anomalies(&series, &spec).unwrap();
            let report = score(&injected, &baseline, &config, Some(&labels)).unwrap();
            for (i, &start) in report.window_starts.iter().enumerate() {
                let truth = labels[start..start + config.window_len].iter().any(|&b| b);
                if truth {
                    anomalous_scores.push(report.scores[i]);
                } else {
                    clean_scores.push(report.scores[i]);
                }
            }
        }
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        assert!(
            mean(&anomalous_scores) > mean(&clean_scores),
            "anomalous mean {} not above clean mean {}",
            mean(&anomalous_scores),
            mean(&clean_scores)
        );
    }

    #[test]
    fn confusion_counts_cover_all_windows() {
        let config = test_config();
        let clean = generate_gaussian(30_000, 0.0, 4.0, 11).unwrap();
        let baseline = calibrate(&clean, &config).unwrap();
        let series = generate_gaussian(5_000, 0.0, 4.0, 12).unwrap();
        let spec = AnomalySpec::strided_offsets(series.len()).unwrap();
        let (injected, labels) = inject_anomalies(&series, &spec).unwrap();
        let report = score(&injected, &baseline, &config, Some(&labels)).unwrap();
        let c = report.confusion.unwrap();
        let total =
            c.true_positives + c.false_positives + c.true_negatives + c.false_negatives;
        assert_eq!(total, report.window_starts.len());
    }

    #[test]
    fn degenerate_window_is_flagged_with_infinite_score() {
        let config = test_config();
        let clean = generate_gaussian(30_000, 0.0, 4.0, 13).unwrap();
        let baseline = calibrate(&clean, &config).unwrap();
        // constant block long enough to exhaust a window's neighbor radius
        let mut values = generate_gaussian(2_000, 0.0, 4.0, 14)
            .unwrap()
            .scalars()
            .unwrap()
            .to_vec();
        for v in values.iter_mut().take(700) {
            *v = 1.0;
        }
        let series = PointSet::from_scalars(values).unwrap();
        let report = score(&series, &baseline, &config, None).unwrap();
        assert!(report.scores[0].is_infinite());
        assert!(report.flags[0]);
    }

    #[test]
    fn threshold_monotone_in_confidence() {
        let base = test_config();
        let clean = generate_gaussian(30_000, 0.0, 4.0, 15).unwrap();
        let series = generate_gaussian(10_000, 0.0, 4.0, 16).unwrap();
        let mut last_flagged = usize::MAX;
        for confidence in [0.5, 0.8, 0.95, 0.99] {
            let config = DetectorConfig {
                confidence,
                ..base
            };
            let baseline = calibrate(&clean, &config).unwrap();
            let report = score(&series, &baseline, &config, None).unwrap();
            let flagged = report.flags.iter().filter(|&&f| f).count();
            assert!(
                flagged <= last_flagged,
                "confidence {confidence}: {flagged} > {last_flagged}"
            );
            last_flagged = flagged;
        }
    }

    #[test]
    fn one_sided_uses_upper_threshold_only() {
        let config = DetectorConfig {
            two_sided: false,
            ..test_config()
        };
        let clean = generate_gaussian(30_000, 0.0, 4.0, 17).unwrap();
        let baseline = calibrate(&clean, &config).unwrap();
        assert_eq!(baseline.lower_threshold, f64::NEG_INFINITY);
        assert!(baseline.upper_threshold.is_finite());
    }

    #[test]
    fn scale_shifts_scores_and_thresholds_together() {
        let config = test_config();
        let clean = generate_gaussian(30_000, 0.0, 4.0, 18).unwrap();
        let series = generate_gaussian(6_000, 0.0, 4.0, 19).unwrap();
        let base_cal = calibrate(&clean, &config).unwrap();
        let base_rep = score(&series, &base_cal, &config, None).unwrap();
        let scaled_cal = calibrate(&clean.scaled(2.0), &config).unwrap();
        let scaled_rep = score(&series.scaled(2.0), &scaled_cal, &config, None).unwrap();
        let ln2 = std::f64::consts::LN_2;
        for (a, b) in base_rep.scores.iter().zip(&scaled_rep.scores) {
            assert!((b - a - ln2).abs() < 1e-12);
        }
        assert!((scaled_cal.upper_threshold - base_cal.upper_threshold - ln2).abs() < 1e-12);
        assert!((scaled_cal.lower_threshold - base_cal.lower_threshold - ln2).abs() < 1e-12);
        assert_eq!(base_rep.flags, scaled_rep.flags);
    }

    #[test]
    fn detrend_constant_and_ramp() {
        let constant = PointSet::from_scalars(vec![5.0; 10]).unwrap();
        let out = preprocess_detrend(&constant, 3).unwrap();
        assert!(out.scalars().unwrap().iter().all(|&v| v == 0.0));

        let ramp = PointSet::from_scalars(vec![0.0, 1.0, 2.0, 3.0, 4.0]).unwrap();
        let out = preprocess_detrend(&ramp, 3).unwrap();
        let r = out.scalars().unwrap();
        for &v in &r[1..4] {
            assert_eq!(v, 0.0);
        }
        assert!(r[0].abs() <= 0.5 && r[4].abs() <= 0.5);
    }

    #[test]
    fn detrend_preserves_spikes() {
        let mut values = vec![5.0; 21];
        values[10] = 9.0;
        let series = PointSet::from_scalars(values).unwrap();
        let out = preprocess_detrend(&series, 3).unwrap();
        let r = out.scalars().unwrap();
        assert_eq!(r[10], 4.0);
        assert!(r.iter().enumerate().all(|(i, &v)| i == 10 || v == 0.0));
    }

    #[test]
    fn detrend_rejects_bad_window() {
        let series = PointSet::from_scalars(vec![1.0; 10]).unwrap();
        assert!(preprocess_detrend(&series, 2).is_err());
        assert!(preprocess_detrend(&series, 1).is_err());
        assert!(preprocess_detrend(&series, 11).is_err());
    }
}
