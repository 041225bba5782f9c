//! Synthetic test signals and the strided offset-injection scheme used to
//! plant known anomalies in them.

use crate::error::{Error, Result};
use crate::neighbors::PointSet;
use rand::SeedableRng;
use rand_distr::{Distribution, Normal};

/// `n` iid draws from N(mean, variance) with a seeded generator; the same
/// seed always reproduces the same series.
pub fn generate_gaussian(n: usize, mean: f64, variance: f64, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::SeriesTooShort { len: 0, min: 1 });
    }
    if variance <= 0.0 || variance.is_nan() {
        return Err(Error::Domain {
            func: "generate_gaussian",
            arg: variance,
            requirement: "variance > 0",
        });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(mean, variance.sqrt()).map_err(|_| Error::Domain {
        func: "generate_gaussian",
        arg: variance,
        requirement: "finite variance",
    })?;
    PointSet::from_scalars((0..n).map(|_| normal.sample(&mut rng)).collect())
}

/// Additive offsets at fixed sample indices (stored 0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct AnomalySpec {
    offsets: Vec<(usize, f64)>,
}

impl AnomalySpec {
    /// Offsets as explicit (0-based index, delta) pairs; indices must be unique.
    pub fn new(offsets: Vec<(usize, f64)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(idx, _) in &offsets {
            if !seen.insert(idx) {
                return Err(Error::DuplicateIndex(idx));
            }
        }
        Ok(Self { offsets })
    }

    pub fn empty() -> Self {
        Self {
            offsets: Vec::new(),
        }
    }

    /// The strided two-phase pattern for a series of length `n`: offsets of
    /// -10 at 1-based indices {3, 3+s, ...} and +10 at {10, 10+s, ...} with
    /// stride s = floor(n/5). A zero stride (n < 5) yields no offsets; the
    /// 1-based phases are converted to 0-based storage here.
    pub fn strided_offsets(n: usize) -> Result<Self> {
        let stride = n / 5;
        let mut offsets = Vec::new();
        if stride > 0 {
            for (start, delta) in [(3usize, -10.0), (10usize, 10.0)] {
                let mut l = start;
                while l <= n {
                    offsets.push((l - 1, delta));
                    l += stride;
                }
            }
        }
        Self::new(offsets)
    }

    pub fn offsets(&self) -> &[(usize, f64)] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }
}

/// Returns a modified copy of the 1-D series with the deltas applied, plus
/// a per-sample label vector marking exactly the modified indices.
pub fn inject_anomalies(series: &PointSet, spec: &AnomalySpec) -> Result<(PointSet, Vec<bool>)> {
    let values = series.scalars()?;
    let mut out = values.to_vec();
    let mut labels = vec![false; out.len()];
    for &(idx, delta) in spec.offsets() {
        if idx >= out.len() {
            return Err(Error::IndexOutOfRange {
                index: idx,
                len: out.len(),
            });
        }
        out[idx] += delta;
        labels[idx] = true;
    }
    Ok((PointSet::from_scalars(out)?, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_sample_moments() {
        let series = generate_gaussian(10_000, 0.0, 4.0, 1).unwrap();
        let v = series.scalars().unwrap();
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (v.len() - 1) as f64;
        assert!(mean.abs() < 0.06, "sample mean {mean}");
        assert!((3.76..=4.24).contains(&var), "sample variance {var}");
    }

    #[test]
    fn gaussian_degenerate_variance_limit() {
        let series = generate_gaussian(1, 5.0, 1e-18, 9).unwrap();
        assert!((series.scalars().unwrap()[0] - 5.0).abs() < 1e-6);
    }

    #[test]
    fn gaussian_is_reproducible() {
        let a = generate_gaussian(500, 0.0, 4.0, 77).unwrap();
        let b = generate_gaussian(500, 0.0, 4.0, 77).unwrap();
        assert_eq!(a, b);
        let c = generate_gaussian(500, 0.0, 4.0, 78).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn gaussian_rejects_bad_args() {
        assert!(generate_gaussian(0, 0.0, 1.0, 1).is_err());
        assert!(generate_gaussian(10, 0.0, 0.0, 1).is_err());
        assert!(generate_gaussian(10, 0.0, -1.0, 1).is_err());
    }

    #[test]
    fn strided_pattern_n100() {
        let spec = AnomalySpec::strided_offsets(100).unwrap();
        let minus: Vec<usize> = spec
            .offsets()
            .iter()
            .filter(|(_, d)| *d < 0.0)
            .map(|(i, _)| i + 1)
            .collect();
        let plus: Vec<usize> = spec
            .offsets()
            .iter()
            .filter(|(_, d)| *d > 0.0)
            .map(|(i, _)| i + 1)
            .collect();
        assert_eq!(minus, vec![3, 23, 43, 63, 83]);
        assert_eq!(plus, vec![10, 30, 50, 70, 90]);
        assert_eq!(spec.len(), 10);
    }

    #[test]
    fn strided_pattern_n10000() {
        let spec = AnomalySpec::strided_offsets(10_000).unwrap();
        assert_eq!(spec.len(), 10);
        let stride_ok = spec
            .offsets()
            .iter()
            .all(|(i, _)| (i + 1) % 2000 == 3 || (i + 1) % 2000 == 10);
        assert!(stride_ok);
    }

    #[test]
    fn inject_marks_exactly_the_offsets() {
        let series = generate_gaussian(100, 0.0, 4.0, 3).unwrap();
        let spec = AnomalySpec::strided_offsets(100).unwrap();
        let (modified, labels) = inject_anomalies(&series, &spec).unwrap();
        assert_eq!(labels.iter().filter(|&&l| l).count(), spec.len());
        let orig = series.scalars().unwrap();
        let new = modified.scalars().unwrap();
        for i in 0..orig.len() {
            if labels[i] {
                assert_ne!(orig[i].to_bits(), new[i].to_bits());
            } else {
                assert_eq!(orig[i].to_bits(), new[i].to_bits());
            }
        }
    }

    #[test]
    fn inject_empty_spec_is_identity() {
        let series = generate_gaussian(50, 0.0, 1.0, 4).unwrap();
        let (same, labels) = inject_anomalies(&series, &AnomalySpec::empty()).unwrap();
        assert_eq!(series, same);
        assert!(labels.iter().all(|&l| !l));
    }

    #[test]
    fn inject_rejects_out_of_range() {
        let series = generate_gaussian(10, 0.0, 1.0, 5).unwrap();
        let spec = AnomalySpec::new(vec![(10, 1.0)]).unwrap();
        assert!(matches!(
            inject_anomalies(&series, &spec),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn duplicate_indices_rejected() {
        assert!(matches!(
            AnomalySpec::new(vec![(4, 1.0), (4, -1.0)]),
            Err(Error::DuplicateIndex(4))
        ));
    }
}
