//! k-nearest-neighbor probability density estimation.
//!
//! The estimate at a query point X is
//!
//! ```text
//! f(X) = (k - 1) / (M * c_d * R_k(X)^d)
//! ```
//!
//! where M is the reference count, c_d the unit-ball volume and R_k the
//! distance to the k-th nearest reference point. The `(k - 1)` numerator
//! makes the estimate unbiased at each query point. Two variants are
//! provided: `density_split` evaluates held-out query points against a
//! disjoint reference part, `density_full` evaluates every point of one
//! set against the others (self excluded).

use crate::error::{Error, Result};
use crate::neighbors::{NeighborIndex, PointSet};
use crate::numerics::unit_ball_volume;

/// Number of neighbors used throughout unless overridden.
pub const DEFAULT_K: usize = 8;
/// Fraction of samples assigned to the estimation (reference) part.
pub const DEFAULT_SPLIT_FRACTION: f64 = 0.6;

/// How `split` assigns samples to the two parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMode {
    /// First `floor(f * n)` samples become the estimation part.
    Sequential,
    /// Samples are permuted with a seeded generator first.
    Shuffled { seed: u64 },
}

/// A series partitioned into an estimation part (M reference points) and
/// an evaluation part (N query points).
#[derive(Debug, Clone)]
pub struct SplitDataset {
    estimation: PointSet,
    evaluation: PointSet,
    fraction: f64,
}

impl SplitDataset {
    /// Assembles a split from already-separated parts.
    pub fn from_parts(estimation: PointSet, evaluation: PointSet) -> Result<Self> {
        if estimation.dim() != evaluation.dim() {
            return Err(Error::DimensionMismatch {
                expected: estimation.dim(),
                got: evaluation.dim(),
            });
        }
        let m = estimation.len() as f64;
        let n = evaluation.len() as f64;
        Ok(Self {
            estimation,
            evaluation,
            fraction: m / (m + n),
        })
    }

    pub fn estimation_part(&self) -> &PointSet {
        &self.estimation
    }

    pub fn evaluation_part(&self) -> &PointSet {
        &self.evaluation
    }

    pub fn fraction(&self) -> f64 {
        self.fraction
    }
}

/// Splits a series at `fraction`: the first `floor(fraction * n)` points
/// (after optional shuffling) become the estimation part, the rest the
/// evaluation part.
pub fn split(series: &PointSet, fraction: f64, mode: SplitMode) -> Result<SplitDataset> {
    if fraction <= 0.0 || fraction >= 1.0 || fraction.is_nan() {
        return Err(Error::InvalidFraction(fraction));
    }
    let n = series.len();
    if n < 4 {
        return Err(Error::SeriesTooShort { len: n, min: 4 });
    }
    let m = (fraction * n as f64).floor() as usize;
    if m == 0 || m == n {
        return Err(Error::EmptySplitPart { n, fraction });
    }

    let order: Vec<usize> = match mode {
        SplitMode::Sequential => (0..n).collect(),
        SplitMode::Shuffled { seed } => {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            idx
        }
    };

    let dim = series.dim();
    let mut est = Vec::with_capacity(m * dim);
    let mut eva = Vec::with_capacity((n - m) * dim);
    for (pos, &i) in order.iter().enumerate() {
        let target = if pos < m { &mut est } else { &mut eva };
        target.extend_from_slice(series.point(i));
    }
    Ok(SplitDataset {
        estimation: PointSet::new(est, dim)?,
        evaluation: PointSet::new(eva, dim)?,
        fraction,
    })
}

/// Density values at a list of query points with the context that
/// produced them.
#[derive(Debug, Clone)]
pub struct DensityEstimate {
    values: Vec<f64>,
    k: usize,
    ref_count: usize,
    dim: usize,
}

impl DensityEstimate {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ref_count(&self) -> usize {
        self.ref_count
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Data-split variant: every query is evaluated against a disjoint
/// reference set of M points.
pub fn density_split(queries: &PointSet, refs: &PointSet, k: usize) -> Result<DensityEstimate> {
    if queries.dim() != refs.dim() {
        return Err(Error::DimensionMismatch {
            expected: refs.dim(),
            got: queries.dim(),
        });
    }
    if k < 2 || k > refs.len() {
        return Err(Error::KOutOfRange {
            k,
            min: 2,
            max: refs.len(),
        });
    }
    let index = NeighborIndex::new(refs);
    let dim = refs.dim();
    let c_d = unit_ball_volume(dim)?;
    let m = refs.len() as f64;
    let mut values = Vec::with_capacity(queries.len());
    for (i, q) in queries.iter_points().enumerate() {
        let r = index.kth_distance(q, k)?;
        if r == 0.0 {
            return Err(Error::DegenerateNeighborhood { index: i });
        }
        values.push((k as f64 - 1.0) / (m * c_d * r.powi(dim as i32)));
    }
    Ok(DensityEstimate {
        values,
        k,
        ref_count: refs.len(),
        dim,
    })
}

/// Full-dataset variant: the density at each point of `set` is estimated
/// from all the other points of the same set.
pub fn density_full(set: &PointSet, k: usize) -> Result<DensityEstimate> {
    if set.len() < 2 || k < 2 || k > set.len() - 1 {
        return Err(Error::KOutOfRange {
            k,
            min: 2,
            max: set.len().saturating_sub(1),
        });
    }
    let index = NeighborIndex::new(set);
    let dim = set.dim();
    let c_d = unit_ball_volume(dim)?;
    let n = set.len() as f64;
    let mut values = Vec::with_capacity(set.len());
    for i in 0..set.len() {
        // self-distance (zero) is skipped by taking the (k+1)-th order statistic
        let r = index.kth_distance(set.point(i), k + 1)?;
        if r == 0.0 {
            return Err(Error::DegenerateNeighborhood { index: i });
        }
        values.push((k as f64 - 1.0) / (n * c_d * r.powi(dim as i32)));
    }
    Ok(DensityEstimate {
        values,
        k,
        ref_count: set.len(),
        dim,
    })
}
