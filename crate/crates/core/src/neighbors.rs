//! Exact k-nearest-neighbor distance queries.
//!
//! Two query modes back the density estimators: cross-set (the query point
//! is not a member of the reference set) and in-sample (it is, and the zero
//! self-distance must be skipped). Results are exact order statistics of
//! Euclidean distances; the 1-D path uses a sorted copy with an outward
//! two-pointer scan, higher dimensions fall back to brute-force selection.
//! Both paths return bit-identical values to a sort-all-distances oracle.

use crate::error::{Error, Result};

/// An immutable, non-empty set of d-dimensional points stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    data: Vec<f64>,
    dim: usize,
}

impl PointSet {
    /// Builds a point set from a flat row-major buffer.
    pub fn new(data: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain {
                func: "PointSet::new",
                arg: 0.0,
                requirement: "dim >= 1",
            });
        }
        if data.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if !data.len().is_multiple_of(dim) {
            return Err(Error::RaggedData {
                len: data.len(),
                dim,
            });
        }
        Ok(Self { data, dim })
    }

    /// One-dimensional series.
    pub fn from_scalars(values: Vec<f64>) -> Result<Self> {
        Self::new(values, 1)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map(Vec::len).ok_or(Error::EmptyPointSet)?;
        let mut data = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(data, dim)
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, index: usize) -> &[f64] {
        &self.data[index * self.dim..(index + 1) * self.dim]
    }

    pub fn iter_points(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    /// The underlying scalar values of a 1-D set.
    pub fn scalars(&self) -> Result<&[f64]> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: self.dim,
            });
        }
        Ok(&self.data)
    }

    /// Copy of the points in `[start, start + len)`.
    pub fn window(&self, start: usize, len: usize) -> Result<Self> {
        let end = start + len;
        if len == 0 || end > self.len() {
            return Err(Error::IndexOutOfRange {
                index: end.saturating_sub(1),
                len: self.len(),
            });
        }
        Ok(Self {
            data: self.data[start * self.dim..end * self.dim].to_vec(),
            dim: self.dim,
        })
    }

    /// New set with every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            data: self.data.iter().map(|v| v * factor).collect(),
            dim: self.dim,
        }
    }
}

/// Euclidean distance; coordinates are accumulated left to right so the
/// result is reproducible across call sites.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Reusable query structure over a reference set.
///
/// For 1-D data the constructor sorts a copy of the values once; each query
/// is then O(log n + k). Higher dimensions keep the raw points and select
/// the k-th order statistic of all distances per query.
pub struct NeighborIndex<'a> {
    refs: &'a PointSet,
    sorted: Option<Vec<f64>>,
}

impl<'a> NeighborIndex<'a> {
    pub fn new(refs: &'a PointSet) -> Self {
        let sorted = (refs.dim() == 1).then(|| {
            let mut v = refs.data.clone();
            v.sort_unstable_by(f64::total_cmp);
            v
        });
        Self { refs, sorted }
    }

    /// Distance from `query` to its k-th nearest point of the reference set
    /// (k = 1 is the nearest). Ties count as distinct order statistics.
    pub fn kth_distance(&self, query: &[f64], k: usize) -> Result<f64> {
        if query.len() != self.refs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.refs.dim(),
                got: query.len(),
            });
        }
        if k == 0 || k > self.refs.len() {
            return Err(Error::KOutOfRange {
                k,
                min: 1,
                max: self.refs.len(),
            });
        }
        match &self.sorted {
            Some(sorted) => Ok(kth_distance_sorted(sorted, query[0], k)),
            None => Ok(self.kth_distance_bruteforce(query, k)),
        }
    }

    fn kth_distance_bruteforce(&self, query: &[f64], k: usize) -> f64 {
        let mut dists: Vec<f64> = self
            .refs
            .iter_points()
            .map(|p| euclidean_distance(query, p))
            .collect();
        let (_, kth, _) = dists.select_nth_unstable_by(k - 1, f64::total_cmp);
        *kth
    }
}

fn kth_distance_sorted(sorted: &[f64], query: f64, k: usize) -> f64 {
    let split = sorted.partition_point(|&v| v < query);
    let mut left = split; // next candidate on the left is sorted[left - 1]
    let mut right = split; // next candidate on the right is sorted[right]
    let mut last = 0.0;
    let q = std::slice::from_ref(&query);
    for _ in 0..k {
        let dl = if left > 0 {
            euclidean_distance(q, std::slice::from_ref(&sorted[left - 1]))
        } else {
            f64::INFINITY
        };
        let dr = if right < sorted.len() {
            euclidean_distance(q, std::slice::from_ref(&sorted[right]))
        } else {
            f64::INFINITY
        };
        if dl <= dr {
            last = dl;
            left -= 1;
        } else {
            last = dr;
            right += 1;
        }
    }
    last
}

/// k-th nearest distance from `query` to the points of `refs` (cross-set:
/// the query is not assumed to be a member of `refs`).
pub fn knn_distance_cross(query: &[f64], refs: &PointSet, k: usize) -> Result<f64> {
    NeighborIndex::new(refs).kth_distance(query, k)
}

/// k-th nearest distance from `set.point(index)` to the *other* points of
/// `set`. Equivalent to the (k+1)-th order statistic when the zero
/// self-distance is included, which is how it is computed.
pub fn knn_distance_in_sample(set: &PointSet, index: usize, k: usize) -> Result<f64> {
    if index >= set.len() {
        return Err(Error::IndexOutOfRange {
            index,
            len: set.len(),
        });
    }
    if k == 0 || k > set.len() - 1 {
        return Err(Error::KOutOfRange {
            k,
            min: 1,
            max: set.len() - 1,
        });
    }
    NeighborIndex::new(set).kth_distance(set.point(index), k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set_1d(values: &[f64]) -> PointSet {
        PointSet::from_scalars(values.to_vec()).unwrap()
    }

    #[test]
    fn cross_basic_1d() {
        let refs = set_1d(&[1.0, 2.0, 4.0, 8.0]);
        assert_eq!(knn_distance_cross(&[0.0], &refs, 2).unwrap(), 2.0);
        let refs = set_1d(&[5.0, 9.0]);
        assert_eq!(knn_distance_cross(&[5.0], &refs, 1).unwrap(), 0.0);
    }

    #[test]
    fn cross_basic_2d() {
        let refs = PointSet::from_rows(&[vec![3.0, 4.0], vec![6.0, 8.0]]).unwrap();
        assert_eq!(knn_distance_cross(&[0.0, 0.0], &refs, 1).unwrap(), 5.0);
    }

    #[test]
    fn in_sample_skips_self() {
        let set = set_1d(&[0.0, 1.0, 2.0, 4.0]);
        // distances from 0 to the others are {1, 2, 4}
        assert_eq!(knn_distance_in_sample(&set, 0, 2).unwrap(), 2.0);
        let dup = set_1d(&[7.0, 7.0, 7.0]);
        assert_eq!(knn_distance_in_sample(&dup, 1, 1).unwrap(), 0.0);
        let pair = set_1d(&[0.0, 10.0]);
        assert_eq!(knn_distance_in_sample(&pair, 0, 1).unwrap(), 10.0);
    }

    #[test]
    fn rejects_bad_k_and_dims() {
        let refs = set_1d(&[1.0, 2.0]);
        assert!(matches!(
            knn_distance_cross(&[0.0], &refs, 3),
            Err(Error::KOutOfRange { .. })
        ));
        assert!(matches!(
            knn_distance_cross(&[0.0, 0.0], &refs, 1),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            knn_distance_in_sample(&refs, 0, 2),
            Err(Error::KOutOfRange { .. })
        ));
        assert!(matches!(
            knn_distance_in_sample(&refs, 5, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn point_set_invariants() {
        assert!(matches!(
            PointSet::from_scalars(vec![]),
            Err(Error::EmptyPointSet)
        ));
        assert!(matches!(
            PointSet::new(vec![1.0, 2.0, 3.0], 2),
            Err(Error::RaggedData { .. })
        ));
        assert!(PointSet::new(vec![1.0], 0).is_err());
    }

    /// Sort-all-distances reference used by the property tests below.
    fn oracle_kth(query: &[f64], refs: &PointSet, k: usize) -> f64 {
        let mut dists: Vec<f64> = refs
            .iter_points()
            .map(|p| euclidean_distance(query, p))
            .collect();
        dists.sort_by(f64::total_cmp);
        dists[k - 1]
    }

    fn arb_points(dim: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(
            prop::collection::vec(-100.0f64..100.0, dim..=dim),
            2..=max_len,
        )
    }

    proptest! {
        #[test]
        fn matches_oracle_bitwise(
            dim in 1usize..=3,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(2..=200usize);
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..dim).map(|_| rng.random_range(-50.0..50.0)).collect())
                .collect();
            let refs = PointSet::from_rows(&rows).unwrap();
            let query: Vec<f64> = (0..dim).map(|_| rng.random_range(-50.0..50.0)).collect();
            let k = rng.random_range(1..=n);
            let got = knn_distance_cross(&query, &refs, k).unwrap();
            let want = oracle_kth(&query, &refs, k);
            prop_assert_eq!(got.to_bits(), want.to_bits());
        }

        #[test]
        fn permutation_invariant(rows in arb_points(1, 60), k in 1usize..=10, offset in -5.0f64..5.0) {
            prop_assume!(k <= rows.len());
            let refs = PointSet::from_rows(&rows).unwrap();
            let mut shuffled = rows.clone();
            shuffled.reverse();
            shuffled.rotate_left(rows.len() / 3);
            let refs2 = PointSet::from_rows(&shuffled).unwrap();
            let a = knn_distance_cross(&[offset], &refs, k).unwrap();
            let b = knn_distance_cross(&[offset], &refs2, k).unwrap();
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }

        #[test]
        fn nondecreasing_in_k(rows in arb_points(2, 40), q in prop::collection::vec(-100.0f64..100.0, 2..=2)) {
            let refs = PointSet::from_rows(&rows).unwrap();
            let mut prev = 0.0;
            for k in 1..=refs.len() {
                let d = knn_distance_cross(&q, &refs, k).unwrap();
                prop_assert!(d >= prev);
                prev = d;
            }
        }
    }
}
