//! Point sets on the torus `[0,1)` and the pair-correlation statistic.
//!
//! The central quantity is
//!
//! ```text
//! F_N(s) = (1/N) · #{ (m,n) : m ≠ n, ‖x_m − x_n‖ ≤ s/N }
//! ```
//!
//! where `‖·‖` is the distance to the nearest integer and pairs are ordered,
//! so every unordered pair contributes twice. A sequence has Poissonian pair
//! correlations when `F_N(s) → 2s`.

use rayon::prelude::*;
use serde::Serialize;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::{Error, Result};

/// Below this size the window counter runs sequentially; the per-call setup
/// cost of a parallel loop dominates for small sets.
const PARALLEL_MIN_POINTS: usize = 1 << 14;

/// Distance to the nearest integer between two points of `[0,1)`.
///
/// Symmetric, bounded by `1/2`, and translation invariant on the torus.
pub fn torus_distance(x: f64, y: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&x), "x out of domain: {x}");
    debug_assert!((0.0..1.0).contains(&y), "y out of domain: {y}");
    let gap = (x - y).abs();
    gap.min(1.0 - gap)
}

/// Reduce an arbitrary finite real to its fractional part in `[0,1)`.
fn reduce_mod_one(x: f64) -> f64 {
    let mut f = x.fract();
    if f < 0.0 {
        f += 1.0;
    }
    // `fract + 1` can round up to exactly 1.0 for tiny negative inputs, and
    // `fract` of a non-negative number can be -0.0; normalize both.
    if f >= 1.0 || f == 0.0 {
        f = 0.0;
    }
    f
}

/// A finite ordered list of points in `[0,1)`.
///
/// Inputs are reduced modulo one at construction; duplicates are permitted.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    values: Vec<f64>,
}

impl PointSet {
    /// Build a point set from raw values, reducing each modulo one.
    ///
    /// Fails on an empty list or on non-finite entries.
    pub fn new(raw: Vec<f64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut values = raw;
        for (index, v) in values.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinitePoint { index });
            }
            *v = reduce_mod_one(*v);
        }
        Ok(Self { values })
    }

    /// Load a point set from a UTF-8 text file, one decimal literal per line.
    ///
    /// Blank lines are ignored; any unparseable line aborts the load with the
    /// offending line number.
    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        let reader = BufReader::new(std::fs::File::open(path)?);
        let mut values = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let parsed: f64 = trimmed.parse().map_err(|_| Error::ParsePoint {
                line: idx + 1,
                content: trimmed.to_string(),
            })?;
            if !parsed.is_finite() {
                return Err(Error::ParsePoint {
                    line: idx + 1,
                    content: trimmed.to_string(),
                });
            }
            values.push(parsed);
        }
        Self::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees N >= 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Shift every point by `c` modulo one.
    pub fn translate(&self, c: f64) -> Self {
        let values = self
            .values
            .iter()
            .map(|&v| reduce_mod_one(v + c))
            .collect();
        Self { values }
    }

    /// Reference pair counter: the number of ordered pairs `(m,n)`, `m ≠ n`,
    /// with `‖x_m − x_n‖ ≤ s/N`. Quadratic scan, kept as the oracle for the
    /// sorted-window counter.
    pub fn pair_count_naive(&self, s: f64) -> u64 {
        assert!(s >= 0.0, "s must be nonnegative");
        let n = self.values.len();
        let d = s / n as f64;
        let mut unordered = 0u64;
        for m in 0..n {
            for k in m + 1..n {
                if torus_distance(self.values[m], self.values[k]) <= d {
                    unordered += 1;
                }
            }
        }
        2 * unordered
    }

    /// Fast pair counter. Agrees with [`PointSet::pair_count_naive`] exactly
    /// on every input, in `O(N log N)` independent of the count.
    ///
    /// After sorting, the circular window around each point splits into two
    /// runs: direct successors (gap `x_j − x_i`) and wrap-around neighbours
    /// near the opposite end of the array (gap `1 − (x_i − x_k)`). Both gap
    /// expressions are monotone along the sorted array, so each run boundary
    /// is a binary search, and both match the oracle's predicate bit for bit.
    pub fn pair_count_fast(&self, s: f64) -> u64 {
        assert!(s >= 0.0, "s must be nonnegative");
        let mut sorted = self.values.clone();
        sorted.sort_unstable_by(f64::total_cmp);
        count_threshold(&sorted, s)
    }

    /// The pair-correlation statistic `F_N(s) = pair_count(s) / N`.
    pub fn pair_correlation_value(&self, s: f64) -> f64 {
        self.pair_count_fast(s) as f64 / self.values.len() as f64
    }

    /// Evaluate `F_N` on an ascending grid of thresholds, sharing one sort.
    ///
    /// The result matches pointwise [`PointSet::pair_correlation_value`]
    /// exactly. An empty grid yields an empty curve.
    pub fn pair_correlation_curve(&self, s_grid: &[f64]) -> Result<PairCorrelationCurve> {
        for (i, &s) in s_grid.iter().enumerate() {
            if !s.is_finite() || s < 0.0 {
                return Err(Error::InvalidParameter {
                    name: "s_grid",
                    reason: format!("entry {i} must be a finite nonnegative real, got {s}"),
                });
            }
            if i > 0 && s <= s_grid[i - 1] {
                return Err(Error::InvalidParameter {
                    name: "s_grid",
                    reason: format!("must be strictly ascending (entry {i})"),
                });
            }
        }
        let n = self.values.len();
        let mut sorted = self.values.clone();
        sorted.sort_unstable_by(f64::total_cmp);
        let samples = s_grid
            .iter()
            .map(|&s| CurvePoint {
                s,
                value: count_threshold(&sorted, s) as f64 / n as f64,
            })
            .collect();
        Ok(PairCorrelationCurve { n, samples })
    }
}

/// Ordered pair count at threshold `s/N` over a sorted value array.
fn count_threshold(sorted: &[f64], s: f64) -> u64 {
    let n = sorted.len();
    let d = s / n as f64;
    if d >= 0.5 {
        // The torus distance never exceeds 1/2: every ordered pair counts.
        return (n as u64) * (n as u64 - 1);
    }
    2 * count_unordered_within(sorted, d)
}

/// Number of unordered pairs within torus distance `d`, for `d < 1/2`.
///
/// For a sorted pair `x_k ≤ x_j` the oracle accepts when `x_j − x_k ≤ d` or
/// `1 − (x_j − x_k) ≤ d`; for `d < 1/2` these branches are mutually exclusive
/// even after rounding, so counting the first branch from the lower point and
/// the second from the upper point hits each qualifying pair exactly once.
fn count_unordered_within(sorted: &[f64], d: f64) -> u64 {
    let per_point = |i: usize| -> u64 {
        let p = sorted[i];
        let direct = sorted[i + 1..].partition_point(|&v| v - p <= d);
        let wrapped = sorted[..i].partition_point(|&u| 1.0 - (p - u) <= d);
        (direct + wrapped) as u64
    };
    if sorted.len() >= PARALLEL_MIN_POINTS {
        (0..sorted.len()).into_par_iter().map(per_point).sum()
    } else {
        (0..sorted.len()).map(per_point).sum()
    }
}

/// A sampled map `s ↦ F_N(s)` over an ascending grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCorrelationCurve {
    /// The number of points the statistic was computed from.
    pub n: usize,
    pub samples: Vec<CurvePoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub s: f64,
    pub value: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(values: &[f64]) -> PointSet {
        PointSet::new(values.to_vec()).unwrap()
    }

    #[test]
    fn torus_distance_identity() {
        assert_eq!(torus_distance(0.0, 0.0), 0.0);
    }

    #[test]
    fn torus_distance_wraps() {
        let d = torus_distance(0.1, 0.9);
        assert!((d - 0.2).abs() < 1e-15, "got {d}");
        assert_eq!(torus_distance(0.1, 0.9), torus_distance(0.9, 0.1));
    }

    #[test]
    fn torus_distance_antipodal_maximum() {
        assert_eq!(torus_distance(0.0, 0.5), 0.5);
    }

    #[test]
    fn construction_reduces_mod_one() {
        let set = ps(&[1.25, -0.25, 3.0, -1e-18]);
        assert_eq!(set.values(), &[0.25, 0.75, 0.0, 0.0]);
        for &v in set.values() {
            assert!((0.0..1.0).contains(&v));
            assert!(v.is_sign_positive());
        }
    }

    #[test]
    fn construction_rejects_empty_and_nonfinite() {
        assert!(matches!(PointSet::new(vec![]), Err(Error::EmptyPointSet)));
        assert!(matches!(
            PointSet::new(vec![0.5, f64::NAN]),
            Err(Error::NonFinitePoint { index: 1 })
        ));
    }

    #[test]
    fn naive_count_hand_examples() {
        // threshold 0.25 < distance 0.5
        assert_eq!(ps(&[0.0, 0.5]).pair_count_naive(0.5), 0);
        // only {0.1, 0.2} is within 1/3, counted in both orders
        assert_eq!(ps(&[0.1, 0.2, 0.7]).pair_count_naive(1.0), 2);
        // all pairs coincide
        let n = 37;
        let coincident = ps(&vec![0.3; n]);
        assert_eq!(coincident.pair_count_naive(0.1), (n * n - n) as u64);
    }

    #[test]
    fn fast_count_matches_naive_on_examples() {
        for (values, s) in [
            (vec![0.0, 0.5], 0.5),
            (vec![0.1, 0.2, 0.7], 1.0),
            (vec![0.3; 12], 2.0),
            (vec![0.0, 0.25, 0.5, 0.75], 1.0),
        ] {
            let set = ps(&values);
            assert_eq!(set.pair_count_fast(s), set.pair_count_naive(s));
        }
    }

    #[test]
    fn full_torus_threshold_counts_everything() {
        let set = ps(&[0.1, 0.4, 0.9, 0.2, 0.2]);
        // s/N >= 1/2 covers the torus
        assert_eq!(set.pair_count_fast(2.5), 20);
        assert_eq!(set.pair_count_naive(2.5), 20);
    }

    #[test]
    fn zero_threshold_counts_duplicates_only() {
        let set = ps(&[0.25, 0.25, 0.8]);
        assert_eq!(set.pair_count_fast(0.0), 2);
        assert_eq!(set.pair_count_naive(0.0), 2);
    }

    #[test]
    fn correlation_value_examples() {
        let set = ps(&[0.1, 0.2, 0.7]);
        assert!((set.pair_correlation_value(1.0) - 2.0 / 3.0).abs() < 1e-15);
        let n = 9;
        let coincident = ps(&vec![0.4; n]);
        assert_eq!(coincident.pair_correlation_value(1.0), (n - 1) as f64);
    }

    #[test]
    fn curve_matches_pointwise_and_handles_empty_grid() {
        let set = ps(&[0.1, 0.2, 0.7]);
        let curve = set.pair_correlation_curve(&[0.1, 1.0]).unwrap();
        assert_eq!(curve.n, 3);
        assert_eq!(curve.samples[0].value, 0.0);
        assert_eq!(curve.samples[1].value, set.pair_correlation_value(1.0));

        let empty = set.pair_correlation_curve(&[]).unwrap();
        assert!(empty.samples.is_empty());
    }

    #[test]
    fn curve_rejects_bad_grids() {
        let set = ps(&[0.1, 0.2]);
        assert!(set.pair_correlation_curve(&[1.0, 1.0]).is_err());
        assert!(set.pair_correlation_curve(&[2.0, 1.0]).is_err());
        assert!(set.pair_correlation_curve(&[-1.0]).is_err());
        assert!(set.pair_correlation_curve(&[f64::NAN]).is_err());
    }

    #[test]
    fn file_roundtrip_and_errors() {
        let dir = std::env::temp_dir();
        let good = dir.join("paircorr_points_good.txt");
        std::fs::write(&good, "0.5\n\n  0.25  \n1.75\n").unwrap();
        let set = PointSet::from_file(&good).unwrap();
        assert_eq!(set.values(), &[0.5, 0.25, 0.75]);

        let bad = dir.join("paircorr_points_bad.txt");
        std::fs::write(&bad, "0.5\nnot-a-number\n").unwrap();
        match PointSet::from_file(&bad) {
            Err(Error::ParsePoint { line, content }) => {
                assert_eq!(line, 2);
                assert_eq!(content, "not-a-number");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
