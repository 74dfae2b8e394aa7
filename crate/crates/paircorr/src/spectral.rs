//! Bin counts and the circulant spectral machinery behind the pair-count
//! lower bounds.
//!
//! Partition `[0,1)` into `M` equal bins and let `y_m` count the points in
//! bin `m`. The cyclic quadratic form
//!
//! ```text
//! H_{N,M}(s) = Σ_m Σ_{|ℓ| ≤ s-1} y_m · y_{(m+ℓ) mod M}
//! ```
//!
//! is attached to a symmetric band circulant `A^(s)` whose eigenvalues are a
//! Dirichlet kernel sampled at `m/M`; averaging the first `S` of these forms
//! turns the Dirichlet kernel into the nonnegative Fejér kernel, which gives
//! the unconditional bound `(1/S) Σ_s H_{N,M}(s) ≥ S·N²/M`. Two nearby bins
//! hold points within torus distance `s/M`, so `H` is in turn dominated by
//! `N·F_N(sN/M) + N`. Chaining the two yields lower bounds on `F_N`.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::{Error, PointSet, Result};

/// Integer counts from partitioning `[0,1)` into equal bins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinnedCounts {
    counts: Vec<u64>,
    total: u64,
}

impl BinnedCounts {
    /// Wrap raw counts; the bin count must be at least 1.
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidParameter {
                name: "counts",
                reason: "need at least one bin".into(),
            });
        }
        let total = counts.iter().sum();
        Ok(Self { counts, total })
    }

    /// Number of bins `M`.
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    /// The counts `y_1..y_M`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total number of points `N = Σ y_m`.
    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Count points per bin `I_m = [m/M, (m+1)/M)`.
pub fn bin_counts(ps: &PointSet, bins: usize) -> BinnedCounts {
    assert!(bins >= 1, "need at least one bin");
    let mut counts = vec![0u64; bins];
    for &x in ps.values() {
        let idx = ((x * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    BinnedCounts {
        counts,
        total: ps.len() as u64,
    }
}

fn check_window(s: usize, bins: usize) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidParameter {
            name: "s",
            reason: "window order must be a positive integer".into(),
        });
    }
    let width = 2 * s - 1;
    if width > bins {
        return Err(Error::WindowTooWide { width, bins });
    }
    Ok(())
}

/// Exact integer evaluation of the cyclic quadratic form. The window sum is
/// maintained while the center slides, so the cost is `O(M)` per order.
fn quadratic_form_exact(counts: &[u64], s: usize) -> u128 {
    let m = counts.len();
    let mut window: u128 = 0;
    // window centered at 0 covers offsets -(s-1)..=(s-1)
    for offset in 0..(2 * s - 1) {
        let idx = (offset + m + 1 - s) % m;
        window += counts[idx] as u128;
    }
    let mut h: u128 = 0;
    for center in 0..m {
        h += counts[center] as u128 * window;
        // slide: drop the trailing cell, pick up the next leading cell
        window -= counts[(center + m + 1 - s) % m] as u128;
        window += counts[(center + s) % m] as u128;
    }
    h
}

/// The cyclic quadratic form `H_{N,M}(s)`; requires `2s-1 ≤ M` so the window
/// never overlaps itself.
pub fn quadratic_form_h(bc: &BinnedCounts, s: usize) -> Result<f64> {
    check_window(s, bc.bins())?;
    Ok(quadratic_form_exact(&bc.counts, s) as f64)
}

/// Eigenvalue `λ_m^(s)` of the band circulant `A^(s)`: a Dirichlet kernel of
/// order `s-1` sampled at `m/M`, with the removable singularity `2s-1` at
/// `m = 0`.
pub fn dirichlet_eigenvalue(bins: usize, s: usize, m: usize) -> f64 {
    assert!(bins >= 1, "need at least one bin");
    assert!(s >= 1, "order must be positive");
    assert!(m < bins, "eigenvalue index out of range");
    if m == 0 {
        return (2 * s - 1) as f64;
    }
    let theta = std::f64::consts::PI * m as f64 / bins as f64;
    ((2 * s - 1) as f64 * theta).sin() / theta.sin()
}

/// Fejér-averaged eigenvalue `λ_m^(Σ) = (1/S) Σ_{s=1}^{S} λ_m^(s)`.
///
/// Nonnegative up to rounding; exactly `S` at `m = 0`. Requires `2S < M`.
pub fn fejer_eigenvalue(bins: usize, cap_s: usize, m: usize) -> Result<f64> {
    if cap_s == 0 {
        return Err(Error::InvalidParameter {
            name: "cap_s",
            reason: "averaging order must be a positive integer".into(),
        });
    }
    if 2 * cap_s >= bins {
        return Err(Error::FejerOrderTooLarge { cap_s, bins });
    }
    assert!(m < bins, "eigenvalue index out of range");
    if m == 0 {
        return Ok(cap_s as f64);
    }
    let sum: f64 = (1..=cap_s)
        .map(|s| dirichlet_eigenvalue(bins, s, m))
        .sum();
    Ok(sum / cap_s as f64)
}

/// Eigenvalues of the circulant matrix with the given first row, via the
/// defining DFT `λ_m = Σ_ℓ c_ℓ e^{2πi ℓ m / M}`.
///
/// For symmetric first rows the imaginary parts vanish up to rounding. This
/// is the small-M oracle; the closed forms above are the production path.
pub fn circulant_eigenvalues(first_row: &[f64]) -> Vec<Complex64> {
    let m_len = first_row.len();
    (0..m_len)
        .map(|m| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (l, &c) in first_row.iter().enumerate() {
                let angle = TAU * ((l * m) % m_len) as f64 / m_len as f64;
                acc += c * Complex64::new(angle.cos(), angle.sin());
            }
            acc
        })
        .collect()
}

/// First row of the band circulant `A^(s)` on `M` bins: ones at periodic
/// distance at most `s-1` from the diagonal.
pub fn band_circulant_first_row(bins: usize, s: usize) -> Vec<f64> {
    (0..bins)
        .map(|l| {
            let dist = l.min(bins - l);
            if dist <= s - 1 {
                1.0
            } else {
                0.0
            }
        })
        .collect()
}

/// `(1/S) Σ_{s=1}^{S} H_{N,M}(s)`, the Fejér-averaged quadratic form.
///
/// Always at least [`lemma1_lower_bound`], with equality exactly for
/// constant counts. Requires `2S < M`.
pub fn lemma1_average(bc: &BinnedCounts, cap_s: usize) -> Result<f64> {
    if cap_s == 0 {
        return Err(Error::InvalidParameter {
            name: "cap_s",
            reason: "averaging order must be a positive integer".into(),
        });
    }
    if 2 * cap_s >= bc.bins() {
        return Err(Error::FejerOrderTooLarge {
            cap_s,
            bins: bc.bins(),
        });
    }
    let sum: u128 = (1..=cap_s)
        .map(|s| quadratic_form_exact(&bc.counts, s))
        .sum();
    Ok(sum as f64 / cap_s as f64)
}

/// The guaranteed floor `S·N²/M` for [`lemma1_average`].
pub fn lemma1_lower_bound(bc: &BinnedCounts, cap_s: usize) -> f64 {
    let n = bc.total() as f64;
    cap_s as f64 * n * n / bc.bins() as f64
}

/// Both sides of the chain inequality `H_{N,M}(s) ≤ N·F_N(sN/M) + N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainCheck {
    /// `H_{N,M}(s)` from the binned counts.
    pub lhs: f64,
    /// `N·F_N(sN/M) + N` from the exact pair count.
    pub rhs: f64,
}

/// Evaluate the chain inequality for a point set; `lhs ≤ rhs` on every input.
pub fn h_to_f_chain_check(ps: &PointSet, bins: usize, s: usize) -> Result<ChainCheck> {
    let bc = bin_counts(ps, bins);
    let lhs = quadratic_form_h(&bc, s)?;
    let n = ps.len() as f64;
    let threshold = s as f64 * n / bins as f64;
    let rhs = n * ps.pair_correlation_value(threshold) + n;
    Ok(ChainCheck { lhs, rhs })
}

/// Which kernel a [`SpectralReport`] samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralKind {
    Dirichlet,
    Fejer,
}

/// The full eigenvalue list of `A^(s)` (Dirichlet) or of the Fejér average.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub bins: usize,
    /// The order parameter: `s` for Dirichlet, `S` for Fejér.
    pub order: usize,
    pub kind: SpectralKind,
    pub eigenvalues: Vec<f64>,
}

/// Dirichlet eigenvalues `λ_0..λ_{M-1}` of `A^(s)`.
pub fn dirichlet_report(bins: usize, s: usize) -> Result<SpectralReport> {
    check_window(s, bins)?;
    Ok(SpectralReport {
        bins,
        order: s,
        kind: SpectralKind::Dirichlet,
        eigenvalues: (0..bins).map(|m| dirichlet_eigenvalue(bins, s, m)).collect(),
    })
}

/// Fejér-averaged eigenvalues for averaging order `S` with `2S < M`.
pub fn fejer_report(bins: usize, cap_s: usize) -> Result<SpectralReport> {
    let eigenvalues = (0..bins)
        .map(|m| fejer_eigenvalue(bins, cap_s, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralReport {
        bins,
        order: cap_s,
        kind: SpectralKind::Fejer,
        eigenvalues,
    })
}
