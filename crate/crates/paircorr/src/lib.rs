//! Pair-correlation statistics and equidistribution diagnostics for finite
//! sequences in the unit interval `[0,1)`.
//!
//! The crate is organized around a small set of building blocks:
//!
//! * [`points`] — the [`PointSet`] container, the torus metric, and the
//!   pair-correlation statistic `F_N(s)` with both a quadratic reference
//!   counter and an `O(N log N)` sorted-window counter.
//! * [`generators`] — deterministic and seeded test sequences (Kronecker,
//!   quadratic Weyl, van der Corput, i.i.d. uniform, piecewise-constant
//!   densities, atom mixtures, two-interval interleavings).
//! * [`spectral`] — bin counts, the cyclic quadratic form `H_{N,M}(s)`, the
//!   circulant eigenvalue formulas (Dirichlet and Fejér kernels), the
//!   averaged lower bound `S N^2 / M`, and the chain inequality linking `H`
//!   to `F_N`.
//! * [`equidist`] — empirical CDF, exact star discrepancy, Weyl sums, and
//!   the histogram estimate of the density square-integral.
//! * [`harness`] — experiment pipelines producing machine-readable reports.

pub mod equidist;
pub mod generators;
pub mod harness;
pub mod points;
pub mod spectral;

pub use points::{torus_distance, PairCorrelationCurve, PointSet};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("point set must contain at least one point")]
    EmptyPointSet,
    #[error("point value at position {index} is not finite")]
    NonFinitePoint { index: usize },
    #[error("line {line}: cannot parse {content:?} as a point in [0,1)")]
    ParsePoint { line: usize, content: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("multipliers must be distinct positive integers")]
    DuplicateMultipliers,
    #[error("radical-inverse base must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("invalid density: {0}")]
    InvalidDensity(String),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("window width 2s-1 = {width} exceeds the bin count M = {bins}")]
    WindowTooWide { width: usize, bins: usize },
    #[error("Fejér averaging requires 2S < M; got S = {cap_s}, M = {bins}")]
    FejerOrderTooLarge { cap_s: usize, bins: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
