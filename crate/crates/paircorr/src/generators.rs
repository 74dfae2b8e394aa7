//! Test sequences: equidistributed, non-equidistributed, Poissonian and
//! non-Poissonian inputs, plus i.i.d. samples from piecewise-constant
//! densities.
//!
//! Every generator is a pure function of its arguments. Seeded generators
//! draw from ChaCha8 keyed by the seed, which is platform independent and
//! reproducible across runs; statistical quality is more than sufficient and
//! cryptographic strength is not a goal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, PointSet, Result};

/// Largest double strictly below 1; used to keep clamped samples inside
/// `[0,1)` without wrapping them to 0.
const MAX_BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

fn fractional(x: f64) -> f64 {
    let mut f = x.fract();
    if f < 0.0 {
        f += 1.0;
    }
    if f >= 1.0 || f == 0.0 {
        f = 0.0;
    }
    f
}

fn require_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "point count must be at least 1".into(),
        });
    }
    Ok(())
}

fn require_unit_open(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 || v >= 1.0 {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must lie strictly inside (0,1), got {v}"),
        });
    }
    Ok(())
}

fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The Kronecker sequence `{ k·alpha }`, `k = 1..=n`.
pub fn kronecker(alpha: f64, n: usize) -> Result<PointSet> {
    require_count(n)?;
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: "must be finite".into(),
        });
    }
    PointSet::new(
        (1..=n)
            .map(|k| fractional(k as f64 * alpha))
            .collect(),
    )
}

/// The quadratic Weyl sequence `{ k²·alpha }`, `k = 1..=n`.
pub fn quadratic_weyl(alpha: f64, n: usize) -> Result<PointSet> {
    require_count(n)?;
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: "must be finite".into(),
        });
    }
    PointSet::new(
        (1..=n)
            .map(|k| {
                let k = k as f64;
                fractional(k * k * alpha)
            })
            .collect(),
    )
}

/// Whether `{k²·alpha}` at 64-bit precision still resolves the `1/n` pair
/// scale: the representation error of `alpha` is amplified by `k² ≤ n²`, so
/// we demand `n² · ulp(alpha) ≤ 1/n`. Experiment drivers check this before
/// running quadratic-Weyl inputs.
pub fn quadratic_precision_ok(alpha: f64, n: usize) -> bool {
    let ulp = if alpha == 0.0 {
        f64::MIN_POSITIVE
    } else {
        alpha.abs() * f64::EPSILON
    };
    let n = n as f64;
    n * n * n * ulp <= 1.0
}

/// The sequence `{ n_k·alpha }` for distinct positive integer multipliers.
pub fn general_weyl(multipliers: &[u64], alpha: f64) -> Result<PointSet> {
    require_count(multipliers.len())?;
    let mut seen = multipliers.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) || seen[0] == 0 {
        return Err(Error::DuplicateMultipliers);
    }
    PointSet::new(
        multipliers
            .iter()
            .map(|&m| fractional(m as f64 * alpha))
            .collect(),
    )
}

/// Radical inverse of `i` in the given base.
fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv_base = 1.0 / base as f64;
    let mut scale = inv_base;
    let mut x = 0.0;
    while i > 0 {
        x += (i % base) as f64 * scale;
        scale *= inv_base;
        i /= base;
    }
    x
}

/// The van der Corput sequence in `base`, starting from index 1.
pub fn van_der_corput(base: u64, n: usize) -> Result<PointSet> {
    require_count(n)?;
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    PointSet::new((1..=n as u64).map(|i| radical_inverse(i, base)).collect())
}

/// `n` i.i.d. uniform draws from `[0,1)`, a pure function of the seed.
pub fn iid_uniform(seed: u64, n: usize) -> Result<PointSet> {
    require_count(n)?;
    let mut rng = seeded_rng(seed);
    PointSet::new((0..n).map(|_| rng.gen::<f64>()).collect())
}

/// A piecewise-constant probability density on `[0,1)`.
///
/// `heights[k]` is the density on `[breakpoints[k], breakpoints[k+1])`; the
/// total mass must equal 1 within `1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySpec {
    breakpoints: Vec<f64>,
    heights: Vec<f64>,
    cumulative: Vec<f64>,
}

impl DensitySpec {
    pub fn new(breakpoints: Vec<f64>, heights: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 || heights.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidDensity(format!(
                "need K+1 breakpoints for K heights, got {} and {}",
                breakpoints.len(),
                heights.len()
            )));
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return Err(Error::InvalidDensity(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidDensity(
                "breakpoints must be strictly ascending".into(),
            ));
        }
        if heights.iter().any(|&g| !g.is_finite() || g < 0.0) {
            return Err(Error::InvalidDensity(
                "heights must be finite and nonnegative".into(),
            ));
        }
        let mut cumulative = Vec::with_capacity(breakpoints.len());
        cumulative.push(0.0);
        for (k, &g) in heights.iter().enumerate() {
            let mass = g * (breakpoints[k + 1] - breakpoints[k]);
            cumulative.push(cumulative[k] + mass);
        }
        let total = *cumulative.last().unwrap();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDensity(format!(
                "total mass must be 1 within 1e-12, got {total}"
            )));
        }
        Ok(Self {
            breakpoints,
            heights,
            cumulative,
        })
    }

    /// The uniform density `g ≡ 1`.
    pub fn uniform() -> Self {
        Self::new(vec![0.0, 1.0], vec![1.0]).expect("uniform density is valid")
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    /// Inverse of the CDF, mapping `u ∈ [0,1)` into the support.
    pub fn quantile(&self, u: f64) -> f64 {
        debug_assert!((0.0..1.0).contains(&u));
        let total = *self.cumulative.last().unwrap();
        let target = (u * total).min(total.next_down());
        // Segments with zero mass satisfy c[k+1] = c[k] <= target and are
        // skipped, so the selected segment always has positive height.
        let k = self.cumulative[1..].partition_point(|&c| c <= target);
        let x = self.breakpoints[k] + (target - self.cumulative[k]) / self.heights[k];
        x.min(MAX_BELOW_ONE)
    }
}

/// `n` i.i.d. draws from the density via inverse-CDF transform of the
/// uniform stream. With the uniform density this reproduces
/// [`iid_uniform`] bit for bit.
pub fn iid_density(spec: &DensitySpec, seed: u64, n: usize) -> Result<PointSet> {
    require_count(n)?;
    let mut rng = seeded_rng(seed);
    PointSet::new((0..n).map(|_| spec.quantile(rng.gen::<f64>())).collect())
}

/// Points equal to `atom` with probability `weight`, otherwise uniform.
///
/// The limit distribution has an atom, which is the non-absolutely-continuous
/// regime where `F_N(s)/N` stays bounded away from zero.
pub fn atom_mixture(atom: f64, weight: f64, seed: u64, n: usize) -> Result<PointSet> {
    require_count(n)?;
    if !atom.is_finite() || !(0.0..1.0).contains(&atom) {
        return Err(Error::InvalidParameter {
            name: "atom",
            reason: format!("must lie in [0,1), got {atom}"),
        });
    }
    require_unit_open("weight", weight)?;
    let mut rng = seeded_rng(seed);
    PointSet::new(
        (0..n)
            .map(|_| {
                let u = rng.gen::<f64>();
                if u < weight {
                    atom
                } else {
                    // u conditioned on [weight, 1) rescaled back to [0,1)
                    ((u - weight) / (1.0 - weight)).min(MAX_BELOW_ONE)
                }
            })
            .collect(),
    )
}

/// A deterministic sequence placing asymptotic mass `b` on `[0,a)` while
/// staying locally equidistributed inside each of the two intervals.
///
/// Points are routed greedily so the left share tracks `b` within `1/n`, and
/// each interval is filled by its own base-2 van der Corput stream rescaled
/// into the interval. The only equidistribution failure is the mass
/// imbalance itself.
pub fn two_interval_sequence(a: f64, b: f64, n: usize) -> Result<PointSet> {
    require_count(n)?;
    require_unit_open("a", a)?;
    require_unit_open("b", b)?;
    let mut left = 0u64;
    let mut right = 0u64;
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let go_left = (left as f64) < b * (k as f64 + 1.0);
        if go_left {
            left += 1;
            values.push(a * radical_inverse(left, 2));
        } else {
            right += 1;
            values.push(a + (1.0 - a) * radical_inverse(right, 2));
        }
    }
    PointSet::new(values)
}
