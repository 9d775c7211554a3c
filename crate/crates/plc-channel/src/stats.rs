//! Statistical path models: path count, path magnitudes, and inter-arrival
//! intervals.
//!
//! All evaluators are pure; samplers draw from a caller-owned random stream,
//! so the module holds no mutable state. Classes are 1..=5. The path-count
//! and interval models only exist for classes 2..=5 (class 1 channels carry
//! a single path and only use the first-arrival magnitude curve).

use rand::Rng;
use rand_distr::{Distribution, Normal, Open01};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tables::{DoubleExp, ParameterTables};

/// Channel quality class, 1..=5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassId(u8);

impl ClassId {
    pub fn new(value: u8) -> Result<Self> {
        if (1..=5).contains(&value) {
            Ok(ClassId(value))
        } else {
            Err(Error::UnsupportedClass {
                class: value,
                supported: "1..=5",
            })
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl std::fmt::Display for ClassId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Cluster index, k >= 1. Table-backed magnitude rows cover k in 1..=20.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClusterIndex(u32);

impl ClusterIndex {
    pub fn new(value: u32) -> Result<Self> {
        if value >= 1 {
            Ok(ClusterIndex(value))
        } else {
            Err(Error::UnsupportedCluster {
                cluster: value,
                expected: "k >= 1",
            })
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl std::fmt::Display for ClusterIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn count_model(class: ClassId) -> Result<&'static crate::tables::PathCountCurves> {
    ParameterTables::get()
        .path_count(class.get())
        .ok_or(Error::UnsupportedClass {
            class: class.get(),
            supported: "2..=5",
        })
}

/// Mean of the Gaussian path-count model.
pub fn path_count_mean(class: ClassId, cluster: ClusterIndex) -> Result<f64> {
    Ok(count_model(class)?.mean.eval(f64::from(cluster.get())))
}

/// Variance of the Gaussian path-count model.
///
/// The fitted curve stays positive over the fitted cluster range 1..=20
/// (checked at load); far outside it the curve can cross zero, which is
/// reported as a data-integrity error rather than silently sampled.
pub fn path_count_variance(class: ClassId, cluster: ClusterIndex) -> Result<f64> {
    let v = count_model(class)?.variance.eval(f64::from(cluster.get()));
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::NonPositiveVariance {
            class: class.get(),
            cluster: cluster.get(),
            variance: v,
        })
    }
}

/// One draw of the path count: a Gaussian variate rounded to the nearest
/// integer (half away from zero) and clamped to at least one path.
pub fn sample_path_count<R: Rng + ?Sized>(
    class: ClassId,
    cluster: ClusterIndex,
    rng: &mut R,
) -> Result<u32> {
    let mean = path_count_mean(class, cluster)?;
    let variance = path_count_variance(class, cluster)?;
    Ok(sample_rounded_gaussian(mean, variance, rng))
}

/// Rounded-and-clamped Gaussian draw underlying [`sample_path_count`].
///
/// `variance = 0` degenerates to `round(mean).max(1)`, which is what the
/// distribution tests use to pin the rounding rule.
pub fn sample_rounded_gaussian<R: Rng + ?Sized>(mean: f64, variance: f64, rng: &mut R) -> u32 {
    let x = if variance == 0.0 {
        mean
    } else {
        Normal::new(mean, variance.sqrt())
            .expect("finite mean and positive std dev")
            .sample(rng)
    };
    let rounded = x.round(); // half away from zero
    if rounded < 1.0 {
        1
    } else {
        rounded as u32
    }
}

/// Magnitude of the first arrival path: a double-exponential decay over the
/// cluster index, defined for every class.
pub fn first_arrival_magnitude(class: ClassId, cluster: ClusterIndex) -> f64 {
    ParameterTables::get()
        .first_arrival(class.get())
        .expect("ClassId guarantees 1..=5")
        .eval(f64::from(cluster.get()))
}

/// Magnitude of a non-first path at time-sample index `j` (offset from the
/// first arrival), from the per-cluster decay row.
pub fn other_path_magnitude(cluster: ClusterIndex, sample_index: u32) -> Result<f64> {
    let row = other_path_curve(cluster)?;
    Ok(row.eval(f64::from(sample_index)))
}

pub(crate) fn other_path_curve(cluster: ClusterIndex) -> Result<&'static DoubleExp> {
    ParameterTables::get()
        .other_path(cluster.get())
        .ok_or(Error::UnsupportedCluster {
            cluster: cluster.get(),
            expected: "1..=20",
        })
}

/// Generalized-extreme-value parameters of the inter-arrival interval model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GevParams {
    /// Location (the table's epsilon row).
    pub location: f64,
    /// Scale (the table's eta/delta row), strictly positive.
    pub scale: f64,
    /// Shape (the table's xi row).
    pub shape: f64,
}

impl GevParams {
    pub fn new(location: f64, scale: f64, shape: f64) -> Result<Self> {
        if scale > 0.0 {
            Ok(GevParams {
                location,
                scale,
                shape,
            })
        } else {
            Err(Error::GevScaleNotPositive { scale })
        }
    }

    /// Probability density. Zero outside the support.
    pub fn pdf(&self, x: f64) -> f64 {
        let z = (x - self.location) / self.scale;
        if self.shape == 0.0 {
            ((-z - (-z).exp()).exp()) / self.scale
        } else {
            let t = 1.0 + self.shape * z;
            if t <= 0.0 {
                return 0.0;
            }
            let ln_t = t.ln();
            // ln f = -ln(scale) + (-1/shape - 1) ln t - t^(-1/shape)
            let inv_pow = (-ln_t / self.shape).exp();
            ((-1.0 / self.shape - 1.0) * ln_t - inv_pow - self.scale.ln()).exp()
        }
    }

    /// Cumulative distribution, exp(-(1 + shape*z)^(-1/shape)).
    pub fn cdf(&self, x: f64) -> f64 {
        let z = (x - self.location) / self.scale;
        if self.shape == 0.0 {
            (-(-z).exp()).exp()
        } else {
            let t = 1.0 + self.shape * z;
            if t <= 0.0 {
                return if self.shape > 0.0 { 0.0 } else { 1.0 };
            }
            (-(-t.ln() / self.shape).exp()).exp()
        }
    }

    /// Inverse CDF for u in (0, 1).
    pub fn quantile(&self, u: f64) -> f64 {
        debug_assert!(u > 0.0 && u < 1.0);
        let neg_ln_u = -u.ln();
        if self.shape == 0.0 {
            self.location - self.scale * neg_ln_u.ln()
        } else {
            self.location + self.scale * (neg_ln_u.powf(-self.shape) - 1.0) / self.shape
        }
    }

    /// One inverse-CDF draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = Open01.sample(rng);
        self.quantile(u)
    }

    /// Lower edge of the support when the shape is positive.
    pub fn support_lower_bound(&self) -> Option<f64> {
        (self.shape > 0.0).then(|| self.location - self.scale / self.shape)
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }
}

/// Interval-model parameters for one (class, cluster) cell.
///
/// Classes 2..=4 use linear parameter curves; class 5 uses power curves for
/// shape and scale. The class-5 scale curve is negative for k <= 11
/// (crossover near k = 11.64), so those cells are rejected as
/// parameter-domain errors rather than guessed at.
pub fn gev_params(class: ClassId, cluster: ClusterIndex) -> Result<GevParams> {
    let curves = ParameterTables::get()
        .gev(class.get())
        .ok_or(Error::UnsupportedClass {
            class: class.get(),
            supported: "2..=5",
        })?;
    let k = f64::from(cluster.get());
    GevParams::new(
        curves.location.eval(k),
        curves.scale.eval(k),
        curves.shape.eval(k),
    )
}
