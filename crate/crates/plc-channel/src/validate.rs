//! Monte Carlo goodness-of-fit machinery: proof that the samplers realize
//! their analytic distributions.
//!
//! Reports carry their thresholds so a reader can audit every pass/fail flag
//! without consulting the test code. Interval (GEV) cells are compared by
//! Kolmogorov-Smirnov distance and median, not moments: the fitted shape
//! parameters all exceed one, so the analytic mean does not exist.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::{
    gev_params, other_path_curve, path_count_mean, path_count_variance, sample_rounded_gaussian,
    ClassId, ClusterIndex,
};
use crate::tables::DoubleExp;

/// KS pass threshold: 0.01 at n = 1e5, scaled as 1/sqrt(n).
pub fn ks_threshold(samples: u64) -> f64 {
    3.1622776601683795 / (samples as f64).sqrt()
}

/// Two-sided Kolmogorov-Smirnov statistic of a sorted sample against an
/// analytic CDF: max over i of max(i/n - F(x_i), F(x_i) - (i-1)/n).
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted_samples: &[f64], cdf: F) -> Result<f64> {
    if sorted_samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    debug_assert!(sorted_samples.windows(2).all(|w| w[0] <= w[1]));
    let n = sorted_samples.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in sorted_samples.iter().enumerate() {
        let f = cdf(x);
        let hi = (i + 1) as f64 / n - f;
        let lo = f - i as f64 / n;
        sup = sup.max(hi).max(lo);
    }
    Ok(sup)
}

/// One goodness-of-fit result cell. Absent checks serialize as nothing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofReport {
    pub model: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<u8>,
    pub cluster: u32,
    pub samples: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_statistic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_median: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_median: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub median_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub median_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub passed: bool,
}

impl GofReport {
    fn empty(model: &'static str, class: Option<u8>, cluster: u32, samples: u64) -> Self {
        GofReport {
            model,
            class,
            cluster,
            samples,
            empirical_mean: None,
            analytic_mean: None,
            mean_tolerance: None,
            mean_ok: None,
            empirical_variance: None,
            analytic_variance: None,
            variance_tolerance: None,
            variance_ok: None,
            ks_statistic: None,
            ks_threshold: None,
            ks_ok: None,
            empirical_median: None,
            analytic_median: None,
            median_tolerance: None,
            median_ok: None,
            decay_ok: None,
            positive_ok: None,
            skipped: None,
            passed: false,
        }
    }

    /// A cell recorded as skipped rather than failed (e.g. invalid scale).
    pub fn skipped(model: &'static str, class: Option<u8>, cluster: u32, reason: String) -> Self {
        GofReport {
            skipped: Some(reason),
            passed: true,
            ..GofReport::empty(model, class, cluster, 0)
        }
    }
}

/// Compare n rounded-Gaussian draws against the analytic moments.
///
/// Mean tolerance 0.5 + 3*sigma/sqrt(n): the 0.5 bounds the bias of
/// rounding plus the clamp at one path. Variance tolerance
/// 1/12 + 5*sigma^2*sqrt(2/n): the 1/12 bounds uniform rounding inflation.
/// A zero-variance (degenerate) model skips the variance comparison.
pub fn validate_rounded_gaussian<R: Rng + ?Sized>(
    mean: f64,
    variance: f64,
    samples: u64,
    rng: &mut R,
) -> GofReport {
    let n = samples.max(1);
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..n {
        let y = f64::from(sample_rounded_gaussian(mean, variance, rng));
        sum += y;
        sum_sq += y * y;
    }
    let nf = n as f64;
    let emp_mean = sum / nf;
    let emp_var = if n > 1 {
        (sum_sq - nf * emp_mean * emp_mean) / (nf - 1.0)
    } else {
        0.0
    };

    let sigma = variance.sqrt();
    let mean_tol = 0.5 + 3.0 * sigma / nf.sqrt();
    let mean_ok = (emp_mean - mean).abs() <= mean_tol;

    let mut report = GofReport::empty("path_count", None, 0, n);
    report.empirical_mean = Some(emp_mean);
    report.analytic_mean = Some(mean);
    report.mean_tolerance = Some(mean_tol);
    report.mean_ok = Some(mean_ok);
    report.empirical_variance = Some(emp_var);
    report.analytic_variance = Some(variance);
    if variance > 0.0 {
        let var_tol = 1.0 / 12.0 + 5.0 * variance * (2.0 / nf).sqrt();
        report.variance_tolerance = Some(var_tol);
        report.variance_ok = Some((emp_var - variance).abs() <= var_tol);
    }
    report.passed = mean_ok && report.variance_ok.unwrap_or(true);
    report
}

/// Path-count goodness of fit for one (class, cluster) cell.
pub fn validate_path_counts<R: Rng + ?Sized>(
    class: ClassId,
    cluster: ClusterIndex,
    samples: u64,
    rng: &mut R,
) -> Result<GofReport> {
    let mean = path_count_mean(class, cluster)?;
    let variance = path_count_variance(class, cluster)?;
    let mut report = validate_rounded_gaussian(mean, variance, samples, rng);
    report.class = Some(class.get());
    report.cluster = cluster.get();
    Ok(report)
}

/// Deterministic decay check of a double-exponential magnitude profile over
/// `points` consecutive indices.
pub fn decay_profile_report(
    model: &'static str,
    cluster: u32,
    curve: &DoubleExp,
    points: u32,
) -> GofReport {
    let points = points.max(2);
    let mut decay_ok = true;
    let mut positive_ok = true;
    let mut prev = f64::INFINITY;
    for j in 0..points {
        let v = curve.eval(f64::from(j));
        positive_ok &= v > 0.0;
        decay_ok &= v < prev;
        prev = v;
    }
    let mut report = GofReport::empty(model, None, cluster, u64::from(points));
    report.decay_ok = Some(decay_ok);
    report.positive_ok = Some(positive_ok);
    report.passed = decay_ok && positive_ok;
    report
}

/// Strict-decay and positivity check of one tabulated other-path magnitude
/// row over time-sample indices 0..=199.
pub fn validate_magnitude_profile(cluster: ClusterIndex) -> Result<GofReport> {
    let curve = other_path_curve(cluster)?;
    Ok(decay_profile_report(
        "magnitude_profile",
        cluster.get(),
        curve,
        200,
    ))
}

/// Interval-model goodness of fit for one (class, cluster) cell: KS against
/// the analytic CDF plus a median comparison.
pub fn validate_gev<R: Rng + ?Sized>(
    class: ClassId,
    cluster: ClusterIndex,
    samples: u64,
    rng: &mut R,
) -> Result<GofReport> {
    let params = gev_params(class, cluster)?;
    let n = samples.max(2);
    let mut draws: Vec<f64> = (0..n).map(|_| params.sample(rng)).collect();
    draws.sort_unstable_by(|a, b| a.partial_cmp(b).expect("GEV draws are never NaN"));

    let ks = ks_statistic(&draws, |x| params.cdf(x))?;
    let ks_tol = ks_threshold(n);

    let emp_median = if n.is_multiple_of(2) {
        0.5 * (draws[n as usize / 2 - 1] + draws[n as usize / 2])
    } else {
        draws[n as usize / 2]
    };
    let ana_median = params.median();
    // Five asymptotic standard deviations of the sample median,
    // 1/(2 sqrt(n) f(median)).
    let median_tol = 2.5 / ((n as f64).sqrt() * params.pdf(ana_median));

    let mut report = GofReport::empty("gev_interval", Some(class.get()), cluster.get(), n);
    report.ks_statistic = Some(ks);
    report.ks_threshold = Some(ks_tol);
    report.ks_ok = Some(ks < ks_tol);
    report.empirical_median = Some(emp_median);
    report.analytic_median = Some(ana_median);
    report.median_tolerance = Some(median_tol);
    report.median_ok = Some((emp_median - ana_median).abs() <= median_tol);
    report.passed = report.ks_ok.unwrap() && report.median_ok.unwrap();
    Ok(report)
}

/// Top-level summary of a validation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidationSummary {
    pub cells: usize,
    pub passed: usize,
    pub failed: usize,
}

/// A full validation run: summary plus one report per cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationRun {
    pub summary: ValidationSummary,
    pub reports: Vec<GofReport>,
}

impl ValidationRun {
    pub fn new(reports: Vec<GofReport>) -> Self {
        let cells = reports.len();
        let passed = reports
            .iter()
            .filter(|r| r.passed && r.skipped.is_none())
            .count();
        let failed = reports
            .iter()
            .filter(|r| !r.passed && r.skipped.is_none())
            .count();
        ValidationRun {
            summary: ValidationSummary {
                cells,
                passed,
                failed,
            },
            reports,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}
