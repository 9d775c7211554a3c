//! Complex frequency responses and impulse responses of synthesized
//! channels.
//!
//! The transfer function sums the per-path loss factors over a frequency
//! grid. The impulse response extends the one-sided response to an
//! odd-length Hermitian spectrum (no Nyquist bin), so the inverse transform
//! is real and the forward transform reproduces the original bins exactly up
//! to rounding.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::loss::loss_coeffs;
use crate::synth::{ChannelRealization, GeneratorConfig, PhaseModel};

/// Complex channel response over an ascending frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyResponse {
    /// Provenance of the realization this response was computed from.
    pub class: u8,
    pub cluster: u32,
    pub seed: u64,
    pub freq_hz: Vec<f64>,
    pub h: Vec<Complex64>,
}

/// Real impulse response obtained from a uniform-grid response.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpulseResponse {
    /// Time step between samples, 1 / (extension_length * grid_spacing).
    pub sample_period_s: f64,
    pub samples: Vec<f64>,
    /// Index of the first bin of the original grid inside the extension
    /// (nonzero when the grid was zero-filled down to 0 Hz).
    pub first_bin: usize,
    /// Number of bins of the original grid.
    pub response_bins: usize,
}

/// Uniform grid of `points` frequencies spanning [f_min_hz, f_max_hz].
pub fn uniform_grid(f_min_hz: f64, f_max_hz: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Grid(format!("need at least 2 points, got {points}")));
    }
    if !f_min_hz.is_finite() || !f_max_hz.is_finite() || f_min_hz < 0.0 {
        return Err(Error::Grid(format!(
            "frequencies must be finite and nonnegative ({f_min_hz}, {f_max_hz})"
        )));
    }
    if f_max_hz <= f_min_hz {
        return Err(Error::Grid(format!(
            "grid must ascend: f_min {f_min_hz} >= f_max {f_max_hz}"
        )));
    }
    let step = (f_max_hz - f_min_hz) / (points - 1) as f64;
    Ok((0..points).map(|i| f_min_hz + i as f64 * step).collect())
}

fn check_grid(grid_hz: &[f64]) -> Result<()> {
    if grid_hz.is_empty() {
        return Err(Error::Grid("grid is empty".into()));
    }
    let mut prev = f64::NEG_INFINITY;
    for &f in grid_hz {
        if !f.is_finite() || f < 0.0 {
            return Err(Error::Grid(format!(
                "frequency {f} is not a nonnegative finite value"
            )));
        }
        if f <= prev {
            return Err(Error::Grid(format!(
                "grid is not strictly ascending at {f} Hz"
            )));
        }
        prev = f;
    }
    Ok(())
}

/// Sum of per-path loss factors over the grid.
///
/// With [`PhaseModel::AttenuationPhase`] each path contributes
/// `m * exp(-(a0 + a1 f^k)) * exp(-j b0 f)` (f in MHz); with
/// [`PhaseModel::GeometricDelay`] the phase factor is replaced by
/// `exp(-j 2 pi f_hz tau)`.
pub fn transfer_function(
    realization: &ChannelRealization,
    grid_hz: &[f64],
    cfg: &GeneratorConfig,
) -> Result<FrequencyResponse> {
    check_grid(grid_hz)?;
    if realization.paths.is_empty() {
        return Err(Error::MalformedInput("realization has no paths".into()));
    }

    let mut h = vec![Complex64::new(0.0, 0.0); grid_hz.len()];
    for path in &realization.paths {
        let coeffs = loss_coeffs(path.distance_m)?;
        for (slot, &f_hz) in h.iter_mut().zip(grid_hz) {
            let f_mhz = f_hz / 1e6;
            let factor = match cfg.phase_model {
                PhaseModel::AttenuationPhase => coeffs.path_loss(f_mhz),
                PhaseModel::GeometricDelay => Complex64::from_polar(
                    coeffs.attenuation(f_mhz),
                    -2.0 * std::f64::consts::PI * f_hz * path.delay_s,
                ),
            };
            *slot += path.magnitude * factor;
        }
    }

    Ok(FrequencyResponse {
        class: realization.class,
        cluster: realization.cluster,
        seed: realization.seed,
        freq_hz: grid_hz.to_vec(),
        h,
    })
}

/// Relative tolerance used when checking grid uniformity.
const GRID_UNIFORMITY_TOL: f64 = 1e-6;

/// Inverse-transform a uniform-grid response into a real time series.
///
/// The grid must be uniform; a grid starting above 0 Hz is accepted when
/// its offset is a whole number of grid steps, in which case the missing
/// low-frequency bins are zero-filled. The DC bin must be (numerically)
/// real for a real time series to exist.
pub fn impulse_response(fr: &FrequencyResponse) -> Result<ImpulseResponse> {
    let n = fr.freq_hz.len();
    if n < 2 {
        return Err(Error::Grid(format!("need at least 2 grid points, got {n}")));
    }
    if fr.h.len() != n {
        return Err(Error::Grid(format!(
            "grid has {n} points but the response has {} samples",
            fr.h.len()
        )));
    }
    let step = fr.freq_hz[1] - fr.freq_hz[0];
    if step.is_nan() || step <= 0.0 {
        return Err(Error::Grid("grid is not ascending".into()));
    }
    for (i, &f) in fr.freq_hz.iter().enumerate() {
        let expected = fr.freq_hz[0] + i as f64 * step;
        if (f - expected).abs() > GRID_UNIFORMITY_TOL * step {
            return Err(Error::Grid(format!(
                "grid is not uniform at index {i}: {f} Hz vs expected {expected} Hz"
            )));
        }
    }
    let offset = fr.freq_hz[0] / step;
    let first_bin = offset.round() as usize;
    if (offset - offset.round()).abs() > GRID_UNIFORMITY_TOL {
        return Err(Error::Grid(format!(
            "grid start {} Hz is not a whole number of {} Hz steps; cannot zero-fill",
            fr.freq_hz[0], step
        )));
    }

    let peak = fr.h.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if first_bin == 0 && fr.h[0].im.abs() > 1e-9 * (peak + 1.0) {
        return Err(Error::Grid(format!(
            "DC bin must be real for a real impulse response (im = {})",
            fr.h[0].im
        )));
    }

    // One-sided spectrum including zero-filled leading bins, extended to an
    // odd length so there is no Nyquist bin and the round trip is exact.
    let one_sided = first_bin + n;
    let extension = 2 * one_sided - 1;
    let mut spectrum = vec![Complex64::new(0.0, 0.0); extension];
    for (i, &v) in fr.h.iter().enumerate() {
        spectrum[first_bin + i] = v;
        if first_bin + i > 0 {
            spectrum[extension - (first_bin + i)] = v.conj();
        }
    }

    FftPlanner::new()
        .plan_fft_inverse(extension)
        .process(&mut spectrum);
    let scale = 1.0 / extension as f64;
    let samples = spectrum.iter().map(|c| c.re * scale).collect();

    Ok(ImpulseResponse {
        sample_period_s: 1.0 / (extension as f64 * step),
        samples,
        first_bin,
        response_bins: n,
    })
}

/// Forward transform of an impulse response back onto its original bins.
///
/// `impulse_response` followed by this function reproduces the input
/// response up to floating-point rounding.
pub fn response_of_impulse(ir: &ImpulseResponse) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = ir.samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new()
        .plan_fft_forward(buf.len())
        .process(&mut buf);
    buf[ir.first_bin..ir.first_bin + ir.response_bins].to_vec()
}
