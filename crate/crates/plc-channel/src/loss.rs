//! Frequency- and distance-dependent cable-loss model.
//!
//! A path of propagation distance d contributes the complex factor
//! `A(f) = exp(-(a0 + a1 * f^k)) * exp(-j * b0 * f)` with f in MHz; the four
//! coefficients are linear in d. Below about 1.756 m the a1 coefficient
//! turns negative and the model would show gain growing with frequency, so
//! distances under 2 m are rejected.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest path distance the loss model accepts.
pub const MIN_PATH_DISTANCE_M: f64 = 2.0;

/// Loss-model coefficients for one propagation distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CableLossCoeffs {
    /// Frequency-independent attenuation exponent term (a0).
    pub flat_loss: f64,
    /// Coefficient of the f^k attenuation term (a1), nonnegative over the
    /// accepted distance range.
    pub freq_loss: f64,
    /// Attenuation exponent (k); distinct from the cluster index.
    pub freq_exponent: f64,
    /// Phase slope per MHz (b0), applied exactly as fitted (negative).
    pub phase_slope: f64,
}

/// Coefficients as a function of the path propagation distance in meters.
pub fn loss_coeffs(distance_m: f64) -> Result<CableLossCoeffs> {
    if distance_m.is_nan() || distance_m < MIN_PATH_DISTANCE_M {
        return Err(Error::DistanceOutOfDomain {
            distance_m,
            min_m: MIN_PATH_DISTANCE_M,
        });
    }
    Ok(CableLossCoeffs {
        flat_loss: 0.0002086 * distance_m + 0.0008739,
        freq_loss: 0.00002644 * distance_m - 0.00004644,
        freq_exponent: -0.00009098 * distance_m + 0.8876,
        phase_slope: -0.0006432 * distance_m - 0.000001126,
    })
}

impl CableLossCoeffs {
    /// Attenuation magnitude exp(-(a0 + a1 * f^k)), f in MHz.
    pub fn attenuation(&self, f_mhz: f64) -> f64 {
        debug_assert!(f_mhz >= 0.0);
        (-(self.flat_loss + self.freq_loss * f_mhz.powf(self.freq_exponent))).exp()
    }

    /// Full complex per-path factor including the fitted phase term.
    pub fn path_loss(&self, f_mhz: f64) -> Complex64 {
        Complex64::from_polar(self.attenuation(f_mhz), -self.phase_slope * f_mhz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Expected numbers hand-evaluated from the coefficient fits before this
    // module was written.

    #[test]
    fn coefficients_at_hundred_meters() {
        let c = loss_coeffs(100.0).unwrap();
        assert_relative_eq!(c.flat_loss, 0.0217339, max_relative = 1e-9);
        assert_relative_eq!(c.freq_loss, 0.00259756, max_relative = 1e-9);
        assert_relative_eq!(c.freq_exponent, 0.878502, max_relative = 1e-9);
        assert_relative_eq!(c.phase_slope, -0.064321126, max_relative = 1e-9);
    }

    #[test]
    fn boundary_distance_keeps_freq_loss_positive() {
        let c = loss_coeffs(2.0).unwrap();
        assert_relative_eq!(c.freq_loss, 6.44e-6, max_relative = 1e-9);
        assert!(c.freq_loss > 0.0);
    }

    #[test]
    fn short_distances_rejected() {
        assert!(matches!(
            loss_coeffs(1.0),
            Err(Error::DistanceOutOfDomain { .. })
        ));
        assert!(matches!(
            loss_coeffs(1.9999),
            Err(Error::DistanceOutOfDomain { .. })
        ));
        assert!(matches!(
            loss_coeffs(f64::NAN),
            Err(Error::DistanceOutOfDomain { .. })
        ));
    }

    #[test]
    fn zero_frequency_gives_flat_loss_and_zero_phase() {
        let c = loss_coeffs(100.0).unwrap();
        let a = c.path_loss(0.0);
        assert_relative_eq!(a.re, (-c.flat_loss).exp(), max_relative = 1e-15);
        assert_eq!(a.im, 0.0);
        assert_relative_eq!(a.norm(), 0.9785005794150385, max_relative = 1e-12);
    }

    #[test]
    fn magnitude_at_one_and_ten_mhz() {
        let c = loss_coeffs(100.0).unwrap();
        assert_relative_eq!(
            c.path_loss(1.0).norm(),
            0.9759621637207999,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            c.path_loss(10.0).norm(),
            0.9594735229723141,
            max_relative = 1e-12
        );
    }

    #[test]
    fn magnitude_bounded_by_flat_loss_and_nonincreasing() {
        for d in [2.0, 10.0, 100.0, 500.0] {
            let c = loss_coeffs(d).unwrap();
            let cap = (-c.flat_loss).exp();
            let mut prev = f64::INFINITY;
            for i in 0..=300 {
                let f = i as f64 * 0.1; // 0..30 MHz
                let m = c.path_loss(f).norm();
                assert!(m <= cap + 1e-15);
                assert!(m <= prev + 1e-15);
                prev = m;
            }
        }
    }

    #[test]
    fn phase_term_is_applied_as_fitted() {
        let c = loss_coeffs(100.0).unwrap();
        let a = c.path_loss(1.0);
        // phase_slope is negative, so the literal factor rotates forward.
        assert_relative_eq!(a.arg(), -c.phase_slope * 1.0, max_relative = 1e-12);
        assert!(a.arg() > 0.0);
    }
}
