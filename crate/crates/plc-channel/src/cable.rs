//! Per-unit-length line parameters for the two supported NAYY low-voltage
//! power cables.
//!
//! A signal is fed into two adjacent conductors; the lumped R, L, C, G per
//! meter follow from the conductor geometry and the material constants. All
//! values are stored in SI base units (the source tables give the geometry
//! in millimeters). The tabulated free-space constants are kept exactly as
//! tabulated rather than replaced with CODATA values so that derived
//! quantities reproduce bit-for-bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Supported cable types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CableKind {
    Nayy150,
    Nayy35,
}

impl CableKind {
    pub const fn spec(self) -> CableSpec {
        match self {
            CableKind::Nayy150 => CableSpec::nayy150(),
            CableKind::Nayy35 => CableSpec::nayy35(),
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            CableKind::Nayy150 => "nayy150",
            CableKind::Nayy35 => "nayy35",
        }
    }
}

/// Geometry and material constants of one cable type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CableSpec {
    pub kind: CableKind,
    /// Conductor spacing `a`, meters.
    pub spacing_m: f64,
    /// Conductor radius `r`, meters.
    pub radius_m: f64,
    /// Copper conductivity, S/m.
    pub conductivity: f64,
    /// PVC dissipation factor tan(delta), dimensionless.
    pub loss_tangent: f64,
    /// PVC relative permittivity, dimensionless.
    pub rel_permittivity: f64,
    /// Free-space permittivity as tabulated, F/m.
    pub permittivity0: f64,
    /// Copper relative permeability, dimensionless.
    pub rel_permeability: f64,
    /// Free-space permeability as tabulated, H/m.
    pub permeability0: f64,
}

/// Lumped per-unit-length parameters evaluated at one frequency.
///
/// C and L are frequency independent; R and G are zero only at 0 Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineParams {
    pub c_per_m: f64,
    pub l_per_m: f64,
    pub r_per_m: f64,
    pub g_per_m: f64,
    pub freq_hz: f64,
}

impl CableSpec {
    pub const fn nayy150() -> Self {
        CableSpec {
            kind: CableKind::Nayy150,
            spacing_m: 1.8e-3,
            radius_m: 6.9099e-3,
            conductivity: 58e6,
            loss_tangent: 0.025,
            rel_permittivity: 4.0,
            permittivity0: 8.5419e-12,
            rel_permeability: 1.0,
            permeability0: 1.2566e-6,
        }
    }

    pub const fn nayy35() -> Self {
        CableSpec {
            kind: CableKind::Nayy35,
            spacing_m: 1.2e-3,
            radius_m: 5.9161e-3,
            conductivity: 58e6,
            loss_tangent: 0.025,
            rel_permittivity: 4.0,
            permittivity0: 8.5419e-12,
            rel_permeability: 1.0,
            permeability0: 1.2566e-6,
        }
    }

    /// Capacitance per meter: eps0 * eps_r * r / a.
    ///
    /// The r/a geometry factor is used exactly as the model defines it; no
    /// textbook two-wire formula is substituted.
    pub fn capacitance_per_m(&self) -> f64 {
        self.permittivity0 * self.rel_permittivity * (self.radius_m / self.spacing_m)
    }

    /// Inductance per meter: mu0 * mu_r * r / a.
    pub fn inductance_per_m(&self) -> f64 {
        self.permeability0 * self.rel_permeability * (self.radius_m / self.spacing_m)
    }

    /// Skin-effect resistance per meter, sqrt(pi * mu0 * f / (kappa * r^2)).
    ///
    /// Scales as sqrt(f); zero at 0 Hz.
    pub fn resistance_per_m(&self, freq_hz: f64) -> Result<f64> {
        if freq_hz.is_nan() || freq_hz < 0.0 {
            return Err(Error::NegativeFrequency(freq_hz));
        }
        let r2 = self.radius_m * self.radius_m;
        Ok((std::f64::consts::PI * self.permeability0 * freq_hz / (self.conductivity * r2)).sqrt())
    }

    /// Dielectric conductance per meter, 2 * pi * f * C * tan(delta).
    pub fn conductance_per_m(&self, freq_hz: f64) -> Result<f64> {
        if freq_hz.is_nan() || freq_hz < 0.0 {
            return Err(Error::NegativeFrequency(freq_hz));
        }
        Ok(2.0 * std::f64::consts::PI * freq_hz * self.capacitance_per_m() * self.loss_tangent)
    }

    /// All four lumped parameters at one frequency.
    pub fn line_params(&self, freq_hz: f64) -> Result<LineParams> {
        Ok(LineParams {
            c_per_m: self.capacitance_per_m(),
            l_per_m: self.inductance_per_m(),
            r_per_m: self.resistance_per_m(freq_hz)?,
            g_per_m: self.conductance_per_m(freq_hz)?,
            freq_hz,
        })
    }

    /// Propagation velocity 1/sqrt(L*C), used to map delays to distances.
    pub fn phase_velocity(&self) -> f64 {
        1.0 / (self.inductance_per_m() * self.capacitance_per_m()).sqrt()
    }

    /// Characteristic impedance sqrt((R + jwL) / (G + jwC)).
    ///
    /// At exactly 0 Hz both R and G vanish and the expression degenerates;
    /// that case takes the lossless branch sqrt(L/C) (purely real).
    pub fn char_impedance(&self, freq_hz: f64) -> Result<Complex64> {
        if freq_hz.is_nan() || freq_hz < 0.0 {
            return Err(Error::NegativeFrequency(freq_hz));
        }
        let l = self.inductance_per_m();
        let c = self.capacitance_per_m();
        if freq_hz == 0.0 {
            return Ok(Complex64::new((l / c).sqrt(), 0.0));
        }
        let w = 2.0 * std::f64::consts::PI * freq_hz;
        let series = Complex64::new(self.resistance_per_m(freq_hz)?, w * l);
        let shunt = Complex64::new(self.conductance_per_m(freq_hz)?, w * c);
        Ok((series / shunt).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_relative_eq, assert_ulps_eq};

    // Expected values below were hand-evaluated from the cable tables before
    // this module was written (full f64 precision).

    #[test]
    fn capacitance_matches_hand_values() {
        assert_relative_eq!(
            CableSpec::nayy150().capacitance_per_m(),
            1.311637218e-10,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            CableSpec::nayy35().capacitance_per_m(),
            1.684491153e-10,
            max_relative = 1e-9
        );
    }

    #[test]
    fn inductance_matches_hand_values() {
        assert_relative_eq!(
            CableSpec::nayy150().inductance_per_m(),
            4.823877966666667e-6,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            CableSpec::nayy35().inductance_per_m(),
            6.195142716666666e-6,
            max_relative = 1e-9
        );
    }

    #[test]
    fn unit_geometry_ratio_collapses_to_material_constants() {
        // r = a makes the geometry factor one.
        let mut cable = CableSpec::nayy150();
        cable.spacing_m = cable.radius_m;
        assert_ulps_eq!(cable.capacitance_per_m(), 3.41676e-11, max_ulps = 2);
        assert_ulps_eq!(cable.inductance_per_m(), 1.2566e-6, max_ulps = 2);
        assert_relative_eq!(
            cable.phase_velocity(),
            1.5261395077010316e8,
            max_relative = 1e-12
        );
    }

    #[test]
    fn resistance_at_one_mhz() {
        let r = CableSpec::nayy150().resistance_per_m(1e6).unwrap();
        assert_relative_eq!(r, 0.037756150184962124, max_relative = 1e-9);
    }

    #[test]
    fn resistance_zero_at_dc_and_sqrt_scaling() {
        let cable = CableSpec::nayy150();
        assert_eq!(cable.resistance_per_m(0.0).unwrap(), 0.0);
        let r1 = cable.resistance_per_m(1e6).unwrap();
        let r4 = cable.resistance_per_m(4e6).unwrap();
        assert_relative_eq!(r4, 2.0 * r1, max_relative = 1e-12);
    }

    #[test]
    fn conductance_at_one_mhz_and_linearity() {
        let cable = CableSpec::nayy150();
        let g1 = cable.conductance_per_m(1e6).unwrap();
        assert_relative_eq!(g1, 2.060314924121877e-5, max_relative = 1e-9);
        assert_eq!(cable.conductance_per_m(0.0).unwrap(), 0.0);
        let g2 = cable.conductance_per_m(2e6).unwrap();
        assert_relative_eq!(g2, 2.0 * g1, max_relative = 1e-12);
    }

    #[test]
    fn negative_frequency_rejected() {
        let cable = CableSpec::nayy35();
        assert!(matches!(
            cable.resistance_per_m(-1.0),
            Err(Error::NegativeFrequency(_))
        ));
        assert!(matches!(
            cable.conductance_per_m(-1.0),
            Err(Error::NegativeFrequency(_))
        ));
        assert!(matches!(
            cable.char_impedance(-1.0),
            Err(Error::NegativeFrequency(_))
        ));
    }

    #[test]
    fn phase_velocity_matches_hand_values() {
        assert_relative_eq!(
            CableSpec::nayy150().phase_velocity(),
            3.975529477795419e7,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            CableSpec::nayy35().phase_velocity(),
            3.0955653373696152e7,
            max_relative = 1e-9
        );
    }

    #[test]
    fn velocity_times_geometry_factor_is_cable_independent() {
        for cable in [CableSpec::nayy150(), CableSpec::nayy35()] {
            let geom = cable.radius_m / cable.spacing_m;
            let expected = 1.0
                / (cable.permeability0
                    * cable.rel_permeability
                    * cable.permittivity0
                    * cable.rel_permittivity)
                    .sqrt();
            assert_relative_eq!(
                cable.phase_velocity() * geom,
                expected,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn nayy35_has_larger_geometry_factor_hence_larger_c_and_l() {
        let c150 = CableSpec::nayy150();
        let c35 = CableSpec::nayy35();
        assert!(c35.radius_m / c35.spacing_m > c150.radius_m / c150.spacing_m);
        assert!(c35.capacitance_per_m() > c150.capacitance_per_m());
        assert!(c35.inductance_per_m() > c150.inductance_per_m());
    }

    #[test]
    fn c_and_l_do_not_depend_on_frequency() {
        let cable = CableSpec::nayy150();
        let p1 = cable.line_params(1e5).unwrap();
        let p2 = cable.line_params(3e7).unwrap();
        assert_eq!(p1.c_per_m, p2.c_per_m);
        assert_eq!(p1.l_per_m, p2.l_per_m);
    }

    #[test]
    fn char_impedance_lossless_branch_is_sqrt_l_over_c() {
        let cable = CableSpec::nayy150();
        let z0 = cable.char_impedance(0.0).unwrap();
        assert_relative_eq!(z0.re, 191.77469053771162, max_relative = 1e-9);
        assert_eq!(z0.im, 0.0);
    }

    #[test]
    fn char_impedance_high_frequency_limit() {
        // G/(wC) equals the loss tangent at every frequency while R/(wL)
        // vanishes, so the limit is sqrt(L/C) / sqrt(1 - j*tan(delta)),
        // which keeps a small positive imaginary part.
        let cable = CableSpec::nayy150();
        let z_lossless = (cable.inductance_per_m() / cable.capacitance_per_m()).sqrt();
        let z_limit = z_lossless / Complex64::new(1.0, -cable.loss_tangent).sqrt();
        let z_hi = cable.char_impedance(1e13).unwrap();
        assert_relative_eq!(z_hi.re, z_limit.re, max_relative = 1e-5);
        assert_relative_eq!(z_hi.im, z_limit.im, max_relative = 1e-3);
        assert!(z_hi.im > 0.0);
    }

    #[test]
    fn char_impedance_at_one_mhz() {
        let z = CableSpec::nayy150().char_impedance(1e6).unwrap();
        assert_relative_eq!(z.re, 191.73129350340008, max_relative = 1e-9);
        assert_relative_eq!(z.im, 2.2768298306427184, max_relative = 1e-9);
    }
}
