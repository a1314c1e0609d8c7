//! Physical constants and unit conversions.
//!
//! The scattering core is dimensionless. Dimensional quantities only enter
//! when mapping an electron density to a plasma frequency and a frequency to
//! a photon energy, and both happen here. The plasma frequency uses Gaussian
//! (CGS) units: `ω_p = sqrt(4π n e² / m)` with `n` in cm⁻³, `e` in esu and
//! `m` in grams.
//!
//! Values follow CODATA 2018; `e`, `h` and hence `ħ` in eV·s are exact in the
//! 2019 SI.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Elementary charge in statcoulomb (esu).
pub const ELECTRON_CHARGE_ESU: f64 = 4.803_204_712_570_263e-10;
/// Electron rest mass in grams.
pub const ELECTRON_MASS_G: f64 = 9.109_383_701_5e-28;
/// Reduced Planck constant in eV·s.
pub const HBAR_EV_S: f64 = 6.582_119_569_509_066e-16;
/// Reduced Planck constant in erg·s.
pub const HBAR_ERG_S: f64 = 1.054_571_817_646_668_7e-27;
/// One electronvolt in erg.
pub const EV_IN_ERG: f64 = 1.602_176_634e-12;
/// Speed of light in cm/s (exact).
pub const SPEED_OF_LIGHT_CM_S: f64 = 2.997_924_58e10;

/// The constant set as a value, for callers that want to pass it around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub electron_charge: f64,
    pub electron_mass: f64,
    pub hbar_ev_s: f64,
    pub hbar_erg_s: f64,
    pub speed_of_light: f64,
}

impl PhysicalConstants {
    pub const CGS: PhysicalConstants = PhysicalConstants {
        electron_charge: ELECTRON_CHARGE_ESU,
        electron_mass: ELECTRON_MASS_G,
        hbar_ev_s: HBAR_EV_S,
        hbar_erg_s: HBAR_ERG_S,
        speed_of_light: SPEED_OF_LIGHT_CM_S,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CGS
    }
}

/// Electron plasma frequency in rad/s for an electron density in cm⁻³.
pub fn plasma_frequency(n_e: f64) -> Result<f64> {
    if !(n_e >= 0.0) || !n_e.is_finite() {
        return Err(domain(format!(
            "electron density must be finite and non-negative, got {n_e}"
        )));
    }
    let c = PhysicalConstants::CGS;
    Ok((4.0 * PI * n_e / c.electron_mass).sqrt() * c.electron_charge)
}

/// Photon energy in eV for an angular frequency in rad/s.
pub fn omega_to_ev(omega: f64) -> Result<f64> {
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(domain(format!(
            "angular frequency must be finite and non-negative, got {omega}"
        )));
    }
    Ok(omega * HBAR_EV_S)
}

/// Angular frequency in rad/s for a photon energy in eV.
pub fn ev_to_omega(energy_ev: f64) -> Result<f64> {
    if !(energy_ev >= 0.0) || !energy_ev.is_finite() {
        return Err(domain(format!(
            "photon energy must be finite and non-negative, got {energy_ev}"
        )));
    }
    Ok(energy_ev / HBAR_EV_S)
}
