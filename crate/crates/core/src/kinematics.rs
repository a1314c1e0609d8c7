//! Waves in a uniformly moving medium and frequency bookkeeping at the
//! moving front.
//!
//! To first order in `v` (units of c) the material relations
//! `D = εE + α n×H`, `B = H − α n×E` with `α = (ε − 1)v` give
//! `|k| = (√ε ± α)ω` for right- and left-moving waves. At a front moving with
//! speed `v` the incident, reflected and transmitted frequencies share the
//! invariant `ω − kv = ω̃ + k̃v = ω₂ − k₂v`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::media::Medium;

/// Front speeds at or above this leave the first-order regime.
pub const FIRST_ORDER_SPEED_LIMIT: f64 = 0.01;

/// Iteration cap for [`doppler_selfconsistent`].
pub const MAX_DOPPLER_ITERATIONS: usize = 100;

pub(crate) fn check_speed(v: f64) -> Result<()> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(domain(format!("speed must be finite and non-negative, got {v}")));
    }
    if v >= FIRST_ORDER_SPEED_LIMIT {
        log::warn!("speed {v} is outside the first-order regime (v < {FIRST_ORDER_SPEED_LIMIT})");
    }
    Ok(())
}

fn propagating_sqrt(epsilon: f64, context: &'static str) -> Result<f64> {
    if epsilon >= 0.0 {
        Ok(epsilon.sqrt())
    } else {
        Err(Error::Evanescent { epsilon, context })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Right,
    Left,
}

/// `α = (ε − 1)v`
pub fn alpha(epsilon: f64, v: f64) -> f64 {
    (epsilon - 1.0) * v
}

/// Signed wavenumber: positive for right-movers, negative for left-movers.
pub fn wavenumber(epsilon: f64, omega: f64, v: f64, direction: Direction) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(domain(format!("frequency must be positive, got {omega}")));
    }
    let n = propagating_sqrt(epsilon, "wavenumber")?;
    let a = alpha(epsilon, v);
    Ok(match direction {
        Direction::Right => (n + a) * omega,
        Direction::Left => -(n - a) * omega,
    })
}

/// Determinant of the plane-wave system, `(k − αω)² − εω²`, which vanishes
/// on both branches returned by [`wavenumber`].
pub fn dispersion_residual(epsilon: f64, omega: f64, k: f64, v: f64) -> f64 {
    let shifted = k - alpha(epsilon, v) * omega;
    shifted * shifted - epsilon * omega * omega
}

/// A plane wave `exp i(kx − ωt)` in a medium moving with speed `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveMode {
    pub omega: f64,
    pub k: f64,
    pub direction: Direction,
    pub epsilon: f64,
    pub v: f64,
}

impl WaveMode {
    pub fn new(epsilon: f64, omega: f64, v: f64, direction: Direction) -> Result<Self> {
        check_speed(v)?;
        let k = wavenumber(epsilon, omega, v, direction)?;
        Ok(Self {
            omega,
            k,
            direction,
            epsilon,
            v,
        })
    }

    pub fn alpha(&self) -> f64 {
        alpha(self.epsilon, self.v)
    }

    /// Tangential `n×H` per unit tangential `E`: `E = ∓(1/√ε) n×H`.
    pub fn admittance(&self) -> f64 {
        match self.direction {
            Direction::Right => -self.epsilon.sqrt(),
            Direction::Left => self.epsilon.sqrt(),
        }
    }
}

/// Incident, reflected and transmitted frequencies at the moving front.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DopplerTriple {
    pub omega: f64,
    pub omega_reflected: f64,
    pub omega_transmitted: f64,
}

/// Fractional shifts `(ω̃/ω − 1, ω₂/ω − 1) = (−2v√ε₁, −v(√ε₁ − √ε₂))`.
pub fn first_order_shifts(v: f64, epsilon1: f64, epsilon2: f64) -> Result<(f64, f64)> {
    let n1 = propagating_sqrt(epsilon1, "incident side")?;
    let n2 = propagating_sqrt(epsilon2, "transmitted side")?;
    Ok((-2.0 * v * n1, -v * (n1 - n2)))
}

/// Leading-order Doppler triple. Both permittivities are taken at the
/// incident frequency.
pub fn doppler_first_order(
    omega: f64,
    v: f64,
    epsilon1: f64,
    epsilon2: f64,
) -> Result<DopplerTriple> {
    check_speed(v)?;
    let (sr, st) = first_order_shifts(v, epsilon1, epsilon2)?;
    Ok(DopplerTriple {
        omega,
        omega_reflected: omega * (1.0 + sr),
        omega_transmitted: omega * (1.0 + st),
    })
}

/// Result of the self-consistent frequency solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopplerSolve {
    pub triple: DopplerTriple,
    pub iterations: usize,
    /// Largest violation of the frequency invariant, absolute.
    pub residual: f64,
}

/// `ω + kv` along a left-mover and `ω − kv` along a right-mover; each wave's
/// contribution to the invariant.
fn invariant_term(medium: &Medium, omega: f64, v: f64, direction: Direction) -> Result<f64> {
    let eps = medium.epsilon(omega)?;
    let k = wavenumber(eps, omega, v, direction)?;
    // The signed k already encodes the direction: ω − k v for both.
    Ok(omega - k * v)
}

/// Residuals of `ω − kv = ω̃ + k̃v = ω₂ − k₂v` for a given triple.
pub fn conservation_residual(
    triple: &DopplerTriple,
    v: f64,
    incident: &Medium,
    transmitted: &Medium,
) -> Result<(f64, f64)> {
    let c = invariant_term(incident, triple.omega, v, Direction::Right)?;
    let r = invariant_term(incident, triple.omega_reflected, v, Direction::Left)?;
    let t = invariant_term(transmitted, triple.omega_transmitted, v, Direction::Right)?;
    Ok(((c - r).abs(), (c - t).abs()))
}

/// Solves the unexpanded invariant by fixed-point iteration, with each
/// wavenumber taken from its medium at its own frequency. Stops when both
/// residuals fall below `tol·ω`.
pub fn doppler_selfconsistent(
    omega: f64,
    v: f64,
    incident: &Medium,
    transmitted: &Medium,
    tol: f64,
) -> Result<DopplerSolve> {
    check_speed(v)?;
    if !(tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    let e1 = incident.epsilon(omega)?;
    let e2 = transmitted.epsilon(omega)?;
    let start = doppler_first_order(omega, v, e1, e2)?;
    let invariant = invariant_term(incident, omega, v, Direction::Right)?;

    let mut reflected = start.omega_reflected;
    let mut trans = start.omega_transmitted;
    let mut residual = f64::INFINITY;
    for iteration in 1..=MAX_DOPPLER_ITERATIONS {
        // ω̃(1 + v(√ε − α)) = C and ω₂(1 − v(√ε + α)) = C
        let er = incident.epsilon(reflected)?;
        let nr = propagating_sqrt(er, "reflected wave")?;
        reflected = invariant / (1.0 + v * (nr - alpha(er, v)));
        let et = transmitted.epsilon(trans)?;
        let nt = propagating_sqrt(et, "transmitted wave")?;
        trans = invariant / (1.0 - v * (nt + alpha(et, v)));

        let triple = DopplerTriple {
            omega,
            omega_reflected: reflected,
            omega_transmitted: trans,
        };
        let (rr, rt) = conservation_residual(&triple, v, incident, transmitted)?;
        residual = rr.max(rt);
        if residual <= tol * omega {
            return Ok(DopplerSolve {
                triple,
                iterations: iteration,
                residual,
            });
        }
    }
    Err(Error::Convergence {
        iterations: MAX_DOPPLER_ITERATIONS,
        residual,
    })
}

/// Cherenkov form of the superradiance condition, `ω − k·v < 0`.
pub fn superradiance_condition(omega: f64, k: f64, v_source: f64) -> bool {
    omega - k * v_source < 0.0
}
