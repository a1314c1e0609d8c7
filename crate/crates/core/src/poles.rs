//! Roots of the amplitude denominator `f(ω)` just above `ω̃`.
//!
//! Near the crossing `f` behaves like `√(2aδ) − v·a·√(δ/x)`, so it runs from
//! `−∞` at `x → 0⁺` to a positive value at `x = δ` and has a single root near
//! `x* ≈ a·v²/2`. All root work is done in `x = ω/ω̃ − 1`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scattering::{f_denominator, InterfaceScattering};

/// Default relative bracket width at which bisection stops.
pub const DEFAULT_REL_TOL: f64 = 1e-13;

/// Smallest `rel_tol` accepted by [`find_pole`].
pub const MIN_REL_TOL: f64 = 1e-15;

/// Grid points used to tighten the initial bracket.
const SCAN_POINTS: usize = 64;

/// Lower search limit for the bracket's left end.
const X_FLOOR: f64 = 1e-300;

const MAX_BISECTIONS: usize = 4096;

/// A located root of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleRecord {
    pub omega_star: f64,
    /// `ω*/ω̃ − 1`
    pub x_offset: f64,
    /// Accepted bracket in `x`, with `f(lo) < 0 < f(hi)`.
    pub bracket: (f64, f64),
    pub f_residual: f64,
    pub iterations: usize,
    /// Leading-order estimate `a·v²/2`.
    pub asymptotic_prediction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoPoleReason {
    /// `v = 0`: `f = √ε₁ + √ε₂ > 0` everywhere.
    AtRest,
    /// `f` stayed non-negative down to the smallest offset probed.
    PositiveNearCrossing,
    /// `f` is not positive at the top of the search interval.
    NonPositiveAtCeiling,
}

/// Structured report for configurations without a root in `(0, ceiling]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoPole {
    pub reason: NoPoleReason,
    pub x_lo: f64,
    pub x_hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PoleOutcome<T> {
    Pole(T),
    NoPole(NoPole),
}

impl<T> PoleOutcome<T> {
    pub fn pole(self) -> Option<T> {
        match self {
            PoleOutcome::Pole(p) => Some(p),
            PoleOutcome::NoPole(_) => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, PoleOutcome::Pole(_))
    }
}

/// Leading-order root offset `x* ≈ a·v²/2`, from balancing `√(2aδ)` against
/// the singular term `v·a·√(δ/x)`.
pub fn pole_asymptotic(a: f64, v: f64) -> f64 {
    0.5 * a * v * v
}

/// Brackets the root of `f` in `x`. Starts from
/// `[min(10⁻²⁰, a·v²/20), ceiling]`, pushes the left end toward zero until
/// `f < 0`, then narrows to adjacent points of a geometric grid.
pub fn bracket_pole(scatter: &InterfaceScattering) -> Result<PoleOutcome<(f64, f64)>> {
    let x_hi = scatter.pole_ceiling();
    let a = scatter.crossing_a();
    let mut x_lo = (pole_asymptotic(a, scatter.v()) / 10.0).min(1e-20);
    if scatter.v() == 0.0 {
        return Ok(PoleOutcome::NoPole(NoPole {
            reason: NoPoleReason::AtRest,
            x_lo,
            x_hi,
        }));
    }

    while f_denominator(scatter, x_lo)? >= 0.0 {
        if x_lo <= X_FLOOR {
            return Ok(PoleOutcome::NoPole(NoPole {
                reason: NoPoleReason::PositiveNearCrossing,
                x_lo,
                x_hi,
            }));
        }
        x_lo = (x_lo * 1e-4).max(X_FLOOR);
    }
    if f_denominator(scatter, x_hi)? <= 0.0 {
        return Ok(PoleOutcome::NoPole(NoPole {
            reason: NoPoleReason::NonPositiveAtCeiling,
            x_lo,
            x_hi,
        }));
    }

    let ratio = (x_hi / x_lo).ln() / SCAN_POINTS as f64;
    let mut lo = x_lo;
    for i in 1..SCAN_POINTS {
        let x = x_lo * (ratio * i as f64).exp();
        if f_denominator(scatter, x)? > 0.0 {
            return Ok(PoleOutcome::Pole((lo, x)));
        }
        lo = x;
    }
    Ok(PoleOutcome::Pole((lo, x_hi)))
}

/// Locates the root of `f` by bisection to relative width `rel_tol` in `x`.
pub fn find_pole(scatter: &InterfaceScattering, rel_tol: f64) -> Result<PoleOutcome<PoleRecord>> {
    if !(rel_tol >= MIN_REL_TOL) {
        return Err(domain(format!(
            "rel_tol must be at least {MIN_REL_TOL:e}, got {rel_tol:e}"
        )));
    }
    let (lo0, hi0) = match bracket_pole(scatter)? {
        PoleOutcome::Pole(b) => b,
        PoleOutcome::NoPole(report) => return Ok(PoleOutcome::NoPole(report)),
    };

    let (mut lo, mut hi) = (lo0, hi0);
    let mut iterations = 0;
    while hi - lo > rel_tol * hi && iterations < MAX_BISECTIONS {
        let mid = if hi > 2.0 * lo {
            (lo * hi).sqrt()
        } else {
            0.5 * (lo + hi)
        };
        if mid <= lo || mid >= hi {
            break;
        }
        if f_denominator(scatter, mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    let x = 0.5 * (lo + hi);
    Ok(PoleOutcome::Pole(PoleRecord {
        omega_star: scatter.omega_at(x),
        x_offset: x,
        bracket: (lo0, hi0),
        f_residual: f_denominator(scatter, x)?,
        iterations,
        asymptotic_prediction: pole_asymptotic(scatter.crossing_a(), scatter.v()),
    }))
}
