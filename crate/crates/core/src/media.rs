//! Permittivity models for the gas on either side of the shock.
//!
//! Inside the transparency band of a noble gas the permittivity follows the
//! plasma form `ε(ω) = a − (ω₀/ω)²`, which vanishes at `ω̃ = ω₀/√a`. For a
//! weak shock both sides are linearized about `ω̃`:
//!
//! ```text
//! ε₂ = 2a(ω/ω̃ − 1)
//! ε₁ = 2a·δ + 2a(ω/ω̃ − 1)        δ = δn/n
//! ```
//!
//! Side 1 carries the incident and reflected waves, side 2 the transmitted
//! wave.

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Result};

/// Densities jumps above this are outside the weak-shock regime.
pub const WEAK_SHOCK_DELTA_LIMIT: f64 = 0.1;

fn check_frequency(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("frequency must be positive and finite, got {omega}")))
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {value}")))
    }
}

/// Transparency-band permittivity `ε(ω) = a − (ω₀/ω)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlasmaBandMedium {
    a: f64,
    omega0: f64,
}

impl PlasmaBandMedium {
    pub fn new(a: f64, omega0: f64) -> Result<Self> {
        check_positive("a", a)?;
        check_positive("omega0", omega0)?;
        Ok(Self { a, omega0 })
    }

    /// Medium whose permittivity vanishes at `omega_tilde`.
    pub fn with_zero_crossing(a: f64, omega_tilde: f64) -> Result<Self> {
        check_positive("omega_tilde", omega_tilde)?;
        Self::new(a, omega_tilde * a.sqrt())
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Frequency `ω₀/√a` where the permittivity crosses zero.
    pub fn omega_tilde(&self) -> f64 {
        self.omega0 / self.a.sqrt()
    }

    pub fn epsilon(&self, omega: f64) -> Result<f64> {
        check_frequency(omega)?;
        let ratio = self.omega0 / omega;
        Ok(self.a - ratio * ratio)
    }

    /// `∂ε/∂ω = 2ω₀²/ω³`.
    pub fn depsilon_domega(&self, omega: f64) -> Result<f64> {
        check_frequency(omega)?;
        let ratio = self.omega0 / omega;
        Ok(2.0 * ratio * ratio / omega)
    }
}

/// Which side of the front a linearized permittivity describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Side 1: incident and reflected waves; carries the `2a·δ` term.
    Incident,
    /// Side 2: transmitted wave; vanishes at `ω̃`.
    Transmitted,
}

/// Linearized permittivity pair across a weak shock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeakShockPair {
    a: f64,
    omega_tilde: f64,
    delta: f64,
}

impl WeakShockPair {
    /// Builds the pair. `delta` above [`WEAK_SHOCK_DELTA_LIMIT`] is accepted
    /// with a warning.
    pub fn new(a: f64, omega_tilde: f64, delta: f64) -> Result<Self> {
        check_positive("a", a)?;
        check_positive("omega_tilde", omega_tilde)?;
        check_positive("delta", delta)?;
        if delta > WEAK_SHOCK_DELTA_LIMIT {
            log::warn!(
                "density jump {delta} exceeds the weak-shock limit {WEAK_SHOCK_DELTA_LIMIT}"
            );
        }
        Ok(Self {
            a,
            omega_tilde,
            delta,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn omega_tilde(&self) -> f64 {
        self.omega_tilde
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `(ε₁, ε₂)` at `omega`. Below `ω̃` both values keep the linear form
    /// and ε₂ goes negative.
    pub fn epsilons(&self, omega: f64) -> Result<(f64, f64)> {
        check_frequency(omega)?;
        let e2 = 2.0 * self.a * (omega / self.omega_tilde - 1.0);
        Ok((e2 + self.jump(), e2))
    }

    /// `ε₁ − ε₂ = 2a·δ`, independent of frequency.
    pub fn jump(&self) -> f64 {
        2.0 * self.a * self.delta
    }

    /// `∂ε/∂ω = 2a/ω̃` on both sides.
    pub fn depsilon_domega(&self) -> f64 {
        2.0 * self.a / self.omega_tilde
    }

    pub fn side(&self, side: Side) -> LinearizedSide {
        let offset = match side {
            Side::Incident => self.jump(),
            Side::Transmitted => 0.0,
        };
        LinearizedSide {
            a: self.a,
            omega_tilde: self.omega_tilde,
            offset,
        }
    }
}

/// One side of a [`WeakShockPair`]: `ε = 2a(ω/ω̃ − 1) + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearizedSide {
    pub a: f64,
    pub omega_tilde: f64,
    pub offset: f64,
}

impl LinearizedSide {
    pub fn epsilon(&self, omega: f64) -> Result<f64> {
        check_frequency(omega)?;
        Ok(2.0 * self.a * (omega / self.omega_tilde - 1.0) + self.offset)
    }

    pub fn depsilon_domega(&self, omega: f64) -> Result<f64> {
        check_frequency(omega)?;
        Ok(2.0 * self.a / self.omega_tilde)
    }
}

/// Any permittivity model the scattering code accepts on one side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Medium {
    Plasma(PlasmaBandMedium),
    Linearized(LinearizedSide),
}

impl Medium {
    pub fn epsilon(&self, omega: f64) -> Result<f64> {
        match self {
            Medium::Plasma(m) => m.epsilon(omega),
            Medium::Linearized(m) => m.epsilon(omega),
        }
    }

    pub fn depsilon_domega(&self, omega: f64) -> Result<f64> {
        match self {
            Medium::Plasma(m) => m.depsilon_domega(omega),
            Medium::Linearized(m) => m.depsilon_domega(omega),
        }
    }

    /// Frequency where the model's ε would vanish without the offset term.
    pub fn zero_crossing(&self) -> f64 {
        match self {
            Medium::Plasma(m) => m.omega_tilde(),
            Medium::Linearized(m) => m.omega_tilde,
        }
    }

    /// Dimensionless form of the model in `x = ω/ω_ref − 1`.
    pub fn reduced(&self, omega_ref: f64) -> ReducedMedium {
        // A reference that equals the model's own crossing is snapped to it
        // so that ε(x) carries no cancellation error for tiny x.
        let mut rho = omega_ref / self.zero_crossing();
        if (rho - 1.0).abs() <= 4.0 * f64::EPSILON {
            rho = 1.0;
        }
        match self {
            Medium::Plasma(m) => ReducedMedium::Plasma {
                a: m.a,
                q: m.a / (rho * rho),
            },
            Medium::Linearized(m) => ReducedMedium::Linear {
                base: 2.0 * m.a * (rho - 1.0) + m.offset,
                slope: 2.0 * m.a * rho,
            },
        }
    }
}

impl From<PlasmaBandMedium> for Medium {
    fn from(m: PlasmaBandMedium) -> Self {
        Medium::Plasma(m)
    }
}

impl From<LinearizedSide> for Medium {
    fn from(m: LinearizedSide) -> Self {
        Medium::Linearized(m)
    }
}

/// A medium expressed in the offset `x = ω/ω_ref − 1` from a reference
/// frequency. All frequency dependence is dimensionless here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReducedMedium {
    /// `ε = base + slope·x`
    Linear { base: f64, slope: f64 },
    /// `ε = a − q/(1 + x)²`
    Plasma { a: f64, q: f64 },
}

impl ReducedMedium {
    pub fn epsilon(&self, x: f64) -> f64 {
        match *self {
            ReducedMedium::Linear { base, slope } => base + slope * x,
            ReducedMedium::Plasma { a, q } => {
                let s = 1.0 + x;
                ((a - q) + a * x * (2.0 + x)) / (s * s)
            }
        }
    }

    /// `dε/dx` at `x = 0`.
    pub fn crossing_slope(&self) -> f64 {
        match *self {
            ReducedMedium::Linear { slope, .. } => slope,
            ReducedMedium::Plasma { q, .. } => 2.0 * q,
        }
    }

    /// `ω ∂ε/∂ω` at offset `x`.
    pub fn omega_depsilon(&self, x: f64) -> f64 {
        match *self {
            ReducedMedium::Linear { slope, .. } => slope * (1.0 + x),
            ReducedMedium::Plasma { q, .. } => {
                let s = 1.0 + x;
                2.0 * q / (s * s)
            }
        }
    }
}
