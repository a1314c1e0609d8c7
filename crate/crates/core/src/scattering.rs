//! Reflection and transmission at the moving shock front, normal incidence.
//!
//! Frequencies are handled as offsets `x = ω/ω̃ − 1` from the zero crossing
//! `ω̃` of the transmitted-side permittivity. The poles of the reflection
//! amplitude sit at `x ~ 10⁻¹¹`, which is only resolvable in this form.
//!
//! Three routes to the amplitude are provided:
//!
//! * [`reflection_full`]: closed form with every permittivity taken at its
//!   own Doppler-shifted frequency;
//! * [`reflection_first_order`]: the same ratio expanded to first order in
//!   `v`, whose denominator is [`f_denominator`];
//! * [`boundary_solve_oracle`]: the tangential jump conditions assembled as a
//!   2×2 linear system from explicit field vectors and solved directly.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kinematics::{self, check_speed, Direction, DopplerTriple, WaveMode};
use crate::media::{Medium, ReducedMedium, Side, WeakShockPair};

/// Default floor on `|denominator| / (√ε₁ + √ε₂)` below which a solution is
/// flagged as sitting on a pole.
pub const DEFAULT_DENOMINATOR_FLOOR: f64 = 1e-30;

/// Two media separated by a plane front moving with speed `v` (units of c).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceScattering {
    incident: Medium,
    transmitted: Medium,
    v: f64,
    omega_tilde: f64,
    reduced_incident: ReducedMedium,
    reduced_transmitted: ReducedMedium,
    pole_ceiling: f64,
    denominator_floor: f64,
}

impl InterfaceScattering {
    /// Interface between the two sides of a linearized weak shock.
    pub fn weak_shock(pair: WeakShockPair, v: f64) -> Result<Self> {
        let mut s = Self::from_media(
            pair.side(Side::Incident).into(),
            pair.side(Side::Transmitted).into(),
            v,
        )?;
        s.pole_ceiling = pair.delta();
        Ok(s)
    }

    /// Interface between arbitrary media. Offsets are measured from the
    /// transmitted medium's zero crossing.
    pub fn from_media(incident: Medium, transmitted: Medium, v: f64) -> Result<Self> {
        check_speed(v)?;
        let omega_tilde = transmitted.zero_crossing();
        Ok(Self {
            incident,
            transmitted,
            v,
            omega_tilde,
            reduced_incident: incident.reduced(omega_tilde),
            reduced_transmitted: transmitted.reduced(omega_tilde),
            pole_ceiling: crate::media::WEAK_SHOCK_DELTA_LIMIT,
            denominator_floor: DEFAULT_DENOMINATOR_FLOOR,
        })
    }

    pub fn with_denominator_floor(mut self, floor: f64) -> Self {
        self.denominator_floor = floor;
        self
    }

    /// Upper end of the offset interval searched for poles.
    pub fn with_pole_ceiling(mut self, ceiling: f64) -> Self {
        self.pole_ceiling = ceiling;
        self
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn omega_tilde(&self) -> f64 {
        self.omega_tilde
    }

    pub fn incident(&self) -> &Medium {
        &self.incident
    }

    pub fn transmitted(&self) -> &Medium {
        &self.transmitted
    }

    pub fn pole_ceiling(&self) -> f64 {
        self.pole_ceiling
    }

    pub fn denominator_floor(&self) -> f64 {
        self.denominator_floor
    }

    /// Half the slope `dε₂/dx` at the crossing; equals `a` for both
    /// permittivity models.
    pub fn crossing_a(&self) -> f64 {
        0.5 * self.reduced_transmitted.crossing_slope()
    }

    /// `x = ω/ω̃ − 1`
    pub fn offset_of(&self, omega: f64) -> f64 {
        omega / self.omega_tilde - 1.0
    }

    pub fn omega_at(&self, x: f64) -> f64 {
        self.omega_tilde * (1.0 + x)
    }

    /// `(ε₁, ε₂)` at offset `x`.
    pub fn epsilons(&self, x: f64) -> (f64, f64) {
        (
            self.reduced_incident.epsilon(x),
            self.reduced_transmitted.epsilon(x),
        )
    }

    fn triple(&self, x: f64, xr: f64, xt: f64) -> DopplerTriple {
        DopplerTriple {
            omega: self.omega_at(x),
            omega_reflected: self.omega_at(xr),
            omega_transmitted: self.omega_at(xt),
        }
    }

    fn is_pole(&self, denominator: f64, e1: f64, e2: f64) -> bool {
        denominator.abs() < self.denominator_floor * (e1.sqrt() + e2.sqrt())
    }

    /// Checks `x` lies in the transparent band and returns `(ε₁, ε₂)` there.
    fn band_point(&self, x: f64) -> Result<(f64, f64)> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(domain(format!(
                "frequency offset must be positive (ω > ω̃), got x = {x}"
            )));
        }
        let (e1, e2) = self.epsilons(x);
        if e1 < 0.0 {
            return Err(Error::Evanescent {
                epsilon: e1,
                context: "incident side",
            });
        }
        Ok((e1, e2))
    }

    /// Offsets of the reflected and transmitted waves to first order.
    fn shifted_offsets(&self, x: f64, e1: f64, e2: f64) -> Result<(f64, f64)> {
        let (sr, st) = kinematics::first_order_shifts(self.v, e1, e2)?;
        let s = 1.0 + x;
        Ok((x + s * sr, x + s * st))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Full,
    FirstOrder,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReflectionSolution {
    /// `E₁/E₀`
    pub r: f64,
    /// `E₂/E₀`
    pub t: f64,
    pub triple: DopplerTriple,
    pub denominator_value: f64,
    pub method: Method,
    /// `|denominator|` fell below the interface's floor.
    pub pole_proximity: bool,
}

/// Static normal-incidence Fresnel amplitude `(√ε₁ − √ε₂)/(√ε₁ + √ε₂)`.
pub fn fresnel_normal(epsilon1: f64, epsilon2: f64) -> f64 {
    let (n1, n2) = (epsilon1.sqrt(), epsilon2.sqrt());
    (n1 - n2) / (n1 + n2)
}

fn nonnegative(epsilon: f64, context: &'static str) -> Result<f64> {
    if epsilon >= 0.0 {
        Ok(epsilon)
    } else {
        Err(Error::Evanescent { epsilon, context })
    }
}

/// Full amplitude
///
/// ```text
///        √ε₁(ω) − √ε₂(ω₂) + v(ε₂(ω₂) − ε₁(ω))
/// r = ─────────────────────────────────────────
///      √ε₂(ω₂) + √ε₁(ω̃) − v(ε₂(ω₂) − ε₁(ω̃))
/// ```
///
/// with `ω̃, ω₂` from the first-order Doppler relations.
pub fn reflection_full(scatter: &InterfaceScattering, x: f64) -> Result<ReflectionSolution> {
    let (e1, e2) = scatter.band_point(x)?;
    let (xr, xt) = scatter.shifted_offsets(x, e1, e2)?;
    let e1r = nonnegative(scatter.reduced_incident.epsilon(xr), "reflected wave")?;
    let e2t = nonnegative(scatter.reduced_transmitted.epsilon(xt), "transmitted wave")?;
    let v = scatter.v;

    let numerator = e1.sqrt() - e2t.sqrt() + v * (e2t - e1);
    let denominator = e2t.sqrt() + e1r.sqrt() - v * (e2t - e1r);
    let r = numerator / denominator;
    Ok(ReflectionSolution {
        r,
        t: 1.0 + r,
        triple: scatter.triple(x, xr, xt),
        denominator_value: denominator,
        method: Method::Full,
        pole_proximity: scatter.is_pole(denominator, e1, e2),
    })
}

/// `(√ε₁ − √ε₂)/(2√ε₂) · ω ∂ε₂/∂ω`, the term that diverges at `ω̃`.
fn branch_term(e1: f64, e2: f64, omega_de2: f64) -> f64 {
    (e1.sqrt() - e2.sqrt()) / (2.0 * e2.sqrt()) * omega_de2
}

fn first_order_parts(scatter: &InterfaceScattering, x: f64) -> Result<(f64, f64, f64, f64)> {
    let (e1, e2) = scatter.band_point(x)?;
    let od1 = scatter.reduced_incident.omega_depsilon(x);
    let od2 = scatter.reduced_transmitted.omega_depsilon(x);
    let g = branch_term(e1, e2, od2);
    let v = scatter.v;
    let numerator = e1.sqrt() - e2.sqrt() + v * (e2 - e1 + g);
    let denominator = e2.sqrt() + e1.sqrt() - v * (e2 - e1 + g + od1);
    Ok((numerator, denominator, e1, e2))
}

/// Denominator of the first-order amplitude,
///
/// ```text
/// f(ω) = √ε₂ + √ε₁ − v(ε₂ − ε₁ + (√ε₁ − √ε₂)/(2√ε₂)·ω∂ε₂/∂ω + ω∂ε₁/∂ω)
/// ```
///
/// Its roots are the poles of the reflection amplitude.
pub fn f_denominator(scatter: &InterfaceScattering, x: f64) -> Result<f64> {
    first_order_parts(scatter, x).map(|(_, d, _, _)| d)
}

/// Amplitude expanded to first order in `v`, all permittivities at `ω`.
pub fn reflection_first_order(
    scatter: &InterfaceScattering,
    x: f64,
) -> Result<ReflectionSolution> {
    let (numerator, denominator, e1, e2) = first_order_parts(scatter, x)?;
    let (xr, xt) = scatter.shifted_offsets(x, e1, e2)?;
    let r = numerator / denominator;
    Ok(ReflectionSolution {
        r,
        t: 1.0 + r,
        triple: scatter.triple(x, xr, xt),
        denominator_value: denominator,
        method: Method::FirstOrder,
        pole_proximity: scatter.is_pole(denominator, e1, e2),
    })
}

type Vec3 = [f64; 3];

const NORMAL: Vec3 = [1.0, 0.0, 0.0];
const POLARIZATION: Vec3 = [0.0, 1.0, 0.0];

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn scale(s: f64, a: Vec3) -> Vec3 {
    [s * a[0], s * a[1], s * a[2]]
}

/// Unit-amplitude tangential fields of one mode.
struct ModeFields {
    e: Vec3,
    h: Vec3,
    epsilon: f64,
}

impl ModeFields {
    fn new(mode: &WaveMode) -> Self {
        let e = POLARIZATION;
        // E = ∓(1/√ε) n×H  ⇔  H = ±√ε n×E for tangential fields.
        let n = mode.epsilon.sqrt();
        let h = match mode.direction {
            Direction::Right => scale(n, cross(NORMAL, e)),
            Direction::Left => scale(-n, cross(NORMAL, e)),
        };
        Self {
            e,
            h,
            epsilon: mode.epsilon,
        }
    }

    /// `(E_t, n×H + vεE_t)` projected on the polarization.
    fn jump_rows(&self, v: f64) -> [f64; 2] {
        let n_cross_h = cross(NORMAL, self.h);
        [
            dot(self.e, POLARIZATION),
            dot(n_cross_h, POLARIZATION) + v * self.epsilon * dot(self.e, POLARIZATION),
        ]
    }
}

/// Solves `m·u = b` for a 2×2 system with partial pivoting. Returns the
/// solution and the determinant.
fn solve_2x2(m: [[f64; 2]; 2], b: [f64; 2]) -> ([f64; 2], f64) {
    let (mut m, mut b) = (m, b);
    let mut sign = 1.0;
    if m[1][0].abs() > m[0][0].abs() {
        m.swap(0, 1);
        b.swap(0, 1);
        sign = -1.0;
    }
    let l = m[1][0] / m[0][0];
    let u11 = m[1][1] - l * m[0][1];
    let b1 = b[1] - l * b[0];
    let u1 = b1 / u11;
    let u0 = (b[0] - m[0][1] * u1) / m[0][0];
    ([u0, u1], sign * m[0][0] * u11)
}

/// Amplitudes from the jump conditions `ΔE_t = 0` and
/// `n×ΔH = −vΔ(εE_t)`, with every mode's `H` built from its `E` at its own
/// shifted frequency.
pub fn boundary_solve_oracle(
    scatter: &InterfaceScattering,
    x: f64,
) -> Result<ReflectionSolution> {
    let (e1, e2) = scatter.band_point(x)?;
    let (xr, xt) = scatter.shifted_offsets(x, e1, e2)?;
    let e1r = nonnegative(scatter.reduced_incident.epsilon(xr), "reflected wave")?;
    let e2t = nonnegative(scatter.reduced_transmitted.epsilon(xt), "transmitted wave")?;
    let v = scatter.v;
    let triple = scatter.triple(x, xr, xt);

    let incident = WaveMode::new(e1, triple.omega, v, Direction::Right)?;
    let reflected = WaveMode::new(e1r, triple.omega_reflected, v, Direction::Left)?;
    let transmitted = WaveMode::new(e2t, triple.omega_transmitted, v, Direction::Right)?;

    // Jumps are (side 2) − (side 1) with unit incident amplitude:
    //   −E₁·row(refl) + E₂·row(trans) = row(inc)
    let inc = ModeFields::new(&incident).jump_rows(v);
    let refl = ModeFields::new(&reflected).jump_rows(v);
    let trans = ModeFields::new(&transmitted).jump_rows(v);
    let matrix = [[-refl[0], trans[0]], [-refl[1], trans[1]]];
    let ([r, t], det) = solve_2x2(matrix, inc);

    Ok(ReflectionSolution {
        r,
        t,
        triple,
        denominator_value: det,
        method: Method::Oracle,
        pole_proximity: scatter.is_pole(det, e1, e2) || !r.is_finite(),
    })
}

/// Evaluates the amplitude by the requested route.
pub fn reflection(
    scatter: &InterfaceScattering,
    x: f64,
    method: Method,
) -> Result<ReflectionSolution> {
    match method {
        Method::Full => reflection_full(scatter, x),
        Method::FirstOrder => reflection_first_order(scatter, x),
        Method::Oracle => boundary_solve_oracle(scatter, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::PlasmaBandMedium;

    const METHODS: [Method; 3] = [Method::Full, Method::FirstOrder, Method::Oracle];

    fn shock(a: f64, delta: f64, v: f64) -> InterfaceScattering {
        InterfaceScattering::weak_shock(WeakShockPair::new(a, 1.0, delta).unwrap(), v).unwrap()
    }

    #[test]
    fn identical_media_at_rest_do_not_reflect() {
        let m = Medium::from(PlasmaBandMedium::new(1.3, 0.7).unwrap());
        let s = InterfaceScattering::from_media(m, m, 0.0).unwrap();
        for method in METHODS {
            let sol = reflection(&s, 0.4, method).unwrap();
            assert!(sol.r.abs() < 1e-15, "{method:?}");
            assert!((sol.t - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn static_limit_is_fresnel() {
        let s = shock(1.0, 1e-3, 0.0);
        for x in [1e-9, 1e-3, 0.2] {
            let (e1, e2) = s.epsilons(x);
            let expected = fresnel_normal(e1, e2);
            for method in METHODS {
                let sol = reflection(&s, x, method).unwrap();
                assert!((sol.r - expected).abs() < 1e-12, "{method:?} x={x}");
                assert!((sol.t - 1.0 - sol.r).abs() < 1e-12);
                let energy = sol.r * sol.r + (e2 / e1).sqrt() * sol.t * sol.t;
                assert!((energy - 1.0).abs() < 1e-10);
                assert!(!sol.pole_proximity);
            }
        }
    }

    #[test]
    fn identical_media_cancel_at_any_speed() {
        let m = Medium::from(PlasmaBandMedium::new(1.0, 1.0).unwrap());
        let s = InterfaceScattering::from_media(m, m, 1e-3).unwrap();
        let sol = reflection_first_order(&s, 0.3).unwrap();
        assert!(sol.r.abs() < 1e-16);
    }

    #[test]
    fn below_band_is_a_domain_error() {
        let s = shock(1.0, 1e-3, 1e-5);
        for method in METHODS {
            assert!(matches!(reflection(&s, 0.0, method), Err(Error::Domain(_))));
            assert!(reflection(&s, -1e-4, method).is_err());
        }
        assert!(f_denominator(&s, 0.0).is_err());
    }

    #[test]
    fn f_at_rest_is_sum_of_indices() {
        let s = shock(1.5, 1e-3, 0.0);
        let x = 1e-4;
        let (e1, e2) = s.epsilons(x);
        assert_eq!(f_denominator(&s, x).unwrap(), e1.sqrt() + e2.sqrt());
    }

    #[test]
    fn f_diverges_downward_at_the_crossing() {
        let s = shock(1.0, 1e-3, 1e-5);
        assert!(f_denominator(&s, 1e-30).unwrap() < -1e5);
        assert!(f_denominator(&s, 1e-3).unwrap() > 0.0);
    }

    #[test]
    fn full_amplitude_is_evanescent_near_the_crossing() {
        // ω₂ drops below ω̃ once x < v√(2aδ)
        let s = shock(1.0, 1e-3, 1e-5);
        assert!(matches!(
            reflection_full(&s, 5e-11),
            Err(Error::Evanescent { .. })
        ));
    }

    #[test]
    fn singular_system_is_flagged_not_failed() {
        let (_, det) = solve_2x2([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0]);
        assert_eq!(det, 0.0);
        let s = shock(1.0, 1e-3, 1e-5).with_denominator_floor(1e3);
        let sol = boundary_solve_oracle(&s, 0.01).unwrap();
        assert!(sol.pole_proximity);
    }

    #[test]
    fn oracle_matches_full_form() {
        let s = shock(1.2, 5e-3, 1e-3);
        for x in [1e-2, 0.05, 0.5] {
            let full = reflection_full(&s, x).unwrap();
            let oracle = boundary_solve_oracle(&s, x).unwrap();
            assert!((full.r - oracle.r).abs() <= 1e-10 * full.r.abs().max(1.0));
            assert!((oracle.t - 1.0 - oracle.r).abs() < 1e-12);
            assert!((full.denominator_value - oracle.denominator_value).abs() < 1e-12);
        }
    }
}
