//! Parameter sweeps over front speed, density jump, background constant and
//! the energy scale, mapping each located pole to a photon energy.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{omega_to_ev, plasma_frequency};
use crate::error::{invalid, Error, Result};
use crate::media::WeakShockPair;
use crate::poles::{find_pole, PoleOutcome, DEFAULT_REL_TOL, MIN_REL_TOL};
use crate::scattering::InterfaceScattering;

/// Environment variable capping sweep parallelism (0 = one thread per core).
pub const THREADS_ENV: &str = "SUPERRAY_THREADS";

pub const CSV_HEADER: &str =
    "v,delta,a,n_e_cm3,omega_tilde_ev,pole_energy_ev,x_offset,f_residual,status";

pub const V_MAX: f64 = 0.01;
pub const DELTA_MIN: f64 = 1e-6;
pub const DELTA_MAX: f64 = 0.1;

/// Photon energy `ħω_p(n_e)/√a` of the permittivity zero crossing, in eV.
pub fn emitted_energy_estimate(n_e: f64, a: f64) -> Result<f64> {
    if !(n_e > 0.0) {
        return Err(invalid("n_e", format!("must be positive, got {n_e}")));
    }
    if !(a > 0.0) {
        return Err(invalid("a", format!("must be positive, got {a}")));
    }
    Ok(omega_to_ev(plasma_frequency(n_e)?)? / a.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// `points` values from `lo` to `hi`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridRange {
    pub fn single(value: f64) -> Self {
        Self {
            lo: value,
            hi: value,
            points: 1,
            spacing: Spacing::Linear,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.lo];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.lo;
                }
                if i + 1 == self.points {
                    return self.hi;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.lo + (self.hi - self.lo) * t,
                    Spacing::Log => {
                        let (l0, l1) = (self.lo.log10(), self.hi.log10());
                        10f64.powf(l0 + (l1 - l0) * t)
                    }
                }
            })
            .collect()
    }

    /// `keys` names the `lo`, `hi`, `points` and `spacing` config keys.
    fn validate(&self, keys: [&'static str; 4], min: f64, max: f64) -> Result<()> {
        let key = |suffix: &str| match suffix {
            "lo" => keys[0],
            "hi" => keys[1],
            "points" => keys[2],
            _ => keys[3],
        };
        if !(self.lo >= min && self.lo <= max) {
            return Err(invalid(key("lo"), format!("{} outside [{min:e}, {max:e}]", self.lo)));
        }
        if !(self.hi >= min && self.hi <= max) {
            return Err(invalid(key("hi"), format!("{} outside [{min:e}, {max:e}]", self.hi)));
        }
        if self.lo > self.hi {
            return Err(invalid(key("hi"), format!("{} is below lo = {}", self.hi, self.lo)));
        }
        if self.points == 0 {
            return Err(invalid(key("points"), "must be at least 1"));
        }
        if self.spacing == Spacing::Log && self.points > 1 && self.lo <= 0.0 {
            return Err(invalid(key("spacing"), "log spacing needs lo > 0"));
        }
        Ok(())
    }
}

/// How the dimensionless pole offset is mapped to an energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyScale {
    /// Electron densities in cm⁻³; `ω̃ = ω_p(n_e)/√a`.
    ElectronDensity(Vec<f64>),
    /// Zero-crossing energies `ħω̃` in eV, used directly.
    OmegaTildeEv(Vec<f64>),
}

impl EnergyScale {
    pub fn values(&self) -> &[f64] {
        match self {
            EnergyScale::ElectronDensity(v) | EnergyScale::OmegaTildeEv(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub v_range: GridRange,
    pub delta_range: GridRange,
    pub a_values: Vec<f64>,
    pub energy_scale: EnergyScale,
    pub rel_tol: f64,
    pub format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            v_range: GridRange::single(1e-5),
            delta_range: GridRange {
                lo: 1e-4,
                hi: 1e-2,
                points: 9,
                spacing: Spacing::Log,
            },
            a_values: vec![1.0],
            energy_scale: EnergyScale::OmegaTildeEv(vec![1.0]),
            rel_tol: DEFAULT_REL_TOL,
            format: OutputFormat::Csv,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.v_range
            .validate(["v_lo", "v_hi", "v_points", "v_spacing"], 0.0, V_MAX)?;
        self.delta_range.validate(
            ["delta_lo", "delta_hi", "delta_points", "delta_spacing"],
            DELTA_MIN,
            DELTA_MAX,
        )?;
        if self.a_values.is_empty() {
            return Err(invalid("a_values", "must not be empty"));
        }
        if let Some(a) = self.a_values.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(invalid("a_values", format!("{a} is not a positive number")));
        }
        let key = match self.energy_scale {
            EnergyScale::ElectronDensity(_) => "n_e_values",
            EnergyScale::OmegaTildeEv(_) => "omega_tilde_ev_values",
        };
        let scale = self.energy_scale.values();
        if scale.is_empty() {
            return Err(invalid(key, "must not be empty"));
        }
        if let Some(s) = scale.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return Err(invalid(key, format!("{s} is not a positive number")));
        }
        if !(self.rel_tol >= MIN_REL_TOL && self.rel_tol < 1.0) {
            return Err(invalid(
                "rel_tol",
                format!("{} outside [{MIN_REL_TOL:e}, 1)", self.rel_tol),
            ));
        }
        Ok(())
    }

    /// Number of rows the sweep will produce.
    pub fn grid_size(&self) -> usize {
        self.v_range.points
            * self.delta_range.points
            * self.a_values.len()
            * self.energy_scale.values().len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pole,
    NoPole,
    /// The point could not be evaluated; other rows are unaffected.
    Error,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Pole => "pole",
            RowStatus::NoPole => "no_pole",
            RowStatus::Error => "error",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub v: f64,
    pub delta: f64,
    pub a: f64,
    pub n_e_cm3: Option<f64>,
    pub omega_tilde_ev: f64,
    pub pole_energy_ev: Option<f64>,
    pub x_offset: Option<f64>,
    pub f_residual: Option<f64>,
    pub status: RowStatus,
}

impl SpectrumRow {
    /// Re-checks the pole invariants carried by a row.
    pub fn check(&self) -> Result<()> {
        if self.status != RowStatus::Pole {
            return Ok(());
        }
        let bad = |reason: String| Err(invalid("row", reason));
        let (Some(energy), Some(x), Some(res)) =
            (self.pole_energy_ev, self.x_offset, self.f_residual)
        else {
            return bad("pole row is missing values".into());
        };
        if energy < self.omega_tilde_ev {
            return bad(format!("pole energy {energy} below ω̃ energy {}", self.omega_tilde_ev));
        }
        if ((energy / self.omega_tilde_ev - 1.0) - x).abs() > 1e-12 {
            return bad(format!("pole energy {energy} inconsistent with offset {x}"));
        }
        if !(x > 0.0 && x <= self.delta) {
            return bad(format!("offset {x} outside (0, {}]", self.delta));
        }
        if res.abs() > 1e-6 * (2.0 * self.a * self.delta).sqrt() {
            return bad(format!("root residual {res:e} too large"));
        }
        Ok(())
    }
}

struct GridPoint {
    v: f64,
    delta: f64,
    a: f64,
    scale: f64,
}

fn sorted(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    values
}

fn grid(config: &SweepConfig) -> Vec<GridPoint> {
    let vs = sorted(config.v_range.values());
    let deltas = sorted(config.delta_range.values());
    let a_values = sorted(config.a_values.clone());
    let scales = sorted(config.energy_scale.values().to_vec());
    let mut points = Vec::with_capacity(config.grid_size());
    for &v in &vs {
        for &delta in &deltas {
            for &a in &a_values {
                for &scale in &scales {
                    points.push(GridPoint { v, delta, a, scale });
                }
            }
        }
    }
    points
}

fn evaluate(point: &GridPoint, config: &SweepConfig) -> SpectrumRow {
    let (n_e, omega_tilde_ev) = match config.energy_scale {
        EnergyScale::ElectronDensity(_) => (
            Some(point.scale),
            emitted_energy_estimate(point.scale, point.a).unwrap_or(f64::NAN),
        ),
        EnergyScale::OmegaTildeEv(_) => (None, point.scale),
    };
    let mut row = SpectrumRow {
        v: point.v,
        delta: point.delta,
        a: point.a,
        n_e_cm3: n_e,
        omega_tilde_ev,
        pole_energy_ev: None,
        x_offset: None,
        f_residual: None,
        status: RowStatus::Error,
    };
    let outcome = WeakShockPair::new(point.a, 1.0, point.delta)
        .and_then(|pair| InterfaceScattering::weak_shock(pair, point.v))
        .and_then(|scatter| find_pole(&scatter, config.rel_tol));
    match outcome {
        Ok(PoleOutcome::Pole(p)) if omega_tilde_ev.is_finite() => {
            row.pole_energy_ev = Some(omega_tilde_ev * (1.0 + p.x_offset));
            row.x_offset = Some(p.x_offset);
            row.f_residual = Some(p.f_residual);
            row.status = RowStatus::Pole;
        }
        Ok(PoleOutcome::NoPole(_)) => row.status = RowStatus::NoPole,
        Ok(PoleOutcome::Pole(_)) => {}
        Err(e) => log::warn!(
            "sweep point v={} delta={} a={} failed: {e}",
            point.v,
            point.delta,
            point.a
        ),
    }
    row
}

/// Thread count from [`THREADS_ENV`]; unset, empty or unparsable means 0.
pub fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}

/// Runs the sweep on a pool of `threads` workers (0 = automatic). Rows come
/// back ordered by `(v, delta, a, scale)` whatever the schedule.
pub fn run_sweep_with_threads(config: &SweepConfig, threads: usize) -> Result<Vec<SpectrumRow>> {
    config.validate()?;
    let points = grid(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| points.par_iter().map(|p| evaluate(p, config)).collect()))
}

/// Runs the sweep with parallelism taken from [`THREADS_ENV`].
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SpectrumRow>> {
    run_sweep_with_threads(config, threads_from_env())
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    let plain = format!("{x}");
    let exp = format!("{x:e}");
    if exp.len() < plain.len() {
        exp
    } else {
        plain
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[SpectrumRow], mut out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Domain(format!("write failed: {e}"));
    writeln!(out, "{CSV_HEADER}").map_err(io)?;
    for row in rows {
        row.check()?;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            format_float(row.v),
            format_float(row.delta),
            format_float(row.a),
            optional(row.n_e_cm3),
            format_float(row.omega_tilde_ev),
            optional(row.pole_energy_ev),
            optional(row.x_offset),
            optional(row.f_residual),
            row.status.as_str(),
        )
        .map_err(io)?;
    }
    Ok(())
}

pub fn write_json<W: Write>(rows: &[SpectrumRow], mut out: W) -> Result<()> {
    for row in rows {
        row.check()?;
    }
    serde_json::to_writer_pretty(&mut out, rows)
        .map_err(|e| Error::Domain(format!("write failed: {e}")))?;
    writeln!(out).map_err(|e| Error::Domain(format!("write failed: {e}")))
}

pub fn write_rows<W: Write>(rows: &[SpectrumRow], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => write_json(rows, out),
    }
}
