//! Superradiant reflection of electromagnetic waves at a moving dielectric
//! discontinuity.
//!
//! A plane shock front moving with speed `v` (units of c) separates two
//! transparent, plasma-like gases. The reflection amplitude of a normally
//! incident wave acquires poles just above the zero crossing `ω̃` of the
//! permittivity; those poles mark stimulated emission. This crate computes
//! the permittivities, the Doppler-shifted amplitudes, the pole locations
//! and the photon energies they map to across parameter sweeps.

pub mod cli;
pub mod config;
pub mod constants;
pub mod error;
pub mod kinematics;
pub mod media;
pub mod poles;
pub mod scattering;
pub mod sweep;
pub mod validate;

pub use error::{Error, Result};
pub use kinematics::{Direction, DopplerTriple, WaveMode};
pub use media::{Medium, PlasmaBandMedium, Side, WeakShockPair};
pub use poles::{find_pole, NoPole, PoleOutcome, PoleRecord};
pub use scattering::{InterfaceScattering, Method, ReflectionSolution};
