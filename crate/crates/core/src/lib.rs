//! Phase estimation with photonic N00N states and separable N-photon states
//! sent through attenuating interferometer arms.
//!
//! - [`analytic`]: closed-form noise, responsivity and phase error for both
//!   measurement methods, plus the channel description.
//! - [`fock`]: a dense two-mode Fock-space simulator (Kraus photon loss,
//!   phase shift, observables) used as an independent oracle.
//! - [`breakeven`]: transmittance frontier where both methods give the same
//!   minimum phase error.
//! - [`montecarlo`]: seeded shot-level sampling of the measurements and the
//!   empirical spread of the resulting phase estimates.

pub mod analytic;
pub mod breakeven;
mod error;
pub mod fock;
pub mod montecarlo;

pub use analytic::{ChannelPair, Method, PhaseErrorResult, PhysicalArm};
pub use error::{Error, Result};
