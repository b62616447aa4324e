//! Closed-form phase-error expressions for the two estimation methods.
//!
//! The N00N-state method pairs `(|N0> + |0N>)/sqrt(2)` with the observable
//! `A_D = |N0><0N| + |0N><N0|`. The separable-state method sends `N`
//! independent dual-rail photons and measures the sum of the single-photon
//! swap observables. Every expression is written in terms of the arm
//! transmittances `alpha1`, `alpha2` and the dispersion shift `phi0`; the
//! physical arm description is only used to derive those three numbers.

use std::f64::consts::{FRAC_PI_2, SQRT_2};
use std::fmt;

use crate::error::{Error, Result};

/// Below this magnitude the responsivity is treated as zero and the phase
/// error as divergent.
pub const SINGULAR_SIN: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Noon,
    Separable,
}

impl Method {
    /// Width of the monotonic branch of `<A>` in phase.
    pub fn branch_width(self, n: u32) -> f64 {
        match self {
            Method::Noon => std::f64::consts::PI / n as f64,
            Method::Separable => std::f64::consts::PI,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Noon => "noon",
            Method::Separable => "separable",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArmRole {
    /// Enclosed arm inside the apparatus.
    Short,
    /// Arm that passes the phase object.
    Long,
}

/// Physical description of one interferometer arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalArm {
    eta: f64,
    attenuation: f64,
    length: f64,
    role: ArmRole,
}

impl PhysicalArm {
    /// `eta` is the refractive index, `attenuation` the coefficient `K`
    /// (inverse length) and `length` the path length `L`.
    pub fn new(eta: f64, attenuation: f64, length: f64, role: ArmRole) -> Result<Self> {
        if !(eta.is_finite() && eta > 0.0) {
            return Err(Error::InvalidParameter {
                name: "eta",
                requirement: "finite and > 0",
                value: eta,
            });
        }
        check_non_negative("K", attenuation)?;
        check_non_negative("L", length)?;
        Ok(Self {
            eta,
            attenuation,
            length,
            role,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn attenuation(&self) -> f64 {
        self.attenuation
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn role(&self) -> ArmRole {
        self.role
    }

    pub fn transmittance(&self) -> f64 {
        (-self.attenuation * self.length).exp()
    }

    fn optical_path(&self) -> f64 {
        self.eta * self.length
    }
}

fn check_non_negative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            requirement: "finite and >= 0",
            value,
        })
    }
}

/// `exp(-K L)`.
pub fn transmittance(attenuation: f64, length: f64) -> Result<f64> {
    check_non_negative("K", attenuation)?;
    check_non_negative("L", length)?;
    Ok((-attenuation * length).exp())
}

/// `(omega / c) (eta2 L2 - eta1 L1)`.
pub fn dispersion_shift(arm1: &PhysicalArm, arm2: &PhysicalArm, omega_over_c: f64) -> Result<f64> {
    if !(omega_over_c.is_finite() && omega_over_c > 0.0) {
        return Err(Error::InvalidParameter {
            name: "omega/c",
            requirement: "finite and > 0",
            value: omega_over_c,
        });
    }
    Ok(omega_over_c * (arm2.optical_path() - arm1.optical_path()))
}

/// Attenuation and dispersion of the two arms, reduced to the three numbers
/// every phase-error expression depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPair {
    alpha1: f64,
    alpha2: f64,
    phi0: f64,
}

pub(crate) fn check_transmittance(alpha: f64) -> Result<f64> {
    if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
        Ok(alpha)
    } else {
        Err(Error::InvalidTransmittance(alpha))
    }
}

impl ChannelPair {
    pub fn new(alpha1: f64, alpha2: f64, phi0: f64) -> Result<Self> {
        check_transmittance(alpha1)?;
        check_transmittance(alpha2)?;
        if !phi0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phi0",
                requirement: "finite",
                value: phi0,
            });
        }
        Ok(Self {
            alpha1,
            alpha2,
            phi0,
        })
    }

    pub fn lossless() -> Self {
        Self {
            alpha1: 1.0,
            alpha2: 1.0,
            phi0: 0.0,
        }
    }

    /// Derives the transmittances and dispersion shift from physical arms.
    pub fn from_arms(arm1: &PhysicalArm, arm2: &PhysicalArm, omega_over_c: f64) -> Result<Self> {
        let phi0 = dispersion_shift(arm1, arm2, omega_over_c)?;
        // exp(-K L) underflows to zero for very lossy arms; reject that here.
        Self::new(arm1.transmittance(), arm2.transmittance(), phi0)
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    pub fn with_phi0(self, phi0: f64) -> Result<Self> {
        Self::new(self.alpha1, self.alpha2, phi0)
    }

    /// Same channel with the two arms exchanged (`phi0` is kept).
    pub fn swapped(self) -> Self {
        Self {
            alpha1: self.alpha2,
            alpha2: self.alpha1,
            phi0: self.phi0,
        }
    }

    /// Amplitude factor `(alpha1 alpha2)^(n/2)` of the interference term.
    pub fn visibility(&self, n: u32) -> f64 {
        (self.alpha1 * self.alpha2).sqrt().powi(n as i32)
    }
}

/// Value of a phase-error evaluation. `value` is `+inf` where the
/// responsivity vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseErrorResult {
    pub value: f64,
    pub at_phi: f64,
    pub method: Method,
    pub n_photons: u32,
}

impl PhaseErrorResult {
    pub fn is_divergent(&self) -> bool {
        self.value.is_infinite()
    }
}

fn check_n(n: u32) {
    assert!(n >= 1, "photon number must be at least 1");
}

fn powi(x: f64, n: u32) -> f64 {
    x.powi(n as i32)
}

/// `<A_D> = (alpha1 alpha2)^(N/2) cos N(phi - phi0)`.
pub fn noon_mean(n: u32, ch: &ChannelPair, phi: f64) -> f64 {
    check_n(n);
    ch.visibility(n) * (n as f64 * (phi - ch.phi0)).cos()
}

pub fn noon_noise(n: u32, ch: &ChannelPair, phi: f64) -> f64 {
    check_n(n);
    let a1n = powi(ch.alpha1, n);
    let a2n = powi(ch.alpha2, n);
    let s = (n as f64 * (phi - ch.phi0)).sin();
    (0.5 * (a1n - 2.0 * a1n * a2n + a2n) + a1n * a2n * s * s).sqrt()
}

pub fn noon_responsivity(n: u32, ch: &ChannelPair, phi: f64) -> f64 {
    check_n(n);
    -(n as f64) * ch.visibility(n) * (n as f64 * (phi - ch.phi0)).sin()
}

/// Error-propagation phase error `noise / |responsivity|` for the N00N
/// method, written with the transmittances divided out.
pub fn noon_phase_error(n: u32, ch: &ChannelPair, phi: f64) -> PhaseErrorResult {
    check_n(n);
    let s = (n as f64 * (phi - ch.phi0)).sin();
    let value = if s.abs() < SINGULAR_SIN {
        f64::INFINITY
    } else {
        let excess = 0.5 * (powi(ch.alpha1, n).recip() - 2.0 + powi(ch.alpha2, n).recip());
        (excess + s * s).sqrt() / (n as f64 * s.abs())
    };
    PhaseErrorResult {
        value,
        at_phi: phi,
        method: Method::Noon,
        n_photons: n,
    }
}

/// Minimum over phi, reached where `sin^2 N(phi - phi0) = 1`.
pub fn noon_min_phase_error(n: u32, ch: &ChannelPair) -> PhaseErrorResult {
    check_n(n);
    let sum = powi(ch.alpha1, n).recip() + powi(ch.alpha2, n).recip();
    PhaseErrorResult {
        value: sum.sqrt() / (n as f64 * SQRT_2),
        at_phi: ch.phi0 + FRAC_PI_2 / n as f64,
        method: Method::Noon,
        n_photons: n,
    }
}

/// `<A_R> = N sqrt(alpha1 alpha2) cos(phi - phi0)`.
pub fn separable_mean(n: u32, ch: &ChannelPair, phi: f64) -> f64 {
    check_n(n);
    n as f64 * ch.visibility(1) * (phi - ch.phi0).cos()
}

/// Total noise of `N` independent photons: `sqrt(N)` times the per-photon
/// standard deviation.
pub fn separable_noise(n: u32, ch: &ChannelPair, phi: f64) -> f64 {
    check_n(n);
    let (a1, a2) = (ch.alpha1, ch.alpha2);
    let s = (phi - ch.phi0).sin();
    (n as f64 * (0.5 * (a1 - 2.0 * a1 * a2 + a2) + a1 * a2 * s * s)).sqrt()
}

pub fn separable_responsivity(n: u32, ch: &ChannelPair, phi: f64) -> f64 {
    check_n(n);
    -(n as f64) * ch.visibility(1) * (phi - ch.phi0).sin()
}

pub fn separable_phase_error(n: u32, ch: &ChannelPair, phi: f64) -> PhaseErrorResult {
    check_n(n);
    let s = (phi - ch.phi0).sin();
    let value = if s.abs() < SINGULAR_SIN {
        f64::INFINITY
    } else {
        let excess = 0.5 * (ch.alpha1.recip() - 2.0 + ch.alpha2.recip());
        (excess + s * s).sqrt() / ((n as f64).sqrt() * s.abs())
    };
    PhaseErrorResult {
        value,
        at_phi: phi,
        method: Method::Separable,
        n_photons: n,
    }
}

pub fn separable_min_phase_error(n: u32, ch: &ChannelPair) -> PhaseErrorResult {
    check_n(n);
    let sum = ch.alpha1.recip() + ch.alpha2.recip();
    PhaseErrorResult {
        value: (sum / (2.0 * n as f64)).sqrt(),
        at_phi: ch.phi0 + FRAC_PI_2,
        method: Method::Separable,
        n_photons: n,
    }
}

pub fn mean(method: Method, n: u32, ch: &ChannelPair, phi: f64) -> f64 {
    match method {
        Method::Noon => noon_mean(n, ch, phi),
        Method::Separable => separable_mean(n, ch, phi),
    }
}

pub fn noise(method: Method, n: u32, ch: &ChannelPair, phi: f64) -> f64 {
    match method {
        Method::Noon => noon_noise(n, ch, phi),
        Method::Separable => separable_noise(n, ch, phi),
    }
}

pub fn phase_error(method: Method, n: u32, ch: &ChannelPair, phi: f64) -> PhaseErrorResult {
    match method {
        Method::Noon => noon_phase_error(n, ch, phi),
        Method::Separable => separable_phase_error(n, ch, phi),
    }
}

pub fn min_phase_error(method: Method, n: u32, ch: &ChannelPair) -> PhaseErrorResult {
    match method {
        Method::Noon => noon_min_phase_error(n, ch),
        Method::Separable => separable_min_phase_error(n, ch),
    }
}

pub fn heisenberg_limit(n: u32) -> f64 {
    check_n(n);
    1.0 / n as f64
}

pub fn standard_quantum_limit(n: u32) -> f64 {
    check_n(n);
    1.0 / (n as f64).sqrt()
}
