use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("transmittance {0} is outside (0, 1]")]
    InvalidTransmittance(f64),
    #[error("{name} must be {requirement}, got {value}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("photon number {n} is outside the supported range ({requirement})")]
    InvalidPhotonNumber { n: u32, requirement: &'static str },
    #[error("truncation n_max = {0} is too small")]
    InvalidTruncation(usize),
    #[error("dimension mismatch: expected n_max = {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("expectation value has imaginary residue {0:e}")]
    ImaginaryResidue(f64),
    #[error("probability {0} lies outside [0, 1]")]
    InvalidProbability(f64),
    #[error("phase {phi} is not interior to the estimator branch [{lo}, {hi}]")]
    PhaseOutsideBranch { phi: f64, lo: f64, hi: f64 },
    #[error("break-even bracket failed: gap {gap} at alpha2 = {alpha2} is not positive")]
    NoBracket { alpha2: f64, gap: f64 },
}
