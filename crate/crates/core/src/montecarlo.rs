//! Seeded shot-level simulation of the `A_D` / `A_R` measurements.
//!
//! Each measurement event has outcome `+1`, `-1` or `0` (the photons left
//! the signal subspace). A N00N shot is one event; a separable shot is `N`
//! independent single-photon events whose values add up, so separable
//! records count photon events and `shots` is `N` times the number of
//! experimental shots.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)` with the stream
//! set to the trial index, and counts are drawn as a chain of binomials
//! (`+1` first, then `-1` among the rest). See [`PRNG_DESCRIPTION`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::analytic::{self, ChannelPair, Method};
use crate::error::{Error, Result};

pub const PRNG_DESCRIPTION: &str =
    "ChaCha8Rng (rand_chacha 0.9) seed_from_u64(seed), stream = trial index; counts via rand_distr Binomial chain (+1 then -1)";

const PROBABILITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeProbabilities {
    pub plus: f64,
    pub minus: f64,
    pub zero: f64,
}

impl OutcomeProbabilities {
    pub fn mean(&self) -> f64 {
        self.plus - self.minus
    }

    pub fn variance(&self) -> f64 {
        self.plus + self.minus - self.mean().powi(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotRecord {
    pub n_plus: u64,
    pub n_minus: u64,
    pub n_zero: u64,
    pub shots: u64,
    pub seed: u64,
}

impl ShotRecord {
    /// Average outcome value per recorded event.
    pub fn mean_outcome(&self) -> f64 {
        (self.n_plus as f64 - self.n_minus as f64) / self.shots as f64
    }

    pub fn is_consistent(&self) -> bool {
        self.shots > 0 && self.n_plus + self.n_minus + self.n_zero == self.shots
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialEnsemble {
    pub estimates: Vec<f64>,
    pub phi_true: f64,
    pub shots_per_trial: u64,
    pub trials: usize,
    pub method: Method,
}

impl TrialEnsemble {
    pub fn mean(&self) -> f64 {
        self.estimates.iter().sum::<f64>() / self.estimates.len() as f64
    }

    /// Sample standard deviation (n - 1 denominator).
    pub fn std_dev(&self) -> f64 {
        let m = self.mean();
        let ss: f64 = self.estimates.iter().map(|x| (x - m).powi(2)).sum();
        (ss / (self.estimates.len() as f64 - 1.0)).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalPhaseError {
    pub empirical_sd: f64,
    pub predicted: f64,
    pub bias: f64,
}

impl EmpiricalPhaseError {
    pub fn ratio(&self) -> f64 {
        self.empirical_sd / self.predicted
    }
}

fn check_n(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidPhotonNumber {
            n,
            requirement: "N >= 1",
        });
    }
    Ok(())
}

fn settle(p: f64) -> Result<f64> {
    if !(-PROBABILITY_TOL..=1.0 + PROBABILITY_TOL).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Outcome probabilities of one measurement event. For the separable
/// method these are per photon.
pub fn outcome_probabilities(
    method: Method,
    n: u32,
    ch: &ChannelPair,
    phi: f64,
) -> Result<OutcomeProbabilities> {
    check_n(n)?;
    let k = match method {
        Method::Noon => n,
        Method::Separable => 1,
    };
    let a1 = ch.alpha1().powi(k as i32);
    let a2 = ch.alpha2().powi(k as i32);
    let interference = 0.5 * ch.visibility(k) * (k as f64 * (phi - ch.phi0())).cos();
    let plus = settle(0.25 * (a1 + a2) + interference)?;
    let minus = settle(0.25 * (a1 + a2) - interference)?;
    let zero = settle(1.0 - plus - minus)?;
    Ok(OutcomeProbabilities { plus, minus, zero })
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn draw_counts(rng: &mut ChaCha8Rng, probs: &OutcomeProbabilities, events: u64) -> (u64, u64, u64) {
    let n_plus = Binomial::new(events, probs.plus)
        .expect("probability in [0, 1]")
        .sample(rng);
    let rest = events - n_plus;
    let conditional = if probs.plus >= 1.0 {
        0.0
    } else {
        (probs.minus / (1.0 - probs.plus)).clamp(0.0, 1.0)
    };
    let n_minus = Binomial::new(rest, conditional)
        .expect("probability in [0, 1]")
        .sample(rng);
    (n_plus, n_minus, rest - n_minus)
}

fn events_per_shot(method: Method, n: u32) -> u64 {
    match method {
        Method::Noon => 1,
        Method::Separable => n as u64,
    }
}

fn sample_trial(
    method: Method,
    n: u32,
    probs: &OutcomeProbabilities,
    shots: u64,
    seed: u64,
    trial: u64,
) -> ShotRecord {
    let events = shots * events_per_shot(method, n);
    let mut rng = trial_rng(seed, trial);
    let (n_plus, n_minus, n_zero) = draw_counts(&mut rng, probs, events);
    ShotRecord {
        n_plus,
        n_minus,
        n_zero,
        shots: events,
        seed,
    }
}

/// Simulates `shots` experimental shots (stream 0 of `seed`).
pub fn sample_shots(
    method: Method,
    n: u32,
    ch: &ChannelPair,
    phi: f64,
    shots: u64,
    seed: u64,
) -> Result<ShotRecord> {
    if shots < 1 {
        return Err(Error::InvalidParameter {
            name: "shots",
            requirement: ">= 1",
            value: shots as f64,
        });
    }
    let probs = outcome_probabilities(method, n, ch, phi)?;
    Ok(sample_trial(method, n, &probs, shots, seed, 0))
}

/// Inverts the mean on the principal branch starting at `phi0`.
pub fn estimate_phase(record: &ShotRecord, method: Method, n: u32, ch: &ChannelPair) -> f64 {
    // per-event mean; for the separable method this is <A_R> / N
    let mean = record.mean_outcome();
    let (k, visibility) = match method {
        Method::Noon => (n as f64, ch.visibility(n)),
        Method::Separable => (1.0, ch.visibility(1)),
    };
    ch.phi0() + (mean / visibility).clamp(-1.0, 1.0).acos() / k
}

/// `phi0 + pi / (2N)` for N00N, `phi0 + pi / 2` for separable.
pub fn operating_point(method: Method, n: u32, ch: &ChannelPair) -> f64 {
    ch.phi0() + 0.5 * method.branch_width(n)
}

fn check_branch(method: Method, n: u32, ch: &ChannelPair, phi: f64) -> Result<()> {
    let lo = ch.phi0();
    let hi = lo + method.branch_width(n);
    if !(phi > lo && phi < hi) {
        return Err(Error::PhaseOutsideBranch { phi, lo, hi });
    }
    Ok(())
}

/// Runs `trials` independent experiments of `shots` shots each and inverts
/// every one of them to a phase estimate.
pub fn run_trials(
    method: Method,
    n: u32,
    ch: &ChannelPair,
    phi_true: f64,
    shots: u64,
    trials: usize,
    seed: u64,
) -> Result<TrialEnsemble> {
    check_branch(method, n, ch, phi_true)?;
    if shots < 1 || trials < 2 {
        return Err(Error::InvalidParameter {
            name: "shots/trials",
            requirement: "shots >= 1 and trials >= 2",
            value: trials as f64,
        });
    }
    let probs = outcome_probabilities(method, n, ch, phi_true)?;
    let estimates = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let record = sample_trial(method, n, &probs, shots, seed, t);
            estimate_phase(&record, method, n, ch)
        })
        .collect();
    Ok(TrialEnsemble {
        estimates,
        phi_true,
        shots_per_trial: shots,
        trials,
        method,
    })
}

/// Spread of the phase estimates next to the error-propagation prediction
/// `delta_phi(phi_true) / sqrt(shots)`.
pub fn empirical_phase_error(
    method: Method,
    n: u32,
    ch: &ChannelPair,
    phi_true: f64,
    shots: u64,
    trials: usize,
    seed: u64,
) -> Result<EmpiricalPhaseError> {
    let ensemble = run_trials(method, n, ch, phi_true, shots, trials, seed)?;
    let predicted = analytic::phase_error(method, n, ch, phi_true).value / (shots as f64).sqrt();
    Ok(EmpiricalPhaseError {
        empirical_sd: ensemble.std_dev(),
        predicted,
        bias: ensemble.mean() - phi_true,
    })
}
