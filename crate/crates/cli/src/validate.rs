//! Self-check of the closed forms against the density-matrix simulator,
//! the root finders against each other and, optionally, the shot simulator
//! against error propagation.

use std::f64::consts::PI;
use std::fmt;

use noon_core::analytic::{self, ChannelPair, Method};
use noon_core::{breakeven, fock, montecarlo};

use crate::args::Fault;
use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 20_130_517;

/// Transmittances of the oracle grid, including the lossless edge and a
/// value a hair below it.
pub const ORACLE_ALPHAS: [f64; 5] = [0.1, 0.3, 0.6, 0.999999, 1.0];
pub const ORACLE_PHASES: usize = 32;
pub const ORACLE_MAX_N: u32 = 6;
pub const ORACLE_TOL: f64 = 1e-10;
pub const LIMIT_TOL: f64 = 1e-14;
pub const ROOT_TOL: f64 = 1e-9;
pub const THRESHOLD_TOL: f64 = 0.005;
pub const RATIO_TOL: f64 = 0.1;
pub const EMPIRICAL_SHOTS: u64 = 10_000;
pub const EMPIRICAL_TRIALS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// Residual must not exceed the tolerance.
    AtMost(f64),
    /// Smallest margin over the grid must be strictly positive.
    Positive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub bound: Bound,
    pub cases: usize,
}

impl Check {
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost(tol) => self.residual <= tol,
            Bound::Positive => self.residual > 0.0,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        match self.bound {
            Bound::AtMost(tol) => write!(
                f,
                "{status}  {:<46} max residual {:.3e} (tolerance {:.0e}, {} cases)",
                self.name, self.residual, tol, self.cases
            ),
            Bound::Positive => write!(
                f,
                "{status}  {:<46} min margin {:.3e} (must be > 0, {} cases)",
                self.name, self.residual, self.cases
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        if failed == 0 {
            writeln!(f, "all {} checks passed", self.checks.len())
        } else {
            writeln!(f, "{failed} of {} checks failed", self.checks.len())
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub empirical: bool,
    pub seed: u64,
    pub fault: Option<Fault>,
}

/// Running maximum of a residual over a grid.
#[derive(Default)]
struct Worst {
    value: f64,
    cases: usize,
}

impl Worst {
    fn add(&mut self, r: f64) {
        self.cases += 1;
        // NaN must poison the check rather than vanish in f64::max
        if r.is_nan() || r > self.value {
            self.value = if r.is_nan() { f64::INFINITY } else { r };
        }
    }

    fn at_most(self, name: impl Into<String>, tol: f64) -> Check {
        Check {
            name: name.into(),
            residual: self.value,
            bound: Bound::AtMost(tol),
            cases: self.cases,
        }
    }
}

fn min_margin(name: impl Into<String>, margins: impl IntoIterator<Item = f64>) -> Check {
    let mut cases = 0;
    let residual = margins.into_iter().fold(f64::INFINITY, |m, x| {
        cases += 1;
        if x.is_nan() { f64::NEG_INFINITY } else { m.min(x) }
    });
    Check {
        name: name.into(),
        residual,
        bound: Bound::Positive,
        cases,
    }
}

struct Validator {
    fault: Option<Fault>,
}

impl Validator {
    /// The channel seen by the closed forms, optionally corrupted.
    fn closed(&self, ch: &ChannelPair) -> Result<ChannelPair, CliError> {
        Ok(match self.fault {
            None => *ch,
            Some(Fault::AlphaSquared) => {
                ChannelPair::new(ch.alpha1().powi(2), ch.alpha2().powi(2), ch.phi0())?
            }
        })
    }

    fn channels(phi0: f64) -> Result<Vec<ChannelPair>, CliError> {
        let mut out = Vec::new();
        for &a1 in &ORACLE_ALPHAS {
            for &a2 in &ORACLE_ALPHAS {
                out.push(ChannelPair::new(a1, a2, phi0)?);
            }
        }
        Ok(out)
    }

    fn phases() -> impl Iterator<Item = f64> {
        (0..ORACLE_PHASES).map(|k| 2.0 * PI * k as f64 / ORACLE_PHASES as f64)
    }

    fn oracle_grid(&self, method: Method) -> Result<Check, CliError> {
        let mut worst = Worst::default();
        for phi0 in [0.0, 0.37] {
            for ch in Self::channels(phi0)? {
                let cf = self.closed(&ch)?;
                for n in 1..=ORACLE_MAX_N {
                    for phi in Self::phases() {
                        let m = match method {
                            Method::Noon => fock::oracle_noon_stats(n, &ch, phi)?,
                            Method::Separable => fock::oracle_separable_stats(n, &ch, phi)?,
                        };
                        let mean = analytic::mean(method, n, &cf, phi);
                        let var = analytic::noise(method, n, &cf, phi).powi(2);
                        worst.add((m.mean - mean).abs().max((m.variance - var).abs()));
                    }
                }
            }
        }
        Ok(worst.at_most(format!("oracle mean/variance ({method})"), ORACLE_TOL))
    }

    fn projections(&self) -> Result<Check, CliError> {
        let mut worst = Worst::default();
        for ch in Self::channels(0.37)? {
            let cf = self.closed(&ch)?;
            for method in [Method::Noon, Method::Separable] {
                for n in 1..=ORACLE_MAX_N {
                    for phi in Self::phases() {
                        let (plus, minus, zero) = fock::oracle_outcome_probabilities(method, n, &ch, phi)?;
                        let p = montecarlo::outcome_probabilities(method, n, &cf, phi)?;
                        worst.add(
                            (plus - p.plus)
                                .abs()
                                .max((minus - p.minus).abs())
                                .max((zero - p.zero).abs()),
                        );
                    }
                }
            }
        }
        Ok(worst.at_most("outcome probabilities by projection", ORACLE_TOL))
    }

    /// `P+ - P-` is the mean and `P+ + P-` the second moment of one event.
    fn moment_identities(&self) -> Result<Check, CliError> {
        let mut worst = Worst::default();
        for ch in Self::channels(0.37)? {
            let cf = self.closed(&ch)?;
            for method in [Method::Noon, Method::Separable] {
                for n in 1..=ORACLE_MAX_N {
                    let per_event = match method {
                        Method::Noon => 1.0,
                        Method::Separable => n as f64,
                    };
                    for phi in Self::phases() {
                        let p = montecarlo::outcome_probabilities(method, n, &ch, phi)?;
                        let mean = analytic::mean(method, n, &cf, phi) / per_event;
                        let var = analytic::noise(method, n, &cf, phi).powi(2) / per_event;
                        worst.add((p.mean() - mean).abs().max((p.variance() - var).abs()));
                        worst.add((p.plus + p.minus + p.zero - 1.0).abs());
                    }
                }
            }
        }
        Ok(worst.at_most("moment identities of outcome probabilities", 1e-12))
    }

    /// Central difference of the simulated mean against the closed-form
    /// responsivity.
    fn responsivity(&self) -> Result<Check, CliError> {
        const H: f64 = 1e-5;
        let mut worst = Worst::default();
        for ch in Self::channels(0.37)? {
            let cf = self.closed(&ch)?;
            for n in 1..=4 {
                for phi in Self::phases().step_by(3) {
                    let up = fock::oracle_noon_stats(n, &ch, phi + H)?.mean;
                    let down = fock::oracle_noon_stats(n, &ch, phi - H)?.mean;
                    let fd = (up - down) / (2.0 * H);
                    worst.add((fd - analytic::noon_responsivity(n, &cf, phi)).abs());
                    let up = fock::oracle_separable_stats(n, &ch, phi + H)?.mean;
                    let down = fock::oracle_separable_stats(n, &ch, phi - H)?.mean;
                    let fd = (up - down) / (2.0 * H);
                    worst.add((fd - analytic::separable_responsivity(n, &cf, phi)).abs());
                }
            }
        }
        Ok(worst.at_most("finite-difference responsivity", 1e-6))
    }

    fn physicality(&self) -> Result<Check, CliError> {
        let mut worst = Worst::default();
        for ch in Self::channels(0.37)? {
            for n in 1..=ORACLE_MAX_N {
                for phi in Self::phases().step_by(4) {
                    let rho = fock::propagated_noon_state(n, &ch, phi)?;
                    worst.add((rho.trace().re - 1.0).abs());
                    worst.add(rho.trace().im.abs());
                    worst.add(rho.hermitian_deviation());
                    worst.add((-rho.min_eigenvalue()).max(0.0));
                }
            }
        }
        Ok(worst.at_most("density matrix trace, hermiticity, positivity", ORACLE_TOL))
    }

    fn limits(&self) -> Vec<Check> {
        let ch = ChannelPair::lossless();
        let mut hl = Worst::default();
        let mut sql = Worst::default();
        for n in 1..=20 {
            hl.add((analytic::noon_min_phase_error(n, &ch).value - 1.0 / n as f64).abs());
            sql.add((analytic::separable_min_phase_error(n, &ch).value - 1.0 / (n as f64).sqrt()).abs());
        }
        vec![
            hl.at_most("Heisenberg limit recovered without loss", LIMIT_TOL),
            sql.at_most("standard quantum limit recovered without loss", LIMIT_TOL),
        ]
    }

    fn unreachable(&self) -> Result<Check, CliError> {
        let grid: Vec<f64> = (1..=20).map(|k| 0.05 * k as f64).collect();
        let mut margins = Vec::new();
        for n in [2, 4, 10] {
            for &a1 in &grid {
                for &a2 in &grid {
                    if a1 == 1.0 && a2 == 1.0 {
                        continue;
                    }
                    let ch = self.closed(&ChannelPair::new(a1, a2, 0.0)?)?;
                    margins.push(analytic::noon_min_phase_error(n, &ch).value - analytic::heisenberg_limit(n));
                }
            }
        }
        Ok(min_margin("Heisenberg limit unreachable with loss", margins))
    }

    fn roots(&self) -> Result<Vec<Check>, CliError> {
        let mut agree = Worst::default();
        let mut thresholds = Worst::default();
        let mut star = Vec::new();
        for n in [2, 3, 4, 6, 10] {
            let p = breakeven::breakeven_alpha2(n, 1.0)?;
            let bisected = p.alpha2_star.unwrap_or(f64::NAN);
            agree.add((bisected - breakeven::breakeven_polynomial_root(n)?).abs());
            star.push(bisected);
            let stated = match n {
                2 => 0.41,
                4 => 0.56,
                10 => 0.73,
                _ => continue,
            };
            thresholds.add((bisected - stated).abs());
        }
        Ok(vec![
            agree.at_most("break-even bisection vs polynomial root", ROOT_TOL),
            thresholds.at_most("break-even thresholds at alpha1 = 1", THRESHOLD_TOL),
            min_margin(
                "break-even frontier grows with N",
                star.windows(2).map(|w| w[1] - w[0]),
            ),
        ])
    }

    fn always_worse(&self) -> Result<Check, CliError> {
        let mut margins = Vec::new();
        for a1 in [0.3, 0.409] {
            for k in 1..=500 {
                let a2 = k as f64 / 500.0;
                let ch = self.closed(&ChannelPair::new(a1, a2, 0.0)?)?;
                margins.push(
                    analytic::noon_min_phase_error(2, &ch).value
                        - analytic::separable_min_phase_error(2, &ch).value,
                );
            }
        }
        Ok(min_margin("N=2 N00N worse for alpha1 in {0.3, 0.409}", margins))
    }
}

/// The eight shot-simulation cases and their seeds.
pub fn empirical_cases(seed: u64) -> Vec<(Method, u32, ChannelPair, u64)> {
    let lossy = ChannelPair::new(0.6, 0.1, 0.0).expect("valid channel");
    let mut out = Vec::new();
    for method in [Method::Noon, Method::Separable] {
        for n in [2, 4] {
            for ch in [ChannelPair::lossless(), lossy] {
                out.push((method, n, ch, seed.wrapping_add(out.len() as u64)));
            }
        }
    }
    out
}

pub fn empirical_checks(seed: u64) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for (method, n, ch, s) in empirical_cases(seed) {
        let phi = montecarlo::operating_point(method, n, &ch);
        let r = montecarlo::empirical_phase_error(method, n, &ch, phi, EMPIRICAL_SHOTS, EMPIRICAL_TRIALS, s)?;
        out.push(Check {
            name: format!(
                "spread/prediction {method} N={n} ({}, {})",
                ch.alpha1(),
                ch.alpha2()
            ),
            residual: (r.ratio() - 1.0).abs(),
            bound: Bound::AtMost(RATIO_TOL),
            cases: EMPIRICAL_TRIALS,
        });
    }
    Ok(out)
}

pub fn run(opts: Options) -> Result<Report, CliError> {
    let v = Validator { fault: opts.fault };
    let mut checks = vec![
        v.oracle_grid(Method::Noon)?,
        v.oracle_grid(Method::Separable)?,
        v.projections()?,
        v.moment_identities()?,
        v.responsivity()?,
        v.physicality()?,
    ];
    checks.extend(v.limits());
    checks.push(v.unreachable()?);
    checks.extend(v.roots()?);
    checks.push(v.always_worse()?);
    if opts.empirical {
        checks.extend(empirical_checks(opts.seed)?);
    }
    Ok(Report { checks })
}
