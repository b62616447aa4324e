//! Two-mode Fock-space simulator.
//!
//! States are dense density matrices over `|n1, n2>` with `0 <= n1, n2 <= n_max`,
//! ordered lexicographically (`n1` major, `n2` minor): the index of
//! `|n1, n2>` is `n1 * (n_max + 1) + n2`.
//!
//! Photon loss is the amplitude-damping channel with Kraus operators
//! `<n-k| E_k |n> = sqrt(C(n, k) alpha^(n-k) (1-alpha)^k)`. The lost photons
//! are traced out, so the channel is trace preserving and the population
//! that leaves the `{|N0>, |0N>}` subspace stays in the state as lower
//! photon-number blocks.

use nalgebra::{Complex, DMatrix};

use crate::analytic::{check_transmittance, ChannelPair, Method};
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const IMAG_TOL: f64 = 1e-10;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockLabel {
    pub n1: usize,
    pub n2: usize,
}

impl FockLabel {
    pub fn new(n1: usize, n2: usize) -> Self {
        Self { n1, n2 }
    }

    pub fn count(&self, mode: Mode) -> usize {
        match mode {
            Mode::One => self.n1,
            Mode::Two => self.n2,
        }
    }
}

/// Basis bookkeeping for a truncation `n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    n_max: usize,
}

impl FockSpace {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::InvalidTruncation(n_max));
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) * (self.n_max + 1)
    }

    pub fn index(&self, label: FockLabel) -> usize {
        debug_assert!(label.n1 <= self.n_max && label.n2 <= self.n_max);
        label.n1 * (self.n_max + 1) + label.n2
    }

    pub fn label(&self, index: usize) -> FockLabel {
        FockLabel::new(index / (self.n_max + 1), index % (self.n_max + 1))
    }

    pub fn labels(&self) -> impl Iterator<Item = FockLabel> + '_ {
        (0..self.dim()).map(|i| self.label(i))
    }

    pub fn ket(&self, label: FockLabel) -> Result<nalgebra::DVector<C64>> {
        if label.n1 > self.n_max || label.n2 > self.n_max {
            return Err(Error::InvalidTruncation(self.n_max));
        }
        let mut v = nalgebra::DVector::from_element(self.dim(), ZERO);
        v[self.index(label)] = ONE;
        Ok(v)
    }
}

fn max_hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Mixed state of the two interferometer modes.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeDensityMatrix {
    space: FockSpace,
    entries: CMatrix,
}

impl TwoModeDensityMatrix {
    /// Wraps a matrix and checks the density-matrix invariants.
    pub fn new(n_max: usize, entries: CMatrix) -> Result<Self> {
        let space = FockSpace::new(n_max)?;
        if entries.nrows() != space.dim() || entries.ncols() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                actual: entries.nrows(),
            });
        }
        let rho = Self { space, entries };
        rho.check_invariants()?;
        Ok(rho)
    }

    /// `|psi><psi|` for a normalised amplitude vector.
    pub fn pure(n_max: usize, amplitudes: &nalgebra::DVector<C64>) -> Result<Self> {
        let entries = amplitudes * amplitudes.adjoint();
        Self::new(n_max, entries)
    }

    pub fn n_max(&self) -> usize {
        self.space.n_max
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn entry(&self, row: FockLabel, col: FockLabel) -> C64 {
        self.entries[(self.space.index(row), self.space.index(col))]
    }

    pub fn population(&self, label: FockLabel) -> f64 {
        self.entry(label, label).re
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    pub fn purity(&self) -> f64 {
        // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        max_hermitian_deviation(&self.entries)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        // symmetrise first so the solver sees an exactly Hermitian input
        let h = (&self.entries + self.entries.adjoint()) * C64::new(0.5, 0.0);
        h.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Hermiticity, unit trace and positivity at the module tolerances.
    pub fn check_invariants(&self) -> Result<()> {
        let dev = self.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidParameter {
                name: "trace",
                requirement: "1 within 1e-12",
                value: tr.re,
            });
        }
        let min_eig = self.min_eigenvalue();
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidParameter {
                name: "minimum eigenvalue",
                requirement: ">= -1e-10",
                value: min_eig,
            });
        }
        Ok(())
    }

    /// Largest elementwise distance to another state of the same truncation.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Hermitian operator on the truncated two-mode space.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianObservable {
    space: FockSpace,
    entries: CMatrix,
}

impl HermitianObservable {
    pub fn new(n_max: usize, entries: CMatrix) -> Result<Self> {
        let space = FockSpace::new(n_max)?;
        if entries.nrows() != space.dim() || entries.ncols() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                actual: entries.nrows(),
            });
        }
        let dev = max_hermitian_deviation(&entries);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { space, entries })
    }

    pub fn identity(n_max: usize) -> Result<Self> {
        let space = FockSpace::new(n_max)?;
        Self::new(n_max, CMatrix::identity(space.dim(), space.dim()))
    }

    pub fn n_max(&self) -> usize {
        self.space.n_max
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn square(&self) -> Self {
        Self {
            space: self.space,
            entries: &self.entries * &self.entries,
        }
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.entries.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Matrix of the creation operator `a_mode^dagger` (identity on the other
/// mode). `<n+1| a^dagger |n> = sqrt(n+1)`; the `n_max` row is cut off.
pub fn creation_op(mode: Mode, n_max: usize) -> Result<CMatrix> {
    let space = FockSpace::new(n_max)?;
    let mut m = CMatrix::zeros(space.dim(), space.dim());
    for label in space.labels() {
        let n = label.count(mode);
        if n == n_max {
            continue;
        }
        let raised = match mode {
            Mode::One => FockLabel::new(n + 1, label.n2),
            Mode::Two => FockLabel::new(label.n1, n + 1),
        };
        m[(space.index(raised), space.index(label))] = C64::new(((n + 1) as f64).sqrt(), 0.0);
    }
    Ok(m)
}

pub fn annihilation_op(mode: Mode, n_max: usize) -> Result<CMatrix> {
    Ok(creation_op(mode, n_max)?.adjoint())
}

fn check_photons(n: u32, n_max: usize) -> Result<()> {
    if n < 1 || n as usize > n_max {
        return Err(Error::InvalidPhotonNumber {
            n,
            requirement: "1 <= N <= n_max",
        });
    }
    Ok(())
}

/// `(|N0> + |0N>) / sqrt(2)` as a pure density matrix.
pub fn noon_state(n: u32, n_max: usize) -> Result<TwoModeDensityMatrix> {
    let space = FockSpace::new(n_max)?;
    check_photons(n, n_max)?;
    let n = n as usize;
    let amp = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let psi = (space.ket(FockLabel::new(n, 0))? + space.ket(FockLabel::new(0, n))?) * amp;
    TwoModeDensityMatrix::pure(n_max, &psi)
}

/// One dual-rail photon `(|10> + |01>) / sqrt(2)`; the separable N-photon
/// state is N independent copies of it.
pub fn separable_photon_state(n_max: usize) -> Result<TwoModeDensityMatrix> {
    noon_state(1, n_max).map_err(|_| Error::InvalidTruncation(n_max))
}

/// Applies `a2 -> exp(-i phi) a2`, i.e. `|n1, n2> -> exp(i n2 phi) |n1, n2>`.
pub fn phase_shift(rho: &TwoModeDensityMatrix, phi: f64) -> Result<TwoModeDensityMatrix> {
    if !phi.is_finite() {
        return Err(Error::InvalidParameter {
            name: "phi",
            requirement: "finite",
            value: phi,
        });
    }
    let space = rho.space;
    let phases: Vec<C64> = space
        .labels()
        .map(|l| C64::from_polar(1.0, l.n2 as f64 * phi))
        .collect();
    let mut entries = rho.entries.clone();
    for j in 0..space.dim() {
        for i in 0..space.dim() {
            entries[(i, j)] *= phases[i] * phases[j].conj();
        }
    }
    Ok(TwoModeDensityMatrix { space, entries })
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `<n-k| E_k |n>` for the loss channel of transmittance `alpha`.
fn loss_amplitude(alpha: f64, n: usize, k: usize) -> f64 {
    (binomial(n, k) * alpha.powi((n - k) as i32) * (1.0 - alpha).powi(k as i32)).sqrt()
}

/// Kraus operators `E_0 .. E_{n_max}` of the loss channel on `mode`, as
/// full two-mode matrices.
pub fn loss_kraus_operators(alpha: f64, mode: Mode, n_max: usize) -> Result<Vec<CMatrix>> {
    check_transmittance(alpha)?;
    let space = FockSpace::new(n_max)?;
    let ops = (0..=n_max)
        .map(|k| {
            let mut e = CMatrix::zeros(space.dim(), space.dim());
            for label in space.labels() {
                let n = label.count(mode);
                if n < k {
                    continue;
                }
                let lowered = match mode {
                    Mode::One => FockLabel::new(n - k, label.n2),
                    Mode::Two => FockLabel::new(label.n1, n - k),
                };
                e[(space.index(lowered), space.index(label))] =
                    C64::new(loss_amplitude(alpha, n, k), 0.0);
            }
            e
        })
        .collect();
    Ok(ops)
}

/// `rho -> sum_k E_k rho E_k^dagger` on one mode.
///
/// Each `E_k` lowers the photon number of `mode` by exactly `k`, so the sum
/// is evaluated entry by entry instead of with dense products.
pub fn loss_channel(rho: &TwoModeDensityMatrix, alpha: f64, mode: Mode) -> Result<TwoModeDensityMatrix> {
    check_transmittance(alpha)?;
    let space = rho.space;
    let n_max = space.n_max;
    let dim = space.dim();
    if alpha == 1.0 {
        return Ok(rho.clone());
    }
    let amp: Vec<Vec<f64>> = (0..=n_max)
        .map(|n| (0..=n).map(|k| loss_amplitude(alpha, n, k)).collect())
        .collect();
    let lower = |label: FockLabel, k: usize| match mode {
        Mode::One => FockLabel::new(label.n1 - k, label.n2),
        Mode::Two => FockLabel::new(label.n1, label.n2 - k),
    };
    let mut out = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        let col = space.label(j);
        let nc = col.count(mode);
        for i in 0..dim {
            let value = rho.entries[(i, j)];
            if value == ZERO {
                continue;
            }
            let row = space.label(i);
            let nr = row.count(mode);
            for (k, (a, b)) in amp[nr].iter().zip(&amp[nc]).enumerate() {
                let w = a * b;
                let (ri, ci) = (space.index(lower(row, k)), space.index(lower(col, k)));
                out[(ri, ci)] += value * w;
            }
        }
    }
    Ok(TwoModeDensityMatrix { space, entries: out })
}

/// `Tr(rho A)`; an imaginary part above [`IMAG_TOL`] is an error.
pub fn expectation(rho: &TwoModeDensityMatrix, a: &HermitianObservable) -> Result<f64> {
    if rho.n_max() != a.n_max() {
        return Err(Error::DimensionMismatch {
            expected: rho.n_max(),
            actual: a.n_max(),
        });
    }
    let dim = rho.space.dim();
    let mut acc = ZERO;
    for i in 0..dim {
        for k in 0..dim {
            acc += rho.entries[(i, k)] * a.entries[(k, i)];
        }
    }
    if acc.im.abs() > IMAG_TOL {
        return Err(Error::ImaginaryResidue(acc.im));
    }
    Ok(acc.re)
}

/// `A_D = |N0><0N| + |0N><N0|`.
pub fn observable_ad(n: u32, n_max: usize) -> Result<HermitianObservable> {
    let space = FockSpace::new(n_max)?;
    check_photons(n, n_max)?;
    let n = n as usize;
    let (a, b) = (
        space.index(FockLabel::new(n, 0)),
        space.index(FockLabel::new(0, n)),
    );
    let mut m = CMatrix::zeros(space.dim(), space.dim());
    m[(a, b)] = ONE;
    m[(b, a)] = ONE;
    HermitianObservable::new(n_max, m)
}

/// Mean and variance of an observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

impl Moments {
    pub fn second_moment(&self) -> f64 {
        self.variance + self.mean * self.mean
    }
}

/// Input state after both arms' loss, the phase shift and the dispersion
/// offset, all acting on `n` photons.
pub fn propagated_noon_state(n: u32, ch: &ChannelPair, phi: f64) -> Result<TwoModeDensityMatrix> {
    let rho = noon_state(n, n as usize)?;
    let rho = loss_channel(&rho, ch.alpha1(), Mode::One)?;
    let rho = loss_channel(&rho, ch.alpha2(), Mode::Two)?;
    let rho = phase_shift(&rho, phi)?;
    phase_shift(&rho, -ch.phi0())
}

fn observable_moments(rho: &TwoModeDensityMatrix, a: &HermitianObservable) -> Result<Moments> {
    let mean = expectation(rho, a)?;
    let second = expectation(rho, &a.square())?;
    Ok(Moments {
        mean,
        variance: second - mean * mean,
    })
}

/// `A_D` statistics of the attenuated, phase-shifted N00N state, computed by
/// density-matrix simulation.
pub fn oracle_noon_stats(n: u32, ch: &ChannelPair, phi: f64) -> Result<Moments> {
    let rho = propagated_noon_state(n, ch, phi)?;
    observable_moments(&rho, &observable_ad(n, n as usize)?)
}

/// `A_R` statistics of `n` independent attenuated dual-rail photons: `n`
/// times the single-photon mean and variance.
pub fn oracle_separable_stats(n: u32, ch: &ChannelPair, phi: f64) -> Result<Moments> {
    if n < 1 {
        return Err(Error::InvalidPhotonNumber {
            n,
            requirement: "N >= 1",
        });
    }
    let single = observable_moments(&propagated_noon_state(1, ch, phi)?, &observable_ad(1, 1)?)?;
    Ok(Moments {
        mean: n as f64 * single.mean,
        variance: n as f64 * single.variance,
    })
}

/// Probabilities of the `+1`, `-1` and `0` outcomes of `A_D`, obtained by
/// projecting the simulated state onto the eigenspaces
/// `(|N0> +- |0N>)/sqrt(2)`; the `0` outcome is the remainder of the trace.
/// For the separable method these are the per-photon probabilities.
pub fn oracle_outcome_probabilities(
    method: Method,
    n: u32,
    ch: &ChannelPair,
    phi: f64,
) -> Result<(f64, f64, f64)> {
    let photons = match method {
        Method::Noon => n,
        Method::Separable => 1,
    };
    let rho = propagated_noon_state(photons, ch, phi)?;
    let p = photons as usize;
    let hi = FockLabel::new(p, 0);
    let lo = FockLabel::new(0, p);
    let diag = rho.population(hi) + rho.population(lo);
    let coherence = rho.entry(hi, lo).re;
    let plus = 0.5 * diag + coherence;
    let minus = 0.5 * diag - coherence;
    Ok((plus, minus, rho.trace().re - plus - minus))
}
