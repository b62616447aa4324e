//! Transmittance frontier on which the N00N method and the separable method
//! reach the same minimum phase error.

use rayon::prelude::*;

use crate::analytic::{check_transmittance, noon_min_phase_error, separable_min_phase_error, ChannelPair};
use crate::error::{Error, Result};

/// Lower end of the `alpha2` bracket. Both minima diverge at zero.
pub const ALPHA2_FLOOR: f64 = 1e-6;
pub const BISECTION_TOL: f64 = 1e-12;
pub const BISECTION_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreakEvenPoint {
    pub n_photons: u32,
    pub alpha1: f64,
    /// `None` when the N00N method is worse for every `alpha2` in the bracket.
    pub alpha2_star: Option<f64>,
    /// Gap at the root, or the smallest gap seen when there is no root.
    pub gap_at_root: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BreakEvenCurve {
    pub n_photons: u32,
    pub points: Vec<BreakEvenPoint>,
}

impl BreakEvenCurve {
    pub fn solutions(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points
            .iter()
            .filter_map(|p| p.alpha2_star.map(|a2| (p.alpha1, a2)))
    }
}

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidPhotonNumber {
            n,
            requirement: "N >= 2 for a break-even comparison",
        });
    }
    Ok(())
}

/// N00N minimum minus separable minimum; positive when N00N is worse.
pub fn min_error_gap(n: u32, alpha1: f64, alpha2: f64) -> Result<f64> {
    check_n(n)?;
    let ch = ChannelPair::new(alpha1, alpha2, 0.0)?;
    Ok(noon_min_phase_error(n, &ch).value - separable_min_phase_error(n, &ch).value)
}

/// Bisects the gap in `alpha2` over `[ALPHA2_FLOOR, 1]`.
pub fn breakeven_alpha2(n: u32, alpha1: f64) -> Result<BreakEvenPoint> {
    check_n(n)?;
    check_transmittance(alpha1)?;
    let gap = |a2: f64| min_error_gap(n, alpha1, a2);

    let gap_hi = gap(1.0)?;
    if gap_hi > 0.0 {
        return Ok(BreakEvenPoint {
            n_photons: n,
            alpha1,
            alpha2_star: None,
            gap_at_root: gap_hi.min(gap(ALPHA2_FLOOR)?),
        });
    }
    if gap_hi == 0.0 {
        return Ok(BreakEvenPoint {
            n_photons: n,
            alpha1,
            alpha2_star: Some(1.0),
            gap_at_root: 0.0,
        });
    }
    let gap_lo = gap(ALPHA2_FLOOR)?;
    if gap_lo <= 0.0 {
        return Err(Error::NoBracket {
            alpha2: ALPHA2_FLOOR,
            gap: gap_lo,
        });
    }

    let (mut lo, mut hi) = (ALPHA2_FLOOR, 1.0_f64);
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let g = gap(mid)?;
        if g == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if g > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    Ok(BreakEvenPoint {
        n_photons: n,
        alpha1,
        alpha2_star: Some(root),
        gap_at_root: gap(root)?,
    })
}

/// Break-even `alpha2` for a lossless short arm from the polynomial
/// `x^N - N x + (1 - N) = 0`, `x = 1 / alpha2`, solved by Newton iteration.
pub fn breakeven_polynomial_root(n: u32) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    let f = |x: f64| x.powi(n as i32) - nf * x + (1.0 - nf);
    let df = |x: f64| nf * x.powi(n as i32 - 1) - nf;

    // f(1) < 0 and f is convex for x > 1; start to the right of the root
    // so the iterates decrease monotonically onto it.
    let mut x = 2.0;
    while f(x) <= 0.0 {
        x *= 2.0;
    }
    for _ in 0..100 {
        let step = f(x) / df(x);
        x -= step;
        if step.abs() <= 1e-16 * x {
            break;
        }
    }
    Ok(1.0 / x)
}

/// Break-even point for every `alpha1` in a strictly increasing grid.
pub fn breakeven_curve(n: u32, alpha1_grid: &[f64]) -> Result<BreakEvenCurve> {
    check_n(n)?;
    for &a in alpha1_grid {
        check_transmittance(a)?;
    }
    if alpha1_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter {
            name: "alpha1 grid",
            requirement: "strictly increasing",
            value: f64::NAN,
        });
    }
    let points = alpha1_grid
        .par_iter()
        .map(|&a1| breakeven_alpha2(n, a1))
        .collect::<Result<Vec<_>>>()?;
    Ok(BreakEvenCurve { n_photons: n, points })
}
