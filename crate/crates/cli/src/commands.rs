//! Table builders behind each subcommand.

use noon_core::analytic::{self, ChannelPair, Method};
use noon_core::breakeven;
use noon_core::montecarlo;

use crate::args::{
    BreakevenArgs, CompareMinArgs, LimitSweepArgs, MontecarloArgs, PhaseErrorArgs,
};
use crate::error::CliError;
use crate::table::{fmt_g12, Cell, Table};

/// `1.0`, `0.6`, `0.999999`: always with a decimal point.
fn label(v: f64) -> String {
    format!("{v:?}")
}

fn check_photons(ns: &[u32], min: u32) -> Result<(), CliError> {
    if ns.is_empty() {
        return Err(CliError::Usage("at least one photon number is required".into()));
    }
    match ns.iter().find(|&&n| n < min) {
        Some(n) => Err(CliError::Usage(format!("photon number must be >= {min}, got {n}"))),
        None => Ok(()),
    }
}

fn channel_comment(ch: &ChannelPair) -> String {
    format!(
        "alpha1={} alpha2={} phi0={}",
        fmt_g12(ch.alpha1()),
        fmt_g12(ch.alpha2()),
        fmt_g12(ch.phi0())
    )
}

/// `phi, delta_phi_N{n}...` for one channel.
pub fn phase_error(ns: &[u32], ch: &ChannelPair, phis: &[f64]) -> Result<Table, CliError> {
    check_photons(ns, 1)?;
    let mut header = vec!["phi".to_string()];
    header.extend(ns.iter().map(|n| format!("delta_phi_N{n}")));
    let mut t = Table::new(header);
    t.comment("N00N-state phase error delta_phi(phi), radians; inf where the responsivity vanishes");
    t.comment(channel_comment(ch));
    for &phi in phis {
        let mut row = vec![Cell::from(phi)];
        row.extend(ns.iter().map(|&n| Cell::from(analytic::noon_phase_error(n, ch, phi).value)));
        t.push(row);
    }
    Ok(t)
}

pub fn phase_error_from(args: &PhaseErrorArgs) -> Result<Table, CliError> {
    let ch = args
        .channel
        .resolve(PhaseErrorArgs::ALPHA1, PhaseErrorArgs::ALPHA2)?;
    let (a, b, c) = PhaseErrorArgs::GRID;
    phase_error(&args.n, &ch, &args.grid.resolve(a, b, c)?)
}

/// One N00N phase-error column per channel plus the constant `1/N` line.
pub fn limit_sweep(n: u32, channels: &[(f64, f64)], phi0: f64, phis: &[f64]) -> Result<Table, CliError> {
    check_photons(&[n], 1)?;
    if channels.is_empty() {
        return Err(CliError::Usage("at least one channel is required".into()));
    }
    let chs = channels
        .iter()
        .map(|&(a1, a2)| ChannelPair::new(a1, a2, phi0))
        .collect::<Result<Vec<_>, _>>()?;
    let mut header = vec!["phi".to_string()];
    header.extend(
        channels
            .iter()
            .map(|&(a1, a2)| format!("delta_phi_a1_{}_a2_{}", label(a1), label(a2))),
    );
    header.push("heisenberg".into());
    let mut t = Table::new(header);
    t.comment(format!(
        "N00N-state phase error versus phi (abscissa) for N={n}, one column per (alpha1, alpha2) channel"
    ));
    t.comment(format!("phi0={}; heisenberg column is 1/N", fmt_g12(phi0)));
    let limit = analytic::heisenberg_limit(n);
    for &phi in phis {
        let mut row = vec![Cell::from(phi)];
        row.extend(chs.iter().map(|ch| Cell::from(analytic::noon_phase_error(n, ch, phi).value)));
        row.push(Cell::from(limit));
        t.push(row);
    }
    Ok(t)
}

pub fn limit_sweep_from(args: &LimitSweepArgs) -> Result<Table, CliError> {
    let (a, b, c) = LimitSweepArgs::GRID;
    limit_sweep(
        args.n,
        &args.channels,
        args.phi0.unwrap_or(0.0),
        &args.grid.resolve(a, b, c)?,
    )
}

/// Minimum phase error of both methods against the long-arm transmittance.
pub fn compare_min(n: u32, short_arm: &[f64], alpha2s: &[f64]) -> Result<Table, CliError> {
    check_photons(&[n], 1)?;
    if short_arm.is_empty() {
        return Err(CliError::Usage("at least one short-arm transmittance is required".into()));
    }
    let mut header = vec!["alpha2".to_string()];
    for &a1 in short_arm {
        header.push(format!("noon_a1_{}", label(a1)));
        header.push(format!("sep_a1_{}", label(a1)));
    }
    let mut t = Table::new(header);
    t.comment(format!(
        "minimum phase error (radians) of the N00N and separable methods for N={n} versus long-arm transmittance"
    ));
    for &a2 in alpha2s {
        let mut row = vec![Cell::from(a2)];
        for &a1 in short_arm {
            let ch = ChannelPair::new(a1, a2, 0.0)?;
            row.push(analytic::noon_min_phase_error(n, &ch).value.into());
            row.push(analytic::separable_min_phase_error(n, &ch).value.into());
        }
        t.push(row);
    }
    Ok(t)
}

pub fn compare_min_from(args: &CompareMinArgs) -> Result<Table, CliError> {
    let (a, b, c) = CompareMinArgs::GRID;
    compare_min(args.n, &args.short_arm, &args.grid.resolve(a, b, c)?)
}

/// `alpha1, alpha2_star_N{n}...`; empty cells where no break-even exists.
pub fn breakeven_table(ns: &[u32], alpha1s: &[f64]) -> Result<Table, CliError> {
    check_photons(ns, 2)?;
    let curves = ns
        .iter()
        .map(|&n| breakeven::breakeven_curve(n, alpha1s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut header = vec!["alpha1".to_string()];
    header.extend(ns.iter().map(|n| format!("alpha2_star_N{n}")));
    let mut t = Table::new(header);
    t.comment("long-arm transmittance at which the N00N and separable minimum phase errors coincide");
    t.comment("N00N is better above and to the right of each curve; empty cell = N00N always worse");
    for (i, &a1) in alpha1s.iter().enumerate() {
        let mut row = vec![Cell::from(a1)];
        row.extend(curves.iter().map(|c| Cell::from(c.points[i].alpha2_star)));
        t.push(row);
    }
    Ok(t)
}

pub fn breakeven_from(args: &BreakevenArgs) -> Result<Table, CliError> {
    let (a, b, c) = BreakevenArgs::GRID;
    breakeven_table(&args.n, &args.grid.resolve(a, b, c)?)
}

/// One row per (method, N) at the operating point of the given channel.
pub fn montecarlo_table(
    ns: &[u32],
    methods: &[Method],
    ch: &ChannelPair,
    shots: u64,
    trials: usize,
    seed: u64,
) -> Result<Table, CliError> {
    check_photons(ns, 1)?;
    if shots < 1 || trials < 2 {
        return Err(CliError::Usage("need --shots >= 1 and --trials >= 2".into()));
    }
    let header = [
        "method", "n", "phi_true", "shots", "trials", "empirical_sd", "predicted", "ratio", "bias",
    ];
    let mut t = Table::new(header.iter().map(|s| s.to_string()).collect());
    t.comment(format!("prng: {}", montecarlo::PRNG_DESCRIPTION));
    t.comment(format!("seed={seed}; {}", channel_comment(ch)));
    t.comment("phi_true is the operating point; predicted = delta_phi(phi_true) / sqrt(shots)");
    for &method in methods {
        for &n in ns {
            let phi = montecarlo::operating_point(method, n, ch);
            let r = montecarlo::empirical_phase_error(method, n, ch, phi, shots, trials, seed)?;
            t.push(vec![
                Cell::Text(method.to_string()),
                Cell::Integer(n as u64),
                phi.into(),
                Cell::Integer(shots),
                Cell::Integer(trials as u64),
                r.empirical_sd.into(),
                r.predicted.into(),
                r.ratio().into(),
                r.bias.into(),
            ]);
        }
    }
    Ok(t)
}

pub fn montecarlo_from(args: &MontecarloArgs) -> Result<Table, CliError> {
    let ch = args
        .channel
        .resolve(MontecarloArgs::ALPHA1, MontecarloArgs::ALPHA2)?;
    let methods: Vec<Method> = args.method.iter().map(|&m| m.into()).collect();
    montecarlo_table(&args.n, &methods, &ch, args.shots, args.trials, args.seed)
}
