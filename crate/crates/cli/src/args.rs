use std::f64::consts::PI;

use clap::{Args, Parser, Subcommand, ValueEnum};
use noon_core::analytic::{ArmRole, ChannelPair, Method, PhysicalArm};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "noonphase",
    version,
    about = "Phase error of attenuated N00N states versus separable photons"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Phase error versus phase for one channel, one column per N.
    PhaseError(PhaseErrorArgs),
    /// Phase error versus phase for several channels at fixed N, with the 1/N line.
    LimitSweep(LimitSweepArgs),
    /// Minimum phase error of both methods versus the long-arm transmittance.
    CompareMin(CompareMinArgs),
    /// Break-even long-arm transmittance versus short-arm transmittance.
    Breakeven(BreakevenArgs),
    /// Cross-check closed forms against the density-matrix simulator.
    Validate(ValidateArgs),
    /// Shot-level simulation of the phase estimate spread.
    Montecarlo(MontecarloArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Noon,
    Separable,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Noon => Method::Noon,
            MethodArg::Separable => Method::Separable,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file, `-` for standard output.
    #[arg(short = 'o', long, default_value = "-")]
    pub output: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
}

impl GridArgs {
    pub fn resolve(&self, start: f64, stop: f64, count: usize) -> Result<Vec<f64>, CliError> {
        linspace(
            self.start.unwrap_or(start),
            self.stop.unwrap_or(stop),
            self.count.unwrap_or(count),
        )
    }
}

pub fn linspace(start: f64, stop: f64, count: usize) -> Result<Vec<f64>, CliError> {
    if count < 2 {
        return Err(CliError::Usage(format!("grid count must be at least 2, got {count}")));
    }
    if !(start.is_finite() && stop.is_finite()) {
        return Err(CliError::Usage("grid bounds must be finite".into()));
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i == count - 1 { stop } else { start + step * i as f64 })
        .collect())
}

/// Channel given either as transmittances or as physical arm parameters.
#[derive(Debug, Clone, Default, Args)]
pub struct ChannelArgs {
    /// Short-arm transmittance.
    #[arg(long)]
    pub alpha1: Option<f64>,
    /// Long-arm transmittance.
    #[arg(long)]
    pub alpha2: Option<f64>,
    /// Dispersion shift in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub phi0: Option<f64>,
    #[arg(long)]
    pub eta1: Option<f64>,
    #[arg(long)]
    pub k1: Option<f64>,
    #[arg(long)]
    pub l1: Option<f64>,
    #[arg(long)]
    pub eta2: Option<f64>,
    #[arg(long)]
    pub k2: Option<f64>,
    #[arg(long)]
    pub l2: Option<f64>,
    #[arg(long)]
    pub omega_over_c: Option<f64>,
}

impl ChannelArgs {
    fn physical(&self) -> bool {
        [self.eta1, self.k1, self.l1, self.eta2, self.k2, self.l2, self.omega_over_c]
            .iter()
            .any(Option::is_some)
    }

    pub fn resolve(&self, alpha1: f64, alpha2: f64) -> Result<ChannelPair, CliError> {
        if self.physical() {
            if self.alpha1.is_some() || self.alpha2.is_some() || self.phi0.is_some() {
                return Err(CliError::Usage(
                    "give either --alpha1/--alpha2/--phi0 or the physical arm flags, not both".into(),
                ));
            }
            let arm1 = PhysicalArm::new(
                self.eta1.unwrap_or(1.0),
                self.k1.unwrap_or(0.0),
                self.l1.unwrap_or(0.0),
                ArmRole::Short,
            )?;
            let arm2 = PhysicalArm::new(
                self.eta2.unwrap_or(1.0),
                self.k2.unwrap_or(0.0),
                self.l2.unwrap_or(0.0),
                ArmRole::Long,
            )?;
            return Ok(ChannelPair::from_arms(&arm1, &arm2, self.omega_over_c.unwrap_or(1.0))?);
        }
        Ok(ChannelPair::new(
            self.alpha1.unwrap_or(alpha1),
            self.alpha2.unwrap_or(alpha2),
            self.phi0.unwrap_or(0.0),
        )?)
    }

    pub fn phi0(&self) -> Result<f64, CliError> {
        if self.physical() {
            return Err(CliError::Usage("this command only takes --phi0".into()));
        }
        Ok(self.phi0.unwrap_or(0.0))
    }
}

fn parse_channel(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected ALPHA1:ALPHA2, got `{s}`"))?;
    let a = a.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let b = b.trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

#[derive(Debug, Clone, Args)]
pub struct PhaseErrorArgs {
    /// Photon numbers, one column each.
    #[arg(short = 'n', long = "n", value_delimiter = ',', default_values_t = [2u32, 4])]
    pub n: Vec<u32>,
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl PhaseErrorArgs {
    pub const ALPHA1: f64 = 0.6;
    pub const ALPHA2: f64 = 0.1;
    pub const GRID: (f64, f64, usize) = (0.0, PI, 1000);
}

#[derive(Debug, Clone, Args)]
pub struct LimitSweepArgs {
    #[arg(short = 'n', long = "n", default_value_t = 2)]
    pub n: u32,
    /// Channels as ALPHA1:ALPHA2 pairs.
    #[arg(
        long,
        value_delimiter = ',',
        value_parser = parse_channel,
        default_value = "0.6:0.1,0.8:0.6,0.999999:0.99"
    )]
    pub channels: Vec<(f64, f64)>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi0: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl LimitSweepArgs {
    pub const GRID: (f64, f64, usize) = (0.0, PI, 1000);
}

#[derive(Debug, Clone, Args)]
pub struct CompareMinArgs {
    #[arg(short = 'n', long = "n", default_value_t = 2)]
    pub n: u32,
    /// Short-arm transmittances, one noon/sep column pair each.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0f64, 0.6, 0.3])]
    pub short_arm: Vec<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl CompareMinArgs {
    pub const GRID: (f64, f64, usize) = (0.01, 1.0, 991);
}

#[derive(Debug, Clone, Args)]
pub struct BreakevenArgs {
    #[arg(short = 'n', long = "n", value_delimiter = ',', default_values_t = [2u32, 4, 10])]
    pub n: Vec<u32>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl BreakevenArgs {
    pub const GRID: (f64, f64, usize) = (0.005, 1.0, 200);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Feed alpha^2 wherever the closed forms expect alpha.
    AlphaSquared,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Also run the shot-level error-propagation checks.
    #[arg(long)]
    pub empirical: bool,
    #[arg(long, default_value_t = crate::validate::DEFAULT_SEED)]
    pub seed: u64,
    /// Deliberately corrupt the closed forms to exercise the report.
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Clone, Args)]
pub struct MontecarloArgs {
    #[arg(short = 'n', long = "n", value_delimiter = ',', default_values_t = [2u32, 4])]
    pub n: Vec<u32>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Noon, MethodArg::Separable])]
    pub method: Vec<MethodArg>,
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 2000)]
    pub trials: usize,
    #[arg(long, default_value_t = crate::validate::DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl MontecarloArgs {
    pub const ALPHA1: f64 = 0.6;
    pub const ALPHA2: f64 = 0.1;
}
