use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dispersion_core::sk::ChannelTag;

use crate::error::CliError;

/// Orders beyond this print a runtime warning.
pub const WARN_ORDER: u32 = 14;

#[derive(Debug, Parser)]
#[command(name = "dispersion", version, about = "Exact dispersion constants, densities and baselines")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Energy and normalization constants per truncation order.
    Tables,
    /// Density grids per truncation order.
    Densities,
    /// Stationary-functional constants and the power-ansatz table.
    Dft,
    /// Power-ansatz optimum and its density against the exact one.
    Ansatz,
    /// Zeroth-order correlation baseline.
    R0,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Tables => "tables",
            Command::Densities => "densities",
            Command::Dft => "dft",
            Command::Ansatz => "ansatz",
            Command::R0 => "r0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// A, B, C or all.
    #[arg(long, global = true, default_value = "all")]
    pub channel: String,

    /// Inclusive range `a..b` or a comma list.
    #[arg(long, global = true, default_value = "1..10")]
    pub orders: String,

    /// Decimal places in rendered values (1-50).
    #[arg(long, global = true, default_value_t = 9)]
    pub digits: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,

    /// Largest accepted truncation order.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_order: u32,
}

/// Validated run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub channels: Vec<ChannelTag>,
    pub orders: Vec<u32>,
    pub digits: usize,
    pub format: Format,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let o = &cli.options;
        if !(1..=50).contains(&o.digits) {
            return Err(CliError::Config(format!("--digits must be in 1..=50, got {}", o.digits)));
        }
        if o.max_order == 0 {
            return Err(CliError::Config("--max-order must be at least 1".into()));
        }
        let orders = parse_orders(&o.orders)?;
        if let Some(&bad) = orders.iter().find(|&&k| k > o.max_order) {
            return Err(CliError::Config(format!("order {bad} exceeds --max-order {}", o.max_order)));
        }
        Ok(Self {
            command: cli.command,
            channels: parse_channels(&o.channel)?,
            orders,
            digits: o.digits,
            format: o.format,
            out: o.out.clone(),
        })
    }

    pub fn max_order(&self) -> u32 {
        self.orders.iter().copied().max().unwrap_or(1)
    }
}

pub fn parse_channels(s: &str) -> Result<Vec<ChannelTag>, CliError> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(ChannelTag::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let tag: ChannelTag = part.parse().map_err(|_| CliError::Config(format!("unknown channel {part:?}")))?;
        if !out.contains(&tag) {
            out.push(tag);
        }
    }
    out.sort();
    Ok(out)
}

/// `a..b` (inclusive, also `a..=b`), a single order, or a comma list.
/// The result is sorted, deduplicated and nonempty.
pub fn parse_orders(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Config(format!("cannot parse --orders {s:?}"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let mut orders: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (num(a)?, num(b)?);
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    orders.sort_unstable();
    orders.dedup();
    if orders.is_empty() {
        return Err(CliError::Config(format!("--orders {s:?} is empty")));
    }
    if orders[0] == 0 {
        return Err(CliError::Config("orders start at 1".into()));
    }
    Ok(orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_ranges() {
        assert_eq!(parse_orders("1..10").unwrap(), (1..=10).collect::<Vec<_>>());
        assert_eq!(parse_orders("5..=7").unwrap(), vec![5, 6, 7]);
        assert_eq!(parse_orders("6,1,3,3").unwrap(), vec![1, 3, 6]);
        assert_eq!(parse_orders("4").unwrap(), vec![4]);
        assert!(parse_orders("5..3").is_err());
        assert!(parse_orders("0..2").is_err());
        assert!(parse_orders("x").is_err());
    }

    #[test]
    fn channels() {
        assert_eq!(parse_channels("all").unwrap(), ChannelTag::ALL.to_vec());
        assert_eq!(parse_channels("C,a").unwrap(), vec![ChannelTag::A, ChannelTag::C]);
        assert!(parse_channels("D").is_err());
    }

    #[test]
    fn validation() {
        let cli = Cli::parse_from(["dispersion", "tables", "--digits", "0"]);
        assert!(matches!(RunConfig::from_cli(&cli), Err(CliError::Config(_))));
        let cli = Cli::parse_from(["dispersion", "tables", "--orders", "1..12"]);
        assert!(RunConfig::from_cli(&cli).is_err());
        let cli = Cli::parse_from(["dispersion", "tables", "--orders", "1..12", "--max-order", "12"]);
        assert_eq!(RunConfig::from_cli(&cli).unwrap().max_order(), 12);
    }
}
