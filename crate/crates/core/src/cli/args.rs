use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::exactla::DEFAULT_PRIME;
use crate::kerbundle::{DEFAULT_RETRY_BUDGET, DEFAULT_TRIALS};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "fanokit",
    version,
    about = "Exact GF(p) checks for kernel bundles on Fano blow-ups of P^n"
)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// prime characteristic
    #[arg(long, global = true, env = "FANOKIT_PRIME", default_value_t = DEFAULT_PRIME)]
    pub prime: u32,
    /// master seed; every random choice is derived from it
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// point configuration (JSON) instead of sampled points
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// also write cohomology tables as CSV
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Cohomology table of a divisor class on the blow-up
    Cohom(CohomArgs),
    /// Construct a bundle and run the ACM / Ulrich / simplicity checks
    Verify(VerifyArgs),
    /// Degree checks for general points on a strong del Pezzo surface
    Serre(SerreArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CohomArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// number of blown-up points; defaults to the length of the divisor
    #[arg(long)]
    pub s: Option<usize>,
    /// divisor "a;b1,b2,..." meaning a e_0 - sum b_i e_i
    #[arg(long = "D", short = 'D', allow_hyphen_values = true)]
    pub divisor: String,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub s: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 0)]
    pub c: usize,
    /// twists "lo..hi"
    #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
    pub window: Window,
    /// matrices tried before giving up
    #[arg(long, default_value_t = DEFAULT_RETRY_BUDGET)]
    pub budget: usize,
    /// random points in the pointwise rank certificate
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    /// negative control: zero this column of the constructed matrix (repeatable)
    #[arg(long = "zero-column")]
    pub zero_columns: Vec<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct SerreArgs {
    /// degree of the del Pezzo surface
    #[arg(long)]
    pub d: i64,
    #[arg(long)]
    pub r: i64,
    /// also compute Betti numbers by Koszul homology (small cases only)
    #[arg(long)]
    pub koszul: bool,
}

/// Inclusive range of twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "window {text:?}: expected \"lo..hi\" with lo <= hi"
            ))
        };
        let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(Self { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!("-4..4".parse::<Window>().unwrap(), Window { lo: -4, hi: 4 });
        assert_eq!("0..=2".parse::<Window>().unwrap(), Window { lo: 0, hi: 2 });
        assert!("3..1".parse::<Window>().is_err());
        assert!("3".parse::<Window>().is_err());
    }

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from([
            "fanokit", "verify", "--n", "2", "--s", "6", "--r", "2", "--window", "-4..4",
        ])
        .unwrap();
        match cli.command {
            Command::Verify(v) => {
                assert_eq!((v.s, v.r, v.window), (6, 2, Window { lo: -4, hi: 4 }))
            }
            _ => panic!(),
        }
        let cli = Cli::try_parse_from(["fanokit", "cohom", "--D", "-1;0"]).unwrap();
        assert!(
            matches!(cli.command, Command::Cohom(CohomArgs { ref divisor, .. }) if divisor == "-1;0")
        );
        assert!(Cli::try_parse_from(["fanokit", "serre", "--d", "3"]).is_err());
    }
}
