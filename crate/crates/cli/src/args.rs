use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use teleport_core::{BellOutcome, ChannelSignConvention};

#[derive(Debug, Parser)]
#[command(name = "teleport", version, about = "Controlled bidirectional teleportation and remote state preparation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the protocol once and write its transcript.
    Run(RunArgs),
    /// Report every branch with oracle-derived corrections.
    Enumerate(InputArgs),
    /// Check the correction table, the showcase branch and the derived table.
    Verify(VerifyArgs),
    /// Qubit efficiency for `n` pairs.
    Efficiency(EfficiencyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Product,
    General,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Qubits per party. Defaults to the input files, else 1.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "FILE")]
    pub alice: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub bob: Option<PathBuf>,
    #[arg(long, default_value_t = ChannelSignConvention::Singlet)]
    pub convention: ChannelSignConvention,
    /// Shape of a generated Bob state.
    #[arg(long, value_enum, default_value_t = ModeArg::Product)]
    pub mode: ModeArg,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    pub force_bell: Option<Vec<BellOutcome>>,
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    pub force_amp: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    pub force_phase: Option<Vec<usize>>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub force_charlie: Option<u8>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Append an efficiency report for this many pairs.
    #[arg(long, value_name = "N")]
    pub efficiency: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EfficiencyArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Transcript from `run` whose message bits are audited.
    #[arg(long, value_name = "FILE")]
    pub transcript: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}
