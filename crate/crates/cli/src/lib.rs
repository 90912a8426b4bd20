//! Command-line driver: loads groups, runs checks, prints reports.
//!
//! Exit codes: 0 when every verdict is pass or vacuous, 1 when some verdict
//! is fail, 2 on usage or input errors.

mod commands;
mod target;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pgroup_core::corpus::emit_report;
use pgroup_core::pc::DEFAULT_MAX_ORDER;
use pgroup_core::{Report, ReportFormat};

pub use commands::execute;
pub use target::{load_targets, Target};

#[derive(Parser, Debug)]
#[command(
    name = "pgaudit",
    version,
    about = "Commutator-witness audits for finite p-groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub run: RunFlags,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunFlags {
    /// Report format.
    #[arg(long, global = true, default_value = "human", value_parser = parse_format)]
    pub format: ReportFormat,

    /// Largest group order any enumeration may touch.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: u64,

    /// Worker threads for corpus-level parallelism (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Record wall-clock milliseconds per report entry.
    #[arg(long, global = true)]
    pub timings: bool,
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: pgroup_core::Error| e.to_string())
}

/// Groups named on the command line.
#[derive(Args, Debug, Clone, Default)]
pub struct TargetArgs {
    /// Presentation files in the `pcgroup` text format.
    pub files: Vec<PathBuf>,

    /// Built-in family instances, e.g. `dihedral:8` or `quaternion:16*dihedral:8`.
    #[arg(long = "family", value_name = "SPEC")]
    pub families: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Consistency of the presentation and the group axioms.
    Check(TargetArgs),
    /// Lemma suites.
    Lemmas {
        #[command(flatten)]
        targets: TargetArgs,
        /// Comma-separated lemma ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Single-element covering audit.
    Audit(TargetArgs),
    /// Commutator witnesses.
    Witness {
        #[command(flatten)]
        targets: TargetArgs,
        #[arg(long)]
        constructive: bool,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Lattice operations against brute-force enumeration.
    OracleDiff(TargetArgs),
    /// Everything, on the built-in corpus.
    Corpus {
        /// Comma-separated lemma ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

/// Parses `args` (program name first), runs, prints, and returns the exit code.
pub fn main_dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(report) => {
            print!("{}", emit_report(&report, cli.run.format));
            exit_code(&report)
        }
        Err(e) => {
            eprintln!("pgaudit: {e}");
            2
        }
    }
}

pub fn exit_code(report: &Report) -> i32 {
    i32::from(report.any_fail())
}
