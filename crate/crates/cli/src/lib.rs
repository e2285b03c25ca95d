// Copyright 2026 The brickqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end for `brickqec-core`: configuration, CSV/JSONL
//! output, parallel sweeps and the acceptance suite.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod parallel;

use std::io::Write;

use clap::{Parser, Subcommand};

use crate::commands::{BoundsArgs, McChoiArgs, OracleArgs, Outcome, SampleArgs, ScanArgs, ZfuncArgs};
use crate::config::{CommonArgs, Settings};
use crate::error::CliError;

pub use crate::error::CliError as Error;

#[derive(Debug, Parser)]
#[command(
    name = "brickqec",
    version,
    about = "Partition functions and error-correction checks for brickwork Clifford encoders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transfer-DP partition function Z^(s).
    Zfunc {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        extra: ZfuncArgs,
    },
    /// Closed-form infinite-depth values and depth bounds.
    Bounds {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        extra: BoundsArgs,
    },
    /// Compare the DP with brute-force trajectory enumeration.
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        extra: OracleArgs,
    },
    /// Monte Carlo failure probability of the exact-EC criterion.
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        extra: SampleArgs,
    },
    /// Dense-simulation estimate of Z next to the DP value (n ≤ 5).
    McChoi {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        extra: McChoiArgs,
    },
    /// QEC bound across register sizes at logarithmic distance.
    Scan {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        extra: ScanArgs,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        workers: Option<usize>,
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        /// Deliberately break the gate transfer factor (suite must fail).
        #[arg(long, hide = true)]
        mutate_transfer: bool,
    },
}

fn emit(outcome: &Outcome, s: &Settings, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    for w in &outcome.warnings {
        writeln!(err, "{w}")?;
    }
    match &s.output {
        Some(path) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            output::write_records(&outcome.records, s.format, &mut file)?;
            file.flush()?;
        }
        None => output::write_records(&outcome.records, s.format, out)?,
    }
    match &outcome.failure {
        Some(msg) => Err(CliError::Check(msg.clone())),
        None => Ok(()),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    macro_rules! run_cmd {
        ($common:expr, $extra:expr, $f:path) => {{
            let s = Settings::resolve(&$common)?;
            let outcome = $f(&s, &$extra)?;
            emit(&outcome, &s, out, err)
        }};
    }
    match cli.command {
        Command::Zfunc { common, extra } => run_cmd!(common, extra, commands::zfunc),
        Command::Bounds { common, extra } => run_cmd!(common, extra, commands::bounds),
        Command::Oracle { common, extra } => run_cmd!(common, extra, commands::oracle),
        Command::Sample { common, extra } => run_cmd!(common, extra, commands::sample),
        Command::McChoi { common, extra } => run_cmd!(common, extra, commands::mc_choi),
        Command::Scan { common, extra } => run_cmd!(common, extra, commands::scan),
        Command::Selftest {
            workers,
            only,
            mutate_transfer,
        } => {
            let opts = acceptance::SuiteOptions {
                workers: workers.unwrap_or_else(parallel::default_workers),
                only,
                mutate_transfer,
            };
            let results = acceptance::run_suite(&opts, |r| {
                let _ = writeln!(out, "{}", r.line());
            });
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(CliError::Check(format!("{failed} acceptance criteria failed")));
            }
            Ok(())
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code: 0 success, 1 failed check, 2 invalid input or IO error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
