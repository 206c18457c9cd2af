//! Command-line front end: file formats, backend loading and reports.

pub mod backend;
pub mod commands;
pub mod diagram;
pub mod error;
pub mod report;
pub mod text;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stringnet::field::{Fp, Q};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "stringnet", version, about = "Evaluate string diagrams, reduce cylinder nets and compute twisted centers")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Global {
    /// Builtin name (vect-z2, vect-s3, kz2, ks3, h4, vect:1,2) or a .group/.hopf file.
    #[arg(long, global = true)]
    pub backend: Option<String>,
    /// Framing winding of the cylinder; defaults to the file's, or 1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub winding: Option<i32>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FieldChoice::Q)]
    pub field: FieldChoice,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldChoice {
    Q,
    F5,
    F7,
    F11,
    F13,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check progressivity, colors and seam data of a diagram.
    Validate { diagram: PathBuf },
    /// Evaluate a strip diagram, or the part of a cylinder net inside --rect.
    Eval {
        diagram: PathBuf,
        /// `s1,s2,t1,t2` for cylinder nets.
        #[arg(long)]
        rect: Option<String>,
    },
    /// Reduce a cylinder net to its class in Hom(x, T y).
    Reduce { diagram: PathBuf },
    /// Stack diagrams, listed bottom first, and compare with the composite of their values.
    Compose {
        #[arg(required = true, num_args = 2..)]
        diagrams: Vec<PathBuf>,
    },
    /// Check the monad laws and dinaturality on every registered object.
    MonadCheck {
        /// Also compare with the monad of this winding.
        #[arg(long, allow_hyphen_values = true)]
        compare: Option<i32>,
    },
    /// Count and describe objects of the twisted center.
    Center {
        #[arg(long)]
        simples: bool,
        #[arg(long)]
        homs: bool,
        #[arg(long)]
        karoubi: bool,
    },
    /// List which test modules are retracts of free modules.
    KaroubiCompare,
}

/// A finished run: the rendered report and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

pub fn run(cli: &Cli, echo: &str) -> Result<Outcome, CliError> {
    let report = match cli.global.field {
        FieldChoice::Q => commands::dispatch::<Q>(cli, echo)?,
        FieldChoice::F5 => commands::dispatch::<Fp<5>>(cli, echo)?,
        FieldChoice::F7 => commands::dispatch::<Fp<7>>(cli, echo)?,
        FieldChoice::F11 => commands::dispatch::<Fp<11>>(cli, echo)?,
        FieldChoice::F13 => commands::dispatch::<Fp<13>>(cli, echo)?,
    };
    Ok(Outcome { text: report.render(), code: report.status.exit_code() })
}
