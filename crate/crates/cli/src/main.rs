//! `membrane`: extensions, projections, evolutions, scaling ladders and verification suites
//! for membrane transmission conditions, driven from the command line.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::CommonArgs;

#[derive(Parser, Debug)]
#[command(name = "membrane", version, about = "Kelvin-formula cosine families and their skew limits")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extend a function with a jump at 0 to a pair in one of the invariant subspaces.
    Extend {
        #[arg(long, value_enum, default_value = "snapping")]
        kind: ExtensionKind,
        /// Emit extension shapes of the input for several values of alpha instead.
        #[arg(long)]
        figure_data: bool,
    },
    /// Project a pair of functions.
    Project {
        #[arg(long, value_enum, default_value = "c")]
        which: ProjectionKind,
    },
    /// Evolve a function by a cosine family or its semigroup.
    Evolve {
        #[arg(long, value_enum, default_value = "snapping")]
        kind: FamilyKind,
        /// Time.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
        /// Use the heat semigroup instead of the cosine family.
        #[arg(long)]
        semigroup: bool,
    },
    /// Run a scaling ladder and write `n,error`.
    Converge {
        #[arg(long, value_enum)]
        experiment: Experiment,
        /// Comma-separated rungs.
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32,64")]
        ladder: Vec<u32>,
        /// Comma-separated times for time-dependent experiments.
        #[arg(long = "t-set", value_delimiter = ',', default_value = "0.25,0.5,1,2,4")]
        t_set: Vec<f64>,
        /// Approximate identity measured by the `dirac` experiment.
        #[arg(long, value_enum, default_value = "origin")]
        variant: Variant,
    },
    /// Run verification suites; exit 0 when all pass, 1 otherwise.
    Verify {
        /// Suite name, module name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// List the available suites.
        #[arg(long)]
        list: bool,
    },
    /// List the named corpus, or sample one function with `--function`.
    Corpus,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ExtensionKind {
    Snapping,
    Perp,
    Skew,
    Weks,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ProjectionKind {
    C,
    D,
    Skew,
    Weks,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyKind {
    Free,
    Snapping,
    Perp,
    Skew,
    Weks,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Experiment {
    Cosine,
    Semigroup,
    Perp,
    Projection,
    Dirac,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Variant {
    Left,
    Right,
    Origin,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
