//! `betweenness-lab`: command-line front end for `betweenness-core`.
//!
//! Every command prints a JSON response `{command, status, payload,
//! diagnostics[, error]}`. Exit codes: 0 for `ok` and `refuted`, 2 for
//! `inconclusive`, 1 for `error`.

mod commands;
mod figures;
mod input;
mod response;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use betweenness_core::iso::{IsoKind, DEFAULT_NODE_LIMIT};
use betweenness_core::Tolerance;
use clap::{Args, Parser, Subcommand, ValueEnum};

use response::{CodedError, Response, Status};

#[derive(Debug, Parser)]
#[command(name = "betweenness-lab", version, about = "Betweenness geometry of point sets and circle pairs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Threshold on twice-signed triangle areas.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance_sign: f64,
    /// Distance below which points coincide.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance_metric: f64,
    /// Node budget for isomorphism searches.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_LIMIT)]
    pub node_limit: u64,
    /// Write the response here instead of stdout. For `figure` the CSV goes
    /// here and the response stays on stdout; without it the CSV goes to
    /// stdout and the response to stderr.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Emit floats at full precision instead of 12 significant digits.
    #[arg(long, global = true)]
    pub full_precision: bool,
}

impl GlobalOpts {
    pub fn tolerance(&self) -> Result<Tolerance> {
        Ok(Tolerance::new(self.tolerance_sign, self.tolerance_metric)?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Betweenness,
    Collinearity,
}

impl From<KindArg> for IsoKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Betweenness => IsoKind::Betweenness,
            KindArg::Collinearity => IsoKind::Collinearity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    /// Concentric pairs with ρ < 1/2 and τ ≥ √½.
    #[value(name = "2.5")]
    Ex25,
    /// The finite pair separating collinearity from betweenness.
    Exbc1,
    /// Tangent-triangle family against the concentric pair.
    #[value(name = "6.1")]
    Ex61,
    /// Recovering the forced concentric ratio.
    #[value(name = "6.2")]
    Ex62,
    /// Extreme-point signatures of a non-concentric pair (needs --pair).
    Signatures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    #[value(name = "fig1_arc")]
    Fig1Arc,
    #[value(name = "fig2_density")]
    Fig2Density,
    #[value(name = "fig3_cases")]
    Fig3Cases,
    #[value(name = "fig4_triangles")]
    Fig4Triangles,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants m and M of a concentric pair.
    Invariant {
        /// `{"center":[x,y],"rho":..,"rho_prime":..}` inline or as a path.
        #[arg(long)]
        pair: String,
    },
    /// Case (a)-(e) of a non-concentric pair.
    Classify {
        /// `{"c1":[x,y],"r1":..,"c2":[x,y],"r2":..}` inline or as a path.
        #[arg(long)]
        pair: String,
        /// Also run the extreme-point signature analysis.
        #[arg(long)]
        signatures: bool,
    },
    /// Decide isomorphism of two finite configurations.
    Iso {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Enumerate every bijection instead of stopping at the first.
        #[arg(long)]
        all: bool,
    },
    /// Construct a cover below a target ratio, or verify a certificate.
    Cover {
        #[arg(long)]
        pair: String,
        #[arg(long, conflicts_with = "certificate", required_unless_present = "certificate")]
        target: Option<f64>,
        /// `{"alphas":[..],"k":..}` inline or as a path.
        #[arg(long)]
        certificate: Option<String>,
    },
    /// Reproduce a worked example as a structured report.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value_t = 0.4)]
        rho: f64,
        #[arg(long, default_value_t = 0.75)]
        tau: f64,
        #[arg(long)]
        pair: Option<String>,
    },
    /// Sample a concentric pair into a finite configuration.
    Sample {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Check that a map between configurations preserves a relation.
    Verify {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// JSON array: entry `i` is the image id of point `i`.
        #[arg(long)]
        map: String,
    },
    /// Emit CSV data behind one of the figures.
    Figure {
        #[arg(value_enum)]
        name: FigureName,
        /// Ordinate of the triangle apex for fig4_triangles.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y: f64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Invariant { .. } => "invariant",
            Command::Classify { .. } => "classify",
            Command::Iso { .. } => "iso",
            Command::Cover { .. } => "cover",
            Command::Example { .. } => "example",
            Command::Sample { .. } => "sample",
            Command::Verify { .. } => "verify",
            Command::Figure { .. } => "figure",
        }
    }
}

/// Reserved for randomized commands; validated but otherwise unused.
fn check_seed() -> Result<Option<u64>> {
    match std::env::var("BETWEENNESS_LAB_SEED") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| {
            CodedError::new("invalid_seed", format!("BETWEENNESS_LAB_SEED={s:?} is not an unsigned integer")).into()
        }),
        Err(_) => Ok(None),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            // --help and --version
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let err = anyhow::Error::new(CodedError::new("usage", err.to_string().trim_end()));
            print!("{}", Response::from_error("usage", &err).to_json());
            return ExitCode::from(Status::Error.exit_code() as u8);
        }
    };
    let name = cli.command.name();
    let result = check_seed().and_then(|_| commands::run(&cli));
    let response = match result {
        Ok(reply) => Response::from_reply(name, reply, cli.global.full_precision),
        Err(err) => Response::from_error(name, &err),
    };
    let status = response.status;
    let text = response.to_json();
    let written = match (&cli.command, cli.global.output.as_ref()) {
        // CSV went to stdout, so the response moves to stderr
        (Command::Figure { .. }, None) => {
            eprint!("{text}");
            Ok(())
        }
        // CSV went to --output, so the response stays on stdout
        (Command::Figure { .. }, Some(_)) => emit(&text, None),
        (_, output) => emit(&text, output),
    };
    if let Err(err) = written {
        eprintln!("betweenness-lab: cannot write output: {err}");
        return ExitCode::from(Status::Error.exit_code() as u8);
    }
    ExitCode::from(status.exit_code() as u8)
}
