use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rsl_core::cli::{self, Command, CommandConfig, RawArgs, EXIT_USAGE};

/// Rigid spheres and spherical Sasakian structures on the Heisenberg sphere.
///
/// Integer and p/q inputs use exact rational arithmetic; decimals use floating
/// point with tolerance RSL_TOL (default 1e-10).
#[derive(Parser)]
#[command(name = "rsl", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Moduli point, cubic roots, discriminant, region and symmetry dimension.
    Classify(Flags),
    /// Discriminant curve as CSV (phi, sign, tau, rho, moduli-disk projection, discriminant).
    Curve(Flags),
    /// Expand every real branch and check agreement and parameter recovery.
    Verify(Flags),
    /// Lie algebra of infinitesimal Sasakian automorphisms.
    Symmetry(Flags),
    /// All parameter sets attached to a triple.
    Convert(Flags),
    /// Reproduce the three worked examples.
    Examples(Flags),
}

#[derive(Args)]
struct Flags {
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
    #[arg(long = "a-re", allow_hyphen_values = true)]
    a_re: Option<String>,
    #[arg(long = "a-im", allow_hyphen_values = true)]
    a_im: Option<String>,
    /// Series order N, 4..=16.
    #[arg(long)]
    order: Option<usize>,
    /// json, csv or text.
    #[arg(long)]
    format: Option<String>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "phi-min")]
    phi_min: Option<String>,
    #[arg(long = "phi-max")]
    phi_max: Option<String>,
    #[arg(long)]
    count: Option<usize>,
    /// +, - or both.
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
}

impl From<Flags> for RawArgs {
    fn from(f: Flags) -> Self {
        RawArgs {
            tau: f.tau,
            rho: f.rho,
            a_re: f.a_re,
            a_im: f.a_im,
            order: f.order,
            format: f.format,
            out: f.out,
            phi_min: f.phi_min,
            phi_max: f.phi_max,
            count: f.count,
            sign: f.sign,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, flags) = match cli.command {
        Cmd::Classify(f) => (Command::Classify, f),
        Cmd::Curve(f) => (Command::Curve, f),
        Cmd::Verify(f) => (Command::Verify, f),
        Cmd::Symmetry(f) => (Command::Symmetry, f),
        Cmd::Convert(f) => (Command::Convert, f),
        Cmd::Examples(f) => (Command::Examples, f),
    };
    let config = match CommandConfig::parse(command, &flags.into()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let output = cli::run(&config);
    if let Some(msg) = &output.message {
        eprintln!("{msg}");
    }
    if let Err(e) = cli::emit(&config, &output) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(output.exit_code as u8)
}
