use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use hankel_fh_cli::commands::{run, Command};
use hankel_fh_cli::config::{self, ExperimentConfig, Format, Origins};
use hankel_fh_cli::{CliError, EXIT_UNCONVERGED};

#[derive(Parser)]
#[command(name = "hankel-fh", version, about = "Large-n asymptotics of Hankel determinants with Fisher-Hartwig singularities")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Experiment configuration (flat key = value file).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Matrix sizes, comma separated.
    #[arg(long, global = true)]
    n: Option<String>,
    /// Working precision in bits; defaults to $HANKEL_FH_PRECISION, then max(256, 48n).
    #[arg(long, global = true)]
    precision: Option<usize>,
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Monte Carlo seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo sample count; enables sampling in `thinning`.
    #[arg(long, global = true)]
    mc_samples: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Equilibrium density, Euler-Lagrange constant and regularity certificate.
    Eqmeasure,
    /// Predicted log D_n with the constants C1..C4.
    Predict,
    /// Extended-precision log D_n.
    Oracle,
    /// Prediction against oracle with a fitted decay exponent.
    Compare,
    /// Gap probability of the thinned spectrum.
    Thinning,
}

/// Reads the configuration file and applies the flags on top of it.
fn load(cli: &Cli) -> Result<(ExperimentConfig, Origins), CliError> {
    let (mut c, mut o) = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
            config::parse(&text)?
        }
        None => (ExperimentConfig::default(), Origins::default()),
    };
    if let Some(n) = &cli.n {
        c.n_list = config::parse_n_list(n)?;
        o.override_flag("n");
    }
    if let Some(p) = cli.precision {
        c.precision_bits = Some(p);
        o.override_flag("precision");
    } else if c.precision_bits.is_none() {
        if let Ok(v) = std::env::var("HANKEL_FH_PRECISION") {
            let p = v.trim().parse().map_err(|_| {
                CliError::invalid(format!("HANKEL_FH_PRECISION: `{v}` is not a bit count"))
            })?;
            c.precision_bits = Some(p);
        }
    }
    if let Some(f) = cli.format {
        c.output_format = f;
    }
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(m) = cli.mc_samples {
        c.mc_samples = Some(m);
        o.override_flag("mc_samples");
    }
    Ok((c, o))
}

fn execute(cli: &Cli) -> Result<Vec<usize>, CliError> {
    let (c, o) = load(cli)?;
    let cmd = match cli.command {
        Cmd::Eqmeasure => Command::EqMeasure,
        Cmd::Predict => Command::Predict,
        Cmd::Oracle => Command::Oracle,
        Cmd::Compare => Command::Compare,
        Cmd::Thinning => Command::Thinning,
    };
    let outcome = run(cmd, &c, &o)?;
    match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text)
            .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?,
        None => print!("{}", outcome.text),
    }
    Ok(outcome.unconverged)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(bad) if bad.is_empty() => ExitCode::SUCCESS,
        Ok(bad) => {
            eprintln!("error: determinant not converged at n = {bad:?}; raise --precision");
            ExitCode::from(EXIT_UNCONVERGED as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
