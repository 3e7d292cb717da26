use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Outcome};

/// Incoherent measurements, coherence witnesses and incoherent-measurement
/// discord.
#[derive(Debug, Parser)]
#[command(name = "incoh", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Validation tolerance for input states, POVMs and channels.
    #[arg(long, global = true, default_value_t = incoh_core::linalg::DEFAULT_TOL)]
    pub tol: f64,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Fourier,
    Incoherent,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a POVM is incoherent (all elements diagonal).
    CheckPovm { file: PathBuf },
    /// Search for a witness violation certifying a coherent POVM.
    Witness(WitnessArgs),
    /// QDI of a state, with its three-way cross-check.
    Qdi {
        file: PathBuf,
        /// Measured subsystems, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        cut: Vec<usize>,
    },
    /// Monogamy gap D(B|A) + D(B'|A) - D(BB'|A).
    Monogamy {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        b: Vec<usize>,
        #[arg(long = "b-prime", value_delimiter = ',', default_value = "2")]
        b_prime: Vec<usize>,
    },
    /// Classification panel of a Kraus channel.
    ChannelCheck(ChannelArgs),
    /// Von Neumann entropy in bits.
    Entropy { file: PathBuf },
    /// Mutual information across a cut, in bits.
    Mutinf {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        cut: Vec<usize>,
    },
    /// Recompute every reference number; nonzero exit if any row fails.
    Reproduce,
    /// Print a catalog state as an interchange document.
    State {
        name: String,
        /// Column vectors for prop2_witness (matrix document).
        #[arg(long)]
        vectors: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    /// POVM document; omit when using --noise-lambda.
    #[arg(conflicts_with = "noise_lambda", required_unless_present = "noise_lambda")]
    pub file: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    /// Build the noisy projective POVM λ|φ><φ| + (1-λ)/d instead of reading one.
    #[arg(long)]
    pub noise_lambda: Option<f64>,
    #[arg(long, value_enum, default_value_t = BasisKind::Fourier, requires = "noise_lambda")]
    pub basis: BasisKind,
    #[arg(long, default_value_t = 2, requires = "noise_lambda")]
    pub dim: usize,
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    /// Channel document; omit when using --library.
    #[arg(conflicts_with = "library", required_unless_present = "library")]
    pub file: Option<PathBuf>,
    /// Built-in channel: depolarizing, dephasing, mio_not_io_qutrit, identity.
    #[arg(long)]
    pub library: Option<String>,
    /// Parameters for --library, e.g. `2,0.5` for depolarizing.
    #[arg(long, value_delimiter = ',', requires = "library")]
    pub params: Vec<f64>,
}

fn dispatch(command: Command, g: &Global) -> Result<Outcome, CliError> {
    match command {
        Command::CheckPovm { file } => commands::check_povm(&file, g),
        Command::Witness(args) => commands::witness(&args, g),
        Command::Qdi { file, cut } => commands::qdi(&file, &cut, g),
        Command::Monogamy { file, a, b, b_prime } => commands::monogamy(&file, &a, &b, &b_prime, g),
        Command::ChannelCheck(args) => commands::channel_check(&args, g),
        Command::Entropy { file } => commands::entropy(&file, g),
        Command::Mutinf { file, cut } => commands::mutinf(&file, &cut, g),
        Command::Reproduce => commands::reproduce(g),
        Command::State { name, vectors } => commands::state(&name, vectors.as_deref(), g),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(commands::EXIT_PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command, &cli.global) {
        Ok(outcome) => {
            let body = match cli.global.format {
                Format::Text => outcome.text,
                Format::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n",
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
