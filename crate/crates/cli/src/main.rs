//! `frftkit`: fractional Fourier transforms, key generation, encryption,
//! summability-mean decryption and error sweeps from the command line.
//!
//! Exit codes: 0 on success, 2 for malformed input or I/O failures, 3 when a
//! numeric precondition fails. `FRFT_THREADS` caps the worker pool.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frft_core::{EvaluationGrid, Phi};

use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "frftkit", version, about = "Fractional Fourier transform toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transform a signal file with a given order.
    Frft(FrftArgs),
    /// Generate a key for a plaintext.
    Keygen(KeygenArgs),
    /// Encrypt a plaintext with a key.
    Encrypt(EncryptArgs),
    /// Decrypt a cipher with a summability mean.
    Decrypt(DecryptArgs),
    /// Error table for Abel, Gauss and the fast discrete transform.
    Compare(CompareArgs),
    /// Run the rect experiment end to end and write every artifact.
    Bench(BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Midpoint,
    Trapezoid,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Omega1,
    Omega2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PhiArg {
    Abel,
    Gauss,
}

impl From<PhiArg> for Phi {
    fn from(p: PhiArg) -> Self {
        match p {
            PhiArg::Abel => Phi::Abel,
            PhiArg::Gauss => Phi::Gauss,
        }
    }
}

/// Quadrature flags shared by the transform commands.
#[derive(Args, Debug, Clone)]
pub struct QuadArgs {
    /// Graded refinement levels around singular points.
    #[arg(long = "refine", default_value_t = frft_core::crypto::DEFAULT_WEIGHT_REFINEMENT)]
    pub refine: u32,
    /// Truncate the integral to |t| <= extent.
    #[arg(long)]
    pub extent: Option<f64>,
    #[arg(long, value_enum, default_value_t = RuleArg::Midpoint)]
    pub rule: RuleArg,
}

#[derive(Args, Debug)]
pub struct FrftArgs {
    /// Order in radians.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Output grid as `x0,dx,count` (default: the input grid).
    #[arg(long, value_parser = parse_grid, allow_negative_numbers = true)]
    pub grid: Option<EvaluationGrid>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Args, Debug)]
pub struct KeygenArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Half-width of the weight support.
    #[arg(long, default_value_t = 1.1)]
    pub k: f64,
    #[arg(long, default_value_t = 3)]
    pub ntaus: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Omega1)]
    pub family: FamilyArg,
    /// Multiplier order for triple encryption.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Plaintext used to size the offset and the tau separation.
    #[arg(long)]
    pub plaintext: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct EncryptArgs {
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Cipher grid as `x0,dx,count` (default: the reciprocal grid of the input).
    #[arg(long, value_parser = parse_grid, allow_negative_numbers = true)]
    pub grid: Option<EvaluationGrid>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Args, Debug)]
pub struct DecryptArgs {
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1e-14)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = PhiArg::Abel)]
    pub phi: PhiArg,
    /// Output grid as `x0,dx,count` (default: the grid the cipher came from).
    #[arg(long, value_parser = parse_grid, allow_negative_numbers = true)]
    pub grid: Option<EvaluationGrid>,
    /// Plaintext to report the reconstruction error against.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long)]
    pub cipher: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long = "out-csv")]
    pub out_csv: PathBuf,
    /// Epsilons for the Abel and Gauss rows.
    #[arg(long, value_delimiter = ',', default_values_t = default_epsilons())]
    pub epsilons: Vec<f64>,
    /// Size of the fast discrete transform (a power of two).
    #[arg(long, default_value_t = 1024)]
    pub fast_n: usize,
    /// Write 0 in the seconds column so the table is reproducible.
    #[arg(long)]
    pub no_timing: bool,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Plaintext cells on [-k, k].
    #[arg(long, default_value_t = 2048)]
    pub n: usize,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.1)]
    pub k: f64,
    #[arg(long, default_value_t = 3)]
    pub ntaus: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 1024)]
    pub fast_n: usize,
    /// Directory receiving plaintext, key, cipher, decrypted signal and errors.csv.
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long)]
    pub no_timing: bool,
}

pub fn default_epsilons() -> Vec<f64> {
    vec![1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14]
}

fn parse_grid(s: &str) -> Result<EvaluationGrid, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x0, dx, count] = parts.as_slice() else {
        return Err(format!("expected x0,dx,count, got '{s}'"));
    };
    let x0: f64 = x0.parse().map_err(|_| format!("bad x0 '{x0}'"))?;
    let dx: f64 = dx.parse().map_err(|_| format!("bad dx '{dx}'"))?;
    let count: usize = count.parse().map_err(|_| format!("bad count '{count}'"))?;
    EvaluationGrid::new(x0, dx, count).map_err(|e| e.to_string())
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("FRFT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("FRFT_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(format!("cannot configure {n} threads: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Frft(a) => commands::frft(&a),
        Command::Keygen(a) => commands::keygen(&a),
        Command::Encrypt(a) => commands::encrypt(&a),
        Command::Decrypt(a) => commands::decrypt(&a),
        Command::Compare(a) => commands::compare(&a),
        Command::Bench(a) => commands::bench(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("frftkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
