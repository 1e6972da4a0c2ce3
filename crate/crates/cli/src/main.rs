mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser)]
#[command(name = "alphaspec", version, about = "α-spectral extremal graph toolkit")]
struct Cli {
    /// Output format (each command has its own default)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// λ_α for graph6 lines read from a file or stdin
    Lambda(LambdaArgs),
    /// Print the graph6 of a named graph, e.g. turan:7:3
    Gen { spec: String },
    /// List isomorphism classes on n vertices
    Enumerate(EnumerateArgs),
    /// Exact (spectral) Turán problem by exhaustive search
    Extremal(ExtremalArgs),
    /// Run the inequality battery
    Verify(VerifyArgs),
    /// Ratios ex_α(n,F)/n and ex_α(n,F)/(n−1) over a range of n
    Sequence(SequenceArgs),
    /// Growth hypotheses of the degree-stability criterion (observational)
    Growth(GrowthArgs),
    /// r-partiteness of F-free graphs with large minimum degree (observational)
    Stability(StabilityArgs),
}

#[derive(Args)]
pub struct LambdaArgs {
    /// File of graph6 lines (stdin when absent or "-")
    pub input: Option<PathBuf>,
    /// Comma-separated α values
    #[arg(short, long, value_delimiter = ',', default_value = "0", allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
}

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(short)]
    pub n: usize,
    /// Forbidden family: comma-separated specs or graph6 strings
    #[arg(short = 'F', long)]
    pub family: Option<String>,
    #[arg(long)]
    pub min_degree: Option<usize>,
    #[arg(long)]
    pub max_edges: Option<usize>,
    #[arg(long)]
    pub connected: bool,
    /// Print only the number of classes
    #[arg(long)]
    pub count: bool,
    /// Allow n above the default cap
    #[arg(long)]
    pub force: bool,
}

#[derive(Args)]
pub struct ExtremalArgs {
    #[arg(short)]
    pub n: usize,
    #[arg(short, long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(short = 'F', long)]
    pub family: Option<String>,
    /// Maximize edges instead of λ_α
    #[arg(long, conflicts_with = "min_degree_frac")]
    pub edges: bool,
    /// Restrict to δ > (π(F) − ε)n for this ε
    #[arg(long, value_name = "EPSILON")]
    pub min_degree_frac: Option<f64>,
    #[arg(long)]
    pub force: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5", allow_negative_numbers = true)]
    pub alphas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub r: Vec<usize>,
    /// Comma-separated check names (default: all)
    #[arg(long, value_delimiter = ',')]
    pub checks: Option<Vec<String>>,
    /// List the registered checks and exit
    #[arg(long)]
    pub list_checks: bool,
    #[arg(long)]
    pub force: bool,
}

#[derive(Args)]
pub struct SequenceArgs {
    #[arg(short = 'F', long)]
    pub family: String,
    #[arg(short, long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Range lo..hi (inclusive) or a single n
    #[arg(long = "n")]
    pub range: String,
    #[arg(long)]
    pub force: bool,
}

#[derive(Args)]
pub struct GrowthArgs {
    #[arg(short = 'F', long)]
    pub family: String,
    #[arg(short, long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long = "n")]
    pub range: String,
    #[arg(long)]
    pub force: bool,
}

#[derive(Args)]
pub struct StabilityArgs {
    #[arg(short = 'F', long)]
    pub family: String,
    #[arg(long = "n")]
    pub range: String,
    #[arg(long)]
    pub force: bool,
}

/// Exit status: 0 success, 1 verification failure, 2 usage or parse error.
fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(k) = cli.workers {
        if k == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = commands::Out { format: cli.format, path: cli.output.as_deref() };
    let result = match cli.command {
        Command::Lambda(a) => commands::lambda(&a, &out),
        Command::Gen { spec } => commands::generate(&spec, &out),
        Command::Enumerate(a) => commands::enumerate(&a, &out),
        Command::Extremal(a) => commands::extremal(&a, &out),
        Command::Verify(a) => commands::verify(&a, &out),
        Command::Sequence(a) => commands::sequence(&a, &out),
        Command::Growth(a) => commands::growth(&a, &out),
        Command::Stability(a) => commands::stability(&a, &out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_status(&e))
        }
    }
}
