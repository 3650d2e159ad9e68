mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quivkit::Caps;
use serde::Serialize;
use sha2::{Digest, Sha256};

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "quivkit",
    version,
    about = "Gröbner bases, resolutions and arrow reductions for bound quiver algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Maximal number of syzygy steps per resolution.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Maximal degree for Gröbner completion.
    #[arg(long = "degree-cap", global = true)]
    pub degree_cap: Option<usize>,
    /// Largest arrow subset tried in one reduction step.
    #[arg(long = "subset-cap", global = true)]
    pub subset_cap: Option<usize>,
    /// Seed for randomized isomorphism search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Output file (the extension for `extend`, the report otherwise).
    #[arg(short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a presentation.
    Check { file: PathBuf },
    /// Print the reduced Gröbner basis.
    Gb { file: PathBuf },
    /// Dimension, Loewy length, corner dimensions and shape of the quiver.
    Info { file: PathBuf },
    /// Classify an arrow set as removable or not.
    Removable {
        #[arg(long)]
        arrows: String,
        file: PathBuf,
    },
    /// List redundant arrows.
    Redundant { file: PathBuf },
    /// Compute the arrow reduced version.
    Arv { file: PathBuf },
    /// Compute the arrow irredundant version.
    Aiv { file: PathBuf },
    /// Build a trivial one-arrow extension and verify it.
    Extend {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Comma-separated generators of the submodule V.
        #[arg(long)]
        gens: String,
        /// Name of the new arrow.
        #[arg(long, default_value = "eta")]
        arrow: String,
        file: PathBuf,
    },
    /// Check the seven irreducibility conditions.
    Irreducible { file: PathBuf },
    /// Projective dimension of the ideal generated by some arrows.
    Pd {
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum)]
        side: SideArg,
        file: PathBuf,
    },
    /// Everything above that needs no extra arguments.
    Report { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Gb { .. } => "gb",
            Command::Info { .. } => "info",
            Command::Removable { .. } => "removable",
            Command::Redundant { .. } => "redundant",
            Command::Arv { .. } => "arv",
            Command::Aiv { .. } => "aiv",
            Command::Extend { .. } => "extend",
            Command::Irreducible { .. } => "irreducible",
            Command::Pd { .. } => "pd",
            Command::Report { .. } => "report",
        }
    }

    fn file(&self) -> &PathBuf {
        match self {
            Command::Check { file }
            | Command::Gb { file }
            | Command::Info { file }
            | Command::Removable { file, .. }
            | Command::Redundant { file }
            | Command::Arv { file }
            | Command::Aiv { file }
            | Command::Extend { file, .. }
            | Command::Irreducible { file }
            | Command::Pd { file, .. }
            | Command::Report { file } => file,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Input {
    file: String,
    sha256: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Envelope<'a> {
    schema: u32,
    command: &'a str,
    args: Vec<String>,
    input: Input,
    caps: Caps,
    subset_cap: Option<usize>,
    certified: bool,
    result: &'a serde_json::Value,
}

fn caps_of(cli: &Cli) -> Caps {
    let d = Caps::default();
    Caps {
        resolution: cli.cap.unwrap_or(d.resolution),
        degree: cli.degree_cap.unwrap_or(d.degree),
        seed: cli.seed,
        max_module_dim: d.max_module_dim,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("QUIVKIT_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        // Ignore the error if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match (&cli.output, &cli.command) {
        (Some(path), cmd) if !matches!(cmd, Command::Extend { .. }) => {
            std::fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
        }
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let path = cli.command.file();
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let caps = caps_of(cli);
    let Outcome {
        payload,
        text: human,
        certified,
        violation,
    } = commands::dispatch(cli, &text, &caps)?;
    if let Some(v) = violation {
        return Err(Failure::Internal(v));
    }
    let out = if cli.json {
        let envelope = Envelope {
            schema: 1,
            command: cli.command.name(),
            args: std::env::args().skip(1).collect(),
            input: Input {
                file: path.display().to_string(),
                sha256: Sha256::digest(text.as_bytes())
                    .iter()
                    .map(|b| format!("{b:02x}"))
                    .collect(),
            },
            caps,
            subset_cap: cli.subset_cap,
            certified,
            result: &payload,
        };
        let mut s = serde_json::to_string_pretty(&envelope).expect("serializable");
        s.push('\n');
        s
    } else {
        let mut s = human;
        if !certified {
            s.push_str("certified: no (undecided within caps)\n");
        }
        s
    };
    emit(cli, &out)?;
    Ok(certified)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = std::panic::catch_unwind(|| run(&cli));
    match result {
        Ok(Ok(true)) => ExitCode::SUCCESS,
        Ok(Ok(false)) => ExitCode::from(3),
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(1),
    }
}
