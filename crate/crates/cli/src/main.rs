//! `catmap`: run cat-map experiments, regenerate figure batches, and check
//! the circuit against the classical map.
//!
//! Exit codes: 0 on success, 1 for configuration errors, 2 for runtime or
//! numerical failures. Errors are also reported as one JSON line on stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use catmap::circuit::build_cat_iteration;
use catmap::harness::{recipe, run_experiment, verify, ExperimentConfig, Figure};
use catmap::{CatError, RegisterLayout};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "catmap", version, about = "Quantum Arnold cat map simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Write and run the config batch behind a figure.
    Recipe {
        figure: Figure,
        #[arg(long)]
        out: PathBuf,
        /// Only write the config files.
        #[arg(long)]
        dry_run: bool,
    },
    /// Compare the circuit against the classical map on a random superposition.
    Verify {
        #[arg(long = "nq")]
        n_q: usize,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Also write one iteration of the circuit, one gate per line.
        #[arg(long)]
        dump_circuit: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(CatError),
    /// Any failure to read the config, including a missing file.
    Config(CatError),
    VerifyFailed,
}

impl From<CatError> for Failure {
    fn from(e: CatError) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Lib(e) if e.is_config_error() => 1,
            _ => 2,
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Failure::Lib(e) => serde_json::json!({
                "error": e.kind(),
                "message": e.to_string(),
            }),
            Failure::Config(e) => serde_json::json!({
                "error": "config",
                "message": e.to_string(),
            }),
            Failure::VerifyFailed => serde_json::json!({
                "error": "numerical",
                "message": "circuit disagrees with the classical map",
            }),
        }
    }
}

fn run(config: &Path) -> Result<(), Failure> {
    let config = ExperimentConfig::load(config).map_err(Failure::Config)?;
    let result = run_experiment(&config)?;
    let last = result.mean.last().expect("t = 0 is always recorded");
    println!(
        "wrote {} (N_d = {}, {} realizations, f({}) = {:.6}, fa = {:.6})",
        config.output_dir.display(),
        result.n_d,
        config.realizations,
        last.t,
        last.f,
        last.fa
    );
    Ok(())
}

fn run_recipe(figure: Figure, out: &Path, dry_run: bool) -> Result<(), Failure> {
    for named in recipe(figure) {
        let dir = out.join(&named.name);
        std::fs::create_dir_all(&dir).map_err(|e| CatError::io(&dir, e))?;
        let mut stored = named.config.clone();
        stored.output_dir = PathBuf::from(".");
        let path = dir.join("config.toml");
        std::fs::write(&path, stored.to_toml()).map_err(|e| CatError::io(&path, e))?;
        if dry_run {
            println!("wrote {}", path.display());
            continue;
        }
        let config = ExperimentConfig {
            output_dir: dir.clone(),
            ..named.config
        };
        let result = run_experiment(&config)?;
        let last = result.mean.last().expect("t = 0 is always recorded");
        println!(
            "{}: f({}) = {:.6}, fa = {:.6}",
            named.name, last.t, last.f, last.fa
        );
    }
    Ok(())
}

fn run_verify(n_q: usize, steps: usize, dump: Option<&Path>) -> Result<(), Failure> {
    let report = verify(n_q, steps)?;
    println!("{report}");
    if let Some(path) = dump {
        let circuit = build_cat_iteration(&RegisterLayout::new(n_q)?);
        std::fs::write(path, circuit.dump()).map_err(|e| CatError::io(path, e))?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::VerifyFailed)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let message = e.kind().as_str().unwrap_or("invalid arguments");
            eprintln!(
                "{}",
                serde_json::json!({"error": "usage", "message": message})
            );
            return ExitCode::from(1);
        }
    };
    let outcome = match &cli.command {
        Command::Run { config } => run(config),
        Command::Recipe {
            figure,
            out,
            dry_run,
        } => run_recipe(*figure, out, *dry_run),
        Command::Verify {
            n_q,
            steps,
            dump_circuit,
        } => run_verify(*n_q, *steps, dump_circuit.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.json());
            ExitCode::from(failure.exit_code())
        }
    }
}
