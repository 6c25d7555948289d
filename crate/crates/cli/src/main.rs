use clap::{Parser, Subcommand};
use ramcc_cli::report::render;
use ramcc_cli::run::{run, Command, RunOptions};
use rayon::prelude::*;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ramcc", version, about = "Swan conductors and characteristic cycles of local extensions")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args)]
struct Common {
    /// Input files in the .ramcc format.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// t-adic precision; overrides the file and RAMCC_PRECISION.
    #[arg(long)]
    precision: Option<i64>,
    /// Seed for the randomized factorization steps.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of files processed in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and check an input without computing invariants.
    Validate(Common),
    /// Galois group, jumps, u-values, conductor and the tower.
    Invariants(Common),
    /// Swan class, integrality and kcc for each representation.
    Swan(Common),
    /// Slope decomposition, refined Swan conductors and cc.
    Cc(Common),
    /// Check cc = kcc for each representation.
    Compare(Common),
    /// Euler characteristic of nearby cycles on a triple.
    Nearby(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Validate(a) => (Command::Validate, a),
        Cmd::Invariants(a) => (Command::Invariants, a),
        Cmd::Swan(a) => (Command::Swan, a),
        Cmd::Cc(a) => (Command::Cc, a),
        Cmd::Compare(a) => (Command::Compare, a),
        Cmd::Nearby(a) => (Command::Nearby, a),
    };
    let env_precision = match std::env::var("RAMCC_PRECISION") {
        Ok(s) => match s.trim().parse() {
            Ok(v) => Some(v),
            Err(_) => {
                eprintln!("ramcc: RAMCC_PRECISION must be an integer, got {s:?}");
                return ExitCode::from(2);
            }
        },
        Err(_) => None,
    };
    let opts = RunOptions { precision: args.precision, env_precision, seed: args.seed, timings: args.timings };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs.max(1)).build().expect("thread pool");
    let results: Vec<_> = pool.install(|| {
        args.files
            .par_iter()
            .map(|path| {
                let shown = path.display().to_string();
                match std::fs::read_to_string(path) {
                    Err(e) => (2, Err(format!("{shown}: {e}"))),
                    Ok(text) => match run(&text, command, &opts) {
                        Ok(mut o) => {
                            o.report["file"] = json!(shown);
                            (o.status, Ok(o.report))
                        }
                        Err(e) => (e.exit_code(), Err(format!("{shown}: {e}"))),
                    },
                }
            })
            .collect()
    });
    let mut worst = 0;
    for (status, r) in results {
        worst = worst.max(status);
        match r {
            Ok(report) if args.json => println!("{}", serde_json::to_string_pretty(&report).expect("json")),
            Ok(report) => print!("{}", render(&report)),
            Err(msg) if args.json => {
                println!("{}", serde_json::to_string_pretty(&json!({ "error": msg, "status": status })).expect("json"))
            }
            Err(msg) => eprintln!("ramcc: {msg}"),
        }
    }
    ExitCode::from(worst as u8)
}
