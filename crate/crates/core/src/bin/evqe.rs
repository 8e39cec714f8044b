use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use evqe::harness::{ablate_command, exit_code, oracle_command, run_command, with_workers, Experiment};
use evqe::Error;

#[derive(Parser)]
#[command(name = "evqe", version, about = "Evolutionary variational quantum eigensolver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured algorithm and write generations.csv and summary.json.
    Run(Common),
    /// Print the exact ground energy (and optimal cut for Max-Cut problems).
    Oracle(Common),
    /// Compare identity-initialized and fixed-CX growth on shared seeds.
    Ablate(Common),
}

#[derive(Args)]
struct Common {
    config: PathBuf,
    /// Master seed; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory; overrides output.dir.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (Command::Run(c) | Command::Oracle(c) | Command::Ablate(c)) = &cli.command;
    let exp = match Experiment::load(&c.config) {
        Ok(e) => e,
        Err(e) => return fail(&e),
    };
    let seed = c.seed.unwrap_or(exp.config.seed);
    let out_dir = exp.out_dir(c.out_dir.as_deref());
    let result = with_workers(c.workers, || -> evqe::Result<()> {
        match &cli.command {
            Command::Run(_) => {
                let s = run_command(&exp, seed, &out_dir)?;
                println!("best_energy {}", s.best_energy);
                if let Some(err) = s.error {
                    println!("error {err}");
                }
                println!("wrote {}", out_dir.display());
            }
            Command::Oracle(_) => print!("{}", oracle_command(&exp)?),
            Command::Ablate(_) => {
                let a = ablate_command(&exp, seed, &out_dir)?;
                println!("median_final_error_standard {}", a.median_final_standard());
                println!("median_final_error_cx {}", a.median_final_cx());
                println!("wrote {}", out_dir.display());
            }
        }
        Ok(())
    });
    match result.and_then(|r| r) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e) as u8)
}
