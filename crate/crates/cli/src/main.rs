use clap::{Parser, Subcommand};
use lie2alg_cli::commands::{run, Command, Demo, Options, PontryaginTask, VerifyTarget};
use lie2alg_cli::{bundled, emit};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact verification of Lie 2-algebroid, Pontryagin 5-form and CLWX identities.
#[derive(Parser)]
#[command(name = "lie2alg", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Chart dimension; overrides the file's `chart` key (default 6).
    #[arg(long, global = true)]
    chart_dim: Option<usize>,
    /// Emit the report as JSON.
    #[arg(long, global = true, conflicts_with = "md")]
    json: bool,
    /// Emit the report as Markdown.
    #[arg(long, global = true)]
    md: bool,
    /// Seed for randomized inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximal coefficient degree of randomized inputs.
    #[arg(long, global = true, default_value_t = 2)]
    max_degree: u32,
    /// Include wall times (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of the structure in FILE.
    Verify { target: VerifyTarget, file: PathBuf },
    /// Pontryagin 5-form computations; without FILE a seeded so(3) pair is used.
    Pontryagin { task: PontryaginTask, file: Option<PathBuf> },
    /// Run every applicable check on a bundled example.
    Demo {
        which: Demo,
        /// Print the bundled spec file instead of running it.
        #[arg(long)]
        print_spec: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { chart_dim: cli.chart_dim, seed: cli.seed, max_degree: cli.max_degree };
    let cmd = match cli.cmd {
        Cmd::Verify { target, file } => Command::Verify(target, file),
        Cmd::Pontryagin { task, file } => Command::Pontryagin(task, file),
        Cmd::Demo { which, print_spec: true } => {
            let name = match which {
                Demo::So3 => "so3",
                Demo::Abelian => "abelian",
                Demo::Heisenberg => "heisenberg",
            };
            let src = bundled::ALL.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).unwrap_or_default();
            print!("{src}");
            return ExitCode::SUCCESS;
        }
        Cmd::Demo { which, .. } => Command::Demo(which),
    };
    match run(&cmd, &opts) {
        Ok(outcome) => {
            let s = if cli.json {
                emit::json(&outcome, cli.timings)
            } else if cli.md {
                emit::markdown(&outcome, cli.timings)
            } else {
                emit::text(&outcome, cli.timings)
            };
            print!("{s}");
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
