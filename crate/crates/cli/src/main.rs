//! `cliquecap`: clique and independent-set counts, exhaustive verification
//! of the degree-capped clique bound, tight-clique rewrites and graph
//! generation.

mod commands;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};

use commands::{CliError, CliResult, Context, Format, Mode, Strategy, SweepArgs};

#[derive(Parser)]
#[command(name = "cliquecap", version, about = "Clique counts in graphs of bounded maximum degree")]
struct Cli {
    /// Worker threads for generation and sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format; `gen` prints bare graph6 lines unless this is given.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Checkpoint file for `verify --sweep`.
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clique and independent-set vectors of graph6 input, one graph per line.
    Count {
        /// Input file; standard input when absent or `-`.
        input: Option<PathBuf>,
        /// Also list tight cliques and clusters for the degree cap `-r`.
        #[arg(long, requires = "r")]
        tight: bool,
        #[arg(short)]
        r: Option<usize>,
    },
    /// Check the bound on all graphs with `n` vertices and maximum degree at
    /// most `r`, or run the full consistency sweep.
    #[command(group(ArgGroup::new("target").required(true).args(["n", "sweep"])))]
    Verify {
        #[arg(requires = "r")]
        n: Option<usize>,
        r: Option<usize>,
        /// Sweep every `n <= N_MAX`, `r <= R_MAX`.
        #[arg(long, num_args = 2, value_names = ["N_MAX", "R_MAX"], conflicts_with = "n")]
        sweep: Option<Vec<usize>>,
        /// Largest `R` for the fixed-loss checks (default: min(N_MAX, 7)).
        #[arg(long, requires = "sweep")]
        s_max: Option<usize>,
        /// Failure witnesses kept per check.
        #[arg(long, requires = "sweep")]
        witness_limit: Option<usize>,
        /// Stop after this many new sweep units; resume with --checkpoint.
        #[arg(long, requires = "sweep")]
        max_units: Option<usize>,
    },
    /// Apply a rewrite to one graph, or hill-climb the clique count.
    #[command(group(ArgGroup::new("mode").required(true).args(["greedy", "tight"])))]
    Transform {
        /// graph6 string; otherwise the first line of --input or standard input.
        graph: Option<String>,
        #[arg(long, conflicts_with = "graph")]
        input: Option<PathBuf>,
        #[arg(short)]
        r: usize,
        /// Repeat improving moves until none is left.
        #[arg(long)]
        greedy: bool,
        #[arg(long, value_enum, default_value_t = Strategy::First, requires = "greedy")]
        strategy: Strategy,
        #[arg(long, default_value_t = 1000, requires = "greedy")]
        max_steps: usize,
        /// Apply the rewrite for the tight clique `T`, given as `0,1,2`.
        #[arg(long = "move", value_name = "T", value_delimiter = ',')]
        tight: Option<Vec<usize>>,
        /// Use the K_2 move on the component `U,V` of R_T instead.
        #[arg(long, value_name = "U,V", value_delimiter = ',', num_args = 1, requires = "tight")]
        k2: Option<Vec<usize>>,
    },
    /// One graph6 line per isomorphism class with `n` vertices and maximum
    /// degree at most `r`.
    Gen {
        n: usize,
        r: usize,
        /// Keep only the `d`-regular graphs.
        #[arg(long, value_name = "D")]
        regular: Option<usize>,
    },
    /// Cross-check the counting routines against subset enumeration on
    /// random graphs.
    Oracle {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        graphs: usize,
        /// Edge probability; drawn per graph from [0.05, 0.95) when absent.
        #[arg(long)]
        density: Option<f64>,
    },
}

fn run(cli: Cli, argv: Vec<String>) -> CliResult {
    let out: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut ctx = Context {
        argv,
        format: cli.format,
        workers: cli.workers,
        seed: cli.seed,
        checkpoint: cli.checkpoint,
        out,
        start: Instant::now(),
    };
    match cli.command {
        Command::Count { input, tight, r } => commands::count(&mut ctx, input.as_deref(), tight, r),
        Command::Verify { n: Some(n), r: Some(r), .. } => commands::verify_single(&mut ctx, n, r),
        Command::Verify { sweep: Some(s), s_max, witness_limit, max_units, .. } => commands::verify_sweep(
            &mut ctx,
            SweepArgs { n_max: s[0], r_max: s[1], s_max, witness_limit, max_units },
        ),
        Command::Verify { .. } => Err(CliError::Usage("verify needs N R or --sweep N_MAX R_MAX".into())),
        Command::Transform { graph, input, r, greedy, strategy, max_steps, tight, k2 } => {
            let graph6 = match graph {
                Some(g) => g,
                None => commands::first_graph6(&commands::read_input(input.as_deref())?)?,
            };
            let mode = match (greedy, tight) {
                (true, _) => Mode::Greedy { strategy, max_steps },
                (false, Some(t)) => {
                    let k2 = match k2.as_deref() {
                        None => None,
                        Some(&[u, v]) => Some((u, v)),
                        Some(_) => return Err(CliError::Usage("--k2 takes exactly two vertices".into())),
                    };
                    Mode::Move { tight: t, k2 }
                }
                (false, None) => unreachable!("clap requires --greedy or --move"),
            };
            commands::transform(&mut ctx, &graph6, r, mode)
        }
        Command::Gen { n, r, regular } => commands::gen(&mut ctx, n, r, regular),
        Command::Oracle { n, graphs, density } => commands::oracle(&mut ctx, n, graphs, density),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    match run(cli, argv) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("cliquecap: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
