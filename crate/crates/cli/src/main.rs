use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod run;

#[derive(Parser, Debug)]
#[command(name = "ramsey-forge", version, about = "Constructions and exact small-scale search for oriented Ramsey numbers")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized step; randomized commands refuse to run without it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Abort with exit code 2 after this many seconds.
    #[arg(long = "timeout-s", global = true)]
    pub timeout_s: Option<u64>,
    /// Primary input file.
    #[arg(short = 'i', long = "input", global = true)]
    pub input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Interval meshes.
    #[command(subcommand)]
    Mesh(MeshCmd),
    /// Tournament constructions and queries.
    #[command(subcommand)]
    Tourney(TourneyCmd),
    /// Greedy embedding and dense pairs.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Prefix labelings and skeletons.
    #[command(subcommand)]
    Prefix(PrefixCmd),
    /// Constrained walks.
    #[command(subcommand)]
    Walk(WalkCmd),
    /// Random oriented graphs.
    #[command(subcommand)]
    Random(RandomCmd),
    /// Ramsey numbers.
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Re-check a certificate against its inputs.
    Validate {
        #[arg(long)]
        cert: PathBuf,
        /// `name=file`, once per input the certificate names.
        #[arg(long = "input-file", value_parser = parse_named)]
        inputs: Vec<(String, PathBuf)>,
    },
}

fn parse_named(s: &str) -> Result<(String, PathBuf), String> {
    let (name, path) = s.split_once('=').ok_or_else(|| format!("expected name=file, got {s:?}"))?;
    Ok((name.to_string(), PathBuf::from(path)))
}

#[derive(Subcommand, Debug)]
pub enum MeshCmd {
    Build {
        /// `const:<c>`, `growth:<t>` or `table:<v1>,<v2>,…`.
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: usize,
    },
    Verify {
        #[arg(long)]
        f: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum TourneyCmd {
    Gen {
        #[arg(long)]
        n: usize,
    },
    Paley {
        #[arg(long)]
        q: u64,
    },
    /// Lexicographic power of the input tournament.
    Power {
        #[arg(long)]
        m: u32,
    },
    Maxtt,
    Median,
    Contains {
        #[arg(long)]
        pattern: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum EmbedCmd {
    Greedy {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        c: f64,
    },
    DensePair {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        c: f64,
    },
    /// Oriented forest into the whole host, or a 1-dense pair.
    Forest {
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Inner embedding stage. Without -i a threshold instance is generated from --seed.
    Inner {
        #[arg(long)]
        pattern: PathBuf,
        /// Where the generated host goes.
        #[arg(long)]
        host_out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PrefixCmd {
    Stats {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
    },
    HeightColor {
        #[arg(long)]
        pattern: PathBuf,
    },
    GradedColor {
        #[arg(long)]
        pattern: PathBuf,
    },
    Skeleton {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long)]
        c: f64,
        /// Refuse hosts below the guaranteed size.
        #[arg(long)]
        enforce: bool,
    },
    Pipeline {
        #[arg(long)]
        pattern: PathBuf,
        /// Defaults to the height coloring.
        #[arg(long)]
        labeling: Option<PathBuf>,
        #[arg(long)]
        enforce: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum WalkCmd {
    Check {
        #[arg(long)]
        walk: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        s: u64,
    },
    /// Embeds the input mesh into lex_power(base, m) and projects the copy to a walk in base.
    Extract {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        f: String,
    },
    Search {
        #[arg(long)]
        f: String,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum RandomCmd {
    /// Random d-regular graph, forward-oriented. With --trials, reports how often the pairing was simple.
    Grd {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: Option<u64>,
    },
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Components of the subgraph induced by vertices from..=to (1-based).
    Components {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    ForestPartition {
        #[arg(long)]
        d: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Search,
}

#[derive(Args, Debug, Clone)]
pub struct RamseyArgs {
    /// Pattern file; `ordered` accepts one per color (or one for all colors).
    #[arg(long, required = true)]
    pub pattern: Vec<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long = "max-n", default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    pub mode: Mode,
    /// Annealing steps per restart in search mode.
    #[arg(long, default_value_t = 200_000)]
    pub steps: u64,
    #[arg(long, default_value_t = 8)]
    pub restarts: u64,
}

#[derive(Subcommand, Debug)]
pub enum RamseyCmd {
    R1(RamseyArgs),
    Rk(RamseyArgs),
    Ordered(RamseyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::new().filter("RAMSEY_FORGE_LOG")).init();
    if let Some(k) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let timeout = cli.global.timeout_s;
    let (tx, rx) = mpsc::channel();
    // walk search recurses once per run
    let spawned = std::thread::Builder::new().stack_size(1 << 30).spawn(move || {
        let _ = tx.send(run::dispatch(&cli));
    });
    if let Err(e) = spawned {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match timeout {
        Some(s) => match rx.recv_timeout(Duration::from_secs(s)) {
            Ok(o) => o,
            Err(mpsc::RecvTimeoutError::Timeout) => {
                eprintln!("error: timed out after {s} s");
                return ExitCode::from(2);
            }
            Err(mpsc::RecvTimeoutError::Disconnected) => return ExitCode::from(2),
        },
        // a panicking worker drops the sender
        None => match rx.recv() {
            Ok(o) => o,
            Err(_) => return ExitCode::from(2),
        },
    };
    match outcome {
        Ok(run::Outcome::Positive) => ExitCode::SUCCESS,
        Ok(run::Outcome::Negative(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
