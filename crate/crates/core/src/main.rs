use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use eccn_core::harness::{
    bounds_output, cmd_eval, cmd_generate, cmd_solve, cmd_train, report_csv, run_report,
    write_atomic, BoundsRequest, ExperimentManifest, Scenario, SolveMethod,
};
use eccn_core::learn::{LabeledDataset, TrainConfig};
use eccn_core::rnn::load_checkpoint;
use eccn_core::{Error, Result};

#[derive(Parser)]
#[command(name = "eccn", version, about = "Edge clique cover datasets, solvers, bounds and RNN training")]
struct Cli {
    /// Dataset seed for `generate`, split seed for `train`, `eval` and `report`.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Labelling threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Output file (directory for `train`); stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Kellerman,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    Sparse,
    Medium,
    Dense,
    Mixed,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an exactly labelled Erdős–Rényi dataset.
    Generate {
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, value_enum)]
        scenario: Option<ScenarioArg>,
        /// Edge probabilities, comma separated.
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<f64>>,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Exact-solver clique selections per graph.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Cover every graph of a record file.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the bound chain for an architecture.
    Bounds {
        /// Size-adaptive network on graphs with at most `-n` vertices.
        #[arg(long)]
        graph: bool,
        #[arg(short = 'n')]
        n: Option<usize>,
        #[arg(short = 'd', default_value_t = 1)]
        d: usize,
        /// Layer widths, comma separated.
        #[arg(short = 'a', value_delimiter = ',')]
        a: Option<Vec<usize>>,
        /// Maximum input length.
        #[arg(short = 'b')]
        b: Option<usize>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long)]
        csv: bool,
    },
    /// Train a model on the seeded split of a dataset.
    Train {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Gaussian noise on the training labels (normalised scale).
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
    },
    /// Test-split MSE of a checkpoint against the baselines.
    Eval {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        checkpoint: PathBuf,
    },
    /// Training-size and noise sweeps as long-form CSV.
    Report {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<TrainConfig> {
    path.map_or_else(|| Ok(TrainConfig::default()), TrainConfig::load)
}

fn run(cli: Cli) -> Result<()> {
    let out = cli.out.as_deref();
    let split_seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::Generate {
            manifest,
            scenario,
            p,
            n_min,
            n_max,
            samples,
            budget,
        } => {
            let mut m = match &manifest {
                Some(path) => ExperimentManifest::load(path)?,
                None => ExperimentManifest::default(),
            };
            if let Some(s) = scenario {
                let s = match s {
                    ScenarioArg::Sparse => Scenario::Sparse,
                    ScenarioArg::Medium => Scenario::Medium,
                    ScenarioArg::Dense => Scenario::Dense,
                    ScenarioArg::Mixed => Scenario::Mixed,
                };
                m.scenario = s;
                m.p_values = s.default_p();
            }
            if let Some(p) = p {
                m.p_values = p;
            }
            m.n_min = n_min.unwrap_or(m.n_min);
            m.n_max = n_max.unwrap_or(m.n_max);
            m.samples = samples.unwrap_or(m.samples);
            m.budget = budget.or(m.budget);
            m.seed = cli.seed.unwrap_or(m.seed);
            let out = out.ok_or_else(|| Error::InvalidArgument("generate needs --out".into()))?;
            let g = cmd_generate(&m, cli.workers, out)?;
            eprintln!("{}", g.summary());
        }
        Command::Solve {
            input,
            method,
            budget,
        } => {
            let method = match method {
                Method::Exact => SolveMethod::Exact,
                Method::Kellerman => SolveMethod::Kellerman,
            };
            emit(out, &cmd_solve(&input, method, budget)?)?;
        }
        Command::Bounds {
            graph,
            n,
            d,
            a,
            b,
            eps,
            delta,
            csv,
        } => {
            let req = if graph {
                let n = n.ok_or_else(|| Error::InvalidArgument("--graph needs -n".into()))?;
                BoundsRequest::Graph { n, d }
            } else {
                let widths = a.ok_or_else(|| Error::InvalidArgument("give --graph -n N or -a WIDTHS -b LEN".into()))?;
                let b = b.ok_or_else(|| Error::InvalidArgument("-a needs -b".into()))?;
                BoundsRequest::Shape { widths, b }
            };
            emit(out, &bounds_output(&req, eps, delta, csv)?)?;
        }
        Command::Train {
            dataset,
            config,
            sigma,
        } => {
            let d = LabeledDataset::load(&dataset)?;
            let c = load_config(config.as_deref())?;
            let dir = out.unwrap_or(Path::new("."));
            let s = cmd_train(&d, &c, split_seed, sigma, dir)?;
            println!(
                "epochs {}  best epoch {}  train_mse {:e}  val_mse {:e}\ncheckpoint {}\nhistory {}",
                s.epochs,
                s.best_epoch,
                s.train_mse,
                s.val_mse,
                s.checkpoint.display(),
                s.history.display()
            );
        }
        Command::Eval {
            dataset,
            checkpoint,
        } => {
            let d = LabeledDataset::load(&dataset)?;
            let model = load_checkpoint(&checkpoint)?;
            emit(out, &cmd_eval(&d, &model, split_seed)?.to_csv())?;
        }
        Command::Report {
            dataset,
            manifest,
            config,
        } => {
            let d = LabeledDataset::load(&dataset)?;
            let m = ExperimentManifest::load(&manifest)?;
            let c = load_config(config.as_deref())?;
            emit(out, &report_csv(&run_report(&d, &m, &c, split_seed)?))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
