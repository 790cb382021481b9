//! `wplm`: fit, select and simulate with the Bayesian partially linear wavelet model.

mod data;
mod failure;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wavelet_plm::plm::{
    pilot_estimates, run_chain, ChainOutput, Hyperparameters, ModelInput, DEFAULT_BURN_IN, DEFAULT_ITERATIONS,
};
use wavelet_plm::simbench::{run_benchmark, ScenarioSpec, DESK_BURN_IN, DESK_ITERATIONS, DESK_REPLICATIONS};
use wavelet_plm::wavelet::{build_filter, default_j0, Family, FilterBank};

use failure::Failure;

#[derive(Parser)]
#[command(name = "wplm", version, about = "Bayesian partially linear wavelet regression")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the model and write posterior summaries as JSON.
    Fit(FitArgs),
    /// Rank predictor subsets by posterior frequency.
    Select {
        #[command(flatten)]
        fit: FitArgs,
        /// Number of models to report.
        #[arg(long = "topk", default_value_t = 10)]
        top_k: usize,
    },
    /// Run a simulation scenario such as `example1-heavisine-128`.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct FitArgs {
    /// CSV with header `Y,x1,...,xp`, one row per observation ordered by t.
    #[arg(long)]
    input: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Wavelet filter: haar, db4, db6, db8 or sym8.
    #[arg(long, default_value = "sym8")]
    filter: String,
    /// Coarsest level; defaults to floor(log2(ln n) + 1).
    #[arg(long)]
    j0: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    iters: usize,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burnin: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    priors: PriorOverrides,
}

/// Replace individual data-driven hyperparameters.
#[derive(Args)]
struct PriorOverrides {
    #[arg(long)]
    a1: Option<f64>,
    #[arg(long)]
    b1: Option<f64>,
    #[arg(long)]
    a2: Option<f64>,
    #[arg(long)]
    b2: Option<f64>,
    #[arg(long)]
    a3: Option<f64>,
    #[arg(long)]
    b3: Option<f64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    scenario: String,
    /// Output file (`.json` for JSON, anything else CSV); stdout CSV when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = DESK_REPLICATIONS)]
    reps: usize,
    #[arg(long, default_value_t = DESK_ITERATIONS)]
    iters: usize,
    #[arg(long, default_value_t = DESK_BURN_IN)]
    burnin: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

pub struct Fitted {
    pub input: ModelInput,
    pub hyper: Hyperparameters,
    pub filter: FilterBank,
    pub predictors: Vec<String>,
    pub chain: ChainOutput,
}

fn fit(args: &FitArgs) -> Result<Fitted, Failure> {
    let family = Family::parse(&args.filter)?;
    let filter = build_filter(family)?;
    let table = data::read_table(&args.input)?;
    let n = table.y.len();
    let j0 = args.j0.unwrap_or_else(|| default_j0(n));
    let input = ModelInput::from_data(&table.y, &table.x, &filter, j0)?;
    let mut hyper = pilot_estimates(&table.y, &table.x, &filter, j0)?
        .hyperparameters()
        .with_run(args.iters, args.burnin, args.seed);
    let o = &args.priors;
    for (slot, value) in [
        (&mut hyper.a1, o.a1),
        (&mut hyper.b1, o.b1),
        (&mut hyper.a2, o.a2),
        (&mut hyper.b2, o.b2),
        (&mut hyper.a3, o.a3),
        (&mut hyper.b3, o.b3),
    ] {
        if let Some(v) = value {
            *slot = v;
        }
    }
    let chain = run_chain(&input, &hyper)?;
    Ok(Fitted {
        input,
        hyper,
        filter,
        predictors: table.predictors,
        chain,
    })
}

fn simulate(args: &SimulateArgs) -> Result<String, Failure> {
    let mut spec = ScenarioSpec::parse(&args.scenario)?;
    spec.replications = args.reps;
    spec.n_iter = args.iters;
    spec.burn_in = args.burnin;
    spec.seed = args.seed;
    let result = run_benchmark(&spec)?;
    if report::wants_json(args.output.as_deref()) {
        report::benchmark_json(&result)
    } else {
        report::benchmark_csv(&result)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Fit(args) => {
            let fitted = fit(&args)?;
            let text = report::fit_json(&fitted)?;
            report::emit(args.output.as_deref(), &text)
        }
        Command::Select { fit: args, top_k } => {
            if top_k < 1 {
                return Err(Failure::input("--topk must be at least 1".to_string()));
            }
            let fitted = fit(&args)?;
            let text = if report::wants_json(args.output.as_deref()) {
                report::select_json(&fitted, top_k)?
            } else {
                report::select_csv(&fitted, top_k)?
            };
            report::emit(args.output.as_deref(), &text)
        }
        Command::Simulate(args) => {
            let text = simulate(&args)?;
            report::emit(args.output.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wplm: {e}");
            ExitCode::from(e.code)
        }
    }
}
