//! Simulation studies: standard test signals, synthetic partially linear
//! data sets and AMSE scoring over seeded replicates.

mod bench;
mod scenario;
mod score;
mod signals;

pub use bench::{
    fit_dataset, replicate_data, replicate_rng, run_benchmark, run_replicate, BenchmarkResult,
    ReplicateScore,
};
pub use scenario::{
    gen_dataset, gen_design, gen_example1, gen_example2, Dataset, Design, ScenarioSpec,
    DESK_BURN_IN, DESK_ITERATIONS, DESK_REPLICATIONS, SAMPLE_SIZES,
};
pub use score::{amse, amse_beta, amse_paired, squared_error, summarize, Score};
pub use signals::{jump_positions, test_function, test_function_by_name, Signal};
