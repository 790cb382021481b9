use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::scenario::{gen_dataset, Dataset, ScenarioSpec};
use super::score::{squared_error, summarize};
use crate::error::Result;
use crate::plm::{default_hyperparameters, run_chain, ChainOutput, ModelInput};
use crate::wavelet::build_filter;

/// Scores of one replicate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReplicateScore {
    /// `(1/n) Σ (Ŷ_i - Y_i)²`
    pub mse: f64,
    /// `Σ (β̂_i - β_i)²`
    pub beta_se: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkResult {
    pub scenario: String,
    pub signal: String,
    pub n: usize,
    #[serde(rename = "M")]
    pub replications: usize,
    #[serde(rename = "AMSE")]
    pub amse: f64,
    #[serde(rename = "AMSE_SE")]
    pub amse_se: f64,
    #[serde(rename = "AMSE_beta")]
    pub amse_beta: f64,
    #[serde(rename = "AMSE_beta_SE")]
    pub amse_beta_se: f64,
    pub seconds: f64,
    #[serde(skip)]
    pub replicates: Vec<ReplicateScore>,
}

/// Independent generator for replicate `m`: ChaCha stream `m + 1` under `seed`.
pub fn replicate_rng(seed: u64, m: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(m as u64 + 1);
    rng
}

/// Data, then a chain seed, both from the replicate's own stream.
pub fn replicate_data(spec: &ScenarioSpec, m: usize) -> (Dataset, u64) {
    let mut rng = replicate_rng(spec.seed, m);
    let data = gen_dataset(&mut rng, spec);
    (data, rng.next_u64())
}

/// Fit one data set with default hyperparameters and the scenario's run length.
pub fn fit_dataset(spec: &ScenarioSpec, data: &Dataset, chain_seed: u64) -> Result<ChainOutput> {
    let filter = build_filter(spec.filter)?;
    let input = ModelInput::from_data(&data.y, &data.x, &filter, spec.j0)?;
    let hyper = default_hyperparameters(&data.y, &data.x, &filter, spec.j0)?.with_run(
        spec.n_iter,
        spec.burn_in,
        chain_seed,
    );
    run_chain(&input, &hyper)
}

pub fn run_replicate(spec: &ScenarioSpec, m: usize) -> Result<ReplicateScore> {
    let (data, chain_seed) = replicate_data(spec, m);
    let out = fit_dataset(spec, &data, chain_seed)?;
    Ok(ReplicateScore {
        mse: squared_error(&out.y_hat, &data.truth)? / spec.n as f64,
        beta_se: squared_error(&out.beta_hat, &data.beta_true)?,
    })
}

/// Replicates run in parallel; results depend only on `spec`, not on thread count.
pub fn run_benchmark(spec: &ScenarioSpec) -> Result<BenchmarkResult> {
    spec.validate()?;
    let start = Instant::now();
    let replicates: Vec<ReplicateScore> = (0..spec.replications)
        .into_par_iter()
        .map(|m| run_replicate(spec, m))
        .collect::<Result<_>>()?;
    let seconds = start.elapsed().as_secs_f64();
    let mse: Vec<f64> = replicates.iter().map(|r| r.mse).collect();
    let beta: Vec<f64> = replicates.iter().map(|r| r.beta_se).collect();
    let a = summarize(&mse)?;
    let b = summarize(&beta)?;
    Ok(BenchmarkResult {
        scenario: spec.name.clone(),
        signal: spec.signal.name().to_string(),
        n: spec.n,
        replications: spec.replications,
        amse: a.value,
        amse_se: a.se,
        amse_beta: b.value,
        amse_beta_se: b.se,
        seconds,
        replicates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_run_is_finite_and_reproducible() {
        let mut spec = ScenarioSpec::parse("example1-heavisine-64").unwrap();
        spec.replications = 2;
        spec.n_iter = 200;
        spec.burn_in = 50;
        spec.seed = 11;
        let a = run_benchmark(&spec).unwrap();
        let b = run_benchmark(&spec).unwrap();
        assert!(a.amse.is_finite() && a.amse_beta.is_finite());
        assert!(a.amse >= 0.0 && a.amse_se >= 0.0);
        assert_eq!(a.replicates, b.replicates);
        assert_eq!(a.amse, b.amse);
    }

    #[test]
    fn replicate_streams_differ() {
        let spec = ScenarioSpec::parse("example2-bumps-128").unwrap();
        let (d0, s0) = replicate_data(&spec, 0);
        let (d1, s1) = replicate_data(&spec, 1);
        assert_ne!(d0.y, d1.y);
        assert_ne!(s0, s1);
        assert_eq!(replicate_data(&spec, 1).0, d1);
    }
}
