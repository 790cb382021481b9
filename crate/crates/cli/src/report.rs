use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use wavelet_plm::plm::{select_models, Hyperparameters};
use wavelet_plm::simbench::BenchmarkResult;

use crate::failure::Failure;
use crate::Fitted;

/// Bumped only on incompatible changes to the output layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct ChainMeta {
    seed: u64,
    iterations: usize,
    burn_in: usize,
    kept: usize,
}

#[derive(Serialize)]
struct Priors {
    a1: f64,
    b1: f64,
    a2: f64,
    b2: f64,
    a3: f64,
    b3: f64,
}

impl From<&Hyperparameters> for Priors {
    fn from(h: &Hyperparameters) -> Self {
        Self {
            a1: h.a1,
            b1: h.b1,
            a2: h.a2,
            b2: h.b2,
            a3: h.a3,
            b3: h.b3,
        }
    }
}

#[derive(Serialize)]
struct FitReport<'a> {
    schema_version: u32,
    n: usize,
    p: usize,
    filter: String,
    j0: usize,
    chain: ChainMeta,
    hyperparameters: Priors,
    predictors: &'a [String],
    beta_hat: &'a [f64],
    beta_sd: Vec<f64>,
    inclusion_prob: &'a [f64],
    sigma2_hat: f64,
    tau_theta_hat: f64,
    theta_hat: &'a [f64],
    y_hat: &'a [f64],
    f_hat: &'a [f64],
}

#[derive(Serialize)]
struct ModelRow {
    rank: usize,
    model: String,
    included: Vec<String>,
    count: usize,
    frequency: f64,
}

#[derive(Serialize)]
struct SelectReport<'a> {
    schema_version: u32,
    n: usize,
    p: usize,
    chain: ChainMeta,
    predictors: &'a [String],
    models: Vec<ModelRow>,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn chain_meta(f: &Fitted) -> ChainMeta {
    ChainMeta {
        seed: f.chain.seed,
        iterations: f.chain.n_iter,
        burn_in: f.chain.burn_in,
        kept: f.chain.n_kept,
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn fit_json(f: &Fitted) -> Result<String, Failure> {
    let c = &f.chain;
    to_json(&FitReport {
        schema_version: SCHEMA_VERSION,
        n: f.input.n(),
        p: f.input.p(),
        filter: f.filter.family().short_name(),
        j0: f.input.j0(),
        chain: chain_meta(f),
        hyperparameters: Priors::from(&f.hyper),
        predictors: &f.predictors,
        beta_hat: &c.beta_hat,
        beta_sd: c.beta_sd(),
        inclusion_prob: &c.inclusion_prob,
        sigma2_hat: mean(&c.sigma2_draws),
        tau_theta_hat: mean(&c.tau_theta_draws),
        theta_hat: &c.theta_hat,
        y_hat: &c.y_hat,
        f_hat: &c.f_hat,
    })
}

fn model_rows(f: &Fitted, k: usize) -> Result<Vec<ModelRow>, Failure> {
    let models = select_models(&f.chain, k)?;
    Ok(models
        .into_iter()
        .enumerate()
        .map(|(r, m)| {
            let included: Vec<String> = m.pattern.included().iter().map(|&i| f.predictors[i - 1].clone()).collect();
            let model = if included.is_empty() {
                "none".to_string()
            } else {
                included.join(",")
            };
            ModelRow {
                rank: r + 1,
                model,
                included,
                count: m.count,
                frequency: m.frequency,
            }
        })
        .collect())
}

pub fn select_json(f: &Fitted, k: usize) -> Result<String, Failure> {
    to_json(&SelectReport {
        schema_version: SCHEMA_VERSION,
        n: f.input.n(),
        p: f.input.p(),
        chain: chain_meta(f),
        predictors: &f.predictors,
        models: model_rows(f, k)?,
    })
}

pub fn select_csv(f: &Fitted, k: usize) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Failure::io(e.to_string());
    w.write_record(["rank", "model", "count", "frequency"]).map_err(err)?;
    for row in model_rows(f, k)? {
        w.write_record([
            row.rank.to_string(),
            row.model,
            row.count.to_string(),
            format!("{:.4}", row.frequency),
        ])
        .map_err(err)?;
    }
    finish_csv(w)
}

pub fn benchmark_json(r: &BenchmarkResult) -> Result<String, Failure> {
    to_json(r)
}

pub fn benchmark_csv(r: &BenchmarkResult) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.serialize(r).map_err(|e| Failure::io(e.to_string()))?;
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w.into_inner().map_err(|e| Failure::io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::io(e.to_string()))
}

pub fn wants_json(path: Option<&Path>) -> bool {
    path.and_then(|p| p.extension())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Write `text` to `path` through a sibling temporary file, or to stdout.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let Some(path) = path else {
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::io(format!("cannot write to stdout: {e}")))?;
        return Ok(());
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = Path::new(&tmp);
    let result = fs::write(tmp, text).and_then(|()| fs::rename(tmp, path));
    result.map_err(|e| {
        let _ = fs::remove_file(tmp);
        Failure::io(format!("cannot write {}: {e}", path.display()))
    })
}
