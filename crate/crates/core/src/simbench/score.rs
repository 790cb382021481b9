use serde::Serialize;

use crate::error::{Error, Result};

/// A Monte Carlo average with its standard error across replicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Score {
    pub value: f64,
    pub se: f64,
}

fn check_len(estimate: &[f64], truth: &[f64]) -> Result<()> {
    if estimate.len() != truth.len() {
        return Err(Error::Input(format!(
            "estimate has length {} but truth has length {}",
            estimate.len(),
            truth.len()
        )));
    }
    Ok(())
}

/// Per-replicate squared-error totals.
pub fn squared_error(estimate: &[f64], truth: &[f64]) -> Result<f64> {
    check_len(estimate, truth)?;
    Ok(estimate.iter().zip(truth).map(|(a, b)| (a - b) * (a - b)).sum())
}

/// Mean and standard error of per-replicate values.
pub fn summarize(values: &[f64]) -> Result<Score> {
    if values.is_empty() {
        return Err(Error::Input("at least one replicate is required".to_string()));
    }
    let m = values.len() as f64;
    let value = values.iter().sum::<f64>() / m;
    let se = if values.len() > 1 {
        let var = values.iter().map(|v| (v - value).powi(2)).sum::<f64>() / (m - 1.0);
        (var / m).sqrt()
    } else {
        0.0
    };
    Ok(Score { value, se })
}

/// `(1/(M n)) Σ_m Σ_i (Ŷ_i^(m) - Y_i^(m))²`, one truth per replicate.
pub fn amse_paired(estimates: &[Vec<f64>], truths: &[Vec<f64>]) -> Result<Score> {
    if estimates.len() != truths.len() {
        return Err(Error::Input("estimate and truth counts differ".to_string()));
    }
    let per: Vec<f64> = estimates
        .iter()
        .zip(truths)
        .map(|(e, t)| squared_error(e, t).map(|s| s / t.len() as f64))
        .collect::<Result<_>>()?;
    summarize(&per)
}

/// AMSE with the same truth for every replicate.
pub fn amse(estimates: &[Vec<f64>], truth: &[f64]) -> Result<Score> {
    let per: Vec<f64> = estimates
        .iter()
        .map(|e| squared_error(e, truth).map(|s| s / truth.len() as f64))
        .collect::<Result<_>>()?;
    summarize(&per)
}

/// `(1/M) Σ_m Σ_i (β̂_i^(m) - β_i)²`
pub fn amse_beta(estimates: &[Vec<f64>], truth: &[f64]) -> Result<Score> {
    let per: Vec<f64> = estimates
        .iter()
        .map(|e| squared_error(e, truth))
        .collect::<Result<_>>()?;
    summarize(&per)
}
