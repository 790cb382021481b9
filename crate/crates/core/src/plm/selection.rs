use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::chain::ChainOutput;
use crate::error::{Error, Result};

/// A subset of predictors, stored as inclusion flags.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GammaPattern(pub Vec<bool>);

impl GammaPattern {
    /// One-based indices of included predictors.
    pub fn included(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &g)| g.then_some(i + 1))
            .collect()
    }

    pub fn from_included(p: usize, included: &[usize]) -> Self {
        let mut flags = vec![false; p];
        for &i in included {
            flags[i - 1] = true;
        }
        Self(flags)
    }
}

/// `x1,x3,x4`; the empty model prints as `none`.
impl fmt::Display for GammaPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.included().iter().map(|i| format!("x{i}")).collect();
        if names.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&names.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelFrequency {
    pub pattern: GammaPattern,
    pub count: usize,
    pub frequency: f64,
}

/// Every visited pattern, most frequent first; ties keep first-visit order.
pub fn pattern_frequencies(chain: &ChainOutput) -> Vec<ModelFrequency> {
    if chain.p == 0 {
        // only the empty model exists
        return vec![ModelFrequency {
            pattern: GammaPattern(Vec::new()),
            count: chain.n_kept,
            frequency: 1.0,
        }];
    }
    tabulate(&chain.gamma_draws, chain.p)
}

/// Same as [`pattern_frequencies`] on row-major flags with `p > 0` per draw.
pub fn tabulate(gamma_draws: &[bool], p: usize) -> Vec<ModelFrequency> {
    assert!(p > 0, "tabulate needs at least one predictor");
    let n_draws = gamma_draws.len() / p;
    let mut slot: HashMap<&[bool], usize> = HashMap::new();
    let mut table: Vec<(&[bool], usize)> = Vec::new();
    for g in gamma_draws.chunks_exact(p) {
        match slot.get(g) {
            Some(&s) => table[s].1 += 1,
            None => {
                slot.insert(g, table.len());
                table.push((g, 1));
            }
        }
    }
    // stable sort preserves first-visit order among equal counts
    table.sort_by_key(|t| std::cmp::Reverse(t.1));
    let total = n_draws as f64;
    table
        .into_iter()
        .map(|(g, count)| ModelFrequency {
            pattern: GammaPattern(g.to_vec()),
            count,
            frequency: count as f64 / total,
        })
        .collect()
}

/// The `k` highest-frequency models.
pub fn select_models(chain: &ChainOutput, k: usize) -> Result<Vec<ModelFrequency>> {
    if chain.n_kept == 0 {
        return Err(Error::Input("the chain has no kept draws".to_string()));
    }
    if k < 1 {
        return Err(Error::Input("the number of models must be at least 1".to_string()));
    }
    let mut all = pattern_frequencies(chain);
    all.truncate(k);
    Ok(all)
}
