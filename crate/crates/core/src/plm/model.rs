use std::ops::Range;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wavelet::{dwt, dyadic_log2, transform_design, CoefficientSet, FilterBank};

/// Calibration constant of the MAD noise estimator.
pub const MAD_TO_SD: f64 = 0.6745;
/// Cap on the pilot estimate of τ_θ when the signal variance does not exceed the noise.
pub const TAU_THETA_CAP: f64 = 1e6;

/// The regression system `d = U β + θ + ε̃` in the wavelet domain.
///
/// Only detail rows enter the likelihood; the scaling block is carried for
/// reconstruction.
#[derive(Debug, Clone)]
pub struct ModelInput {
    filter: FilterBank,
    n: usize,
    j0: usize,
    d: Vec<f64>,
    d_scaling: Vec<f64>,
    u: DMatrix<f64>,
    u_scaling: DMatrix<f64>,
    level_index: Vec<usize>,
}

impl ModelInput {
    /// Transform `y` and the columns of `x` with `filter` down to level `j0`.
    pub fn from_data(y: &[f64], x: &DMatrix<f64>, filter: &FilterBank, j0: usize) -> Result<Self> {
        validate_data(y, x)?;
        let coeffs = dwt(y, filter, j0)?;
        let u = transform_design(x, filter, j0)?;
        Self::from_wavelet(&coeffs, &u, filter)
    }

    /// Build from already transformed data: `coeffs = W y`, `u_full = W X`.
    pub fn from_wavelet(coeffs: &CoefficientSet, u_full: &DMatrix<f64>, filter: &FilterBank) -> Result<Self> {
        let n = coeffs.n();
        if u_full.nrows() != n {
            return Err(Error::Input(format!(
                "design has {} rows but there are {n} coefficients",
                u_full.nrows()
            )));
        }
        let j0 = coeffs.j0();
        let ns = 1 << j0;
        let nd = n - ns;
        let p = u_full.ncols();
        Ok(Self {
            filter: filter.clone(),
            n,
            j0,
            d: coeffs.details().to_vec(),
            d_scaling: coeffs.scaling().to_vec(),
            u: u_full.view((ns, 0), (nd, p)).into_owned(),
            u_scaling: u_full.view((0, 0), (ns, p)).into_owned(),
            level_index: crate::wavelet::detail_levels(n, j0),
        })
    }

    pub fn filter(&self) -> &FilterBank {
        &self.filter
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j0(&self) -> usize {
        self.j0
    }

    pub fn p(&self) -> usize {
        self.u.ncols()
    }

    /// Number of detail coefficients `2^J - 2^j0`.
    pub fn n_detail(&self) -> usize {
        self.d.len()
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn d_scaling(&self) -> &[f64] {
        &self.d_scaling
    }

    /// Detail rows of `W X`.
    pub fn u(&self) -> &DMatrix<f64> {
        &self.u
    }

    pub fn u_scaling(&self) -> &DMatrix<f64> {
        &self.u_scaling
    }

    pub fn u_column(&self, i: usize) -> &[f64] {
        let nd = self.d.len();
        &self.u.as_slice()[i * nd..(i + 1) * nd]
    }

    /// Resolution level of every detail position.
    pub fn level_index(&self) -> &[usize] {
        &self.level_index
    }

    /// Detail levels `j0..J`.
    pub fn levels(&self) -> Range<usize> {
        self.j0..self.n.trailing_zeros() as usize
    }

    /// Positions of level `j` inside the detail block.
    pub fn level_range(&self, j: usize) -> Range<usize> {
        let base = 1 << self.j0;
        ((1 << j) - base)..((2 << j) - base)
    }

    /// Full `W X` with scaling rows first.
    pub fn u_full(&self) -> DMatrix<f64> {
        let p = self.p();
        let ns = self.d_scaling.len();
        let mut full = DMatrix::zeros(self.n, p);
        full.view_mut((0, 0), (ns, p)).copy_from(&self.u_scaling);
        full.view_mut((ns, 0), (self.n_detail(), p)).copy_from(&self.u);
        full
    }

    /// Full `W y` with scaling coefficients first.
    pub fn d_full(&self) -> Vec<f64> {
        let mut full = self.d_scaling.clone();
        full.extend_from_slice(&self.d);
        full
    }
}

fn validate_data(y: &[f64], x: &DMatrix<f64>) -> Result<()> {
    dyadic_log2(y.len())?;
    if x.nrows() != y.len() {
        return Err(Error::Input(format!(
            "response has {} observations but design has {} rows",
            y.len(),
            x.nrows()
        )));
    }
    if y.iter().chain(x.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Input("data contain non-finite values".to_string()));
    }
    Ok(())
}

/// Hyperprior constants and run settings.
///
/// Inverse gamma priors use `IG(a, b)` with density
/// `x^{-a-1} e^{-1/(b x)} / (Γ(a) b^a)`, so the prior mean is `1/(b (a-1))`.
/// The gamma prior on τ_θ is `Ga(a3, b3)` with `b3` a scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperparameters {
    /// σ² ~ IG(a1, b1)
    pub a1: f64,
    pub b1: f64,
    /// η² ~ IG(a2, b2)
    pub a2: f64,
    pub b2: f64,
    /// τ_θ ~ Ga(a3, b3)
    pub a3: f64,
    pub b3: f64,
    pub n_iter: usize,
    pub burn_in: usize,
    pub seed: u64,
}

pub const DEFAULT_ITERATIONS: usize = 20_000;
pub const DEFAULT_BURN_IN: usize = 5_000;

impl Hyperparameters {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("a1", self.a1),
            ("b1", self.b1),
            ("a2", self.a2),
            ("b2", self.b2),
            ("a3", self.a3),
            ("b3", self.b3),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("hyperparameter {name} must be positive, got {v}")));
            }
        }
        if self.burn_in >= self.n_iter {
            return Err(Error::Config(format!(
                "burn-in ({}) must be smaller than the number of iterations ({})",
                self.burn_in, self.n_iter
            )));
        }
        Ok(())
    }

    pub fn with_run(mut self, n_iter: usize, burn_in: usize, seed: u64) -> Self {
        self.n_iter = n_iter;
        self.burn_in = burn_in;
        self.seed = seed;
        self
    }
}

/// Naive estimates from the raw data used to centre the hyperpriors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PilotEstimates {
    pub beta_ols: Vec<f64>,
    /// Squared MAD estimate of the noise scale from the finest detail level of `Y - Xβ̂`.
    pub sigma2_hat: f64,
    /// Sample variance of `Y - Xβ̂`.
    pub sigma2_f: f64,
    pub tau_theta_hat: f64,
    pub eta2_hat: f64,
}

/// Least squares coefficients; fails on a rank-deficient design.
pub fn ols(x: &DMatrix<f64>, y: &[f64]) -> Result<Vec<f64>> {
    let p = x.ncols();
    if p == 0 {
        return Ok(Vec::new());
    }
    if x.nrows() < p {
        return Err(Error::Estimation(format!(
            "design has {p} columns but only {} rows",
            x.nrows()
        )));
    }
    let svd = x.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let tol = smax * f64::EPSILON * x.nrows().max(p) as f64;
    if smax == 0.0 || svd.rank(tol) < p {
        return Err(Error::Estimation("design matrix is rank deficient".to_string()));
    }
    let yv = DVector::from_column_slice(y);
    let beta = svd
        .solve(&yv, tol)
        .map_err(|e| Error::Estimation(e.to_string()))?;
    Ok(beta.iter().copied().collect())
}

pub(crate) fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Median absolute deviation about the median.
pub fn mad(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    let m = median(&mut v);
    let mut dev: Vec<f64> = values.iter().map(|x| (x - m).abs()).collect();
    median(&mut dev)
}

pub(crate) fn sample_variance(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
}

pub fn pilot_estimates(y: &[f64], x: &DMatrix<f64>, filter: &FilterBank, j0: usize) -> Result<PilotEstimates> {
    validate_data(y, x)?;
    let beta_ols = ols(x, y)?;
    let fitted = x * DVector::from_column_slice(&beta_ols);
    let y_f: Vec<f64> = y.iter().zip(fitted.iter()).map(|(a, b)| a - b).collect();

    let coeffs = dwt(&y_f, filter, j0)?;
    let finest = coeffs.level(coeffs.levels() - 1);
    let mut sigma2_hat = (mad(finest) / MAD_TO_SD).powi(2);
    if sigma2_hat <= 0.0 {
        sigma2_hat = 1e-12 * sample_variance(y) + 1e-300;
    }
    let sigma2_f = sample_variance(&y_f);
    let excess = (sigma2_f - sigma2_hat).max(0.0);
    let tau_theta_hat = (1.0 / excess.sqrt()).min(TAU_THETA_CAP);

    let max_beta = beta_ols.iter().fold(0.0f64, |m, b| m.max(b.abs()));
    let mut eta2_hat = (3.0 * max_beta).powi(2);
    if !(eta2_hat.is_finite() && eta2_hat > 0.0) {
        eta2_hat = 1.0;
    }
    Ok(PilotEstimates {
        beta_ols,
        sigma2_hat,
        sigma2_f,
        tau_theta_hat,
        eta2_hat,
    })
}

impl PilotEstimates {
    pub fn hyperparameters(&self) -> Hyperparameters {
        Hyperparameters {
            a1: 2.0,
            b1: 1.0 / self.sigma2_hat,
            a2: 2.0,
            b2: 1.0 / self.eta2_hat,
            a3: 1.0,
            b3: self.tau_theta_hat,
            n_iter: DEFAULT_ITERATIONS,
            burn_in: DEFAULT_BURN_IN,
            seed: 0,
        }
    }
}

/// Data-driven default hyperparameters.
pub fn default_hyperparameters(
    y: &[f64],
    x: &DMatrix<f64>,
    filter: &FilterBank,
    j0: usize,
) -> Result<Hyperparameters> {
    Ok(pilot_estimates(y, x, filter, j0)?.hyperparameters())
}
