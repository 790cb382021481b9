use serde::Serialize;

use super::model::{ols, Hyperparameters, ModelInput};
use crate::error::{Error, Result};

/// One configuration of every unknown in the hierarchical model.
///
/// `eps[l]` belongs to detail level `j0 + l`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GibbsState {
    pub beta: Vec<f64>,
    pub gamma: Vec<bool>,
    pub v: Vec<f64>,
    pub eta2: f64,
    pub q: f64,
    pub sigma2: f64,
    pub z: Vec<bool>,
    pub eps: Vec<f64>,
    pub theta: Vec<f64>,
    pub tau_theta: f64,
}

/// Bounds for the starting values of `eps`.
pub const EPS_INIT_RANGE: (f64, f64) = (0.05, 0.95);

impl GibbsState {
    /// Warm start: least squares β, all predictors in, soft-thresholded θ at
    /// the universal threshold, prior-mean scalars.
    pub fn initial(input: &ModelInput, hyper: &Hyperparameters) -> Result<Self> {
        let p = input.p();
        let beta = ols(&input.u_full(), &input.d_full())?;
        let sigma2 = 1.0 / hyper.b1;
        let resid = residual(input, &beta);
        let lambda = sigma2.sqrt() * (2.0 * (input.n() as f64).ln()).sqrt();
        let theta: Vec<f64> = resid
            .iter()
            .map(|&r| r.signum() * (r.abs() - lambda).max(0.0))
            .collect();
        let z: Vec<bool> = theta.iter().map(|&t| t != 0.0).collect();
        let eps = input
            .levels()
            .map(|j| {
                let range = input.level_range(j);
                let len = range.len() as f64;
                let on = z[range].iter().filter(|&&b| b).count() as f64;
                (on / len).clamp(EPS_INIT_RANGE.0, EPS_INIT_RANGE.1)
            })
            .collect();
        Ok(Self {
            beta,
            gamma: vec![true; p],
            v: vec![1.0; p],
            eta2: 1.0 / hyper.b2,
            q: 0.5,
            sigma2,
            z,
            eps,
            theta,
            tau_theta: hyper.b3,
        })
    }

    /// Check dimensions against `input`, then sparsity couplings and ranges.
    pub fn check_shape(&self, input: &ModelInput) -> Result<()> {
        let p = input.p();
        let nd = input.n_detail();
        let nl = input.levels().len();
        if self.beta.len() != p || self.gamma.len() != p || self.v.len() != p {
            return Err(Error::Input(format!("state has the wrong number of predictors, expected {p}")));
        }
        if self.z.len() != nd || self.theta.len() != nd {
            return Err(Error::Input(format!("state has the wrong number of detail coefficients, expected {nd}")));
        }
        if self.eps.len() != nl {
            return Err(Error::Input(format!("state has the wrong number of levels, expected {nl}")));
        }
        Ok(())
    }

    /// Number of violated invariants; zero for a valid state.
    pub fn invariant_violations(&self) -> usize {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        let mut bad = 0;
        bad += self
            .beta
            .iter()
            .zip(&self.gamma)
            .filter(|&(&b, &g)| !b.is_finite() || (b == 0.0) == g)
            .count();
        bad += self
            .theta
            .iter()
            .zip(&self.z)
            .filter(|&(&t, &z)| !t.is_finite() || (t == 0.0) == z)
            .count();
        bad += self.v.iter().filter(|&&x| !positive(x)).count();
        bad += self.eps.iter().filter(|&&x| !unit(x)).count();
        bad += [self.eta2, self.sigma2, self.tau_theta]
            .iter()
            .filter(|&&x| !positive(x))
            .count();
        bad += usize::from(!unit(self.q));
        bad
    }

    pub fn check_invariants(&self) -> Result<()> {
        match self.invariant_violations() {
            0 => Ok(()),
            k => Err(Error::Estimation(format!("state violates {k} invariants"))),
        }
    }
}

/// `d - U β` over the detail block.
pub(crate) fn residual(input: &ModelInput, beta: &[f64]) -> Vec<f64> {
    let mut r = input.d().to_vec();
    for (i, &b) in beta.iter().enumerate() {
        if b != 0.0 {
            for (ri, ui) in r.iter_mut().zip(input.u_column(i)) {
                *ri -= b * ui;
            }
        }
    }
    r
}
