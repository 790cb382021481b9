use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{Hyperparameters, ModelInput};
use super::sampler::{FixedBlocks, GibbsSampler};
use super::state::GibbsState;
use crate::error::Result;
use crate::wavelet::{idwt, CoefficientSet};

#[derive(Debug, Clone, Default)]
pub struct ChainOptions {
    pub fixed: FixedBlocks,
    /// Start here instead of [`GibbsState::initial`].
    pub initial: Option<GibbsState>,
    /// Count invariant violations after every step.
    pub check_invariants: bool,
    /// Keep every retained θ draw (n_kept × n_detail values).
    pub keep_theta_draws: bool,
}

/// Retained draws and posterior summaries of one chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOutput {
    pub p: usize,
    pub n_kept: usize,
    pub n_iter: usize,
    pub burn_in: usize,
    pub seed: u64,
    /// Row-major, one row of length `p` per kept draw.
    pub beta_draws: Vec<f64>,
    pub gamma_draws: Vec<bool>,
    pub theta_draws: Option<Vec<f64>>,
    pub sigma2_draws: Vec<f64>,
    pub eta2_draws: Vec<f64>,
    pub q_draws: Vec<f64>,
    pub tau_theta_draws: Vec<f64>,
    pub beta_hat: Vec<f64>,
    pub inclusion_prob: Vec<f64>,
    /// Posterior mean of θ over the detail block.
    pub theta_hat: Vec<f64>,
    /// Posterior frequency of `z = 1` per detail coefficient.
    pub z_prob: Vec<f64>,
    /// `[d_scaling | U β̂ + θ̂]` in coefficient order.
    pub d_hat: Vec<f64>,
    /// `W' d̂`
    pub y_hat: Vec<f64>,
    /// `X β̂`, the linear part of `y_hat`.
    pub linear_fit: Vec<f64>,
    /// `y_hat - linear_fit`
    pub f_hat: Vec<f64>,
    pub final_state: GibbsState,
    /// Total violations seen when `check_invariants` is on; otherwise zero.
    pub invariant_violations: usize,
}

impl ChainOutput {
    pub fn beta_draw(&self, k: usize) -> &[f64] {
        &self.beta_draws[k * self.p..(k + 1) * self.p]
    }

    pub fn gamma_draw(&self, k: usize) -> &[bool] {
        &self.gamma_draws[k * self.p..(k + 1) * self.p]
    }

    /// Posterior standard deviation of each β_i across kept draws.
    pub fn beta_sd(&self) -> Vec<f64> {
        let n = self.n_kept as f64;
        (0..self.p)
            .map(|i| {
                let m = self.beta_hat[i];
                let ss: f64 = (0..self.n_kept).map(|k| (self.beta_draw(k)[i] - m).powi(2)).sum();
                (ss / (n - 1.0).max(1.0)).sqrt()
            })
            .collect()
    }
}

pub fn run_chain(input: &ModelInput, hyper: &Hyperparameters) -> Result<ChainOutput> {
    run_chain_with(input, hyper, &ChainOptions::default())
}

pub fn run_chain_with(input: &ModelInput, hyper: &Hyperparameters, options: &ChainOptions) -> Result<ChainOutput> {
    hyper.validate()?;
    let state = match &options.initial {
        Some(s) => s.clone(),
        None => GibbsState::initial(input, hyper)?,
    };
    let mut sampler = GibbsSampler::new(input, *hyper, state)?.with_fixed(options.fixed);
    let mut rng = ChaCha8Rng::seed_from_u64(hyper.seed);

    let p = input.p();
    let nd = input.n_detail();
    let n_kept = hyper.n_iter - hyper.burn_in;
    let mut beta_draws = Vec::with_capacity(n_kept * p);
    let mut gamma_draws = Vec::with_capacity(n_kept * p);
    let mut theta_draws = options.keep_theta_draws.then(|| Vec::with_capacity(n_kept * nd));
    let mut sigma2_draws = Vec::with_capacity(n_kept);
    let mut eta2_draws = Vec::with_capacity(n_kept);
    let mut q_draws = Vec::with_capacity(n_kept);
    let mut tau_theta_draws = Vec::with_capacity(n_kept);
    let mut theta_sum = vec![0.0; nd];
    let mut z_count = vec![0usize; nd];
    let mut violations = 0;

    for it in 0..hyper.n_iter {
        sampler.step(&mut rng);
        let s = sampler.state();
        if options.check_invariants {
            violations += s.invariant_violations();
        }
        if it < hyper.burn_in {
            continue;
        }
        beta_draws.extend_from_slice(&s.beta);
        gamma_draws.extend_from_slice(&s.gamma);
        if let Some(t) = theta_draws.as_mut() {
            t.extend_from_slice(&s.theta);
        }
        sigma2_draws.push(s.sigma2);
        eta2_draws.push(s.eta2);
        q_draws.push(s.q);
        tau_theta_draws.push(s.tau_theta);
        for k in 0..nd {
            theta_sum[k] += s.theta[k];
            z_count[k] += usize::from(s.z[k]);
        }
    }

    let kept = n_kept as f64;
    let mut beta_hat = vec![0.0; p];
    let mut inclusion = vec![0.0; p];
    for k in 0..n_kept {
        for i in 0..p {
            beta_hat[i] += beta_draws[k * p + i];
            inclusion[i] += f64::from(u8::from(gamma_draws[k * p + i]));
        }
    }
    beta_hat.iter_mut().for_each(|b| *b /= kept);
    inclusion.iter_mut().for_each(|g| *g /= kept);
    let theta_hat: Vec<f64> = theta_sum.iter().map(|t| t / kept).collect();
    let z_prob = z_count.iter().map(|&c| c as f64 / kept).collect();

    let (d_hat, y_hat, linear_fit) = reconstruct(input, &beta_hat, &theta_hat)?;
    let f_hat = y_hat.iter().zip(&linear_fit).map(|(y, l)| y - l).collect();

    Ok(ChainOutput {
        p,
        n_kept,
        n_iter: hyper.n_iter,
        burn_in: hyper.burn_in,
        seed: hyper.seed,
        beta_draws,
        gamma_draws,
        theta_draws,
        sigma2_draws,
        eta2_draws,
        q_draws,
        tau_theta_draws,
        beta_hat,
        inclusion_prob: inclusion,
        theta_hat,
        z_prob,
        d_hat,
        y_hat,
        linear_fit,
        f_hat,
        final_state: sampler.into_state(),
        invariant_violations: violations,
    })
}

/// Map posterior means back to the data domain. The scaling block is
/// passed through unshrunk.
pub fn reconstruct(
    input: &ModelInput,
    beta: &[f64],
    theta: &[f64],
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let u_full = input.u_full();
    let ub: Vec<f64> = (0..input.n())
        .map(|r| beta.iter().enumerate().map(|(i, b)| u_full[(r, i)] * b).sum())
        .collect();
    let ns = input.d_scaling().len();
    let mut d_hat = input.d_scaling().to_vec();
    d_hat.extend(ub[ns..].iter().zip(theta).map(|(u, t)| u + t));
    let filter = input.filter();
    let y_hat = idwt(&CoefficientSet::from_flat(input.j0(), d_hat.clone())?, filter)?;
    let linear_fit = idwt(&CoefficientSet::from_flat(input.j0(), ub)?, filter)?;
    Ok((d_hat, y_hat, linear_fit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plm::model::default_hyperparameters;
    use crate::wavelet::{build_filter, Family};
    use nalgebra::DMatrix;
    use rand_distr::{Distribution, StandardNormal};

    fn dataset(n: usize, seed: u64) -> (Vec<f64>, DMatrix<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = DMatrix::from_fn(n, 2, |_, _| StandardNormal.sample(&mut rng));
        let y = (0..n)
            .map(|i| {
                let t = (i + 1) as f64 / n as f64;
                let e: f64 = StandardNormal.sample(&mut rng);
                0.5 * x[(i, 0)] + x[(i, 1)] + 4.0 * (4.0 * std::f64::consts::PI * t).sin() + e
            })
            .collect();
        (y, x)
    }

    #[test]
    fn kept_draw_count_and_means() {
        let (y, x) = dataset(64, 1);
        let f = build_filter(Family::Symmlet(8)).unwrap();
        let input = ModelInput::from_data(&y, &x, &f, 3).unwrap();
        let hyper = default_hyperparameters(&y, &x, &f, 3).unwrap().with_run(10, 5, 3);
        let out = run_chain(&input, &hyper).unwrap();
        assert_eq!(out.n_kept, 5);
        assert_eq!(out.beta_draws.len(), 10);
        assert_eq!(out.sigma2_draws.len(), 5);
        let m0: f64 = (0..5).map(|k| out.beta_draw(k)[0]).sum::<f64>() / 5.0;
        assert!((m0 - out.beta_hat[0]).abs() < 1e-14);
        assert_eq!(out.y_hat.len(), 64);
    }

    #[test]
    fn reconstruction_is_exact_without_shrinkage() {
        let (y, x) = dataset(64, 2);
        let f = build_filter(Family::Daubechies(6)).unwrap();
        let input = ModelInput::from_data(&y, &x, &f, 3).unwrap();
        let beta = [0.2, -0.4];
        let resid = crate::plm::state::residual(&input, &beta);
        let (_, y_hat, lin) = reconstruct(&input, &beta, &resid).unwrap();
        for i in 0..64 {
            assert!((y_hat[i] - y[i]).abs() < 1e-10);
            let xb = 0.2 * x[(i, 0)] - 0.4 * x[(i, 1)];
            assert!((lin[i] - xb).abs() < 1e-10);
        }
    }

    #[test]
    fn same_seed_same_output() {
        let (y, x) = dataset(64, 3);
        let f = build_filter(Family::Haar).unwrap();
        let input = ModelInput::from_data(&y, &x, &f, 3).unwrap();
        let hyper = default_hyperparameters(&y, &x, &f, 3).unwrap().with_run(300, 100, 9);
        assert_eq!(run_chain(&input, &hyper).unwrap(), run_chain(&input, &hyper).unwrap());
    }

    #[test]
    fn beta_recovered_on_smooth_signal() {
        let (y, x) = dataset(256, 4);
        let f = build_filter(Family::Symmlet(8)).unwrap();
        let input = ModelInput::from_data(&y, &x, &f, 3).unwrap();
        let hyper = default_hyperparameters(&y, &x, &f, 3).unwrap().with_run(2000, 500, 1);
        let out = run_chain(&input, &hyper).unwrap();
        let sd = out.beta_sd();
        for (i, truth) in [0.5, 1.0].iter().enumerate() {
            assert!((out.beta_hat[i] - truth).abs() < 4.0 * sd[i], "{:?}", out.beta_hat);
        }
        assert!(out.inclusion_prob.iter().all(|&p| p > 0.9));
    }
}
