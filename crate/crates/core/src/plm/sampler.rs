use rand::Rng;

use super::model::{Hyperparameters, ModelInput};
use super::state::{residual, GibbsState};
use crate::error::Result;
use crate::randdist::{
    logistic, posterior_weight_unchecked, sample_bernoulli, sample_beta, sample_exp1, sample_gamma,
    sample_gig_half, sample_inv_gamma, sample_normal, sample_post_theta, ThetaPosteriorParams,
};

/// Floor for the GIG `b` parameter when an included coefficient is exactly zero.
pub const GIG_B_FLOOR: f64 = 1e-12;

/// Blocks held at their current value. For `gamma` the inclusion indicators
/// stay put but β is still drawn from its conditional; `beta` freezes both.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FixedBlocks {
    pub gamma: bool,
    pub beta: bool,
    pub v: bool,
    pub eta2: bool,
    pub q: bool,
    pub sigma2: bool,
    pub z: bool,
    pub eps: bool,
    pub theta: bool,
    pub tau_theta: bool,
}

/// Gibbs sampler over one [`GibbsState`].
///
/// Keeps `d - Uβ` in sync with the state so the β loop is O(n·p) per sweep.
#[derive(Debug, Clone)]
pub struct GibbsSampler<'a> {
    input: &'a ModelInput,
    hyper: Hyperparameters,
    fixed: FixedBlocks,
    state: GibbsState,
    uu: Vec<f64>,
    resid: Vec<f64>,
}

impl<'a> GibbsSampler<'a> {
    pub fn new(input: &'a ModelInput, hyper: Hyperparameters, state: GibbsState) -> Result<Self> {
        hyper.validate()?;
        state.check_shape(input)?;
        let uu = (0..input.p())
            .map(|i| input.u_column(i).iter().map(|u| u * u).sum())
            .collect();
        let resid = residual(input, &state.beta);
        Ok(Self {
            input,
            hyper,
            fixed: FixedBlocks::default(),
            state,
            uu,
            resid,
        })
    }

    pub fn with_fixed(mut self, fixed: FixedBlocks) -> Self {
        self.fixed = fixed;
        self
    }

    pub fn state(&self) -> &GibbsState {
        &self.state
    }

    pub fn into_state(self) -> GibbsState {
        self.state
    }

    pub fn set_state(&mut self, state: GibbsState) -> Result<()> {
        state.check_shape(self.input)?;
        self.resid = residual(self.input, &state.beta);
        self.state = state;
        Ok(())
    }

    /// Current `d* = d - Uβ`.
    pub fn d_star(&self) -> &[f64] {
        &self.resid
    }

    /// `Z'U_i` with Z the residual after removing θ and all predictors except `i`.
    fn zu(&self, i: usize) -> f64 {
        let col = self.input.u_column(i);
        let partial: f64 = self
            .resid
            .iter()
            .zip(&self.state.theta)
            .zip(col)
            .map(|((r, t), u)| (r - t) * u)
            .sum();
        partial + self.state.beta[i] * self.uu[i]
    }

    /// Log posterior odds of `γ_i = 1` with β_i integrated out.
    pub fn inclusion_log_odds(&self, i: usize) -> f64 {
        let s = &self.state;
        let slab = s.v[i] * s.eta2;
        let denom = slab * self.uu[i] + s.sigma2;
        let zu = self.zu(i);
        let log_bf = 0.5 * (s.sigma2 / denom).ln() + slab * zu * zu / (2.0 * s.sigma2 * denom);
        s.q.ln() - (-s.q).ln_1p() + log_bf
    }

    /// Mean and variance of β_i given `γ_i = 1` and everything else.
    pub fn beta_conditional(&self, i: usize) -> (f64, f64) {
        let s = &self.state;
        let slab = s.v[i] * s.eta2;
        let denom = slab * self.uu[i] + s.sigma2;
        (slab * self.zu(i) / denom, slab * s.sigma2 / denom)
    }

    fn set_beta(&mut self, i: usize, value: f64) {
        let delta = value - self.state.beta[i];
        if delta != 0.0 {
            for (r, u) in self.resid.iter_mut().zip(self.input.u_column(i)) {
                *r -= delta * u;
            }
        }
        self.state.beta[i] = value;
    }

    /// Joint (γ_i, β_i) draws for i = 1..p in order.
    pub fn update_gamma_beta<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if self.fixed.beta {
            return;
        }
        for i in 0..self.input.p() {
            if !self.fixed.gamma {
                let prob = logistic(self.inclusion_log_odds(i));
                self.state.gamma[i] = sample_bernoulli(rng, prob);
            }
            let value = if self.state.gamma[i] {
                let (mean, var) = self.beta_conditional(i);
                sample_normal(rng, mean, var.sqrt())
            } else {
                0.0
            };
            self.set_beta(i, value);
        }
    }

    pub fn update_v<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if self.fixed.v {
            return;
        }
        let s = &mut self.state;
        for i in 0..s.v.len() {
            s.v[i] = if s.gamma[i] {
                let b = (s.beta[i] * s.beta[i] / s.eta2).max(GIG_B_FLOOR);
                sample_gig_half(rng, 2.0, b).expect("GIG parameters are positive")
            } else {
                sample_exp1(rng)
            };
        }
    }

    pub fn update_eta2<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if self.fixed.eta2 {
            return;
        }
        let s = &mut self.state;
        let mut active = 0.0;
        let mut ss = 0.0;
        for i in 0..s.beta.len() {
            if s.gamma[i] {
                active += 1.0;
                ss += s.beta[i] * s.beta[i] / s.v[i];
            }
        }
        let shape = self.hyper.a2 + 0.5 * active;
        let scale = 1.0 / (1.0 / self.hyper.b2 + 0.5 * ss);
        s.eta2 = sample_inv_gamma(rng, shape, scale);
    }

    pub fn update_q<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if self.fixed.q {
            return;
        }
        let on = self.state.gamma.iter().filter(|&&g| g).count() as f64;
        let off = self.state.gamma.len() as f64 - on;
        self.state.q = sample_beta(rng, 1.0 + on, 1.0 + off);
    }

    pub fn update_sigma2<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if self.fixed.sigma2 {
            return;
        }
        let zz: f64 = self
            .resid
            .iter()
            .zip(&self.state.theta)
            .map(|(r, t)| (r - t) * (r - t))
            .sum();
        let shape = self.hyper.a1 + 0.5 * self.input.n_detail() as f64;
        let scale = 1.0 / (1.0 / self.hyper.b1 + 0.5 * zz);
        self.state.sigma2 = sample_inv_gamma(rng, shape, scale);
    }

    fn theta_params(&self, k: usize) -> ThetaPosteriorParams {
        ThetaPosteriorParams {
            d_star: self.resid[k],
            sigma2: self.state.sigma2,
            tau: self.state.tau_theta,
        }
    }

    pub fn update_z<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if self.fixed.z {
            return;
        }
        let j0 = self.input.j0();
        for (k, &level) in self.input.level_index().iter().enumerate() {
            let w = posterior_weight_unchecked(&self.theta_params(k), self.state.eps[level - j0]);
            self.state.z[k] = sample_bernoulli(rng, w);
        }
    }

    pub fn update_eps<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if self.fixed.eps {
            return;
        }
        for (l, j) in self.input.levels().enumerate() {
            let range = self.input.level_range(j);
            let len = range.len() as f64;
            let on = self.state.z[range].iter().filter(|&&z| z).count() as f64;
            self.state.eps[l] = sample_beta(rng, 1.0 + on, 1.0 + len - on);
        }
    }

    pub fn update_theta<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if self.fixed.theta {
            return;
        }
        for k in 0..self.resid.len() {
            self.state.theta[k] = if self.state.z[k] {
                let t = sample_post_theta(rng, &self.theta_params(k));
                // keep θ = 0 ⇔ z = 0 even when the draw rounds to zero
                if t == 0.0 {
                    f64::MIN_POSITIVE
                } else {
                    t
                }
            } else {
                0.0
            };
        }
    }

    pub fn update_tau_theta<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if self.fixed.tau_theta {
            return;
        }
        let mut on = 0.0;
        let mut abs_sum = 0.0;
        for (&z, &t) in self.state.z.iter().zip(&self.state.theta) {
            if z {
                on += 1.0;
                abs_sum += t.abs();
            }
        }
        let shape = self.hyper.a3 + on;
        let scale = 1.0 / (1.0 / self.hyper.b3 + abs_sum);
        self.state.tau_theta = sample_gamma(rng, shape, scale);
    }

    /// One full sweep in the fixed order (γ,β), v, η², q, σ², z, ε, θ, τ_θ.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        self.update_gamma_beta(rng);
        self.update_v(rng);
        self.update_eta2(rng);
        self.update_q(rng);
        self.update_sigma2(rng);
        self.update_z(rng);
        self.update_eps(rng);
        self.update_theta(rng);
        self.update_tau_theta(rng);
    }
}
