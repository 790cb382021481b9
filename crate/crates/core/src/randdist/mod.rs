//! Densities and variate generators used by the Gibbs sampler.
//!
//! Every generator takes the RNG stream explicitly; nothing here owns state,
//! so two calls with identically seeded streams produce identical draws.

mod normal;
mod standard;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub use normal::{
    ln_mills_ratio, ln_std_normal_cdf, ln_std_normal_pdf, log_sum_exp2, logistic,
    std_normal_cdf, std_normal_pdf, LN_SQRT_2PI,
};
pub use standard::{
    sample_bernoulli, sample_beta, sample_exp1, sample_gamma, sample_inv_gamma, sample_normal,
};

/// Standardised truncation point above which the exponential-proposal sampler is used.
pub const TRUNC_NORMAL_SWITCH: f64 = 0.45;

/// Observation `d* ~ N(θ, σ²)` with a double exponential `DE(τ)` prior on `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPosteriorParams {
    pub d_star: f64,
    pub sigma2: f64,
    pub tau: f64,
}

impl ThetaPosteriorParams {
    pub fn new(d_star: f64, sigma2: f64, tau: f64) -> Result<Self> {
        if !d_star.is_finite() {
            return Err(Error::Input(format!("d* must be finite, got {d_star}")));
        }
        if !(sigma2.is_finite() && sigma2 > 0.0) {
            return Err(Error::Input(format!("sigma2 must be positive, got {sigma2}")));
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::Input(format!("tau must be positive, got {tau}")));
        }
        Ok(Self { d_star, sigma2, tau })
    }

    /// Log weights of the θ ≥ 0 and θ < 0 components of the posterior.
    ///
    /// The raw weights are `e^{σ²τ²/2} e^{∓d*τ} Φ(±d*/σ − τσ)`; writing Φ as
    /// φ times the Mills ratio cancels the exponential factors exactly, leaving
    /// `φ(d*/σ)·R(±d*/σ − τσ)`. Returned without the shared `φ(d*/σ)` factor.
    fn branch_log_weights(&self) -> (f64, f64) {
        let sigma = self.sigma2.sqrt();
        let ts = self.tau * sigma;
        let z = self.d_star / sigma;
        (ln_mills_ratio(z - ts), ln_mills_ratio(-z - ts))
    }
}

/// ln m(d* | σ², τ): the N(θ, σ²) likelihood integrated against DE(τ).
pub fn log_marginal_de(p: &ThetaPosteriorParams) -> f64 {
    let (pos, neg) = p.branch_log_weights();
    let z = p.d_star / p.sigma2.sqrt();
    (0.5 * p.tau).ln() + ln_std_normal_pdf(z) + log_sum_exp2(pos, neg)
}

/// Posterior probability that θ comes from the slab rather than the point mass,
/// given prior slab probability `eps`.
pub fn posterior_weight(p: &ThetaPosteriorParams, eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Input(format!("eps must lie in [0, 1], got {eps}")));
    }
    Ok(posterior_weight_unchecked(p, eps))
}

pub(crate) fn posterior_weight_unchecked(p: &ThetaPosteriorParams, eps: f64) -> f64 {
    if eps <= 0.0 {
        return 0.0;
    }
    if eps >= 1.0 {
        return 1.0;
    }
    // ln m − ln f(d*|0,σ²): the φ(d*/σ) factors cancel
    let (pos, neg) = p.branch_log_weights();
    let log_bf = (0.5 * p.tau).ln() + 0.5 * p.sigma2.ln() + log_sum_exp2(pos, neg);
    logistic(eps.ln() - (-eps).ln_1p() + log_bf)
}

/// Draw from N(mu, sigma²) restricted to `[lower, ∞)`. `lower = -∞` gives an
/// untruncated draw.
pub fn sample_trunc_normal_lower<R: Rng + ?Sized>(
    rng: &mut R,
    mu: f64,
    sigma: f64,
    lower: f64,
) -> f64 {
    if lower == f64::NEG_INFINITY {
        let z: f64 = rng.sample(StandardNormal);
        return mu + sigma * z;
    }
    let alpha = (lower - mu) / sigma;
    let z = if alpha <= TRUNC_NORMAL_SWITCH {
        loop {
            let z: f64 = rng.sample(StandardNormal);
            if z >= alpha {
                break z;
            }
        }
    } else {
        // translated exponential proposal with the optimal rate
        let rate = 0.5 * (alpha + (alpha * alpha + 4.0).sqrt());
        loop {
            let z = alpha + sample_exp1(rng) / rate;
            let u: f64 = rng.random();
            let t = z - rate;
            if u <= (-0.5 * t * t).exp() {
                break z;
            }
        }
    };
    (mu + sigma * z).max(lower)
}

/// Draw θ from the two-sided truncated-normal posterior h(θ | d*, σ², τ).
pub fn sample_post_theta<R: Rng + ?Sized>(rng: &mut R, p: &ThetaPosteriorParams) -> f64 {
    let (pos, neg) = p.branch_log_weights();
    let w_pos = logistic(pos - neg);
    let sigma = p.sigma2.sqrt();
    let shift = p.sigma2 * p.tau;
    let u: f64 = rng.random();
    if u < w_pos {
        sample_trunc_normal_lower(rng, p.d_star - shift, sigma, 0.0)
    } else {
        -sample_trunc_normal_lower(rng, -p.d_star - shift, sigma, 0.0)
    }
}

/// Draw from GIG(a, b, 1/2), density ∝ x^{-1/2} exp(-(a x + b/x)/2).
///
/// Its reciprocal is inverse Gaussian with mean √(a/b) and shape `a`, which is
/// sampled with the Michael–Schucany–Haas transformation.
pub fn sample_gig_half<R: Rng + ?Sized>(rng: &mut R, a: f64, b: f64) -> Result<f64> {
    if !(a.is_finite() && a > 0.0 && b.is_finite() && b > 0.0) {
        return Err(Error::Input(format!(
            "GIG parameters must be positive, got a = {a}, b = {b}"
        )));
    }
    let mean = (a / b).sqrt();
    let shape = a;
    let nu: f64 = rng.sample(StandardNormal);
    let y = nu * nu;
    let my = mean * y;
    let root = (my * my + 4.0 * mean * shape * y).sqrt();
    // x = μ + μ²y/2λ − (μ/2λ)√(4μλy + μ²y²), written without cancellation
    let x = 4.0 * mean * mean * shape * y / ((my + root) * (my + root));
    let x = if y == 0.0 { mean } else { x };
    let u: f64 = rng.random();
    let ig = if u <= mean / (mean + x) {
        x
    } else {
        mean * mean / x
    };
    Ok(1.0 / ig)
}
