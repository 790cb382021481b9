//! Bayesian estimation and variable selection for partially linear models
//!
//! ```text
//! Y = X β + f(t) + ε,   ε ~ N(0, σ² I)
//! ```
//!
//! where the nonparametric part `f` is represented in an orthogonal wavelet
//! basis. After the transform `d = W Y`, `U = W X` the model reads
//! `d = U β + θ + ε̃` and both `β` and the wavelet coefficients `θ` receive
//! point-mass-at-zero priors with a double exponential slab. Inference runs
//! through a Gibbs sampler whose latent indicators on `β` double as a
//! stochastic search over predictor subsets.
//!
//! Modules:
//! - [`wavelet`]: periodic orthogonal DWT/IDWT and the column-wise design transform.
//! - [`randdist`]: special densities and variate generators used by the sampler.
//! - [`plm`]: the hierarchical model, Gibbs sampler, summaries and model selection.
//! - [`simbench`]: test signals, simulated datasets and AMSE benchmarking.

pub mod error;
pub mod plm;
pub mod randdist;
pub mod simbench;
pub mod wavelet;

pub use error::{Error, Result};
