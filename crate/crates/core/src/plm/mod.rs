//! The hierarchical partially linear wavelet model and its Gibbs sampler.
//!
//! In the wavelet domain the data follow `d = Uβ + θ + ε̃` with
//!
//! * `β_i | γ_i, v_i, η² ~ γ_i N(0, v_i η²) + (1 - γ_i) δ₀`, `v_i ~ Exp(1)`,
//!   `γ_i ~ Bernoulli(q)`, `q ~ U(0, 1)`, `η² ~ IG(a2, b2)`;
//! * `θ_jk | z_jk ~ z_jk DE(τ_θ) + (1 - z_jk) δ₀`, `z_jk ~ Bernoulli(ε_j)`,
//!   `ε_j ~ U(0, 1)`, `τ_θ ~ Ga(a3, b3)`;
//! * `ε̃_jk ~ N(0, σ²)`, `σ² ~ IG(a1, b1)`.
//!
//! Only detail coefficients enter the likelihood.

mod chain;
mod model;
mod sampler;
mod selection;
mod state;

pub use chain::{reconstruct, run_chain, run_chain_with, ChainOptions, ChainOutput};
pub use model::{
    default_hyperparameters, mad, ols, pilot_estimates, Hyperparameters, ModelInput, PilotEstimates,
    DEFAULT_BURN_IN, DEFAULT_ITERATIONS, MAD_TO_SD, TAU_THETA_CAP,
};
pub use sampler::{FixedBlocks, GibbsSampler, GIG_B_FLOOR};
pub use selection::{pattern_frequencies, select_models, tabulate, GammaPattern, ModelFrequency};
pub use state::{GibbsState, EPS_INIT_RANGE};
