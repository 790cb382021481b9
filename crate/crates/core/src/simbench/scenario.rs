use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::signals::{test_function, Signal};
use crate::error::{Error, Result};
use crate::randdist::sample_normal;
use crate::wavelet::{default_j0, Family};

pub const SAMPLE_SIZES: [usize; 4] = [64, 128, 256, 512];

pub const DESK_REPLICATIONS: usize = 25;
pub const DESK_ITERATIONS: usize = 6_000;
pub const DESK_BURN_IN: usize = 1_000;

/// Row distribution of the design matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Design {
    IidNormal,
    /// Unit-variance Gaussian rows with `corr(x_a, x_b) = rho^{|a-b|}`.
    Ar1 { rho: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub name: String,
    pub signal: Signal,
    pub n: usize,
    pub c: f64,
    pub beta_true: Vec<f64>,
    pub design: Design,
    pub filter: Family,
    pub j0: usize,
    pub replications: usize,
    pub seed: u64,
    pub n_iter: usize,
    pub burn_in: usize,
}

impl ScenarioSpec {
    /// Two iid N(0,1) predictors, β = (0.5, 1).
    pub fn example1(signal: Signal, n: usize) -> Result<Self> {
        let (c, filter) = match signal {
            Signal::Blocks => (3.0, Family::Haar),
            Signal::Bumps => (7.0, Family::Daubechies(6)),
            Signal::Doppler => (18.0, Family::Symmlet(8)),
            Signal::Heavisine => (2.0, Family::Symmlet(8)),
            Signal::PiecePoly => {
                return Err(Error::Config("piecepoly is not part of example 1".to_string()));
            }
        };
        Self::build(1, signal, n, c, vec![0.5, 1.0], Design::IidNormal, filter)
    }

    /// 20 AR(1) predictors with ρ = 0.4, first four active.
    pub fn example2(signal: Signal, n: usize) -> Result<Self> {
        let c = match signal {
            Signal::PiecePoly => 9.0,
            Signal::Bumps => 3.0,
            _ => return Err(Error::Config(format!("{signal} is not part of example 2"))),
        };
        let mut beta = vec![0.0; 20];
        beta[..4].copy_from_slice(&[1.5, 2.0, 2.5, 3.0]);
        Self::build(2, signal, n, c, beta, Design::Ar1 { rho: 0.4 }, Family::Daubechies(8))
    }

    fn build(
        example: u8,
        signal: Signal,
        n: usize,
        c: f64,
        beta_true: Vec<f64>,
        design: Design,
        filter: Family,
    ) -> Result<Self> {
        let spec = Self {
            name: format!("example{example}-{signal}-{n}"),
            signal,
            n,
            c,
            beta_true,
            design,
            filter,
            j0: default_j0(n),
            replications: DESK_REPLICATIONS,
            seed: 0,
            n_iter: DESK_ITERATIONS,
            burn_in: DESK_BURN_IN,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Parse names such as `example1-heavisine-128`.
    pub fn parse(name: &str) -> Result<Self> {
        let unknown = || Error::Config(format!("unknown scenario '{name}'"));
        let parts: Vec<&str> = name.split('-').collect();
        let &[example, signal, n] = parts.as_slice() else {
            return Err(unknown());
        };
        let signal: Signal = signal.parse().map_err(|_| unknown())?;
        let n: usize = n.parse().map_err(|_| unknown())?;
        if !SAMPLE_SIZES.contains(&n) {
            return Err(unknown());
        }
        match example {
            "example1" => Self::example1(signal, n),
            "example2" => Self::example2(signal, n),
            _ => Err(unknown()),
        }
        .map_err(|_| unknown())
    }

    /// Every named scenario.
    pub fn catalogue() -> Vec<ScenarioSpec> {
        let mut out = Vec::new();
        for signal in [Signal::Blocks, Signal::Bumps, Signal::Doppler, Signal::Heavisine] {
            for n in SAMPLE_SIZES {
                out.push(Self::example1(signal, n).expect("valid example 1 scenario"));
            }
        }
        for signal in [Signal::PiecePoly, Signal::Bumps] {
            for n in &SAMPLE_SIZES[1..] {
                out.push(Self::example2(signal, *n).expect("valid example 2 scenario"));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if !SAMPLE_SIZES.contains(&self.n) {
            return Err(Error::Config(format!("sample size {} not in {SAMPLE_SIZES:?}", self.n)));
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::Config(format!("signal scale must be positive, got {}", self.c)));
        }
        if let Design::Ar1 { rho } = self.design {
            if !(0.0..1.0).contains(&rho) {
                return Err(Error::Config(format!("AR(1) coefficient must lie in [0, 1), got {rho}")));
            }
        }
        if self.replications < 1 {
            return Err(Error::Config("at least one replication is required".to_string()));
        }
        if self.burn_in >= self.n_iter {
            return Err(Error::Config("burn-in must be smaller than the number of iterations".to_string()));
        }
        Ok(())
    }

    pub fn p(&self) -> usize {
        self.beta_true.len()
    }
}

/// One simulated data set `y = Xβ + c f + ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub y: Vec<f64>,
    pub x: DMatrix<f64>,
    /// `c f(t_i)`
    pub f_true: Vec<f64>,
    pub beta_true: Vec<f64>,
    /// Noise-free mean `Xβ + c f`.
    pub truth: Vec<f64>,
}

pub fn gen_design<R: Rng + ?Sized>(rng: &mut R, n: usize, p: usize, design: Design) -> DMatrix<f64> {
    let mut x = DMatrix::zeros(n, p);
    for r in 0..n {
        for a in 0..p {
            let e = sample_normal(rng, 0.0, 1.0);
            x[(r, a)] = match design {
                Design::Ar1 { rho } if a > 0 => rho * x[(r, a - 1)] + (1.0 - rho * rho).sqrt() * e,
                _ => e,
            };
        }
    }
    x
}

/// Design first (row by row), then noise.
pub fn gen_dataset<R: Rng + ?Sized>(rng: &mut R, spec: &ScenarioSpec) -> Dataset {
    let n = spec.n;
    let x = gen_design(rng, n, spec.p(), spec.design);
    let f_true: Vec<f64> = test_function(spec.signal, n).iter().map(|v| spec.c * v).collect();
    let truth: Vec<f64> = (0..n)
        .map(|r| {
            let lin: f64 = spec.beta_true.iter().enumerate().map(|(a, b)| x[(r, a)] * b).sum();
            lin + f_true[r]
        })
        .collect();
    let y = truth.iter().map(|m| m + sample_normal(rng, 0.0, 1.0)).collect();
    Dataset {
        y,
        x,
        f_true,
        beta_true: spec.beta_true.clone(),
        truth,
    }
}

pub fn gen_example1<R: Rng + ?Sized>(signal: Signal, n: usize, rng: &mut R) -> Result<Dataset> {
    Ok(gen_dataset(rng, &ScenarioSpec::example1(signal, n)?))
}

pub fn gen_example2<R: Rng + ?Sized>(signal: Signal, n: usize, rng: &mut R) -> Result<Dataset> {
    Ok(gen_dataset(rng, &ScenarioSpec::example2(signal, n)?))
}
