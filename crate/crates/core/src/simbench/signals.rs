use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Signal {
    Blocks,
    Bumps,
    Doppler,
    Heavisine,
    PiecePoly,
}

const JUMPS: [f64; 11] = [0.10, 0.13, 0.15, 0.23, 0.25, 0.40, 0.44, 0.65, 0.76, 0.78, 0.81];
const BLOCKS_HGT: [f64; 11] = [4.0, -5.0, 3.0, -4.0, 5.0, -4.2, 2.1, 4.3, -3.1, 2.1, -4.2];
const BUMPS_HGT: [f64; 11] = [4.0, 5.0, 3.0, 4.0, 5.0, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2];
const BUMPS_WTH: [f64; 11] = [0.005, 0.005, 0.006, 0.01, 0.01, 0.03, 0.01, 0.01, 0.005, 0.008, 0.005];

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl Signal {
    pub const ALL: [Signal; 5] = [
        Signal::Blocks,
        Signal::Bumps,
        Signal::Doppler,
        Signal::Heavisine,
        Signal::PiecePoly,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Signal::Blocks => "blocks",
            Signal::Bumps => "bumps",
            Signal::Doppler => "doppler",
            Signal::Heavisine => "heavisine",
            Signal::PiecePoly => "piecepoly",
        }
    }

    /// Unscaled value at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            // right-continuous steps
            Signal::Blocks => JUMPS
                .iter()
                .zip(BLOCKS_HGT)
                .map(|(&p, h)| if t >= p { h } else { 0.0 })
                .sum(),
            Signal::Bumps => JUMPS
                .iter()
                .zip(BUMPS_HGT.iter().zip(BUMPS_WTH))
                .map(|(&p, (&h, w))| h / (1.0 + ((t - p) / w).abs()).powi(4))
                .sum(),
            Signal::Doppler => (t * (1.0 - t)).sqrt() * (2.0 * PI * 1.05 / (t + 0.05)).sin(),
            Signal::Heavisine => 4.0 * (4.0 * PI * t).sin() - sign(t - 0.3) - sign(0.72 - t),
            Signal::PiecePoly => {
                if t <= 0.5 {
                    -16.0 * t.powi(3) + 12.0 * t * t
                } else if t <= 0.75 {
                    t * (16.0 * t * t - 40.0 * t + 28.0) / 3.0 - 1.5
                } else {
                    t * (16.0 * t * t - 32.0 * t + 16.0) / 3.0
                }
            }
        }
    }
}

/// Jump locations of [`Signal::Blocks`] and centres of [`Signal::Bumps`].
pub fn jump_positions() -> &'static [f64] {
    &JUMPS
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Signal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase();
        Signal::ALL
            .into_iter()
            .find(|sig| sig.name() == key)
            .ok_or_else(|| Error::Input(format!("unknown test function '{s}'")))
    }
}

/// `f(i/n)` for `i = 1..=n`.
pub fn test_function(signal: Signal, n: usize) -> Vec<f64> {
    (1..=n).map(|i| signal.eval(i as f64 / n as f64)).collect()
}

/// Like [`test_function`] but from a name.
pub fn test_function_by_name(name: &str, n: usize) -> Result<Vec<f64>> {
    Ok(test_function(name.parse()?, n))
}
