//! Orthonormal filter banks.
//!
//! Naming follows the usual MATLAB/WaveLab convention: `Daubechies(L)` is the
//! extremal-phase filter with `L` taps (`L/2` vanishing moments) and
//! `Symmlet(N)` is the least-asymmetric filter with `N` vanishing moments
//! (`2N` taps). `Daubechies(2)` coincides with Haar.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const INVARIANT_TOL: f64 = 1e-12;

const D6: [f64; 6] = [
    0.33267055295008263,
    0.8068915093110925,
    0.45987750211849154,
    -0.13501102001025458,
    -0.08544127388202666,
    0.03522629188570953,
];

const D8: [f64; 8] = [
    0.2303778133088965,
    0.7148465705529157,
    0.6308807679298589,
    -0.027983769416859854,
    -0.18703481171909309,
    0.030841381835560764,
    0.0328830116668852,
    -0.010597401785069032,
];

const S8: [f64; 16] = [
    0.001889950332767689,
    -0.0003029205147241331,
    -0.014952258337062199,
    0.0038087520138944896,
    0.04913717967373029,
    -0.027219029917103486,
    -0.0519458381078818,
    0.36444189483617895,
    0.777185751699628,
    0.4813596512590534,
    -0.061273359067811076,
    -0.14329423835127267,
    0.007607487324976609,
    0.03169508781152599,
    -0.0005421323318000107,
    -0.0033824159510050028,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Haar,
    /// Extremal phase, parameterised by filter length.
    Daubechies(usize),
    /// Least asymmetric, parameterised by number of vanishing moments.
    Symmlet(usize),
}

impl Family {
    /// Short name used on the command line: `haar`, `db4`, `db6`, `db8`, `sym8`.
    pub fn short_name(&self) -> String {
        match self {
            Family::Haar => "haar".to_string(),
            Family::Daubechies(l) => format!("db{l}"),
            Family::Symmlet(n) => format!("sym{n}"),
        }
    }

    pub fn parse(name: &str) -> Result<Family> {
        let lower = name.trim().to_ascii_lowercase();
        let order = |prefix: &str| -> Result<usize> {
            lower[prefix.len()..]
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("unknown filter family '{name}'")))
        };
        if lower == "haar" {
            Ok(Family::Haar)
        } else if lower.starts_with("db") {
            Ok(Family::Daubechies(order("db")?))
        } else if lower.starts_with("sym") {
            Ok(Family::Symmlet(order("sym")?))
        } else {
            Err(Error::Config(format!("unknown filter family '{name}'")))
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_name())
    }
}

/// Low-pass `h` and high-pass `g` analysis filters, `g_k = (-1)^k h_{L-1-k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterBank {
    family: Family,
    low_pass: Vec<f64>,
    high_pass: Vec<f64>,
}

impl FilterBank {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn low_pass(&self) -> &[f64] {
        &self.low_pass
    }

    pub fn high_pass(&self) -> &[f64] {
        &self.high_pass
    }

    pub fn len(&self) -> usize {
        self.low_pass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.low_pass.is_empty()
    }

    fn from_low_pass(family: Family, low_pass: Vec<f64>) -> Result<Self> {
        let len = low_pass.len();
        let high_pass = (0..len)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * low_pass[len - 1 - k]
            })
            .collect();
        let bank = Self {
            family,
            low_pass,
            high_pass,
        };
        bank.check_invariants()?;
        Ok(bank)
    }

    /// Normalisation, unit energy and even-shift orthogonality of `h`.
    pub fn check_invariants(&self) -> Result<()> {
        let h = &self.low_pass;
        let sum: f64 = h.iter().sum();
        if (sum - std::f64::consts::SQRT_2).abs() > INVARIANT_TOL {
            return Err(Error::Config(format!(
                "{} filter: sum of coefficients {sum} != sqrt(2)",
                self.family
            )));
        }
        let energy: f64 = h.iter().map(|c| c * c).sum();
        if (energy - 1.0).abs() > INVARIANT_TOL {
            return Err(Error::Config(format!(
                "{} filter: energy {energy} != 1",
                self.family
            )));
        }
        for shift in (2..h.len()).step_by(2) {
            let dot: f64 = h.iter().zip(&h[shift..]).map(|(a, b)| a * b).sum();
            if dot.abs() > INVARIANT_TOL {
                return Err(Error::Config(format!(
                    "{} filter: shift-{shift} inner product {dot} != 0",
                    self.family
                )));
            }
        }
        Ok(())
    }
}

fn d4() -> Vec<f64> {
    let s3 = 3f64.sqrt();
    let norm = 4.0 * std::f64::consts::SQRT_2;
    vec![
        (1.0 + s3) / norm,
        (3.0 + s3) / norm,
        (3.0 - s3) / norm,
        (1.0 - s3) / norm,
    ]
}

/// Look up the filter bank for `family`.
pub fn build_filter(family: Family) -> Result<FilterBank> {
    let coeffs = match family {
        Family::Haar | Family::Daubechies(2) => vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        Family::Daubechies(4) => d4(),
        Family::Daubechies(6) => D6.to_vec(),
        Family::Daubechies(8) => D8.to_vec(),
        Family::Symmlet(8) => S8.to_vec(),
        Family::Daubechies(l) => {
            return Err(Error::Config(format!(
                "unsupported order: Daubechies({l}); supported lengths are 2, 4, 6, 8"
            )))
        }
        Family::Symmlet(n) => {
            return Err(Error::Config(format!(
                "unsupported order: Symmlet({n}); supported: 8"
            )))
        }
    };
    FilterBank::from_low_pass(family, coeffs)
}
