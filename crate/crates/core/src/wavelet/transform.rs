use nalgebra::DMatrix;

use super::filters::FilterBank;
use crate::error::{Error, Result};

/// Wavelet coefficients of a length `n = 2^J` signal decomposed down to level `j0`.
///
/// Stored flattened as
///
/// ```text
/// [ scaling (2^j0) | level j0 (2^j0) | level j0+1 (2^(j0+1)) | ... | level J-1 (2^(J-1)) ]
/// ```
///
/// so the detail block is the contiguous tail starting at offset `2^j0`, ordered
/// by level (coarse to fine) then position. The same row layout is used for the
/// transformed design matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    j0: usize,
    levels: usize,
    coeffs: Vec<f64>,
}

impl CoefficientSet {
    /// Assemble from a scaling block and a detail block in the documented order.
    pub fn from_parts(j0: usize, scaling: &[f64], details: &[f64]) -> Result<Self> {
        if scaling.len() != 1 << j0 {
            return Err(Error::Input(format!(
                "scaling block has {} coefficients, expected 2^{j0} = {}",
                scaling.len(),
                1usize << j0
            )));
        }
        let n = scaling.len() + details.len();
        let levels = dyadic_log2(n)?;
        if j0 >= levels {
            return Err(Error::Input(format!(
                "coarsest level {j0} must be below log2(n) = {levels}"
            )));
        }
        let mut coeffs = Vec::with_capacity(n);
        coeffs.extend_from_slice(scaling);
        coeffs.extend_from_slice(details);
        Ok(Self { j0, levels, coeffs })
    }

    /// Wrap an already flattened vector.
    pub fn from_flat(j0: usize, coeffs: Vec<f64>) -> Result<Self> {
        let levels = dyadic_log2(coeffs.len())?;
        if j0 >= levels {
            return Err(Error::Input(format!(
                "coarsest level {j0} must be below log2(n) = {levels}"
            )));
        }
        Ok(Self { j0, levels, coeffs })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn j0(&self) -> usize {
        self.j0
    }

    /// `J = log2(n)`; detail levels run over `j0..J`.
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn scaling(&self) -> &[f64] {
        &self.coeffs[..1 << self.j0]
    }

    /// All detail coefficients, length `2^J - 2^j0`.
    pub fn details(&self) -> &[f64] {
        &self.coeffs[1 << self.j0..]
    }

    /// Detail coefficients of level `j`.
    pub fn level(&self, j: usize) -> &[f64] {
        assert!(j >= self.j0 && j < self.levels, "level {j} out of range");
        &self.coeffs[1 << j..2 << j]
    }

    pub fn detail(&self, j: usize, k: usize) -> f64 {
        self.level(j)[k]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coeffs
    }
}

/// Level `j` of every position in the detail block.
pub fn detail_levels(n: usize, j0: usize) -> Vec<usize> {
    let levels = n.trailing_zeros() as usize;
    (j0..levels).flat_map(|j| std::iter::repeat_n(j, 1 << j)).collect()
}

/// Default coarsest level `⌊log2(ln n) + 1⌋`.
pub fn default_j0(n: usize) -> usize {
    ((n as f64).ln().log2() + 1.0).floor().max(0.0) as usize
}

pub(crate) fn dyadic_log2(n: usize) -> Result<usize> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::Input(format!(
            "sample size {n} is not a power of two"
        )));
    }
    Ok(n.trailing_zeros() as usize)
}

fn analysis_step(input: &[f64], filter: &FilterBank, approx: &mut [f64], detail: &mut [f64]) {
    let n = input.len();
    let h = filter.low_pass();
    let g = filter.high_pass();
    for k in 0..n / 2 {
        let mut a = 0.0;
        let mut d = 0.0;
        let start = 2 * k;
        for (m, (hm, gm)) in h.iter().zip(g).enumerate() {
            let x = input[(start + m) % n];
            a += hm * x;
            d += gm * x;
        }
        approx[k] = a;
        detail[k] = d;
    }
}

fn synthesis_step(approx: &[f64], detail: &[f64], filter: &FilterBank, out: &mut [f64]) {
    let n = out.len();
    let h = filter.low_pass();
    let g = filter.high_pass();
    out.fill(0.0);
    for (k, (a, d)) in approx.iter().zip(detail).enumerate() {
        let start = 2 * k;
        for (m, (hm, gm)) in h.iter().zip(g).enumerate() {
            out[(start + m) % n] += hm * a + gm * d;
        }
    }
}

/// Periodic orthogonal DWT via the pyramid algorithm.
pub fn dwt(signal: &[f64], filter: &FilterBank, j0: usize) -> Result<CoefficientSet> {
    let levels = dyadic_log2(signal.len())?;
    if j0 >= levels {
        return Err(Error::Input(format!(
            "coarsest level {j0} out of range for n = {} (need j0 < {levels})",
            signal.len()
        )));
    }
    let n = signal.len();
    let mut coeffs = vec![0.0; n];
    let mut current = signal.to_vec();
    let mut approx = vec![0.0; n / 2];
    let mut len = n;
    while len > 1 << j0 {
        let half = len / 2;
        analysis_step(&current[..len], filter, &mut approx[..half], &mut coeffs[half..len]);
        current[..half].copy_from_slice(&approx[..half]);
        len = half;
    }
    coeffs[..len].copy_from_slice(&current[..len]);
    Ok(CoefficientSet { j0, levels, coeffs })
}

/// Inverse of [`dwt`].
pub fn idwt(coeffs: &CoefficientSet, filter: &FilterBank) -> Result<Vec<f64>> {
    let n = coeffs.n();
    if dyadic_log2(n)? != coeffs.levels || coeffs.j0 >= coeffs.levels {
        return Err(Error::Input("malformed coefficient set".to_string()));
    }
    let flat = coeffs.as_slice();
    let mut current = flat[..1 << coeffs.j0].to_vec();
    let mut out = vec![0.0; n];
    let mut len = 1 << coeffs.j0;
    while len < n {
        synthesis_step(&current, &flat[len..2 * len], filter, &mut out[..2 * len]);
        current.clear();
        current.extend_from_slice(&out[..2 * len]);
        len *= 2;
    }
    Ok(current)
}

/// Apply the transform to every column of `x`; rows of the result follow the
/// [`CoefficientSet`] flattening.
pub fn transform_design(x: &DMatrix<f64>, filter: &FilterBank, j0: usize) -> Result<DMatrix<f64>> {
    let n = x.nrows();
    dyadic_log2(n).map_err(|_| {
        Error::Input(format!("design matrix has {n} rows, not a power of two"))
    })?;
    let mut u = DMatrix::zeros(n, x.ncols());
    for (i, col) in x.column_iter().enumerate() {
        let w = dwt(col.as_slice(), filter, j0)?;
        u.column_mut(i).copy_from_slice(w.as_slice());
    }
    Ok(u)
}
