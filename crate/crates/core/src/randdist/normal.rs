//! Standard normal density/CDF helpers in the log domain.

use std::f64::consts::{PI, SQRT_2};

/// `0.5 * ln(2π)`
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this point `ln Φ(x)` switches to the asymptotic Mills-ratio series.
const LOWER_TAIL_SWITCH: f64 = -20.0;

pub fn ln_std_normal_pdf(x: f64) -> f64 {
    -0.5 * x * x - LN_SQRT_2PI
}

pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Φ(x) through `erfc`, accurate in both tails down to underflow.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

/// ln Φ(x), finite for every finite `x`.
pub fn ln_std_normal_cdf(x: f64) -> f64 {
    if x > 5.0 {
        // Φ(x) = 1 - Q(x) with Q tiny
        (-0.5 * libm::erfc(x / SQRT_2)).ln_1p()
    } else if x > LOWER_TAIL_SWITCH {
        (0.5 * libm::erfc(-x / SQRT_2)).ln()
    } else {
        // Φ(x) = φ(x)/|x| · Σ_k (-1)^k (2k-1)!! / x^{2k}
        let inv_x2 = 1.0 / (x * x);
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..=10 {
            term *= -((2 * k - 1) as f64) * inv_x2;
            sum += term;
        }
        ln_std_normal_pdf(x) - (-x).ln() + sum.ln()
    }
}

/// ln(Φ(x)/φ(x)). Grows like x²/2 for large x and like -ln|x| for very
/// negative x; never overflows or underflows for finite input.
pub fn ln_mills_ratio(x: f64) -> f64 {
    if x > LOWER_TAIL_SWITCH {
        ln_std_normal_cdf(x) + 0.5 * x * x + LN_SQRT_2PI
    } else {
        let inv_x2 = 1.0 / (x * x);
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..=10 {
            term *= -((2 * k - 1) as f64) * inv_x2;
            sum += term;
        }
        sum.ln() - (-x).ln()
    }
}

/// ln(e^a + e^b) without overflow.
pub fn log_sum_exp2(a: f64, b: f64) -> f64 {
    let hi = a.max(b);
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let lo = a.min(b);
    hi + (lo - hi).exp().ln_1p()
}

/// 1 / (1 + e^{-x})
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_reference_values() {
        // Φ(-1), Φ(1.96), Φ(-6) from published tables
        assert!((std_normal_cdf(-1.0) - 0.158_655_253_931_457_05).abs() < 1e-15);
        assert!((std_normal_cdf(1.96) - 0.975_002_104_851_780).abs() < 1e-14);
        assert!((std_normal_cdf(-6.0) / 9.865_876_450_376_98e-10 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_cdf_is_continuous_across_branches() {
        for &x in &[LOWER_TAIL_SWITCH, 5.0] {
            let below = ln_std_normal_cdf(x - 1e-9);
            let above = ln_std_normal_cdf(x + 1e-9);
            assert!((below - above).abs() < 1e-8 * below.abs().max(1e-6), "{x}");
        }
        // erfc branch vs series at x=-25 where both are representable
        let direct = (0.5 * libm::erfc(25.0 / SQRT_2)).ln();
        assert!((ln_std_normal_cdf(-25.0) - direct).abs() < 1e-12 * direct.abs());
    }

    #[test]
    fn log_cdf_extreme_arguments() {
        let v = ln_std_normal_cdf(-1e3);
        assert!(v.is_finite());
        // leading behaviour -x²/2 - ln|x| - ½ln2π
        let lead = -5e5 - 1e3f64.ln() - LN_SQRT_2PI;
        assert!((v - lead).abs() < 1e-5);
        assert!(ln_std_normal_cdf(1e3) == 0.0);
        assert!(ln_std_normal_cdf(8.0) < 0.0);
    }

    #[test]
    fn mills_ratio_matches_direct_form() {
        for &x in &[-30.0, -19.0, -3.0, 0.0, 2.5, 7.0] {
            let direct = (std_normal_cdf(x) / std_normal_pdf(x)).ln();
            assert!((ln_mills_ratio(x) - direct).abs() < 1e-11, "{x}");
        }
        assert!(ln_mills_ratio(-1e6).is_finite());
        assert!(ln_mills_ratio(1e6).is_finite());
    }

    #[test]
    fn log_sum_exp_and_logistic() {
        assert!((log_sum_exp2(0.0, 0.0) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(log_sum_exp2(1000.0, f64::NEG_INFINITY), 1000.0);
        assert!((log_sum_exp2(-1000.0, -1001.0) - (-1000.0 + (-1.0f64).exp().ln_1p())).abs() < 1e-12);
        assert_eq!(logistic(f64::INFINITY), 1.0);
        assert_eq!(logistic(f64::NEG_INFINITY), 0.0);
        assert!((logistic(0.0) - 0.5).abs() < 1e-16);
    }
}
