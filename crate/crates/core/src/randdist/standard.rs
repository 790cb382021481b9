//! Thin wrappers over `rand_distr` fixing the parameterisations used by the model.

use rand::Rng;
use rand_distr::{Beta, Distribution, Exp1, Gamma, StandardNormal};

pub fn sample_normal<R: Rng + ?Sized>(rng: &mut R, mean: f64, sd: f64) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    mean + sd * z
}

pub fn sample_exp1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Exp1)
}

pub fn sample_bernoulli<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    let u: f64 = rng.random();
    u < p
}

/// Gamma with the given shape and *scale* (mean `shape * scale`).
///
/// Panics if shape or scale is not positive and finite.
pub fn sample_gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64, scale: f64) -> f64 {
    Gamma::new(shape, scale)
        .unwrap_or_else(|e| panic!("gamma({shape}, {scale}): {e}"))
        .sample(rng)
}

/// Inverse gamma IG(a, b) with density `x^{-a-1} e^{-1/(b x)} / (Γ(a) b^a)`,
/// i.e. `1/X ~ Gamma(shape a, scale b)` and `E[X] = 1/(b (a-1))` for `a > 1`.
pub fn sample_inv_gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64, b: f64) -> f64 {
    1.0 / sample_gamma(rng, shape, b)
}

pub fn sample_beta<R: Rng + ?Sized>(rng: &mut R, a: f64, b: f64) -> f64 {
    Beta::new(a, b)
        .unwrap_or_else(|e| panic!("beta({a}, {b}): {e}"))
        .sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn moments(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, (v / n).sqrt())
    }

    #[test]
    fn inverse_gamma_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        // a = 4, b = 0.5 → mean 1/(0.5·3) = 2/3
        let xs: Vec<f64> = (0..100_000).map(|_| sample_inv_gamma(&mut rng, 4.0, 0.5)).collect();
        let (m, se) = moments(&xs);
        assert!((m - 2.0 / 3.0).abs() < 3.0 * se, "{m}");
    }

    #[test]
    fn gamma_small_shape_and_scale_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for &(shape, scale) in &[(0.3, 2.0), (1.0, 1.0), (11.0, 0.1)] {
            let xs: Vec<f64> = (0..100_000).map(|_| sample_gamma(&mut rng, shape, scale)).collect();
            assert!(xs.iter().all(|&x| x >= 0.0));
            let (m, se) = moments(&xs);
            assert!((m - shape * scale).abs() < 3.0 * se, "{shape},{scale}: {m}");
        }
    }

    #[test]
    fn beta_and_bernoulli_means() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let xs: Vec<f64> = (0..100_000).map(|_| sample_beta(&mut rng, 4.0, 1.0)).collect();
        let (m, se) = moments(&xs);
        assert!((m - 0.8).abs() < 3.0 * se);
        let hits = (0..100_000).filter(|_| sample_bernoulli(&mut rng, 0.25)).count();
        let f = hits as f64 / 1e5;
        assert!((f - 0.25).abs() < 3.0 * (0.25f64 * 0.75 / 1e5).sqrt());
        assert!(!sample_bernoulli(&mut rng, 0.0));
    }
}
