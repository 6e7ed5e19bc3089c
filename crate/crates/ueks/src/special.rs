//! Standard normal cdf/pdf/quantile helpers shared across modules.

use statrs::function::erf;

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

#[inline]
pub(crate) fn normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

#[inline]
pub(crate) fn normal_cdf(x: f64) -> f64 {
    0.5 * erf::erfc(-x / SQRT_2)
}

/// Inverse standard normal cdf, polished with two Newton steps so the
/// round trip `cdf(quantile(p))` holds to ~1e-14 across (0, 1).
pub(crate) fn normal_quantile(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    let mut x = SQRT_2 * erf::erf_inv(2.0 * p - 1.0);
    for _ in 0..2 {
        let density = normal_pdf(x);
        if density <= f64::MIN_POSITIVE {
            break;
        }
        let step = (normal_cdf(x) - p) / density;
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}
