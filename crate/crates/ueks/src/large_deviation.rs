//! Computable large-deviation quantities: the exact Kolmogorov rate
//! function, variance maximization over a kernel family, leading rate
//! coefficients, and two exponential tail bounds.

use crate::kernels::{KernelFamily, TestId};
use crate::opt::{golden_min, scan_max_noisy};
use crate::quad::QuadratureConfig;
use crate::{Error, Result};

/// Leading-order description of a family's large-deviation rate.
///
/// `leading_coeff` is `1 / (2 m^2 phi0_sq)`: under the null,
/// `-n^-1 ln P(T_n > a)` tends to `leading_coeff * a^2 + O(a^3)`.
#[derive(Debug, Clone, Copy)]
pub struct RateFunction {
    pub family: TestId,
    pub degree: usize,
    /// Supremum of the variance function over the parameter interval.
    pub phi0_sq: f64,
    /// Where that supremum is attained.
    pub argmax_t: f64,
    pub leading_coeff: f64,
}

impl RateFunction {
    /// The defining identity `leading_coeff * 2 m^2 phi0_sq = 1`, as held
    /// by this value's own fields.
    pub fn identity_residual(&self) -> f64 {
        self.leading_coeff * 2.0 * (self.degree * self.degree) as f64 * self.phi0_sq - 1.0
    }
}

/// Kolmogorov's large-deviation integrand
/// `f(a,t) = (a+t) ln((a+t)/t) + (1-a-t) ln((1-a-t)/(1-t))` for
/// `0 <= t <= 1-a`, `+inf` for `1-a < t <= 1`, with `0 ln 0 = 0`.
pub fn kolmogorov_f(a: f64, t: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("need a in (0,1), got {a}")));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("need t in [0,1], got {t}")));
    }
    if t > 1.0 - a {
        return Ok(f64::INFINITY);
    }
    let mut total = 0.0;
    // (a+t) ln((a+t)/t): a > 0 makes the coefficient positive, so t = 0
    // gives +inf rather than the 0 ln 0 case
    if t == 0.0 {
        return Ok(f64::INFINITY);
    }
    total += (a + t) * ((a + t) / t).ln();
    let rest = 1.0 - a - t;
    if rest > 0.0 {
        total += rest * (rest / (1.0 - t)).ln();
    }
    Ok(total)
}

/// `f0(a) = inf over t in (0,1) of f(a, t)`, by a 1000-point bracketing
/// scan followed by golden-section refinement.
pub fn kolmogorov_f0(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("need a in (0,1), got {a}")));
    }
    let hi = 1.0 - a;
    let obj = |t: f64| kolmogorov_f(a, t).expect("t within domain");
    let points = 1000usize;
    let step = hi / points as f64;
    let mut best_i = 1usize;
    let mut best = f64::INFINITY;
    for i in 1..=points {
        let t = step * i as f64;
        let v = obj(t.min(hi));
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let lo_b = step * (best_i.saturating_sub(1)) as f64;
    let hi_b = (step * (best_i + 1) as f64).min(hi);
    let lo_b = if lo_b <= 0.0 { step * 1e-6 } else { lo_b };
    let (_, f_star) = golden_min(obj, lo_b, hi_b, 1e-10);
    // the infimum can also sit at the boundary t = 1 - a where
    // f = -ln(1-a)
    let boundary = obj(hi);
    Ok(f_star.min(boundary).min(best))
}

/// Global maximum of the variance function over the (truncated) parameter
/// interval: a 1000-point scan with golden-section refinement of every
/// scan-level bracket. Near-ties resolve to the smallest `|t*|`.
pub fn maximize_variance(fam: &KernelFamily) -> Result<(f64, f64)> {
    let (lo, hi) = fam.truncated_interval();
    let failure = std::cell::Cell::new(false);
    // quadrature-backed variance functions carry evaluation noise at the
    // quadrature tolerance; tell the maximizer so refinement stops there
    let quad_cfg = QuadratureConfig {
        abs_tol: 1e-12,
        ..QuadratureConfig::default()
    };
    let noise = if fam.has_analytic_variance() {
        1e-15
    } else {
        quad_cfg.abs_tol
    };
    let f = |t: f64| {
        let v = if fam.has_analytic_variance() {
            fam.variance_at(t)
        } else {
            fam.variance_numeric(t, &quad_cfg)
        };
        match v {
            Ok(v) => v,
            Err(_) => {
                failure.set(true);
                f64::NEG_INFINITY
            }
        }
    };
    let (t_star, phi0_sq) = scan_max_noisy(f, lo, hi, 1000, 1e-10, noise);
    if failure.get() {
        return Err(Error::Optimization(format!(
            "variance evaluation failed while maximizing {}",
            fam.id
        )));
    }
    if phi0_sq.is_nan() || phi0_sq <= 0.0 {
        return Err(Error::Degenerate(format!(
            "variance function of {} has non-positive maximum {phi0_sq}",
            fam.id
        )));
    }
    Ok((t_star, phi0_sq))
}

/// Leading rate coefficient `c = 1 / (2 m^2 phi0_sq)` of a family.
pub fn ld_leading_coeff(fam: &KernelFamily) -> Result<RateFunction> {
    let (argmax_t, phi0_sq) = maximize_variance(fam)?;
    let m2 = (fam.degree * fam.degree) as f64;
    Ok(RateFunction {
        family: fam.id,
        degree: fam.degree,
        phi0_sq,
        argmax_t,
        leading_coeff: 1.0 / (2.0 * m2 * phi0_sq),
    })
}

/// Exponential bound for a single non-degenerate U-statistic:
/// `P(|U_n| > z) <= 4 exp(-n z^2 / (2 m^2 sigma^2 + L z))` with
/// `L = (2^(m+3) m^m + (2/3) m^-1) M`.
pub fn arcones_bound(n: u64, z: f64, m: u32, sigma_sq: f64, bound_m: f64) -> f64 {
    debug_assert!(z > 0.0 && sigma_sq > 0.0 && bound_m > 0.0 && m >= 1);
    let mf = m as f64;
    let l = (2f64.powi(m as i32 + 3) * mf.powi(m as i32) + (2.0 / 3.0) / mf) * bound_m;
    let denom = 2.0 * mf * mf * sigma_sq + l * z;
    (4.0 * (-(n as f64) * z * z / denom).exp()).min(4.0)
}

/// Binomial tail bound `P(Bin(n, 1/N) > n tau) <= 4^n exp(-n tau ln N)`.
pub fn binomial_tail_bound(n: u64, big_n: u64, tau: f64) -> f64 {
    debug_assert!(big_n >= 2 && tau > 0.0 && tau < 1.0);
    let nf = n as f64;
    (nf * (4f64.ln() - tau * (big_n as f64).ln())).exp()
}
