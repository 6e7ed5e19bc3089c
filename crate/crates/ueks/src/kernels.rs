//! The t-indexed symmetric kernel families behind the built-in tests,
//! with their analytic projections and variance functions.
//!
//! Each family ships the pieces the rest of the library needs: the kernel
//! evaluator itself, the degree, the null distribution under which the
//! family is centred, a uniform bound, the parameter interval, and (where a
//! closed form exists) the projection `phi(s; t) = E(Phi(X1,..,Xm; t) | X1 = s)`
//! and its variance `sigma^2(t) = E phi^2(X1; t)`. Families without a closed
//! form fall back to adaptive quadrature.

use std::fmt;
use std::str::FromStr;

use crate::distributions::Distribution;
use crate::quad::{self, QuadratureConfig};
use crate::special::normal_cdf;
use crate::{Error, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Stable identifiers of the built-in test families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestId {
    /// Classical Kolmogorov statistic: degree 1, identity kernel.
    Kolmogorov,
    /// `h(x, y) = max(x, y)` against the hypothesized `F^2`.
    MaxKernel,
    /// Exponentiality via `2 min(X, Y) =d X`.
    Desu,
    /// Exponentiality via the simplified lack-of-memory property.
    Angus,
    /// Exponentiality via `|X - Y| =d X`.
    PuriRubin,
    /// Symmetry via the centred sign statistic.
    SymmetryH,
    /// Symmetry via `|X| =d |max(X, Y)|`.
    Bh,
    /// Normality via `(X + Y)/sqrt(2) =d X`.
    Polya,
}

impl TestId {
    pub const ALL: [TestId; 8] = [
        TestId::Kolmogorov,
        TestId::MaxKernel,
        TestId::Desu,
        TestId::Angus,
        TestId::PuriRubin,
        TestId::SymmetryH,
        TestId::Bh,
        TestId::Polya,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TestId::Kolmogorov => "kolmogorov",
            TestId::MaxKernel => "max-kernel",
            TestId::Desu => "desu",
            TestId::Angus => "angus",
            TestId::PuriRubin => "puri-rubin",
            TestId::SymmetryH => "symmetry-h",
            TestId::Bh => "bh",
            TestId::Polya => "polya",
        }
    }
}

impl fmt::Display for TestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TestId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TestId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownId(format!("test id `{s}`")))
    }
}

/// A t-indexed family of centred, bounded, symmetric kernels.
#[derive(Clone, Copy)]
pub struct KernelFamily {
    pub id: TestId,
    /// Kernel degree m.
    pub degree: usize,
    /// Parameter interval (possibly infinite endpoints).
    pub interval: (f64, f64),
    /// Null distribution under which the family is centred.
    pub null: Distribution,
    /// Uniform bound on |Phi|.
    pub bound: f64,
    eval: fn(&[f64], f64) -> f64,
    projection: Option<fn(f64, f64) -> f64>,
    variance: Option<fn(f64) -> f64>,
    /// y-locations where `Phi(s, y; t)` can jump, for quadrature splitting.
    arg_breaks: fn(f64, f64) -> Vec<f64>,
    /// s-locations where `phi(s; t)` can jump or kink.
    proj_breaks: fn(f64) -> Vec<f64>,
}

impl fmt::Debug for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KernelFamily")
            .field("id", &self.id)
            .field("degree", &self.degree)
            .field("interval", &self.interval)
            .field("null", &self.null)
            .field("bound", &self.bound)
            .field("analytic_projection", &self.projection.is_some())
            .field("analytic_variance", &self.variance.is_some())
            .finish()
    }
}

// --- kernel evaluators -----------------------------------------------------

fn kolmogorov_eval(args: &[f64], t: f64) -> f64 {
    ind(args[0] < t) - t
}

fn max_kernel_eval(args: &[f64], t: f64) -> f64 {
    ind(args[0].max(args[1]) < t) - t * t
}

fn desu_eval(args: &[f64], t: f64) -> f64 {
    let (x, y) = (args[0], args[1]);
    0.5 * (ind(x > t) + ind(y > t)) - ind(x.min(y) > 0.5 * t)
}

fn angus_eval(args: &[f64], t: f64) -> f64 {
    // t lives on the uniform scale; data are exponential
    let s = -(-t).ln_1p();
    let (a, b) = (ind(args[0] < s), ind(args[1] < s));
    a + b - a * b - 0.5 * (ind(args[0] < 2.0 * s) + ind(args[1] < 2.0 * s))
}

fn puri_rubin_eval(args: &[f64], t: f64) -> f64 {
    let (x, y) = (args[0], args[1]);
    ind((x - y).abs() < t) - 0.5 * (ind(x < t) + ind(y < t))
}

fn symmetry_h_eval(args: &[f64], t: f64) -> f64 {
    let (x, y) = (args[0], args[1]);
    0.5 * (ind(x < t) + ind(x < -t) + ind(y < t) + ind(y < -t)
        - 2.0 * ind(x + y < 0.0)
        - 1.0)
}

fn bh_eval(args: &[f64], t: f64) -> f64 {
    // the family is even in t; non-strict comparisons as the
    // characterization uses closed events
    let tau = t.abs();
    let (x, y) = (args[0], args[1]);
    ind(x.max(y).abs() <= tau) - 0.5 * (ind(x.abs() <= tau) + ind(y.abs() <= tau))
}

fn polya_eval(args: &[f64], t: f64) -> f64 {
    let (x, y) = (args[0], args[1]);
    ind(x + y < t * SQRT_2) - 0.5 * (ind(x < t) + ind(y < t))
}

#[inline]
fn ind(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

// --- analytic projections --------------------------------------------------

fn kolmogorov_proj(s: f64, t: f64) -> f64 {
    ind(s < t) - t
}

fn max_kernel_proj(s: f64, t: f64) -> f64 {
    ind(s < t) * t - t * t
}

fn desu_proj(s: f64, t: f64) -> f64 {
    0.5 * (-t).exp() + 0.5 * ind(s > t) - (-0.5 * t).exp() * ind(s > 0.5 * t)
}

fn angus_proj(s: f64, t: f64) -> f64 {
    let z = -(-t).ln_1p();
    (1.0 - t) * ind(s < z) + 0.5 * t * t - 0.5 * ind(s < 2.0 * z)
}

fn puri_rubin_proj(s: f64, t: f64) -> f64 {
    let head = if s >= t { (t - s).exp() - 0.5 } else { 0.0 };
    head - (-t).exp() * ((-s).exp() - 0.5)
}

fn symmetry_h_proj(s: f64, t: f64) -> f64 {
    0.5 * (ind(s < t) + ind(s < -t) + s - 1.0)
}

fn bh_proj(s: f64, t: f64) -> f64 {
    let tau = t.abs();
    if s < -tau {
        0.5 * tau
    } else if s > tau {
        -0.5 * tau
    } else {
        0.0
    }
}

fn polya_proj(s: f64, t: f64) -> f64 {
    normal_cdf(t * SQRT_2 - s) - 0.5 * normal_cdf(t) - 0.5 * ind(s < t)
}

// --- analytic variance functions --------------------------------------------

fn kolmogorov_var(t: f64) -> f64 {
    t * (1.0 - t)
}

fn max_kernel_var(t: f64) -> f64 {
    t * t * t * (1.0 - t)
}

fn desu_var(t: f64) -> f64 {
    0.25 * (-t).exp() * (1.0 - (-t).exp())
}

fn angus_var(t: f64) -> f64 {
    0.25 * t * (1.0 - t) * (1.0 - t) * (2.0 - t)
}

fn puri_rubin_var(t: f64) -> f64 {
    let e = (-t).exp();
    (e + e * e - 2.0 * e * e * e) / 12.0
}

fn symmetry_h_var(t: f64) -> f64 {
    0.25 * (t * t - t.abs() + 1.0 / 3.0)
}

fn bh_var(t: f64) -> f64 {
    0.25 * t * t * (1.0 - t.abs())
}

// --- jump locations of the integrands -----------------------------------------

fn kolmogorov_breaks(_s: f64, t: f64) -> Vec<f64> {
    vec![t]
}

fn max_kernel_breaks(_s: f64, t: f64) -> Vec<f64> {
    vec![t]
}

fn desu_breaks(_s: f64, t: f64) -> Vec<f64> {
    vec![t, 0.5 * t]
}

fn angus_breaks(_s: f64, t: f64) -> Vec<f64> {
    let z = -(-t).ln_1p();
    vec![z, 2.0 * z]
}

fn puri_rubin_breaks(s: f64, t: f64) -> Vec<f64> {
    vec![t, s - t, s + t]
}

fn symmetry_h_breaks(s: f64, t: f64) -> Vec<f64> {
    vec![t, -t, -s]
}

fn bh_breaks(_s: f64, t: f64) -> Vec<f64> {
    vec![t.abs(), -t.abs()]
}

fn polya_breaks(s: f64, t: f64) -> Vec<f64> {
    vec![t, t * SQRT_2 - s]
}

fn kolmogorov_proj_breaks(t: f64) -> Vec<f64> {
    vec![t]
}

fn max_kernel_proj_breaks(t: f64) -> Vec<f64> {
    vec![t]
}

fn desu_proj_breaks(t: f64) -> Vec<f64> {
    vec![t, 0.5 * t]
}

fn angus_proj_breaks(t: f64) -> Vec<f64> {
    let z = -(-t).ln_1p();
    vec![z, 2.0 * z]
}

fn puri_rubin_proj_breaks(t: f64) -> Vec<f64> {
    vec![t]
}

fn symmetry_h_proj_breaks(t: f64) -> Vec<f64> {
    vec![t, -t]
}

fn bh_proj_breaks(t: f64) -> Vec<f64> {
    vec![t.abs(), -t.abs()]
}

fn polya_proj_breaks(t: f64) -> Vec<f64> {
    vec![t]
}

// --- registry ----------------------------------------------------------------

/// The built-in family for a test id.
pub fn family(id: TestId) -> KernelFamily {
    let exp1 = Distribution::Exponential { rate: 1.0 };
    let unif_sym = Distribution::Uniform { lo: -1.0, hi: 1.0 };
    let unif01 = Distribution::Uniform { lo: 0.0, hi: 1.0 };
    match id {
        TestId::Kolmogorov => KernelFamily {
            id,
            degree: 1,
            interval: (0.0, 1.0),
            null: unif01,
            bound: 1.0,
            eval: kolmogorov_eval,
            projection: Some(kolmogorov_proj),
            variance: Some(kolmogorov_var),
            arg_breaks: kolmogorov_breaks,
            proj_breaks: kolmogorov_proj_breaks,
        },
        TestId::MaxKernel => KernelFamily {
            id,
            degree: 2,
            interval: (0.0, 1.0),
            null: unif01,
            bound: 1.0,
            eval: max_kernel_eval,
            projection: Some(max_kernel_proj),
            variance: Some(max_kernel_var),
            arg_breaks: max_kernel_breaks,
            proj_breaks: max_kernel_proj_breaks,
        },
        TestId::Desu => KernelFamily {
            id,
            degree: 2,
            interval: (0.0, f64::INFINITY),
            null: exp1,
            bound: 1.0,
            eval: desu_eval,
            projection: Some(desu_proj),
            variance: Some(desu_var),
            arg_breaks: desu_breaks,
            proj_breaks: desu_proj_breaks,
        },
        TestId::Angus => KernelFamily {
            id,
            degree: 2,
            interval: (0.0, 1.0),
            null: exp1,
            bound: 1.0,
            eval: angus_eval,
            projection: Some(angus_proj),
            variance: Some(angus_var),
            arg_breaks: angus_breaks,
            proj_breaks: angus_proj_breaks,
        },
        TestId::PuriRubin => KernelFamily {
            id,
            degree: 2,
            interval: (0.0, f64::INFINITY),
            null: exp1,
            bound: 1.0,
            eval: puri_rubin_eval,
            projection: Some(puri_rubin_proj),
            variance: Some(puri_rubin_var),
            arg_breaks: puri_rubin_breaks,
            proj_breaks: puri_rubin_proj_breaks,
        },
        TestId::SymmetryH => KernelFamily {
            id,
            degree: 2,
            interval: (-1.0, 1.0),
            null: unif_sym,
            bound: 1.5,
            eval: symmetry_h_eval,
            projection: Some(symmetry_h_proj),
            variance: Some(symmetry_h_var),
            arg_breaks: symmetry_h_breaks,
            proj_breaks: symmetry_h_proj_breaks,
        },
        TestId::Bh => KernelFamily {
            id,
            degree: 2,
            interval: (-1.0, 1.0),
            null: unif_sym,
            bound: 1.0,
            eval: bh_eval,
            projection: Some(bh_proj),
            variance: Some(bh_var),
            arg_breaks: bh_breaks,
            proj_breaks: bh_proj_breaks,
        },
        TestId::Polya => KernelFamily {
            id,
            degree: 2,
            interval: (f64::NEG_INFINITY, f64::INFINITY),
            null: Distribution::StdNormal,
            bound: 1.0,
            eval: polya_eval,
            projection: Some(polya_proj),
            // no closed form; always evaluated by quadrature
            variance: None,
            arg_breaks: polya_breaks,
            proj_breaks: polya_proj_breaks,
        },
    }
}

/// All built-in families.
pub fn all_families() -> Vec<KernelFamily> {
    TestId::ALL.iter().map(|&id| family(id)).collect()
}

impl KernelFamily {
    /// Evaluate the kernel at `args` (exactly `degree` entries) and `t`.
    pub fn eval_kernel(&self, args: &[f64], t: f64) -> Result<f64> {
        if args.len() != self.degree {
            return Err(Error::Arity {
                expected: self.degree,
                got: args.len(),
            });
        }
        Ok((self.eval)(args, t))
    }

    pub fn has_analytic_projection(&self) -> bool {
        self.projection.is_some()
    }

    pub fn has_analytic_variance(&self) -> bool {
        self.variance.is_some()
    }

    /// Projection `phi(s; t)`: the registered closed form when present,
    /// otherwise the conditional expectation by quadrature over the null.
    pub fn projection(&self, s: f64, t: f64) -> Result<f64> {
        match self.projection {
            Some(p) => Ok(p(s, t)),
            None => self.projection_numeric(s, t, &QuadratureConfig::default()),
        }
    }

    /// Projection by quadrature: `E Phi(s, X2, ..., Xm; t)` under the null.
    pub fn projection_numeric(&self, s: f64, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
        if self.degree == 1 {
            return Ok((self.eval)(&[s], t));
        }
        if self.degree != 2 {
            return Err(Error::Parameter(format!(
                "numeric projection implemented for degree <= 2, family has degree {}",
                self.degree
            )));
        }
        let (lo, hi) = self.null.truncated_range(cfg.tail_eps);
        // split at the kernel's jump locations: a jump interior to a
        // Gauss-Kronrod panel can defeat its error estimate
        quad::integrate_with_breaks(
            |y| (self.eval)(&[s, y], t) * self.null.pdf(y),
            lo,
            hi,
            &(self.arg_breaks)(s, t),
            cfg,
        )
    }

    /// Variance `sigma^2(t)`: the registered closed form when present,
    /// otherwise `int phi^2(s; t) dF_null(s)` by quadrature.
    pub fn variance_at(&self, t: f64) -> Result<f64> {
        match self.variance {
            Some(v) => Ok(v(t)),
            None => self.variance_numeric(t, &QuadratureConfig::default()),
        }
    }

    /// Variance by quadrature of the squared projection.
    pub fn variance_numeric(&self, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
        let (lo, hi) = self.null.truncated_range(cfg.tail_eps);
        match self.projection {
            Some(p) => quad::integrate_with_breaks(
                |s| p(s, t).powi(2) * self.null.pdf(s),
                lo,
                hi,
                &(self.proj_breaks)(t),
                cfg,
            ),
            None => {
                // fully numeric: nested quadrature with a looser inner
                // tolerance
                let inner = QuadratureConfig {
                    abs_tol: cfg.abs_tol.max(1e-11),
                    ..*cfg
                };
                let failure = std::cell::Cell::new(false);
                let value = quad::integrate(
                    |s| match self.projection_numeric(s, t, &inner) {
                        Ok(p) => p * p * self.null.pdf(s),
                        Err(_) => {
                            failure.set(true);
                            f64::NAN
                        }
                    },
                    lo,
                    hi,
                    &QuadratureConfig {
                        abs_tol: cfg.abs_tol.max(1e-9),
                        ..*cfg
                    },
                );
                if failure.get() {
                    return Err(Error::Integration(
                        "inner projection quadrature failed".into(),
                    ));
                }
                value
            }
        }
    }

    /// Parameter interval with infinite endpoints replaced by null
    /// quantiles at probability 1e-6 (the variance functions vanish in the
    /// tails, so maxima always lie well inside).
    pub fn truncated_interval(&self) -> (f64, f64) {
        let (a, b) = self.interval;
        let lo = if a.is_finite() {
            a
        } else {
            self.null.quantile(1e-6).expect("fixed probability")
        };
        let hi = if b.is_finite() {
            b
        } else {
            self.null.quantile(1.0 - 1e-6).expect("fixed probability")
        };
        (lo, hi)
    }
}

/// Per-point record of an analytic-versus-numeric comparison.
#[derive(Debug, Clone, Copy)]
pub struct ConsistencyPoint {
    pub t: f64,
    /// Largest |analytic - numeric| projection gap over the probe s-grid.
    pub projection_gap: f64,
    /// |analytic - numeric| variance gap (0 when no analytic variance).
    pub variance_gap: f64,
}

/// Report of [`numeric_consistency`].
#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub points: Vec<ConsistencyPoint>,
    pub max_projection_gap: f64,
    pub max_variance_gap: f64,
}

/// Cross-check the registered closed forms against quadrature on a t-grid.
///
/// The projection is probed on a fixed grid of null quantiles chosen off
/// the kernel's own jump locations.
pub fn numeric_consistency(fam: &KernelFamily, grid: &[f64]) -> Result<ConsistencyReport> {
    if fam.projection.is_none() && fam.variance.is_none() {
        return Err(Error::Parameter(format!(
            "family {} has no analytic projection or variance to check",
            fam.id
        )));
    }
    let cfg = QuadratureConfig::default();
    // irrational-ish probabilities keep probe points off data-aligned kinks
    let probes: Vec<f64> = (1..=19)
        .map(|k| fam.null.quantile(k as f64 / 20.0 + 0.013).expect("interior"))
        .collect();

    let mut points = Vec::with_capacity(grid.len());
    let mut max_p = 0.0f64;
    let mut max_v = 0.0f64;
    for &t in grid {
        let mut projection_gap = 0.0f64;
        if let Some(p) = fam.projection {
            for &s in &probes {
                let numeric = fam.projection_numeric(s, t, &cfg)?;
                projection_gap = projection_gap.max((p(s, t) - numeric).abs());
            }
        }
        let variance_gap = if let Some(v) = fam.variance {
            (v(t) - fam.variance_numeric(t, &cfg)?).abs()
        } else {
            0.0
        };
        max_p = max_p.max(projection_gap);
        max_v = max_v.max(variance_gap);
        points.push(ConsistencyPoint {
            t,
            projection_gap,
            variance_gap,
        });
    }
    Ok(ConsistencyReport {
        points,
        max_projection_gap: max_p,
        max_variance_gap: max_v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desu_hand_evaluation() {
        let fam = family(TestId::Desu);
        // 1/2 (I{3>4} + I{5>4}) - I{min(3,5) > 2} = 1/2 - 1 = -1/2
        assert_eq!(fam.eval_kernel(&[3.0, 5.0], 4.0).unwrap(), -0.5);
    }

    #[test]
    fn bh_coincident_arguments_inside() {
        let fam = family(TestId::Bh);
        // |x| <= t: both indicators fire and cancel
        assert_eq!(fam.eval_kernel(&[0.4, 0.4], 0.5).unwrap(), 0.0);
        assert_eq!(fam.eval_kernel(&[0.5, 0.5], 0.5).unwrap(), 0.0);
    }

    #[test]
    fn symmetry_h_hand_evaluation() {
        let fam = family(TestId::SymmetryH);
        // 1/2 (I{0.2<0.5} + I{0.2<-0.5} + I{-0.2<0.5} + I{-0.2<-0.5}
        //      - 2 I{0<0} - 1) = 1/2 (1 + 0 + 1 + 0 - 0 - 1) = 1/2
        assert_eq!(fam.eval_kernel(&[0.2, -0.2], 0.5).unwrap(), 0.5);
    }

    #[test]
    fn arity_checked() {
        let fam = family(TestId::Desu);
        assert!(matches!(
            fam.eval_kernel(&[1.0], 0.5),
            Err(Error::Arity { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn kernels_bounded_and_symmetric() {
        let mut k = 0u64;
        let mut next = || {
            k += 1;
            crate::rng::UniformStream::new(31).u01(k)
        };
        for fam in all_families() {
            if fam.degree != 2 {
                continue;
            }
            let (lo, hi) = fam.truncated_interval();
            for _ in 0..500 {
                let x = fam.null.quantile(next()).unwrap();
                let y = fam.null.quantile(next()).unwrap();
                let t = lo + (hi - lo) * next();
                let v = fam.eval_kernel(&[x, y], t).unwrap();
                let w = fam.eval_kernel(&[y, x], t).unwrap();
                assert_eq!(v, w, "{}: kernel not symmetric", fam.id);
                assert!(v.abs() <= fam.bound + 1e-15, "{}: |{v}| > {}", fam.id, fam.bound);
            }
        }
    }

    #[test]
    fn desu_projection_spot_value() {
        // s = 50 > t = 1 puts both indicators on:
        // 1/2 e^-1 + 1/2 - e^-1/2 = 0.0774090609...
        let fam = family(TestId::Desu);
        let v = fam.projection(50.0, 1.0).unwrap();
        assert!((v - 0.077_409_060_9).abs() < 1e-9);
        // quadrature oracle agrees to 1e-8
        let q = fam
            .projection_numeric(50.0, 1.0, &QuadratureConfig::default())
            .unwrap();
        assert!((v - q).abs() < 1e-8, "analytic {v} vs numeric {q}");
    }

    #[test]
    fn bh_projection_zero_in_core() {
        let fam = family(TestId::Bh);
        for &t in &[0.1, 0.4, 0.9] {
            assert_eq!(fam.projection(0.0, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn symmetry_h_projection_at_zero() {
        // direct substitution t = 0: both indicators coincide
        let fam = family(TestId::SymmetryH);
        for &z in &[-0.7, -0.1, 0.3, 0.9] {
            let expected = 0.5 * (2.0 * ind(z < 0.0) + z - 1.0);
            assert_eq!(fam.projection(z, 0.0).unwrap(), expected);
        }
    }

    #[test]
    fn desu_variance_at_ln2() {
        let fam = family(TestId::Desu);
        let v = fam.variance_at(std::f64::consts::LN_2).unwrap();
        assert!((v - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn angus_variance_vanishes_at_endpoints() {
        let fam = family(TestId::Angus);
        assert_eq!(fam.variance_at(0.0).unwrap(), 0.0);
        assert_eq!(fam.variance_at(1.0).unwrap(), 0.0);
    }

    #[test]
    fn puri_rubin_variance_at_closed_form_argmax() {
        let fam = family(TestId::PuriRubin);
        let t_star = -((7.0f64.sqrt() + 1.0) / 6.0).ln();
        let v = fam.variance_at(t_star).unwrap();
        let expected = (10.0 + 7.0 * 7.0f64.sqrt()) / 648.0;
        assert!((v - expected).abs() < 1e-12, "{v} vs {expected}");
        assert!((expected - 0.04401).abs() < 5e-5);
    }

    #[test]
    fn desu_consistency_on_grid() {
        let fam = family(TestId::Desu);
        let grid: Vec<f64> = (0..50).map(|i| 0.05 + 4.95 * i as f64 / 49.0).collect();
        let report = numeric_consistency(&fam, &grid).unwrap();
        assert!(
            report.max_projection_gap < 1e-6,
            "projection gap {}",
            report.max_projection_gap
        );
        assert!(
            report.max_variance_gap < 1e-6,
            "variance gap {}",
            report.max_variance_gap
        );
    }

    #[test]
    fn symmetry_h_consistency_on_grid() {
        let fam = family(TestId::SymmetryH);
        let grid: Vec<f64> = (0..41).map(|i| -1.0 + 2.0 * i as f64 / 40.0).collect();
        let report = numeric_consistency(&fam, &grid).unwrap();
        assert!(report.max_projection_gap < 1e-6, "{}", report.max_projection_gap);
        assert!(report.max_variance_gap < 1e-6, "{}", report.max_variance_gap);
    }

    #[test]
    fn polya_variance_at_zero_is_1_over_48() {
        let fam = family(TestId::Polya);
        let v = fam.variance_at(0.0).unwrap();
        assert!((v - 1.0 / 48.0).abs() < 1e-8, "v = {v}");
    }

    #[test]
    fn test_id_round_trip() {
        for id in TestId::ALL {
            let parsed: TestId = id.as_str().parse().unwrap();
            assert_eq!(parsed, id);
        }
        assert!("nope".parse::<TestId>().is_err());
    }
}
