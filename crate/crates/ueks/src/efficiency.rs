//! Local Bahadur efficiency of the built-in tests under parametric
//! alternatives.
//!
//! For a test with leading rate coefficient `c` and population limit
//! `b(theta)` of its two-sided statistic, the local exact slope is
//! `2 c b(theta)^2` as `theta -> 0`. Divided by the local double
//! Kullback-Leibler coefficient this gives the local efficiency, a number
//! in [0, 1]. Both coefficients are estimated at `theta` in
//! {0.02, 0.01, 0.005} and Richardson-extrapolated to zero.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use crate::distributions::{kl_divergence_to_density, min_kl_to_null, Distribution, NullFamily};
use crate::kernels::{family, TestId};
use crate::large_deviation::ld_leading_coeff;
use crate::opt::scan_max;
use crate::quad::{self, QuadratureConfig};
use crate::{Error, Result};

/// Parameter values at which local coefficients are evaluated before
/// extrapolation.
pub const THETAS: [f64; 3] = [0.02, 0.01, 0.005];

/// Identifiers of the built-in alternative families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AltId {
    /// Survival `exp(-x^(1+theta))` against the exponential-scale null.
    Weibull,
    /// The Makeham-type density against the exponential-scale null.
    Makeham,
    /// `N(theta, 1)` against the symmetric null.
    NormalShift,
    /// `exp(1 + theta)`: stays inside the exponential-scale null, so every
    /// scale-free test has zero slope against it.
    ExpScale,
}

impl AltId {
    pub const ALL: [AltId; 4] = [
        AltId::Weibull,
        AltId::Makeham,
        AltId::NormalShift,
        AltId::ExpScale,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AltId::Weibull => "weibull",
            AltId::Makeham => "makeham",
            AltId::NormalShift => "normshift",
            AltId::ExpScale => "expscale",
        }
    }
}

impl fmt::Display for AltId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AltId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AltId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownId(format!("alternative id `{s}`")))
    }
}

/// A one-parameter family of alternatives whose member at 0 belongs to the
/// composite null.
#[derive(Clone, Copy)]
pub struct AlternativeFamily {
    pub id: AltId,
    member: fn(f64) -> Distribution,
    pub null_family: NullFamily,
}

impl AlternativeFamily {
    pub fn member(&self, theta: f64) -> Distribution {
        (self.member)(theta)
    }
}

/// The built-in alternative family for an id.
pub fn alternative(id: AltId) -> AlternativeFamily {
    match id {
        AltId::Weibull => AlternativeFamily {
            id,
            member: |theta| Distribution::WeibullAlt { theta },
            null_family: NullFamily::ExponentialScale,
        },
        AltId::Makeham => AlternativeFamily {
            id,
            member: |theta| Distribution::MakehamAlt { theta },
            null_family: NullFamily::ExponentialScale,
        },
        AltId::NormalShift => AlternativeFamily {
            id,
            member: |theta| Distribution::NormalShift { theta },
            null_family: NullFamily::Symmetric,
        },
        AltId::ExpScale => AlternativeFamily {
            id,
            member: |theta| Distribution::Exponential { rate: 1.0 + theta },
            null_family: NullFamily::ExponentialScale,
        },
    }
}

type DiffFn<'a> = Box<dyn Fn(f64) -> f64 + 'a>;

/// Almost-sure limit `b(theta)` of a two-sided statistic under `alt`: the
/// supremum over t of the absolute difference between the two population
/// dfs the statistic compares.
pub fn population_limit(test: TestId, alt: &Distribution) -> Result<f64> {
    let cfg = QuadratureConfig::default();
    let (lo, hi) = alt.truncated_range(1e-10);

    let failure: Cell<Option<Error>> = Cell::new(None);
    let guard = |r: Result<f64>| match r {
        Ok(v) => v,
        Err(e) => {
            failure.set(Some(e));
            f64::NEG_INFINITY
        }
    };

    let (points, range, d): (usize, (f64, f64), DiffFn<'_>) = match test {
        TestId::Desu => (
            2000,
            (0.0, hi),
            Box::new(move |x| alt.survival(0.5 * x).powi(2) - alt.survival(x)),
        ),
        TestId::Angus => (
            2000,
            (0.0, hi),
            Box::new(move |x| alt.survival(2.0 * x) - alt.survival(x).powi(2)),
        ),
        TestId::PuriRubin => {
            let alt = *alt;
            (
                300,
                (0.0, hi),
                Box::new(move |t| {
                    // the integrand kinks where x - t crosses the support
                    // boundary; split there or the panel error estimate can
                    // miss a narrow feature at small t
                    let p = guard(quad::integrate_with_breaks(
                        |x| alt.pdf(x) * (alt.cdf(x + t) - alt.cdf(x - t)),
                        lo.max(0.0),
                        hi,
                        &[t],
                        &QuadratureConfig {
                            abs_tol: 1e-11,
                            ..cfg
                        },
                    ));
                    p - alt.cdf(t)
                }),
            )
        }
        TestId::SymmetryH => {
            let alt = *alt;
            let wide = hi.abs().max(lo.abs());
            let center = quad::integrate_with_breaks(
                |x| alt.pdf(x) * (alt.cdf(x) + alt.cdf(-x) - 1.0),
                -wide,
                wide,
                &[0.0],
                &cfg,
            )?;
            (
                2000,
                (-wide, wide),
                Box::new(move |t| alt.cdf(t) + alt.cdf(-t) - 1.0 - center),
            )
        }
        TestId::Bh => {
            let alt = *alt;
            let wide = hi.abs().max(lo.abs());
            (
                2000,
                (0.0, wide),
                Box::new(move |x| {
                    let a = alt.cdf(x);
                    let b = alt.cdf(-x);
                    (a - b) - (a * a - b * b)
                }),
            )
        }
        TestId::Polya => {
            let alt = *alt;
            let wide = hi.abs().max(lo.abs());
            (
                300,
                (-wide, wide),
                Box::new(move |t| {
                    // split where the reflected argument crosses a finite
                    // support edge of the alternative
                    let sq = t * std::f64::consts::SQRT_2;
                    let (slo, shi) = alt.support();
                    let mut breaks = Vec::new();
                    if slo.is_finite() {
                        breaks.push(sq - slo);
                        breaks.push(slo);
                    }
                    if shi.is_finite() {
                        breaks.push(sq - shi);
                        breaks.push(shi);
                    }
                    let p = guard(quad::integrate_with_breaks(
                        |x| alt.pdf(x) * alt.cdf(sq - x),
                        -wide,
                        wide,
                        &breaks,
                        &QuadratureConfig {
                            abs_tol: 1e-11,
                            ..cfg
                        },
                    ));
                    p - alt.cdf(t)
                }),
            )
        }
        TestId::Kolmogorov | TestId::MaxKernel => {
            return Err(Error::Parameter(format!(
                "population limit is not defined for {test}: the statistic \
                 compares against a caller-supplied hypothesized df"
            )));
        }
    };

    let (_, b) = scan_max(|t| d(t).abs(), range.0, range.1, points, 1e-12);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(b)
}

/// A locally quadratic coefficient estimated at [`THETAS`] and Richardson
/// extrapolated to zero.
#[derive(Debug, Clone, Copy)]
pub struct CoeffEstimate {
    pub value: f64,
    pub per_theta: [f64; 3],
    /// The theta-sequence is monotone or within 1% of itself; when false the
    /// extrapolation is reported but flagged.
    pub converged: bool,
}

fn richardson(v: [f64; 3]) -> CoeffEstimate {
    let r1a = 2.0 * v[1] - v[0];
    let r1b = 2.0 * v[2] - v[1];
    let value = (4.0 * r1b - r1a) / 3.0;
    let monotone = (v[0] <= v[1] && v[1] <= v[2]) || (v[0] >= v[1] && v[1] >= v[2]);
    let spread = (v[0].max(v[1]).max(v[2]) - v[0].min(v[1]).min(v[2])).abs();
    let close = spread <= 0.01 * v[1].abs().max(1e-12);
    CoeffEstimate {
        value,
        per_theta: v,
        converged: monotone || close,
    }
}

/// Local slope coefficient `lim 2 c b(theta)^2 / theta^2`.
pub fn local_slope_coeff(test: TestId, alt: &AlternativeFamily) -> Result<CoeffEstimate> {
    let c = ld_leading_coeff(&family(test))?.leading_coeff;
    let mut per_theta = [0.0; 3];
    for (slot, &theta) in per_theta.iter_mut().zip(THETAS.iter()) {
        let b = population_limit(test, &alt.member(theta))?;
        *slot = 2.0 * c * b * b / (theta * theta);
    }
    Ok(richardson(per_theta))
}

/// Local double Kullback-Leibler coefficient
/// `lim 2 K*(theta) / theta^2` against the family's composite null.
pub fn local_kl_coeff(alt: &AlternativeFamily) -> Result<CoeffEstimate> {
    let cfg = QuadratureConfig::default();
    let mut per_theta = [0.0; 3];
    for (slot, &theta) in per_theta.iter_mut().zip(THETAS.iter()) {
        let k = min_kl_to_null(&alt.member(theta), alt.null_family, &cfg)?;
        *slot = 2.0 * k / (theta * theta);
    }
    Ok(richardson(per_theta))
}

/// Full local-efficiency computation for a (test, alternative) pair.
#[derive(Debug, Clone)]
pub struct EfficiencyReport {
    pub test: TestId,
    pub alt: AltId,
    pub slope_coeff: f64,
    pub kl_coeff: f64,
    pub efficiency: f64,
    pub thetas: [f64; 3],
    pub slope_per_theta: [f64; 3],
    pub kl_per_theta: [f64; 3],
    pub converged: bool,
}

/// Local Bahadur efficiency: slope coefficient over double-KL coefficient.
pub fn local_efficiency(test: TestId, alt: &AlternativeFamily) -> Result<EfficiencyReport> {
    let slope = local_slope_coeff(test, alt)?;
    let kl = local_kl_coeff(alt)?;
    if kl.value.is_nan() || kl.value <= 1e-9 {
        return Err(Error::Indeterminate(format!(
            "KL coefficient {:.3e} vanishes for alternative {}; the \
             efficiency ratio is undefined",
            kl.value, alt.id
        )));
    }
    Ok(EfficiencyReport {
        test,
        alt: alt.id,
        slope_coeff: slope.value,
        kl_coeff: kl.value,
        efficiency: slope.value / kl.value,
        thetas: THETAS,
        slope_per_theta: slope.per_theta,
        kl_per_theta: kl.per_theta,
        converged: slope.converged && kl.converged,
    })
}

/// Symmetrized density `(f(x) + f(-x)) / 2`, the information projection of
/// `f` onto the symmetric null. Exposed for oracle tests.
pub fn kl_to_symmetrized(alt: &Distribution, cfg: &QuadratureConfig) -> Result<f64> {
    kl_divergence_to_density(alt, |x| 0.5 * (alt.pdf(x) + alt.pdf(-x)), cfg)
}
