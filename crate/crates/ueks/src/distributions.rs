//! Null and alternative probability distributions, deterministic sampling,
//! and the Kullback-Leibler machinery behind the efficiency computations.
//!
//! The alternative families are parametrized so that the parameter value 0
//! recovers a member of the corresponding composite null: `weibull-alt(0)`
//! and `makeham-alt(0)` are the standard exponential, `normal-shift(0)` is
//! the standard normal.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use crate::opt::golden_min;
use crate::quad::{self, QuadratureConfig};
use crate::rng::UniformStream;
use crate::special::{normal_cdf, normal_pdf, normal_quantile};
use crate::{Error, Result};

/// A continuous distribution with analytic pdf, cdf, survival and quantile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    /// Exponential with rate `rate > 0`.
    Exponential { rate: f64 },
    /// Uniform on `[lo, hi]`.
    Uniform { lo: f64, hi: f64 },
    /// Standard normal.
    StdNormal,
    /// Normal with mean `theta` and unit variance.
    NormalShift { theta: f64 },
    /// Weibull-type alternative with survival `exp(-x^(1+theta))`, `theta >= 0`.
    WeibullAlt { theta: f64 },
    /// Makeham-type alternative with density
    /// `(1 + theta (1 - e^-x)) exp(-x - theta (x - 1 + e^-x))`, `theta >= 0`.
    MakehamAlt { theta: f64 },
}

/// Which of the four analytic functions [`Distribution::eval`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Pdf,
    Cdf,
    Survival,
    Quantile,
}

impl Distribution {
    pub fn exponential(rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::Parameter(format!("exponential rate must be > 0, got {rate}")));
        }
        Ok(Self::Exponential { rate })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Parameter(format!("uniform needs lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Self::Uniform { lo, hi })
    }

    pub fn std_normal() -> Self {
        Self::StdNormal
    }

    pub fn normal_shift(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::Parameter(format!("normal shift must be finite, got {theta}")));
        }
        Ok(Self::NormalShift { theta })
    }

    pub fn weibull_alt(theta: f64) -> Result<Self> {
        if !(theta.is_finite() && theta >= 0.0) {
            return Err(Error::Parameter(format!("weibull-alt needs theta >= 0, got {theta}")));
        }
        Ok(Self::WeibullAlt { theta })
    }

    pub fn makeham_alt(theta: f64) -> Result<Self> {
        if !(theta.is_finite() && theta >= 0.0) {
            return Err(Error::Parameter(format!("makeham-alt needs theta >= 0, got {theta}")));
        }
        Ok(Self::MakehamAlt { theta })
    }

    /// Support endpoints (closed where finite).
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Self::Exponential { .. } | Self::WeibullAlt { .. } | Self::MakehamAlt { .. } => {
                (0.0, f64::INFINITY)
            }
            Self::Uniform { lo, hi } => (lo, hi),
            Self::StdNormal | Self::NormalShift { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            Self::Exponential { rate } => {
                if x < 0.0 {
                    0.0
                } else {
                    rate * (-rate * x).exp()
                }
            }
            Self::Uniform { lo, hi } => {
                if x >= lo && x <= hi {
                    1.0 / (hi - lo)
                } else {
                    0.0
                }
            }
            Self::StdNormal => normal_pdf(x),
            Self::NormalShift { theta } => normal_pdf(x - theta),
            Self::WeibullAlt { theta } => {
                if x < 0.0 {
                    0.0
                } else {
                    (1.0 + theta) * x.powf(theta) * (-x.powf(1.0 + theta)).exp()
                }
            }
            Self::MakehamAlt { theta } => {
                if x < 0.0 {
                    0.0
                } else {
                    let em = (-x).exp();
                    (1.0 + theta * (1.0 - em)) * (-x - theta * (x - 1.0 + em)).exp()
                }
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Self::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            Self::Uniform { lo, hi } => ((x - lo) / (hi - lo)).clamp(0.0, 1.0),
            Self::StdNormal => normal_cdf(x),
            Self::NormalShift { theta } => normal_cdf(x - theta),
            Self::WeibullAlt { theta } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x.powf(1.0 + theta)).exp_m1()
                }
            }
            Self::MakehamAlt { theta } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x - theta * (x - 1.0 + (-x).exp())).exp_m1()
                }
            }
        }
    }

    pub fn survival(&self, x: f64) -> f64 {
        match *self {
            Self::Exponential { rate } => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-rate * x).exp()
                }
            }
            Self::Uniform { .. } => 1.0 - self.cdf(x),
            Self::StdNormal => normal_cdf(-x),
            Self::NormalShift { theta } => normal_cdf(theta - x),
            Self::WeibullAlt { theta } => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-x.powf(1.0 + theta)).exp()
                }
            }
            Self::MakehamAlt { theta } => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-x - theta * (x - 1.0 + (-x).exp())).exp()
                }
            }
        }
    }

    /// Quantile for `p` in the open interval (0, 1).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("quantile needs p in (0,1), got {p}")));
        }
        Ok(self.quantile_unchecked(p))
    }

    fn quantile_unchecked(&self, p: f64) -> f64 {
        match *self {
            Self::Exponential { rate } => -(-p).ln_1p() / rate,
            Self::Uniform { lo, hi } => lo + p * (hi - lo),
            Self::StdNormal => normal_quantile(p),
            Self::NormalShift { theta } => theta + normal_quantile(p),
            Self::WeibullAlt { theta } => (-(-p).ln_1p()).powf(1.0 / (1.0 + theta)),
            Self::MakehamAlt { theta } => makeham_quantile(theta, p),
        }
    }

    /// Evaluate one of pdf/cdf/survival/quantile with domain checking.
    pub fn eval(&self, kind: FunctionKind, x: f64) -> Result<f64> {
        if kind != FunctionKind::Quantile && !x.is_finite() {
            return Err(Error::Domain(format!("argument must be finite, got {x}")));
        }
        match kind {
            FunctionKind::Pdf => Ok(self.pdf(x)),
            FunctionKind::Cdf => Ok(self.cdf(x)),
            FunctionKind::Survival => Ok(self.survival(x)),
            FunctionKind::Quantile => self.quantile(x),
        }
    }

    /// `n` independent draws by inverse cdf over the counter-based uniform
    /// stream keyed by `seed`. Identical `(self, n, seed)` reproduce bitwise
    /// on every platform and thread count.
    pub fn sample_values(&self, n: usize, seed: u64) -> Vec<f64> {
        let stream = UniformStream::new(seed);
        (0..n)
            .map(|i| self.quantile_unchecked(stream.u01(i as u64)))
            .collect()
    }

    /// Range covering all but `eps` of probability in each tail; finite
    /// support is returned as is.
    pub fn truncated_range(&self, eps: f64) -> (f64, f64) {
        let (lo, hi) = self.support();
        let lo = if lo.is_finite() { lo } else { self.quantile_unchecked(eps) };
        let hi = if hi.is_finite() { hi } else { self.quantile_unchecked(1.0 - eps) };
        (lo, hi)
    }
}

/// Solve `x + theta (x - 1 + e^-x) = -ln(1-p)` by safeguarded Newton.
///
/// The left side is increasing and convex with slope in [1, 1 + theta],
/// which gives the bracket `[y / (1 + theta), y]`.
fn makeham_quantile(theta: f64, p: f64) -> f64 {
    let y = -(-p).ln_1p();
    if theta == 0.0 || y == 0.0 {
        return y;
    }
    let mut lo = y / (1.0 + theta);
    let mut hi = y;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..64 {
        let g = x + theta * (x - 1.0 + (-x).exp()) - y;
        if g > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let slope = 1.0 + theta * (1.0 - (-x).exp());
        let mut next = x - g / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * (1.0 + x.abs()) {
            return next;
        }
        x = next;
    }
    x
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Exponential { rate } => write!(f, "exp:{rate}"),
            Self::Uniform { lo, hi } => write!(f, "unif:{lo}:{hi}"),
            Self::StdNormal => write!(f, "norm"),
            Self::NormalShift { theta } => write!(f, "normshift:{theta}"),
            Self::WeibullAlt { theta } => write!(f, "weibull:{theta}"),
            Self::MakehamAlt { theta } => write!(f, "makeham:{theta}"),
        }
    }
}

impl FromStr for Distribution {
    type Err = Error;

    /// Parse the compact descriptor format: `exp:1.0`, `unif:-1:1`, `norm`,
    /// `normshift:0.1`, `weibull:0.05`, `makeham:0.1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| -> Result<f64> {
            t.parse::<f64>()
                .map_err(|_| Error::Parameter(format!("bad number `{t}` in descriptor `{s}`")))
        };
        match parts.as_slice() {
            ["exp", r] => Self::exponential(num(r)?),
            ["unif", a, b] => Self::uniform(num(a)?, num(b)?),
            ["norm"] => Ok(Self::StdNormal),
            ["normshift", t] => Self::normal_shift(num(t)?),
            ["weibull", t] => Self::weibull_alt(num(t)?),
            ["makeham", t] => Self::makeham_alt(num(t)?),
            _ => Err(Error::UnknownId(format!("distribution descriptor `{s}`"))),
        }
    }
}

/// Composite null hypotheses the alternatives are measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullFamily {
    /// All exponentials `exp(lambda)`, `lambda > 0`.
    ExponentialScale,
    /// All densities symmetric about zero.
    Symmetric,
    /// All normal distributions.
    NormalLocationScale,
}

impl fmt::Display for NullFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ExponentialScale => "exponential-scale",
            Self::Symmetric => "symmetric",
            Self::NormalLocationScale => "normal-location-scale",
        })
    }
}

/// Kullback-Leibler divergence `int f ln(f/g)` in nats.
///
/// The integral runs in the quantile space of `f`, truncated where the cdf
/// of `f` reaches `tail_eps` from either end.
pub fn kl_divergence(
    f: &Distribution,
    g: &Distribution,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let (flo, fhi) = f.support();
    let (glo, ghi) = g.support();
    if flo < glo || fhi > ghi {
        return Err(Error::Divergence(format!(
            "support of {f} is not contained in support of {g}"
        )));
    }
    kl_divergence_to_density(f, |x| g.pdf(x), cfg)
}

/// Kullback-Leibler divergence of `f` against an arbitrary density.
///
/// Used for reference measures that are not representable as a
/// [`Distribution`], such as the symmetrization `(f(x) + f(-x)) / 2`.
pub fn kl_divergence_to_density<G: Fn(f64) -> f64>(
    f: &Distribution,
    g_pdf: G,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let diverged = Cell::new(false);
    let integrand = |u: f64| {
        let x = f.quantile_unchecked(u);
        let fx = f.pdf(x);
        if fx <= 0.0 {
            return 0.0;
        }
        let gx = g_pdf(x);
        if gx <= 0.0 {
            diverged.set(true);
            return f64::INFINITY;
        }
        (fx / gx).ln()
    };
    let value = quad::integrate(integrand, cfg.tail_eps, 1.0 - cfg.tail_eps, cfg);
    if diverged.get() {
        return Err(Error::Divergence(
            "reference density vanishes on the support of the lead density".into(),
        ));
    }
    value.map(|v| v.max(0.0))
}

/// `K* = inf K(alt, .)` over a composite null family.
///
/// Callers that want the "double Kullback-Leibler information" convention
/// multiply the result by two.
pub fn min_kl_to_null(
    alt: &Distribution,
    family: NullFamily,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    match family {
        NullFamily::ExponentialScale => {
            // K(alt, exp(lambda)) is convex in lambda; minimize over ln lambda
            let failure: Cell<Option<Error>> = Cell::new(None);
            let objective = |log_rate: f64| {
                let null = Distribution::Exponential {
                    rate: log_rate.exp(),
                };
                match kl_divergence(alt, &null, cfg) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.set(Some(e));
                        f64::INFINITY
                    }
                }
            };
            let (_, k) = golden_min(objective, -5.0, 5.0, 1e-10);
            if let Some(e) = failure.take() {
                return Err(Error::Optimization(format!(
                    "scale minimization failed: {e}"
                )));
            }
            Ok(k)
        }
        NullFamily::Symmetric => {
            // the symmetrization is the information projection onto
            // densities symmetric about zero
            kl_divergence_to_density(alt, |x| 0.5 * (alt.pdf(x) + alt.pdf(-x)), cfg)
        }
        NullFamily::NormalLocationScale => {
            let mean = quad::integrate(
                |u| alt.quantile_unchecked(u),
                cfg.tail_eps,
                1.0 - cfg.tail_eps,
                cfg,
            )?;
            let second = quad::integrate(
                |u| alt.quantile_unchecked(u).powi(2),
                cfg.tail_eps,
                1.0 - cfg.tail_eps,
                cfg,
            )?;
            let var = second - mean * mean;
            if var.is_nan() || var <= 0.0 {
                return Err(Error::Optimization(format!(
                    "non-positive variance {var} for {alt}"
                )));
            }
            let sd = var.sqrt();
            // moment matching minimizes KL against the normal family
            kl_divergence_to_density(alt, |x| normal_pdf((x - mean) / sd) / sd, cfg)
        }
    }
}
