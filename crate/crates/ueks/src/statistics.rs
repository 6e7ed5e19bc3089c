//! Empirical and U-empirical distribution functions, exact supremum
//! computation, and the built-in test statistics.
//!
//! Step functions are left-continuous (the value at `t` is the mass strictly
//! below `t`), matching the strict inequalities the kernels use. Suprema of
//! step-versus-step and step-versus-smooth differences are computed exactly
//! over jump candidates, evaluating both the value at each candidate and the
//! limit just to its right.

use crate::distributions::Distribution;
use crate::kernels::{family, TestId};
use crate::{Error, Result};

/// Default cap on the number of m-subsets a U-empirical df may enumerate.
pub const DEFAULT_ENUM_CAP: u64 = 100_000_000;

/// Which supremum a statistic takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
    TwoSided,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
            Side::TwoSided => "two-sided",
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(Side::Plus),
            "minus" => Ok(Side::Minus),
            "two-sided" | "twosided" | "two" => Ok(Side::TwoSided),
            _ => Err(Error::UnknownId(format!("side `{s}`"))),
        }
    }
}

/// A sorted sample of distinct observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    /// Sort and validate: all values finite, no ties (the statistics assume
    /// a continuous df, under which ties have probability zero).
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Parameter("empty sample".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!("non-finite observation {bad}")));
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Ties { value: w[0] });
        }
        Ok(Self { values })
    }

    /// Draw `n` observations from `dist` with the given seed.
    pub fn draw(dist: &Distribution, n: usize, seed: u64) -> Result<Self> {
        Self::new(dist.sample_values(n, seed))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Left-continuous nondecreasing step function with total mass 1.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    locs: Vec<f64>,
    /// cum[i] = mass at or below locs[i]; nondecreasing, last entry 1.
    cum: Vec<f64>,
}

impl StepFunction {
    /// Build from raw jump values, each carrying mass `1/len`; equal values
    /// merge into one jump of summed mass.
    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Parameter("step function needs at least one jump".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("non-finite jump location".into()));
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        let total = values.len() as f64;
        let mut locs = Vec::new();
        let mut cum = Vec::new();
        let mut seen = 0usize;
        let mut i = 0;
        while i < values.len() {
            let mut j = i + 1;
            while j < values.len() && values[j] == values[i] {
                j += 1;
            }
            seen += j - i;
            locs.push(values[i]);
            cum.push(seen as f64 / total);
            i = j;
        }
        Ok(Self { locs, cum })
    }

    /// Mass strictly below `t` (the left-continuous value at `t`).
    pub fn mass_below(&self, t: f64) -> f64 {
        let idx = self.locs.partition_point(|&x| x < t);
        if idx == 0 {
            0.0
        } else {
            self.cum[idx - 1]
        }
    }

    /// Mass at or below `t` (the limit from the right of the value).
    pub fn mass_at_or_below(&self, t: f64) -> f64 {
        let idx = self.locs.partition_point(|&x| x <= t);
        if idx == 0 {
            0.0
        } else {
            self.cum[idx - 1]
        }
    }

    pub fn locations(&self) -> &[f64] {
        &self.locs
    }

    /// Jump locations with cumulative masses.
    pub fn jumps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.locs.iter().copied().zip(self.cum.iter().copied())
    }
}

/// Number of m-subsets, or `None` on overflow.
pub(crate) fn binomial_count(n: u64, m: u64) -> Option<u64> {
    if m > n {
        return Some(0);
    }
    let m = m.min(n - m);
    let mut acc: u128 = 1;
    for k in 0..m {
        acc = acc.checked_mul((n - k) as u128)?;
        acc /= (k + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// The empirical distribution function: a jump of `1/n` at each value.
pub fn build_edf(s: &Sample) -> StepFunction {
    StepFunction::from_values(s.values.clone()).expect("valid sample")
}

/// The U-empirical distribution function of a symmetric `m`-ary kernel `h`:
/// a jump of `1/C(n,m)` at each kernel value over all m-subsets.
pub fn build_udf<H: Fn(&[f64]) -> f64>(s: &Sample, h: H, m: usize) -> Result<StepFunction> {
    build_udf_with_cap(s, h, m, DEFAULT_ENUM_CAP)
}

/// [`build_udf`] with an explicit enumeration cap.
pub fn build_udf_with_cap<H: Fn(&[f64]) -> f64>(
    s: &Sample,
    h: H,
    m: usize,
    cap: u64,
) -> Result<StepFunction> {
    let n = s.len();
    if m == 0 {
        return Err(Error::Parameter("kernel degree must be at least 1".into()));
    }
    if n < m {
        return Err(Error::Parameter(format!(
            "sample size {n} below kernel degree {m}"
        )));
    }
    let count = binomial_count(n as u64, m as u64)
        .filter(|&c| c <= cap)
        .ok_or_else(|| Error::Size(format!("C({n},{m}) exceeds cap {cap}")))?;

    let x = &s.values;
    let mut vals = Vec::with_capacity(count as usize);
    match m {
        1 => {
            for &xi in x {
                vals.push(h(&[xi]));
            }
        }
        2 => {
            let mut args = [0.0f64; 2];
            for i in 0..n {
                args[0] = x[i];
                for &xj in &x[i + 1..] {
                    args[1] = xj;
                    vals.push(h(&args));
                }
            }
        }
        _ => {
            // lexicographic walk over index combinations
            let mut idx: Vec<usize> = (0..m).collect();
            let mut args = vec![0.0f64; m];
            loop {
                for (a, &i) in args.iter_mut().zip(idx.iter()) {
                    *a = x[i];
                }
                vals.push(h(&args));
                // advance
                let mut k = m;
                loop {
                    if k == 0 {
                        return StepFunction::from_values(vals);
                    }
                    k -= 1;
                    if idx[k] != k + n - m {
                        break;
                    }
                }
                idx[k] += 1;
                for j in k + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
    }
    StepFunction::from_values(vals)
}

/// Location and attainment of a supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupPoint {
    pub value: f64,
    pub argmax_t: f64,
    /// The supremum is attained as a limit just to the right of `argmax_t`.
    pub at_right_limit: bool,
}

impl SupPoint {
    fn track(&mut self, value: f64, argmax_t: f64, at_right_limit: bool) {
        if value > self.value {
            *self = SupPoint {
                value,
                argmax_t,
                at_right_limit,
            };
        }
    }
}

fn empty_sup(at: f64) -> SupPoint {
    SupPoint {
        value: f64::NEG_INFINITY,
        argmax_t: at,
        at_right_limit: false,
    }
}

/// Both one-sided suprema of A - B over all real t.
pub fn sup_diff_both(a: &StepFunction, b: &StepFunction) -> (SupPoint, SupPoint) {
    let first = a.locs[0].min(b.locs[0]);
    let mut plus = empty_sup(first);
    let mut minus = empty_sup(first);

    let mut ia = 0usize;
    let mut ib = 0usize;
    let (mut pa, mut pb) = (0usize, 0usize); // strictly-below cursors
    let mut next_t = Some(first);
    while let Some(t) = next_t {
        while pa < a.locs.len() && a.locs[pa] < t {
            pa += 1;
        }
        while pb < b.locs.len() && b.locs[pb] < t {
            pb += 1;
        }
        let a_lt = if pa == 0 { 0.0 } else { a.cum[pa - 1] };
        let b_lt = if pb == 0 { 0.0 } else { b.cum[pb - 1] };
        let a_le = if pa < a.locs.len() && a.locs[pa] == t {
            a.cum[pa]
        } else {
            a_lt
        };
        let b_le = if pb < b.locs.len() && b.locs[pb] == t {
            b.cum[pb]
        } else {
            b_lt
        };

        let d_at = a_lt - b_lt;
        let d_after = a_le - b_le;
        plus.track(d_at, t, false);
        plus.track(d_after, t, true);
        minus.track(-d_at, t, false);
        minus.track(-d_after, t, true);

        // advance the merged-location cursor
        while ia < a.locs.len() && a.locs[ia] <= t {
            ia += 1;
        }
        while ib < b.locs.len() && b.locs[ib] <= t {
            ib += 1;
        }
        next_t = match (a.locs.get(ia), b.locs.get(ib)) {
            (Some(&x), Some(&y)) => Some(x.min(y)),
            (Some(&x), None) => Some(x),
            (None, Some(&y)) => Some(y),
            (None, None) => None,
        };
    }
    (plus, minus)
}

/// Exact supremum of A - B, B - A, or |A - B| over all t.
pub fn sup_diff(a: &StepFunction, b: &StepFunction, side: Side) -> SupPoint {
    let (plus, minus) = sup_diff_both(a, b);
    pick_side(plus, minus, side)
}

/// Both one-sided suprema of A - G for a continuous strictly monotone cdf G.
///
/// On each constancy interval of A the difference is monotone in t, so the
/// one-sided extremes sit at jump locations: `A(x+) - G(x)` for the plus
/// side and `G(x) - A(x)` for the minus side.
pub fn sup_against_g_both<G: Fn(f64) -> f64>(a: &StepFunction, g: G) -> (SupPoint, SupPoint) {
    let mut plus = empty_sup(a.locs[0]);
    let mut minus = empty_sup(a.locs[0]);
    let mut below = 0.0;
    for (&x, &c) in a.locs.iter().zip(a.cum.iter()) {
        let gx = g(x);
        plus.track(c - gx, x, true);
        minus.track(gx - below, x, false);
        below = c;
    }
    (plus, minus)
}

/// Exact supremum of the step-versus-smooth difference.
pub fn sup_against_g<G: Fn(f64) -> f64>(a: &StepFunction, g: G, side: Side) -> SupPoint {
    let (plus, minus) = sup_against_g_both(a, g);
    pick_side(plus, minus, side)
}

fn pick_side(plus: SupPoint, minus: SupPoint, side: Side) -> SupPoint {
    match side {
        Side::Plus => plus,
        Side::Minus => minus,
        // ties go to the plus side so results are deterministic
        Side::TwoSided => {
            if minus.value > plus.value {
                minus
            } else {
                plus
            }
        }
    }
}

/// Result of a test-statistic computation.
#[derive(Debug, Clone, Copy)]
pub struct StatResult {
    pub test: TestId,
    pub side: Side,
    pub n: usize,
    pub value: f64,
    pub argmax_t: f64,
    pub at_right_limit: bool,
}

/// Compute a built-in statistic with the family's registered null as the
/// hypothesized df (only the `kolmogorov` and `max-kernel` statistics use
/// a hypothesized df at all).
pub fn compute_statistic(test: TestId, s: &Sample, side: Side) -> Result<StatResult> {
    let (plus, minus) = one_sided_pair(test, s, None)?;
    Ok(finish(test, side, s.len(), plus, minus))
}

/// Compute a `DU`-type statistic against an explicit hypothesized df.
pub fn compute_statistic_against(
    test: TestId,
    s: &Sample,
    side: Side,
    hypothesized: &Distribution,
) -> Result<StatResult> {
    if !matches!(test, TestId::Kolmogorov | TestId::MaxKernel) {
        return Err(Error::Parameter(format!(
            "test {test} does not take a hypothesized df"
        )));
    }
    let (plus, minus) = one_sided_pair(test, s, Some(hypothesized))?;
    Ok(finish(test, side, s.len(), plus, minus))
}

/// Both one-sided statistics in one pass; the two-sided value is exactly
/// their maximum.
pub fn compute_both_sides(test: TestId, s: &Sample) -> Result<(SupPoint, SupPoint)> {
    one_sided_pair(test, s, None)
}

fn finish(test: TestId, side: Side, n: usize, plus: SupPoint, minus: SupPoint) -> StatResult {
    let p = pick_side(plus, minus, side);
    StatResult {
        test,
        side,
        n,
        value: p.value,
        argmax_t: p.argmax_t,
        at_right_limit: p.at_right_limit,
    }
}

fn one_sided_pair(
    test: TestId,
    s: &Sample,
    hypothesized: Option<&Distribution>,
) -> Result<(SupPoint, SupPoint)> {
    let fam = family(test);
    if s.len() < 2 || s.len() < fam.degree {
        return Err(Error::Parameter(format!(
            "need at least {} observations, got {}",
            fam.degree.max(2),
            s.len()
        )));
    }
    match test {
        TestId::Kolmogorov => {
            let f = hypothesized.copied().unwrap_or(fam.null);
            let edf = build_edf(s);
            Ok(sup_against_g_both(&edf, |x| f.cdf(x)))
        }
        TestId::MaxKernel => {
            let f = hypothesized.copied().unwrap_or(fam.null);
            let udf = build_udf(s, |a| a[0].max(a[1]), 2)?;
            Ok(sup_against_g_both(&udf, |x| {
                let c = f.cdf(x);
                c * c
            }))
        }
        TestId::Desu => {
            let udf = build_udf(s, |a| 2.0 * a[0].min(a[1]), 2)?;
            Ok(sup_diff_both(&udf, &build_edf(s)))
        }
        TestId::PuriRubin => {
            let udf = build_udf(s, |a| (a[0] - a[1]).abs(), 2)?;
            Ok(sup_diff_both(&udf, &build_edf(s)))
        }
        TestId::Polya => {
            let udf = build_udf(s, |a| (a[0] + a[1]) / std::f64::consts::SQRT_2, 2)?;
            Ok(sup_diff_both(&udf, &build_edf(s)))
        }
        TestId::Bh => {
            let abs_edf = StepFunction::from_values(s.values.iter().map(|x| x.abs()).collect())?;
            let udf = build_udf(s, |a| a[0].max(a[1]).abs(), 2)?;
            Ok(sup_diff_both(&abs_edf, &udf))
        }
        TestId::Angus => Ok(angus_pair(s)),
        TestId::SymmetryH => Ok(symmetry_h_pair(s)),
    }
}

/// `AN = sup_{x >= 0} [Fbar(2x) - Fbar(x)^2]` computed directly from the
/// defining formula over the candidate set {0, data points, half data
/// points}, evaluating left and right limits at each candidate.
fn angus_pair(s: &Sample) -> (SupPoint, SupPoint) {
    let edf = build_edf(s);
    let mut cands: Vec<f64> = Vec::with_capacity(2 * s.len() + 1);
    cands.push(0.0);
    for &x in s.values() {
        cands.push(x);
        cands.push(0.5 * x);
    }
    cands.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    cands.dedup();
    cands.retain(|&c| c >= 0.0);

    let mut plus = empty_sup(cands[0]);
    let mut minus = empty_sup(cands[0]);
    for &c in &cands {
        let sbar_lt = |t: f64| 1.0 - edf.mass_below(t);
        let sbar_le = |t: f64| 1.0 - edf.mass_at_or_below(t);
        let d_at = sbar_lt(2.0 * c) - sbar_lt(c).powi(2);
        let d_after = sbar_le(2.0 * c) - sbar_le(c).powi(2);
        plus.track(d_at, c, false);
        plus.track(d_after, c, true);
        minus.track(-d_at, c, false);
        minus.track(-d_after, c, true);
    }
    (plus, minus)
}

/// `H = sup_t [dF(t) - mean_j dF(X_j)]` with `dF(x) = F(x) + F(-x) - 1`,
/// using the strict-inequality edf throughout. Candidates are `{x_j, -x_j}`;
/// at each candidate the value, the left limit, and the right limit are all
/// examined (`dF` can jump in either direction there).
fn symmetry_h_pair(s: &Sample) -> (SupPoint, SupPoint) {
    let edf = build_edf(s);
    let n = s.len() as f64;
    let delta_at = |t: f64| edf.mass_below(t) + edf.mass_below(-t) - 1.0;
    let center: f64 = s.values().iter().map(|&x| delta_at(x)).sum::<f64>() / n;

    let mut cands: Vec<f64> = Vec::with_capacity(2 * s.len());
    for &x in s.values() {
        cands.push(x);
        cands.push(-x);
    }
    cands.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    cands.dedup();

    let mut plus = empty_sup(cands[0]);
    let mut minus = empty_sup(cands[0]);
    for &t in &cands {
        let exact = delta_at(t) - center;
        let left = edf.mass_below(t) + edf.mass_at_or_below(-t) - 1.0 - center;
        let right = edf.mass_at_or_below(t) + edf.mass_below(-t) - 1.0 - center;
        plus.track(exact, t, false);
        plus.track(left, t, false);
        plus.track(right, t, true);
        minus.track(-exact, t, false);
        minus.track(-left, t, false);
        minus.track(-right, t, true);
    }
    (plus, minus)
}
