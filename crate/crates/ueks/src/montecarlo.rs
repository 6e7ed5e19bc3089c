//! Monte Carlo null calibration: simulated null distributions, critical
//! values, p-values, and empirical large-deviation rates.
//!
//! Replications are embarrassingly parallel: replication `r` derives its own
//! sub-seed from `(seed, r)`, so results are identical for any worker count
//! and any replication order. Simulated statistic values are merged by
//! replication index before sorting.

use rayon::prelude::*;

use crate::distributions::Distribution;
use crate::kernels::{family, TestId};
use crate::large_deviation::ld_leading_coeff;
use crate::rng::substream;
use crate::statistics::{binomial_count, compute_both_sides, Sample, Side};
use crate::{Error, Result};

/// Default budget on `reps * C(n, m)` kernel evaluations per call.
pub const DEFAULT_EVAL_CAP: u64 = 5_000_000_000;

/// Sorted two-sided statistic values simulated under a test's null.
#[derive(Debug, Clone)]
pub struct NullSimulation {
    pub test: TestId,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub null: Distribution,
    values: Vec<f64>,
}

/// Per-replication one-sided statistics under the null, in replication
/// order: `(plus, minus)`. The two-sided value is their maximum.
pub fn simulate_sides_with(
    test: TestId,
    null: &Distribution,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<Vec<(f64, f64)>> {
    let fam = family(test);
    if reps < 100 {
        return Err(Error::Precision(format!(
            "need at least 100 replications, got {reps}"
        )));
    }
    let per_rep = binomial_count(n as u64, fam.degree as u64)
        .ok_or_else(|| Error::Size(format!("C({n},{}) overflows", fam.degree)))?;
    let budget = per_rep.checked_mul(reps as u64);
    if budget.is_none() || budget.unwrap() > DEFAULT_EVAL_CAP {
        return Err(Error::Size(format!(
            "reps * C(n,m) = {reps} * {per_rep} exceeds the {DEFAULT_EVAL_CAP} evaluation budget"
        )));
    }
    (0..reps)
        .into_par_iter()
        .map(|r| {
            let s = Sample::draw(null, n, substream(seed, r as u64))?;
            let (plus, minus) = compute_both_sides(test, &s)?;
            Ok((plus.value, minus.value))
        })
        .collect()
}

/// Simulate the null distribution of the two-sided statistic using the
/// family's registered null distribution.
pub fn simulate_null(test: TestId, n: usize, reps: usize, seed: u64) -> Result<NullSimulation> {
    simulate_null_with(test, &family(test).null, n, reps, seed)
}

/// [`simulate_null`] under an explicit null distribution (the built-in
/// statistics are distribution-free within their stated families, which
/// this makes testable).
pub fn simulate_null_with(
    test: TestId,
    null: &Distribution,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<NullSimulation> {
    let sides = simulate_sides_with(test, null, n, reps, seed)?;
    let mut values: Vec<f64> = sides.iter().map(|&(p, m)| p.max(m)).collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite statistics"));
    Ok(NullSimulation {
        test,
        n,
        reps,
        seed,
        null: *null,
        values,
    })
}

impl NullSimulation {
    /// Sorted statistic values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Rebuild from previously simulated sorted values (cache loading).
    pub fn from_sorted_values(
        test: TestId,
        n: usize,
        seed: u64,
        null: Distribution,
        values: Vec<f64>,
    ) -> Result<Self> {
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parameter("cached values not sorted".into()));
        }
        Ok(Self {
            test,
            n,
            reps: values.len(),
            seed,
            null,
            values,
        })
    }

    /// Empirical upper-`alpha` critical value: the order statistic at
    /// `ceil((1 - alpha) * reps)` (conservative convention).
    pub fn critical_value(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!("alpha must be in (0,1), got {alpha}")));
        }
        if (self.reps as f64) * alpha < 10.0 {
            return Err(Error::Precision(format!(
                "reps * alpha = {} < 10; tail too thin to estimate",
                self.reps as f64 * alpha
            )));
        }
        // the small slack guards against ties-up from float representation
        let k = ((1.0 - alpha) * self.reps as f64 - 1e-9).ceil() as usize;
        let k = k.clamp(1, self.reps);
        Ok(self.values[k - 1])
    }

    /// Monte Carlo p-value with add-one smoothing:
    /// `(1 + #{sims >= observed}) / (reps + 1)`.
    pub fn p_value(&self, observed: f64) -> f64 {
        let below = self.values.partition_point(|&v| v < observed);
        let at_least = self.reps - below;
        (1.0 + at_least as f64) / (self.reps as f64 + 1.0)
    }
}

/// One grid point of an empirical rate estimate.
#[derive(Debug, Clone, Copy)]
pub struct RatePoint {
    pub n: usize,
    pub exceedances: usize,
    pub p_hat: f64,
    /// `-ln(p_hat) / n`; `None` when no exceedances were observed.
    pub rate: Option<f64>,
}

/// Empirical check of the leading-order large-deviation rate.
#[derive(Debug, Clone)]
pub struct RateEstimate {
    pub test: TestId,
    pub side: Side,
    pub a: f64,
    pub reps: usize,
    pub seed: u64,
    /// Leading-order theoretical rate `c * a^2`.
    pub theory_rate: f64,
    pub points: Vec<RatePoint>,
}

/// Tail probabilities `P(T_n > a)` and rate estimates `-n^-1 ln P` over an
/// n-grid, with the theoretical leading-order value attached.
pub fn empirical_ld_rate(
    test: TestId,
    a: f64,
    n_grid: &[usize],
    reps: usize,
    seed: u64,
) -> Result<RateEstimate> {
    if a.is_nan() || a <= 0.0 {
        return Err(Error::Domain(format!("threshold a must be positive, got {a}")));
    }
    let rate_fn = ld_leading_coeff(&family(test))?;
    let mut points = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let sim = simulate_null(test, n, reps, seed)?;
        let exceedances = sim.reps - sim.values.partition_point(|&v| v <= a);
        let p_hat = exceedances as f64 / reps as f64;
        let rate = if exceedances > 0 {
            Some(-p_hat.ln() / n as f64)
        } else {
            None
        };
        points.push(RatePoint {
            n,
            exceedances,
            p_hat,
            rate,
        });
    }
    Ok(RateEstimate {
        test,
        side: Side::TwoSided,
        a,
        reps,
        seed,
        theory_rate: rate_fn.leading_coeff * a * a,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_repeat() {
        let a = simulate_null(TestId::Desu, 20, 200, 9).unwrap();
        let b = simulate_null(TestId::Desu, 20, 200, 9).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let v1 = pool1.install(|| simulate_null(TestId::Bh, 15, 150, 3).unwrap());
        let v4 = pool4.install(|| simulate_null(TestId::Bh, 15, 150, 3).unwrap());
        assert_eq!(v1.values(), v4.values());
    }

    #[test]
    fn mean_decreases_with_n() {
        // the statistic tends to zero under the null
        let mean = |n| {
            let sim = simulate_null(TestId::Desu, n, 400, 11).unwrap();
            sim.values().iter().sum::<f64>() / sim.reps as f64
        };
        let (m50, m100, m200) = (mean(50), mean(100), mean(200));
        assert!(m50 > 0.0 && m50 < 1.0);
        assert!(m50 > m100 && m100 > m200, "{m50} {m100} {m200}");
    }

    #[test]
    fn scale_free_exactness() {
        let e1 = Distribution::Exponential { rate: 1.0 };
        let e5 = Distribution::Exponential { rate: 5.0 };
        let a = simulate_null_with(TestId::Desu, &e1, 30, 200, 4).unwrap();
        let b = simulate_null_with(TestId::Desu, &e5, 30, 200, 4).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(
            simulate_null(TestId::Desu, 200_000, 10_000, 1),
            Err(Error::Size(_))
        ));
        assert!(matches!(
            simulate_null(TestId::Desu, 20, 50, 1),
            Err(Error::Precision(_))
        ));
    }

    #[test]
    fn critical_value_conventions() {
        let sim = simulate_null(TestId::Desu, 12, 1000, 2).unwrap();
        // alpha = 0.5 returns the median order statistic
        let median = sim.critical_value(0.5).unwrap();
        assert_eq!(median, sim.values()[499]);
        // alpha = 0.05 leaves at most 50 values above
        let crit = sim.critical_value(0.05).unwrap();
        let above = sim.values().iter().filter(|&&v| v > crit).count();
        assert!(above <= 50, "{above}");
        // too-thin tails are rejected
        assert!(sim.critical_value(0.005).is_err());
    }

    #[test]
    fn p_value_conventions() {
        let sim = simulate_null(TestId::Desu, 40, 1000, 2).unwrap();
        let reps = sim.reps as f64;
        assert!((sim.p_value(0.0) - 1.0).abs() <= 1.0 / (reps + 1.0));
        let max = *sim.values().last().unwrap();
        assert_eq!(sim.p_value(max + 1.0), 1.0 / (reps + 1.0));
        // the statistic lattice is 1/(2 C(n,2)); ties around the median
        // widen the band a little beyond 1/sqrt(reps)
        let median = sim.values()[499];
        assert!((sim.p_value(median) - 0.5).abs() <= 0.05, "{}", sim.p_value(median));
    }

    #[test]
    fn rate_points_flag_empty_tails()  {
        // a >= 1 can never be exceeded: flagged, not fatal
        let est = empirical_ld_rate(TestId::Desu, 1.0, &[20, 40], 100, 5);
        // reps = 100 passes the floor; every point has zero exceedances
        let est = est.unwrap();
        assert!(est.points.iter().all(|p| p.exceedances == 0 && p.rate.is_none()));
    }

    #[test]
    fn monotone_tail_in_a() {
        let sim = simulate_null(TestId::Desu, 30, 500, 8).unwrap();
        let tail = |a: f64| sim.values().iter().filter(|&&v| v > a).count();
        assert!(tail(0.1) >= tail(0.2));
        assert!(tail(0.2) >= tail(0.3));
    }

    #[test]
    fn sandwich_inequality_exact_per_batch() {
        // max(P+, P-) <= P <= P+ + P- <= 2 max(P+, P-) at the count level
        let sides = simulate_sides_with(
            TestId::PuriRubin,
            &Distribution::Exponential { rate: 1.0 },
            25,
            300,
            17,
        )
        .unwrap();
        for &eps in &[0.05, 0.1, 0.2, 0.3] {
            let cp = sides.iter().filter(|&&(p, _)| p >= eps).count();
            let cm = sides.iter().filter(|&&(_, m)| m >= eps).count();
            let c2 = sides.iter().filter(|&&(p, m)| p.max(m) >= eps).count();
            assert!(cp.max(cm) <= c2);
            assert!(c2 <= cp + cm);
            assert!(cp + cm <= 2 * cp.max(cm));
        }
    }
}
