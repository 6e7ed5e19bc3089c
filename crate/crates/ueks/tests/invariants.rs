//! Property-based and statistical invariants that complement the
//! per-module unit tests and the acceptance criteria.

mod support;

use proptest::prelude::*;
use rayon::prelude::*;

use ueks::distributions::Distribution;
use ueks::kernels::{all_families, family, TestId};
use ueks::large_deviation::{kolmogorov_f0, maximize_variance};
use ueks::montecarlo::{simulate_null, simulate_null_with};
use ueks::quad::QuadratureConfig;
use ueks::rng::substream;
use ueks::statistics::{
    build_edf, compute_statistic, sup_against_g, sup_diff_both, Sample, Side, StepFunction,
};

// --- exact-supremum property tests --------------------------------------------

/// Brute-force one-sided suprema from raw jump vectors: evaluate the
/// difference at every location and just after it by direct counting.
fn brute_sides(a: &[f64], b: &[f64]) -> (f64, f64) {
    let na = a.len() as f64;
    let nb = b.len() as f64;
    let below = |arr: &[f64], t: f64| arr.iter().filter(|&&v| v < t).count() as f64;
    let at_or_below = |arr: &[f64], t: f64| arr.iter().filter(|&&v| v <= t).count() as f64;
    let mut plus = 0.0f64;
    let mut minus = 0.0f64;
    for &t in a.iter().chain(b.iter()) {
        for d in [
            below(a, t) / na - below(b, t) / nb,
            at_or_below(a, t) / na - at_or_below(b, t) / nb,
        ] {
            plus = plus.max(d);
            minus = minus.max(-d);
        }
    }
    (plus, minus)
}

proptest! {
    #[test]
    fn sup_diff_matches_brute_force(
        a in prop::collection::vec(-100.0f64..100.0, 1..14),
        b in prop::collection::vec(-100.0f64..100.0, 1..14),
    ) {
        let sa = StepFunction::from_values(a.clone()).unwrap();
        let sb = StepFunction::from_values(b.clone()).unwrap();
        let (plus, minus) = sup_diff_both(&sa, &sb);
        let (bp, bm) = brute_sides(&a, &b);
        prop_assert!((plus.value - bp).abs() < 1e-14, "plus {} vs {}", plus.value, bp);
        prop_assert!((minus.value - bm).abs() < 1e-14, "minus {} vs {}", minus.value, bm);
    }

    #[test]
    fn step_function_monotone_in_unit_interval(
        vals in prop::collection::vec(-50.0f64..50.0, 1..40),
        probes in prop::collection::vec(-60.0f64..60.0, 1..20),
    ) {
        let f = StepFunction::from_values(vals).unwrap();
        let mut last = None;
        for (loc, cum) in f.jumps() {
            prop_assert!(cum > 0.0 && cum <= 1.0);
            if let Some((l, c)) = last {
                prop_assert!(loc > l && cum > c);
            }
            last = Some((loc, cum));
        }
        prop_assert_eq!(f.jumps().last().unwrap().1, 1.0);
        for t in probes {
            prop_assert!(f.mass_below(t) <= f.mass_at_or_below(t));
        }
    }

    #[test]
    fn two_sided_statistic_bounds_and_identity(seed in 0u64..5000, n in 5usize..25) {
        let test = TestId::ALL[(seed % 8) as usize];
        let fam = family(test);
        let s = Sample::draw(&fam.null, n.max(fam.degree + 1), seed ^ 0x5eed).unwrap();
        let plus = compute_statistic(test, &s, Side::Plus).unwrap();
        let minus = compute_statistic(test, &s, Side::Minus).unwrap();
        let two = compute_statistic(test, &s, Side::TwoSided).unwrap();
        prop_assert_eq!(two.value, plus.value.max(minus.value));
        prop_assert!((0.0..=1.0).contains(&two.value));
    }

    #[test]
    fn f0_monotone_in_threshold(a1 in 0.01f64..0.97, d in 0.001f64..0.02) {
        let a2 = (a1 + d).min(0.99);
        let f1 = kolmogorov_f0(a1).unwrap();
        let f2 = kolmogorov_f0(a2).unwrap();
        prop_assert!(f1 <= f2 + 1e-12, "f0({a1}) = {f1} > f0({a2}) = {f2}");
    }
}

// --- classical edf calibration -------------------------------------------------

#[test]
fn edf_kolmogorov_quantile_over_seeds() {
    // sup |edf - cdf| for uniform data: sqrt(n) D_n exceeds the asymptotic
    // 99% quantile 1.6276 about once per hundred seeds
    let unif = Distribution::Uniform { lo: 0.0, hi: 1.0 };
    let n = 1000usize;
    let mut exceed = 0;
    for seed in 0..100u64 {
        let s = Sample::draw(&unif, n, substream(2024, seed)).unwrap();
        let d = sup_against_g(&build_edf(&s), |x| unif.cdf(x), Side::TwoSided).value;
        if (n as f64).sqrt() * d > 1.6276 {
            exceed += 1;
        }
    }
    assert!(exceed <= 4, "{exceed} exceedances of the 99% quantile in 100 seeds");
}

#[test]
fn kolmogorov_critical_value_matches_asymptotics() {
    // scaled 5% critical value of the classical statistic: ~1.358
    let sim = simulate_null(TestId::Kolmogorov, 1000, 10_000, 3).unwrap();
    let crit = sim.critical_value(0.05).unwrap();
    let scaled = (1000f64).sqrt() * crit;
    assert!(
        (scaled - 1.358).abs() <= 0.03,
        "sqrt(n) crit = {scaled}"
    );
}

// --- variance-function domination ----------------------------------------------

#[test]
fn variance_maximum_dominates_dense_grid() {
    for fam in all_families() {
        let (_, phi0) = maximize_variance(&fam).unwrap();
        let (lo, hi) = fam.truncated_interval();
        let points = 100_000usize;
        let cfg = QuadratureConfig {
            abs_tol: 1e-9,
            ..QuadratureConfig::default()
        };
        let worst = (0..=points)
            .into_par_iter()
            .map(|i| {
                let t = lo + (hi - lo) * i as f64 / points as f64;
                if fam.has_analytic_variance() {
                    fam.variance_at(t).unwrap()
                } else {
                    fam.variance_numeric(t, &cfg).unwrap()
                }
            })
            .reduce(|| f64::NEG_INFINITY, f64::max);
        assert!(
            worst <= phi0 + 1e-8,
            "{}: grid value {worst} exceeds phi0^2 = {phi0}",
            fam.id
        );
        if fam.has_analytic_variance() {
            assert!(worst <= phi0 + 1e-12, "{}: {worst} vs {phi0}", fam.id);
        }
    }
}

// --- distribution freeness beyond the exact cases -------------------------------

#[test]
fn angus_scale_freeness_exact() {
    let e1 = Distribution::Exponential { rate: 1.0 };
    let e5 = Distribution::Exponential { rate: 5.0 };
    let a = simulate_null_with(TestId::Angus, &e1, 100, 2_000, 11).unwrap();
    let b = simulate_null_with(TestId::Angus, &e5, 100, 2_000, 11).unwrap();
    assert_eq!(a.values(), b.values());
}

#[test]
fn puri_rubin_scale_freeness_two_sample() {
    // |x - y| does not scale bit-exactly, so compare the simulated null
    // distributions with a two-sample Kolmogorov distance gate at the 1%
    // level: c(0.01) sqrt(2/reps)
    let e1 = Distribution::Exponential { rate: 1.0 };
    let e5 = Distribution::Exponential { rate: 5.0 };
    let reps = 10_000;
    let a = simulate_null_with(TestId::PuriRubin, &e1, 100, reps, 12).unwrap();
    let b = simulate_null_with(TestId::PuriRubin, &e5, 100, reps, 13).unwrap();
    let (va, vb) = (a.values(), b.values());
    let mut d = 0.0f64;
    let (mut i, mut j) = (0usize, 0usize);
    while i < va.len() && j < vb.len() {
        if va[i] <= vb[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / reps as f64 - j as f64 / reps as f64).abs());
    }
    let crit = 1.628 * (2.0 / reps as f64).sqrt();
    assert!(d < crit, "two-sample KS distance {d} above 1% critical {crit}");
}

// --- p-value calibration and a power smoke test ---------------------------------

#[test]
fn p_values_calibrated_under_null() {
    // one shared calibration, many data seeds: the rejection rate at 5%
    // stays near 5%
    let n = 200;
    let sim = simulate_null(TestId::Desu, n, 10_000, 99).unwrap();
    let null = family(TestId::Desu).null;
    let rejections = (0..200u64)
        .into_par_iter()
        .filter(|&seed| {
            let s = Sample::draw(&null, n, substream(424_242, seed)).unwrap();
            let stat = compute_statistic(TestId::Desu, &s, Side::TwoSided).unwrap();
            sim.p_value(stat.value) <= 0.05
        })
        .count();
    let fraction = rejections as f64 / 200.0;
    assert!(
        (0.03..=0.08).contains(&fraction),
        "rejection rate {fraction}"
    );
}

#[test]
fn power_against_far_weibull_alternative() {
    let n = 200;
    let sim = simulate_null(TestId::Desu, n, 10_000, 99).unwrap();
    let alt = Distribution::WeibullAlt { theta: 0.8 };
    let rejections = (0..100u64)
        .into_par_iter()
        .filter(|&seed| {
            let s = Sample::draw(&alt, n, substream(777_777, seed)).unwrap();
            let stat = compute_statistic(TestId::Desu, &s, Side::TwoSided).unwrap();
            sim.p_value(stat.value) <= 0.01
        })
        .count();
    assert!(rejections >= 90, "only {rejections}/100 rejections at 1%");
}

// --- spec-named edge case: bh with all-negative data ----------------------------

#[test]
fn bh_all_negative_samples_match_grid_oracle() {
    for seed in 0..100u64 {
        let raw = Distribution::Uniform { lo: -1.0, hi: -1e-6 }
            .sample_values(30, substream(606, seed));
        let s = Sample::new(raw).unwrap();
        let plus = compute_statistic(TestId::Bh, &s, Side::Plus).unwrap();
        let minus = compute_statistic(TestId::Bh, &s, Side::Minus).unwrap();
        let oracle = support::dense_grid_oracle(TestId::Bh, s.values(), 1_000_000, None);
        assert!(plus.value >= oracle.plus - 1e-12);
        assert!(plus.value - oracle.plus <= oracle.slack + 1e-12, "seed {seed}");
        assert!(minus.value >= oracle.minus - 1e-12);
        assert!(minus.value - oracle.minus <= oracle.slack + 1e-12, "seed {seed}");
    }
}

// --- spec-pinned extra cases -----------------------------------------------------

#[test]
fn max_kernel_n50_matches_grid_oracle() {
    let unif = Distribution::Uniform { lo: 0.0, hi: 1.0 };
    let s = Sample::draw(&unif, 50, 1).unwrap();
    let plus = compute_statistic(TestId::MaxKernel, &s, Side::Plus).unwrap();
    let minus = compute_statistic(TestId::MaxKernel, &s, Side::Minus).unwrap();
    let oracle = support::dense_grid_oracle(TestId::MaxKernel, s.values(), 1_000_000, None);
    assert!(plus.value >= oracle.plus - 1e-12);
    assert!((plus.value - oracle.plus).abs() <= 1e-6 + oracle.slack);
    assert!(minus.value >= oracle.minus - 1e-12);
    assert!((minus.value - oracle.minus).abs() <= 1e-6 + oracle.slack);
}

#[test]
fn degeneracy_structure_of_variance_functions() {
    // variance functions vanish only at the documented boundary points and
    // finite interior sets
    let interior = |fam: &ueks::kernels::KernelFamily, eps: f64| -> Vec<f64> {
        let (lo, hi) = fam.truncated_interval();
        (1..200)
            .map(|i| lo + eps + (hi - lo - 2.0 * eps) * i as f64 / 200.0)
            .collect()
    };

    // symmetry-h never vanishes: its minimum over [-1,1] is 1/48 at |t|=1/2
    let h = family(TestId::SymmetryH);
    let min = interior(&h, 0.0)
        .iter()
        .map(|&t| h.variance_at(t).unwrap())
        .fold(f64::INFINITY, f64::min)
        .min(h.variance_at(0.5).unwrap());
    assert!((min - 1.0 / 48.0).abs() < 1e-12, "min = {min}");

    // bh vanishes only at the interior point t = 0 (and the endpoints)
    let bh = family(TestId::Bh);
    assert_eq!(bh.variance_at(0.0).unwrap(), 0.0);
    for &t in interior(&bh, 0.01).iter().filter(|&&t| t.abs() > 0.01) {
        assert!(bh.variance_at(t).unwrap() > 0.0, "bh vanishes at {t}");
    }

    // the remaining families are positive on the open interior
    for id in [
        TestId::Kolmogorov,
        TestId::MaxKernel,
        TestId::Desu,
        TestId::Angus,
        TestId::PuriRubin,
    ] {
        let fam = family(id);
        let (lo, hi) = fam.truncated_interval();
        let eps = 1e-4 * (hi - lo);
        for t in interior(&fam, eps) {
            assert!(fam.variance_at(t).unwrap() > 0.0, "{id} vanishes at {t}");
        }
    }
}

#[test]
fn population_limits_vanish_for_all_null_members() {
    use ueks::efficiency::population_limit;
    let cases = [
        (TestId::Desu, Distribution::Exponential { rate: 1.0 }),
        (TestId::Angus, Distribution::Exponential { rate: 1.0 }),
        (TestId::PuriRubin, Distribution::Exponential { rate: 1.0 }),
        (TestId::SymmetryH, Distribution::NormalShift { theta: 0.0 }),
        (TestId::Bh, Distribution::NormalShift { theta: 0.0 }),
        (TestId::Polya, Distribution::StdNormal),
    ];
    for (test, null) in cases {
        let b = population_limit(test, &null).unwrap();
        assert!(b.abs() < 1e-7, "{test}: b = {b}");
    }
}


#[test]
fn max_kernel_against_nonuniform_hypothesized_df() {
    // any continuous F works for the max-kernel comparison: the statistic
    // against exp(1)^2 matches the grid oracle on exponential data
    let exp1 = Distribution::Exponential { rate: 1.0 };
    for seed in 0..30u64 {
        let s = Sample::draw(&exp1, 25, substream(808, seed)).unwrap();
        let plus =
            ueks::statistics::compute_statistic_against(TestId::MaxKernel, &s, Side::Plus, &exp1)
                .unwrap();
        let minus =
            ueks::statistics::compute_statistic_against(TestId::MaxKernel, &s, Side::Minus, &exp1)
                .unwrap();
        let oracle = support::dense_grid_oracle(TestId::MaxKernel, s.values(), 1_000_000, Some(&exp1));
        assert!(plus.value >= oracle.plus - 1e-12);
        assert!(plus.value - oracle.plus <= oracle.slack + 1e-6, "seed {seed}");
        assert!(minus.value >= oracle.minus - 1e-12);
        assert!(minus.value - oracle.minus <= oracle.slack + 1e-6, "seed {seed}");
    }
}

// --- statistic vs kernel-family representation ----------------------------------
//
// Each SU-type statistic is the supremum over t of a U-statistic built
// from the family's kernel. For desu the correspondence is exact (up to
// one rounding of equal rationals); for angus and symmetry-h the
// statistic is computed from its defining formula, which differs from the
// pair-average form by an O(1/n) diagonal term.

fn sup_kernel_mean(test: TestId, x: &[f64], t_candidates: &[f64]) -> f64 {
    let fam = family(test);
    let n = x.len();
    let pairs = (n * (n - 1) / 2) as f64;
    let mut grid: Vec<f64> = t_candidates.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    let mut probes = grid.clone();
    for w in grid.windows(2) {
        probes.push(0.5 * (w[0] + w[1]));
    }
    let mut sup = f64::NEG_INFINITY;
    for &t in &probes {
        let mut acc = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                acc += fam.eval_kernel(&[x[i], x[j]], t).unwrap();
            }
        }
        sup = sup.max(acc / pairs);
    }
    sup
}

#[test]
fn desu_statistic_equals_kernel_supremum() {
    let exp1 = Distribution::Exponential { rate: 1.0 };
    for seed in 0..25u64 {
        let s = Sample::draw(&exp1, 30, substream(1601, seed)).unwrap();
        let plus = compute_statistic(TestId::Desu, &s, Side::Plus).unwrap().value;
        // the kernel mean jumps where t crosses a data point or twice one
        let mut cands: Vec<f64> = s.values().to_vec();
        cands.extend(s.values().iter().map(|&v| 2.0 * v));
        cands.push(0.0);
        let sup = sup_kernel_mean(TestId::Desu, s.values(), &cands);
        assert!(
            (plus - sup).abs() <= 1e-13,
            "seed {seed}: statistic {plus} vs kernel supremum {sup}"
        );
    }
}

#[test]
fn angus_statistic_near_kernel_supremum() {
    // replacing the squared survival by the pair average changes the value
    // by at most k(n-k)/(n^2 (n-1)) <= 1/n
    let exp1 = Distribution::Exponential { rate: 1.0 };
    for seed in 0..25u64 {
        let n = 30;
        let s = Sample::draw(&exp1, n, substream(1701, seed)).unwrap();
        let plus = compute_statistic(TestId::Angus, &s, Side::Plus).unwrap().value;
        // t lives on the uniform scale: jumps at 1 - e^-x and 1 - e^(-x/2)
        let mut cands: Vec<f64> = Vec::new();
        for &v in s.values() {
            cands.push(-(-v).exp_m1());
            cands.push(-(-0.5 * v).exp_m1());
        }
        cands.push(1e-9);
        cands.push(1.0 - 1e-9);
        let sup = sup_kernel_mean(TestId::Angus, s.values(), &cands);
        assert!(
            (plus - sup).abs() <= 1.0 / n as f64,
            "seed {seed}: statistic {plus} vs kernel supremum {sup}"
        );
    }
}

#[test]
fn symmetry_h_statistic_near_kernel_supremum() {
    // the pointwise gap between the exact statistic's process and the
    // pair-average family is at most 7/n
    let unif = Distribution::Uniform { lo: -1.0, hi: 1.0 };
    for seed in 0..25u64 {
        let n = 30;
        let s = Sample::draw(&unif, n, substream(1801, seed)).unwrap();
        let plus = compute_statistic(TestId::SymmetryH, &s, Side::Plus).unwrap().value;
        let mut cands: Vec<f64> = s.values().iter().flat_map(|&v| [v, -v]).collect();
        cands.push(-1.0);
        cands.push(1.0);
        let sup = sup_kernel_mean(TestId::SymmetryH, s.values(), &cands);
        assert!(
            (plus - sup).abs() <= 7.0 / n as f64,
            "seed {seed}: statistic {plus} vs kernel supremum {sup}"
        );
    }
}
