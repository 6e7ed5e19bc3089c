//! Shared helpers for the integration suites: dense-grid supremum oracles
//! built directly from the statistic definitions, independent of the
//! library's step-function and supremum code paths.

#![allow(dead_code)]

use ueks::distributions::Distribution;
use ueks::kernels::TestId;

/// Sorted kernel values over all pairs, enumerated from scratch.
fn pair_values<H: Fn(f64, f64) -> f64>(x: &[f64], h: H) -> Vec<f64> {
    let mut vals = Vec::with_capacity(x.len() * (x.len() - 1) / 2);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            vals.push(h(x[i], x[j]));
        }
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// #{v in arr : v < t} by a forward sweep; `cursor` persists across an
/// ascending grid.
struct Sweep<'a> {
    arr: &'a [f64],
    cursor: usize,
}

impl<'a> Sweep<'a> {
    fn new(arr: &'a [f64]) -> Self {
        Self { arr, cursor: 0 }
    }

    fn count_below(&mut self, t: f64) -> usize {
        while self.cursor < self.arr.len() && self.arr[self.cursor] < t {
            self.cursor += 1;
        }
        self.cursor
    }
}

/// #{v in arr : v <= t} by a forward sweep for ascending t.
struct SweepLe<'a> {
    arr: &'a [f64],
    cursor: usize,
}

impl<'a> SweepLe<'a> {
    fn new(arr: &'a [f64]) -> Self {
        Self { arr, cursor: 0 }
    }

    fn count_at_or_below(&mut self, t: f64) -> usize {
        while self.cursor < self.arr.len() && self.arr[self.cursor] <= t {
            self.cursor += 1;
        }
        self.cursor
    }
}

/// One-sided suprema (plus, minus) of the statistic's defining difference
/// over a uniform dense grid, plus a resolution slack: the largest jump of
/// the difference next to any inter-candidate gap narrower than the grid
/// step (such constancy intervals can fall between grid points).
pub struct GridOracle {
    pub plus: f64,
    pub minus: f64,
    pub slack: f64,
}

pub fn dense_grid_oracle(
    test: TestId,
    x: &[f64],
    grid_points: usize,
    hypothesized: Option<&Distribution>,
) -> GridOracle {
    let n = x.len();
    let nf = n as f64;
    debug_assert!(x.windows(2).all(|w| w[0] < w[1]), "sorted sample expected");

    // (jump locations with |D|-jump masses, evaluator over the grid)
    match test {
        TestId::Desu => {
            let u = pair_values(x, |a, b| 2.0 * a.min(b));
            two_df_oracle(&u, x, grid_points)
        }
        TestId::PuriRubin => {
            let u = pair_values(x, |a, b| (a - b).abs());
            two_df_oracle(&u, x, grid_points)
        }
        TestId::Polya => {
            let u = pair_values(x, |a, b| (a + b) / std::f64::consts::SQRT_2);
            two_df_oracle(&u, x, grid_points)
        }
        TestId::Bh => {
            let u = pair_values(x, |a, b| a.max(b).abs());
            let mut abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
            abs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            // L_n - G_n: the edf of |x| leads
            let o = two_df_oracle(&abs, &u, grid_points);
            GridOracle {
                plus: o.plus,
                minus: o.minus,
                slack: o.slack,
            }
        }
        TestId::Kolmogorov => {
            let f = hypothesized.copied().unwrap_or(Distribution::Uniform { lo: 0.0, hi: 1.0 });
            smooth_g_oracle(x, |t| f.cdf(t), 1.0 / nf, grid_points)
        }
        TestId::MaxKernel => {
            let f = hypothesized.copied().unwrap_or(Distribution::Uniform { lo: 0.0, hi: 1.0 });
            let u = pair_values(x, |a, b| a.max(b));
            let mass = 1.0 / u.len() as f64;
            smooth_g_oracle(&u, move |t| f.cdf(t) * f.cdf(t), mass, grid_points)
        }
        TestId::Angus => angus_oracle(x, grid_points),
        TestId::SymmetryH => symmetry_h_oracle(x, grid_points),
    }
}

/// sup of [U(t) - V(t)] per side for two strict-inequality empirical dfs.
fn two_df_oracle(u: &[f64], v: &[f64], grid_points: usize) -> GridOracle {
    let (lo, hi) = full_range(&[u, v]);
    let step = (hi - lo) / grid_points as f64;
    let cu = u.len() as f64;
    let cv = v.len() as f64;

    let mut su = Sweep::new(u);
    let mut sv = Sweep::new(v);
    let mut plus = 0.0f64;
    let mut minus = 0.0f64;
    for i in 0..=grid_points {
        let t = lo + step * i as f64;
        let d = su.count_below(t) as f64 / cu - sv.count_below(t) as f64 / cv;
        plus = plus.max(d);
        minus = minus.max(-d);
    }
    let slack = narrow_gap_slack(&[(u, 1.0 / cu), (v, 1.0 / cv)], step);
    GridOracle { plus, minus, slack }
}

/// sup of [A(t) - G(t)] per side for an empirical df against a smooth cdf.
fn smooth_g_oracle<G: Fn(f64) -> f64>(
    a: &[f64],
    g: G,
    mass: f64,
    grid_points: usize,
) -> GridOracle {
    let (lo, hi) = full_range(&[a]);
    // reach slightly past the data so tail values are seen
    let pad = 0.05 * (hi - lo).max(1e-6);
    let (lo, hi) = (lo - pad, hi + pad);
    let step = (hi - lo) / grid_points as f64;

    let mut sa = Sweep::new(a);
    let mut plus = 0.0f64;
    let mut minus = 0.0f64;
    let mut g_prev = g(lo);
    let mut g_var = 0.0f64;
    for i in 0..=grid_points {
        let t = lo + step * i as f64;
        let gt = g(t);
        g_var = g_var.max(gt - g_prev);
        g_prev = gt;
        let d = sa.count_below(t) as f64 * mass - gt;
        plus = plus.max(d);
        minus = minus.max(-d);
    }
    let slack = narrow_gap_slack(&[(a, mass)], step) + 2.0 * g_var;
    GridOracle { plus, minus, slack }
}

/// sup over x >= 0 of [Sbar(2x) - Sbar(x)^2] per side, strict-< survival.
fn angus_oracle(x: &[f64], grid_points: usize) -> GridOracle {
    let nf = x.len() as f64;
    let halved: Vec<f64> = x.iter().map(|v| 0.5 * v).collect();
    let hi = x
        .last()
        .copied()
        .unwrap()
        .max(halved.last().copied().unwrap())
        .max(0.0)
        * 1.05
        + 1e-9;
    let step = hi / grid_points as f64;

    let mut s_half = Sweep::new(&halved);
    let mut s_data = Sweep::new(x);
    let mut plus = 0.0f64;
    let mut minus = 0.0f64;
    for i in 0..=grid_points {
        let t = step * i as f64;
        // #{x_j < 2t} = #{x_j/2 < t}
        let sbar2 = 1.0 - s_half.count_below(t) as f64 / nf;
        let sbar = 1.0 - s_data.count_below(t) as f64 / nf;
        let d = sbar2 - sbar * sbar;
        plus = plus.max(d);
        minus = minus.max(-d);
    }
    // candidate locations are data points and half data points
    let slack = narrow_gap_slack(&[(&halved, 1.0 / nf), (x, 2.0 / nf)], step);
    GridOracle { plus, minus, slack }
}

/// sup of [dF(t) - mean_j dF(X_j)] per side with dF(t) = F(t) + F(-t) - 1.
fn symmetry_h_oracle(x: &[f64], grid_points: usize) -> GridOracle {
    let n = x.len();
    let nf = n as f64;
    let delta = |t: f64| -> f64 {
        let below = x.iter().filter(|&&v| v < t).count() as f64;
        let below_neg = x.iter().filter(|&&v| v < -t).count() as f64;
        (below + below_neg) / nf - 1.0
    };
    let center = x.iter().map(|&v| delta(v)).sum::<f64>() / nf;

    let wide = x.iter().fold(0.0f64, |m, v| m.max(v.abs())) * 1.05 + 1e-9;
    let step = 2.0 * wide / grid_points as f64;
    // #{x_j < -t} = #{-x_j > t} = n - #{-x_j <= t}, swept forward over the
    // ascending negated sample
    let neg: Vec<f64> = x.iter().rev().map(|v| -v).collect();
    let mut s_data = Sweep::new(x);
    let mut s_neg = SweepLe::new(&neg);
    let mut plus = 0.0f64;
    let mut minus = 0.0f64;
    for i in 0..=grid_points {
        let t = -wide + step * i as f64;
        let below_neg_t = n - s_neg.count_at_or_below(t);
        let d = (s_data.count_below(t) as f64 + below_neg_t as f64) / nf - 1.0 - center;
        plus = plus.max(d);
        minus = minus.max(-d);
    }
    let mut locs: Vec<f64> = x.iter().flat_map(|&v| [v, -v]).collect();
    locs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let slack = narrow_gap_slack(&[(&locs, 1.0 / nf)], step);
    GridOracle { plus, minus, slack }
}

fn full_range(arrays: &[&[f64]]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for a in arrays {
        lo = lo.min(*a.first().unwrap());
        hi = hi.max(*a.last().unwrap());
    }
    let pad = 0.02 * (hi - lo).max(1e-9);
    (lo - pad, hi + pad)
}

/// Resolution slack: the difference function is piecewise constant, so a
/// uniform grid only misses a value when a whole constancy interval sits
/// between two grid points. That requires two jump locations closer than
/// the grid step; the missed value then differs from a seen neighbor by at
/// most the jump mass at those locations.
fn narrow_gap_slack(arrays: &[(&[f64], f64)], step: f64) -> f64 {
    let mut locs: Vec<(f64, f64)> = Vec::new();
    for (arr, mass) in arrays {
        let mut i = 0;
        while i < arr.len() {
            let mut j = i + 1;
            while j < arr.len() && arr[j] == arr[i] {
                j += 1;
            }
            locs.push((arr[i], (j - i) as f64 * mass));
            i = j;
        }
    }
    locs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut slack = 0.0f64;
    for w in locs.windows(2) {
        if w[1].0 - w[0].0 < step {
            slack = slack.max(w[0].1 + w[1].1);
        }
    }
    slack
}
