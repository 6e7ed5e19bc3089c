//! One-dimensional optimization: golden-section search plus a coarse-scan
//! global maximizer with parabolic polishing.

/// Golden-section minimum of `f` on `[a, b]`.
///
/// Returns `(x_min, f_min)` once the bracket width drops below `tol`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    while (b - a).abs() > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        if x1 >= x2 {
            break; // bracket collapsed to floating-point resolution
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Golden-section maximum of `f` on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, neg) = golden_min(|x| -f(x), a, b, tol);
    (x, -neg)
}

/// Successive parabolic refinement of a maximizer around `x0`.
///
/// Each pass fits a parabola through a symmetric stencil of half-width `h`
/// and jumps to its vertex; the O(h^2) vertex bias shrinks with the
/// cascade. A pass is skipped when the stencil leaves `[lo, hi]`, the
/// stencil is not concave, or the curvature signal is too close to
/// `f_noise` (the absolute evaluation noise of `f`) to be trusted; the
/// latter keeps quadrature-backed objectives from being polished into
/// noise, and also leaves cusp maxima where golden section put them.
fn polish_max<F: Fn(f64) -> f64>(
    f: &F,
    mut x0: f64,
    mut fx0: f64,
    lo: f64,
    hi: f64,
    f_noise: f64,
) -> (f64, f64) {
    let scale = hi - lo;
    // each half-width must dominate the previous pass's O(h^2) vertex
    // bias, otherwise the step-size guard rejects the correction
    for rel in [1e-3, 1e-4, 1e-6] {
        let h = rel * scale;
        if x0 - h < lo || x0 + h > hi {
            continue;
        }
        let fm = f(x0 - h);
        let fp = f(x0 + h);
        let curvature = fp - 2.0 * fx0 + fm;
        if curvature >= 0.0 || curvature.abs() < 200.0 * f_noise {
            continue;
        }
        let step = -0.5 * h * (fp - fm) / curvature;
        if !step.is_finite() || step.abs() > 1.5 * h {
            continue;
        }
        x0 += step;
        fx0 = f(x0);
    }
    (x0, fx0)
}

/// Global maximum of `f` over `[a, b]` by a uniform scan with golden and
/// parabolic refinement of every scan-level local maximum.
///
/// `points` is the number of grid intervals. Among near-ties (values within
/// `1e-10` of the best), the candidate with the smallest `|x|` wins, which
/// pins a deterministic answer for even variance functions.
pub fn scan_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, points: usize, tol: f64) -> (f64, f64) {
    scan_max_noisy(f, a, b, points, tol, 1e-15)
}

/// [`scan_max`] for objectives with absolute evaluation noise `f_noise`
/// (e.g. adaptive quadrature evaluated to a fixed tolerance).
pub fn scan_max_noisy<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    points: usize,
    tol: f64,
    f_noise: f64,
) -> (f64, f64) {
    assert!(points >= 2 && b > a);
    let step = (b - a) / points as f64;
    let grid: Vec<f64> = (0..=points)
        .map(|i| if i == points { b } else { a + step * i as f64 })
        .collect();
    let vals: Vec<f64> = grid.iter().map(|&x| f(x)).collect();

    let mut candidates: Vec<(f64, f64)> = Vec::new();
    for i in 0..=points {
        let left_ok = i == 0 || vals[i] >= vals[i - 1];
        let right_ok = i == points || vals[i] >= vals[i + 1];
        if !(left_ok && right_ok) {
            continue;
        }
        // the grid point itself stays a candidate: it is exact at cusps
        // and at the boundary, where the refinements cannot help
        candidates.push((grid[i], vals[i]));
        let lo = grid[i.saturating_sub(1)];
        let hi = grid[(i + 1).min(points)];
        if hi > lo {
            let (x, fx) = golden_max(&f, lo, hi, tol);
            candidates.push(polish_max(&f, x, fx, a, b, f_noise));
        }
    }

    let best = candidates
        .iter()
        .map(|c| c.1)
        .fold(f64::NEG_INFINITY, f64::max);
    candidates
        .into_iter()
        .filter(|c| c.1 >= best - 1e-10)
        .min_by(|p, q| {
            p.0.abs()
                .partial_cmp(&q.0.abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("scan produced at least one candidate")
}
