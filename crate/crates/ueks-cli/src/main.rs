//! `ueks`: U-empirical Kolmogorov-Smirnov tests of fit and symmetry.
//!
//! Subcommands bind the library modules: `test` runs a statistic on data
//! with Monte Carlo calibration, `critvals` tabulates critical values,
//! `ldrate` estimates large-deviation rates empirically, `varfun` dumps a
//! variance function with its maximum, `efficiency` tabulates local Bahadur
//! efficiencies, and `f0` evaluates the exact Kolmogorov rate function.
//!
//! Exit codes: 0 success, 2 input error, 3 data-assumption violation
//! (ties), 4 numeric non-convergence. All randomness is seeded: identical
//! invocations produce byte-identical output for any `UEKS_THREADS`.

mod fmt;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;

use fmt::g10;
use ueks::distributions::Distribution;
use ueks::efficiency::{self, AltId};
use ueks::kernels::{self, TestId};
use ueks::large_deviation::{self, ld_leading_coeff};
use ueks::montecarlo::{self, NullSimulation};
use ueks::statistics::{compute_statistic, compute_statistic_against, Sample, Side};
use ueks::Error as LibError;

#[derive(Parser)]
#[command(
    name = "ueks",
    version,
    about = "U-empirical Kolmogorov-Smirnov goodness-of-fit and symmetry tests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Run a test on a data file, calibrating by simulation
    Test {
        /// Input file: one number per line, or CSV with --column
        #[arg(long)]
        data: PathBuf,
        /// Test id: desu | angus | puri-rubin | symmetry-h | bh | polya |
        /// kolmogorov | max-kernel
        #[arg(long)]
        test: String,
        #[arg(long, default_value = "two-sided")]
        side: String,
        /// Monte Carlo replications for the null calibration
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Hypothesized df for kolmogorov/max-kernel, e.g. exp:1 or unif:0:1
        #[arg(long)]
        null: Option<String>,
        /// Zero-based CSV column to read
        #[arg(long)]
        column: Option<usize>,
        /// Break ties deterministically by a jitter of 1e-12 * range
        /// (changes the null distribution slightly; off by default)
        #[arg(long)]
        jitter: bool,
        /// Subtract the sample mean first (the polya characterization
        /// assumes a known zero mean; centering changes the null
        /// distribution and the calibration does not account for it)
        #[arg(long)]
        center: bool,
        /// Cache directory for simulated null distributions
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tabulate Monte Carlo critical values for a test
    Critvals {
        #[arg(long)]
        test: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Significance level; repeatable
        #[arg(long = "alpha", default_values_t = vec![0.10, 0.05, 0.01])]
        alphas: Vec<f64>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Empirical large-deviation rate of the null tail P(T > a)
    Ldrate {
        #[arg(long)]
        test: String,
        #[arg(long)]
        a: f64,
        /// Comma-separated sample sizes, e.g. 40,80,160
        #[arg(long, default_value = "40,80,160")]
        n_grid: String,
        #[arg(long, default_value_t = 200_000)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Variance function of a kernel family over a t-grid, with its maximum
    Varfun {
        #[arg(long)]
        test: String,
        #[arg(long, allow_negative_numbers = true)]
        t_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        t_max: Option<f64>,
        /// Number of grid points
        #[arg(long, default_value_t = 601)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Local Bahadur efficiency for (test, alternative) pairs
    Efficiency {
        #[arg(long)]
        test: Option<String>,
        /// Alternative id: weibull | makeham | normshift | expscale
        #[arg(long)]
        alt: Option<String>,
        /// Compute the four standard pairs
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exact Kolmogorov rate function f0(a)
    F0 {
        /// Comma-separated thresholds in (0,1)
        #[arg(long)]
        a_list: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// UEKS_THREADS caps the rayon pool; unset or invalid leaves the default.
fn init_threads() {
    if let Ok(v) = std::env::var("UEKS_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(LibError),
    Input(String),
    Parse { line: usize, message: String },
    Ties { value: f64 },
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Parse { line, message } => write!(f, "line {line}: {message}"),
            CliError::Ties { value } => write!(
                f,
                "tied observations at {value}; pass --jitter to break ties deterministically"
            ),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) => 2,
            CliError::Ties { .. } => 3,
            CliError::Lib(e) => match e {
                LibError::Parameter(_)
                | LibError::Domain(_)
                | LibError::Arity { .. }
                | LibError::Size(_)
                | LibError::UnknownId(_)
                | LibError::Precision(_)
                | LibError::Parse { .. } => 2,
                LibError::Ties { .. } => 3,
                LibError::Divergence(_)
                | LibError::Integration(_)
                | LibError::Optimization(_)
                | LibError::Degenerate(_)
                | LibError::NonConvergence(_)
                | LibError::Indeterminate(_) => 4,
            },
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        match e {
            LibError::Ties { value } => CliError::Ties { value },
            other => CliError::Lib(other),
        }
    }
}

fn run(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Test {
            data,
            test,
            side,
            reps,
            seed,
            null,
            column,
            jitter,
            center,
            cache_dir,
            format,
        } => run_test(
            &data, &test, &side, reps, seed, null, column, jitter, center, cache_dir, format,
        ),
        Command::Critvals {
            test,
            n,
            reps,
            seed,
            alphas,
            cache_dir,
            format,
        } => run_critvals(&test, n, reps, seed, &alphas, cache_dir, format),
        Command::Ldrate {
            test,
            a,
            n_grid,
            reps,
            seed,
            format,
        } => run_ldrate(&test, a, &n_grid, reps, seed, format),
        Command::Varfun {
            test,
            t_min,
            t_max,
            points,
            format,
        } => run_varfun(&test, t_min, t_max, points, format),
        Command::Efficiency {
            test,
            alt,
            all,
            format,
        } => run_efficiency(test.as_deref(), alt.as_deref(), all, format),
        Command::F0 { a_list, format } => run_f0(&a_list, format),
    }
}

// --- input -------------------------------------------------------------------

fn read_sample(
    path: &Path,
    column: Option<usize>,
    jitter: bool,
    center: bool,
) -> Result<Sample, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = match column {
            None => line,
            Some(c) => {
                let mut it = line.split(',');
                let f = it.nth(c).ok_or_else(|| CliError::Parse {
                    line: line_no,
                    message: format!("no column {c}"),
                })?;
                f.trim()
            }
        };
        match field.parse::<f64>() {
            Ok(v) => values.push(v),
            // a single leading header row is tolerated in column mode
            Err(_) if column.is_some() && values.is_empty() && line_no == 1 => continue,
            Err(_) => {
                return Err(CliError::Parse {
                    line: line_no,
                    message: format!("cannot parse `{field}` as a number"),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(CliError::Input(format!("{}: no data", path.display())));
    }
    if center {
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        for v in &mut values {
            *v -= mean;
        }
    }
    if jitter {
        values = jitter_ties(values);
    }
    Sample::new(values).map_err(CliError::from)
}

/// Deterministic tie breaking: the k-th member of a run of equal values is
/// shifted by k * 1e-12 * range. Documented as slightly changing the null
/// distribution; opt-in only.
fn jitter_ties(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let range = values.last().unwrap() - values.first().unwrap();
    let step = 1e-12 * if range > 0.0 { range } else { 1.0 };
    let mut i = 0;
    while i < values.len() {
        let mut j = i + 1;
        while j < values.len() && values[j] == values[i] {
            j += 1;
        }
        for (k, v) in values[i..j].iter_mut().enumerate() {
            *v += k as f64 * step;
        }
        i = j;
    }
    values
}

fn parse_test(s: &str) -> Result<TestId, CliError> {
    TestId::from_str(s).map_err(CliError::from)
}

fn parse_grid(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad grid entry `{t}`")))
        })
        .collect()
}

// --- caching -----------------------------------------------------------------

#[derive(Deserialize)]
struct CachedSim {
    test: String,
    n: usize,
    reps: usize,
    seed: u64,
    null: String,
    values: Vec<f64>,
}

fn cache_path(dir: &Path, test: TestId, null: &Distribution, n: usize, reps: usize, seed: u64) -> PathBuf {
    let null_tag = null.to_string().replace(':', "_");
    dir.join(format!("{test}-{null_tag}-n{n}-reps{reps}-seed{seed}.json"))
}

fn simulate_cached(
    test: TestId,
    n: usize,
    reps: usize,
    seed: u64,
    cache_dir: Option<&Path>,
) -> Result<NullSimulation, CliError> {
    let null = kernels::family(test).null;
    if let Some(dir) = cache_dir {
        let path = cache_path(dir, test, &null, n, reps, seed);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(c) = serde_json::from_str::<CachedSim>(&text) {
                if c.test == test.as_str()
                    && c.n == n
                    && c.reps == reps
                    && c.seed == seed
                    && c.null == null.to_string()
                {
                    if let Ok(sim) =
                        NullSimulation::from_sorted_values(test, n, seed, null, c.values)
                    {
                        return Ok(sim);
                    }
                }
            }
        }
        let sim = montecarlo::simulate_null(test, n, reps, seed)?;
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Input(format!("cannot create cache dir: {e}")))?;
        let null_desc = null.to_string();
        let payload = serde_json::json!({
            "test": test.as_str(),
            "n": n,
            "reps": reps,
            "seed": seed,
            "null": null_desc,
            "values": sim.values(),
        });
        std::fs::write(&path, payload.to_string())
            .map_err(|e| CliError::Input(format!("cannot write cache: {e}")))?;
        Ok(sim)
    } else {
        montecarlo::simulate_null(test, n, reps, seed).map_err(CliError::from)
    }
}

// --- subcommands ---------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn run_test(
    data: &Path,
    test: &str,
    side: &str,
    reps: usize,
    seed: u64,
    null: Option<String>,
    column: Option<usize>,
    jitter: bool,
    center: bool,
    cache_dir: Option<PathBuf>,
    format: Format,
) -> Result<String, CliError> {
    let test = parse_test(test)?;
    let side = Side::from_str(side)?;
    let sample = read_sample(data, column, jitter, center)?;

    let result = match &null {
        Some(desc) => {
            let f: Distribution = desc.parse()?;
            compute_statistic_against(test, &sample, side, &f)?
        }
        None => compute_statistic(test, &sample, side)?,
    };

    let sim = simulate_cached(test, sample.len(), reps, seed, cache_dir.as_deref())?;
    let p = sim.p_value(result.value);
    let alphas = [0.10, 0.05, 0.01];
    let criticals: Vec<(f64, f64)> = alphas
        .iter()
        .map(|&a| sim.critical_value(a).map(|c| (a, c)))
        .collect::<Result<_, _>>()?;

    let mut out = String::new();
    match format {
        Format::Json => {
            let crit_fields: Vec<String> = criticals
                .iter()
                .map(|(a, c)| format!("\"{}\":{}", g10(*a), g10(*c)))
                .collect();
            writeln!(
                out,
                "{{\"test\":\"{}\",\"side\":\"{}\",\"n\":{},\"statistic\":{},\"argmax_t\":{},\"p_value\":{},\"critical_values\":{{{}}},\"reps\":{},\"seed\":{}}}",
                test,
                side,
                result.n,
                g10(result.value),
                g10(result.argmax_t),
                g10(p),
                crit_fields.join(","),
                reps,
                seed
            )
            .unwrap();
        }
        Format::Csv => {
            writeln!(out, "test,side,n,statistic,argmax_t,p_value,reps,seed").unwrap();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                test,
                side,
                result.n,
                g10(result.value),
                g10(result.argmax_t),
                g10(p),
                reps,
                seed
            )
            .unwrap();
        }
        Format::Pretty => {
            writeln!(out, "test        {test}").unwrap();
            writeln!(out, "side        {side}").unwrap();
            writeln!(out, "n           {}", result.n).unwrap();
            writeln!(out, "statistic   {}", g10(result.value)).unwrap();
            writeln!(out, "argmax t    {}", g10(result.argmax_t)).unwrap();
            writeln!(out, "p-value     {}  ({reps} reps, seed {seed})", g10(p)).unwrap();
            for (a, c) in &criticals {
                writeln!(out, "crit {}    {}", g10(*a), g10(*c)).unwrap();
            }
        }
    }
    Ok(out)
}

fn run_critvals(
    test: &str,
    n: usize,
    reps: usize,
    seed: u64,
    alphas: &[f64],
    cache_dir: Option<PathBuf>,
    format: Format,
) -> Result<String, CliError> {
    let test = parse_test(test)?;
    let sim = simulate_cached(test, n, reps, seed, cache_dir.as_deref())?;
    let criticals: Vec<(f64, f64)> = alphas
        .iter()
        .map(|&a| sim.critical_value(a).map(|c| (a, c)))
        .collect::<Result<_, _>>()?;

    let mut out = String::new();
    match format {
        Format::Json => {
            let fields: Vec<String> = criticals
                .iter()
                .map(|(a, c)| format!("\"{}\":{}", g10(*a), g10(*c)))
                .collect();
            writeln!(
                out,
                "{{\"test\":\"{test}\",\"n\":{n},\"reps\":{reps},\"seed\":{seed},\"criticals\":{{{}}}}}",
                fields.join(",")
            )
            .unwrap();
        }
        Format::Csv => {
            writeln!(out, "alpha,critical").unwrap();
            for (a, c) in &criticals {
                writeln!(out, "{},{}", g10(*a), g10(*c)).unwrap();
            }
        }
        Format::Pretty => {
            writeln!(out, "{test}: n = {n}, reps = {reps}, seed = {seed}").unwrap();
            for (a, c) in &criticals {
                writeln!(out, "  alpha {:<6} -> {}", g10(*a), g10(*c)).unwrap();
            }
        }
    }
    Ok(out)
}

fn run_ldrate(
    test: &str,
    a: f64,
    n_grid: &str,
    reps: usize,
    seed: u64,
    format: Format,
) -> Result<String, CliError> {
    let test = parse_test(test)?;
    let grid = parse_grid(n_grid)?;
    let est = montecarlo::empirical_ld_rate(test, a, &grid, reps, seed)?;

    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "n,exceedances,p_hat,rate_hat,rate_theory").unwrap();
            for p in &est.points {
                let rate = p.rate.map(g10).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    p.n,
                    p.exceedances,
                    g10(p.p_hat),
                    rate,
                    g10(est.theory_rate)
                )
                .unwrap();
            }
        }
        Format::Json => {
            let points: Vec<String> = est
                .points
                .iter()
                .map(|p| {
                    format!(
                        "{{\"n\":{},\"exceedances\":{},\"p_hat\":{},\"rate_hat\":{}}}",
                        p.n,
                        p.exceedances,
                        g10(p.p_hat),
                        p.rate.map(g10).unwrap_or_else(|| "null".to_string())
                    )
                })
                .collect();
            writeln!(
                out,
                "{{\"test\":\"{test}\",\"a\":{},\"reps\":{reps},\"seed\":{seed},\"rate_theory\":{},\"points\":[{}]}}",
                g10(a),
                g10(est.theory_rate),
                points.join(",")
            )
            .unwrap();
        }
        Format::Pretty => {
            writeln!(
                out,
                "{test}: P(T > {}) over n, reps = {reps}, leading rate = {}",
                g10(a),
                g10(est.theory_rate)
            )
            .unwrap();
            for p in &est.points {
                let rate = p
                    .rate
                    .map(g10)
                    .unwrap_or_else(|| "no exceedances".to_string());
                writeln!(
                    out,
                    "  n {:>5}  exceed {:>8}  p_hat {:<14} rate {}",
                    p.n,
                    p.exceedances,
                    g10(p.p_hat),
                    rate
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

fn run_varfun(
    test: &str,
    t_min: Option<f64>,
    t_max: Option<f64>,
    points: usize,
    format: Format,
) -> Result<String, CliError> {
    let test = parse_test(test)?;
    let fam = kernels::family(test);
    if points < 2 {
        return Err(CliError::Input("need at least 2 grid points".into()));
    }
    let (lo_default, hi_default) = fam.truncated_interval();
    let lo = t_min.unwrap_or(lo_default);
    let hi = t_max.unwrap_or(hi_default);
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(CliError::Input(format!("empty grid range [{lo}, {hi}]")));
    }

    let step = (hi - lo) / (points - 1) as f64;
    let grid: Vec<(f64, f64)> = (0..points)
        .map(|i| {
            let t = if i + 1 == points { hi } else { lo + step * i as f64 };
            fam.variance_at(t).map(|v| (t, v))
        })
        .collect::<Result<_, _>>()?;
    let rate = ld_leading_coeff(&fam)?;

    let summary = format!(
        "{{\"t_star\":{},\"phi0_sq\":{},\"leading_coeff\":{}}}",
        g10(rate.argmax_t),
        g10(rate.phi0_sq),
        g10(rate.leading_coeff)
    );
    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "t,sigma_sq").unwrap();
            for (t, v) in &grid {
                writeln!(out, "{},{}", g10(*t), g10(*v)).unwrap();
            }
            writeln!(out, "# summary {summary}").unwrap();
        }
        Format::Json => {
            let rows: Vec<String> = grid
                .iter()
                .map(|(t, v)| format!("[{},{}]", g10(*t), g10(*v)))
                .collect();
            writeln!(
                out,
                "{{\"test\":\"{test}\",\"grid\":[{}],\"summary\":{summary}}}",
                rows.join(",")
            )
            .unwrap();
        }
        Format::Pretty => {
            writeln!(
                out,
                "{test}: variance maximum {} at t = {}, leading coefficient {}",
                g10(rate.phi0_sq),
                g10(rate.argmax_t),
                g10(rate.leading_coeff)
            )
            .unwrap();
            for (t, v) in &grid {
                writeln!(out, "  {:<16} {}", g10(*t), g10(*v)).unwrap();
            }
        }
    }
    Ok(out)
}

fn run_efficiency(
    test: Option<&str>,
    alt: Option<&str>,
    all: bool,
    format: Format,
) -> Result<String, CliError> {
    let pairs: Vec<(TestId, AltId)> = if all {
        vec![
            (TestId::Desu, AltId::Weibull),
            (TestId::Desu, AltId::Makeham),
            (TestId::SymmetryH, AltId::NormalShift),
            (TestId::Bh, AltId::NormalShift),
        ]
    } else {
        let t = test.ok_or_else(|| CliError::Input("--test required (or use --all)".into()))?;
        let a = alt.ok_or_else(|| CliError::Input("--alt required (or use --all)".into()))?;
        vec![(parse_test(t)?, AltId::from_str(a)?)]
    };

    // pairs are independent; compute them in parallel, emit in order
    let reports: Vec<_> = pairs
        .par_iter()
        .map(|&(t, a)| efficiency::local_efficiency(t, &efficiency::alternative(a)))
        .collect::<Result<_, _>>()?;

    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "test,alt,slope_coeff,kl_coeff,efficiency,converged").unwrap();
            for r in &reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.test,
                    r.alt,
                    g10(r.slope_coeff),
                    g10(r.kl_coeff),
                    g10(r.efficiency),
                    r.converged
                )
                .unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<String> = reports
                .iter()
                .map(|r| {
                    format!(
                        "{{\"test\":\"{}\",\"alt\":\"{}\",\"slope_coeff\":{},\"kl_coeff\":{},\"efficiency\":{},\"converged\":{}}}",
                        r.test,
                        r.alt,
                        g10(r.slope_coeff),
                        g10(r.kl_coeff),
                        g10(r.efficiency),
                        r.converged
                    )
                })
                .collect();
            writeln!(out, "[{}]", rows.join(",")).unwrap();
        }
        Format::Pretty => {
            writeln!(
                out,
                "{:<12} {:<10} {:>14} {:>14} {:>12}  flags",
                "test", "alt", "slope_coeff", "kl_coeff", "efficiency"
            )
            .unwrap();
            for r in &reports {
                writeln!(
                    out,
                    "{:<12} {:<10} {:>14} {:>14} {:>12}  {}",
                    r.test.to_string(),
                    r.alt.to_string(),
                    g10(r.slope_coeff),
                    g10(r.kl_coeff),
                    g10(r.efficiency),
                    if r.converged { "ok" } else { "non-convergent" }
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

fn run_f0(a_list: &str, format: Format) -> Result<String, CliError> {
    let values: Vec<f64> = a_list
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("bad threshold `{t}`")))
        })
        .collect::<Result<_, _>>()?;

    let rows: Vec<(f64, f64, f64)> = values
        .iter()
        .map(|&a| {
            large_deviation::kolmogorov_f0(a).map(|f0| (a, f0, f0 / (2.0 * a * a)))
        })
        .collect::<Result<_, _>>()?;

    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "a,f0,ratio_to_2a2").unwrap();
            for (a, f0, ratio) in &rows {
                writeln!(out, "{},{},{}", g10(*a), g10(*f0), g10(*ratio)).unwrap();
            }
        }
        Format::Json => {
            let items: Vec<String> = rows
                .iter()
                .map(|(a, f0, ratio)| {
                    format!(
                        "{{\"a\":{},\"f0\":{},\"ratio_to_2a2\":{}}}",
                        g10(*a),
                        g10(*f0),
                        g10(*ratio)
                    )
                })
                .collect();
            writeln!(out, "[{}]", items.join(",")).unwrap();
        }
        Format::Pretty => {
            writeln!(out, "{:<10} {:<16} ratio to 2a^2", "a", "f0(a)").unwrap();
            for (a, f0, ratio) in &rows {
                writeln!(out, "{:<10} {:<16} {}", g10(*a), g10(*f0), g10(*ratio)).unwrap();
            }
        }
    }
    Ok(out)
}
