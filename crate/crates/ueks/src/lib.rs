//! U-empirical Kolmogorov-Smirnov tests of goodness-of-fit and symmetry.
//!
//! The library compares the empirical distribution function of a sample with
//! a U-empirical distribution function built from a symmetric kernel over all
//! m-subsets (or with a hypothesized df), and provides everything needed to
//! use the resulting supremum statistics in practice:
//!
//! * exact statistic computation over jump candidates ([`statistics`]),
//! * the built-in kernel families with their projections and variance
//!   functions ([`kernels`]),
//! * large-deviation rate quantities, variance maximization, and two
//!   exponential tail bounds ([`large_deviation`]),
//! * Monte Carlo null calibration with reproducible counter-based seeding
//!   ([`montecarlo`]),
//! * local Bahadur efficiency under parametric alternatives ([`efficiency`]),
//! * the probability distributions and Kullback-Leibler machinery the
//!   efficiency computations rest on ([`distributions`]).
//!
//! ```
//! use ueks::distributions::Distribution;
//! use ueks::kernels::TestId;
//! use ueks::montecarlo::simulate_null;
//! use ueks::statistics::{compute_statistic, Sample, Side};
//!
//! # fn main() -> ueks::Result<()> {
//! let data = Distribution::exponential(1.0)?.sample_values(60, 42);
//! let sample = Sample::new(data)?;
//! let stat = compute_statistic(TestId::Desu, &sample, Side::TwoSided)?;
//! let null = simulate_null(TestId::Desu, sample.len(), 1_000, 1)?;
//! let p = null.p_value(stat.value);
//! assert!(stat.value >= 0.0 && p > 0.0 && p <= 1.0);
//! # Ok(())
//! # }
//! ```

pub mod distributions;
pub mod efficiency;
mod error;
pub mod kernels;
pub mod large_deviation;
pub mod montecarlo;
pub mod opt;
pub mod quad;
pub mod rng;
pub(crate) mod special;
pub mod statistics;

pub use error::{Error, Result};
