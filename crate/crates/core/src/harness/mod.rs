//! Experiment configuration, sweeps and output files.

mod config;
mod plot;
mod sweep;

pub use config::{default_epsilon_grid, ExperimentConfig, Method, ParamMode, SweepVariable, WeightMode, FIG1_PRESETS, SDP_MAX_N};
pub use plot::{write_gnuplot_dat, write_svg};
pub use sweep::{reconstruct, run_sweep, PointSummary, Reconstruction, SweepResult, TrialRecord, SUMMARY_CSV_HEADER, TRIALS_CSV_HEADER};

use crate::error::{Error, Result};

/// Prime stride between consecutive trial seeds.
pub const TRIAL_SEED_STRIDE: u64 = 1_000_003;

/// Environment variable capping the worker pool size.
pub const THREADS_ENV: &str = "LSBM_THREADS";

/// Seed of trial `index`: `base + index * TRIAL_SEED_STRIDE` (wrapping).
/// The same trial index gets the same seed at every grid point.
pub fn trial_seed(base: u64, index: usize) -> u64 {
    base.wrapping_add((index as u64).wrapping_mul(TRIAL_SEED_STRIDE))
}

/// Runs `f` inside a rayon pool of `LSBM_THREADS` workers, or the global
/// pool when the variable is unset.
pub fn with_worker_pool<R: Send>(f: impl FnOnce() -> R + Send) -> Result<R> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let threads: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        Err(_) => Ok(f()),
    }
}
