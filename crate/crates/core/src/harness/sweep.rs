use std::fs::{self, File};
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::bisection::{min_bisection_exact, BalanceMode};
use crate::error::Result;
use crate::harness::config::{ExperimentConfig, Method, ParamMode, SweepVariable, WeightMode};
use crate::harness::plot::{write_gnuplot_dat, write_svg};
use crate::harness::{trial_seed, with_worker_pool, TRIAL_SEED_STRIDE};
use crate::model::{sample_lsbm, LabeledGraph, ModelParams, TypeAssignment};
use crate::sdp::{round_sdp, solve_sdp, SdpOptions};
use crate::spectral::{spectral_reconstruct, EigenOptions, ParamSource, SpectralOptions};
use crate::tree::mean_stderr;
use crate::weights::{alpha_beta, io::read_weights, mle_weight, optimal_weight, overlap, tau, WeightFunction, WeightedAdjacency};

pub const TRIALS_CSV_HEADER: &str = "seed,sweep_value,tau,overlap,runtime_ms,method,notes";
pub const SUMMARY_CSV_HEADER: &str = "sweep_value,tau,mean_overlap,stderr,trials,failures";

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub seed: u64,
    pub sweep_value: f64,
    pub tau: f64,
    /// `None` when the trial failed; the reason is in `notes`.
    pub overlap: Option<f64>,
    pub runtime_ms: Option<f64>,
    pub method: Method,
    /// Diagnostics as `key=value` pairs separated by `;`.
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointSummary {
    pub sweep_value: f64,
    pub tau: f64,
    pub mean_overlap: f64,
    pub stderr: f64,
    /// Successful trials.
    pub trials: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub records: Vec<TrialRecord>,
    pub summary: Vec<PointSummary>,
    /// Sweep value where `tau = 1`, if the grid brackets it.
    pub tau_one: Option<f64>,
}

/// Runs every grid point and trial; trial failures are recorded, not
/// raised. Records are ordered by grid point, then trial index.
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepResult> {
    config.validate()?;
    let alphabet = config.alphabet()?;
    let file_weights = match &config.weights {
        WeightMode::File(path) => Some(read_weights::<f64, _>(&alphabet, File::open(path)?)?),
        _ => None,
    };
    let jobs: Vec<(f64, usize)> =
        config.grid.iter().flat_map(|&v| (0..config.trials).map(move |i| (v, i))).collect();
    let records: Vec<TrialRecord> = with_worker_pool(|| {
        jobs.par_iter()
            .map(|&(value, index)| run_trial(config, value, trial_seed(config.seed, index), file_weights.as_ref()))
            .collect()
    })?;
    let summary = config
        .grid
        .iter()
        .enumerate()
        .map(|(gi, &value)| {
            let chunk = &records[gi * config.trials..(gi + 1) * config.trials];
            let qs: Vec<f64> = chunk.iter().filter_map(|r| r.overlap).collect();
            let (mean, stderr) = if qs.is_empty() { (f64::NAN, f64::NAN) } else { mean_stderr(&qs) };
            PointSummary {
                sweep_value: value,
                tau: chunk[0].tau,
                mean_overlap: mean,
                stderr,
                trials: qs.len(),
                failures: chunk.len() - qs.len(),
            }
        })
        .collect();
    Ok(SweepResult { records, summary, tau_one: tau_one_crossing(config) })
}

fn run_trial(config: &ExperimentConfig, value: f64, seed: u64, file_weights: Option<&WeightFunction>) -> TrialRecord {
    let start = Instant::now();
    let params = config.params_at(value).expect("validated grid");
    let t = tau(&params);
    let outcome = reconstruct_trial(config, &params, seed, file_weights);
    let runtime_ms = config.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let (overlap, notes) = match outcome {
        Ok((q, notes)) => (Some(q), notes),
        Err(e) => (None, format!("error={e}")),
    };
    TrialRecord {
        seed,
        sweep_value: value,
        tau: t,
        overlap,
        runtime_ms,
        method: config.method,
        notes: notes.replace([',', '\n', '\r'], ";"),
    }
}

fn trial_weights(config: &ExperimentConfig, params: &ModelParams<f64>, file: Option<&WeightFunction>) -> Result<WeightFunction> {
    Ok(match &config.weights {
        WeightMode::Optimal => optimal_weight(params),
        WeightMode::Mle => mle_weight(params, Some(config.n))?.normalized(),
        WeightMode::Unit => WeightFunction::constant(1.0, params.num_labels()),
        WeightMode::File(_) => file.expect("loaded before the sweep").clone(),
    })
}

fn reconstruct_trial(
    config: &ExperimentConfig,
    params: &ModelParams<f64>,
    seed: u64,
    file: Option<&WeightFunction>,
) -> Result<(f64, String)> {
    let (g, sigma) = sample_lsbm(params, config.n, seed)?;
    let w = trial_weights(config, params, file)?;
    let sources = match config.param_mode {
        ParamMode::Exact => (ParamSource::Exact(alpha_beta(params, &w)?.0), ParamSource::Exact(params.a + params.b)),
        ParamMode::Estimated => (ParamSource::Estimate, ParamSource::Estimate),
    };
    let run = reconstruct(&g, &w, config.method, sources, config.trim, seed)?;
    Ok((overlap(&sigma, &run.assignment)?, run.notes))
}

/// Output of [`reconstruct`].
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub assignment: TypeAssignment,
    /// Method diagnostics as `key=value` pairs separated by `;`.
    pub notes: String,
}

/// Runs one reconstruction method on `g` with edge weights `w`.
///
/// `sources` gives `(alpha, a + b)` for the spectral method; `trim` and
/// `seed` (eigensolver start vector) are also spectral-only except that
/// `seed` seeds the SDP rounding too.
pub fn reconstruct(
    g: &LabeledGraph,
    w: &WeightFunction,
    method: Method,
    sources: (ParamSource<f64>, ParamSource<f64>),
    trim: bool,
    seed: u64,
) -> Result<Reconstruction> {
    let eigen = EigenOptions { seed, ..EigenOptions::default() };
    let (assignment, notes) = match method {
        Method::Spectral => {
            let opts = SpectralOptions { trim, eigen };
            let out = spectral_reconstruct(g, w, sources.0, sources.1, &opts)?;
            let notes = format!(
                "eigenvalue={:?};iterations={};residual={:e};trimmed_vertices={};removed_edges={}",
                out.eigen.eigenvalue,
                out.eigen.iterations,
                out.eigen.residual,
                out.trim.removed_vertices.len(),
                out.trim.removed_edges
            );
            (out.assignment, notes)
        }
        Method::Sdp => {
            let adj = WeightedAdjacency::from_graph(g, w)?;
            let sol = solve_sdp(&adj, &SdpOptions::default())?;
            let est = round_sdp(&sol, &eigen)?;
            let notes = format!(
                "objective={:?};iterations={};psd={:e};diag={:e};sum={:e};rho={:?}",
                sol.objective, sol.iterations, sol.psd_violation, sol.diag_deviation, sol.sum_violation, sol.rho
            );
            (est, notes)
        }
        Method::Bisect => {
            let adj = WeightedAdjacency::from_graph(g, w)?;
            let mode = if g.n().is_multiple_of(2) { BalanceMode::Exact } else { BalanceMode::Relaxed };
            let best = min_bisection_exact(&adj, mode)?;
            (best.assignment, format!("cut={:?};evaluated={}", best.cut, best.evaluated))
        }
    };
    Ok(Reconstruction { assignment, notes })
}

/// `tau = 1` crossing along the sweep. For epsilon sweeps with `a = b = c`
/// it is `1 / (2 sqrt c)`; otherwise the first grid interval where
/// `tau - 1` changes sign is bisected.
fn tau_one_crossing(config: &ExperimentConfig) -> Option<f64> {
    if config.sweep == SweepVariable::Epsilon && config.a == config.b && config.a > 0.0 {
        let eps = 1.0 / (2.0 * config.a.sqrt());
        return (eps <= 0.5).then_some(eps);
    }
    let f = |v: f64| config.params_at(v).ok().map(|p| tau(&p) - 1.0);
    let mut sorted = config.grid.clone();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    for pair in sorted.windows(2) {
        let (mut x0, mut x1) = (pair[0], pair[1]);
        let (Some(f0), Some(f1)) = (f(x0), f(x1)) else { continue };
        if f0 == 0.0 {
            return Some(x0);
        }
        if f0.signum() == f1.signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (x0 + x1);
            match f(mid) {
                Some(fm) if fm.signum() == f0.signum() => x0 = mid,
                Some(_) => x1 = mid,
                None => return None,
            }
        }
        return Some(0.5 * (x0 + x1));
    }
    None
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:?}")).unwrap_or_default()
}

impl SweepResult {
    pub fn write_trials_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut out = std::io::BufWriter::new(out);
        writeln!(out, "{TRIALS_CSV_HEADER}")?;
        for r in &self.records {
            writeln!(
                out,
                "{},{:?},{:?},{},{},{},{}",
                r.seed,
                r.sweep_value,
                r.tau,
                fmt_opt(r.overlap),
                fmt_opt(r.runtime_ms),
                r.method,
                r.notes
            )?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_summary_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut out = std::io::BufWriter::new(out);
        writeln!(out, "{SUMMARY_CSV_HEADER}")?;
        for s in &self.summary {
            writeln!(
                out,
                "{:?},{:?},{:?},{:?},{},{}",
                s.sweep_value, s.tau, s.mean_overlap, s.stderr, s.trials, s.failures
            )?;
        }
        out.flush()?;
        Ok(())
    }

    /// Writes `config.txt`, `trials.csv`, `summary.csv`, `meta.txt`,
    /// `curve.dat` and `curve.svg` into `dir`.
    pub fn write_outputs(&self, config: &ExperimentConfig, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("config.txt"), config.serialize())?;
        self.write_trials_csv(File::create(dir.join("trials.csv"))?)?;
        self.write_summary_csv(File::create(dir.join("summary.csv"))?)?;
        let meta = format!(
            "sweep={}\nmethod={}\nn={}\ntrials={}\nseed={}\ntrial_seed_stride={}\ntau_one_crossing={}\n",
            config.sweep,
            config.method,
            config.n,
            config.trials,
            config.seed,
            TRIAL_SEED_STRIDE,
            self.tau_one.map(|v| format!("{v:?}")).unwrap_or_else(|| "none".into())
        );
        fs::write(dir.join("meta.txt"), meta)?;
        write_gnuplot_dat(&self.summary, self.tau_one, File::create(dir.join("curve.dat"))?)?;
        let x_label = match config.sweep {
            SweepVariable::Epsilon => "epsilon",
            SweepVariable::A => "a",
            SweepVariable::B => "b",
        };
        write_svg(&self.summary, self.tau_one, x_label, File::create(dir.join("curve.svg"))?)?;
        Ok(())
    }
}
