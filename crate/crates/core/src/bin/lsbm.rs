//! Command-line front end: sampling, reconstruction, thresholds, cycle
//! tests, tree simulations and sweeps.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lsbm::cycles::{count_labeled_cycles, hypothesis_test};
use lsbm::harness::{
    reconstruct, run_sweep, with_worker_pool, ExperimentConfig, Method, ParamMode, SweepVariable, WeightMode,
};
use lsbm::model::io::{load_graph, load_sigma, save_graph, sigma_path, write_sigma};
use lsbm::model::{sample_labeled_er, sample_lsbm};
use lsbm::spectral::ParamSource;
use lsbm::tree::nonreconstruction_experiment;
use lsbm::weights::io::read_weights;
use lsbm::weights::{alpha_beta, condition_report, mle_weight, optimal_weight, overlap, tau};
use lsbm::{Error, LabelAlphabet, LabeledGraph, ModelParams, Result, WeightFunction};

#[derive(Parser)]
#[command(name = "lsbm", version, about = "Two-community labeled stochastic block model toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph and write it with its type sidecar.
    Gen(GenArgs),
    /// Recover the communities of a graph file.
    Reconstruct(ReconstructArgs),
    /// Print tau, w*, alpha, beta and the recovery conditions.
    Tau(TauArgs),
    /// Cycle-count test of LSBM against labeled Erdős–Rényi.
    CyclesTest(CyclesArgs),
    /// Root-reconstruction experiment on labeled Galton–Watson trees.
    TreeSim(TreeArgs),
    /// Overlap sweep over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Args, Clone, Default)]
struct ModelArgs {
    /// Rates as `a=<x>,b=<y>`.
    #[arg(long)]
    params: Option<String>,
    /// Comma-separated label tokens.
    #[arg(long)]
    labels: Option<String>,
    /// Within-community label distribution, comma-separated.
    #[arg(long)]
    mu: Option<String>,
    /// Across-community label distribution, comma-separated.
    #[arg(long)]
    nu: Option<String>,
    /// Binary labels r,b with mu(r) = 1/2 + eps and nu(r) = 1/2 - eps.
    #[arg(long, conflicts_with_all = ["labels", "mu", "nu"])]
    epsilon: Option<f64>,
}

fn parse_rates(spec: &str) -> Result<(Option<f64>, Option<f64>)> {
    let (mut a, mut b) = (None, None);
    for part in spec.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--params expects `a=..,b=..`, got `{spec}`")))?;
        let x: f64 = v.trim().parse().map_err(|_| Error::Config(format!("--params: cannot parse `{v}`")))?;
        match k.trim() {
            "a" => a = Some(x),
            "b" => b = Some(x),
            other => return Err(Error::Config(format!("--params: unknown key `{other}`"))),
        }
    }
    Ok((a, b))
}

fn parse_floats(flag: &str, s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| v.trim().parse().map_err(|_| Error::Config(format!("--{flag}: cannot parse `{v}`"))))
        .collect()
}

fn split_tokens(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).collect()
}

impl ModelArgs {
    fn is_set(&self) -> bool {
        self.params.is_some()
    }

    fn build(&self) -> Result<ModelParams> {
        let spec = self.params.as_deref().ok_or_else(|| Error::Config("--params a=..,b=.. is required".into()))?;
        let (a, b) = parse_rates(spec)?;
        let (a, b) = a.zip(b).ok_or_else(|| Error::Config("--params needs both a and b".into()))?;
        if let Some(eps) = self.epsilon {
            return ModelParams::binary(a, b, eps);
        }
        match (&self.labels, &self.mu, &self.nu) {
            (None, None, None) => ModelParams::unlabeled(a, b),
            (Some(l), Some(mu), Some(nu)) => ModelParams::new(
                a,
                b,
                parse_floats("mu", mu)?,
                parse_floats("nu", nu)?,
                LabelAlphabet::new(split_tokens(l))?,
            ),
            _ => Err(Error::Config("--labels, --mu and --nu must be given together".into())),
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample the labeled Erdős–Rényi null model instead (no sidecar).
    #[arg(long)]
    er: bool,
    /// Graph file; types go to `<out>.sigma`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Graph file.
    graph: PathBuf,
    #[command(flatten)]
    model: ModelArgs,
    /// True types for scoring; defaults to the `.sigma` sidecar if present.
    #[arg(long)]
    sigma: Option<PathBuf>,
    #[arg(long, default_value = "spectral")]
    method: String,
    /// optimal | mle | unit | <weights file>
    #[arg(long, default_value = "optimal")]
    weights: String,
    /// Estimate alpha and a+b from the graph.
    #[arg(long)]
    estimate_params: bool,
    /// Skip degree trimming.
    #[arg(long)]
    no_trim: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the estimated types here instead of printing them.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TauArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Weights for the condition report: optimal | mle | unit | <file>.
    #[arg(long, default_value = "optimal")]
    weights: String,
    /// Graph size for the MLE weights; omitted means the large-n limit.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct CyclesArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Test this graph file instead of sampling one.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Model to sample from when no graph is given: lsbm | er.
    #[arg(long, default_value = "lsbm")]
    sample: String,
    #[arg(long, default_value_t = 4000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cycle length.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Write the census CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TreeArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Configuration file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Start from a named preset (fig1-a, fig1-b, fig1-c).
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    estimate_params: bool,
    /// epsilon | a | b
    #[arg(long)]
    sweep: Option<String>,
    /// Comma-separated grid values.
    #[arg(long)]
    grid: Option<String>,
    /// Degree trimming on or off.
    #[arg(long)]
    trim: Option<bool>,
    /// Record wall-clock time per trial.
    #[arg(long)]
    timing: bool,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_weights(spec: &str, params: Option<&ModelParams>, alphabet: &LabelAlphabet, n: Option<usize>) -> Result<WeightFunction> {
    let need = || params.ok_or_else(|| Error::Config(format!("--weights {spec} needs --params")));
    match spec.parse::<WeightMode>()? {
        WeightMode::Optimal => Ok(optimal_weight(need()?)),
        WeightMode::Mle => Ok(mle_weight(need()?, n)?.normalized()),
        WeightMode::Unit => Ok(WeightFunction::constant(1.0, alphabet.len())),
        WeightMode::File(path) => read_weights(alphabet, File::open(path)?),
    }
}

fn fmt_weights(w: &WeightFunction, alphabet: &LabelAlphabet) -> String {
    alphabet.labels().map(|l| format!("{}={:?}", alphabet.token(l), w.get(l))).collect::<Vec<_>>().join(",")
}

fn gen(args: GenArgs) -> Result<()> {
    let params = args.model.build()?;
    let (g, sigma) = if args.er {
        (sample_labeled_er(&params, args.n, args.seed)?, None)
    } else {
        let (g, s) = sample_lsbm(&params, args.n, args.seed)?;
        (g, Some(s))
    };
    save_graph(&g, sigma.as_ref(), &args.out)?;
    println!("n={} m={} graph={}", g.n(), g.num_edges(), args.out.display());
    Ok(())
}

fn check_alphabet(g: &LabeledGraph, params: &ModelParams) -> Result<()> {
    if g.alphabet() != &params.alphabet {
        return Err(Error::Config(format!(
            "graph labels `{}` differ from model labels `{}`",
            g.alphabet(),
            params.alphabet
        )));
    }
    Ok(())
}

fn reconstruct_cmd(args: ReconstructArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let params = if args.model.is_set() { Some(args.model.build()?) } else { None };
    if let Some(p) = &params {
        check_alphabet(&g, p)?;
    }
    let method: Method = args.method.parse()?;
    let w = load_weights(&args.weights, params.as_ref(), g.alphabet(), Some(g.n()))?;
    let sources = if args.estimate_params {
        (ParamSource::Estimate, ParamSource::Estimate)
    } else {
        let p = params.as_ref().ok_or_else(|| Error::Config("exact parameters need --params (or --estimate-params)".into()))?;
        (ParamSource::Exact(alpha_beta(p, &w)?.0), ParamSource::Exact(p.a + p.b))
    };
    let run = reconstruct(&g, &w, method, sources, !args.no_trim, args.seed)?;

    let sidecar = sigma_path(&args.graph);
    let truth = match &args.sigma {
        Some(p) => Some(load_sigma(p)?),
        None if sidecar.exists() => Some(load_sigma(&sidecar)?),
        None => None,
    };
    let mut out = std::io::stdout().lock();
    writeln!(out, "method={method}")?;
    writeln!(out, "n={} m={}", g.n(), g.num_edges())?;
    writeln!(out, "weights={}", fmt_weights(&w, g.alphabet()))?;
    writeln!(out, "diagnostics={}", run.notes)?;
    if let Some(t) = &truth {
        writeln!(out, "overlap={:?}", overlap(t, &run.assignment)?)?;
    }
    match &args.out {
        Some(path) => {
            write_sigma(&run.assignment, File::create(path)?)?;
            writeln!(out, "assignment={}", path.display())?;
        }
        None => {
            writeln!(out, "assignment:")?;
            write_sigma(&run.assignment, &mut out)?;
        }
    }
    Ok(())
}

fn tau_cmd(args: TauArgs) -> Result<()> {
    let params = args.model.build()?;
    let wstar = optimal_weight(&params);
    let w = load_weights(&args.weights, Some(&params), &params.alphabet, args.n)?;
    let (alpha, beta) = alpha_beta(&params, &w)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "tau={}", tau(&params))?;
    writeln!(out, "w*={}", fmt_weights(&wstar, &params.alphabet))?;
    writeln!(out, "weights={}", fmt_weights(&w, &params.alphabet))?;
    writeln!(out, "alpha={alpha}")?;
    writeln!(out, "beta={beta}")?;
    match condition_report(&params, &w) {
        Ok(r) => {
            writeln!(out, "statistic={}", r.statistic)?;
            writeln!(out, "within_energy={}", r.within_energy)?;
            writeln!(out, "across_energy={}", r.across_energy)?;
            writeln!(out, "bisection_condition={}", r.bisection)?;
            writeln!(out, "bisection_technical={}", r.bisection_technical)?;
            writeln!(out, "sdp_condition={}", r.sdp)?;
            writeln!(out, "sdp_technical={}", r.sdp_technical)?;
            writeln!(out, "spectral_dense_condition={}", r.spectral_dense)?;
        }
        Err(e) => writeln!(out, "statistic=undefined ({e})")?,
    }
    Ok(())
}

fn cycles_cmd(args: CyclesArgs) -> Result<()> {
    let params = args.model.build()?;
    let g = match &args.graph {
        Some(path) => {
            let g = load_graph(path)?;
            check_alphabet(&g, &params)?;
            g
        }
        None => match args.sample.as_str() {
            "lsbm" => sample_lsbm(&params, args.n, args.seed)?.0,
            "er" => sample_labeled_er(&params, args.n, args.seed)?,
            other => return Err(Error::Config(format!("--sample must be lsbm or er, got `{other}`"))),
        },
    };
    let report = hypothesis_test(&g, &params, args.k)?;
    if let Some(path) = &args.out {
        count_labeled_cycles(&g, args.k)?.write_csv(g.alphabet(), File::create(path)?)?;
    }
    let mut out = std::io::stdout().lock();
    writeln!(out, "k={}", report.k)?;
    writeln!(out, "tau={:?}", report.tau)?;
    writeln!(out, "statistic={:?}", report.statistic)?;
    writeln!(out, "threshold={:?}", report.threshold)?;
    writeln!(out, "rho={:?}", report.rho)?;
    writeln!(out, "mean_er={:?}", report.mean_er)?;
    writeln!(out, "mean_lsbm={:?}", report.mean_lsbm)?;
    writeln!(out, "margin={:?}", report.statistic - report.threshold)?;
    writeln!(out, "total_lambda={:?}", report.total_lambda)?;
    if report.low_power {
        writeln!(out, "warning=low power: expected cycle count below 5")?;
    }
    writeln!(out, "verdict={}", report.verdict)?;
    Ok(())
}

fn tree_cmd(args: TreeArgs) -> Result<()> {
    let params = args.model.build()?;
    let curve = with_worker_pool(|| nonreconstruction_experiment(&params, args.depth, args.trials, args.seed))??;
    match &args.out {
        Some(path) => curve.write_csv(File::create(path)?)?,
        None => curve.write_csv(std::io::stdout().lock())?,
    }
    Ok(())
}

fn sweep_config(args: &SweepArgs) -> Result<ExperimentConfig> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), _) => ExperimentConfig::parse(&std::fs::read_to_string(path)?)?,
        (None, Some(name)) => ExperimentConfig::preset(name)?,
        (None, None) => ExperimentConfig::default(),
    };
    if args.model.epsilon.is_some() {
        return Err(Error::Config("sweep takes epsilon values from --grid".into()));
    }
    if let Some(spec) = &args.model.params {
        let (a, b) = parse_rates(spec)?;
        cfg.a = a.unwrap_or(cfg.a);
        cfg.b = b.unwrap_or(cfg.b);
    }
    if let Some(l) = &args.model.labels {
        cfg.labels = split_tokens(l);
    }
    if let Some(mu) = &args.model.mu {
        cfg.mu = parse_floats("mu", mu)?;
    }
    if let Some(nu) = &args.model.nu {
        cfg.nu = parse_floats("nu", nu)?;
    }
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(m) = &args.method {
        cfg.method = m.parse()?;
    }
    if let Some(w) = &args.weights {
        cfg.weights = w.parse()?;
    }
    if args.estimate_params {
        cfg.param_mode = ParamMode::Estimated;
    }
    if let Some(s) = &args.sweep {
        cfg.sweep = s.parse::<SweepVariable>()?;
    }
    if let Some(g) = &args.grid {
        cfg.grid = parse_floats("grid", g)?;
    }
    if let Some(t) = args.trim {
        cfg.trim = t;
    }
    if args.timing {
        cfg.timing = true;
    }
    if let Some(o) = &args.out {
        cfg.out = o.clone();
    }
    Ok(cfg)
}

fn sweep_cmd(args: SweepArgs) -> Result<()> {
    let cfg = sweep_config(&args)?;
    let result = run_sweep(&cfg)?;
    result.write_outputs(&cfg, Path::new(&cfg.out))?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{:>12} {:>10} {:>10} {:>10} {:>7}", cfg.sweep, "tau", "mean_Q", "stderr", "failed")?;
    for s in &result.summary {
        writeln!(
            out,
            "{:>12.4} {:>10.4} {:>10.4} {:>10.4} {:>7}",
            s.sweep_value, s.tau, s.mean_overlap, s.stderr, s.failures
        )?;
    }
    match result.tau_one {
        Some(x) => writeln!(out, "tau=1 at {} = {x:.4}", cfg.sweep)?,
        None => writeln!(out, "tau=1 not crossed on this grid")?,
    }
    writeln!(out, "wrote {}", cfg.out.display())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Reconstruct(a) => reconstruct_cmd(a),
        Command::Tau(a) => tau_cmd(a),
        Command::CyclesTest(a) => cycles_cmd(a),
        Command::TreeSim(a) => tree_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
