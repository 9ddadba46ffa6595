use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::bisection::MAX_BISECTION_N;
use crate::error::{Error, Result};
use crate::model::{LabelAlphabet, ModelParams};

/// Largest `n` the SDP method is run at.
pub const SDP_MAX_N: usize = 500;

/// Fig. 1 `(name, a, b)` presets; each puts the `tau = 1` crossing inside
/// the default epsilon grid.
pub const FIG1_PRESETS: [(&str, f64, f64); 3] = [("fig1-a", 3.0, 3.0), ("fig1-b", 6.0, 6.0), ("fig1-c", 5.0, 2.0)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Spectral,
    Sdp,
    Bisect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightMode {
    Optimal,
    /// Log-likelihood weights scaled into `[-1, 1]`.
    Mle,
    Unit,
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamMode {
    Exact,
    Estimated,
}

/// Quantity varied over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Binary labels `r, b` with `mu(r) = 1/2 + eps`, `nu(r) = 1/2 - eps`.
    Epsilon,
    A,
    B,
}

macro_rules! keyword_enum {
    ($ty:ty, $what:literal, $($variant:path => $name:literal),+) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $name),+ })
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($variant),)+
                    other => Err(Error::Config(format!(concat!("unknown ", $what, " `{}`"), other))),
                }
            }
        }
    };
}

keyword_enum!(Method, "method", Method::Spectral => "spectral", Method::Sdp => "sdp", Method::Bisect => "bisect");
keyword_enum!(ParamMode, "parameter mode", ParamMode::Exact => "exact", ParamMode::Estimated => "estimated");
keyword_enum!(SweepVariable, "sweep variable", SweepVariable::Epsilon => "epsilon", SweepVariable::A => "a", SweepVariable::B => "b");

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightMode::Optimal => f.write_str("optimal"),
            WeightMode::Mle => f.write_str("mle"),
            WeightMode::Unit => f.write_str("unit"),
            WeightMode::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for WeightMode {
    type Err = Error;

    /// Keywords, `file:<path>`, or a bare path.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "optimal" => WeightMode::Optimal,
            "mle" => WeightMode::Mle,
            "unit" => WeightMode::Unit,
            "" => return Err(Error::Config("empty weight mode".into())),
            other => WeightMode::File(PathBuf::from(other.strip_prefix("file:").unwrap_or(other))),
        })
    }
}

/// One sweep: model, algorithm, grid, trials and output location.
///
/// Text form is flat `key = value` lines; `#` starts a comment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub a: f64,
    pub b: f64,
    /// Label tokens for `a`/`b` sweeps; empty means a single label.
    /// Epsilon sweeps always use the binary `r, b` alphabet.
    pub labels: Vec<String>,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    pub n: usize,
    pub method: Method,
    pub weights: WeightMode,
    pub sweep: SweepVariable,
    pub grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub param_mode: ParamMode,
    /// Degree trimming before the spectral step.
    pub trim: bool,
    /// Fill the `runtime_ms` column (makes output time-dependent).
    pub timing: bool,
    /// Output directory.
    pub out: PathBuf,
}

/// `0.05, 0.075, ..., 0.5`.
pub fn default_epsilon_grid() -> Vec<f64> {
    (0..=18).map(|i| (50 + 25 * i) as f64 / 1000.0).collect()
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            a: 3.0,
            b: 3.0,
            labels: Vec::new(),
            mu: Vec::new(),
            nu: Vec::new(),
            n: 1000,
            method: Method::Spectral,
            weights: WeightMode::Optimal,
            sweep: SweepVariable::Epsilon,
            grid: default_epsilon_grid(),
            trials: 20,
            seed: 1,
            param_mode: ParamMode::Exact,
            trim: true,
            timing: false,
            out: PathBuf::from("sweep-out"),
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Config(format!("`{key}`: cannot parse `{value}`")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value.split(',').map(|v| parse_num(key, v.trim())).collect()
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::Config(format!("`{key}` must be true or false, got `{value}`"))),
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

impl ExperimentConfig {
    /// Fig. 1 protocol at the given rates: `n = 1000`, spectral with `w*`,
    /// epsilon grid, no trimming.
    pub fn fig1(a: f64, b: f64) -> Self {
        Self { a, b, trim: false, ..Self::default() }
    }

    pub fn preset(name: &str) -> Result<Self> {
        FIG1_PRESETS
            .iter()
            .find(|(p, _, _)| *p == name)
            .map(|&(_, a, b)| Self::fig1(a, b))
            .ok_or_else(|| Error::Config(format!("unknown preset `{name}`")))
    }

    /// Sets one key from its text value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "a" => self.a = parse_num(key, value)?,
            "b" => self.b = parse_num(key, value)?,
            "labels" => {
                self.labels = if value.is_empty() { Vec::new() } else { value.split(',').map(|s| s.trim().to_string()).collect() }
            }
            "mu" => self.mu = parse_list(key, value)?,
            "nu" => self.nu = parse_list(key, value)?,
            "n" => self.n = parse_num(key, value)?,
            "method" => self.method = value.parse()?,
            "weights" => self.weights = value.parse()?,
            "sweep" => self.sweep = value.parse()?,
            "grid" => self.grid = parse_list(key, value)?,
            "trials" => self.trials = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "params" => self.param_mode = value.parse()?,
            "trim" => self.trim = parse_bool(key, value)?,
            "timing" => self.timing = parse_bool(key, value)?,
            "out" => self.out = PathBuf::from(value),
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Parses the text form; unset keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = std::collections::HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::parse(i + 1, "expected `key = value`"))?;
            let key = key.trim();
            if !seen.insert(key.to_string()) {
                return Err(Error::parse(i + 1, format!("duplicate key `{key}`")));
            }
            cfg.set(key, value.trim()).map_err(|e| Error::parse(i + 1, e.to_string()))?;
        }
        Ok(cfg)
    }

    pub fn serialize(&self) -> String {
        let mut s = String::from("# lsbm sweep configuration\n");
        let mut put = |k: &str, v: String| s.push_str(&format!("{k} = {v}\n"));
        put("a", format!("{:?}", self.a));
        put("b", format!("{:?}", self.b));
        if !self.labels.is_empty() {
            put("labels", self.labels.join(","));
        }
        if !self.mu.is_empty() {
            put("mu", join(&self.mu));
        }
        if !self.nu.is_empty() {
            put("nu", join(&self.nu));
        }
        put("n", self.n.to_string());
        put("method", self.method.to_string());
        put("weights", self.weights.to_string());
        put("sweep", self.sweep.to_string());
        put("grid", join(&self.grid));
        put("trials", self.trials.to_string());
        put("seed", self.seed.to_string());
        put("params", self.param_mode.to_string());
        put("trim", self.trim.to_string());
        put("timing", self.timing.to_string());
        put("out", self.out.display().to_string());
        s
    }

    /// Label alphabet shared by every grid point.
    pub fn alphabet(&self) -> Result<LabelAlphabet> {
        match self.sweep {
            SweepVariable::Epsilon => LabelAlphabet::new(["r", "b"]),
            _ if self.labels.is_empty() => Ok(LabelAlphabet::single()),
            _ => LabelAlphabet::new(self.labels.iter().cloned()),
        }
    }

    /// Model at one grid value.
    pub fn params_at(&self, value: f64) -> Result<ModelParams<f64>> {
        match self.sweep {
            SweepVariable::Epsilon => ModelParams::binary(self.a, self.b, value),
            SweepVariable::A | SweepVariable::B => {
                let (a, b) = if self.sweep == SweepVariable::A { (value, self.b) } else { (self.a, value) };
                if self.labels.is_empty() && self.mu.is_empty() && self.nu.is_empty() {
                    ModelParams::unlabeled(a, b)
                } else {
                    ModelParams::new(a, b, self.mu.clone(), self.nu.clone(), self.alphabet()?)
                }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.grid.is_empty() {
            return bad("grid is empty".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n < 2 {
            return bad("n must be at least 2".into());
        }
        if self.sweep == SweepVariable::Epsilon && !(self.labels.is_empty() && self.mu.is_empty() && self.nu.is_empty()) {
            return bad("epsilon sweeps use the binary r,b labels; remove labels, mu and nu".into());
        }
        match self.method {
            Method::Bisect if self.n > MAX_BISECTION_N => {
                return bad(format!("bisect requires n <= {MAX_BISECTION_N}, got {}", self.n));
            }
            Method::Sdp if self.n > SDP_MAX_N => return bad(format!("sdp supports n <= {SDP_MAX_N}, got {}", self.n)),
            _ => {}
        }
        for &v in &self.grid {
            if !v.is_finite() {
                return bad(format!("grid value {v} is not finite"));
            }
            let p = self.params_at(v).map_err(|e| Error::Config(format!("grid value {v}: {e}")))?;
            p.check_size(self.n).map_err(|e| Error::Config(format!("grid value {v}: {e}")))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_default_and_custom() {
        let d = ExperimentConfig::default();
        assert_eq!(ExperimentConfig::parse(&d.serialize()).unwrap(), d);
        let c = ExperimentConfig {
            a: 2.5,
            b: 0.1,
            labels: vec!["x".into(), "y".into()],
            mu: vec![0.3, 0.7],
            nu: vec![0.6, 0.4],
            sweep: SweepVariable::B,
            grid: vec![0.1, 0.2],
            weights: WeightMode::File(PathBuf::from("w.txt")),
            method: Method::Sdp,
            n: 40,
            param_mode: ParamMode::Estimated,
            timing: true,
            ..ExperimentConfig::default()
        };
        assert_eq!(ExperimentConfig::parse(&c.serialize()).unwrap(), c);
        c.validate().unwrap();
    }

    #[test]
    fn parse_comments_and_errors() {
        let c = ExperimentConfig::parse("# header\n n = 50 # inline\n\nmethod=bisect\n").unwrap();
        assert_eq!(c.n, 50);
        assert_eq!(c.method, Method::Bisect);
        assert!(c.validate().is_err());
        assert!(matches!(ExperimentConfig::parse("n = 5\nn = 6"), Err(Error::Parse { line: 2, .. })));
        assert!(ExperimentConfig::parse("colour = red").is_err());
        assert!(ExperimentConfig::parse("no equals sign").is_err());
        assert!(ExperimentConfig::parse("trim = yes").is_err());
    }

    #[test]
    fn weight_mode_forms() {
        assert_eq!("mle".parse::<WeightMode>().unwrap(), WeightMode::Mle);
        assert_eq!("file:a.w".parse::<WeightMode>().unwrap(), WeightMode::File("a.w".into()));
        assert_eq!("a.w".parse::<WeightMode>().unwrap(), WeightMode::File("a.w".into()));
    }

    #[test]
    fn validation() {
        let mut c = ExperimentConfig::default();
        c.validate().unwrap();
        c.grid = vec![0.6];
        assert!(c.validate().is_err());
        c.grid.clear();
        assert!(c.validate().is_err());
        let c = ExperimentConfig { labels: vec!["x".into()], ..ExperimentConfig::default() };
        assert!(c.validate().is_err());
        let c = ExperimentConfig { trials: 0, ..ExperimentConfig::default() };
        assert!(c.validate().is_err());
        assert!(ExperimentConfig::preset("fig1-a").unwrap().validate().is_ok());
        assert!(ExperimentConfig::preset("nope").is_err());
    }

    #[test]
    fn grid_values_are_exact_decimals() {
        let g = default_epsilon_grid();
        assert_eq!(g.len(), 19);
        assert_eq!(g[0], 0.05);
        assert_eq!(g[1], 0.075);
        assert_eq!(*g.last().unwrap(), 0.5);
    }
}
