//! Experiment configuration files.
//!
//! A config is a flat TOML table. Every sweep axis accepts either a single
//! value or a list; at most one axis may hold more than one value.
//!
//! | key | default | meaning |
//! |---|---|---|
//! | `mode` | `"synthetic"` | `"synthetic"` or `"real"` |
//! | `algorithm` | `"A2"` | `naive`, `A1`, `A2`, `A3`, `community-rounds` (axis) |
//! | `n` | `10000` | vertex count (axis, synthetic only) |
//! | `k` | `20` | community count (axis, synthetic only) |
//! | `b` | `2.0` | inter-community coefficient (axis) |
//! | `a` | unset | intra-community coefficient (axis); unset means `a_over_b * b` |
//! | `a_over_b` | `2.0` | ratio used when `a` is unset |
//! | `s` | `0.5` | edge sampling probability (axis) |
//! | `phi` | `10` | seed count (axis); per community for `community-rounds` |
//! | `fraction_known` | `1.0` | fraction of vertices with known labels (axis) |
//! | `r` | `2` | threshold for `community-rounds` (axis) |
//! | `r_c`, `r_m` | `1`, `2` | A2 thresholds (axes) |
//! | `a2_constrained` | `false` | restrict A2 to same-community pairs |
//! | `trials` | `10` | trials per parameter combination |
//! | `base_seed` | `1` | root of all randomness |
//! | `percolation_success_fraction` | `0.5` | "percolated" means matched >= this * giant size |
//! | `phi_max` | `n` | upper end of the threshold search |
//! | `record_timing` | `false` | write wall-clock runtimes (breaks byte-identical reruns) |
//! | `output` | stdout | CSV destination |
//! | `edges`, `labels` | unset | input files for `mode = "real"` |

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::BenchError;
use crate::pipeline::{Algorithm, TrialParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Synthetic,
    Real,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Synthetic => "synthetic",
            Mode::Real => "real",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: Option<Mode>,
    algorithm: Option<OneOrMany<Algorithm>>,
    n: Option<OneOrMany<usize>>,
    k: Option<OneOrMany<usize>>,
    a: Option<OneOrMany<f64>>,
    a_over_b: Option<f64>,
    b: Option<OneOrMany<f64>>,
    s: Option<OneOrMany<f64>>,
    phi: Option<OneOrMany<usize>>,
    fraction_known: Option<OneOrMany<f64>>,
    r: Option<OneOrMany<u32>>,
    r_c: Option<OneOrMany<u32>>,
    r_m: Option<OneOrMany<u32>>,
    a2_constrained: Option<bool>,
    trials: Option<usize>,
    base_seed: Option<u64>,
    percolation_success_fraction: Option<f64>,
    phi_max: Option<usize>,
    record_timing: Option<bool>,
    output: Option<PathBuf>,
    edges: Option<PathBuf>,
    labels: Option<PathBuf>,
}

/// Fully resolved experiment configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub algorithm: Vec<Algorithm>,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    /// Empty when `a` follows `a_over_b * b`.
    pub a: Vec<f64>,
    pub a_over_b: f64,
    pub b: Vec<f64>,
    pub s: Vec<f64>,
    pub phi: Vec<usize>,
    pub fraction_known: Vec<f64>,
    pub r: Vec<u32>,
    pub r_c: Vec<u32>,
    pub r_m: Vec<u32>,
    pub a2_constrained: bool,
    pub trials: usize,
    pub base_seed: u64,
    pub percolation_success_fraction: f64,
    pub phi_max: Option<usize>,
    pub record_timing: bool,
    pub output: Option<PathBuf>,
    pub edges: Option<PathBuf>,
    pub labels: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: Mode::Synthetic,
            algorithm: vec![Algorithm::A2],
            n: vec![10_000],
            k: vec![20],
            a: Vec::new(),
            a_over_b: 2.0,
            b: vec![2.0],
            s: vec![0.5],
            phi: vec![10],
            fraction_known: vec![1.0],
            r: vec![2],
            r_c: vec![1],
            r_m: vec![2],
            a2_constrained: false,
            trials: 10,
            base_seed: 1,
            percolation_success_fraction: 0.5,
            phi_max: None,
            record_timing: false,
            output: None,
            edges: None,
            labels: None,
        }
    }
}

fn config_err(msg: impl Into<String>) -> BenchError {
    BenchError::Config(msg.into())
}

fn fmt_list<T: std::fmt::Display>(values: &[T]) -> String {
    let items: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    if items.len() == 1 {
        items[0].clone()
    } else {
        format!("[{}]", items.join(", "))
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<ExperimentConfig, BenchError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| config_err(e.to_string()))?;
        let d = ExperimentConfig::default();
        let pick = |v: Option<OneOrMany<_>>, dflt| v.map(OneOrMany::into_vec).unwrap_or(dflt);
        let cfg = ExperimentConfig {
            mode: raw.mode.unwrap_or(d.mode),
            algorithm: raw.algorithm.map(OneOrMany::into_vec).unwrap_or(d.algorithm),
            n: pick(raw.n, d.n),
            k: pick(raw.k, d.k),
            a: raw.a.map(OneOrMany::into_vec).unwrap_or_default(),
            a_over_b: raw.a_over_b.unwrap_or(d.a_over_b),
            b: raw.b.map(OneOrMany::into_vec).unwrap_or(d.b),
            s: raw.s.map(OneOrMany::into_vec).unwrap_or(d.s),
            phi: pick(raw.phi, d.phi),
            fraction_known: raw.fraction_known.map(OneOrMany::into_vec).unwrap_or(d.fraction_known),
            r: raw.r.map(OneOrMany::into_vec).unwrap_or(d.r),
            r_c: raw.r_c.map(OneOrMany::into_vec).unwrap_or(d.r_c),
            r_m: raw.r_m.map(OneOrMany::into_vec).unwrap_or(d.r_m),
            a2_constrained: raw.a2_constrained.unwrap_or(d.a2_constrained),
            trials: raw.trials.unwrap_or(d.trials),
            base_seed: raw.base_seed.unwrap_or(d.base_seed),
            percolation_success_fraction: raw
                .percolation_success_fraction
                .unwrap_or(d.percolation_success_fraction),
            phi_max: raw.phi_max,
            record_timing: raw.record_timing.unwrap_or(d.record_timing),
            output: raw.output,
            edges: raw.edges,
            labels: raw.labels,
        };
        if raw.a_over_b.is_some() && !cfg.a.is_empty() {
            return Err(config_err("set either `a` or `a_over_b`, not both"));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file. Relative `output`, `edges` and `labels` paths
    /// are resolved against the file's directory.
    pub fn load(path: &Path) -> Result<ExperimentConfig, BenchError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BenchError::Io(format!("{}: {e}", path.display())))?;
        let mut cfg = ExperimentConfig::from_toml_str(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.output, &mut cfg.edges, &mut cfg.labels].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    fn axis_lengths(&self) -> [(&'static str, usize); 11] {
        [
            ("algorithm", self.algorithm.len()),
            ("n", self.n.len()),
            ("k", self.k.len()),
            ("a", self.a.len()),
            ("b", self.b.len()),
            ("s", self.s.len()),
            ("phi", self.phi.len()),
            ("fraction_known", self.fraction_known.len()),
            ("r", self.r.len()),
            ("r_c", self.r_c.len()),
            ("r_m", self.r_m.len()),
        ]
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let lengths = self.axis_lengths();
        if let Some((name, _)) = lengths.iter().find(|(name, len)| *len == 0 && *name != "a") {
            return Err(config_err(format!("axis `{name}` has no values")));
        }
        let varying: Vec<&str> =
            lengths.iter().filter(|(_, len)| *len > 1).map(|(name, _)| *name).collect();
        if varying.len() > 1 {
            return Err(config_err(format!(
                "only one axis may vary per sweep, found: {}",
                varying.join(", ")
            )));
        }
        if self.trials == 0 {
            return Err(config_err("trials must be at least 1"));
        }
        if self.mode == Mode::Real && self.edges.is_none() {
            return Err(config_err("mode = \"real\" needs `edges`"));
        }
        if self.mode == Mode::Real && self.labels.is_none() {
            return Err(config_err("mode = \"real\" needs `labels`"));
        }
        let bad = |what: &str, v: f64| config_err(format!("{what} out of range: {v}"));
        for &s in &self.s {
            if !(s > 0.0 && s <= 1.0) {
                return Err(bad("s", s));
            }
        }
        for &x in &self.fraction_known {
            if !(0.0..=1.0).contains(&x) {
                return Err(bad("fraction_known", x));
            }
        }
        for &x in self.a.iter().chain(&self.b) {
            if !(x.is_finite() && x >= 0.0) {
                return Err(bad("a/b", x));
            }
        }
        if !(self.a_over_b.is_finite() && self.a_over_b > 0.0) {
            return Err(bad("a_over_b", self.a_over_b));
        }
        let f = self.percolation_success_fraction;
        if !(f > 0.0 && f <= 1.0) {
            return Err(bad("percolation_success_fraction", f));
        }
        for &r in &self.r {
            if r == 0 {
                return Err(config_err("r must be at least 1"));
            }
        }
        for &rc in &self.r_c {
            for &rm in &self.r_m {
                if rc == 0 || rc >= rm {
                    return Err(config_err(format!("need 1 <= r_c < r_m, got {rc}, {rm}")));
                }
            }
        }
        if self.mode == Mode::Synthetic {
            for &n in &self.n {
                for &k in &self.k {
                    if k == 0 || k > n {
                        return Err(config_err(format!("need 1 <= k <= n, got k={k}, n={n}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every parameter combination, in axis order. For `real` mode `n`
    /// and `k` are placeholders, overwritten from the data.
    pub fn combinations(&self) -> Vec<TrialParams> {
        let mut out = Vec::new();
        let a_values: Vec<Option<f64>> = if self.a.is_empty() {
            vec![None]
        } else {
            self.a.iter().copied().map(Some).collect()
        };
        for &algorithm in &self.algorithm {
            for &n in &self.n {
                for &k in &self.k {
                    for &a in &a_values {
                        for &b in &self.b {
                            for &s in &self.s {
                                for &phi in &self.phi {
                                    for &fraction_known in &self.fraction_known {
                                        for &r in &self.r {
                                            for &r_c in &self.r_c {
                                                for &r_m in &self.r_m {
                                                    out.push(TrialParams {
                                                        algorithm,
                                                        n,
                                                        a: a.unwrap_or(self.a_over_b * b),
                                                        b,
                                                        k,
                                                        s,
                                                        phi,
                                                        fraction_known,
                                                        r,
                                                        r_c,
                                                        r_m,
                                                        a2_constrained: self.a2_constrained,
                                                        percolation_success_fraction: self
                                                            .percolation_success_fraction,
                                                    });
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The resolved config as `key = value` lines, for CSV comments.
    pub fn describe(&self) -> Vec<String> {
        let algorithms: Vec<&str> = self.algorithm.iter().map(|a| a.name()).collect();
        let mut lines = vec![
            format!("mode = {}", self.mode.name()),
            format!("algorithm = {}", fmt_list(&algorithms)),
        ];
        if self.mode == Mode::Synthetic {
            lines.push(format!("n = {}", fmt_list(&self.n)));
            lines.push(format!("k = {}", fmt_list(&self.k)));
            if self.a.is_empty() {
                lines.push(format!("a = {} * b", self.a_over_b));
            } else {
                lines.push(format!("a = {}", fmt_list(&self.a)));
            }
            lines.push(format!("b = {}", fmt_list(&self.b)));
        }
        lines.extend([
            format!("s = {}", fmt_list(&self.s)),
            format!("phi = {}", fmt_list(&self.phi)),
            format!("fraction_known = {}", fmt_list(&self.fraction_known)),
            format!("r = {}", fmt_list(&self.r)),
            format!("r_c = {}", fmt_list(&self.r_c)),
            format!("r_m = {}", fmt_list(&self.r_m)),
            format!("a2_constrained = {}", self.a2_constrained),
            format!("trials = {}", self.trials),
            format!("base_seed = {}", self.base_seed),
            format!("percolation_success_fraction = {}", self.percolation_success_fraction),
            format!("record_timing = {}", self.record_timing),
        ]);
        if let Some(m) = self.phi_max {
            lines.push(format!("phi_max = {m}"));
        }
        for (key, path) in [("edges", &self.edges), ("labels", &self.labels)] {
            if let Some(p) = path {
                let mut line = String::new();
                let _ = write!(line, "{key} = {}", p.display());
                lines.push(line);
            }
        }
        lines
    }
}
