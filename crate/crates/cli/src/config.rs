//! Experiment configuration: a flat `key = value` document, one entry per line.
//!
//! Lists are comma separated; `#` starts a comment; `singularity` may repeat, every other key
//! may appear once. See the README for the full list of keys.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}`, expected json or csv")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularityEntry {
    pub t: f64,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub beta_re: f64,
    pub beta_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThinningEntry {
    pub boundaries: Vec<f64>,
    /// (interval index, s_k) pairs, intervals numbered from 1.
    pub removal: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Monomial coefficients a_0, a_1, ... of V.
    pub potential: Vec<f64>,
    /// Support [a, b] of the equilibrium measure of V when it is not [-1, 1].
    pub support: Option<[f64; 2]>,
    /// Chebyshev coefficients of W in the variable of [-1, 1].
    pub w: Vec<f64>,
    pub singularities: Vec<SingularityEntry>,
    pub n_list: Vec<usize>,
    pub precision_bits: Option<usize>,
    pub output_format: Format,
    pub seed: u64,
    pub mc_samples: Option<usize>,
    pub thinning: Option<ThinningEntry>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            potential: vec![0.0, 0.0, 2.0],
            support: None,
            w: Vec::new(),
            singularities: Vec::new(),
            n_list: Vec::new(),
            precision_bits: None,
            output_format: Format::Json,
            seed: 1,
            mc_samples: None,
            thinning: None,
        }
    }
}

/// Where each key came from, for error messages.
#[derive(Debug, Clone, Default)]
pub struct Origins {
    lines: HashMap<String, usize>,
}

impl Origins {
    pub fn set(&mut self, key: &str, line: usize) {
        self.lines.insert(key.to_string(), line);
    }

    pub fn override_flag(&mut self, key: &str) {
        self.lines.remove(key);
    }

    /// "line 4, key `potential`" or "key `potential`".
    pub fn describe(&self, key: &str) -> String {
        match self.lines.get(key) {
            Some(l) => format!("line {l}, key `{key}`"),
            None => format!("key `{key}`"),
        }
    }
}

struct At<'a> {
    line: usize,
    key: &'a str,
}

impl fmt::Display for At<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, key `{}`", self.line, self.key)
    }
}

fn items(value: &str) -> Vec<&str> {
    if value.trim().is_empty() {
        return Vec::new();
    }
    value.split(',').map(str::trim).collect()
}

fn floats(at: &At, value: &str) -> Result<Vec<f64>, CliError> {
    items(value)
        .into_iter()
        .map(|s| match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(CliError::invalid(format!("{at}: `{s}` is not a finite number"))),
        })
        .collect()
}

fn sizes(at: &At, value: &str) -> Result<Vec<usize>, CliError> {
    items(value)
        .into_iter()
        .map(|s| {
            s.parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| CliError::invalid(format!("{at}: `{s}` is not a positive integer")))
        })
        .collect()
}

fn scalar<T: std::str::FromStr>(at: &At, value: &str, what: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::invalid(format!("{at}: `{}` is not {what}", value.trim())))
}

/// Comma separated list of positive sizes, as given to `--n`.
pub fn parse_n_list(value: &str) -> Result<Vec<usize>, CliError> {
    sizes(&At { line: 0, key: "n" }, value)
        .map_err(|e| CliError::invalid(e.message.replacen("line 0, key `n`", "flag --n", 1)))
}

pub fn parse(text: &str) -> Result<(ExperimentConfig, Origins), CliError> {
    let mut cfg = ExperimentConfig::default();
    let mut origins = Origins::default();
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut boundaries: Option<Vec<f64>> = None;
    let mut removal: Option<Vec<(usize, f64)>> = None;
    let mut w_monomial = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(CliError::invalid(format!("line {line}: expected `key = value`")));
        };
        let key = key.trim();
        let at = At { line, key };
        if key != "singularity" {
            if let Some(prev) = seen.insert(key.to_string(), line) {
                return Err(CliError::invalid(format!("{at}: already set on line {prev}")));
            }
        }
        origins.set(key, line);
        match key {
            "potential" => cfg.potential = floats(&at, value)?,
            "support" => {
                let v = floats(&at, value)?;
                if v.len() != 2 {
                    return Err(CliError::invalid(format!("{at}: expected two endpoints a, b")));
                }
                cfg.support = Some([v[0], v[1]]);
            }
            "w" | "w_monomial" => {
                if seen.contains_key("w") && seen.contains_key("w_monomial") {
                    return Err(CliError::invalid(format!("{at}: give either w or w_monomial")));
                }
                let v = floats(&at, value)?;
                w_monomial = key == "w_monomial";
                cfg.w = v;
            }
            "singularity" => {
                let v = floats(&at, value)?;
                if v.len() != 5 {
                    return Err(CliError::invalid(format!(
                        "{at}: expected t, alpha_re, alpha_im, beta_re, beta_im"
                    )));
                }
                cfg.singularities.push(SingularityEntry {
                    t: v[0],
                    alpha_re: v[1],
                    alpha_im: v[2],
                    beta_re: v[3],
                    beta_im: v[4],
                });
            }
            "n" => cfg.n_list = sizes(&at, value)?,
            "precision" => cfg.precision_bits = Some(scalar(&at, value, "a bit count")?),
            "format" => cfg.output_format = scalar(&at, value, "json or csv")?,
            "seed" => cfg.seed = scalar(&at, value, "an unsigned integer")?,
            "mc_samples" => cfg.mc_samples = Some(scalar(&at, value, "a sample count")?),
            "thinning_boundaries" => boundaries = Some(floats(&at, value)?),
            "thinning_removal" => {
                let mut pairs = Vec::new();
                for item in items(value) {
                    let parsed = item.split_once(':').and_then(|(k, s)| {
                        Some((k.trim().parse::<usize>().ok()?, s.trim().parse::<f64>().ok()?))
                    });
                    match parsed {
                        Some(p) => pairs.push(p),
                        None => {
                            return Err(CliError::invalid(format!(
                                "{at}: `{item}` is not of the form interval:s"
                            )))
                        }
                    }
                }
                removal = Some(pairs);
            }
            other => return Err(CliError::invalid(format!("line {line}: unknown key `{other}`"))),
        }
    }
    if w_monomial {
        cfg.w = hankel_fh::specfun::ChebSeries::from_monomial(&cfg.w).coeffs;
        while cfg.w.last() == Some(&0.0) {
            cfg.w.pop();
        }
    }
    match (boundaries, removal) {
        (None, None) => {}
        (b, r) => {
            cfg.thinning = Some(ThinningEntry {
                boundaries: b.unwrap_or_default(),
                removal: r.unwrap_or_default(),
            })
        }
    }
    Ok((cfg, origins))
}
