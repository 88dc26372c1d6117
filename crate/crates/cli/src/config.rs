//! Run configuration: a flat key-value config file plus flag overrides
//! (flags win), validated into a [`RunConfig`].

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sgflow_core::Adherence;

use crate::CliError;

/// Tolerance on the primary-length identity when lambda1 is given redundantly.
pub const LAMBDA_IDENTITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Poiseuille,
    Couette,
}

impl Flow {
    pub fn as_str(self) -> &'static str {
        match self {
            Flow::Poiseuille => "poiseuille",
            Flow::Couette => "couette",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutFormat {
    Csv,
    Json,
}

/// Raw option bag: config file entries overlaid by command-line flags.
#[derive(Debug, Default, Clone)]
pub struct RawConfig {
    pub entries: BTreeMap<String, String>,
}

impl RawConfig {
    /// Parse a flat `key = value` file; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!(
                    "{}:{}: expected `key = value`, got `{raw}`",
                    path.display(),
                    lineno + 1
                ))
            })?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn set(&mut self, key: &str, value: String) {
        self.entries.insert(key.to_string(), value);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    pub fn parse_f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(s) => s
                .parse::<f64>()
                .map(Some)
                .map_err(|_| CliError::Config(format!("{key}: `{s}` is not a number"))),
        }
    }

    pub fn parse_usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(s) => s
                .parse::<usize>()
                .map(Some)
                .map_err(|_| CliError::Config(format!("{key}: `{s}` is not a count"))),
        }
    }
}

/// Fully validated run configuration for the flow commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub flow: Flow,
    pub bc: Adherence,
    /// `[lambda0, lambda1, lambda2, lambda3, lambda4]`.
    pub lambdas: [f64; 5],
    pub grid_n: usize,
    pub format: OutFormat,
    pub sweep: Option<Vec<f64>>,
    pub out_dir: PathBuf,
    pub jobs: usize,
}

impl RunConfig {
    pub fn from_raw(raw: &RawConfig) -> Result<Self, CliError> {
        let flow = match raw.get("flow") {
            Some("poiseuille") => Flow::Poiseuille,
            Some("couette") => Flow::Couette,
            Some(other) => {
                return Err(CliError::Config(format!(
                    "flow must be `poiseuille` or `couette`, got `{other}`"
                )))
            }
            None => return Err(CliError::Config("flow is required".into())),
        };
        let bc = match raw.get("bc").unwrap_or("strong") {
            "strong" => Adherence::Strong,
            "weak" => Adherence::Weak,
            other => {
                return Err(CliError::Config(format!(
                    "bc must be `strong` or `weak`, got `{other}`"
                )))
            }
        };
        let has_sweep = raw.get("sweep").is_some();
        let lambdas = resolve_lambdas(raw, bc, has_sweep)?;
        let grid_n = raw.parse_usize("grid_n")?.unwrap_or(801);
        if grid_n < 2 {
            return Err(CliError::Config(format!("grid_n = {grid_n} is too small")));
        }
        let format = match raw.get("format").unwrap_or("csv") {
            "csv" => OutFormat::Csv,
            "json" => OutFormat::Json,
            other => {
                return Err(CliError::Config(format!(
                    "format must be `csv` or `json`, got `{other}`"
                )))
            }
        };
        let sweep = match raw.get("sweep") {
            None => None,
            Some(list) => {
                let mut values = Vec::new();
                for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let v: f64 = item.parse().map_err(|_| {
                        CliError::Config(format!("sweep entry `{item}` is not a number"))
                    })?;
                    if !(v.is_finite() && v > 0.0) {
                        return Err(CliError::Config(format!(
                            "sweep entries must be positive, got {v}"
                        )));
                    }
                    values.push(v);
                }
                if values.is_empty() {
                    return Err(CliError::Config("sweep list is empty".into()));
                }
                Some(values)
            }
        };
        let out_dir = raw
            .get("out_dir")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("SGFLOW_OUT_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        let jobs = raw.parse_usize("jobs")?.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        });
        if jobs == 0 {
            return Err(CliError::Config("jobs must be at least 1".into()));
        }
        Ok(Self {
            flow,
            bc,
            lambdas,
            grid_n,
            format,
            sweep,
            out_dir,
            jobs,
        })
    }

    /// Lambda set for one sweep entry: under weak adherence the value is
    /// completed to the single-length set `lambda2 = lambda3 = 0`,
    /// `lambda4 = lambda1/sqrt(2)`.
    pub fn sweep_lambdas(&self, lambda1: f64) -> [f64; 5] {
        let mut lam = self.lambdas;
        lam[1] = lambda1;
        if self.bc == Adherence::Weak {
            lam[2] = 0.0;
            lam[3] = 0.0;
            lam[4] = lambda1 / std::f64::consts::SQRT_2;
        }
        lam
    }
}

/// Combine the lambda entries into a consistent `[lambda0..lambda4]`.
///
/// `lambda1` may be given directly, derived from `lambda2..lambda4`, or both
/// (checked against the primary-length identity). Weak adherence with only
/// `lambda1` is completed to the single-length set. In sweep mode the swept
/// entries supply `lambda1`, so the base value may be absent.
fn resolve_lambdas(raw: &RawConfig, bc: Adherence, has_sweep: bool) -> Result<[f64; 5], CliError> {
    let l0 = raw.parse_f64("lambda0")?.unwrap_or(0.0);
    let l1_given = raw.parse_f64("lambda1")?;
    let l2 = raw.parse_f64("lambda2")?;
    let l3 = raw.parse_f64("lambda3")?;
    let l4 = raw.parse_f64("lambda4")?;
    for (name, v) in [("lambda0", Some(l0)), ("lambda1", l1_given), ("lambda2", l2), ("lambda3", l3), ("lambda4", l4)] {
        if let Some(v) = v {
            if !v.is_finite() || v < 0.0 {
                return Err(CliError::Config(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
    }
    let tail_given = l2.is_some() || l3.is_some() || l4.is_some();
    let (l1, l2, l3, l4) = if tail_given {
        let l2 = l2.unwrap_or(0.0);
        let l3 = l3.unwrap_or(0.0);
        let l4 = l4.unwrap_or(0.0);
        let derived = (0.75 * l2 * l2 + 0.5 * l3 * l3 + 2.0 * l4 * l4).sqrt();
        if let Some(l1) = l1_given {
            if (l1 * l1 - derived * derived).abs() > LAMBDA_IDENTITY_TOL {
                return Err(CliError::Config(format!(
                    "lambda1 = {l1} inconsistent with lambda2..4 (expected {derived})"
                )));
            }
        }
        (derived, l2, l3, l4)
    } else {
        let l1 = l1_given.unwrap_or(0.0);
        match bc {
            // single-length completion keeps the primary-length identity
            Adherence::Weak => (l1, 0.0, 0.0, l1 / std::f64::consts::SQRT_2),
            Adherence::Strong => (l1, 0.0, 0.0, 0.0),
        }
    };
    if bc == Adherence::Weak && l1 == 0.0 && !has_sweep {
        return Err(CliError::Config(
            "weak adherence requires a positive lambda1".into(),
        ));
    }
    Ok([l0, l1, l2, l3, l4])
}
