use std::path::{Path, PathBuf};

use clap::ValueEnum;
use modlyap::cycint::ArcIntegrator;
use modlyap::modfun::{check_admissible, const_series, j_series, FourierSeries};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const QUAD_ORDER_RANGE: (usize, usize) = (4, 512);
pub const TRUNCATION_RANGE: (usize, usize) = (1, 200);
pub const T_GRID_RANGE: (usize, usize) = (8, 4096);
pub const LEVEL_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

/// Everything that determines the output of a run besides the subcommand itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// `j`, `one` or `file:<path>`.
    pub f: String,
    pub quad_order: usize,
    /// Truncation order `N` of the `j` expansion.
    pub truncation: usize,
    pub t_grid: usize,
    /// Overrides the level of level based commands.
    pub level: Option<usize>,
    pub out: Format,
    pub output: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            f: "j".into(),
            quad_order: 64,
            truncation: 24,
            t_grid: 64,
            level: None,
            out: Format::Text,
            output: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Replaces the fields present in a JSON object; absent fields keep their values.
    pub fn overlay(&self, text: &str) -> CliResult<Self> {
        let bad = |e: serde_json::Error| CliError::Usage(format!("config: {e}"));
        let patch: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
        let patch = patch
            .as_object()
            .ok_or_else(|| CliError::Usage("config must be a JSON object".into()))?;
        let mut merged = serde_json::to_value(self).map_err(bad)?;
        let fields = merged.as_object_mut().expect("config is an object");
        for (k, v) in patch {
            if !fields.contains_key(k) {
                return Err(CliError::Usage(format!("config: unknown field {k:?}")));
            }
            fields.insert(k.clone(), v.clone());
        }
        let cfg: RunConfig = serde_json::from_value(merged).map_err(bad)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn overlay_file(&self, path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        self.overlay(&text)
    }

    pub fn validate(&self) -> CliResult<()> {
        let within = |name: &str, v: usize, (lo, hi): (usize, usize)| {
            if v < lo || v > hi {
                Err(CliError::Usage(format!("{name} = {v} is outside {lo}..={hi}")))
            } else {
                Ok(())
            }
        };
        within("quad_order", self.quad_order, QUAD_ORDER_RANGE)?;
        within("truncation", self.truncation, TRUNCATION_RANGE)?;
        within("t_grid", self.t_grid, T_GRID_RANGE)?;
        if let Some(l) = self.level {
            within("level", l, (0, LEVEL_CAP))?;
        }
        FSelector::parse(&self.f)?;
        Ok(())
    }

    pub fn level_or(&self, default: usize) -> usize {
        self.level.unwrap_or(default)
    }

    pub fn series(&self) -> CliResult<FourierSeries<f64>> {
        FSelector::parse(&self.f)?.series(self.truncation)
    }

    pub fn integrator(&self) -> CliResult<ArcIntegrator<f64>> {
        Ok(ArcIntegrator::new(&self.series()?, self.quad_order))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FSelector {
    J,
    One,
    File(PathBuf),
}

impl FSelector {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "j" => Ok(FSelector::J),
            "one" | "1" => Ok(FSelector::One),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(FSelector::File(PathBuf::from(p))),
                _ => Err(CliError::Usage(format!("--f must be j, one or file:<path>, got {s:?}"))),
            },
        }
    }

    /// The series; a file series must also be admissible on the arc.
    pub fn series(&self, truncation: usize) -> CliResult<FourierSeries<f64>> {
        match self {
            FSelector::J => Ok(j_series(truncation)),
            FSelector::One => Ok(const_series()),
            FSelector::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
                let f = FourierSeries::parse(&text)?;
                let report = check_admissible(&f, 257, 1e-9);
                if !report.admissible {
                    return Err(CliError::Compute(format!(
                        "{} is not admissible: {}",
                        p.display(),
                        report.problems.join("; ")
                    )));
                }
                Ok(f)
            }
        }
    }
}

/// Sets up the global thread pool from `MODLYAP_THREADS`; unset or `0` means automatic.
pub fn init_threads() -> CliResult<()> {
    let n = match std::env::var("MODLYAP_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("MODLYAP_THREADS must be a non-negative integer, got {v:?}")))?,
        Err(_) => 0,
    };
    if n > 0 {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}
