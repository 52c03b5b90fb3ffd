//! `key = value` configuration files and their merge with command-line
//! flags. Keys mirror the long flag names (`J`, `delta`, `gamma`, `gamma1`,
//! `gamma2`, `B`, `T`, `q`, `t-final`, `dt`, `mode`, `grid`, `out`,
//! `renormalize`, `workers`). `grid` may repeat, one line per axis.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use nhxy_core::dynamics::EvolutionConfig;
use nhxy_core::model::{FieldParams, ModelParams};

use crate::error::ConfigError;
use crate::sweep::{Axis, Fixed, Mode};

pub const DEFAULT_J: f64 = 1.0;
pub const DEFAULT_DELTA: f64 = 1.0;
pub const DEFAULT_T: f64 = 0.1;
pub const DEFAULT_T_FINAL: f64 = 1.0;
pub const DEFAULT_DT: f64 = 1e-3;

/// Every field is optional so that a file and the flags can be layered.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    pub j: Option<f64>,
    pub delta: Option<f64>,
    pub gamma: Option<f64>,
    pub gamma1: Option<f64>,
    pub gamma2: Option<f64>,
    pub b: Option<f64>,
    pub t: Option<f64>,
    pub q: Option<f64>,
    pub t_final: Option<f64>,
    pub dt: Option<f64>,
    pub mode: Option<Mode>,
    pub grid: Vec<Axis>,
    pub out: Option<PathBuf>,
    pub renormalize: Option<bool>,
    pub workers: Option<usize>,
}

fn parse_value<T: FromStr>(location: &str, key: &str, raw: &str) -> Result<T, ConfigError> {
    raw.parse().map_err(|_| ConfigError::Parse {
        location: location.to_string(),
        message: format!("cannot parse {key} value {raw:?}"),
    })
}

fn parse_bool(location: &str, raw: &str) -> Result<bool, ConfigError> {
    match raw {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(ConfigError::Parse {
            location: location.to_string(),
            message: format!("expected true or false, got {raw:?}"),
        }),
    }
}

impl Settings {
    pub fn parse(text: &str, source: &str) -> Result<Self, ConfigError> {
        let mut s = Settings::default();
        for (n, line) in text.lines().enumerate() {
            let location = format!("{source}:{}", n + 1);
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Parse {
                location: location.clone(),
                message: format!("expected `key = value`, got {line:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let loc = location.as_str();
            match key {
                "J" => s.j = Some(parse_value(loc, key, value)?),
                "delta" => s.delta = Some(parse_value(loc, key, value)?),
                "gamma" => s.gamma = Some(parse_value(loc, key, value)?),
                "gamma1" => s.gamma1 = Some(parse_value(loc, key, value)?),
                "gamma2" => s.gamma2 = Some(parse_value(loc, key, value)?),
                "B" => s.b = Some(parse_value(loc, key, value)?),
                "T" => s.t = Some(parse_value(loc, key, value)?),
                "q" => s.q = Some(parse_value(loc, key, value)?),
                "t-final" => s.t_final = Some(parse_value(loc, key, value)?),
                "dt" => s.dt = Some(parse_value(loc, key, value)?),
                "mode" => {
                    s.mode = Some(value.parse().map_err(|message| ConfigError::Parse {
                        location: location.clone(),
                        message,
                    })?)
                }
                "grid" => s
                    .grid
                    .push(value.parse().map_err(|message| ConfigError::Parse {
                        location: location.clone(),
                        message,
                    })?),
                "out" => s.out = Some(PathBuf::from(value)),
                "renormalize" => s.renormalize = Some(parse_bool(loc, value)?),
                "workers" => s.workers = Some(parse_value(loc, key, value)?),
                _ => {
                    return Err(ConfigError::Parse {
                        location,
                        message: format!("unknown key {key:?}"),
                    })
                }
            }
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Values set in `flags` win. A non-empty flag grid replaces the file grid.
    pub fn overlay(self, flags: Settings) -> Settings {
        Settings {
            j: flags.j.or(self.j),
            delta: flags.delta.or(self.delta),
            gamma: flags.gamma.or(self.gamma),
            gamma1: flags.gamma1.or(self.gamma1),
            gamma2: flags.gamma2.or(self.gamma2),
            b: flags.b.or(self.b),
            t: flags.t.or(self.t),
            q: flags.q.or(self.q),
            t_final: flags.t_final.or(self.t_final),
            dt: flags.dt.or(self.dt),
            mode: flags.mode.or(self.mode),
            grid: if flags.grid.is_empty() {
                self.grid
            } else {
                flags.grid
            },
            out: flags.out.or(self.out),
            renormalize: flags.renormalize.or(self.renormalize),
            workers: flags.workers.or(self.workers),
        }
    }

    /// Fills in defaults and checks every invariant of the fixed parameters.
    pub fn resolve(&self) -> Result<Fixed, ConfigError> {
        let invalid = |e: nhxy_core::Error| ConfigError::Validation(e.to_string());
        if self.gamma.is_some() && (self.gamma1.is_some() || self.gamma2.is_some()) {
            return Err(ConfigError::Validation(
                "give either gamma or gamma1/gamma2, not both".into(),
            ));
        }
        let j = self.j.unwrap_or(DEFAULT_J);
        let delta = self.delta.unwrap_or(DEFAULT_DELTA);
        let (gamma1, gamma2) = match self.gamma {
            Some(g) => (g, -g),
            None => (self.gamma1.unwrap_or(0.0), self.gamma2.unwrap_or(0.0)),
        };
        ModelParams::new(j, delta, gamma1, gamma2).map_err(invalid)?;
        let b = self.b.unwrap_or(0.0);
        FieldParams::new(j, delta, b).map_err(invalid)?;
        let t = self.t.unwrap_or(DEFAULT_T);
        if !(t.is_finite() && t >= 0.0) {
            return Err(ConfigError::Validation(format!(
                "T must be finite and >= 0, got {t}"
            )));
        }
        let evolution = EvolutionConfig {
            q: self.q.unwrap_or(0.0),
            t_final: self.t_final.unwrap_or(DEFAULT_T_FINAL),
            dt: self.dt.unwrap_or(DEFAULT_DT),
            renormalize: self.renormalize.unwrap_or(false),
        };
        evolution.validate().map_err(invalid)?;
        if self.workers == Some(0) {
            return Err(ConfigError::Validation("workers must be at least 1".into()));
        }
        Ok(Fixed {
            j,
            delta,
            gamma1,
            gamma2,
            b,
            t,
            evolution,
        })
    }
}
