//! Flat `key = value` run configuration.
//!
//! ```text
//! # fitted three-state curve
//! scheme = THREE_STATE
//! k = -1
//! s = 0.0749
//! t_start = 0
//! t_stop = 1.9
//! t_step = 0.1
//! ```
//!
//! Keys are case-sensitive. Unset keys take their defaults. An explicit
//! `t_values` list takes precedence over `t_start`/`t_stop`/`t_step`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use sdcoding::environment::JointSpectrum;
use sdcoding::protocol::{EncodingScheme, NoiseOrder, SchemeKind};
use thiserror::Error;

/// Every recognised key, in documentation order.
pub const KEYS: [&str; 17] = [
    "omega0",
    "c_aa",
    "c_bb",
    "k",
    "delta_n",
    "scheme",
    "priors",
    "t_start",
    "t_stop",
    "t_step",
    "t_values",
    "s",
    "n_per_input",
    "trials",
    "seed",
    "noise_order",
    "output_path",
];

pub const DEFAULT_T_START: f64 = 0.0;
pub const DEFAULT_T_STOP: f64 = 2.0;
pub const DEFAULT_T_STEP: f64 = 0.1;

/// Where a setting came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Line(usize),
    Flag,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::Flag => f.write_str("command line"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("{origin}: {message}")]
    Syntax { origin: Origin, message: String },
    #[error("{origin}: key `{key}`: {message}")]
    Value {
        origin: Origin,
        key: String,
        message: String,
    },
}

/// Sampling times of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeGrid {
    Range { start: f64, stop: f64, step: f64 },
    List(Vec<f64>),
}

impl TimeGrid {
    /// Grid points; a range includes `stop` when it lies on the grid.
    pub fn points(&self) -> Vec<f64> {
        match self {
            TimeGrid::List(v) => v.clone(),
            TimeGrid::Range { start, stop, step } => {
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=n).map(|i| start + i as f64 * step).collect()
            }
        }
    }
}

/// Validated settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub spectrum: JointSpectrum,
    pub scheme: EncodingScheme,
    pub grid: TimeGrid,
    pub s: f64,
    pub n_per_input: u64,
    pub trials: usize,
    pub seed: u64,
    pub noise_order: NoiseOrder,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RawConfig::default().build().expect("defaults are valid")
    }
}

/// Unvalidated key/value pairs with their origins.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, (String, Origin)>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw = RawConfig::default();
        for (i, line) in text.lines().enumerate() {
            let origin = Origin::Line(i + 1);
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
                origin: origin.clone(),
                message: format!("expected `key = value`, found `{content}`"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(ConfigError::Value {
                    origin,
                    key: key.into(),
                    message: "unknown key".into(),
                });
            }
            if let Some((_, first)) = raw.entries.get(key) {
                return Err(ConfigError::Value {
                    origin,
                    key: key.into(),
                    message: format!("duplicate key, first set on {first}"),
                });
            }
            raw.entries.insert(key.into(), (value.into(), origin));
        }
        Ok(raw)
    }

    /// Sets `key` from a command-line flag, replacing any file value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        if !KEYS.contains(&key) {
            return Err(ConfigError::Value {
                origin: Origin::Flag,
                key: key.into(),
                message: "unknown key".into(),
            });
        }
        self.entries.insert(key.into(), (value.trim().into(), Origin::Flag));
        Ok(())
    }

    fn lookup(&self, key: &str) -> Option<(&str, &Origin)> {
        self.entries.get(key).map(|(v, o)| (v.as_str(), o))
    }

    fn error(&self, key: &str, message: impl Into<String>) -> ConfigError {
        let origin = self.lookup(key).map(|(_, o)| o.clone()).unwrap_or(Origin::Flag);
        ConfigError::Value {
            origin,
            key: key.into(),
            message: message.into(),
        }
    }

    fn value<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, ConfigError>
    where
        T::Err: fmt::Display,
    {
        match self.lookup(key) {
            None => Ok(default),
            Some((v, _)) => v.parse().map_err(|e| self.error(key, format!("malformed value `{v}`: {e}"))),
        }
    }

    fn real(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        let v: f64 = self.value(key, default)?;
        if !v.is_finite() {
            return Err(self.error(key, format!("{v} is not a finite number")));
        }
        Ok(v)
    }

    fn reals(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        let Some((v, _)) = self.lookup(key) else {
            return Ok(None);
        };
        v.split(',')
            .map(|item| {
                let item = item.trim();
                item.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| self.error(key, format!("malformed list entry `{item}`")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    pub fn build(&self) -> Result<RunConfig, ConfigError> {
        let k = self.real("k", -1.0)?;
        let spectrum = JointSpectrum::new(
            self.real("omega0", 2.0)?,
            self.real("c_aa", 1.0)?,
            self.real("c_bb", 1.0)?,
            k,
            self.real("delta_n", 1.0)?,
        )
        .map_err(|e| {
            let key = match &e {
                sdcoding::Error::Domain { param, .. } => *param,
                _ => "k",
            };
            self.error(key, e.to_string())
        })?;

        let kind: SchemeKind = self.value("scheme", SchemeKind::ThreeState)?;
        let scheme = match self.reals("priors")? {
            None => EncodingScheme::new(kind),
            Some(p) => EncodingScheme::with_priors(kind, p).map_err(|e| self.error("priors", e.to_string()))?,
        };

        let grid = match self.reals("t_values")? {
            Some(list) => {
                if let Some(bad) = list.iter().find(|t| **t < 0.0) {
                    return Err(self.error("t_values", format!("time {bad} is negative")));
                }
                TimeGrid::List(list)
            }
            None => {
                let start = self.real("t_start", DEFAULT_T_START)?;
                let stop = self.real("t_stop", DEFAULT_T_STOP)?;
                let step = self.real("t_step", DEFAULT_T_STEP)?;
                if start < 0.0 {
                    return Err(self.error("t_start", format!("{start} is negative")));
                }
                if step <= 0.0 {
                    return Err(self.error("t_step", format!("{step} must be positive")));
                }
                if stop < start {
                    return Err(self.error("t_stop", format!("{stop} is below t_start = {start}")));
                }
                TimeGrid::Range { start, stop, step }
            }
        };

        let s = self.real("s", 0.0)?;
        if s < 0.0 {
            return Err(self.error("s", format!("{s} is outside [0, inf)")));
        }
        let n_per_input: u64 = self.value("n_per_input", 10_000)?;
        if n_per_input == 0 {
            return Err(self.error("n_per_input", "must be positive"));
        }
        let trials: usize = self.value("trials", 1000)?;
        if trials < 2 {
            return Err(self.error("trials", format!("{trials} is below the minimum of 2")));
        }
        let seed: u64 = self.value("seed", 42)?;
        let noise_order: NoiseOrder = self.value("noise_order", NoiseOrder::NoiseBeforeEncoding)?;
        let output_path = self.lookup("output_path").map(|(v, _)| PathBuf::from(v));

        Ok(RunConfig {
            spectrum,
            scheme,
            grid,
            s,
            n_per_input,
            trials,
            seed,
            noise_order,
            output_path,
        })
    }
}

/// Parses and validates configuration text.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    RawConfig::parse(text)?.build()
}

impl RunConfig {
    /// The resolved configuration in the input format.
    pub fn to_text(&self) -> String {
        let sp = &self.spectrum;
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        line("omega0", sp.omega0().to_string());
        line("c_aa", sp.c_aa().to_string());
        line("c_bb", sp.c_bb().to_string());
        line("k", sp.k().to_string());
        line("delta_n", sp.delta_n().to_string());
        line("scheme", self.scheme.kind().to_string());
        line(
            "priors",
            self.scheme.priors().iter().map(f64::to_string).collect::<Vec<_>>().join(", "),
        );
        match &self.grid {
            TimeGrid::Range { start, stop, step } => {
                line("t_start", start.to_string());
                line("t_stop", stop.to_string());
                line("t_step", step.to_string());
            }
            TimeGrid::List(v) => line("t_values", v.iter().map(f64::to_string).collect::<Vec<_>>().join(", ")),
        }
        line("s", self.s.to_string());
        line("n_per_input", self.n_per_input.to_string());
        line("trials", self.trials.to_string());
        line("seed", self.seed.to_string());
        line("noise_order", self.noise_order.to_string());
        if let Some(p) = &self.output_path {
            line("output_path", p.display().to_string());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        let c = parse_config("").unwrap();
        assert_eq!(c.spectrum, JointSpectrum::default());
        assert_eq!(c.scheme, EncodingScheme::three_state());
        assert_eq!((c.s, c.n_per_input, c.trials, c.seed), (0.0, 10_000, 1000, 42));
        assert_eq!(c.noise_order, NoiseOrder::NoiseBeforeEncoding);
        assert_eq!(c.grid.points().len(), 21);
        assert!(c.output_path.is_none());
    }

    #[test]
    fn out_of_range_k_names_key_and_line() {
        let err = parse_config("# header\nk = 1.5\n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        assert!(err.contains("`k`"), "{err}");
        assert!(err.contains("[-1, 1]"), "{err}");
    }

    #[test]
    fn fitted_four_state_settings() {
        let c = parse_config("scheme = FOUR_STATE\ns = 0.0975\nk = -0.99995\n").unwrap();
        assert_eq!(c.scheme.kind(), SchemeKind::FourState);
        assert_eq!(c.s, 0.0975);
        assert_eq!(c.spectrum.k(), -0.99995);
    }

    #[test]
    fn explicit_list_wins() {
        let c = parse_config("t_start = 0\nt_stop = 1\nt_step = 0.5\nt_values = 0.2, 0.4,1e0\n").unwrap();
        assert_eq!(c.grid.points(), vec![0.2, 0.4, 1.0]);
        let c = parse_config("t_start = 0\nt_stop = 1\nt_step = 0.25\n").unwrap();
        assert_eq!(c.grid.points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn rejects_bad_input() {
        for (text, key) in [
            ("bogus = 1", "bogus"),
            ("k = abc", "k"),
            ("t_step = 0", "t_step"),
            ("t_start = 1\nt_stop = 0.5", "t_stop"),
            ("trials = 1", "trials"),
            ("scheme = TWO_STATE", "scheme"),
            ("priors = 0.5, 0.5", "priors"),
            ("c_aa = -1", "c_aa"),
            ("s = -0.1", "s"),
            ("n_per_input = 0", "n_per_input"),
            ("noise_order = LATE", "noise_order"),
            ("t_values = 0.1, x", "t_values"),
        ] {
            let err = parse_config(text).unwrap_err().to_string();
            assert!(err.contains(&format!("`{key}`")), "{text}: {err}");
        }
        assert!(parse_config("k").unwrap_err().to_string().contains("line 1"));
        assert!(parse_config("k = 0\nk = 1").unwrap_err().to_string().contains("duplicate"));
    }

    #[test]
    fn keys_are_case_sensitive() {
        assert!(parse_config("K = 0").is_err());
    }

    #[test]
    fn flags_override_file_values() {
        let mut raw = RawConfig::parse("k = 0\n").unwrap();
        raw.set("k", "-0.5").unwrap();
        assert_eq!(raw.build().unwrap().spectrum.k(), -0.5);
        raw.set("k", "7").unwrap();
        assert!(raw.build().unwrap_err().to_string().contains("command line"));
    }

    #[test]
    fn text_round_trip() {
        let c = parse_config("scheme = FOUR_STATE\nk = -0.3\ns = 0.01\nt_values = 0.1, 0.7\noutput_path = a.csv\n").unwrap();
        assert_eq!(parse_config(&c.to_text()).unwrap(), c);
        let d = RunConfig::default();
        assert_eq!(parse_config(&d.to_text()).unwrap(), d);
    }
}
