use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::dg::BoundaryMode;
use crate::error::{Error, Result};
use crate::field::MAX_DEGREE;
use crate::timestep::SchemeKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StudyMode {
    Space,
    Time,
}

impl StudyMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            StudyMode::Space => "space",
            StudyMode::Time => "time",
        }
    }

    /// Column heading for the swept resolution.
    pub fn resolution_label(&self) -> &'static str {
        match self {
            StudyMode::Space => "h",
            StudyMode::Time => "dt",
        }
    }
}

impl std::str::FromStr for StudyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "space" => Ok(StudyMode::Space),
            "time" => Ok(StudyMode::Time),
            other => Err(Error::invalid(format!(
                "unknown study mode '{other}' (expected space or time)"
            ))),
        }
    }
}

/// The parameter held fixed while resolutions are swept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sweep {
    /// Resolutions are element widths; run `num_steps` steps of size `dt`.
    Space { dt: f64, num_steps: usize },
    /// Resolutions are time steps on a fixed mesh of width `h`, run to `final_time`.
    Time { h: f64, final_time: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub problem: String,
    pub degrees: Vec<usize>,
    /// Swept values of `h` (space) or `Δt` (time), strictly decreasing.
    pub resolutions: Vec<f64>,
    pub sweep: Sweep,
    pub scheme: SchemeKind,
    pub bc: BoundaryMode,
    pub flux: String,
    pub ab2_substeps: Option<usize>,
    pub output: Option<PathBuf>,
}

impl StudyConfig {
    pub fn mode(&self) -> StudyMode {
        match self.sweep {
            Sweep::Space { .. } => StudyMode::Space,
            Sweep::Time { .. } => StudyMode::Time,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degrees.is_empty() {
            return Err(Error::invalid("at least one polynomial degree is required"));
        }
        if let Some(&k) = self.degrees.iter().find(|&&k| k > MAX_DEGREE) {
            return Err(Error::invalid(format!(
                "degree {k} exceeds the supported maximum of {MAX_DEGREE}"
            )));
        }
        if self.resolutions.is_empty() {
            return Err(Error::invalid("at least one resolution is required"));
        }
        if self.resolutions.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::invalid("resolutions must be positive"));
        }
        if self.resolutions.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::invalid("resolutions must be strictly decreasing"));
        }
        if self.ab2_substeps == Some(0) {
            return Err(Error::invalid("substeps must be at least 1"));
        }
        match self.sweep {
            Sweep::Space { dt, num_steps } => {
                if !(dt.is_finite() && dt > 0.0) {
                    return Err(Error::invalid(format!("dt must be positive, got {dt}")));
                }
                if num_steps == 0 {
                    return Err(Error::invalid("space studies need at least one step"));
                }
            }
            Sweep::Time { h, final_time } => {
                if !(h.is_finite() && h > 0.0) {
                    return Err(Error::invalid(format!("h must be positive, got {h}")));
                }
                if !(final_time.is_finite() && final_time > 0.0) {
                    return Err(Error::invalid(format!(
                        "final time must be positive, got {final_time}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds a config from `key = value` settings.
    ///
    /// Keys: `problem`, `mode`, `degrees`, `resolutions`, `dt`, `steps` (space),
    /// `h`, `final-time` (time), `scheme`, `bc`, `flux`, `substeps`, `out`.
    pub fn from_settings(settings: &BTreeMap<String, String>) -> Result<Self> {
        const KNOWN: &[&str] = &[
            "problem", "mode", "degrees", "resolutions", "dt", "h", "steps", "final-time",
            "scheme", "bc", "flux", "substeps", "out",
        ];
        if let Some(k) = settings.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(Error::invalid(format!("unknown setting '{k}'")));
        }
        let get = |key: &str| settings.get(key).map(String::as_str);
        let require = |key: &str| {
            get(key).ok_or_else(|| Error::invalid(format!("missing required setting '{key}'")))
        };
        let mode: StudyMode = require("mode")?.parse()?;
        let sweep = match mode {
            StudyMode::Space => {
                if get("h").is_some() || get("final-time").is_some() {
                    return Err(Error::invalid("space studies take dt and steps, not h or final-time"));
                }
                Sweep::Space {
                    dt: parse_num(require("dt")?, "dt")?,
                    num_steps: parse_num(require("steps")?, "steps")?,
                }
            }
            StudyMode::Time => {
                if get("dt").is_some() || get("steps").is_some() {
                    return Err(Error::invalid("time studies take h and final-time, not dt or steps"));
                }
                Sweep::Time {
                    h: parse_num(require("h")?, "h")?,
                    final_time: parse_num(require("final-time")?, "final-time")?,
                }
            }
        };
        let cfg = StudyConfig {
            problem: require("problem")?.to_string(),
            degrees: parse_list(require("degrees")?, "degrees")?,
            resolutions: parse_list(require("resolutions")?, "resolutions")?,
            sweep,
            scheme: get("scheme").unwrap_or("ab2").parse()?,
            bc: get("bc").unwrap_or("periodic").parse()?,
            flux: get("flux").unwrap_or("llf").to_string(),
            ab2_substeps: get("substeps").map(|s| parse_num(s, "substeps")).transpose()?,
            output: get("out").map(PathBuf::from),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, key: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::invalid(format!("cannot parse '{s}' for '{key}'")))
}

fn parse_list<T: std::str::FromStr>(s: &str, key: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_num(p, key))
        .collect()
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!("line {}: expected key=value, got '{raw}'", lineno + 1))
        })?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn space_config_from_settings() {
        let cfg = StudyConfig::from_settings(&settings(&[
            ("problem", "burgers"),
            ("mode", "space"),
            ("degrees", "1,2"),
            ("resolutions", "0.5,0.25"),
            ("dt", "1e-4"),
            ("steps", "10"),
        ]))
        .unwrap();
        assert_eq!(cfg.degrees, vec![1, 2]);
        assert_eq!(cfg.sweep, Sweep::Space { dt: 1e-4, num_steps: 10 });
        assert_eq!(cfg.scheme, SchemeKind::AdamsBashforth2);
        assert_eq!(cfg.bc, BoundaryMode::Periodic);
    }

    #[test]
    fn mode_specific_keys_enforced() {
        let base = [
            ("problem", "burgers"),
            ("mode", "time"),
            ("degrees", "8"),
            ("resolutions", "0.001"),
            ("dt", "1e-4"),
        ];
        assert!(StudyConfig::from_settings(&settings(&base)).is_err());
        let ok = [
            ("problem", "burgers"),
            ("mode", "time"),
            ("degrees", "8"),
            ("resolutions", "0.001"),
            ("h", "0.25"),
            ("final-time", "1"),
        ];
        assert!(StudyConfig::from_settings(&settings(&ok)).is_ok());
    }

    #[test]
    fn invariants_rejected() {
        let mut s = settings(&[
            ("problem", "burgers"),
            ("mode", "space"),
            ("degrees", "1"),
            ("resolutions", "0.25,0.5"),
            ("dt", "1e-4"),
            ("steps", "10"),
        ]);
        assert!(StudyConfig::from_settings(&s).is_err());
        s.insert("resolutions".into(), "0.5,0.25".into());
        s.insert("degrees".into(), "".into());
        assert!(StudyConfig::from_settings(&s).is_err());
        s.insert("degrees".into(), "1".into());
        s.insert("colour".into(), "blue".into());
        assert!(StudyConfig::from_settings(&s).is_err());
    }

    #[test]
    fn key_value_file() {
        let text = "# study\nproblem = burgers\n--mode=space\nfinal_time = 1 # trailing\n\n";
        let kv = parse_key_values(text).unwrap();
        assert_eq!(kv["problem"], "burgers");
        assert_eq!(kv["mode"], "space");
        assert_eq!(kv["final-time"], "1");
        assert!(parse_key_values("no equals sign").is_err());
    }
}
