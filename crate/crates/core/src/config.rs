//! Plain-text sweep configuration.
//!
//! ```text
//! # comment
//! [sweep]
//! v_lo = 1e-5
//! delta_spacing = log
//! a_values = 1, 1.0001, 2
//! [solver]
//! rel_tol = 1e-13
//! [output]
//! format = csv
//! ```
//!
//! Keys may appear at top level or in their own section. Unknown sections or
//! keys, repeated keys and malformed values are errors carrying the line
//! number. An empty file yields [`SweepConfig::default`].

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::error::Error as CoreError;
use crate::sweep::{format_float, EnergyScale, GridRange, OutputFormat, Spacing, SweepConfig};

#[derive(Error, Debug)]
pub enum ConfigError {
    #[error("config file not found: {0}")]
    NotFound(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid value for `{key}`: {message}")]
    Invalid { key: String, message: String },
}

const SECTIONS: [(&str, &[&str]); 3] = [
    (
        "sweep",
        &[
            "v",
            "v_lo",
            "v_hi",
            "v_points",
            "v_spacing",
            "delta",
            "delta_lo",
            "delta_hi",
            "delta_points",
            "delta_spacing",
            "a_values",
            "n_e_values",
            "omega_tilde_ev_values",
        ],
    ),
    ("solver", &["rel_tol"]),
    ("output", &["format"]),
];

fn section_of(key: &str) -> Option<&'static str> {
    SECTIONS
        .iter()
        .find(|(_, keys)| keys.contains(&key))
        .map(|(name, _)| *name)
}

fn parse_f64(value: &str) -> Result<f64, String> {
    value
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| format!("`{value}` is not a finite number"))
}

fn parse_list(value: &str) -> Result<Vec<f64>, String> {
    value
        .split(',')
        .map(|s| parse_f64(s.trim()))
        .collect()
}

fn parse_spacing(value: &str) -> Result<Spacing, String> {
    match value {
        "linear" => Ok(Spacing::Linear),
        "log" => Ok(Spacing::Log),
        _ => Err(format!("`{value}` is not one of linear, log")),
    }
}

/// Sets one key on `config`. Shared by the file parser and CLI overrides.
pub fn apply_key(config: &mut SweepConfig, key: &str, value: &str) -> Result<(), String> {
    let value = value.trim();
    match key {
        "v" => config.v_range = GridRange::single(parse_f64(value)?),
        "v_lo" => config.v_range.lo = parse_f64(value)?,
        "v_hi" => config.v_range.hi = parse_f64(value)?,
        "v_points" => config.v_range.points = value.parse().map_err(|_| format!("`{value}` is not a count"))?,
        "v_spacing" => config.v_range.spacing = parse_spacing(value)?,
        "delta" => config.delta_range = GridRange::single(parse_f64(value)?),
        "delta_lo" => config.delta_range.lo = parse_f64(value)?,
        "delta_hi" => config.delta_range.hi = parse_f64(value)?,
        "delta_points" => config.delta_range.points = value.parse().map_err(|_| format!("`{value}` is not a count"))?,
        "delta_spacing" => config.delta_range.spacing = parse_spacing(value)?,
        "a_values" => config.a_values = parse_list(value)?,
        "n_e_values" => config.energy_scale = EnergyScale::ElectronDensity(parse_list(value)?),
        "omega_tilde_ev_values" => config.energy_scale = EnergyScale::OmegaTildeEv(parse_list(value)?),
        "rel_tol" => config.rel_tol = parse_f64(value)?,
        "format" => {
            config.format = match value {
                "csv" => OutputFormat::Csv,
                "json" => OutputFormat::Json,
                _ => return Err(format!("`{value}` is not one of csv, json")),
            }
        }
        _ => return Err(format!("unknown key `{key}`")),
    }
    Ok(())
}

/// Maps a validation failure to the offending key.
pub fn validated(config: SweepConfig) -> Result<SweepConfig, ConfigError> {
    match config.validate() {
        Ok(()) => Ok(config),
        Err(CoreError::InvalidParameter { name, reason }) => Err(ConfigError::Invalid {
            key: name.to_string(),
            message: reason,
        }),
        Err(e) => Err(ConfigError::Invalid {
            key: "config".into(),
            message: e.to_string(),
        }),
    }
}

/// Parses configuration text without validating the result.
pub fn parse_unvalidated(text: &str) -> Result<SweepConfig, ConfigError> {
    let mut config = SweepConfig::default();
    let mut section: Option<&str> = None;
    let mut seen: HashMap<String, usize> = HashMap::new();

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let err = |message: String| ConfigError::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| err(format!("unterminated section header `{content}`")))?
                .trim();
            let known = SECTIONS.iter().find(|(s, _)| *s == name);
            section = Some(known.ok_or_else(|| err(format!("unknown section `[{name}]`")))?.0);
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, found `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let home = section_of(key).ok_or_else(|| err(format!("unknown key `{key}`")))?;
        if let Some(current) = section {
            if current != home {
                return Err(err(format!("key `{key}` belongs in [{home}], not [{current}]")));
            }
        }
        if let Some(first) = seen.insert(key.to_string(), line) {
            return Err(err(format!("key `{key}` repeats line {first}")));
        }
        if value.is_empty() {
            return Err(err(format!("key `{key}` has no value")));
        }
        apply_key(&mut config, key, value).map_err(err)?;
    }

    if let (Some(a), Some(b)) = (seen.get("n_e_values"), seen.get("omega_tilde_ev_values")) {
        return Err(ConfigError::Parse {
            line: *a.max(b),
            message: "n_e_values and omega_tilde_ev_values are mutually exclusive".into(),
        });
    }
    Ok(config)
}

/// Parses and validates configuration text.
pub fn parse_config(text: &str) -> Result<SweepConfig, ConfigError> {
    validated(parse_unvalidated(text)?)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<SweepConfig, ConfigError> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            ConfigError::NotFound(shown.clone())
        } else {
            ConfigError::Io {
                path: shown.clone(),
                source,
            }
        }
    })?;
    parse_config(&text)
}

fn list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format_float(*v))
        .collect::<Vec<_>>()
        .join(", ")
}

fn spacing(s: Spacing) -> &'static str {
    match s {
        Spacing::Linear => "linear",
        Spacing::Log => "log",
    }
}

/// Writes `config` in the grammar [`parse_config`] reads.
pub fn dump_config(config: &SweepConfig) -> String {
    let mut out = String::from("[sweep]\n");
    for (name, range) in [("v", &config.v_range), ("delta", &config.delta_range)] {
        let _ = writeln!(out, "{name}_lo = {}", format_float(range.lo));
        let _ = writeln!(out, "{name}_hi = {}", format_float(range.hi));
        let _ = writeln!(out, "{name}_points = {}", range.points);
        let _ = writeln!(out, "{name}_spacing = {}", spacing(range.spacing));
    }
    let _ = writeln!(out, "a_values = {}", list(&config.a_values));
    match &config.energy_scale {
        EnergyScale::ElectronDensity(v) => {
            let _ = writeln!(out, "n_e_values = {}", list(v));
        }
        EnergyScale::OmegaTildeEv(v) => {
            let _ = writeln!(out, "omega_tilde_ev_values = {}", list(v));
        }
    }
    let _ = writeln!(out, "\n[solver]\nrel_tol = {}", format_float(config.rel_tol));
    let format = match config.format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    };
    let _ = writeln!(out, "\n[output]\nformat = {format}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = parse_config("").unwrap();
        assert_eq!(c, SweepConfig::default());
        assert_eq!(c.v_range.values(), vec![1e-5]);
        assert_eq!(c.delta_range.values().len(), 9);
        assert_eq!(c.a_values, vec![1.0]);
        assert_eq!(c.energy_scale, EnergyScale::OmegaTildeEv(vec![1.0]));
        let c = parse_config("# nothing here\n\n   # still nothing\n").unwrap();
        assert_eq!(c, SweepConfig::default());
    }

    #[test]
    fn negative_speed_names_the_key() {
        match parse_config("v_lo = -1") {
            Err(ConfigError::Invalid { key, .. }) => assert_eq!(key, "v_lo"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sections_and_comments() {
        let text = "\
# sweep over density
[sweep]
v_lo = 1e-6   # slow
v_hi = 1e-4
v_points = 3
v_spacing = log
a_values = 1, 1.0001, 2
n_e_values = 1e20, 1e21

[solver]
rel_tol = 1e-12
[output]
format = json
";
        let c = parse_config(text).unwrap();
        assert_eq!(c.v_range.values(), vec![1e-6, 1e-5, 1e-4]);
        assert_eq!(c.a_values, vec![1.0, 1.0001, 2.0]);
        assert_eq!(c.energy_scale, EnergyScale::ElectronDensity(vec![1e20, 1e21]));
        assert_eq!(c.rel_tol, 1e-12);
        assert_eq!(c.format, OutputFormat::Json);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("v_lo = 1e-5\nbogus = 3", 2),
            ("[sweep]\nv_lo = 1e-5\n[nope]", 3),
            ("[solver]\nv_lo = 1e-5", 2),
            ("v_lo = 1e-5\nv_lo = 2e-5", 2),
            ("v_lo 1e-5", 1),
            ("\n\nv_points = many", 3),
            ("v_spacing = cubic", 1),
            ("[sweep\n", 1),
            ("format =", 1),
            ("n_e_values = 1e20\nomega_tilde_ev_values = 1", 2),
        ];
        for (text, expected) in cases {
            match parse_config(text) {
                Err(ConfigError::Parse { line, .. }) => assert_eq!(line, expected, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn missing_file_is_reported() {
        assert!(matches!(
            load_config("/definitely/not/here.cfg"),
            Err(ConfigError::NotFound(_))
        ));
    }

    #[test]
    fn dump_then_load_is_identity() {
        let c = SweepConfig {
            v_range: GridRange {
                lo: 1e-6,
                hi: 1e-3,
                points: 7,
                spacing: Spacing::Log,
            },
            a_values: vec![1.0, 1.0001, 2.0],
            energy_scale: EnergyScale::ElectronDensity(vec![1e20, 7e22, 1e23]),
            rel_tol: 3e-14,
            format: OutputFormat::Json,
            ..SweepConfig::default()
        };
        let text = dump_config(&c);
        assert_eq!(parse_config(&text).unwrap(), c);
        assert_eq!(dump_config(&parse_config(&text).unwrap()), text);
    }

    proptest::proptest! {
        #[test]
        fn dump_roundtrip_for_arbitrary_grids(
            v_lo in 0.0f64..5e-3, v_span in 0.0f64..5e-3, vp in 1usize..50,
            d_lo in 1e-6f64..0.05, d_span in 0.0f64..0.05, dp in 1usize..50,
            a in proptest::collection::vec(0.1f64..5.0, 1..5),
        ) {
            let c = SweepConfig {
                v_range: GridRange { lo: v_lo, hi: v_lo + v_span, points: vp, spacing: Spacing::Linear },
                delta_range: GridRange { lo: d_lo, hi: d_lo + d_span, points: dp, spacing: Spacing::Log },
                a_values: a,
                ..SweepConfig::default()
            };
            proptest::prop_assert_eq!(parse_config(&dump_config(&c)).unwrap(), c);
        }
    }
}
