//! Flat `key = value` configuration files layered under command-line flags.

use anyhow::{anyhow, bail, Context, Result};
use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

/// Where a setting came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    File,
    Flag,
}

/// Merged settings: file entries first, flags on top.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, (String, Source)>,
}

/// Lower-cases and maps `-` to `_`; `f_inf` is accepted for `finf`.
pub fn normalize_key(key: &str) -> String {
    let k = key.trim().to_ascii_lowercase().replace('-', "_");
    if k == "f_inf" {
        "finf".to_string()
    } else {
        k
    }
}

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// ignored, as is anything after a ` #` on a value line.
pub fn parse_flat(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected `key = value`, got `{line}`", no + 1))?;
        let value = match value.find(" #") {
            Some(i) => &value[..i],
            None => value,
        };
        let key = normalize_key(key);
        if key.is_empty() {
            bail!("line {}: empty key", no + 1);
        }
        if out.insert(key.clone(), value.trim().to_string()).is_some() {
            bail!("line {}: duplicate key `{key}`", no + 1);
        }
    }
    Ok(out)
}

impl Settings {
    /// Loads `path` if given.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut s = Settings::default();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let map = parse_flat(&text).with_context(|| format!("parsing {}", path.display()))?;
            for (k, v) in map {
                s.values.insert(k, (v, Source::File));
            }
        }
        Ok(s)
    }

    /// Sets `key` from a flag when the flag was given.
    pub fn flag<T: ToString>(&mut self, key: &str, value: Option<T>) {
        if let Some(v) = value {
            self.values.insert(normalize_key(key), (v.to_string(), Source::Flag));
        }
    }

    /// Sets a boolean switch when it is on.
    pub fn switch(&mut self, key: &str, on: bool, value: &str) {
        if on {
            self.values
                .insert(normalize_key(key), (value.to_string(), Source::Flag));
        }
    }

    /// Raw string value.
    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|(v, _)| v.as_str())
    }

    /// Parsed value, if present.
    pub fn get<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some((v, src)) => v.parse::<T>().map(Some).map_err(|e| {
                let origin = match src {
                    Source::File => "config file",
                    Source::Flag => "command line",
                };
                anyhow!("invalid value `{v}` for `{key}` ({origin}): {e}")
            }),
        }
    }

    /// Parsed value; an error naming the key when absent.
    pub fn require<T>(&self, key: &str) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.get(key)?.ok_or_else(|| {
            anyhow!(
                "missing `{key}` (give --{} or `{key} = ...` in the config file)",
                key.replace('_', "-")
            )
        })
    }

    /// Parsed value or a default.
    pub fn get_or<T>(&self, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    /// Parses `true/false/yes/no/on/off/1/0`.
    pub fn get_bool(&self, key: &str) -> Result<Option<bool>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => match v.to_ascii_lowercase().as_str() {
                "true" | "yes" | "on" | "1" => Ok(Some(true)),
                "false" | "no" | "off" | "0" => Ok(Some(false)),
                _ => bail!("invalid boolean `{v}` for `{key}`"),
            },
        }
    }

    /// Keys not in `known`, for diagnostics.
    pub fn unknown_keys<'a>(&'a self, known: &[&str]) -> Vec<&'a str> {
        self.values
            .keys()
            .map(String::as_str)
            .filter(|k| !known.contains(k))
            .collect()
    }
}

/// Parses `a:b,c:d` into pairs.
pub fn parse_pairs(text: &str) -> Result<Vec<(f64, f64)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (a, b) = item
                .split_once(':')
                .ok_or_else(|| anyhow!("expected `a:b`, got `{item}`"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_aliases() {
        let m = parse_flat("# header\n p = 2\nf-inf = 2.25  # bound\n\nMU=2\n").unwrap();
        assert_eq!(m["p"], "2");
        assert_eq!(m["finf"], "2.25");
        assert_eq!(m["mu"], "2");
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_flat("p 2").is_err());
        assert!(parse_flat("p = 1\np = 2").is_err());
        assert!(parse_flat(" = 2").is_err());
    }

    #[test]
    fn flags_override_file() {
        let mut s = Settings::default();
        s.values.insert("mu".into(), ("2".into(), Source::File));
        s.flag("mu", Some(3.5));
        s.flag("p", None::<f64>);
        assert_eq!(s.get::<f64>("mu").unwrap(), Some(3.5));
        assert_eq!(s.get::<f64>("p").unwrap(), None);
        assert!(s.require::<f64>("p").unwrap_err().to_string().contains("--p"));
    }

    #[test]
    fn reports_bad_values_with_origin() {
        let mut s = Settings::default();
        s.values.insert("mu".into(), ("two".into(), Source::File));
        let e = s.get::<f64>("mu").unwrap_err().to_string();
        assert!(e.contains("config file") && e.contains("mu"));
    }

    #[test]
    fn pairs() {
        assert_eq!(parse_pairs("-1:1, 4:6").unwrap(), vec![(-1.0, 1.0), (4.0, 6.0)]);
        assert!(parse_pairs("1-2").is_err());
    }
}
