use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::Context;

use crate::usage;

/// Defaults read from a `key = value` file; `#` starts a comment.
#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| usage(format!("config line {}: expected key = value", i + 1)))?;
            values.insert(k.trim().to_string(), v.trim().trim_matches('"').to_string());
        }
        Ok(Config { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get_parsed<T: FromStr>(&self, key: &str) -> anyhow::Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key).map(|v| v.parse::<T>().map_err(|e| usage(format!("config key {key}: {e}")))).transpose()
    }
}

/// Flag value, then config value, then the default.
pub fn pick<T: FromStr>(flag: Option<T>, cfg: &Config, key: &str, default: T) -> anyhow::Result<T>
where
    T::Err: std::fmt::Display,
{
    Ok(match flag {
        Some(v) => v,
        None => cfg.get_parsed(key)?.unwrap_or(default),
    })
}

pub fn parse_ratio(text: &str) -> anyhow::Result<naelab::Rational> {
    naelab::scalar::parse_rational(text).ok_or_else(|| usage(format!("'{text}' is not a rational number")))
}

/// Parses `k=3,mode=nae,grid=101` option strings.
pub fn parse_pairs(text: &str) -> anyhow::Result<BTreeMap<String, String>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| usage(format!("expected key=value in '{kv}'")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

pub fn pair_value<T: FromStr>(pairs: &BTreeMap<String, String>, key: &str) -> anyhow::Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    pairs.get(key).map(|v| v.parse::<T>().map_err(|e| usage(format!("{key}={v}: {e}")))).transpose()
}
