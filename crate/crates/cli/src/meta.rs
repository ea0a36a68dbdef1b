//! Instance metadata files: ordered `key=value` writing, typed reading, and
//! the small string codecs (bit strings, index lists) the kinds share.

use std::collections::HashMap;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};

use longpath_core::Permutation;

/// Ordered key=value pairs; written one per line in insertion order.
#[derive(Debug, Default)]
pub struct Meta {
    pairs: Vec<(String, String)>,
}

impl Meta {
    pub fn new() -> Self {
        Meta::default()
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.pairs.push((key.to_string(), value.to_string()));
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        let mut text = String::new();
        for (k, v) in &self.pairs {
            text.push_str(k);
            text.push('=');
            text.push_str(v);
            text.push('\n');
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

/// Read-side view of a metadata file; getters name the key they miss.
#[derive(Debug)]
pub struct MetaMap {
    map: HashMap<String, String>,
    path: PathBuf,
}

impl MetaMap {
    pub fn read_file(path: &Path) -> Result<MetaMap> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut map = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("{}:{}: expected key=value", path.display(), idx + 1);
            };
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(MetaMap {
            map,
            path: path.to_path_buf(),
        })
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| anyhow!("{}: missing key `{key}`", self.path.display()))
    }

    pub fn parse<T>(&self, key: &str) -> Result<T>
    where
        T: std::str::FromStr,
        T::Err: Display,
    {
        let raw = self.get(key)?;
        raw.parse()
            .map_err(|e| anyhow!("{}: key `{key}`: {e}", self.path.display()))
    }

    pub fn bits(&self, key: &str) -> Result<Vec<bool>> {
        parse_bits(self.get(key)?)
    }

    /// Fail unless the stored value equals `expected` — the tamper check
    /// used when an instance is re-derived from its seed.
    pub fn expect_eq(&self, key: &str, expected: &str) -> Result<()> {
        let stored = self.get(key)?;
        if stored != expected {
            bail!(
                "{}: key `{key}` is `{stored}` but the seed re-derives `{expected}`",
                self.path.display()
            );
        }
        Ok(())
    }
}

/// Bits as a compact `0`/`1` string.
pub fn bits_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => bail!("bit string has non-bit character {other:?}"),
        })
        .collect()
}

/// A permutation as its space-separated image table.
pub fn perm_string(p: &Permutation) -> String {
    ints_string(p.as_slice())
}

pub fn ints_string(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    parts.join(" ")
}

/// Per-matching bit groups joined with `;`, e.g. `011;10`.
pub fn bit_groups_string(groups: &[Vec<bool>]) -> String {
    let parts: Vec<String> = groups.iter().map(|g| bits_string(g)).collect();
    parts.join(";")
}
