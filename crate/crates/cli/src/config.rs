//! Run configuration: flag parsing, JSON config files, compact specs.
//!
//! Flags override config-file fields. Every randomized subcommand requires
//! an explicit seed so identical configs yield identical output bytes.

use greedylab::spaces::{SpaceDescriptor, SparseVector};
use greedylab::weights::Weight;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Key-value view over `--flag value` pairs merged with a JSON config file.
#[derive(Debug, Default)]
pub struct RunConfig {
    values: BTreeMap<String, Value>,
}

impl RunConfig {
    /// Parse argv after the subcommand. `--config file.json` loads defaults;
    /// all other flags override them.
    pub fn from_args(args: &[String]) -> Result<Self, ConfigError> {
        let mut flags: BTreeMap<String, Value> = BTreeMap::new();
        let mut config_path: Option<String> = None;
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let Some(name) = arg.strip_prefix("--") else {
                return err(format!("unexpected positional argument `{arg}`"));
            };
            i += 1;
            if i >= args.len() {
                return err(format!("flag --{name} needs a value"));
            }
            let raw = args[i].clone();
            i += 1;
            if name == "config" {
                config_path = Some(raw);
                continue;
            }
            // Keep values as strings; typed accessors parse on demand.
            flags.insert(name.to_string(), Value::String(raw));
        }

        let mut values = BTreeMap::new();
        if let Some(path) = config_path {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| ConfigError(format!("cannot read config {path}: {e}")))?;
            let parsed: Value = serde_json::from_str(&text)
                .map_err(|e| ConfigError(format!("malformed JSON in {path}: {e}")))?;
            let Value::Object(map) = parsed else {
                return err(format!("config {path} must be a JSON object"));
            };
            for (k, v) in map {
                values.insert(k, v);
            }
        }
        values.extend(flags);
        Ok(Self { values })
    }

    /// The fully resolved configuration, embedded in JSON reports.
    pub fn resolved(&self) -> Value {
        Value::Object(self.values.clone().into_iter().collect())
    }

    fn str_of(v: &Value) -> Option<String> {
        match v {
            Value::String(s) => Some(s.clone()),
            Value::Number(n) => Some(n.to_string()),
            Value::Bool(b) => Some(b.to_string()),
            _ => None,
        }
    }

    pub fn string(&self, key: &str) -> Option<String> {
        self.values.get(key).and_then(Self::str_of)
    }

    pub fn u64_opt(&self, key: &str) -> Result<Option<u64>, ConfigError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) if n.is_u64() => Ok(n.as_u64()),
            Some(v) => match Self::str_of(v).and_then(|s| s.parse::<u64>().ok()) {
                Some(x) => Ok(Some(x)),
                None => err(format!("--{key} must be a non-negative integer")),
            },
        }
    }

    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64, ConfigError> {
        Ok(self.u64_opt(key)?.unwrap_or(default))
    }

    pub fn required_u64(&self, key: &str) -> Result<u64, ConfigError> {
        self.u64_opt(key)?
            .ok_or_else(|| ConfigError(format!("missing required --{key}")))
    }

    pub fn f64_opt(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => Ok(n.as_f64()),
            Some(v) => match Self::str_of(v) {
                Some(s) if s == "inf" => Ok(Some(f64::INFINITY)),
                Some(s) => s
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|_| ConfigError(format!("--{key} must be a number"))),
                None => err(format!("--{key} must be a number")),
            },
        }
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        Ok(self.f64_opt(key)?.unwrap_or(default))
    }

    /// q ∈ (0, ∞]; "inf" allowed.
    pub fn q(&self) -> Result<f64, ConfigError> {
        let q = self.f64_or("q", 2.0)?;
        if q > 0.0 {
            Ok(q)
        } else {
            err("--q must be positive (number or \"inf\")")
        }
    }

    /// Seed is mandatory for randomized operations.
    pub fn required_seed(&self) -> Result<u64, ConfigError> {
        self.u64_opt("seed")?
            .ok_or_else(|| ConfigError("randomized operation: --seed is mandatory".into()))
    }

    pub fn space(&self) -> Result<SpaceDescriptor, ConfigError> {
        match self.values.get("space") {
            None => err("missing required --space"),
            Some(Value::String(s)) => parse_space(s),
            Some(v @ Value::Object(_)) => serde_json::from_value(v.clone())
                .map_err(|e| ConfigError(format!("bad space object: {e}"))),
            Some(_) => err("--space must be a spec string or object"),
        }
    }

    pub fn weight(&self) -> Result<Weight, ConfigError> {
        match self.values.get("w").or_else(|| self.values.get("weight")) {
            None => err("missing required --w"),
            Some(Value::String(s)) => parse_weight(s),
            Some(v @ Value::Object(_)) => serde_json::from_value(v.clone())
                .map_err(|e| ConfigError(format!("bad weight object: {e}"))),
            Some(_) => err("--w must be a spec string or object"),
        }
    }

    pub fn weight_named(&self, key: &str) -> Result<Weight, ConfigError> {
        match self.values.get(key) {
            None => err(format!("missing required --{key}")),
            Some(Value::String(s)) => parse_weight(s),
            Some(v @ Value::Object(_)) => serde_json::from_value(v.clone())
                .map_err(|e| ConfigError(format!("bad weight object: {e}"))),
            Some(_) => err(format!("--{key} must be a spec string or object")),
        }
    }

    /// Inline JSON map (`--vector`), file path (`--vector-file`), or the
    /// `vector` config field.
    pub fn vector(&self) -> Result<SparseVector, ConfigError> {
        if let Some(v) = self.values.get("vector") {
            return match v {
                Value::String(s) => {
                    if s.trim_start().starts_with('{') {
                        parse_vector_json(s)
                    } else {
                        err("--vector must be an inline JSON map; use --vector-file for files")
                    }
                }
                Value::Object(_) => vector_from_value(v),
                _ => err("vector must be a JSON map of index to coefficient"),
            };
        }
        if let Some(path) = self.string("vector-file") {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| ConfigError(format!("cannot read vector file {path}: {e}")))?;
            return if text.trim_start().starts_with('{') {
                parse_vector_json(&text)
            } else {
                parse_vector_csv(&text)
            };
        }
        err("missing required --vector or --vector-file")
    }

    /// Format: json (default) or csv.
    pub fn format(&self) -> Result<OutputFormat, ConfigError> {
        match self.string("format").as_deref() {
            None | Some("json") => Ok(OutputFormat::Json),
            Some("csv") => Ok(OutputFormat::Csv),
            Some(other) => err(format!("unknown format `{other}` (json or csv)")),
        }
    }

    /// Comma-separated support sizes, default 4,8,16.
    pub fn sizes(&self) -> Result<Vec<usize>, ConfigError> {
        match self.values.get("sizes") {
            None => Ok(vec![4, 8, 16]),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_u64()
                        .map(|x| x as usize)
                        .ok_or_else(|| ConfigError("sizes must be integers".into()))
                })
                .collect(),
            Some(v) => {
                let s = Self::str_of(v).ok_or_else(|| ConfigError("bad sizes".into()))?;
                s.split(',')
                    .map(|part| {
                        part.trim()
                            .parse::<usize>()
                            .map_err(|_| ConfigError(format!("bad size `{part}`")))
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// `lp:2`, `lp:inf`, `lorentz_d:0.5:1`, `interleaved:1:2`, `summing`.
pub fn parse_space(s: &str) -> Result<SpaceDescriptor, ConfigError> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| -> Result<f64, ConfigError> {
        if t == "inf" {
            Ok(f64::INFINITY)
        } else {
            t.parse()
                .map_err(|_| ConfigError(format!("bad number `{t}` in space spec `{s}`")))
        }
    };
    let built = match parts.as_slice() {
        ["lp", p] => SpaceDescriptor::lp(num(p)?),
        ["lorentz_d", sh, p] => SpaceDescriptor::lorentz_d(num(sh)?, num(p)?),
        ["interleaved", p1, p2] | ["interleaved_sum", p1, p2] => {
            SpaceDescriptor::interleaved_sum(num(p1)?, num(p2)?)
        }
        ["summing"] | ["summing_c0"] => Ok(SpaceDescriptor::summing_c0()),
        _ => return err(format!("unknown space spec `{s}`")),
    };
    built.map_err(|e| ConfigError(format!("invalid space `{s}`: {e}")))
}

/// `power:0.25`, `power_log:0.5:1`.
pub fn parse_weight(s: &str) -> Result<Weight, ConfigError> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| -> Result<f64, ConfigError> {
        t.parse()
            .map_err(|_| ConfigError(format!("bad number `{t}` in weight spec `{s}`")))
    };
    match parts.as_slice() {
        ["power", a] => Ok(Weight::power(num(a)?)),
        ["power_log", a, b] => Ok(Weight::power_log(num(a)?, num(b)?)),
        _ => err(format!(
            "unknown weight spec `{s}` (table weights go in a JSON config)"
        )),
    }
}

fn vector_from_value(v: &Value) -> Result<SparseVector, ConfigError> {
    let Value::Object(map) = v else {
        return err("vector must be a JSON map");
    };
    let mut pairs = Vec::with_capacity(map.len());
    for (k, val) in map {
        let idx: u64 = k
            .parse()
            .map_err(|_| ConfigError(format!("vector index `{k}` is not a positive integer")))?;
        let coeff = val
            .as_f64()
            .ok_or_else(|| ConfigError(format!("vector value for index {k} is not a number")))?;
        pairs.push((idx, coeff));
    }
    SparseVector::from_pairs(pairs).map_err(|e| ConfigError(format!("bad vector: {e}")))
}

pub fn parse_vector_json(text: &str) -> Result<SparseVector, ConfigError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| ConfigError(format!("malformed vector JSON: {e}")))?;
    vector_from_value(&v)
}

/// Two-column CSV `index,value`, optional header.
pub fn parse_vector_csv(text: &str) -> Result<SparseVector, ConfigError> {
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let (a, b) = (cols.next().unwrap_or(""), cols.next().unwrap_or(""));
        if lineno == 0 && a.parse::<u64>().is_err() {
            continue; // header row
        }
        let idx: u64 = a
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("line {}: bad index `{a}`", lineno + 1)))?;
        let coeff: f64 = b
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("line {}: bad value `{b}`", lineno + 1)))?;
        pairs.push((idx, coeff));
    }
    SparseVector::from_pairs(pairs).map_err(|e| ConfigError(format!("bad vector: {e}")))
}
