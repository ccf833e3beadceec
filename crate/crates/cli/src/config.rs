//! Line-oriented run configuration.
//!
//! ```text
//! # comment
//! seed = 42
//! extension = Q8 / <i>
//! extension = D4 / <r>
//! suite = srp
//!
//! [samples]
//! diff = 1000
//!
//! [tolerances]
//! gelfand = 1e-6
//! ```
//!
//! A repeatable key given in the file replaces its default list rather than
//! appending to it.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use twisted_core::group::CayleyTable;
use twisted_core::verify::{Suite, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(format!("unknown format `{s}`, expected csv or table")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub suite: SuiteConfig,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Top,
    Samples,
    Tolerances,
    Groups,
}

fn number<T: FromStr>(value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("`{value}` is not a valid number"))
}

/// `inf` and `∞` are accepted for exponents.
fn exponent(value: &str) -> Result<f64, String> {
    match value {
        "inf" | "∞" => Ok(f64::INFINITY),
        _ => number(value),
    }
}

fn pair(value: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [p, q] => Ok((exponent(p)?, exponent(q)?)),
        _ => Err(format!("expected `p, q`, got `{value}`")),
    }
}

struct Parser<'a> {
    config: RunConfig,
    /// Lists already replaced by a value from the file.
    replaced: HashSet<&'static str>,
    base: Option<&'a Path>,
}

impl Parser<'_> {
    /// Returns true the first time a list key is seen, so its default gets cleared.
    fn first(&mut self, key: &'static str) -> bool {
        self.replaced.insert(key)
    }

    fn set(&mut self, section: Section, key: &str, value: &str) -> Result<(), String> {
        let c = &mut self.config;
        match (section, key) {
            (Section::Top, "seed") => c.suite.seed = number(value)?,
            (Section::Top, "k_max") => c.suite.k_max = number(value)?,
            (Section::Top, "distribution") => {
                c.suite.distribution = value.parse().map_err(|e| format!("{e}"))?
            }
            (Section::Top, "format") => c.format = value.parse()?,
            (Section::Top, "out") => c.out = Some(PathBuf::from(value)),
            (Section::Top, "threads") => {
                let n: usize = number(value)?;
                if n == 0 {
                    return Err("threads must be at least 1".into());
                }
                c.threads = Some(n);
            }
            (Section::Top, "extension") => {
                value
                    .parse::<twisted_core::group::ExtensionSpec>()
                    .map_err(|e| e.to_string())?;
                if self.first("extension") {
                    self.config.suite.extensions.clear();
                }
                self.config.suite.extensions.push(value.to_string());
            }
            (Section::Top, "suite") => {
                let s: Suite = value.parse().map_err(|e| format!("{e}"))?;
                if !self.config.suite.suites.contains(&s) {
                    self.config.suite.suites.push(s);
                }
            }
            (Section::Top, "table") => {
                let path = match self.base {
                    Some(dir) => dir.join(value),
                    None => PathBuf::from(value),
                };
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                let table =
                    CayleyTable::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                self.config.suite.tables.push((name, table));
            }
            (Section::Samples, k) => {
                let n: usize = number(value)?;
                let s = &mut c.suite.samples;
                let slot = match k {
                    "diff" => &mut s.diff,
                    "lifted" => &mut s.lifted,
                    "srp" => &mut s.srp,
                    "symmetry" => &mut s.symmetry,
                    "lp" => &mut s.lp,
                    "schatten" => &mut s.schatten,
                    "fourier" => &mut s.fourier,
                    "algebraic" => &mut s.algebraic,
                    _ => return Err(format!("unknown key `{k}` in [samples]")),
                };
                *slot = n;
            }
            (Section::Tolerances, k) => {
                let v: f64 = number(value)?;
                let t = &mut c.suite.tolerances;
                let slot = match k {
                    "algebraic" => &mut t.algebraic,
                    "spectral" => &mut t.spectral,
                    "diff" => &mut t.diff,
                    "gelfand" => &mut t.gelfand,
                    "cross_norm" => &mut t.cross_norm,
                    _ => return Err(format!("unknown key `{k}` in [tolerances]")),
                };
                *slot = v;
            }
            (Section::Groups, "lp") => {
                if self.first("lp") {
                    self.config.suite.lp_groups.clear();
                }
                self.config.suite.lp_groups.push(value.to_string());
            }
            (Section::Groups, "lp_pair") => {
                let pq = pair(value)?;
                if self.first("lp_pair") {
                    self.config.suite.lp_pairs.clear();
                }
                self.config.suite.lp_pairs.push(pq);
            }
            (Section::Groups, "fourier") => {
                if self.first("fourier") {
                    self.config.suite.fourier_groups.clear();
                }
                self.config.suite.fourier_groups.push(value.to_string());
            }
            (Section::Groups, "hilbert") => c.suite.hilbert_group = value.to_string(),
            (Section::Groups, "schatten_dim") => c.suite.schatten_dim = number(value)?,
            (Section::Groups, "schatten_p") => {
                c.suite.schatten_p = value
                    .split(',')
                    .map(|p| exponent(p.trim()))
                    .collect::<Result<_, _>>()?;
            }
            (Section::Top, k) => return Err(format!("unknown key `{k}`")),
            (Section::Groups, k) => return Err(format!("unknown key `{k}` in [groups]")),
        }
        Ok(())
    }
}

/// Parses a configuration; relative `table` paths resolve against `base`.
pub fn parse_config_in(text: &str, base: Option<&Path>) -> Result<RunConfig, ConfigError> {
    let mut parser = Parser {
        config: RunConfig::default(),
        replaced: HashSet::new(),
        base,
    };
    let mut section = Section::Top;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let err = |column: usize, message: String| ConfigError {
            line,
            column: column + 1,
            message,
        };
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(err(indent + trimmed.len(), "expected `]`".into()));
            };
            section = match name.trim() {
                "samples" => Section::Samples,
                "tolerances" => Section::Tolerances,
                "groups" => Section::Groups,
                other => return Err(err(indent + 1, format!("unknown section `{other}`"))),
            };
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(err(indent + trimmed.len(), "expected `key = value`".into()));
        };
        let key = content[..eq].trim();
        let value = content[eq + 1..].trim();
        if key.is_empty() {
            return Err(err(indent, "missing key before `=`".into()));
        }
        if value.is_empty() {
            return Err(err(eq + 1, format!("missing value for `{key}`")));
        }
        let value_col = eq + 1 + (content[eq + 1..].len() - content[eq + 1..].trim_start().len());
        parser.set(section, key, value).map_err(|m| {
            let column = if m.starts_with("unknown key") {
                indent
            } else {
                value_col
            };
            err(column, m)
        })?;
    }
    let config = parser.config;
    config.suite.validate().map_err(|e| ConfigError {
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    Ok(config)
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_in(text, None)
}
