//! Declarative suite configuration (TOML).
//!
//! ```toml
//! suite = "sharpness"
//! seed = 7
//! format = "json"
//! tolerance = 1e-6
//!
//! [params]
//! measure = "mu1"
//! tau = [3.141592653589793]
//! p = [2.0]
//! alpha = [1.0]
//! r = [0.0, 1.0]
//! n = [1, 2, 4]
//!
//! [overrides]
//! constant = 0.5
//! ```
//!
//! Unknown keys are rejected. Every error carries the line and column of the
//! offending value.

use std::f64::consts::PI;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    A6101,
    Sharpness,
    JacksonFuzz,
    WidthsCertify,
    ModulusOracle,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::A6101, Suite::Sharpness, Suite::JacksonFuzz, Suite::WidthsCertify, Suite::ModulusOracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::A6101 => "a6101",
            Suite::Sharpness => "sharpness",
            Suite::JacksonFuzz => "jackson-fuzz",
            Suite::WidthsCertify => "widths-certify",
            Suite::ModulusOracle => "modulus-oracle",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            format!("unknown suite {s:?} (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    lambda: Option<Vec<Spanned<f64>>>,
    n: Option<Vec<Spanned<i64>>>,
    p: Option<Vec<Spanned<f64>>>,
    alpha: Option<Vec<Spanned<f64>>>,
    tau: Option<Vec<Spanned<f64>>>,
    r: Option<Vec<Spanned<f64>>>,
    samples: Option<Spanned<i64>>,
    measure: Option<Spanned<String>>,
    majorant: Option<Spanned<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOverrides {
    constant: Option<Spanned<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    suite: Spanned<String>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    tolerance: Option<Spanned<f64>>,
    #[serde(default)]
    params: RawParams,
    #[serde(default)]
    overrides: RawOverrides,
}

/// A validated suite configuration with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub tolerance: f64,
    pub lambda: Vec<u32>,
    pub n: Vec<u32>,
    pub p: Vec<f64>,
    pub alpha: Vec<f64>,
    pub tau: Vec<f64>,
    pub r: Vec<f64>,
    pub samples: usize,
    pub measure: String,
    pub majorant: Option<String>,
    /// Replaces the expected value of every row (for exercising failures).
    pub constant_override: Option<f64>,
    /// Directory that relative table paths resolve against.
    pub base_dir: PathBuf,
}

impl SuiteConfig {
    pub fn defaults(suite: Suite) -> Self {
        let (tolerance, p, alpha, r, n, samples): (f64, Vec<f64>, Vec<f64>, Vec<f64>, Vec<u32>, usize) = match suite {
            Suite::A6101 => (1e-9, vec![], vec![], vec![], vec![1], 0),
            Suite::Sharpness => (1e-6, vec![2.0], vec![1.0], vec![0.0, 1.0, 2.0], vec![1, 2, 4], 0),
            Suite::JacksonFuzz => (1e-9, vec![1.0, 1.5, 2.0, 3.0], vec![1.0], vec![0.0, 1.0], vec![1, 2, 3, 4], 1000),
            Suite::WidthsCertify => (1e-6, vec![2.0], vec![1.0], vec![1.0], vec![1, 2, 4], 200),
            Suite::ModulusOracle => (1e-6, vec![1.0, 1.5, 2.0, 3.0], vec![0.5, 1.0, 2.0, 3.0], vec![], vec![], 200),
        };
        SuiteConfig {
            suite,
            seed: 0,
            out: None,
            format: Format::Json,
            tolerance,
            lambda: if suite == Suite::A6101 { (1..=5).collect() } else { vec![] },
            n,
            p,
            alpha,
            tau: vec![PI],
            r,
            samples,
            measure: "mu1".into(),
            majorant: None,
            constant_override: None,
            base_dir: PathBuf::from("."),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, path, base)
    }

    pub fn parse(text: &str, path: &Path, base_dir: PathBuf) -> Result<Self> {
        let at = |span: Option<Range<usize>>, message: String| {
            let (line, column) = span.map_or((1, 1), |s| line_column(text, s.start));
            CliError::Config { path: path.to_path_buf(), line, column, message }
        };
        let raw: RawConfig = toml::from_str(text).map_err(|e| at(e.span(), e.message().to_string()))?;
        let suite: Suite = raw.suite.get_ref().parse().map_err(|m| at(Some(raw.suite.span()), m))?;
        let mut cfg = SuiteConfig::defaults(suite);
        cfg.base_dir = base_dir;
        cfg.seed = raw.seed.unwrap_or(cfg.seed);
        cfg.out = raw.out;
        cfg.format = raw.format.unwrap_or(cfg.format);
        if let Some(t) = raw.tolerance {
            cfg.tolerance = checked(&t, |v| v.is_finite() && *v >= 0.0, "tolerance must be a nonnegative number", &at)?;
        }
        let params = raw.params;
        if let Some(list) = params.lambda {
            cfg.lambda = each(&list, |v| *v >= 1.0 && v.fract() == 0.0, "lambda must be a natural number", &at)?
                .into_iter()
                .map(|v| v as u32)
                .collect();
        }
        if let Some(list) = params.n {
            cfg.n = each(&list, |v| (1..=i64::from(u32::MAX / 2)).contains(v), "n must be a positive integer", &at)?
                .into_iter()
                .map(|v| v as u32)
                .collect();
        }
        if let Some(list) = params.p {
            cfg.p = each(&list, |v| v.is_finite() && *v >= 1.0, "p must be a finite number >= 1", &at)?;
        }
        if let Some(list) = params.alpha {
            cfg.alpha = each(&list, |v| v.is_finite() && *v > 0.0, "alpha must be positive", &at)?;
        }
        let mut tau_spans = Vec::new();
        if let Some(list) = params.tau {
            cfg.tau = each(&list, |v| v.is_finite() && *v > 0.0, "tau must be positive", &at)?;
            tau_spans = list.iter().map(Spanned::span).collect();
        }
        if let Some(list) = params.r {
            cfg.r = each(&list, |v| v.is_finite() && *v >= 0.0, "r must be nonnegative", &at)?;
        }
        if let Some(s) = params.samples {
            cfg.samples = checked(&s, |v| *v >= 0, "samples must be nonnegative", &at)? as usize;
        }
        if let Some(m) = params.measure {
            for &tau in &cfg.tau {
                crate::selectors::measure(m.get_ref(), tau, &cfg.base_dir).map_err(|e| at(Some(m.span()), e.to_string()))?;
            }
            cfg.measure = m.into_inner();
        } else if let Some(i) = cfg.tau.iter().position(|&t| t > PI) {
            let message = format!("the default measure mu1 needs tau <= pi, got {}", cfg.tau[i]);
            return Err(at(tau_spans.get(i).cloned(), message));
        }
        if let Some(m) = params.majorant {
            crate::selectors::majorant(m.get_ref()).map_err(|e| at(Some(m.span()), e.to_string()))?;
            cfg.majorant = Some(m.into_inner());
        }
        if let Some(c) = raw.overrides.constant {
            cfg.constant_override = Some(checked(&c, |v| v.is_finite(), "constant must be finite", &at)?);
        }
        Ok(cfg)
    }
}

fn checked<T: Clone, F>(value: &Spanned<T>, ok: impl Fn(&T) -> bool, message: &str, at: &F) -> Result<T>
where
    F: Fn(Option<Range<usize>>, String) -> CliError,
{
    if ok(value.get_ref()) {
        Ok(value.get_ref().clone())
    } else {
        Err(at(Some(value.span()), message.to_string()))
    }
}

fn each<T: Clone, F>(list: &[Spanned<T>], ok: impl Fn(&T) -> bool, message: &str, at: &F) -> Result<Vec<T>>
where
    F: Fn(Option<Range<usize>>, String) -> CliError,
{
    list.iter().map(|v| checked(v, &ok, message, at)).collect()
}

/// 1-based line and column of a byte offset.
fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<SuiteConfig> {
        SuiteConfig::parse(text, Path::new("cfg.toml"), PathBuf::from("."))
    }

    #[test]
    fn defaults_fill_in() {
        let cfg = parse("suite = \"a6101\"\n").unwrap();
        assert_eq!(cfg.lambda, vec![1, 2, 3, 4, 5]);
        assert_eq!(cfg.tolerance, 1e-9);
        assert_eq!(cfg.format, Format::Json);
    }

    #[test]
    fn values_override_defaults() {
        let cfg = parse("suite = \"sharpness\"\nseed = 3\nformat = \"csv\"\n[params]\np = [1.0]\nn = []\n").unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.p, vec![1.0]);
        assert!(cfg.n.is_empty());
    }

    #[test]
    fn errors_are_line_anchored() {
        let err = parse("suite = \"sharpness\"\n[params]\np = [2.0, 0.5]\n").unwrap_err().to_string();
        assert!(err.starts_with("cfg.toml:3:11:"), "{err}");
        let err = parse("suite = \"sharpness\"\nbogus = 1\n").unwrap_err().to_string();
        assert!(err.starts_with("cfg.toml:2:1:"), "{err}");
        let err = parse("suite = \"nope\"\n").unwrap_err().to_string();
        assert!(err.starts_with("cfg.toml:1:9:") && err.contains("unknown suite"), "{err}");
        let err = parse("suite = \"a6101\"\n[params]\nlambda = [1.5]\n").unwrap_err().to_string();
        assert!(err.starts_with("cfg.toml:3:11:"), "{err}");
    }

    #[test]
    fn line_column_counts_from_one() {
        assert_eq!(line_column("ab\ncd", 0), (1, 1));
        assert_eq!(line_column("ab\ncd", 4), (2, 2));
    }
}
