use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::Error;

/// Parsed form of an oracle spec string such as `knoisy:12` or `flip:5,0.1`.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleSpec {
    None,
    Perfect { rho: f64 },
    KNoisy { rho: f64 },
    Flip { rho: f64, delta: f64 },
    /// Predictor from the first graph of a snapshot sequence, or from `path`.
    Snapshot { path: PathBuf, keep: f64 },
    Prefix { split: f64 },
    FirstPass { rho: f64, epsilon: f64 },
    ValueExp { alpha: f64, beta: f64 },
    ValueLin { alpha: f64, beta: f64 },
}

impl OracleSpec {
    pub fn is_value(&self) -> bool {
        matches!(self, OracleSpec::ValueExp { .. } | OracleSpec::ValueLin { .. })
    }

    /// Predictor tables usable both as scores and as threshold verdicts.
    pub fn is_predictor(&self) -> bool {
        matches!(self, OracleSpec::Snapshot { .. } | OracleSpec::Prefix { .. })
    }

    /// Explicit heavy threshold, when the spec carries one.
    pub fn rho(&self) -> Option<f64> {
        match *self {
            OracleSpec::Perfect { rho }
            | OracleSpec::KNoisy { rho }
            | OracleSpec::Flip { rho, .. }
            | OracleSpec::FirstPass { rho, .. } => Some(rho),
            _ => None,
        }
    }
}

fn number(kind: &str, field: &str, s: &str) -> Result<f64, Error> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Config(format!("{kind}: invalid {field} `{s}`")))
}

fn two<'a>(kind: &str, args: &'a str) -> Result<(&'a str, &'a str), Error> {
    args.rsplit_once(',')
        .ok_or_else(|| Error::Config(format!("{kind}: expected two comma-separated values")))
}

fn positive(kind: &str, field: &str, v: f64) -> Result<f64, Error> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Config(format!("{kind}: {field} must be positive")))
    }
}

impl FromStr for OracleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let kind = kind.trim();
        let spec = match kind {
            "none" if args.is_empty() => OracleSpec::None,
            "perfect" => OracleSpec::Perfect { rho: positive(kind, "rho", number(kind, "rho", args)?)? },
            "knoisy" => OracleSpec::KNoisy { rho: positive(kind, "rho", number(kind, "rho", args)?)? },
            "flip" => {
                let (a, b) = two(kind, args)?;
                let delta = number(kind, "delta", b)?;
                if !(0.0..=1.0).contains(&delta) {
                    return Err(Error::Config("flip: delta must be in [0, 1]".into()));
                }
                OracleSpec::Flip { rho: positive(kind, "rho", number(kind, "rho", a)?)?, delta }
            }
            "snapshot" => {
                let (path, frac) = two(kind, args)?;
                let keep = number(kind, "fraction", frac)?;
                if !(keep > 0.0 && keep <= 1.0) {
                    return Err(Error::Config("snapshot: fraction must be in (0, 1]".into()));
                }
                OracleSpec::Snapshot { path: PathBuf::from(path), keep }
            }
            "prefix" => {
                let split = number(kind, "fraction", args)?;
                if !(split > 0.0 && split < 1.0) {
                    return Err(Error::Config("prefix: fraction must be in (0, 1)".into()));
                }
                OracleSpec::Prefix { split }
            }
            "firstpass" => {
                let (a, b) = two(kind, args)?;
                let epsilon = number(kind, "epsilon", b)?;
                if !(epsilon > 0.0 && epsilon <= 1.0) {
                    return Err(Error::Config("firstpass: epsilon must be in (0, 1]".into()));
                }
                OracleSpec::FirstPass { rho: positive(kind, "rho", number(kind, "rho", a)?)?, epsilon }
            }
            "value-exp" | "value-lin" => {
                let (a, b) = two(kind, args)?;
                let (alpha, beta) = (number(kind, "alpha", a)?, number(kind, "beta", b)?);
                if alpha < 1.0 || beta < 0.0 {
                    return Err(Error::Config(format!("{kind}: need alpha >= 1 and beta >= 0")));
                }
                if kind == "value-exp" {
                    OracleSpec::ValueExp { alpha, beta }
                } else {
                    OracleSpec::ValueLin { alpha, beta }
                }
            }
            _ => return Err(Error::Config(format!("unknown oracle spec `{s}`"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for OracleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleSpec::None => write!(f, "none"),
            OracleSpec::Perfect { rho } => write!(f, "perfect:{rho}"),
            OracleSpec::KNoisy { rho } => write!(f, "knoisy:{rho}"),
            OracleSpec::Flip { rho, delta } => write!(f, "flip:{rho},{delta}"),
            OracleSpec::Snapshot { path, keep } => write!(f, "snapshot:{},{keep}", path.display()),
            OracleSpec::Prefix { split } => write!(f, "prefix:{split}"),
            OracleSpec::FirstPass { rho, epsilon } => write!(f, "firstpass:{rho},{epsilon}"),
            OracleSpec::ValueExp { alpha, beta } => write!(f, "value-exp:{alpha},{beta}"),
            OracleSpec::ValueLin { alpha, beta } => write!(f, "value-lin:{alpha},{beta}"),
        }
    }
}
