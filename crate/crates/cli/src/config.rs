use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use logjet::combinat::is_prime;
use logjet::Params;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Binomials,
    Gamma,
    Ddzero,
    Relations,
    Homotopy,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Binomials,
        Suite::Gamma,
        Suite::Ddzero,
        Suite::Relations,
        Suite::Homotopy,
        Suite::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Binomials => "binomials",
            Suite::Gamma => "gamma",
            Suite::Ddzero => "ddzero",
            Suite::Relations => "relations",
            Suite::Homotopy => "homotopy",
            Suite::Lemmas => "lemmas",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What to check and over which window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub p: u32,
    pub m: u32,
    pub n: usize,
    /// Bound on `|I|` of enumerated symbols.
    pub max_weight: u64,
    /// Largest degree `r` checked.
    pub max_degree: usize,
    pub suites: Vec<Suite>,
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults for the given level: `max_weight = 2 p^m`, `max_degree = 2`,
    /// every suite.
    pub fn new(p: u32, m: u32, n: usize) -> Result<Self, UsageError> {
        let params = Params::new(p, m, n).map_err(|e| UsageError::Invalid(e.to_string()))?;
        Ok(RunConfig {
            p,
            m,
            n,
            max_weight: 2 * params.pm() as u64,
            max_degree: 2,
            suites: Suite::ALL.to_vec(),
            jobs: 1,
            out: None,
        })
    }

    pub fn with_suites(mut self, suites: &[Suite]) -> Self {
        self.suites = suites.to_vec();
        self
    }

    pub fn params(&self) -> Params {
        Params::new(self.p, self.m, self.n).expect("validated config")
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        if !is_prime(self.p) {
            return Err(UsageError::Invalid(format!("--p {} is not prime", self.p)));
        }
        Params::new(self.p, self.m, self.n).map_err(|e| UsageError::Invalid(e.to_string()))?;
        if self.max_degree < 1 {
            return Err(UsageError::Invalid(
                "--max-degree must be at least 1".into(),
            ));
        }
        if self.max_weight < 1 {
            return Err(UsageError::Invalid(
                "--max-weight must be at least 1".into(),
            ));
        }
        if self.jobs < 1 {
            return Err(UsageError::Invalid("--jobs must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum UsageError {
    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Flags(#[from] clap::Error),
}

impl UsageError {
    /// True for `--help` and `--version`, which are not failures.
    pub fn is_informational(&self) -> bool {
        use clap::error::ErrorKind;
        matches!(
            self,
            UsageError::Flags(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion)
        )
    }
}

/// Checks the homotopy of the level-m log jet complex over F_p.
#[derive(Debug, Parser)]
#[command(name = "logjet", version)]
struct Flags {
    /// Prime p.
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Level m.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Number of coordinates.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Bound on |I| of enumerated symbols [default: 2 p^m].
    #[arg(long)]
    max_weight: Option<u64>,
    /// Largest degree checked.
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Suite to run; repeat for several [default: all].
    #[arg(long = "suite", value_enum)]
    suites: Vec<Suite>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report destination [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn parse_flags<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let flags = Flags::try_parse_from(argv)?;
    if !is_prime(flags.p) {
        return Err(UsageError::Invalid(format!("--p {} is not prime", flags.p)));
    }
    let mut config = RunConfig::new(flags.p, flags.m, flags.n)?;
    if let Some(w) = flags.max_weight {
        config.max_weight = w;
    }
    config.max_degree = flags.max_degree;
    if !flags.suites.is_empty() {
        let mut suites = flags.suites;
        suites.sort();
        suites.dedup();
        config.suites = suites;
    }
    config.jobs = flags.jobs;
    config.out = flags.out;
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = parse_flags(["logjet"]).unwrap();
        assert_eq!((c.p, c.m, c.n, c.max_weight, c.max_degree), (2, 1, 1, 4, 2));
        assert_eq!(c.suites, Suite::ALL.to_vec());
        assert_eq!(c.jobs, 1);
        assert!(c.out.is_none());
    }

    #[test]
    fn explicit_flags() {
        let c = parse_flags(["logjet", "--p", "3", "--m", "1", "--suite", "homotopy"]).unwrap();
        assert_eq!(c.p, 3);
        assert_eq!(c.max_weight, 6);
        assert_eq!(c.suites, vec![Suite::Homotopy]);
        let c = parse_flags([
            "logjet", "--suite", "lemmas", "--suite", "gamma", "--suite", "lemmas",
        ])
        .unwrap();
        assert_eq!(c.suites, vec![Suite::Gamma, Suite::Lemmas]);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(
            parse_flags(["logjet", "--p", "4"]),
            Err(UsageError::Invalid(_))
        ));
        assert!(matches!(
            parse_flags(["logjet", "--p", "x"]),
            Err(UsageError::Flags(_))
        ));
        assert!(parse_flags(["logjet", "--max-degree", "0"]).is_err());
        assert!(parse_flags(["logjet", "--n", "0"]).is_err());
        assert!(parse_flags(["logjet", "--suite", "nope"]).is_err());
        assert!(parse_flags(["logjet", "--jobs", "0"]).is_err());
    }

    #[test]
    fn help_is_informational() {
        let err = parse_flags(["logjet", "--help"]).unwrap_err();
        assert!(err.is_informational());
    }
}
