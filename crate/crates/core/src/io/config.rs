//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # strong dependence
//! theta = 10
//! gamma_t = 0.25
//! gamma_s = 0.5
//! n = 1000
//! m = 5000
//! replications = 2000
//! ```
//!
//! Keys: `gamma_t`, `gamma_s`, `source_marginal` (`pareto`, `normal`,
//! `beta`), `beta_shape`, `y_m`, `theta`, `n`, `k`, `k_source`, `m`,
//! `replications`, `seed`, `estimators` (comma separated). `k` defaults to
//! `round(0.1 n)`, `k_source` to `k`. Without `source_marginal` the source
//! family follows the sign of `gamma_s`. Unknown keys are errors.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::estimators::Method;
use crate::sim::{ExperimentConfig, Marginal};

const KEYS: [&str; 13] = [
    "gamma_t",
    "gamma_s",
    "source_marginal",
    "beta_shape",
    "y_m",
    "theta",
    "n",
    "k",
    "k_source",
    "m",
    "replications",
    "seed",
    "estimators",
];

struct Entries(BTreeMap<String, (usize, String)>);

impl Entries {
    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some((line, raw)) => raw.parse().map(Some).map_err(|_| Error::Parse {
                line: *line,
                message: format!("invalid value `{raw}` for `{key}`"),
            }),
        }
    }

    fn require<T: FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?
            .ok_or_else(|| Error::InvalidParameter(format!("missing required key `{key}`")))
    }
}

/// Parses config text into a validated [`ExperimentConfig`].
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut entries = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
            line,
            message: format!("expected `key = value`, got `{content}`"),
        })?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(Error::Parse {
                line,
                message: format!("unknown key `{key}`"),
            });
        }
        if entries
            .insert(key.to_string(), (line, value.trim().to_string()))
            .is_some()
        {
            return Err(Error::Parse {
                line,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    let e = Entries(entries);

    let y_m: f64 = e.get("y_m")?.unwrap_or(1e-3);
    let family: Option<String> = e.get("source_marginal")?;
    let source = match family.as_deref() {
        None => Marginal::with_evi(e.require("gamma_s")?, y_m),
        Some("pareto") => Marginal::Pareto {
            gamma: e.require("gamma_s")?,
            y_m,
        },
        Some("normal") => Marginal::StandardNormal,
        Some("beta") => match e.get::<f64>("beta_shape")? {
            Some(shape_b) => Marginal::Beta { shape_b },
            None => Marginal::Beta {
                shape_b: -1.0 / e.require::<f64>("gamma_s")?,
            },
        },
        Some(other) => {
            return Err(Error::InvalidParameter(format!(
                "unknown source_marginal `{other}`"
            )))
        }
    };

    let n: usize = e.require("n")?;
    let k = e
        .get("k")?
        .unwrap_or_else(|| ExperimentConfig::default_k(n));
    let estimators = match e.get::<String>("estimators")? {
        None => Method::ALL.to_vec(),
        Some(list) => parse_methods(&list)?,
    };
    let config = ExperimentConfig {
        gamma_t: e.require("gamma_t")?,
        y_m,
        source,
        theta: e.require("theta")?,
        n,
        k,
        k_source: e.get("k_source")?.unwrap_or(k),
        m: e.require("m")?,
        replications: e.get("replications")?.unwrap_or(10_000),
        seed: e.get("seed")?.unwrap_or(0),
        estimators,
    };
    config.validate()?;
    Ok(config)
}

/// Comma-separated estimator names.
pub fn parse_methods(list: &str) -> Result<Vec<Method>> {
    let methods = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Method>>>()?;
    if methods.is_empty() {
        return Err(Error::InvalidParameter("empty estimator list".into()));
    }
    Ok(methods)
}

pub fn read_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// Serializes a config so that [`parse_config`] reproduces it.
pub fn write_config(config: &ExperimentConfig) -> String {
    let mut lines = vec![
        format!("theta = {}", config.theta),
        format!("gamma_t = {}", config.gamma_t),
        format!("y_m = {}", config.y_m),
    ];
    match config.source {
        Marginal::Pareto { gamma, .. } => {
            lines.push("source_marginal = pareto".into());
            lines.push(format!("gamma_s = {gamma}"));
        }
        Marginal::StandardNormal => lines.push("source_marginal = normal".into()),
        Marginal::Beta { shape_b } => {
            lines.push("source_marginal = beta".into());
            lines.push(format!("beta_shape = {shape_b}"));
        }
    }
    lines.extend([
        format!("n = {}", config.n),
        format!("k = {}", config.k),
        format!("k_source = {}", config.k_source),
        format!("m = {}", config.m),
        format!("replications = {}", config.replications),
        format!("seed = {}", config.seed),
        format!(
            "estimators = {}",
            config
                .estimators
                .iter()
                .map(|m| m.name())
                .collect::<Vec<_>>()
                .join(",")
        ),
    ]);
    lines.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config("theta = 10\ngamma_t = 0.25\ngamma_s = 0.5\nn = 1000\nm = 5000\n")
            .unwrap();
        assert_eq!(c, ExperimentConfig::new(10.0, 0.25, 0.5, 1000, 5000));
    }

    #[test]
    fn comments_and_explicit_keys() {
        let text =
            "# weak\ntheta = 1.4  # copula\ngamma_t=0.25\ngamma_s = 0\nn = 500\nk = 40\nm = 100\n\
                    replications = 50\nseed = 7\nestimators = hill, transferred_hill\n";
        let c = parse_config(text).unwrap();
        assert_eq!(c.source, Marginal::StandardNormal);
        assert_eq!((c.k, c.k_source, c.seed, c.replications), (40, 40, 7, 50));
        assert_eq!(c.estimators, vec![Method::Hill, Method::TransferredHill]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let base = "theta = 10\ngamma_t = 0.25\ngamma_s = 0.5\nn = 1000\nm = 5000\n";
        assert!(matches!(
            parse_config(&format!("{base}colour = red\n")),
            Err(Error::Parse { line: 6, .. })
        ));
        assert!(matches!(
            parse_config(&format!("{base}seed = -1\n")),
            Err(Error::Parse { line: 6, .. })
        ));
        assert!(matches!(
            parse_config(&format!("{base}theta = 3\n")),
            Err(Error::Parse { line: 6, .. })
        ));
        assert!(matches!(
            parse_config("theta 10\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_config("theta = 10\n"),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn written_config_parses_back() {
        let mut c = ExperimentConfig::new(1.4, 0.33, -0.5, 777, 123)
            .with_replications(99)
            .with_seed(42);
        c.k_source = 60;
        assert_eq!(parse_config(&write_config(&c)).unwrap(), c);
        let c = ExperimentConfig::new(5.0, 2.0, 0.0, 100, 10);
        assert_eq!(parse_config(&write_config(&c)).unwrap(), c);
    }
}
