//! Declarative run configuration read from TOML. Command-line flags are
//! applied on top of the file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dispersion::DispersionLaw;
use crate::dynamics::{BveOptions, BveSigns, Normalization, ZIntegrand, DEFAULT_HORIZON, DEFAULT_STEP};
use crate::error::{Error, Result};
use crate::search::{Conservation, ResonanceCondition, SearchDomain, SearchOptions, Signs};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "LAMINA_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Dot,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "dot" => Ok(Format::Dot),
            _ => Err(Error::Config(format!("unknown output format `{s}` (json, csv or dot)"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionConfig {
    pub arity: Option<usize>,
    pub signs: Option<String>,
    pub conservation: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub prefilter: Option<f64>,
    pub quadrature: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    pub max_modes: Option<usize>,
    pub max_pairs: Option<usize>,
    pub max_solutions: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorConfig {
    pub step: Option<f64>,
    pub horizon: Option<f64>,
    pub sample_every: Option<usize>,
    pub quadrature_order: Option<usize>,
    pub normalization: Option<Normalization>,
    pub integrand: Option<ZIntegrand>,
    pub signs: Option<BveSigns>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub law: Option<String>,
    pub domain: Option<u32>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    #[serde(default)]
    pub condition: ConditionConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub limits: Limits,
    #[serde(default)]
    pub integrator: IntegratorConfig,
}

pub const DEFAULT_SAMPLE_EVERY: usize = 100;

fn positive(name: &str, v: Option<f64>) -> Result<()> {
    match v {
        Some(x) if !(x > 0.0 && x.is_finite()) => Err(Error::Config(format!("{name} must be positive, got {x}"))),
        _ => Ok(()),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig> {
        let c: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    /// The explicit path if given, else the one named by `LAMINA_CONFIG`,
    /// else the empty config.
    pub fn discover(explicit: Option<&Path>) -> Result<RunConfig> {
        match explicit {
            Some(p) => RunConfig::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => RunConfig::load(Path::new(&p)),
                _ => Ok(RunConfig::default()),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("prefilter tolerance", self.tolerances.prefilter)?;
        positive("quadrature tolerance", self.tolerances.quadrature)?;
        positive("integrator step", self.integrator.step)?;
        positive("integrator horizon", self.integrator.horizon)?;
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.integrator.sample_every == Some(0) {
            return Err(Error::Config("sample_every must be at least 1".into()));
        }
        if let Some(l) = &self.law {
            l.parse::<DispersionLaw>()?;
        }
        if let Some(s) = &self.condition.signs {
            s.parse::<Signs>()?;
        }
        if let Some(c) = &self.condition.conservation {
            c.parse::<Conservation>()?;
        }
        Ok(())
    }

    pub fn law(&self) -> Result<DispersionLaw> {
        self.law
            .as_deref()
            .ok_or_else(|| Error::Config("no dispersion law given".into()))?
            .parse()
    }

    pub fn domain(&self) -> Result<SearchDomain> {
        SearchDomain::new(
            self.domain
                .ok_or_else(|| Error::Config("no domain bound given".into()))?,
        )
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    /// Explicit signs win over the arity; the conservation defaults by law.
    pub fn condition(&self, law: &DispersionLaw) -> Result<ResonanceCondition> {
        let mut cond = match &self.condition.signs {
            Some(s) => ResonanceCondition::new(s.parse()?, Conservation::default_for(law)),
            None => ResonanceCondition::default_for(law, self.condition.arity.unwrap_or(3))?,
        };
        if let Some(a) = self.condition.arity {
            if a != cond.arity() {
                return Err(Error::Config(format!("arity {a} does not match signs {}", cond.signs)));
            }
        }
        if let Some(c) = &self.condition.conservation {
            cond.conservation = c.parse()?;
        }
        Ok(cond)
    }

    pub fn search_options(&self) -> SearchOptions {
        let d = SearchOptions::default();
        SearchOptions {
            workers: self.workers.unwrap_or(d.workers),
            prefilter_tolerance: self.tolerances.prefilter.unwrap_or(d.prefilter_tolerance),
            max_modes: self.limits.max_modes.unwrap_or(d.max_modes),
            max_pairs: self.limits.max_pairs.unwrap_or(d.max_pairs),
            max_solutions: self.limits.max_solutions.unwrap_or(d.max_solutions),
        }
    }

    pub fn bve_options(&self) -> BveOptions {
        let d = BveOptions::default();
        let i = &self.integrator;
        BveOptions {
            normalization: i.normalization.unwrap_or(d.normalization),
            integrand: i.integrand.unwrap_or(d.integrand),
            signs: i.signs.unwrap_or(d.signs),
            quadrature_order: i.quadrature_order.unwrap_or(d.quadrature_order),
            quadrature_tolerance: self.tolerances.quadrature.unwrap_or(d.quadrature_tolerance),
        }
    }

    pub fn step(&self) -> f64 {
        self.integrator.step.unwrap_or(DEFAULT_STEP)
    }

    pub fn horizon(&self) -> f64 {
        self.integrator.horizon.unwrap_or(DEFAULT_HORIZON)
    }

    pub fn sample_every(&self) -> usize {
        self.integrator.sample_every.unwrap_or(DEFAULT_SAMPLE_EVERY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config() {
        let c = RunConfig::parse(
            r#"
law = "gravity"
domain = 12
format = "csv"
workers = 2

[condition]
signs = "++--"

[tolerances]
prefilter = 1e-10
quadrature = 1e-9

[integrator]
step = 0.01
normalization = "orthonormal"
signs = "positive-third"
"#,
        )
        .unwrap();
        let law = c.law().unwrap();
        assert_eq!(law, DispersionLaw::GravityNormRoot);
        assert_eq!(c.condition(&law).unwrap().arity(), 4);
        assert_eq!(c.format(), Format::Csv);
        assert_eq!(c.search_options().prefilter_tolerance, 1e-10);
        let b = c.bve_options();
        assert_eq!(b.normalization, Normalization::Orthonormal);
        assert_eq!(b.signs, BveSigns::PositiveThird);
        assert_eq!(b.quadrature_tolerance, 1e-9);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(matches!(RunConfig::parse("lawz = \"drift\""), Err(Error::Config(_))));
        assert!(matches!(
            RunConfig::parse("[tolerances]\nprefilter = -1.0"),
            Err(Error::Config(_))
        ));
        assert!(matches!(RunConfig::parse("format = \"png\""), Err(Error::Config(_))));
        assert!(matches!(RunConfig::parse("law = \"nope\""), Err(Error::Config(_))));
        assert!(matches!(
            RunConfig::parse("[condition]\nextra = 1"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn arity_must_match_signs() {
        let c = RunConfig::parse("law = \"drift\"\n[condition]\narity = 4\nsigns = \"++-\"").unwrap();
        assert!(c.condition(&DispersionLaw::DriftInverseNorm).is_err());
    }
}
