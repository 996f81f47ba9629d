//! Power-law spectrum `C·k^α` sampled on the wavenumbers of a lattice
//! domain, with the nodes taking part in resonances marked.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::export::{F17, SCHEMA_VERSION};
use crate::dispersion::{DispersionLaw, WaveVector};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::search::{SearchDomain, SolutionSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumPoint {
    pub k: F17,
    pub value: F17,
    /// Lattice nodes with this wavenumber.
    pub nodes: usize,
    /// Of those, nodes found in some resonance.
    pub resonant_nodes: usize,
    pub hole: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSeries {
    pub schema_version: u32,
    pub law: Option<DispersionLaw>,
    pub domain: Option<SearchDomain>,
    pub exponent: Rational,
    pub constant: F17,
    pub flagged: bool,
    pub points: Vec<SpectrumPoint>,
}

fn power(k: f64, exponent: Rational, constant: f64) -> f64 {
    constant * k.powf(exponent.to_f64())
}

fn check_constant(constant: f64) -> Result<()> {
    if !(constant > 0.0 && constant.is_finite()) {
        return Err(Error::Precondition(format!(
            "spectrum constant must be positive, got {constant}"
        )));
    }
    Ok(())
}

impl SpectrumSeries {
    /// Series on explicit wavenumbers, sorted and deduplicated.
    pub fn from_wavenumbers(ks: &[f64], exponent: Rational, constant: f64) -> Result<SpectrumSeries> {
        check_constant(constant)?;
        if let Some(k) = ks.iter().find(|k| !(**k > 0.0 && k.is_finite())) {
            return Err(Error::Domain(format!("wavenumbers must be positive, got {k}")));
        }
        let mut ks = ks.to_vec();
        ks.sort_by(f64::total_cmp);
        ks.dedup();
        let points = ks
            .into_iter()
            .map(|k| SpectrumPoint {
                k: F17(k),
                value: F17(power(k, exponent, constant)),
                nodes: 0,
                resonant_nodes: 0,
                hole: false,
            })
            .collect();
        Ok(SpectrumSeries {
            schema_version: SCHEMA_VERSION,
            law: None,
            domain: None,
            exponent,
            constant: F17(constant),
            flagged: false,
            points,
        })
    }

    /// Series over the distinct wavenumbers of the domain. With `solutions`,
    /// every wavenumber carrying a resonant node is flagged as a hole.
    pub fn over_domain(
        law: &DispersionLaw,
        domain: &SearchDomain,
        exponent: Rational,
        constant: f64,
        solutions: Option<&SolutionSet>,
    ) -> Result<SpectrumSeries> {
        check_constant(constant)?;
        let resonant: BTreeSet<WaveVector> = solutions
            .map(|s| s.iter().flat_map(|r| r.modes().iter().copied()).collect())
            .unwrap_or_default();
        // Exact grouping key: n, m or m² + n².
        let key = |k: WaveVector| match law {
            DispersionLaw::RossbySphere => k.n as u64,
            _ if law.is_scalar() => k.m.unsigned_abs() as u64,
            _ => k.norm_squared(),
        };
        let mut by_key: BTreeMap<u64, (f64, usize, usize)> = BTreeMap::new();
        for k in domain.modes(law) {
            let e = by_key.entry(key(k)).or_insert((law.wavenumber(k), 0, 0));
            e.1 += 1;
            if resonant.contains(&k) {
                e.2 += 1;
            }
        }
        let points = by_key
            .into_values()
            .map(|(k, nodes, hits)| SpectrumPoint {
                k: F17(k),
                value: F17(power(k, exponent, constant)),
                nodes,
                resonant_nodes: hits,
                hole: hits > 0,
            })
            .collect();
        Ok(SpectrumSeries {
            schema_version: SCHEMA_VERSION,
            law: Some(*law),
            domain: Some(*domain),
            exponent,
            constant: F17(constant),
            flagged: solutions.is_some(),
            points,
        })
    }

    pub fn holes(&self) -> impl Iterator<Item = &SpectrumPoint> {
        self.points.iter().filter(|p| p.hole)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["k", "value", "nodes", "resonant_nodes", "hole"])?;
        for p in &self.points {
            w.write_record([
                super::export::format_f17(p.k.0),
                super::export::format_f17(p.value.0),
                p.nodes.to_string(),
                p.resonant_nodes.to_string(),
                p.hole.to_string(),
            ])?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(std::io::Error::other(e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_values() {
        let s = SpectrumSeries::from_wavenumbers(&[9.0, 1.0, 4.0], Rational::new(-3, 2).unwrap(), 1.0).unwrap();
        let v: Vec<f64> = s.points.iter().map(|p| p.value.0).collect();
        assert_eq!(v[0], 1.0);
        assert_eq!(v[1], 0.125);
        assert!((v[2] - 1.0 / 27.0).abs() < 1e-16);
        let flat = SpectrumSeries::from_wavenumbers(&[2.0, 3.0], Rational::ZERO, 2.5).unwrap();
        assert!(flat.points.iter().all(|p| p.value.0 == 2.5));
    }

    #[test]
    fn constant_must_be_positive() {
        assert!(matches!(
            SpectrumSeries::from_wavenumbers(&[1.0], Rational::ONE, 0.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn domain_wavenumbers_sorted() {
        let law = DispersionLaw::GravityNormRoot;
        let s = SpectrumSeries::over_domain(&law, &SearchDomain::new(3).unwrap(), Rational::ONE, 1.0, None).unwrap();
        assert!(s.points.windows(2).all(|w| w[0].k.0 < w[1].k.0));
        assert_eq!(s.points.iter().map(|p| p.nodes).sum::<usize>(), 48);
        assert_eq!(s.holes().count(), 0);
    }
}
