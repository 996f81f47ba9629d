//! Per-search mode table shared by both search routes.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::classes::{classify_mode, ClassId};
use crate::dispersion::{DispersionLaw, WaveVector};
use crate::error::{Error, Result};
use crate::exact::{RadicalNumber, Rational};

use super::{admissible, certificate_from_classes, tags_for, Conservation, ResonantSet, SearchDomain, Signs};

/// Modes of a domain with nonzero frequency, in ascending order, so that
/// comparing indices compares modes.
pub(crate) struct ModeTable {
    pub law: DispersionLaw,
    pub modes: Vec<WaveVector>,
    pub omega: Vec<f64>,
    /// Exact frequency at the law's degree; empty for float laws.
    pub exact: Vec<RadicalNumber>,
    pub class: Vec<ClassId>,
    index: HashMap<WaveVector, u32>,
    by_m: HashMap<i32, Vec<u32>>,
    by_omega: Vec<(f64, u32)>,
    pub max_abs_omega: f64,
}

impl ModeTable {
    pub fn build(law: &DispersionLaw, domain: &SearchDomain) -> Result<ModeTable> {
        let degree = law.degree();
        let split = law.is_exact() && !law.is_rational_valued();
        let mut t = ModeTable {
            law: *law,
            modes: Vec::new(),
            omega: Vec::new(),
            exact: Vec::new(),
            class: Vec::new(),
            index: HashMap::new(),
            by_m: HashMap::new(),
            by_omega: Vec::new(),
            max_abs_omega: 0.0,
        };
        for k in domain.modes(law) {
            let w = law.omega_float(k)?;
            let exact = match degree {
                Some(c) => Some(law.omega_exact(k)?.to_radical(c)),
                None => None,
            };
            let zero = match exact {
                Some(e) => e.is_zero(),
                None => w == 0.0,
            };
            if zero {
                continue;
            }
            let i = t.modes.len() as u32;
            t.modes.push(k);
            t.omega.push(w);
            if let Some(e) = exact {
                t.exact.push(e);
            }
            t.class.push(if split {
                classify_mode(law, k)?.class_id
            } else {
                ClassId::UNIVERSAL
            });
            t.index.insert(k, i);
            t.by_m.entry(k.m).or_default().push(i);
            t.by_omega.push((w, i));
            t.max_abs_omega = t.max_abs_omega.max(w.abs());
        }
        t.by_omega.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn lookup(&self, k: WaveVector) -> Option<u32> {
        self.index.get(&k).copied()
    }

    pub fn with_m(&self, m: i32) -> &[u32] {
        self.by_m.get(&m).map_or(&[], Vec::as_slice)
    }

    /// Indices whose float frequency lies in `[lo, hi]`.
    pub fn omega_window(&self, lo: f64, hi: f64) -> impl Iterator<Item = u32> + '_ {
        let start = self.by_omega.partition_point(|&(w, _)| w < lo);
        self.by_omega[start..]
            .iter()
            .take_while(move |&&(w, _)| w <= hi)
            .map(|&(_, i)| i)
    }

    /// Builds the canonical solution for table indices in tuple order, or
    /// `None` when the tuple is not admissible as written.
    pub fn solution(&self, idx: &[u32], signs: Signs, conservation: Conservation) -> Result<Option<ResonantSet>> {
        let mut modes = [WaveVector::default(); 4];
        let mut classes = [ClassId::UNIVERSAL; 4];
        for (p, &i) in idx.iter().enumerate() {
            modes[p] = self.modes[i as usize];
            classes[p] = self.class[i as usize];
        }
        let s = idx.len();
        if !admissible(&modes[..s], signs, conservation) {
            return Ok(None);
        }
        let certificate = certificate_from_classes(&self.law, &classes[..s])?;
        let tags = tags_for(&modes[..s], signs, &self.law);
        ResonantSet::from_parts(&modes[..s], signs, tags, certificate).map(Some)
    }
}

/// Packs the conserved components of a momentum sum into one hash key.
pub(crate) fn momentum_key(conservation: Conservation, m: i64, n: i64) -> u64 {
    match conservation {
        Conservation::FrequencyOnly => 0,
        Conservation::FrequencyAndZonal => m as i32 as u32 as u64,
        Conservation::FrequencyAndVector => ((m as i32 as u32 as u64) << 32) | n as i32 as u32 as u64,
    }
}

/// Shared solution counter enforcing the capacity limit across workers.
pub(crate) struct Budget {
    used: AtomicUsize,
    limit: usize,
}

impl Budget {
    pub fn new(limit: usize) -> Budget {
        Budget {
            used: AtomicUsize::new(0),
            limit,
        }
    }

    pub fn take(&self, n: usize) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        // Each solution can surface at most twice before deduplication.
        if used > self.limit.saturating_mul(2) {
            return Err(Error::Capacity {
                what: "solution",
                count: used as u128,
                limit: self.limit as u128,
            });
        }
        Ok(())
    }
}

pub(crate) fn check_pairs(count: usize, limit: usize) -> Result<()> {
    if count > limit {
        return Err(Error::Capacity {
            what: "pair table entry",
            count: count as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

pub(crate) fn finish(chunks: Vec<Vec<ResonantSet>>, limit: usize) -> Result<super::SolutionSet> {
    let all: Vec<ResonantSet> = chunks.into_iter().flatten().collect();
    let set = super::SolutionSet::from_vec(all);
    if set.len() > limit {
        return Err(Error::Capacity {
            what: "solution",
            count: set.len() as u128,
            limit: limit as u128,
        });
    }
    Ok(set)
}

pub(crate) fn signed(v: Rational, s: i8) -> Result<Rational> {
    if s > 0 {
        Ok(v)
    } else {
        v.checked_neg()
    }
}
