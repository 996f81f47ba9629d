//! Enumeration of resonant triads and quartets on a bounded lattice.
//!
//! Two independent routes produce the same solution set:
//! [`brute_force_search`] screens every admissible tuple with floating sums
//! and confirms candidates with exact radical arithmetic, while
//! [`class_based_search`] buckets modes by class and solves the reduced
//! rational condition inside each bucket. Both emit tuples in one canonical
//! form with certificates derived from the modes alone, so their outputs
//! compare as plain sets.

mod brute;
mod class_based;
mod graph;
mod table;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classes::{classify_mode, split_modes, ClassId, PerClassEquation};
use crate::dispersion::{DispersionLaw, PowerBase, WaveVector};
use crate::error::{Error, Result};
use crate::exact::{radical_sum_is_zero, RadicalSum, Rational};

pub use brute::{brute_force_search, brute_force_search_with};
pub use class_based::{class_based_search, class_based_search_with};
pub use graph::{build_interaction_graph, nonresonant_census, InteractionGraph};

/// Which momentum components are conserved alongside the frequency sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conservation {
    FrequencyOnly,
    /// `Σ σᵢ mᵢ = 0` and `Σ σᵢ nᵢ = 0`.
    FrequencyAndVector,
    /// `Σ σᵢ mᵢ = 0` only; spherical modes.
    FrequencyAndZonal,
}

impl Conservation {
    pub fn default_for(law: &DispersionLaw) -> Conservation {
        match law {
            DispersionLaw::RossbySphere => Conservation::FrequencyAndZonal,
            _ if law.is_scalar() => Conservation::FrequencyOnly,
            _ => Conservation::FrequencyAndVector,
        }
    }

    fn holds(self, modes: &[WaveVector], signs: Signs) -> bool {
        let (mut sm, mut sn) = (0i64, 0i64);
        for (i, k) in modes.iter().enumerate() {
            let s = signs.sign(i) as i64;
            sm += s * k.m as i64;
            sn += s * k.n as i64;
        }
        match self {
            Conservation::FrequencyOnly => true,
            Conservation::FrequencyAndVector => sm == 0 && sn == 0,
            Conservation::FrequencyAndZonal => sm == 0,
        }
    }
}

impl fmt::Display for Conservation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conservation::FrequencyOnly => "frequency-only",
            Conservation::FrequencyAndVector => "frequency-and-vector",
            Conservation::FrequencyAndZonal => "frequency-and-zonal",
        })
    }
}

impl FromStr for Conservation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Conservation> {
        match s {
            "frequency-only" | "frequency" => Ok(Conservation::FrequencyOnly),
            "frequency-and-vector" | "vector" => Ok(Conservation::FrequencyAndVector),
            "frequency-and-zonal" | "zonal" => Ok(Conservation::FrequencyAndZonal),
            _ => Err(Error::Config(format!("unknown conservation `{s}`"))),
        }
    }
}

/// Canonical sign pattern: `arity - negatives` plus signs followed by
/// `negatives` minus signs, with no more minus than plus signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signs {
    arity: u8,
    negatives: u8,
}

impl Signs {
    pub fn new(signs: &[i8]) -> Result<Signs> {
        if !(3..=4).contains(&signs.len()) {
            return Err(Error::Precondition(format!(
                "arity must be 3 or 4, got {}",
                signs.len()
            )));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Precondition("signs must be +1 or -1".into()));
        }
        let arity = signs.len() as u8;
        let neg = signs.iter().filter(|&&s| s < 0).count() as u8;
        Ok(Signs {
            arity,
            negatives: neg.min(arity - neg),
        })
    }

    pub fn triad() -> Signs {
        Signs { arity: 3, negatives: 1 }
    }

    pub fn quartet() -> Signs {
        Signs { arity: 4, negatives: 2 }
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn positives(&self) -> usize {
        (self.arity - self.negatives) as usize
    }

    pub fn negatives(&self) -> usize {
        self.negatives as usize
    }

    pub fn sign(&self, i: usize) -> i8 {
        if i < self.positives() {
            1
        } else {
            -1
        }
    }

    pub fn to_vec(&self) -> Vec<i8> {
        (0..self.arity()).map(|i| self.sign(i)).collect()
    }
}

impl fmt::Display for Signs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.arity() {
            f.write_str(if self.sign(i) > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for Signs {
    type Err = Error;

    /// Accepts `++-` or `1,1,-1`.
    fn from_str(s: &str) -> Result<Signs> {
        let s = s.trim();
        let raw: Vec<i8> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i8>()
                        .map_err(|_| Error::Config(format!("bad sign list `{s}`")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    _ => Err(Error::Config(format!("bad sign pattern `{s}`"))),
                })
                .collect::<Result<_>>()?
        };
        Signs::new(&raw)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResonanceCondition {
    pub signs: Signs,
    pub conservation: Conservation,
}

impl ResonanceCondition {
    pub fn new(signs: Signs, conservation: Conservation) -> ResonanceCondition {
        ResonanceCondition { signs, conservation }
    }

    /// `ω₁ + ω₂ = ω₃` or `ω₁ + ω₂ = ω₃ + ω₄` with the law's default conservation.
    pub fn default_for(law: &DispersionLaw, arity: usize) -> Result<ResonanceCondition> {
        let signs = match arity {
            3 => Signs::triad(),
            4 => Signs::quartet(),
            _ => return Err(Error::Precondition(format!("arity must be 3 or 4, got {arity}"))),
        };
        Ok(ResonanceCondition {
            signs,
            conservation: Conservation::default_for(law),
        })
    }

    pub fn arity(&self) -> usize {
        self.signs.arity()
    }

    fn check_law(&self, law: &DispersionLaw) -> Result<()> {
        if self.conservation == Conservation::FrequencyAndZonal && *law != DispersionLaw::RossbySphere {
            return Err(Error::Precondition(
                "zonal conservation applies to the spherical Rossby law only".into(),
            ));
        }
        Ok(())
    }
}

/// Lattice bound: `|m|, |n| ≤ D`, `1 ≤ m ≤ n ≤ D` (sphere) or `1 ≤ k ≤ D` (scalar).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchDomain {
    pub bound: u32,
}

impl SearchDomain {
    pub fn new(bound: u32) -> Result<SearchDomain> {
        if bound == 0 {
            return Err(Error::Domain("domain bound must be at least 1".into()));
        }
        if bound > 1 << 20 {
            return Err(Error::Domain(format!("domain bound {bound} is too large")));
        }
        Ok(SearchDomain { bound })
    }

    /// Number of modes the domain holds for `law`.
    pub fn mode_count(&self, law: &DispersionLaw) -> u128 {
        let d = self.bound as u128;
        match law {
            DispersionLaw::RossbySphere => d * (d + 1) / 2,
            _ if law.is_scalar() => d,
            _ => (2 * d + 1) * (2 * d + 1) - 1,
        }
    }

    /// All modes of the domain in ascending order. Spherical modes are
    /// taken with positive zonal number `m`.
    pub fn modes(&self, law: &DispersionLaw) -> Vec<WaveVector> {
        let d = self.bound as i32;
        let mut out = Vec::new();
        match law {
            DispersionLaw::RossbySphere => {
                for m in 1..=d {
                    for n in m..=d {
                        out.push(WaveVector::new(m, n));
                    }
                }
            }
            _ if law.is_scalar() => out.extend((1..=d).map(|k| WaveVector::new(k, 0))),
            _ => {
                for m in -d..=d {
                    for n in -d..=d {
                        if (m, n) != (0, 0) {
                            out.push(WaveVector::new(m, n));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Tuning knobs and resource bounds shared by both search routes.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    /// Worker threads; results do not depend on this.
    pub workers: usize,
    /// Absolute tolerance of the floating prefilter, scaled by the sum of
    /// the frequency magnitudes when that exceeds one.
    pub prefilter_tolerance: f64,
    pub max_modes: usize,
    /// Bound on stored partial sums (pair tables) per search.
    pub max_pairs: usize,
    pub max_solutions: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            prefilter_tolerance: 1e-9,
            max_modes: 250_000,
            max_pairs: 60_000_000,
            max_solutions: 12_000_000,
        }
    }
}

impl SearchOptions {
    pub(crate) fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))
    }
}

/// Labels attached to a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Tags(u8);

impl Tags {
    /// Quartet whose two sides are equal as multisets.
    pub const SYMMETRIC: Tags = Tags(1);
    /// Found with a float-only law; no exactness certificate.
    pub const APPROXIMATE: Tags = Tags(2);

    pub fn contains(self, other: Tags) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn insert(&mut self, other: Tags) {
        self.0 |= other.0;
    }

    pub fn names(self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.contains(Tags::SYMMETRIC) {
            out.push("symmetric");
        }
        if self.contains(Tags::APPROXIMATE) {
            out.push("approximate");
        }
        out
    }

    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<Tags> {
        let mut t = Tags::default();
        for n in names {
            match n {
                "symmetric" => t.insert(Tags::SYMMETRIC),
                "approximate" => t.insert(Tags::APPROXIMATE),
                _ => return Err(Error::Config(format!("unknown tag `{n}`"))),
            }
        }
        Ok(t)
    }
}

/// Positions (bit mask) of a tuple that share one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassGroup {
    pub class_id: ClassId,
    pub positions: u8,
}

/// Partition of tuple positions into classes. Groups of a valid resonance
/// hold at least two positions, so four modes give at most two groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassPartition {
    groups: [ClassGroup; 2],
    len: u8,
}

impl ClassPartition {
    pub fn new(groups: &[ClassGroup]) -> Result<ClassPartition> {
        if groups.is_empty() || groups.len() > 2 {
            return Err(Error::Inconsistency(format!(
                "a class partition needs 1 or 2 groups, got {}",
                groups.len()
            )));
        }
        let mut g = [groups[0]; 2];
        g[..groups.len()].copy_from_slice(groups);
        g[..groups.len()].sort();
        Ok(ClassPartition {
            groups: g,
            len: groups.len() as u8,
        })
    }

    pub fn groups(&self) -> &[ClassGroup] {
        &self.groups[..self.len as usize]
    }
}

/// Proof that the frequency sum of a tuple vanishes exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Certificate {
    /// Rational-valued law: the signed sum of rational frequencies is 0.
    RationalIdentity,
    /// Radical law: inside every listed class the rational coefficients sum to 0.
    PerClassIdentity(ClassPartition),
    /// Float-only law.
    Uncertified,
}

/// One solution of the resonance conditions, in canonical form: modes are
/// sorted inside each sign group and, when both sides have equal size,
/// the lexicographically smaller side comes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResonantSet {
    modes: [WaveVector; 4],
    signs: Signs,
    tags: Tags,
    certificate: Certificate,
}

impl ResonantSet {
    /// Assembles a set from modes already in canonical order.
    pub fn from_parts(modes: &[WaveVector], signs: Signs, tags: Tags, certificate: Certificate) -> Result<ResonantSet> {
        if modes.len() != signs.arity() {
            return Err(Error::Precondition("one mode per sign is required".into()));
        }
        let mut m = [WaveVector::default(); 4];
        m[..modes.len()].copy_from_slice(modes);
        let set = ResonantSet {
            modes: m,
            signs,
            tags,
            certificate,
        };
        if canonical_form(set.modes(), signs) != set.modes {
            return Err(Error::Precondition("modes are not in canonical order".into()));
        }
        Ok(set)
    }

    pub fn modes(&self) -> &[WaveVector] {
        &self.modes[..self.signs.arity()]
    }

    pub fn signs(&self) -> Signs {
        self.signs
    }

    pub fn tags(&self) -> Tags {
        self.tags
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn is_symmetric(&self) -> bool {
        self.tags.contains(Tags::SYMMETRIC)
    }

    /// Replaces the certificate; used to test certificate validation.
    pub fn with_certificate(mut self, certificate: Certificate) -> ResonantSet {
        self.certificate = certificate;
        self
    }
}

impl PartialOrd for ResonantSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ResonantSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modes()
            .cmp(other.modes())
            .then(self.signs.cmp(&other.signs))
            .then(self.tags.cmp(&other.tags))
            .then(self.certificate.cmp(&other.certificate))
    }
}

/// Sorted, duplicate-free collection of solutions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SolutionSet {
    sets: Vec<ResonantSet>,
}

impl SolutionSet {
    pub fn from_vec(mut sets: Vec<ResonantSet>) -> SolutionSet {
        sets.sort_unstable();
        sets.dedup();
        SolutionSet { sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ResonantSet> {
        self.sets.iter()
    }

    pub fn as_slice(&self) -> &[ResonantSet] {
        &self.sets
    }

    pub fn contains(&self, set: &ResonantSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }

    /// Solutions containing exactly these modes, in canonical order.
    pub fn find_modes(&self, modes: &[WaveVector]) -> Option<&ResonantSet> {
        self.sets.iter().find(|s| s.modes() == modes)
    }

    /// `(only in self, only in other)`.
    pub fn difference(&self, other: &SolutionSet) -> (Vec<ResonantSet>, Vec<ResonantSet>) {
        let only_self = self.sets.iter().filter(|s| !other.contains(s)).copied().collect();
        let only_other = other.sets.iter().filter(|s| !self.contains(s)).copied().collect();
        (only_self, only_other)
    }
}

impl<'a> IntoIterator for &'a SolutionSet {
    type Item = &'a ResonantSet;
    type IntoIter = std::slice::Iter<'a, ResonantSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

/// Canonical arrangement of a tuple under the given signs.
pub(crate) fn canonical_form(modes: &[WaveVector], signs: Signs) -> [WaveVector; 4] {
    let p = signs.positives();
    let mut out = [WaveVector::default(); 4];
    out[..modes.len()].copy_from_slice(modes);
    let s = signs.arity();
    out[..p].sort_unstable();
    out[p..s].sort_unstable();
    if p == s - p && out[p..s] < out[..p] {
        let (left, right) = out.split_at_mut(p);
        left.swap_with_slice(&mut right[..p]);
    }
    out
}

/// Mode-level admissibility shared by both routes: canonical order, no mode
/// repeated on one side, conservation. Zero frequencies are screened by the
/// callers through the mode table.
pub(crate) fn admissible(modes: &[WaveVector], signs: Signs, conservation: Conservation) -> bool {
    if canonical_form(modes, signs)[..modes.len()] != *modes {
        return false;
    }
    let p = signs.positives();
    let repeated = |g: &[WaveVector]| g.windows(2).any(|w| w[0] == w[1]);
    if repeated(&modes[..p]) || repeated(&modes[p..]) {
        return false;
    }
    conservation.holds(modes, signs)
}

pub(crate) fn tags_for(modes: &[WaveVector], signs: Signs, law: &DispersionLaw) -> Tags {
    let mut tags = Tags::default();
    let p = signs.positives();
    if p * 2 == modes.len() && modes[..p] == modes[p..] {
        tags.insert(Tags::SYMMETRIC);
    }
    if !law.is_exact() {
        tags.insert(Tags::APPROXIMATE);
    }
    tags
}

/// Certificate for a tuple whose per-position classes are known.
pub(crate) fn certificate_from_classes(law: &DispersionLaw, classes: &[ClassId]) -> Result<Certificate> {
    if !law.is_exact() {
        return Ok(Certificate::Uncertified);
    }
    if law.is_rational_valued() {
        return Ok(Certificate::RationalIdentity);
    }
    let mut groups: Vec<ClassGroup> = Vec::with_capacity(2);
    for (i, &c) in classes.iter().enumerate() {
        match groups.iter_mut().find(|g| g.class_id == c) {
            Some(g) => g.positions |= 1 << i,
            None => groups.push(ClassGroup {
                class_id: c,
                positions: 1 << i,
            }),
        }
    }
    groups.sort();
    Ok(Certificate::PerClassIdentity(ClassPartition::new(&groups)?))
}

/// Builds the canonical solution for modes known to satisfy the conditions.
pub fn certify(law: &DispersionLaw, modes: &[WaveVector], signs: Signs) -> Result<ResonantSet> {
    let canon = canonical_form(modes, signs);
    let modes = &canon[..signs.arity()];
    let classes = if law.is_exact() && !law.is_rational_valued() {
        modes
            .iter()
            .map(|&k| classify_mode(law, k).map(|m| m.class_id))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![ClassId::UNIVERSAL; modes.len()]
    };
    let certificate = certificate_from_classes(law, &classes)?;
    ResonantSet::from_parts(modes, signs, tags_for(modes, signs, law), certificate)
}

/// Re-checks a certificate with exact arithmetic, independently of how the
/// solution was found. Returns `false` for missing or wrong certificates.
pub fn validate_certificate(law: &DispersionLaw, set: &ResonantSet) -> Result<bool> {
    let signs = set.signs().to_vec();
    let modes = set.modes();
    for &k in modes {
        law.check_domain(k)?;
    }
    match set.certificate() {
        Certificate::Uncertified => Ok(false),
        Certificate::RationalIdentity => {
            if !law.is_rational_valued() {
                return Ok(false);
            }
            let mut sum = Rational::ZERO;
            for (&k, &s) in modes.iter().zip(&signs) {
                let w = law.omega_exact(k)?.as_rational().expect("rational-valued law");
                sum = sum.checked_add(w.checked_mul(Rational::from_integer(s as i128))?)?;
            }
            Ok(sum.is_zero())
        }
        Certificate::PerClassIdentity(partition) => {
            let Some(degree) = law.degree().filter(|&d| d > 1) else {
                return Ok(false);
            };
            let full = (1u8 << modes.len()) - 1;
            let mut seen = 0u8;
            for g in partition.groups() {
                if g.positions & seen != 0 || g.positions & !full != 0 || g.positions.count_ones() < 2 {
                    return Ok(false);
                }
                if g.class_id.degree != degree {
                    return Ok(false);
                }
                seen |= g.positions;
            }
            if seen != full {
                return Ok(false);
            }
            let equations = split_modes(law, modes, &signs)?;
            for g in partition.groups() {
                let members: Vec<usize> = (0..modes.len()).filter(|i| g.positions & (1 << i) != 0).collect();
                let Some(eq) = equations.iter().find(|e| e.class_id == g.class_id) else {
                    return Ok(false);
                };
                let listed: Vec<WaveVector> = eq.terms.iter().filter_map(|t| t.membership.map(|m| m.mode)).collect();
                let expected: Vec<WaveVector> = members.iter().map(|&i| modes[i]).collect();
                if listed != expected || !eq.is_zero()? {
                    return Ok(false);
                }
            }
            // The per-class identities imply the full one; check it anyway
            // through the canonical radical sum.
            let mut sum = RadicalSum::new(degree);
            for (&k, &s) in modes.iter().zip(&signs) {
                sum.push(
                    law.omega_exact(k)?
                        .to_radical(degree)
                        .scale(Rational::from_integer(s as i128))?,
                )?;
            }
            Ok(radical_sum_is_zero(&sum).0)
        }
    }
}

/// Expanded per-class equations backing a certificate, for export.
pub fn certificate_equations(law: &DispersionLaw, set: &ResonantSet) -> Result<Vec<PerClassEquation>> {
    if !law.is_exact() {
        return Ok(Vec::new());
    }
    split_modes(law, set.modes(), &set.signs().to_vec())
}

/// Checks that a law/condition/domain triple describes a valid search.
pub(crate) fn check_search(
    law: &DispersionLaw,
    condition: &ResonanceCondition,
    domain: &SearchDomain,
    options: &SearchOptions,
) -> Result<()> {
    condition.check_law(law)?;
    let count = domain.mode_count(law);
    if count > options.max_modes as u128 {
        return Err(Error::Capacity {
            what: "domain mode",
            count,
            limit: options.max_modes as u128,
        });
    }
    if let DispersionLaw::PowerLaw { exponent, base } = law {
        if exponent.is_zero() {
            return Err(Error::Domain(
                "a zero exponent gives a constant, non-dispersive law".into(),
            ));
        }
        if *base == PowerBase::Scalar && condition.conservation == Conservation::FrequencyAndZonal {
            return Err(Error::Precondition("zonal conservation needs spherical modes".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(m: i32, n: i32) -> WaveVector {
        WaveVector::new(m, n)
    }

    #[test]
    fn sign_patterns_normalize() {
        assert_eq!(Signs::new(&[1, 1, -1]).unwrap(), Signs::triad());
        assert_eq!(Signs::new(&[-1, 1, -1]).unwrap(), Signs::triad());
        assert_eq!(Signs::new(&[1, -1, 1]).unwrap(), Signs::triad());
        assert_eq!("+-+-".parse::<Signs>().unwrap(), Signs::quartet());
        assert_eq!("-1,-1,-1,1".parse::<Signs>().unwrap().to_string(), "+++-");
        assert!(Signs::new(&[1, 1]).is_err());
        assert!(Signs::new(&[1, 2, -1]).is_err());
    }

    #[test]
    fn canonical_orientation() {
        let q = Signs::quartet();
        let c = canonical_form(&[wv(3, 0), wv(2, 0), wv(1, 5), wv(1, 0)], q);
        assert_eq!(&c[..4], &[wv(1, 0), wv(1, 5), wv(2, 0), wv(3, 0)]);
        let t = canonical_form(&[wv(2, 0), wv(1, 0), wv(3, 0)], Signs::triad());
        assert_eq!(&t[..3], &[wv(1, 0), wv(2, 0), wv(3, 0)]);
    }

    #[test]
    fn admissibility_rules() {
        let t = Signs::triad();
        assert!(admissible(
            &[wv(1, 0), wv(2, 0), wv(3, 0)],
            t,
            Conservation::FrequencyAndVector
        ));
        assert!(!admissible(
            &[wv(2, 0), wv(1, 0), wv(3, 0)],
            t,
            Conservation::FrequencyOnly
        ));
        assert!(!admissible(
            &[wv(1, 0), wv(1, 0), wv(2, 0)],
            t,
            Conservation::FrequencyOnly
        ));
        assert!(!admissible(
            &[wv(1, 0), wv(2, 0), wv(4, 0)],
            t,
            Conservation::FrequencyAndVector
        ));
        let q = Signs::quartet();
        assert!(admissible(
            &[wv(1, 0), wv(2, 0), wv(1, 0), wv(2, 0)],
            q,
            Conservation::FrequencyAndVector
        ));
    }

    #[test]
    fn rossby_certificate_and_corruption() {
        let law = DispersionLaw::RossbySphere;
        let set = certify(&law, &[wv(5, 14), wv(4, 12), wv(9, 13)], Signs::triad()).unwrap();
        assert_eq!(set.modes(), &[wv(4, 12), wv(5, 14), wv(9, 13)]);
        assert_eq!(set.certificate(), Certificate::RationalIdentity);
        assert!(validate_certificate(&law, &set).unwrap());
        let bad = certify(&law, &[wv(4, 12), wv(5, 14), wv(9, 14)], Signs::triad()).unwrap();
        assert!(!validate_certificate(&law, &bad).unwrap());
    }

    #[test]
    fn per_class_certificate_detects_tampering() {
        let law = DispersionLaw::GravityNormRoot;
        let set = certify(&law, &[wv(1, 1), wv(2, 0), wv(1, 1), wv(2, 0)], Signs::quartet()).unwrap();
        assert!(set.is_symmetric());
        assert!(validate_certificate(&law, &set).unwrap());
        let Certificate::PerClassIdentity(p) = set.certificate() else {
            panic!()
        };
        let mut groups = p.groups().to_vec();
        groups[0].class_id.kernel = 3;
        let forged = set.with_certificate(Certificate::PerClassIdentity(ClassPartition::new(&groups).unwrap()));
        assert!(!validate_certificate(&law, &forged).unwrap());
        let merged = ClassPartition::new(&[ClassGroup {
            class_id: groups[0].class_id,
            positions: 0b1111,
        }])
        .unwrap();
        assert!(!validate_certificate(&law, &set.with_certificate(Certificate::PerClassIdentity(merged))).unwrap());
        assert!(!validate_certificate(&law, &set.with_certificate(Certificate::RationalIdentity)).unwrap());
    }
}
