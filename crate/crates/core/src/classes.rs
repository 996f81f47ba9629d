//! Class decomposition of wave modes and per-class splitting of radical
//! equations.
//!
//! A mode of a power law `ω = B^(p/c)` lies in the class `Cl_q` when
//! `B^|p| = γ^c · q` with `q` c-free. Inside one class all frequencies are
//! rational multiples of the same radical, so any signed frequency sum splits
//! into independent rational equations, one per class.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dispersion::{DispersionLaw, WaveVector};
use crate::error::{Error, Result};
use crate::exact::{cfree_decompose, RadicalNumber, Rational};

/// Class label `(q, c)`. Rational-valued laws use the universal class `(1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassId {
    pub kernel: u64,
    pub degree: u32,
}

impl ClassId {
    pub const UNIVERSAL: ClassId = ClassId { kernel: 1, degree: 1 };
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl_{} (c={})", self.kernel, self.degree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassMembership {
    pub mode: WaveVector,
    pub class_id: ClassId,
    pub gamma: u64,
}

pub fn classify_mode(law: &DispersionLaw, k: WaveVector) -> Result<ClassMembership> {
    law.require_exact()?;
    law.check_domain(k)?;
    let degree = law.degree().expect("exact laws have a degree");
    if degree == 1 {
        return Ok(ClassMembership {
            mode: k,
            class_id: ClassId::UNIVERSAL,
            gamma: 1,
        });
    }
    let (gamma, kernel) = cfree_decompose(law.class_radicand(k)?, degree)?;
    Ok(ClassMembership {
        mode: k,
        class_id: ClassId { kernel, degree },
        gamma,
    })
}

/// Whether all modes share one class, which every single-class resonance needs.
pub fn same_class_necessary(law: &DispersionLaw, modes: &[WaveVector]) -> Result<bool> {
    let (first, rest) = modes
        .split_first()
        .ok_or_else(|| Error::Precondition("same-class test needs at least one mode".into()))?;
    let class = classify_mode(law, *first)?.class_id;
    for &k in rest {
        if classify_mode(law, k)?.class_id != class {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One term `coefficient · value` of a per-class equation, where `value`
/// is the rational multiplier of the class radical `q^(1/c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerClassTerm {
    pub coefficient: Rational,
    pub value: Rational,
    pub membership: Option<ClassMembership>,
}

/// The rational identity `Σ coefficient · value = 0` restricted to one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerClassEquation {
    pub class_id: ClassId,
    pub terms: Vec<PerClassTerm>,
}

impl PerClassEquation {
    pub fn residue(&self) -> Result<Rational> {
        self.terms.iter().try_fold(Rational::ZERO, |acc, t| {
            acc.checked_add(t.coefficient.checked_mul(t.value)?)
        })
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.residue()?.is_zero())
    }
}

/// Splits `Σ aᵢ·kᵢ` (all radicals of degree `c`) into one rational equation
/// per kernel. The sum vanishes iff every returned equation does.
pub fn split_equation(degree: u32, terms: &[(Rational, RadicalNumber)]) -> Result<Vec<PerClassEquation>> {
    let mut by_kernel: BTreeMap<u64, Vec<PerClassTerm>> = BTreeMap::new();
    for &(coefficient, radical) in terms {
        if radical.degree() != degree {
            return Err(Error::MixedDegree {
                left: degree,
                right: radical.degree(),
            });
        }
        by_kernel.entry(radical.kernel()).or_default().push(PerClassTerm {
            coefficient,
            value: radical.coeff(),
            membership: None,
        });
    }
    Ok(by_kernel
        .into_iter()
        .map(|(kernel, terms)| PerClassEquation {
            class_id: ClassId { kernel, degree },
            terms,
        })
        .collect())
}

/// Per-class equations for the signed frequency sum `Σ σᵢ ω(kᵢ)`.
pub fn split_modes(law: &DispersionLaw, modes: &[WaveVector], signs: &[i8]) -> Result<Vec<PerClassEquation>> {
    if modes.len() != signs.len() {
        return Err(Error::Precondition("one sign per mode is required".into()));
    }
    let degree = law.degree().ok_or_else(|| Error::NoExactForm(law.to_string()))?;
    let mut by_class: BTreeMap<ClassId, Vec<PerClassTerm>> = BTreeMap::new();
    for (&k, &s) in modes.iter().zip(signs) {
        let membership = classify_mode(law, k)?;
        let omega = law.omega_exact(k)?.to_radical(degree);
        by_class.entry(membership.class_id).or_default().push(PerClassTerm {
            coefficient: Rational::from_integer(s as i128),
            value: omega.coeff(),
            membership: Some(membership),
        });
    }
    Ok(by_class
        .into_iter()
        .map(|(class_id, terms)| PerClassEquation { class_id, terms })
        .collect())
}

/// How the class factor γ enters ω inside one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaForm {
    /// ω ∝ γ, condition `Σ σᵢ γᵢ = 0`.
    Linear,
    /// ω ∝ 1/γ, condition `Σ σᵢ / γᵢ = 0`.
    Reciprocal,
}

/// Rational Diophantine condition on `(γ₁, …, γ_s)` for a single class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedCondition {
    pub class_id: ClassId,
    pub signs: Vec<i8>,
    pub form: GammaForm,
}

impl ReducedCondition {
    pub fn residue(&self, gammas: &[u64]) -> Result<Rational> {
        if gammas.len() != self.signs.len() {
            return Err(Error::Precondition(format!(
                "expected {} gammas, got {}",
                self.signs.len(),
                gammas.len()
            )));
        }
        let mut acc = Rational::ZERO;
        for (&g, &s) in gammas.iter().zip(&self.signs) {
            if g == 0 {
                return Err(Error::Domain("gamma must be positive".into()));
            }
            let g = Rational::from_integer(g as i128);
            let term = match self.form {
                GammaForm::Linear => g,
                GammaForm::Reciprocal => g.checked_recip()?,
            };
            acc = acc.checked_add(term.checked_mul(Rational::from_integer(s as i128))?)?;
        }
        Ok(acc)
    }

    pub fn is_satisfied(&self, gammas: &[u64]) -> Result<bool> {
        Ok(self.residue(gammas)?.is_zero())
    }
}

impl fmt::Display for ReducedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |i: usize| match self.form {
            GammaForm::Linear => format!("γ{}", i + 1),
            GammaForm::Reciprocal => format!("1/γ{}", i + 1),
        };
        let side = |sign: i8| {
            let parts: Vec<String> = (0..self.signs.len())
                .filter(|&i| self.signs[i] == sign)
                .map(term)
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        };
        write!(f, "{} = {}", side(1), side(-1))
    }
}

/// Normalizes a sign vector so that its first entry is `+1`.
pub fn normalize_signs(signs: &[i8]) -> Result<Vec<i8>> {
    if signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::Precondition("signs must be +1 or -1".into()));
    }
    let flip = signs.first().copied().unwrap_or(1);
    Ok(signs.iter().map(|&s| s * flip).collect())
}

/// Reduces the single-class frequency condition `Σ σᵢ ω(kᵢ) = 0` to a
/// condition on the class factors γᵢ.
pub fn reduce_to_rational(law: &DispersionLaw, class: ClassId, signs: &[i8]) -> Result<ReducedCondition> {
    law.require_exact()?;
    if signs.is_empty() {
        return Err(Error::Precondition("at least one sign is required".into()));
    }
    let (exponent, _) = law
        .power_form()
        .ok_or_else(|| Error::NotApplicable(format!("`{law}` is already rational-valued")))?;
    let degree = law.degree().expect("power law degree");
    if degree == 1 {
        return Err(Error::NotApplicable(format!("`{law}` is already rational-valued")));
    }
    if class.degree != degree {
        return Err(Error::Precondition(format!(
            "class {class} does not belong to a degree-{degree} law"
        )));
    }
    let form = if exponent.numer() < 0 {
        GammaForm::Reciprocal
    } else {
        GammaForm::Linear
    };
    Ok(ReducedCondition {
        class_id: class,
        signs: normalize_signs(signs)?,
        form,
    })
}
