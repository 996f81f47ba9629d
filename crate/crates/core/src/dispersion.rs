//! Dispersion laws ω(m, n) on the integer lattice.
//!
//! Every exact law except the spherical Rossby law is a power of an integer
//! base, `ω = B^(p/c)` with `B = k` (scalar lattice) or `B = m² + n²`.
//! Such values are radicals of degree `c` and are evaluated exactly through
//! [`RadicalNumber`]. Float-only laws support numerical screening but never
//! produce exactness certificates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{RadicalNumber, Rational};

/// Integer lattice point, the discrete wave mode. Scalar laws use `(k, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct WaveVector {
    pub m: i32,
    pub n: i32,
}

impl WaveVector {
    pub const fn new(m: i32, n: i32) -> WaveVector {
        WaveVector { m, n }
    }

    pub fn scaled(self, t: i32) -> WaveVector {
        WaveVector::new(self.m * t, self.n * t)
    }

    pub fn norm_squared(self) -> u64 {
        let m = self.m as i64;
        let n = self.n as i64;
        (m * m + n * n) as u64
    }
}

impl fmt::Display for WaveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// What the exponent of a power law is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerBase {
    /// The scalar wavenumber `k = m`; `n` is ignored.
    Scalar,
    /// The squared norm `m² + n²`. Float laws read this as `k = √(m² + n²)`.
    NormSquared,
}

/// Closed-form laws evaluated in floating point only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FloatFormula {
    /// ω = αk
    Linear { alpha: f64 },
    /// ω = αk − βk³
    Cubic { alpha: f64, beta: f64 },
    /// ω⁴ = α²k² + β²
    QuarticRoot { alpha: f64, beta: f64 },
    /// ω = tanh(αk)
    Tanh { alpha: f64 },
}

impl FloatFormula {
    fn eval(&self, k: f64) -> f64 {
        match *self {
            FloatFormula::Linear { alpha } => alpha * k,
            FloatFormula::Cubic { alpha, beta } => alpha * k - beta * k * k * k,
            FloatFormula::QuarticRoot { alpha, beta } => (alpha * alpha * k * k + beta * beta).sqrt().sqrt(),
            FloatFormula::Tanh { alpha } => (alpha * k).tanh(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DispersionLaw {
    /// ω = −2m / [n(n+1)] on the sphere, `1 ≤ |m| ≤ n`.
    RossbySphere,
    /// ω = 1/√(m² + n²).
    DriftInverseNorm,
    /// ω = k^(3/2) on the scalar lattice.
    CapillaryScalar,
    /// ω = (m² + n²)^(1/4).
    GravityNormRoot,
    PowerLaw {
        exponent: Rational,
        base: PowerBase,
    },
    FloatLaw {
        formula: FloatFormula,
        base: PowerBase,
    },
}

/// Exact dispersion value: rational, or a genuine radical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExactOmega {
    Rational(Rational),
    Radical(RadicalNumber),
}

impl ExactOmega {
    pub fn to_radical(self, degree: u32) -> RadicalNumber {
        match self {
            ExactOmega::Rational(r) => RadicalNumber::rational_at(r, degree),
            ExactOmega::Radical(x) => x,
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExactOmega::Rational(r) => r.to_f64(),
            ExactOmega::Radical(x) => x.to_f64(),
        }
    }

    pub fn as_rational(self) -> Option<Rational> {
        match self {
            ExactOmega::Rational(r) => Some(r),
            ExactOmega::Radical(_) => None,
        }
    }
}

impl fmt::Display for ExactOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactOmega::Rational(r) => write!(f, "{r}"),
            ExactOmega::Radical(x) => write!(f, "{x}"),
        }
    }
}

pub const DEFAULT_FD_STEP: f64 = 1e-3;
pub const DEFAULT_NONDEGENERACY_TOL: f64 = 1e-6;

impl DispersionLaw {
    /// `(exponent, base)` for laws of the form `B^(p/c)`.
    pub fn power_form(&self) -> Option<(Rational, PowerBase)> {
        let r = |n, d| Rational::new(n, d).expect("nonzero denominator");
        match *self {
            DispersionLaw::DriftInverseNorm => Some((r(-1, 2), PowerBase::NormSquared)),
            DispersionLaw::CapillaryScalar => Some((r(3, 2), PowerBase::Scalar)),
            DispersionLaw::GravityNormRoot => Some((r(1, 4), PowerBase::NormSquared)),
            DispersionLaw::PowerLaw { exponent, base } => Some((exponent, base)),
            DispersionLaw::RossbySphere | DispersionLaw::FloatLaw { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, DispersionLaw::FloatLaw { .. })
    }

    /// Radical degree `c` of exact values; 1 for rational-valued laws.
    pub fn degree(&self) -> Option<u32> {
        match self {
            DispersionLaw::RossbySphere => Some(1),
            DispersionLaw::FloatLaw { .. } => None,
            _ => self.power_form().map(|(e, _)| e.denom() as u32),
        }
    }

    pub fn is_rational_valued(&self) -> bool {
        self.degree() == Some(1)
    }

    pub fn is_scalar(&self) -> bool {
        match *self {
            DispersionLaw::FloatLaw { base, .. } => base == PowerBase::Scalar,
            DispersionLaw::RossbySphere => false,
            _ => self.power_form().map(|(_, b)| b) == Some(PowerBase::Scalar),
        }
    }

    pub fn require_exact(&self) -> Result<()> {
        if self.is_exact() {
            Ok(())
        } else {
            Err(Error::NoExactForm(self.to_string()))
        }
    }

    pub fn check_domain(&self, k: WaveVector) -> Result<()> {
        let ok = match self {
            DispersionLaw::RossbySphere => k.m != 0 && k.m.unsigned_abs() <= k.n.unsigned_abs() && k.n > 0,
            _ if self.is_scalar() => k.m >= 1,
            _ => k != WaveVector::new(0, 0),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("mode {k} is outside the domain of `{self}`")))
        }
    }

    /// The integer the exponent acts on: `k` or `m² + n²`.
    pub fn base_integer(&self, k: WaveVector) -> Result<u64> {
        self.check_domain(k)?;
        match self {
            DispersionLaw::RossbySphere => Err(Error::NotApplicable("the Rossby law has no power base".into())),
            _ if self.is_scalar() => Ok(k.m as u64),
            _ => Ok(k.norm_squared()),
        }
    }

    /// Physical wavenumber used for spectra: `k`, `|k|`, or the degree `n`.
    pub fn wavenumber(&self, k: WaveVector) -> f64 {
        match self {
            DispersionLaw::RossbySphere => k.n as f64,
            _ if self.is_scalar() => k.m as f64,
            _ => (k.norm_squared() as f64).sqrt(),
        }
    }

    /// The integer `B^|p|` whose c-free kernel labels the class of a mode.
    pub fn class_radicand(&self, k: WaveVector) -> Result<u64> {
        let (exponent, _) = self
            .power_form()
            .ok_or_else(|| Error::NotApplicable(format!("`{self}` is not a power law")))?;
        let b = self.base_integer(k)?;
        let p = u32::try_from(exponent.numer().unsigned_abs()).map_err(|_| Error::Overflow("power law exponent"))?;
        b.checked_pow(p).ok_or(Error::Overflow("power law radicand"))
    }

    pub fn omega_exact(&self, k: WaveVector) -> Result<ExactOmega> {
        self.require_exact()?;
        self.check_domain(k)?;
        if let DispersionLaw::RossbySphere = self {
            let n = k.n as i128;
            return Ok(ExactOmega::Rational(Rational::new(-2 * k.m as i128, n * (n + 1))?));
        }
        let (exponent, _) = self.power_form().expect("exact non-Rossby laws are power laws");
        let radicand = self.class_radicand(k)?;
        let c = exponent.denom() as u32;
        let mut value = RadicalNumber::new(Rational::ONE, radicand, c)?;
        if exponent.numer() < 0 {
            value = value.recip()?;
        }
        Ok(if value.is_rational() {
            ExactOmega::Rational(value.coeff())
        } else {
            ExactOmega::Radical(value)
        })
    }

    pub fn omega_float(&self, k: WaveVector) -> Result<f64> {
        self.check_domain(k)?;
        match *self {
            DispersionLaw::RossbySphere => {
                let n = k.n as f64;
                Ok(-2.0 * k.m as f64 / (n * (n + 1.0)))
            }
            DispersionLaw::FloatLaw { formula, .. } => Ok(formula.eval(self.wavenumber(k))),
            _ => {
                let (exponent, _) = self.power_form().expect("power law");
                let c = exponent.denom();
                let magnitude = match self.class_radicand(k) {
                    Ok(radicand) if radicand < (1u64 << 53) => {
                        let x = radicand as f64;
                        match c {
                            1 => x,
                            2 => x.sqrt(),
                            4 => x.sqrt().sqrt(),
                            _ => x.powf(1.0 / c as f64),
                        }
                    }
                    _ => {
                        let b = self.base_integer(k)? as f64;
                        b.powf(exponent.numer().unsigned_abs() as f64 / c as f64)
                    }
                };
                Ok(if exponent.numer() < 0 {
                    1.0 / magnitude
                } else {
                    magnitude
                })
            }
        }
    }

    /// Real extension of ω used for the finite-difference nondegeneracy test.
    fn omega_real(&self, x: f64, y: f64) -> f64 {
        match *self {
            DispersionLaw::RossbySphere => -2.0 * x / (y * (y + 1.0)),
            DispersionLaw::FloatLaw { formula, base } => match base {
                PowerBase::Scalar => formula.eval(x),
                PowerBase::NormSquared => formula.eval((x * x + y * y).sqrt()),
            },
            _ => {
                let (exponent, base) = self.power_form().expect("power law");
                let b = match base {
                    PowerBase::Scalar => x,
                    PowerBase::NormSquared => x * x + y * y,
                };
                if b <= 0.0 {
                    return f64::NAN;
                }
                b.powf(exponent.to_f64())
            }
        }
    }
}

pub fn omega_exact(law: &DispersionLaw, k: WaveVector) -> Result<ExactOmega> {
    law.omega_exact(k)
}

pub fn omega_float(law: &DispersionLaw, k: WaveVector) -> Result<f64> {
    law.omega_float(k)
}

/// Finite-difference dispersion test with the default tolerance.
pub fn dispersion_nondegenerate(law: &DispersionLaw, k: WaveVector, h: f64) -> Result<bool> {
    dispersion_nondegenerate_with(law, k, h, DEFAULT_NONDEGENERACY_TOL)
}

/// True iff `|d²ω/dk²|` (scalar laws) or `|det ∂²ω/∂kᵢ∂kⱼ|` exceeds `tol`,
/// using central differences with step `h`.
pub fn dispersion_nondegenerate_with(law: &DispersionLaw, k: WaveVector, h: f64, tol: f64) -> Result<bool> {
    if h.is_nan() || tol.is_nan() || h <= 0.0 || tol <= 0.0 {
        return Err(Error::Precondition("step and tolerance must be positive".into()));
    }
    law.check_domain(k)?;
    let (x, y) = (k.m as f64, k.n as f64);
    let f = |dx: f64, dy: f64| law.omega_real(x + dx, y + dy);
    let outside = || {
        Error::Domain(format!(
            "finite-difference stencil around {k} leaves the domain of `{law}`"
        ))
    };

    if law.is_scalar() {
        let (fp, f0, fm) = (f(h, 0.0), f(0.0, 0.0), f(-h, 0.0));
        if !(fp.is_finite() && f0.is_finite() && fm.is_finite()) {
            return Err(outside());
        }
        let d2 = (fp - 2.0 * f0 + fm) / (h * h);
        return Ok(d2.abs() > tol);
    }

    let samples = [
        f(0.0, 0.0),
        f(h, 0.0),
        f(-h, 0.0),
        f(0.0, h),
        f(0.0, -h),
        f(h, h),
        f(h, -h),
        f(-h, h),
        f(-h, -h),
    ];
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(outside());
    }
    let [c, xp, xm, yp, ym, pp, pm, mp, mm] = samples;
    let fxx = (xp - 2.0 * c + xm) / (h * h);
    let fyy = (yp - 2.0 * c + ym) / (h * h);
    let fxy = (pp - pm - mp + mm) / (4.0 * h * h);
    Ok((fxx * fyy - fxy * fxy).abs() > tol)
}

impl fmt::Display for DispersionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = |b: &PowerBase| match b {
            PowerBase::Scalar => "scalar",
            PowerBase::NormSquared => "norm-squared",
        };
        match self {
            DispersionLaw::RossbySphere => write!(f, "rossby"),
            DispersionLaw::DriftInverseNorm => write!(f, "drift"),
            DispersionLaw::CapillaryScalar => write!(f, "capillary"),
            DispersionLaw::GravityNormRoot => write!(f, "gravity"),
            DispersionLaw::PowerLaw { exponent, base: b } => write!(f, "power:{exponent}:{}", base(b)),
            DispersionLaw::FloatLaw { formula, base: b } => match formula {
                FloatFormula::Linear { alpha } => write!(f, "float:linear:{alpha}:{}", base(b)),
                FloatFormula::Cubic { alpha, beta } => write!(f, "float:cubic:{alpha}:{beta}:{}", base(b)),
                FloatFormula::QuarticRoot { alpha, beta } => {
                    write!(f, "float:quartic-root:{alpha}:{beta}:{}", base(b))
                }
                FloatFormula::Tanh { alpha } => write!(f, "float:tanh:{alpha}:{}", base(b)),
            },
        }
    }
}

/// Parses the descriptors printed by `Display`, e.g. `drift`,
/// `power:3/4:norm-squared` or `float:cubic:1:1:scalar`.
impl FromStr for DispersionLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<DispersionLaw> {
        let bad = |why: &str| Error::Config(format!("bad dispersion law `{s}`: {why}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let parse_base = |b: &str| match b {
            "scalar" => Ok(PowerBase::Scalar),
            "norm-squared" | "norm" => Ok(PowerBase::NormSquared),
            _ => Err(bad("base must be `scalar` or `norm-squared`")),
        };
        let num = |x: &str| x.parse::<f64>().map_err(|_| bad("parameter is not a number"));
        match parts.as_slice() {
            ["rossby"] => Ok(DispersionLaw::RossbySphere),
            ["drift"] => Ok(DispersionLaw::DriftInverseNorm),
            ["capillary"] => Ok(DispersionLaw::CapillaryScalar),
            ["gravity"] => Ok(DispersionLaw::GravityNormRoot),
            ["power", e, b] => Ok(DispersionLaw::PowerLaw {
                exponent: e.parse()?,
                base: parse_base(b)?,
            }),
            ["float", "linear", a, b] => Ok(DispersionLaw::FloatLaw {
                formula: FloatFormula::Linear { alpha: num(a)? },
                base: parse_base(b)?,
            }),
            ["float", "cubic", a, c, b] => Ok(DispersionLaw::FloatLaw {
                formula: FloatFormula::Cubic {
                    alpha: num(a)?,
                    beta: num(c)?,
                },
                base: parse_base(b)?,
            }),
            ["float", "quartic-root", a, c, b] => Ok(DispersionLaw::FloatLaw {
                formula: FloatFormula::QuarticRoot {
                    alpha: num(a)?,
                    beta: num(c)?,
                },
                base: parse_base(b)?,
            }),
            ["float", "tanh", a, b] => Ok(DispersionLaw::FloatLaw {
                formula: FloatFormula::Tanh { alpha: num(a)? },
                base: parse_base(b)?,
            }),
            _ => Err(bad("unknown law")),
        }
    }
}

impl Serialize for DispersionLaw {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DispersionLaw {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
