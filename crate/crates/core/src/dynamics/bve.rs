//! Interaction coefficient and amplitude equations of a Rossby triad of the
//! barotropic vorticity equation on the sphere:
//!
//! `N₁ A₁' = -2iZ(N₂-N₃) A₃ A₂*`, `N₂ A₂' = -2iZ(N₃-N₁) A₁* A₃`,
//! `N₃ A₃' = 2iZ(N₂-N₁) A₁ A₂`, with `N = n(n+1)`.
//!
//! With these signs every coupling has the same sign whenever `N₃` lies
//! between `N₁` and `N₂`, and the triad blows up in finite time. Flipping the
//! sign of the `A₃` equation makes `Σ Nᵢ|Aᵢ|²` and `Σ Nᵢ²|Aᵢ|²` (energy and
//! enstrophy) invariant and the motion bounded; see [`BveSigns`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::integrate::TriadSystem;
use super::legendre::{legendre_in_latitude, Normalization};
use super::quadrature::integrate;
use crate::dispersion::{DispersionLaw, WaveVector};
use crate::error::{Error, Result};

pub const MIN_QUADRATURE_ORDER: usize = 16;
pub const DEFAULT_QUADRATURE_ORDER: usize = 64;
pub const DEFAULT_QUADRATURE_TOLERANCE: f64 = 1e-8;

/// Which factor of the third mode enters the latitude integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZIntegrand {
    /// `[m₂P⁽²⁾ dP⁽¹⁾ - m₁P⁽¹⁾ dP⁽²⁾] · P⁽³⁾`: the bracket projected on the
    /// third mode. Nonzero only when `n₁ + n₂ + n₃` is odd.
    #[default]
    Projected,
    /// `[m₂P⁽²⁾ dP⁽¹⁾ - m₁P⁽¹⁾ dP⁽²⁾] · dP⁽³⁾/dφ`. Its integrand is odd in
    /// latitude whenever `n₁ + n₂ + n₃` is odd, so it vanishes on every such
    /// triad.
    Differentiated,
}

/// Sign of the `A₃` equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BveSigns {
    /// `N₃ A₃' = -2iZ(N₂-N₁) A₁ A₂`, conserving energy and enstrophy.
    #[default]
    EnergyConserving,
    /// `N₃ A₃' = +2iZ(N₂-N₁) A₁ A₂`.
    PositiveThird,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BveOptions {
    pub normalization: Normalization,
    pub integrand: ZIntegrand,
    pub signs: BveSigns,
    pub quadrature_order: usize,
    /// Relative agreement required between orders `q` and `2q`.
    pub quadrature_tolerance: f64,
}

impl Default for BveOptions {
    fn default() -> Self {
        BveOptions {
            normalization: Normalization::FourPi,
            integrand: ZIntegrand::Projected,
            signs: BveSigns::EnergyConserving,
            quadrature_order: DEFAULT_QUADRATURE_ORDER,
            quadrature_tolerance: DEFAULT_QUADRATURE_TOLERANCE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BveTriad {
    pub modes: [WaveVector; 3],
    pub n: [u64; 3],
    pub z: f64,
    /// `(order, Z)` for the requested order and its double.
    pub convergence: Vec<(usize, f64)>,
    pub options: BveOptions,
}

impl BveTriad {
    pub fn system(&self) -> Result<TriadSystem> {
        let [n1, n2, n3] = self.n.map(|v| v as f64);
        let i2z = Complex64::new(0.0, 2.0 * self.z);
        let third = match self.options.signs {
            BveSigns::EnergyConserving => -i2z,
            BveSigns::PositiveThird => i2z,
        };
        TriadSystem::new([
            -i2z * ((n2 - n3) / n1),
            -i2z * ((n3 - n1) / n2),
            third * ((n2 - n1) / n3),
        ])
    }
}

/// Checks `m₁ + m₂ = m₃` and `ω₁ + ω₂ = ω₃` exactly for spherical modes in
/// the given label order.
pub fn check_rossby_triad(modes: &[WaveVector; 3]) -> Result<()> {
    let law = DispersionLaw::RossbySphere;
    for &k in modes {
        law.check_domain(k)
            .map_err(|_| Error::Precondition(format!("{k} is not a spherical mode with 1 <= |m| <= n")))?;
    }
    if modes[0].m as i64 + modes[1].m as i64 != modes[2].m as i64 {
        return Err(Error::Precondition("zonal numbers do not satisfy m1 + m2 = m3".into()));
    }
    let w = |k: WaveVector| {
        law.omega_exact(k)
            .map(|w| w.as_rational().expect("Rossby frequencies are rational"))
    };
    if w(modes[0])?.checked_add(w(modes[1])?)? != w(modes[2])? {
        return Err(Error::Precondition("frequencies do not satisfy w1 + w2 = w3".into()));
    }
    Ok(())
}

fn z_at(modes: &[WaveVector; 3], order: usize, options: &BveOptions) -> Result<(f64, f64)> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let deg = |k: WaveVector| (k.n as u32, k.m.unsigned_abs());
    let (m1, m2) = (modes[0].m as f64, modes[1].m as f64);
    let mut abs_sum = 0.0;
    let z = integrate(order, -half_pi, half_pi, |phi| {
        let (n, m) = deg(modes[0]);
        let (p1, d1) = legendre_in_latitude(n, m, phi, options.normalization)?;
        let (n, m) = deg(modes[1]);
        let (p2, d2) = legendre_in_latitude(n, m, phi, options.normalization)?;
        let (n, m) = deg(modes[2]);
        let (p3, d3) = legendre_in_latitude(n, m, phi, options.normalization)?;
        let third = match options.integrand {
            ZIntegrand::Projected => p3,
            ZIntegrand::Differentiated => d3,
        };
        let v = (m2 * p2 * d1 - m1 * p1 * d2) * third;
        abs_sum += v.abs();
        Ok(v)
    })?;
    Ok((z, abs_sum * half_pi / order as f64))
}

/// Computes `Z` at the requested quadrature order and at twice that order;
/// the two must agree to the relative tolerance (or to roundoff when `Z`
/// cancels to zero), otherwise an accuracy error is returned.
pub fn bve_coefficients(modes: [WaveVector; 3], options: &BveOptions) -> Result<BveTriad> {
    if options.quadrature_order < MIN_QUADRATURE_ORDER {
        return Err(Error::Precondition(format!(
            "quadrature order must be at least {MIN_QUADRATURE_ORDER}, got {}",
            options.quadrature_order
        )));
    }
    if !(options.quadrature_tolerance > 0.0 && options.quadrature_tolerance.is_finite()) {
        return Err(Error::Precondition("quadrature tolerance must be positive".into()));
    }
    check_rossby_triad(&modes)?;
    let q = options.quadrature_order;
    let (z1, _) = z_at(&modes, q, options)?;
    let (z2, mass) = z_at(&modes, 2 * q, options)?;
    let tol = (options.quadrature_tolerance * z2.abs()).max(1e-13 * mass);
    if (z1 - z2).abs() > tol || !z2.is_finite() {
        return Err(Error::Accuracy(format!(
            "Z changed from {z1:e} to {z2:e} when the order was doubled from {q}"
        )));
    }
    let n = modes.map(|k| (k.n as u64) * (k.n as u64 + 1));
    Ok(BveTriad {
        modes,
        n,
        z: z2,
        convergence: vec![(q, z1), (2 * q, z2)],
        options: *options,
    })
}

/// The triad used throughout the examples: `(4,12) + (5,14) → (9,13)`.
pub fn demo_triad() -> [WaveVector; 3] {
    [WaveVector::new(4, 12), WaveVector::new(5, 14), WaveVector::new(9, 13)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_triad_has_nonzero_coupling() {
        let t = bve_coefficients(demo_triad(), &BveOptions::default()).unwrap();
        assert!(t.z.is_finite() && t.z.abs() > 1e-3, "Z = {}", t.z);
        assert_eq!(t.n, [156, 210, 182]);
    }

    #[test]
    fn differentiated_integrand_vanishes_on_odd_degree_sum() {
        let opts = BveOptions {
            integrand: ZIntegrand::Differentiated,
            ..BveOptions::default()
        };
        let t = bve_coefficients(demo_triad(), &opts).unwrap();
        let p = bve_coefficients(demo_triad(), &BveOptions::default()).unwrap();
        assert!(t.z.abs() < 1e-12 * p.z.abs().max(1.0), "Z = {}", t.z);
    }

    #[test]
    fn preconditions() {
        let opts = BveOptions {
            quadrature_order: 8,
            ..BveOptions::default()
        };
        assert!(matches!(
            bve_coefficients(demo_triad(), &opts),
            Err(Error::Precondition(_))
        ));
        let bad = [WaveVector::new(4, 12), WaveVector::new(5, 14), WaveVector::new(9, 14)];
        assert!(matches!(
            bve_coefficients(bad, &BveOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn equal_modes_cancel() {
        // ω(1,n) + ω(1,n) = ω(2,n) holds for every n, and the bracket is
        // antisymmetric under exchanging two equal modes.
        let modes = [WaveVector::new(1, 3), WaveVector::new(1, 3), WaveVector::new(2, 3)];
        let t = bve_coefficients(modes, &BveOptions::default()).unwrap();
        assert_eq!(t.z, 0.0);
    }
}
