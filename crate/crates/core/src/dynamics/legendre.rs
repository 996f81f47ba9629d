//! Associated Legendre functions by upward recurrence in the degree.
//!
//! Two conventions are provided. `Unnormalized` is the Ferrers function
//! without the Condon-Shortley phase, `P_m^m(x) = (2m-1)!! (1-x²)^(m/2)`, so
//! `P_n^0(1) = 1`. `Orthonormal` scales it by
//! `sqrt((2n+1)/2 · (n-m)!/(n+m)!)`, which gives unit norm on `[-1, 1]` and
//! keeps values of order one at high degree. `FourPi` is the geodesy
//! convention `sqrt((2-δ_{m0})(2n+1)(n-m)!/(n+m)!)`, under which the real
//! harmonic `P_n^m(sin φ) cos mλ` has unit mean square over the sphere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    #[default]
    Unnormalized,
    Orthonormal,
    FourPi,
}

impl Normalization {
    /// Factor relative to the orthonormal convention, where one exists.
    fn orthonormal_scale(self, m: u32) -> Option<f64> {
        match self {
            Normalization::Unnormalized => None,
            Normalization::Orthonormal => Some(1.0),
            Normalization::FourPi => Some(if m == 0 { 2f64.sqrt() } else { 2.0 }),
        }
    }
}

fn check(n: u32, m: u32, x: f64) -> Result<()> {
    if m > n {
        return Err(Error::Domain(format!("Legendre order m = {m} exceeds degree n = {n}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("Legendre argument {x} lies outside [-1, 1]")));
    }
    Ok(())
}

/// `P_n^m(x)` under the unnormalized convention.
pub fn assoc_legendre(n: u32, m: u32, x: f64) -> Result<f64> {
    assoc_legendre_with(n, m, x, Normalization::Unnormalized)
}

pub fn assoc_legendre_with(n: u32, m: u32, x: f64, norm: Normalization) -> Result<f64> {
    check(n, m, x)?;
    Ok(pair(n, m, x, norm).0)
}

/// `(P_n^m(x), P_{n-1}^m(x))`, the second being 0 when `n = m`.
fn pair(n: u32, m: u32, x: f64, norm: Normalization) -> (f64, f64) {
    if let Some(scale) = norm.orthonormal_scale(m).filter(|&f| f != 1.0) {
        let (p, q) = pair(n, m, x, Normalization::Orthonormal);
        return (scale * p, scale * q);
    }
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mf = m as f64;
    let mut pmm = match norm {
        Normalization::Unnormalized => 1.0,
        _ => std::f64::consts::FRAC_1_SQRT_2,
    };
    for k in 1..=m {
        let kf = k as f64;
        pmm *= match norm {
            Normalization::Unnormalized => (2.0 * kf - 1.0) * s,
            _ => ((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * s,
        };
    }
    if n == m {
        return (pmm, 0.0);
    }
    let (mut prev, mut cur) = (
        pmm,
        match norm {
            Normalization::Unnormalized => x * (2.0 * mf + 1.0) * pmm,
            _ => x * (2.0 * mf + 3.0).sqrt() * pmm,
        },
    );
    for l in m + 2..=n {
        let lf = l as f64;
        let next = match norm {
            Normalization::Unnormalized => ((2.0 * lf - 1.0) * x * cur - (lf + mf - 1.0) * prev) / (lf - mf),
            _ => {
                let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
                let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
                a * x * cur - a * b * prev
            }
        };
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `P_n^m(sin φ)` and its derivative in `φ`, for `|φ| < π/2`.
pub fn legendre_in_latitude(n: u32, m: u32, phi: f64, norm: Normalization) -> Result<(f64, f64)> {
    let x = phi.sin();
    check(n, m, x)?;
    let c = phi.cos();
    if phi.abs() >= std::f64::consts::FRAC_PI_2 || c <= 0.0 {
        return Err(Error::Domain("latitude derivative is singular at the poles".into()));
    }
    let (p, q) = pair(n, m, x, norm);
    let (nf, mf) = (n as f64, m as f64);
    // (1 - x²) dP_n/dx = (n+m) P_{n-1} - n x P_n, and dP/dφ = cos φ · dP/dx.
    let lower = if n == m {
        0.0
    } else {
        match norm {
            Normalization::Unnormalized => (nf + mf) * q,
            _ => ((2.0 * nf + 1.0) * (nf * nf - mf * mf) / (2.0 * nf - 1.0)).sqrt() * q,
        }
    };
    Ok((p, (lower - nf * x * p) / c))
}
