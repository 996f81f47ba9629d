//! The three-wave amplitude system
//! `A₁' = α₁ A₃ A₂*`, `A₂' = α₂ A₁* A₃`, `A₃' = α₃ A₁ A₂`
//! and its quadratic invariants.
//!
//! Along the flow, with `W = A₁* A₂* A₃`,
//! `d|A₁|²/dT = 2 Re(α₁ W)`, `d|A₂|²/dT = 2 Re(α₂ W)` and
//! `d|A₃|²/dT = 2 Re(conj(α₃) W)`.
//! When `(α₁, α₂, conj α₃) = e^{iθ} (a₁, a₂, a₃)` with real `aᵢ`, all three
//! rates are `aᵢ R` for one common `R`, so `a_k |Aᵢ|² - aᵢ |A_k|²` is
//! conserved for every pair. Both the real generic form and the BVE form
//! (purely imaginary coefficients) have this structure.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-3;
pub const DEFAULT_HORIZON: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriadSystem {
    pub alphas: [Complex64; 3],
}

impl TriadSystem {
    pub fn new(alphas: [Complex64; 3]) -> Result<TriadSystem> {
        if alphas.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::Domain("coupling coefficients must be finite".into()));
        }
        if alphas.iter().all(|a| *a == Complex64::new(0.0, 0.0)) {
            return Err(Error::Precondition("all coupling coefficients vanish".into()));
        }
        Ok(TriadSystem { alphas })
    }

    pub fn real(a1: f64, a2: f64, a3: f64) -> Result<TriadSystem> {
        TriadSystem::new([a1, a2, a3].map(|a| Complex64::new(a, 0.0)))
    }

    /// The same flow run backwards in time.
    pub fn reversed(&self) -> TriadSystem {
        TriadSystem {
            alphas: self.alphas.map(|a| -a),
        }
    }

    pub fn rhs(&self, a: &[Complex64; 3]) -> [Complex64; 3] {
        let [a1, a2, a3] = self.alphas;
        [a1 * a[2] * a[1].conj(), a2 * a[0].conj() * a[2], a3 * a[0] * a[1]]
    }

    /// Real weights `(a₁, a₂, a₃)` sharing the common phase of
    /// `(α₁, α₂, conj α₃)`, or `None` when no common phase exists.
    pub fn invariant_weights(&self) -> Option<[f64; 3]> {
        let v = [self.alphas[0], self.alphas[1], self.alphas[2].conj()];
        let lead = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm()))?;
        if lead.norm() == 0.0 {
            return None;
        }
        let phase = lead / lead.norm();
        let mut w = [0.0; 3];
        for (wi, vi) in w.iter_mut().zip(v) {
            let r = vi / phase;
            if r.im.abs() > 1e-12 * lead.norm() {
                return None;
            }
            *wi = r.re;
        }
        Some(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeState {
    pub a: [Complex64; 3],
    pub t: f64,
}

impl AmplitudeState {
    pub fn new(a: [Complex64; 3]) -> AmplitudeState {
        AmplitudeState { a, t: 0.0 }
    }

    pub fn real(a1: f64, a2: f64, a3: f64) -> AmplitudeState {
        AmplitudeState::new([a1, a2, a3].map(|x| Complex64::new(x, 0.0)))
    }

    pub fn energies(&self) -> [f64; 3] {
        self.a.map(|z| z.norm_sqr())
    }

    fn is_finite(&self) -> bool {
        self.a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// The pair of conserved quadratic combinations of `|Aᵢ|²`.
pub fn manley_rowe(system: &TriadSystem, state: &AmplitudeState) -> Result<(f64, f64)> {
    let (i, _) = invariants_with_scale(system, state)?;
    Ok(i)
}

/// Invariants and, for each, the magnitude of the terms it combines, which
/// serves as the reference for relative drift.
fn invariants_with_scale(system: &TriadSystem, state: &AmplitudeState) -> Result<((f64, f64), (f64, f64))> {
    let w = system.invariant_weights().ok_or_else(|| {
        Error::UnsupportedStructure("coefficients (α₁, α₂, conj α₃) do not share a common phase".into())
    })?;
    let e = state.energies();
    let k = (0..3)
        .max_by(|&a, &b| w[a].abs().total_cmp(&w[b].abs()).then(b.cmp(&a)))
        .expect("three weights");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let inv = |i: usize| w[k] * e[i] - w[i] * e[k];
    let scale = |i: usize| w[k].abs() * e[i] + w[i].abs() * e[k];
    Ok(((inv(others[0]), inv(others[1])), (scale(others[0]), scale(others[1]))))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<AmplitudeState>,
    /// `(I₁, I₂)` at every sample; empty when the system has no invariants.
    pub invariants: Vec<(f64, f64)>,
    /// `|I(T) - I(0)|` per sample.
    pub invariant_drift: Vec<(f64, f64)>,
    /// Reference magnitudes of the two invariants at `T = 0`.
    pub invariant_scale: (f64, f64),
}

impl Trajectory {
    pub fn last(&self) -> &AmplitudeState {
        self.samples.last().expect("trajectories hold the initial sample")
    }

    /// Largest drift relative to the reference magnitude (0 when both
    /// vanish, as for the zero state).
    pub fn max_relative_drift(&self) -> (f64, f64) {
        let rel = |d: f64, s: f64| if s > 0.0 { d / s } else { d };
        self.invariant_drift.iter().fold((0.0f64, 0.0f64), |acc, &(d1, d2)| {
            (
                acc.0.max(rel(d1, self.invariant_scale.0)),
                acc.1.max(rel(d2, self.invariant_scale.1)),
            )
        })
    }
}

/// Classical fixed-step RK4 from `initial.t` to `initial.t + horizon`,
/// recording every step. The step is shrunk so that it divides the horizon.
pub fn integrate_triad(system: &TriadSystem, initial: &AmplitudeState, horizon: f64, step: f64) -> Result<Trajectory> {
    integrate_triad_sampled(system, initial, horizon, step, 1)
}

/// As [`integrate_triad`], keeping every `every`-th step and the endpoint.
pub fn integrate_triad_sampled(
    system: &TriadSystem,
    initial: &AmplitudeState,
    horizon: f64,
    step: f64,
    every: usize,
) -> Result<Trajectory> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Precondition(format!("step must be positive, got {step}")));
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::Precondition(format!("horizon must be positive, got {horizon}")));
    }
    if every == 0 {
        return Err(Error::Precondition("sampling interval must be at least 1".into()));
    }
    if !initial.is_finite() {
        return Err(Error::Divergence { time: initial.t });
    }
    let steps = (horizon / step).ceil().max(1.0);
    if steps > 1e9 {
        return Err(Error::Capacity {
            what: "integration step",
            count: steps as u128,
            limit: 1_000_000_000,
        });
    }
    let steps = steps as u64;
    let h = horizon / steps as f64;
    let tracked = system.invariant_weights().is_some();
    let (i0, scale) = if tracked {
        invariants_with_scale(system, initial)?
    } else {
        ((0.0, 0.0), (0.0, 0.0))
    };

    let mut traj = Trajectory {
        samples: Vec::with_capacity((steps / every as u64 + 2) as usize),
        invariants: Vec::new(),
        invariant_drift: Vec::new(),
        invariant_scale: scale,
    };
    let record = |traj: &mut Trajectory, s: AmplitudeState| -> Result<()> {
        if tracked {
            let (i, _) = invariants_with_scale(system, &s)?;
            traj.invariants.push(i);
            traj.invariant_drift.push(((i.0 - i0.0).abs(), (i.1 - i0.1).abs()));
        }
        traj.samples.push(s);
        Ok(())
    };
    record(&mut traj, *initial)?;
    let mut a = initial.a;
    // Compensated accumulation keeps roundoff below the truncation error
    // over long fixed-step runs.
    let mut carry = [Complex64::new(0.0, 0.0); 3];
    for k in 1..=steps {
        let inc = rk4_increment(system, &a, h);
        for i in 0..3 {
            let y = inc[i] - carry[i];
            let t = a[i] + y;
            carry[i] = (t - a[i]) - y;
            a[i] = t;
        }
        let state = AmplitudeState {
            a,
            t: initial.t + k as f64 * h,
        };
        if !state.is_finite() {
            return Err(Error::Divergence { time: state.t });
        }
        if k % every as u64 == 0 || k == steps {
            record(&mut traj, state)?;
        }
    }
    Ok(traj)
}

fn rk4_increment(system: &TriadSystem, a: &[Complex64; 3], h: f64) -> [Complex64; 3] {
    let add = |x: &[Complex64; 3], k: &[Complex64; 3], c: f64| [x[0] + k[0] * c, x[1] + k[1] * c, x[2] + k[2] * c];
    let k1 = system.rhs(a);
    let k2 = system.rhs(&add(a, &k1, h / 2.0));
    let k3 = system.rhs(&add(a, &k2, h / 2.0));
    let k4 = system.rhs(&add(a, &k3, h));
    std::array::from_fn(|i| (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_state_is_fixed() {
        let sys = TriadSystem::real(1.0, 1.0, -1.0).unwrap();
        let t = integrate_triad(&sys, &AmplitudeState::real(0.0, 0.0, 0.0), 1.0, 0.01).unwrap();
        assert!(t.samples.iter().all(|s| s.energies() == [0.0; 3]));
        assert_eq!(manley_rowe(&sys, t.last()).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn decoupled_pair_stays_constant() {
        let sys = TriadSystem::real(0.7, -0.4, 0.0).unwrap();
        let t = integrate_triad(&sys, &AmplitudeState::real(0.3, 0.2, 0.0), 5.0, 0.01).unwrap();
        let last = t.last();
        assert_eq!(last.a[0], Complex64::new(0.3, 0.0));
        assert_eq!(last.a[1], Complex64::new(0.2, 0.0));
    }

    #[test]
    fn step_divides_horizon() {
        let sys = TriadSystem::real(1.0, 1.0, -1.0).unwrap();
        let t = integrate_triad(&sys, &AmplitudeState::real(0.1, 0.1, 0.1), 1.0, 0.3).unwrap();
        assert_eq!(t.samples.len(), 5);
        assert!((t.last().t - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        let sys = TriadSystem::real(1.0, 1.0, -1.0).unwrap();
        let s = AmplitudeState::real(0.1, 0.1, 0.1);
        assert!(integrate_triad(&sys, &s, 1.0, 0.0).is_err());
        assert!(integrate_triad(&sys, &s, -1.0, 0.1).is_err());
        assert!(TriadSystem::real(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn blow_up_reports_divergence() {
        // All-positive coefficients give finite-time blow-up.
        let sys = TriadSystem::real(1.0, 1.0, 1.0).unwrap();
        let err = integrate_triad(&sys, &AmplitudeState::real(1.0, 1.0, 1.0), 100.0, 0.01).unwrap_err();
        assert!(matches!(err, Error::Divergence { time } if time > 0.0));
    }

    #[test]
    fn unsupported_structure() {
        let sys = TriadSystem::new([
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        assert!(matches!(
            manley_rowe(&sys, &AmplitudeState::real(0.1, 0.1, 0.1)),
            Err(Error::UnsupportedStructure(_))
        ));
        let t = integrate_triad(&sys, &AmplitudeState::real(0.1, 0.1, 0.1), 0.1, 0.01).unwrap();
        assert!(t.invariants.is_empty());
    }
}
