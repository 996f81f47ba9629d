//! Deterministic trial-division factorization and c-free kernel extraction.
//!
//! Trial division runs over the primes below [`TRIAL_DIVISION_BOUND`]. Any
//! input whose cofactor after that pass could still be composite (it is at
//! least the square of the largest sieved prime) is rejected with
//! [`Error::FactorizationBound`]. Every `n` below `(2^21 - 9)^2`, roughly
//! `2^42`, always factors.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Primes below this bound are used as trial divisors.
pub const TRIAL_DIVISION_BOUND: u32 = 1 << 21;

/// Largest accepted input, `2^63 - 1`.
pub const MAX_FACTOR_INPUT: u64 = i64::MAX as u64;

fn primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; limit];
        let mut out = Vec::new();
        for i in 2..limit {
            if composite[i] {
                continue;
            }
            out.push(i as u32);
            let mut j = i * i;
            while j < limit {
                composite[j] = true;
                j += i;
            }
        }
        out
    })
}

/// Prime factorization `base = Π prime^exponent`, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    base: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    if n > MAX_FACTOR_INPUT {
        return Err(Error::Domain(format!("{n} exceeds the factorization bound 2^63-1")));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let table = primes();
    for &p in table {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rest > 1 {
        let last = *table.last().expect("sieve is nonempty") as u64;
        if rest >= last * last {
            return Err(Error::FactorizationBound(n));
        }
        factors.push((rest, 1));
    }
    Ok(Factorization { base: n, factors })
}

/// Splits `n = gamma^c * kernel` with `kernel` c-free (no prime exponent ≥ c).
pub fn cfree_decompose(n: u64, c: u32) -> Result<(u64, u64)> {
    if c < 2 {
        return Err(Error::Domain(format!("c-free decomposition needs c >= 2, got {c}")));
    }
    let f = factorize(n)?;
    let mut gamma: u64 = 1;
    let mut kernel: u64 = 1;
    for &(p, e) in f.factors() {
        let overflow = || Error::Overflow("c-free decomposition");
        gamma = p
            .checked_pow(e / c)
            .and_then(|f| gamma.checked_mul(f))
            .ok_or_else(overflow)?;
        kernel = kernel.checked_mul(p.pow(e % c)).ok_or_else(overflow)?;
    }
    Ok((gamma, kernel))
}

/// True when no prime divides `n` to a power `>= c`.
pub fn is_cfree(n: u64, c: u32) -> Result<bool> {
    Ok(factorize(n)?.factors().iter().all(|&(_, e)| e < c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(405).unwrap().factors(), &[(3, 4), (5, 1)]);
        assert_eq!(factorize(2).unwrap().factors(), &[(2, 1)]);
    }

    #[test]
    fn rejects_zero_and_oversize() {
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
        assert!(matches!(factorize(u64::MAX), Err(Error::Domain(_))));
    }

    #[test]
    fn large_inputs() {
        // 2^61 - 1 is a Mersenne prime far above the sieve squared.
        let m61 = (1u64 << 61) - 1;
        assert!(matches!(factorize(m61), Err(Error::FactorizationBound(_))));
        // 2^31 - 1 is prime and larger than every trial divisor.
        let p = (1u64 << 31) - 1;
        assert_eq!(factorize(3 * p).unwrap().factors(), &[(3, 1), (p, 1)]);
        let f = factorize(MAX_FACTOR_INPUT).unwrap();
        assert_eq!(
            f.factors(),
            &[(7, 2), (73, 1), (127, 1), (337, 1), (92737, 1), (649657, 1)]
        );
    }

    #[test]
    fn decompositions() {
        assert_eq!(cfree_decompose(5, 2).unwrap(), (1, 5));
        assert_eq!(cfree_decompose(405, 2).unwrap(), (9, 5));
        assert_eq!(cfree_decompose(1, 3).unwrap(), (1, 1));
        assert_eq!(cfree_decompose(8, 2).unwrap(), (2, 2));
        assert_eq!(cfree_decompose(8, 3).unwrap(), (2, 1));
        assert_eq!(cfree_decompose(48, 4).unwrap(), (2, 3));
        assert!(matches!(cfree_decompose(8, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn exhaustive_gamma_check_for_eight() {
        // The only gamma with gamma^2 * q = 8 and q square-free is gamma = 2.
        let found: Vec<_> = (1u64..=2)
            .filter(|g| 8 % (g * g) == 0 && is_cfree(8 / (g * g), 2).unwrap())
            .collect();
        assert_eq!(found, vec![2]);
    }
}
