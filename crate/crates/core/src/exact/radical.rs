//! Radical numbers `coeff · q^(1/c)` and their canonical sums.
//!
//! For a fixed degree `c`, the real roots `q^(1/c)` of distinct c-free
//! kernels `q` are linearly independent over the rationals. A sum of such
//! terms therefore vanishes exactly when the rational coefficients collected
//! under each kernel vanish separately, which is what makes
//! [`radical_sum_is_zero`] a complete zero test for canonical sums.

use std::collections::BTreeMap;
use std::fmt;

use super::factor::cfree_decompose;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Exact value `coeff · kernel^(1/degree)` with a c-free kernel.
///
/// Degree 1 values are plain rationals and always carry kernel 1, as does
/// every zero value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RadicalNumber {
    coeff: Rational,
    kernel: u64,
    degree: u32,
}

impl RadicalNumber {
    /// Builds `coeff · radicand^(1/degree)`, pulling every full `degree`-th
    /// power out of the radicand and into the coefficient.
    pub fn new(coeff: Rational, radicand: u64, degree: u32) -> Result<RadicalNumber> {
        if degree == 0 {
            return Err(Error::Domain("radical degree must be positive".into()));
        }
        if radicand == 0 || coeff.is_zero() {
            return Ok(RadicalNumber::rational_at(Rational::ZERO, degree));
        }
        if degree == 1 {
            let c = coeff.checked_mul(Rational::from_integer(radicand as i128))?;
            return Ok(RadicalNumber::rational_at(c, 1));
        }
        let (gamma, kernel) = cfree_decompose(radicand, degree)?;
        let coeff = coeff.checked_mul(Rational::from_integer(gamma as i128))?;
        Ok(RadicalNumber { coeff, kernel, degree })
    }

    /// A rational value viewed as a radical of the given degree (kernel 1).
    pub fn rational_at(value: Rational, degree: u32) -> RadicalNumber {
        RadicalNumber {
            coeff: value,
            kernel: 1,
            degree: degree.max(1),
        }
    }

    pub fn coeff(&self) -> Rational {
        self.coeff
    }

    pub fn kernel(&self) -> u64 {
        self.kernel
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.kernel == 1
    }

    pub fn scale(&self, factor: Rational) -> Result<RadicalNumber> {
        let coeff = self.coeff.checked_mul(factor)?;
        if coeff.is_zero() {
            return Ok(RadicalNumber::rational_at(Rational::ZERO, self.degree));
        }
        Ok(RadicalNumber { coeff, ..*self })
    }

    /// `1 / (a · q^(1/c)) = (1 / (a·q)) · (q^(c-1))^(1/c)`, re-canonicalized.
    pub fn recip(&self) -> Result<RadicalNumber> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        if self.kernel == 1 {
            return Ok(RadicalNumber::rational_at(self.coeff.checked_recip()?, self.degree));
        }
        let q = Rational::from_integer(self.kernel as i128);
        let coeff = self.coeff.checked_mul(q)?.checked_recip()?;
        let radicand = self
            .kernel
            .checked_pow(self.degree - 1)
            .ok_or(Error::Overflow("radical reciprocal"))?;
        RadicalNumber::new(coeff, radicand, self.degree)
    }

    pub fn to_f64(&self) -> f64 {
        let root = match self.degree {
            1 => 1.0,
            2 => (self.kernel as f64).sqrt(),
            4 => (self.kernel as f64).sqrt().sqrt(),
            c => (self.kernel as f64).powf(1.0 / c as f64),
        };
        self.coeff.to_f64() * root
    }
}

impl fmt::Display for RadicalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kernel == 1 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "({})*{}^(1/{})", self.coeff, self.kernel, self.degree)
        }
    }
}

impl fmt::Debug for RadicalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical sum of radicals sharing one degree: kernel → nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RadicalSum {
    degree: u32,
    terms: BTreeMap<u64, Rational>,
}

impl RadicalSum {
    pub fn new(degree: u32) -> RadicalSum {
        RadicalSum {
            degree: degree.max(1),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(degree: u32, terms: I) -> Result<RadicalSum>
    where
        I: IntoIterator<Item = RadicalNumber>,
    {
        let mut sum = RadicalSum::new(degree);
        for t in terms {
            sum.push(t)?;
        }
        Ok(sum)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<u64, Rational> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds one term, merging like kernels and dropping zero coefficients.
    pub fn push(&mut self, term: RadicalNumber) -> Result<()> {
        if term.degree != self.degree {
            return Err(Error::MixedDegree {
                left: self.degree,
                right: term.degree,
            });
        }
        if term.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(term.kernel).or_insert(Rational::ZERO);
        *entry = entry.checked_add(term.coeff)?;
        if entry.is_zero() {
            self.terms.remove(&term.kernel);
        }
        Ok(())
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&q, &c)| {
                RadicalNumber {
                    coeff: c,
                    kernel: q,
                    degree: self.degree,
                }
                .to_f64()
            })
            .sum()
    }
}

/// Adds two radicals of equal degree into a canonical sum.
pub fn radical_add(a: RadicalNumber, b: RadicalNumber) -> Result<RadicalSum> {
    if a.degree != b.degree {
        return Err(Error::MixedDegree {
            left: a.degree,
            right: b.degree,
        });
    }
    RadicalSum::from_terms(a.degree, [a, b])
}

/// Exact zero test. Returns the per-kernel residues, empty iff the sum is 0.
pub fn radical_sum_is_zero(s: &RadicalSum) -> (bool, BTreeMap<u64, Rational>) {
    let residues: BTreeMap<u64, Rational> = s
        .terms
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&q, &c)| (q, c))
        .collect();
    (residues.is_empty(), residues)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn sqrt_term(coeff: Rational, radicand: u64) -> RadicalNumber {
        RadicalNumber::new(coeff, radicand, 2).unwrap()
    }

    #[test]
    fn canonical_construction() {
        let x = sqrt_term(Rational::ONE, 405);
        assert_eq!((x.coeff(), x.kernel()), (Rational::from_integer(9), 5));
        let z = sqrt_term(Rational::ZERO, 405);
        assert_eq!(z.kernel(), 1);
        let r = RadicalNumber::new(rat(1, 2), 6, 1).unwrap();
        assert_eq!((r.coeff(), r.kernel()), (Rational::from_integer(3), 1));
        let fourth = RadicalNumber::new(Rational::ONE, 48, 4).unwrap();
        assert_eq!((fourth.coeff(), fourth.kernel()), (Rational::from_integer(2), 3));
    }

    #[test]
    fn add_like_and_unlike_terms() {
        let s = radical_add(sqrt_term(Rational::ONE, 5), sqrt_term(Rational::from_integer(9), 5)).unwrap();
        assert_eq!(
            s.terms().iter().collect::<Vec<_>>(),
            vec![(&5, &Rational::from_integer(10))]
        );

        let s = radical_add(sqrt_term(Rational::ONE, 5), sqrt_term(Rational::from_integer(-1), 5)).unwrap();
        assert!(s.is_empty());

        let s = radical_add(sqrt_term(Rational::ONE, 5), sqrt_term(Rational::ONE, 2)).unwrap();
        assert_eq!(s.terms().len(), 2);
        assert_eq!(s.terms()[&5], Rational::ONE);
        assert_eq!(s.terms()[&2], Rational::ONE);
    }

    #[test]
    fn mixed_degree_rejected() {
        let a = RadicalNumber::new(Rational::ONE, 2, 2).unwrap();
        let b = RadicalNumber::new(Rational::ONE, 2, 4).unwrap();
        assert!(matches!(
            radical_add(a, b),
            Err(Error::MixedDegree { left: 2, right: 4 })
        ));
    }

    #[test]
    fn zero_test() {
        let (zero, res) = radical_sum_is_zero(&RadicalSum::new(2));
        assert!(zero && res.is_empty());

        let mut s = RadicalSum::new(2);
        s.push(sqrt_term(Rational::from_integer(10), 5)).unwrap();
        s.push(sqrt_term(Rational::ONE, 2)).unwrap();
        let (zero, res) = radical_sum_is_zero(&s);
        assert!(!zero);
        assert_eq!(res[&5], Rational::from_integer(10));
        assert_eq!(res[&2], Rational::ONE);

        // 1/√5 + 1/√5 - 2/√5 written as (1/5)√5 + (1/5)√5 - (2/5)√5.
        let inv = sqrt_term(Rational::ONE, 5).recip().unwrap();
        assert_eq!((inv.coeff(), inv.kernel()), (rat(1, 5), 5));
        let s = RadicalSum::from_terms(2, [inv, inv, sqrt_term(rat(-2, 5), 5)]).unwrap();
        assert!(radical_sum_is_zero(&s).0);
        let float = 2.0 / 5f64.sqrt() - 2.0 / 5.0 * 5f64.sqrt();
        assert!(float.abs() < 1e-12);
    }

    #[test]
    fn reciprocal_of_higher_degree() {
        // 1/(2·3^(1/4)) = (1/6)·27^(1/4)
        let x = RadicalNumber::new(Rational::from_integer(2), 3, 4).unwrap();
        let r = x.recip().unwrap();
        assert_eq!((r.coeff(), r.kernel()), (rat(1, 6), 27));
        assert!((r.to_f64() * x.to_f64() - 1.0).abs() < 1e-15);
        // 1/(4^(1/4)) : 4 = 2^2 is 4-free, 4^3 = 64 = 2^4·4 → (2/4)·4^(1/4)
        let y = RadicalNumber::new(Rational::ONE, 4, 4).unwrap();
        let r = y.recip().unwrap();
        assert_eq!((r.coeff(), r.kernel()), (rat(1, 2), 4));
    }
}
