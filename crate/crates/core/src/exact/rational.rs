use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact rational number `num/den` in lowest terms.
///
/// The denominator is always positive and zero is stored as `0/1`, so the
/// derived `Eq` and `Hash` agree with numeric equality. All arithmetic is
/// checked and reports [`Error::Overflow`] instead of wrapping.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Rational> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        if num == 0 {
            return Ok(Rational::ZERO);
        }
        if num == i128::MIN || den == i128::MIN {
            return Err(Error::Overflow("rational normalization"));
        }
        let g = gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Rational { num, den })
    }

    pub fn from_integer(n: i128) -> Rational {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn signum(&self) -> i128 {
        self.num.signum()
    }

    pub fn checked_add(self, rhs: Rational) -> Result<Rational> {
        // Reduce by gcd of denominators first to keep intermediates small.
        let g = gcd(self.den, rhs.den);
        let lhs_scale = rhs.den / g;
        let rhs_scale = self.den / g;
        let a = self.num.checked_mul(lhs_scale).ok_or(Error::Overflow("rational add"))?;
        let b = rhs.num.checked_mul(rhs_scale).ok_or(Error::Overflow("rational add"))?;
        let num = a.checked_add(b).ok_or(Error::Overflow("rational add"))?;
        let den = self.den.checked_mul(lhs_scale).ok_or(Error::Overflow("rational add"))?;
        Rational::new(num, den)
    }

    pub fn checked_sub(self, rhs: Rational) -> Result<Rational> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_neg(self) -> Result<Rational> {
        let num = self.num.checked_neg().ok_or(Error::Overflow("rational negate"))?;
        Ok(Rational { num, den: self.den })
    }

    pub fn checked_mul(self, rhs: Rational) -> Result<Rational> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Rational::ZERO);
        }
        let g1 = gcd(self.num, rhs.den);
        let g2 = gcd(rhs.num, self.den);
        let num = (self.num / g1)
            .checked_mul(rhs.num / g2)
            .ok_or(Error::Overflow("rational multiply"))?;
        let den = (self.den / g2)
            .checked_mul(rhs.den / g1)
            .ok_or(Error::Overflow("rational multiply"))?;
        Rational::new(num, den)
    }

    pub fn checked_recip(self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Rational::new(self.den, self.num)
    }

    pub fn checked_div(self, rhs: Rational) -> Result<Rational> {
        self.checked_mul(rhs.checked_recip()?)
    }

    pub fn to_f64(&self) -> f64 {
        // Both parts fit in f64 with at most one rounding each for the
        // magnitudes this crate produces.
        self.num as f64 / self.den as f64
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n as i128)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.num.checked_mul(other.den), other.num.checked_mul(self.den)) {
            (Some(a), Some(b)) => a.cmp(&b),
            // Cross products overflow only far outside the working range;
            // fall back to the floating values there.
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        let bad = || Error::Config(format!("not a rational number: `{s}`"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i128 = n.trim().parse().map_err(|_| bad())?;
                let d: i128 = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn normalizes_sign_and_gcd() {
        let x = r(6, -8);
        assert_eq!((x.numer(), x.denom()), (-3, 4));
        assert_eq!(r(0, -5), Rational::ZERO);
        assert_eq!(r(0, 7).denom(), 1);
    }

    #[test]
    fn arithmetic() {
        assert_eq!(
            r(1, 5).checked_add(r(1, 45)).unwrap().checked_sub(r(1, 15)).unwrap(),
            r(7, 45)
        );
        assert_eq!(r(-2, 39).checked_add(r(-1, 21)).unwrap(), r(-9, 91));
        assert_eq!(r(3, 4).checked_mul(r(8, 9)).unwrap(), r(2, 3));
        assert_eq!(r(3, 4).checked_div(r(3, 8)).unwrap(), Rational::from_integer(2));
        assert!(Rational::ZERO.checked_recip().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = Rational::from_integer(i128::MAX / 2 + 1);
        assert!(matches!(big.checked_add(big), Err(Error::Overflow(_))));
        assert!(matches!(big.checked_mul(big), Err(Error::Overflow(_))));
        assert!(Rational::new(i128::MIN, 1).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("-8/156".parse::<Rational>().unwrap(), r(-2, 39));
        assert_eq!("7".parse::<Rational>().unwrap().to_string(), "7");
        assert_eq!(r(-2, 39).to_string(), "-2/39");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering() {
        assert!(r(1, 3) < r(1, 2));
        assert!(r(-1, 2) < r(-1, 3));
        let mut v = vec![r(3, 2), r(-1, 1), r(1, 7)];
        v.sort();
        assert_eq!(v, vec![r(-1, 1), r(1, 7), r(3, 2)]);
    }
}
