//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;

/// Smallest prime factor of every n ≤ limit.
pub fn spf_sieve(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// `(gamma, kernel)` with `n = gamma^c · kernel`, from a sieve.
pub fn kernel_from_sieve(mut n: u64, c: u32, spf: &[u32]) -> (u64, u64) {
    let (mut gamma, mut kernel) = (1u64, 1u64);
    while n > 1 {
        let p = spf[n as usize] as u64;
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        gamma *= p.pow(e / c);
        kernel *= p.pow(e % c);
    }
    (gamma, kernel)
}

/// One term `(num/den) · q^(1/c)`.
#[derive(Clone, Copy, Debug)]
pub struct Term {
    pub num: i64,
    pub den: i64,
    pub q: u64,
    pub c: u32,
}

/// Sign of `Σ terms` decided with `digits` decimal digits, or `None` when
/// the sum lies inside the truncation error.
pub fn sum_sign(terms: &[Term], digits: u32) -> Option<i32> {
    let lcm = terms
        .iter()
        .fold(BigInt::from(1), |acc, t| acc.lcm(&BigInt::from(t.den)));
    let mut total = BigInt::from(0);
    let mut slack = BigInt::from(1);
    for t in terms {
        let scale = BigInt::from(10u32).pow(digits * t.c);
        let root = (BigInt::from(t.q) * scale).nth_root(t.c);
        let weight = BigInt::from(t.num) * (&lcm / BigInt::from(t.den));
        slack += BigInt::from(weight.magnitude().clone());
        total += weight * root;
    }
    let mag = BigInt::from(total.magnitude().clone());
    if mag <= slack {
        None
    } else if total > BigInt::from(0) {
        Some(1)
    } else {
        Some(-1)
    }
}

/// Associated Legendre function from Rodrigues' formula,
/// `(1-x²)^(m/2) / (2^n n!) · d^(n+m)/dx^(n+m) (x²-1)^n`, without the
/// Condon-Shortley phase.
pub fn rodrigues(n: u32, m: u32, x: f64) -> f64 {
    // coefficients of (x² - 1)^n by ascending power
    let mut poly = vec![BigInt::from(0); 2 * n as usize + 1];
    let mut binom = BigInt::from(1);
    for k in 0..=n {
        let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
        poly[2 * k as usize] = &binom * sign;
        binom = binom * (n - k) / (k + 1);
    }
    for _ in 0..n + m {
        poly = poly.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
        if poly.is_empty() {
            return 0.0;
        }
    }
    let mut denom = BigInt::from(1) << n;
    for k in 2..=n {
        denom *= k;
    }
    let to_f = |b: &BigInt| b.to_string().parse::<f64>().unwrap();
    let d = to_f(&denom);
    let mut value = 0.0;
    for c in poly.iter().rev() {
        value = value * x + to_f(c) / d;
    }
    value * (1.0 - x * x).powf(m as f64 / 2.0)
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Spherical Rossby triads `k₁ + k₂ → k₃` with `1 ≤ m ≤ n ≤ bound`, by a
/// plain loop in integer arithmetic: `m₁ + m₂ = m₃` and
/// `m₁/N₁ + m₂/N₂ = m₃/N₃` with `N = n(n+1)`.
pub fn rossby_triads(bound: i64) -> BTreeSet<[(i64, i64); 3]> {
    let mut out = BTreeSet::new();
    let big = |n: i64| n * (n + 1);
    for n1 in 1..=bound {
        for m1 in 1..=n1 {
            for n2 in 1..=bound {
                for m2 in 1..=n2 {
                    let m3 = m1 + m2;
                    for n3 in m3..=bound {
                        let (a, b, c) = (big(n1), big(n2), big(n3));
                        if m1 * b * c + m2 * a * c == m3 * a * b {
                            let mut lhs = [(m1, n1), (m2, n2)];
                            lhs.sort();
                            if lhs[0] == lhs[1] {
                                continue;
                            }
                            out.insert([lhs[0], lhs[1], (m3, n3)]);
                        }
                    }
                }
            }
        }
    }
    out
}
