use crate::error::{Error, Result};

pub const MAX_QUADRATURE_ORDER: usize = 4096;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if order == 0 || order > MAX_QUADRATURE_ORDER {
        return Err(Error::Precondition(format!(
            "quadrature order must be in 1..={MAX_QUADRATURE_ORDER}, got {order}"
        )));
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `∫_a^b f` by Gauss-Legendre of the given order.
pub fn integrate(order: usize, a: f64, b: f64, mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let (x, w) = gauss_legendre(order)?;
    let (half, mid) = (0.5 * (b - a), 0.5 * (b + a));
    let mut sum = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        sum += wi * f(mid + half * xi)?;
    }
    Ok(sum * half)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 64, 257] {
            let (x, w) = gauss_legendre(n).unwrap();
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn exact_for_polynomials() {
        // degree 2n-1 is integrated exactly
        let v = integrate(4, -1.0, 1.0, |x| Ok(x.powi(6) + x.powi(7))).unwrap();
        assert!((v - 2.0 / 7.0).abs() < 1e-14);
        let c = integrate(32, 0.0, std::f64::consts::PI, |x| Ok(x.sin())).unwrap();
        assert!((c - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_order() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(MAX_QUADRATURE_ORDER + 1).is_err());
    }
}
