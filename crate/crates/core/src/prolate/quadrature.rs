use std::f64::consts::PI;

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "quadrature order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
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
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Barycentric interpolation weights for Gauss-Legendre nodes.
pub fn barycentric_weights(nodes: &[f64], weights: &[f64]) -> Vec<f64> {
    nodes
        .iter()
        .zip(weights)
        .enumerate()
        .map(|(j, (x, w))| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * ((1.0 - x * x) * w).sqrt()
        })
        .collect()
}

/// Evaluates the polynomial interpolant of `values` at `z`.
pub fn barycentric_eval(nodes: &[f64], bary: &[f64], values: &[f64], z: f64) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for ((x, b), v) in nodes.iter().zip(bary).zip(values) {
        let d = z - x;
        if d == 0.0 {
            return *v;
        }
        let t = b / d;
        num += t * v;
        den += t;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(10);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree 18 monomial: integral = 2/19
        let i: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((i - 2.0 / 19.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn large_order_is_symmetric() {
        let (x, w) = gauss_legendre(512);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        for i in 0..256 {
            assert_eq!(x[i], -x[511 - i]);
        }
        let i: f64 = x.iter().zip(&w).map(|(x, w)| w * x.cos()).sum();
        assert!((i - 2.0 * 1f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn barycentric_reproduces_smooth_function() {
        let (x, w) = gauss_legendre(40);
        let b = barycentric_weights(&x, &w);
        let f: Vec<f64> = x.iter().map(|x| (3.0 * x).sin()).collect();
        for z in [-0.99, -0.3, 0.0, 0.123, 0.9] {
            assert!((barycentric_eval(&x, &b, &f, z) - (3.0 * z).sin()).abs() < 1e-13);
        }
    }
}
