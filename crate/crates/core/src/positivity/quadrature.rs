use crate::error::{Error, Result};
use crate::families::TridiagonalMatrix;
use crate::spectra::eigen_sym_tridiagonal;

/// `(P_n(x), P_n'(x))` for the Legendre polynomial.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
///
/// Nodes come from the Legendre Jacobi matrix (Golub–Welsch) and are
/// polished by Newton steps; weights are `2/((1−x²) P_n'(x)²)`.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::DomainError("Gauss-Legendre needs n >= 1".into()));
    }
    let off = (1..n)
        .map(|k| {
            let k = k as f64;
            (k * k / (4.0 * k * k - 1.0)).sqrt()
        })
        .collect();
    let mut nodes = eigen_sym_tridiagonal(&TridiagonalMatrix::new(vec![0.0; n], off)?)?;
    let mut weights = Vec::with_capacity(n);
    for x in &mut nodes {
        for _ in 0..3 {
            let (p, dp) = legendre_with_derivative(n, *x);
            if dp == 0.0 {
                break;
            }
            *x -= p / dp;
        }
        let (_, dp) = legendre_with_derivative(n, *x);
        weights.push(2.0 / ((1.0 - *x * *x) * dp * dp));
    }
    // exact symmetry
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules() {
        let (x, w) = gauss_legendre(1).unwrap();
        assert_eq!((x, w), (vec![0.0], vec![2.0]));
        let (x, w) = gauss_legendre(2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degree_exactness() {
        let (x, w) = gauss_legendre(5).unwrap();
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((v - 2.0 / 9.0).abs() < 1e-13);
        for n in 1..=30 {
            let (x, w) = gauss_legendre(n).unwrap();
            let even = 2 * n - 2;
            let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(even as i32)).sum();
            assert!((v - 2.0 / (even as f64 + 1.0)).abs() < 1e-13, "n = {n}");
            let odd: f64 = x
                .iter()
                .zip(&w)
                .map(|(x, w)| w * x.powi(2 * n as i32 - 1))
                .sum();
            assert!(odd.abs() < 1e-13, "n = {n}");
        }
    }
}
