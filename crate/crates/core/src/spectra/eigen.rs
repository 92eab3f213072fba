use crate::error::{Error, Result};
use crate::families::{jacobi_matrix, RecurrencePair, TridiagonalMatrix};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues of a symmetric tridiagonal matrix, ascending, by implicit QL
/// with Wilkinson shifts.
pub fn eigen_sym_tridiagonal(t: &TridiagonalMatrix) -> Result<Vec<f64>> {
    let n = t.size();
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(0.0);
    if d.iter().chain(&e).any(|v| !v.is_finite()) {
        return Err(Error::DomainError("non-finite matrix entry".into()));
    }
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Largest dense matrix accepted by [`householder_tridiagonal`].
pub const MAX_DENSE: usize = 64;

/// Householder reduction of a dense symmetric matrix (row-major, `n × n`)
/// to tridiagonal form with nonnegative off-diagonal.
pub fn householder_tridiagonal(a: &[f64], n: usize) -> Result<TridiagonalMatrix> {
    if n == 0 || n > MAX_DENSE {
        return Err(Error::SizeTooLarge(n));
    }
    if a.len() != n * n {
        return Err(Error::DomainError(format!(
            "expected {} entries, got {}",
            n * n,
            a.len()
        )));
    }
    let mut a = a.to_vec();
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        let lo = k + 1;
        let norm = (lo..n).map(|i| a[i * n + k].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 || lo == n - 1 {
            offdiag.push(a[lo * n + k].abs());
            continue;
        }
        let x0 = a[lo * n + k];
        let alpha = -norm.copysign(x0);
        for i in lo..n {
            v[i] = a[i * n + k];
        }
        v[lo] -= alpha;
        let vn = (lo..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        for vi in &mut v[lo..n] {
            *vi /= vn;
        }
        for i in lo..n {
            p[i] = (lo..n).map(|j| a[i * n + j] * v[j]).sum();
        }
        let vp: f64 = (lo..n).map(|i| v[i] * p[i]).sum();
        for i in lo..n {
            p[i] = 2.0 * (p[i] - vp * v[i]);
        }
        for i in lo..n {
            for j in lo..n {
                a[i * n + j] -= v[i] * p[j] + p[i] * v[j];
            }
        }
        offdiag.push(alpha.abs());
    }
    let diag = (0..n).map(|i| a[i * n + i]).collect();
    TridiagonalMatrix::new(diag, offdiag)
}

/// Zeros of `P_n`: eigenvalues of the `n × n` Jacobi matrix.
pub fn op_zeros(rec: &RecurrencePair, n: usize) -> Result<Vec<f64>> {
    eigen_sym_tridiagonal(&jacobi_matrix(rec, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::families::{family_recurrence, FamilySpec};
    use std::f64::consts::PI;

    fn tri(d: &[f64], e: &[f64]) -> TridiagonalMatrix {
        TridiagonalMatrix::new(d.to_vec(), e.to_vec()).unwrap()
    }

    #[test]
    fn small_examples() {
        let ev = eigen_sym_tridiagonal(&tri(&[0.0, 0.0], &[1.0])).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
        assert_eq!(eigen_sym_tridiagonal(&tri(&[3.5], &[])).unwrap(), vec![3.5]);
    }

    #[test]
    fn chebyshev_zeros() {
        let rec = family_recurrence(&FamilySpec::ChebyshevT).unwrap();
        for n in 1..=50 {
            let z = op_zeros(&rec, n).unwrap();
            for (k, x) in z.iter().enumerate() {
                let exact = -((2 * k + 1) as f64 * PI / (2 * n) as f64).cos();
                assert!((x - exact).abs() < 1e-12, "n={n} k={k}: {x} vs {exact}");
            }
        }
        let l = family_recurrence(&FamilySpec::laguerre(q("0")).unwrap()).unwrap();
        assert!((op_zeros(&l, 1).unwrap()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn householder_preserves_spectrum() {
        // symmetric 3×3 with known eigenvalues 1, 2, 4 (diag after rotation)
        let a = [2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 4.0];
        let t = householder_tridiagonal(&a, 3).unwrap();
        let ev = eigen_sym_tridiagonal(&t).unwrap();
        for (x, y) in ev.iter().zip([1.0, 3.0, 4.0]) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(matches!(
            householder_tridiagonal(&[0.0; 4], 65),
            Err(Error::SizeTooLarge(65))
        ));
    }
}
