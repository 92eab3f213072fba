use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

use super::families::a_polys;

/// `∏_{j≤J} (1 + t³/(8j³))` and a bound on its distance to the infinite product.
pub fn product_truncation(t: f64, terms: usize) -> (f64, f64) {
    let c = t * t * t / 8.0;
    let value = (1..=terms).fold(1.0, |acc, j| {
        let j = j as f64;
        acc * (1.0 + c / (j * j * j))
    });
    let b = t.abs().powi(3) / (16.0 * (terms.max(1) as f64).powi(2));
    (value, value.abs() * b.exp_m1())
}

/// `Ã_n(t)` by running the partial-sum recursion in floating point; reaches
/// indices far beyond what exact coefficient growth allows.
pub fn partial_sum_float(t: f64, n: usize) -> f64 {
    let x = t * t * t;
    let (mut prev, mut cur) = (1.0f64, 1.0f64);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let kf = k as f64;
        let sx = if k % 2 == 0 { -x } else { x };
        let next = ((kf * kf * kf + sx) * prev + (2.0 * kf + 1.0) * kf * cur)
            / ((kf + 1.0) * (kf + 1.0) * kf);
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRow {
    pub t: f64,
    pub product: f64,
    pub product_tail: f64,
    /// `Ã_n(t)` for `n = 0..=N`.
    pub partial: Vec<f64>,
    /// `|Ã_n(t) − product|`.
    pub diff: Vec<f64>,
    /// `diff` strictly decreasing for `n ≥ 10`.
    pub monotone_beyond_10: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub n_max: usize,
    pub product_terms: usize,
    pub rows: Vec<LimitRow>,
}

impl LimitReport {
    pub fn final_diff(&self, t: f64) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.t == t)
            .and_then(|r| r.diff.last().copied())
    }
}

/// Compares float-evaluated partial sums against the truncated product.
pub fn limit_check(ts: &[f64], n_max: usize, product_terms: usize) -> Result<LimitReport> {
    let (_, at) = a_polys(n_max)?;
    let rows = ts
        .par_iter()
        .map(|&t| {
            let (product, product_tail) = product_truncation(t, product_terms);
            let partial: Vec<f64> = at.iter().map(|p| p.eval_t(t)).collect();
            let diff: Vec<f64> = partial.iter().map(|v| (v - product).abs()).collect();
            let monotone_beyond_10 = diff
                .iter()
                .skip(10)
                .zip(diff.iter().skip(11))
                .all(|(a, b)| b < a);
            LimitRow {
                t,
                product,
                product_tail,
                partial,
                diff,
                monotone_beyond_10,
            }
        })
        .collect();
    Ok(LimitReport {
        n_max,
        product_terms,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_basics() {
        assert_eq!(product_truncation(0.0, 10), (1.0, 0.0));
        let (a, tail) = product_truncation(1.0, 100_000);
        let (b, _) = product_truncation(1.0, 200_000);
        assert!((a - b).abs() < 1e-9);
        assert!((a - b).abs() <= tail);
    }

    #[test]
    fn partial_sums_approach_product() {
        let r = limit_check(&[0.5, 1.0, 2.0], 40, 100_000).unwrap();
        assert!(r.rows.iter().all(|row| row.monotone_beyond_10));
        // the gap closes only like (ln n)/n², so n = 40 is still ~1e−3 away
        let d40 = r.final_diff(1.0).unwrap();
        assert!(d40 > 1e-3 && d40 < 2e-3, "{d40}");
        let row = &r.rows[1];
        assert!((partial_sum_float(1.0, 40) - row.partial[40]).abs() < 1e-12);
        assert!((partial_sum_float(1.0, 2) - 1.25).abs() < 1e-15);
        let (p, _) = product_truncation(1.0, 1_000_000);
        assert!((partial_sum_float(1.0, 4000) - p).abs() < 1e-6);
    }
}
