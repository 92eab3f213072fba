use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::poly::{schur_lhs, sos_rhs};

/// `xⁿ(x−y)(x−z) + yⁿ(y−x)(y−z) + zⁿ(z−x)(z−y)` in floating point.
pub fn schur_value(n: u32, [x, y, z]: [f64; 3]) -> f64 {
    let n = n as i32;
    x.powi(n) * (x - y) * (x - z) + y.powi(n) * (y - x) * (y - z) + z.powi(n) * (z - x) * (z - y)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchurReport {
    pub n: u32,
    pub seed: u64,
    /// Exact `lhs − sos == 0`; only decided for `n = 2`.
    pub sos_exact: Option<bool>,
    pub positive_samples: usize,
    pub positive_failures: Vec<[f64; 3]>,
    /// Real triples, sampled for even `n` only.
    pub real_samples: usize,
    pub nonnegative_failures: Vec<[f64; 3]>,
    pub passed: bool,
}

fn scale(n: u32, p: [f64; 3]) -> f64 {
    let m = p.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    m.powi(n as i32 + 2).max(f64::MIN_POSITIVE)
}

/// Exact SOS identity at `n = 2`, strict positivity on sampled positive
/// triples with distinct entries, and nonnegativity on sampled real triples
/// for even `n`.
pub fn schur_check(n: u32, samples: usize, seed: u64) -> SchurReport {
    let sos_exact = (n == 2).then(|| (&schur_lhs(2) - &sos_rhs()).is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut positive_failures = Vec::new();
    let mut positive_samples = 0;
    while positive_samples < samples {
        let p: [f64; 3] = [0, 1, 2].map(|_| rng.gen_range(1e-3..10.0));
        if p[0] == p[1] && p[1] == p[2] {
            continue;
        }
        positive_samples += 1;
        if schur_value(n, p) <= 1e-12 * scale(n, p) {
            positive_failures.push(p);
        }
    }

    let mut nonnegative_failures = Vec::new();
    let real_samples = if n % 2 == 0 { samples } else { 0 };
    for _ in 0..real_samples {
        let p: [f64; 3] = [0, 1, 2].map(|_| rng.gen_range(-10.0..10.0));
        if schur_value(n, p) < -1e-12 * scale(n, p) {
            nonnegative_failures.push(p);
        }
    }

    let passed =
        sos_exact != Some(false) && positive_failures.is_empty() && nonnegative_failures.is_empty();
    SchurReport {
        n,
        seed,
        sos_exact,
        positive_samples,
        positive_failures,
        real_samples,
        nonnegative_failures,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(schur_value(2, [2.0, 1.0, 0.0]), 7.0);
        assert_eq!(schur_value(3, [2.0, 1.0, 0.0]), 15.0);
        assert_eq!(schur_value(4, [1.0, 1.0, 1.0]), 0.0);
    }

    #[test]
    fn sampled_checks_pass() {
        for n in 0..=6 {
            let r = schur_check(n, 1000, 7);
            assert!(r.passed, "n = {n}: {r:?}");
            assert_eq!(r.sos_exact, (n == 2).then_some(true));
        }
    }
}
