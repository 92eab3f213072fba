use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

use super::eigen::{eigen_sym_tridiagonal, householder_tridiagonal};

/// Largest size enumerated exhaustively (2^21 matrices).
pub const MAX_EXHAUSTIVE: usize = 6;
const SHARD: usize = 256;
const KEY_SCALE: f64 = 1e9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnsembleMode {
    Exhaustive,
    MonteCarlo { samples: usize, seed: u64 },
}

/// Fixed-width bins on `[lo, hi)`; values outside are clamped to the end
/// bins.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Self {
        Self {
            lo,
            hi,
            counts: vec![0; bins],
        }
    }

    pub fn add(&mut self, x: f64) {
        let bins = self.counts.len();
        let t = ((x - self.lo) / (self.hi - self.lo) * bins as f64).floor();
        let i = if t < 0.0 {
            0
        } else {
            (t as usize).min(bins - 1)
        };
        self.counts[i] += 1;
    }

    fn merge(&mut self, other: &Self) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(bin_lo, bin_hi, count)` rows.
    pub fn rows(&self) -> Vec<(f64, f64, u64)> {
        let w = (self.hi - self.lo) / self.counts.len() as f64;
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.lo + i as f64 * w, self.lo + (i + 1) as f64 * w, c))
            .collect()
    }

    /// Writes `bin_lo,bin_hi,count`.
    pub fn write_csv(&self, w: impl std::io::Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["bin_lo", "bin_hi", "count"])
            .map_err(|e| Error::Io(e.to_string()))?;
        for (lo, hi, c) in self.rows() {
            out.write_record([lo.to_string(), hi.to_string(), c.to_string()])
                .map_err(|e| Error::Io(e.to_string()))?;
        }
        out.flush().map_err(|e| Error::Io(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumCount {
    pub eigenvalues: Vec<f64>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BernoulliEnsembleReport {
    pub n: usize,
    pub mode: EnsembleMode,
    pub matrices: u64,
    /// Distinct spectra (keys rounded to 1e−9), exhaustive mode only.
    pub spectra: Option<Vec<SpectrumCount>>,
    /// Raw eigenvalues (exhaustive) or eigenvalues/√n (Monte Carlo).
    pub histogram: Histogram,
    /// Kolmogorov distance of the eigenvalues/√n to the semicircle law.
    pub kolmogorov: f64,
    /// Spectra whose sum differs from the trace by more than 1e−9.
    pub trace_violations: u64,
}

/// CDF of the semicircle law on `[−2, 2]`.
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        0.5 + x * (4.0 - x * x).sqrt() / (4.0 * PI) + (x / 2.0).asin() / PI
    }
}

/// `sup |F_emp − F|` for the semicircle law; sorts `values`.
pub fn kolmogorov_to_semicircle(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    values
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = semicircle_cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

fn spectrum(a: &[f64], n: usize) -> Result<Vec<f64>> {
    eigen_sym_tridiagonal(&householder_tridiagonal(a, n)?)
}

/// Symmetric ±1 matrix from the bits of `mask`, upper triangle row by row.
fn matrix_from_mask(mask: u64, n: usize) -> Vec<f64> {
    let mut a = vec![0.0; n * n];
    let mut bit = 0;
    for i in 0..n {
        for j in i..n {
            let v = if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
            a[i * n + j] = v;
            a[j * n + i] = v;
            bit += 1;
        }
    }
    a
}

fn trace(a: &[f64], n: usize) -> f64 {
    (0..n).map(|i| a[i * n + i]).sum()
}

fn exhaustive_bins(n: usize) -> Histogram {
    Histogram::new(-(n as f64), n as f64, 8 * n)
}

struct Tally {
    spectra: BTreeMap<Vec<i64>, u64>,
    hist: Histogram,
    scaled: Vec<f64>,
    violations: u64,
}

/// Every symmetric ±1 matrix of size `n ≤ 6`.
pub fn bernoulli_exhaustive(n: usize) -> Result<BernoulliEnsembleReport> {
    if n == 0 || n > MAX_EXHAUSTIVE {
        return Err(Error::SizeTooLarge(n));
    }
    let total: u64 = 1 << (n * (n + 1) / 2);
    let shard = (SHARD as u64).min(total);
    let shards: Vec<u64> = (0..total.div_ceil(shard)).collect();
    let root = 1.0 / (n as f64).sqrt();
    let tallies = shards
        .par_iter()
        .map(|&s| {
            let mut t = Tally {
                spectra: BTreeMap::new(),
                hist: exhaustive_bins(n),
                scaled: Vec::new(),
                violations: 0,
            };
            for mask in s * shard..((s + 1) * shard).min(total) {
                let a = matrix_from_mask(mask, n);
                let ev = spectrum(&a, n)?;
                if (ev.iter().sum::<f64>() - trace(&a, n)).abs() > 1e-9 {
                    t.violations += 1;
                }
                for &x in &ev {
                    t.hist.add(x);
                    t.scaled.push(x * root);
                }
                let key = ev.iter().map(|x| (x * KEY_SCALE).round() as i64).collect();
                *t.spectra.entry(key).or_insert(0) += 1;
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut spectra = BTreeMap::new();
    let mut hist = exhaustive_bins(n);
    let mut scaled = Vec::with_capacity(total as usize * n);
    let mut violations = 0;
    for t in tallies {
        for (k, c) in t.spectra {
            *spectra.entry(k).or_insert(0) += c;
        }
        hist.merge(&t.hist);
        scaled.extend(t.scaled);
        violations += t.violations;
    }
    Ok(BernoulliEnsembleReport {
        n,
        mode: EnsembleMode::Exhaustive,
        matrices: total,
        spectra: Some(
            spectra
                .into_iter()
                .map(|(k, count)| SpectrumCount {
                    eigenvalues: k.into_iter().map(|v| v as f64 / KEY_SCALE).collect(),
                    count,
                })
                .collect(),
        ),
        histogram: hist,
        kolmogorov: kolmogorov_to_semicircle(&mut scaled),
        trace_violations: violations,
    })
}

/// `samples` seeded draws of size `n`. Samples are split into fixed shards
/// of 256, each with its own ChaCha stream, so results do not depend on the
/// number of worker threads.
pub fn bernoulli_montecarlo(
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<BernoulliEnsembleReport> {
    if n == 0 || n > super::eigen::MAX_DENSE {
        return Err(Error::SizeTooLarge(n));
    }
    if samples == 0 {
        return Err(Error::DomainError("samples must be positive".into()));
    }
    let shards: Vec<usize> = (0..samples.div_ceil(SHARD)).collect();
    let root = 1.0 / (n as f64).sqrt();
    let bins = || Histogram::new(-2.5, 2.5, 50);
    let parts = shards
        .par_iter()
        .map(|&s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s as u64);
            let mut t = Tally {
                spectra: BTreeMap::new(),
                hist: bins(),
                scaled: Vec::new(),
                violations: 0,
            };
            let mut a = vec![0.0; n * n];
            for _ in s * SHARD..((s + 1) * SHARD).min(samples) {
                for i in 0..n {
                    for j in i..n {
                        let v = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                        a[i * n + j] = v;
                        a[j * n + i] = v;
                    }
                }
                let ev = spectrum(&a, n)?;
                if (ev.iter().sum::<f64>() - trace(&a, n)).abs() > 1e-9 {
                    t.violations += 1;
                }
                for x in ev {
                    let y = x * root;
                    t.hist.add(y);
                    t.scaled.push(y);
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut hist = bins();
    let mut scaled = Vec::with_capacity(samples * n);
    let mut violations = 0;
    for t in parts {
        hist.merge(&t.hist);
        scaled.extend(t.scaled);
        violations += t.violations;
    }
    Ok(BernoulliEnsembleReport {
        n,
        mode: EnsembleMode::MonteCarlo { samples, seed },
        matrices: samples as u64,
        spectra: None,
        histogram: hist,
        kolmogorov: kolmogorov_to_semicircle(&mut scaled),
        trace_violations: violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small() {
        let r = bernoulli_exhaustive(1).unwrap();
        let s = r.spectra.unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|c| c.count == 1));

        let r = bernoulli_exhaustive(2).unwrap();
        let s2 = 2f64.sqrt();
        let want = [
            (vec![-2.0, 0.0], 2),
            (vec![-s2, s2], 4),
            (vec![0.0, 2.0], 2),
        ];
        let got = r.spectra.unwrap();
        assert_eq!(got.len(), 3);
        for (c, (ev, count)) in got.iter().zip(want) {
            assert_eq!(c.count, count);
            for (x, y) in c.eigenvalues.iter().zip(ev) {
                assert!((x - y).abs() < 1e-9);
            }
        }
        assert_eq!(r.histogram.total(), 16);
        assert_eq!(r.trace_violations, 0);
    }

    #[test]
    fn cdf_shape() {
        assert_eq!(semicircle_cdf(-3.0), 0.0);
        assert!((semicircle_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((semicircle_cdf(2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn montecarlo_is_deterministic() {
        let a = bernoulli_montecarlo(8, 600, 11).unwrap();
        let b = bernoulli_montecarlo(8, 600, 11).unwrap();
        assert_eq!(a, b);
        let one = bernoulli_montecarlo(1, 10, 3).unwrap();
        let mass: u64 = one.histogram.total();
        assert_eq!(mass, 10);
    }
}
