use serde::Serialize;

use crate::error::{Error, Result};

/// Truncated (possibly alternating) multiple zeta sum
/// `Σ_{N ≥ n_1 > n_2 > … > n_l ≥ 1} ∏ ε_i(n_i) / n_i^{s_i}`,
/// with `ε_i(n) = (−1)^n` on alternating indices and `1` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MzvSpec {
    exponents: Vec<u32>,
    alternating: Vec<bool>,
    n: usize,
}

impl MzvSpec {
    pub fn new(exponents: Vec<u32>, alternating: Vec<bool>, n: usize) -> Result<Self> {
        if exponents.is_empty() || exponents.len() != alternating.len() {
            return Err(Error::ParameterDomain(
                "need one alternation flag per exponent".into(),
            ));
        }
        if exponents.contains(&0) {
            return Err(Error::ParameterDomain("exponents must be positive".into()));
        }
        if n < 10 {
            return Err(Error::ParameterDomain(format!("truncation {n} below 10")));
        }
        if exponents[0] <= 1 && !alternating[0] {
            return Err(Error::DivergentSpec(format!(
                "leading exponent {}",
                exponents[0]
            )));
        }
        Ok(Self {
            exponents,
            alternating,
            n,
        })
    }

    pub fn plain(exponents: &[u32], n: usize) -> Result<Self> {
        Self::new(exponents.to_vec(), vec![false; exponents.len()], n)
    }

    /// Comma-separated exponents; a leading `-` marks an alternating index,
    /// e.g. `-2,1`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut exps = Vec::new();
        let mut alts = Vec::new();
        for part in s.split(',').map(str::trim) {
            let (alt, digits) = match part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, part),
            };
            let e = digits
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent '{part}'")))?;
            exps.push(e);
            alts.push(alt);
        }
        Self::new(exps, alts, n)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn alternating(&self) -> &[bool] {
        &self.alternating
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.exponents.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MzvValue {
    pub value: f64,
    pub tail_estimate: f64,
}

#[derive(Default)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn weight(k: usize, s: u32, alt: bool) -> f64 {
    let w = (k as f64).powi(-(s as i32));
    if alt && k % 2 == 1 {
        -w
    } else {
        w
    }
}

/// Nested prefix sums, innermost index first: `O(l·N)` time, `O(N)` space.
pub fn mzv_truncated(spec: &MzvSpec) -> MzvValue {
    let n = spec.n;
    let l = spec.depth();
    // inner[m] = sum over the indices below the current level, restricted to < m
    let mut inner = vec![1.0f64; n + 2];
    for level in (1..l).rev() {
        let (s, alt) = (spec.exponents[level], spec.alternating[level]);
        let mut acc = Compensated::default();
        for (m, slot) in inner.iter_mut().enumerate().skip(1) {
            let below = *slot;
            *slot = acc.value();
            acc.add(weight(m, s, alt) * below);
        }
        inner[0] = 0.0;
    }
    let (s1, alt1) = (spec.exponents[0], spec.alternating[0]);
    let mut total = Compensated::default();
    for (k, &below) in inner.iter().enumerate().take(n + 1).skip(1) {
        total.add(weight(k, s1, alt1) * below);
    }
    let next_inner = inner[n + 1].abs();
    let nf = n as f64;
    let shell = if alt1 {
        next_inner * (nf + 1.0).powi(-(s1 as i32))
    } else {
        next_inner * nf.powi(1 - s1 as i32) / (s1 as f64 - 1.0)
    };
    MzvValue {
        value: total.value(),
        tail_estimate: shell * (1.0 + nf.ln()),
    }
}

/// Both sides of the alternating block identity at depth `l`:
/// `lhs` carries `(−1)^{n_1+…+n_l}`, `rhs` is the plain `ζ({2,1}^l)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlternatingReport {
    pub l: usize,
    pub n: usize,
    pub lhs: MzvValue,
    pub rhs: MzvValue,
    /// `lhs − 8^l·rhs`, the identity as printed.
    pub printed_diff: f64,
    /// `8^l·lhs − rhs`.
    pub swapped_diff: f64,
}

pub fn alternating_check(l: usize, n: usize) -> Result<AlternatingReport> {
    let exps: Vec<u32> = (0..l).flat_map(|_| [2, 1]).collect();
    let alts: Vec<bool> = (0..2 * l).map(|i| i % 2 == 0).collect();
    let lhs = mzv_truncated(&MzvSpec::new(exps.clone(), alts, n)?);
    let rhs = mzv_truncated(&MzvSpec::plain(&exps, n)?);
    let f = 8f64.powi(l as i32);
    Ok(AlternatingReport {
        l,
        n,
        lhs,
        rhs,
        printed_diff: lhs.value - f * rhs.value,
        swapped_diff: f * lhs.value - rhs.value,
    })
}

/// Decay of `|ζ_N(2,1) − ζ_N(3)|` across truncations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub truncations: Vec<usize>,
    pub diffs: Vec<f64>,
    /// Least-squares slope of `log |diff|` against `log N`.
    pub slope: f64,
    pub compatible: bool,
}

pub const RATE_BAND: (f64, f64) = (-1.2, -0.7);

pub fn rate_check(truncations: &[usize]) -> Result<RateReport> {
    if truncations.len() < 2 {
        return Err(Error::ParameterDomain(
            "need at least two truncations".into(),
        ));
    }
    let mut diffs = Vec::with_capacity(truncations.len());
    for &n in truncations {
        let a = mzv_truncated(&MzvSpec::plain(&[2, 1], n)?);
        let b = mzv_truncated(&MzvSpec::plain(&[3], n)?);
        diffs.push((a.value - b.value).abs());
    }
    let xs: Vec<f64> = truncations.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = diffs.iter().map(|d| d.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    Ok(RateReport {
        truncations: truncations.to_vec(),
        diffs,
        slope,
        compatible: slope.is_finite() && (RATE_BAND.0..=RATE_BAND.1).contains(&slope),
    })
}
