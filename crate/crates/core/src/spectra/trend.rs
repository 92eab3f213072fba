use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::q_to_f64;
use crate::families::{RecurrencePair, RecurrenceSource};

use super::eigen::op_zeros;

/// Qualitative behaviour of an extreme zero as the truncation grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Bounded,
    ToMinusInfinity,
    ToPlusInfinity,
    /// Fewer than three sizes, or a non-monotone sequence.
    Undetermined,
}

/// Extreme zeros are monotone in `N` by interlacing (up to rounding). A sequence is called
/// diverging when its increments per unit `ln N` do not shrink (last rate at
/// least 0.9 of the first), and bounded otherwise.
pub fn classify_trend(sizes: &[usize], values: &[f64]) -> Trend {
    if sizes.len() < 3 || sizes.len() != values.len() {
        return Trend::Undetermined;
    }
    // steps at rounding level count as flat
    let steps: Vec<f64> = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .map(|s| {
            if s.abs() <= 1e-12 * (1.0 + values[0].abs()) {
                0.0
            } else {
                s
            }
        })
        .collect();
    let up = steps.iter().all(|&s| s >= 0.0);
    let down = steps.iter().all(|&s| s <= 0.0);
    if !up && !down {
        return Trend::Undetermined;
    }
    let rates: Vec<f64> = steps
        .iter()
        .zip(sizes.windows(2))
        .map(|(s, w)| s.abs() / (w[1] as f64 / w[0] as f64).ln())
        .collect();
    let (first, last) = (rates[0], rates[rates.len() - 1]);
    if first > 0.0 && last >= 0.9 * first {
        if up {
            Trend::ToPlusInfinity
        } else {
            Trend::ToMinusInfinity
        }
    } else {
        Trend::Bounded
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeRow {
    pub n: usize,
    /// Three smallest zeros (fewer when `n < 3`).
    pub lowest: Vec<f64>,
    /// Three largest zeros, largest last.
    pub highest: Vec<f64>,
}

/// Limits of convergent recurrence coefficients and the resulting interval
/// ends, both as `c ± 2√λ̄` and in the halved printed variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundedLimits {
    pub c: f64,
    pub lambda: f64,
    pub sigma: f64,
    pub tau: f64,
    pub sigma_halved: f64,
    pub tau_halved: f64,
    /// Exact for constant recurrences, otherwise read off the tail.
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioPoint {
    pub n: usize,
    /// `b_{n+1}/(a_n a_{n+1})`; `None` when a diagonal entry vanishes.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub source: String,
    pub sizes: Vec<SizeRow>,
    pub lower_trend: Trend,
    pub upper_trend: Trend,
    /// Lowest / highest zero at the largest size.
    pub sigma_hat: f64,
    pub tau_hat: f64,
    pub limits: Option<BoundedLimits>,
    pub ratios: Vec<RatioPoint>,
    /// Last ratio value; `None` (undefined) when it involves a zero diagonal.
    pub ratio_limit: Option<f64>,
}

fn limits(rec: &RecurrencePair, top: usize) -> Result<Option<BoundedLimits>> {
    let build = |c: f64, lambda: f64, exact: bool| {
        let r = 2.0 * lambda.sqrt();
        BoundedLimits {
            c,
            lambda,
            sigma: c - r,
            tau: c + r,
            sigma_halved: 0.5 * (c - r),
            tau_halved: 0.5 * (c + r),
            exact,
        }
    };
    if let RecurrenceSource::Constant { a, b } = rec.source() {
        return Ok(Some(build(q_to_f64(a), q_to_f64(b), true)));
    }
    if top < 4 {
        return Ok(None);
    }
    let (mid, end) = (top / 2, top - 1);
    let a_mid = q_to_f64(&rec.a(mid)?);
    let a_end = q_to_f64(&rec.a(end)?);
    let b_mid = q_to_f64(&rec.b(mid)?);
    let b_end = q_to_f64(&rec.b(end)?);
    let settled = |x: f64, y: f64| (x - y).abs() <= 1e-2 * (1.0 + y.abs());
    Ok((settled(a_mid, a_end) && settled(b_mid, b_end)).then(|| build(a_end, b_end, false)))
}

/// Zeros of `P_N` for each `N` in `sizes`, their extreme trends, the
/// interval prediction for convergent coefficients and the one-quarter ratio
/// sequence up to the largest size.
pub fn blumenthal_experiment(rec: &RecurrencePair, sizes: &[usize]) -> Result<SpectrumReport> {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let top = *sizes
        .last()
        .ok_or_else(|| Error::DomainError("no sizes given".into()))?;
    if sizes[0] == 0 {
        return Err(Error::DomainError("sizes must be positive".into()));
    }
    let zeros = sizes
        .iter()
        .map(|&n| op_zeros(rec, n))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<SizeRow> = sizes
        .iter()
        .zip(&zeros)
        .map(|(&n, z)| SizeRow {
            n,
            lowest: z.iter().take(3).copied().collect(),
            highest: z[z.len().saturating_sub(3)..].to_vec(),
        })
        .collect();
    let lows: Vec<f64> = zeros.iter().map(|z| z[0]).collect();
    let highs: Vec<f64> = zeros.iter().map(|z| z[z.len() - 1]).collect();

    let a: Vec<f64> = (0..top)
        .map(|n| rec.a(n).map(|v| q_to_f64(&v)))
        .collect::<Result<_>>()?;
    let ratios: Vec<RatioPoint> = (0..top.saturating_sub(1))
        .map(|n| {
            let den = a[n] * a[n + 1];
            let value = if den == 0.0 {
                None
            } else {
                Some(q_to_f64(&rec.b(n + 1)?) / den)
            };
            Ok(RatioPoint { n, value })
        })
        .collect::<Result<_>>()?;
    let ratio_limit = ratios.last().and_then(|r| r.value);

    Ok(SpectrumReport {
        source: rec.provenance(),
        lower_trend: classify_trend(&sizes, &lows),
        upper_trend: classify_trend(&sizes, &highs),
        sigma_hat: lows[lows.len() - 1],
        tau_hat: highs[highs.len() - 1],
        limits: limits(rec, top)?,
        sizes: rows,
        ratios,
        ratio_limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::families::{family_recurrence, FamilySpec};

    #[test]
    fn constant_quarter() {
        let rec = RecurrencePair::constant(q("0"), q("1/4")).unwrap();
        let r = blumenthal_experiment(&rec, &[25, 50, 100]).unwrap();
        assert!((r.sigma_hat + 1.0).abs() < 0.01);
        assert!((r.tau_hat - 1.0).abs() < 0.01);
        let l = r.limits.unwrap();
        assert_eq!((l.sigma, l.tau, l.sigma_halved), (-1.0, 1.0, -0.5));
        assert!(r.ratios.iter().all(|p| p.value.is_none()));
        assert_eq!(r.ratio_limit, None);
        assert_eq!(
            (r.lower_trend, r.upper_trend),
            (Trend::Bounded, Trend::Bounded)
        );
    }

    #[test]
    fn meixner_pollaczek_diverges_both_ways() {
        let f = FamilySpec::meixner_pollaczek(q("1"), q("0"), q("1")).unwrap();
        let r =
            blumenthal_experiment(&family_recurrence(&f).unwrap(), &[25, 50, 100, 200]).unwrap();
        assert_eq!(r.lower_trend, Trend::ToMinusInfinity);
        assert_eq!(r.upper_trend, Trend::ToPlusInfinity);
    }

    #[test]
    fn meixner_ratio_and_trends() {
        let f = FamilySpec::meixner(q("1"), q("1/2")).unwrap();
        let r =
            blumenthal_experiment(&family_recurrence(&f).unwrap(), &[25, 50, 100, 200]).unwrap();
        assert!((r.ratio_limit.unwrap() - 2.0 / 9.0).abs() < 1e-2);
        assert_eq!(r.lower_trend, Trend::Bounded);
        assert_eq!(r.upper_trend, Trend::ToPlusInfinity);
    }
}
