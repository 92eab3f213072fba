use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

use super::integral::f_integrals;

/// Grid of `t` values in `(0, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "spacing", rename_all = "snake_case")]
pub enum TGrid {
    /// `π i / count`, `i = 1..=count`.
    Uniform { count: usize },
    /// Geometric from `t_min` to `π`.
    Log { count: usize, t_min: f64 },
}

impl TGrid {
    pub fn points(&self) -> Result<Vec<f64>> {
        match *self {
            TGrid::Uniform { count } if count >= 1 => {
                Ok((1..=count).map(|i| PI * i as f64 / count as f64).collect())
            }
            TGrid::Log { count, t_min } if count >= 2 && t_min > 0.0 && t_min < PI => {
                let r = (PI / t_min).ln() / (count - 1) as f64;
                Ok((0..count)
                    .map(|i| {
                        if i + 1 == count {
                            PI
                        } else {
                            t_min * (r * i as f64).exp()
                        }
                    })
                    .collect())
            }
            _ => Err(Error::DomainError(format!("invalid t grid {self:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityScanConfig {
    pub lambda: f64,
    pub delta: f64,
    pub n_max: usize,
    pub grid: TGrid,
    pub tol: f64,
}

impl PositivityScanConfig {
    fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.delta > 0.0 && self.tol > 0.0) {
            return Err(Error::DomainError(
                "lambda, delta and tol must be positive".into(),
            ));
        }
        self.grid.points().map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignClass {
    Positive,
    Negative,
    Indeterminate,
}

impl SignClass {
    /// Negative only below `−max(tol, 4 err)`.
    pub fn classify(value: f64, err: f64, tol: f64) -> Self {
        let band = tol.max(4.0 * err);
        if value < -band {
            Self::Negative
        } else if value > band {
            Self::Positive
        } else {
            Self::Indeterminate
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Positive => "positive",
            Self::Negative => "negative",
            Self::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanPoint {
    pub n: usize,
    pub t: f64,
    pub value: f64,
    pub err: f64,
    pub sign: SignClass,
    /// The tolerance was not reached; `value` is the best estimate.
    pub unconverged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScanVerdict {
    ConsistentWithConjecture,
    NegativeWitness {
        n: usize,
        t: f64,
        value: f64,
    },
    /// `δ < λ + 1` and no negative value was found on the grid.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub config: PositivityScanConfig,
    pub points: Vec<ScanPoint>,
    pub min: ScanPoint,
    pub negatives: usize,
    pub indeterminate: usize,
    pub unconverged: usize,
    pub verdict: ScanVerdict,
    /// A negative value where the conjecture claims positivity.
    pub counterexample: bool,
}

impl ScanReport {
    /// Writes `n,t,value,err,sign`.
    pub fn write_csv(&self, w: impl std::io::Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(["n", "t", "value", "err", "sign"])
            .map_err(io)?;
        for p in &self.points {
            out.write_record([
                p.n.to_string(),
                p.t.to_string(),
                p.value.to_string(),
                p.err.to_string(),
                p.sign.as_str().to_string(),
            ])
            .map_err(io)?;
        }
        out.flush().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn has_negative(&self, n: usize) -> bool {
        self.points
            .iter()
            .any(|p| p.n == n && p.sign == SignClass::Negative)
    }
}

/// `F_n^{λ,δ}(t)` on the full `(n, t)` grid, in `(n, t)` order.
pub fn positivity_scan(cfg: &PositivityScanConfig) -> Result<ScanReport> {
    cfg.validate()?;
    let ts = cfg.grid.points()?;
    let columns: Vec<Vec<ScanPoint>> = ts
        .par_iter()
        .map(|&t| {
            let (vals, unconverged) =
                match f_integrals(cfg.n_max, cfg.lambda, cfg.delta, t, cfg.tol) {
                    Ok(v) => (v, false),
                    Err(Error::ToleranceNotReached { .. }) => {
                        // retry degree by degree so only the hard ones are flagged
                        let mut out = Vec::with_capacity(cfg.n_max + 1);
                        for n in 0..=cfg.n_max {
                            match f_integrals(n, cfg.lambda, cfg.delta, t, cfg.tol) {
                                Ok(v) => out.push((v[n], false)),
                                Err(Error::ToleranceNotReached { value, err, .. }) => {
                                    out.push((super::IntegralValue { value, err }, true))
                                }
                                Err(e) => return Err(e),
                            }
                        }
                        return Ok(out
                            .into_iter()
                            .enumerate()
                            .map(|(n, (v, u))| point(n, t, v.value, v.err, cfg.tol, u))
                            .collect());
                    }
                    Err(e) => return Err(e),
                };
            Ok(vals
                .into_iter()
                .enumerate()
                .map(|(n, v)| point(n, t, v.value, v.err, cfg.tol, unconverged))
                .collect())
        })
        .collect::<Result<_>>()?;

    let mut points = Vec::with_capacity(ts.len() * (cfg.n_max + 1));
    for n in 0..=cfg.n_max {
        points.extend(columns.iter().map(|c| c[n]));
    }
    let min = *points
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("nonempty grid");
    let first_negative = points.iter().find(|p| p.sign == SignClass::Negative);
    let claimed = cfg.delta >= cfg.lambda + 1.0;
    let verdict = match first_negative {
        Some(p) => ScanVerdict::NegativeWitness {
            n: p.n,
            t: p.t,
            value: p.value,
        },
        None if claimed => ScanVerdict::ConsistentWithConjecture,
        None => ScanVerdict::Inconclusive,
    };
    let count = |s: SignClass| points.iter().filter(|p| p.sign == s).count();
    Ok(ScanReport {
        config: *cfg,
        min,
        negatives: count(SignClass::Negative),
        indeterminate: count(SignClass::Indeterminate),
        unconverged: points.iter().filter(|p| p.unconverged).count(),
        counterexample: claimed && first_negative.is_some(),
        verdict,
        points,
    })
}

fn point(n: usize, t: f64, value: f64, err: f64, tol: f64, unconverged: bool) -> ScanPoint {
    ScanPoint {
        n,
        t,
        value,
        err,
        sign: SignClass::classify(value, err, tol),
        unconverged,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityViolation {
    pub n: usize,
    pub delta: f64,
    pub gamma: f64,
    pub t: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub lambda: f64,
    pub deltas: Vec<f64>,
    /// Degrees with no negative point, per `δ`.
    pub nonnegative_degrees: Vec<Vec<usize>>,
    pub violations: Vec<MonotonicityViolation>,
}

/// Whenever `F_n^{λ,δ}` has no negative point on the grid, `F_n^{λ,γ}` for
/// every later (larger) `γ` must have none either.
pub fn monotonicity_check(
    lambda: f64,
    deltas: &[f64],
    n_max: usize,
    grid: TGrid,
    tol: f64,
) -> Result<MonotonicityReport> {
    if deltas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::DomainError(
            "deltas must be strictly ascending".into(),
        ));
    }
    let scans = deltas
        .iter()
        .map(|&delta| {
            positivity_scan(&PositivityScanConfig {
                lambda,
                delta,
                n_max,
                grid,
                tol,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let nonnegative_degrees: Vec<Vec<usize>> = scans
        .iter()
        .map(|s| (0..=n_max).filter(|&n| !s.has_negative(n)).collect())
        .collect();
    let mut violations = Vec::new();
    for (i, base) in nonnegative_degrees.iter().enumerate() {
        for later in &scans[i + 1..] {
            for &n in base {
                for p in later
                    .points
                    .iter()
                    .filter(|p| p.n == n && p.sign == SignClass::Negative)
                {
                    violations.push(MonotonicityViolation {
                        n,
                        delta: deltas[i],
                        gamma: later.config.delta,
                        t: p.t,
                        value: p.value,
                    });
                }
            }
        }
    }
    Ok(MonotonicityReport {
        lambda,
        deltas: deltas.to_vec(),
        nonnegative_degrees,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_band() {
        assert_eq!(
            SignClass::classify(-1e-9, 1e-12, 1e-10),
            SignClass::Negative
        );
        assert_eq!(
            SignClass::classify(-1e-9, 1e-9, 1e-10),
            SignClass::Indeterminate
        );
        assert_eq!(SignClass::classify(1e-3, 1e-12, 1e-10), SignClass::Positive);
    }

    #[test]
    fn grids() {
        let u = TGrid::Uniform { count: 4 }.points().unwrap();
        assert_eq!(u.len(), 4);
        assert_eq!(*u.last().unwrap(), PI);
        assert!(u[0] > 0.0);
        let l = TGrid::Log {
            count: 5,
            t_min: 1e-3,
        }
        .points()
        .unwrap();
        assert_eq!((l[0], l[4]), (1e-3, PI));
        assert!(TGrid::Uniform { count: 0 }.points().is_err());
    }

    #[test]
    fn small_scan_is_consistent() {
        let cfg = PositivityScanConfig {
            lambda: 1.0,
            delta: 2.0,
            n_max: 6,
            grid: TGrid::Uniform { count: 20 },
            tol: 1e-10,
        };
        let r = positivity_scan(&cfg).unwrap();
        assert_eq!(r.verdict, ScanVerdict::ConsistentWithConjecture);
        assert_eq!(r.points.len(), 7 * 20);
        assert!(r.min.value >= -1e-10);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("n,t,value,err,sign\n"));
    }

    #[test]
    fn single_delta_is_vacuous() {
        let r = monotonicity_check(1.0, &[2.0], 3, TGrid::Uniform { count: 5 }, 1e-10).unwrap();
        assert!(r.violations.is_empty());
    }
}
