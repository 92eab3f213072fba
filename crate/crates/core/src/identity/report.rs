use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{serde_q, Q};
use crate::families::FamilySpec;

use super::formulas::{
    chebyshev_product_formula, connection_formula, linearization_formula, ConnParams, LinParams,
};
use super::oracle::{connection_oracle, linearization_oracle};

/// A printed identity, with its parameter point.
#[derive(Debug, Clone, PartialEq)]
pub enum Identity {
    Connection(ConnParams),
    Linearization(LinParams),
    /// `T_m T_n` expanded in the `U` basis.
    ChebyshevProduct,
}

impl Identity {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Connection(p) => p.tag(),
            Self::Linearization(p) => p.tag(),
            Self::ChebyshevProduct => "chebyshev-product",
        }
    }

    /// Index grid checked for `max`: `(None, n)` for connections and
    /// `(Some(m), n)` for products, in report order.
    pub fn grid(&self, max: usize) -> Vec<(Option<usize>, usize)> {
        match self {
            Self::Connection(_) => (0..=max).map(|n| (None, n)).collect(),
            Self::Linearization(LinParams::Jacobi { .. }) => pairs(1, max, false),
            Self::Linearization(_) => pairs(0, max, false),
            Self::ChebyshevProduct => pairs(0, max, true),
        }
    }

    fn formula(&self, m: Option<usize>, n: usize) -> Result<Vec<Q>> {
        match (self, m) {
            (Self::Connection(p), _) => connection_formula(p, n),
            (Self::Linearization(p), Some(m)) => linearization_formula(p, m, n),
            (Self::ChebyshevProduct, Some(m)) => Ok(chebyshev_product_formula(m, n)),
            _ => Err(Error::Formula("missing first degree".into())),
        }
    }

    fn oracle(&self, m: Option<usize>, n: usize) -> Result<Vec<Q>> {
        match (self, m) {
            (Self::Connection(p), _) => {
                let (from, to) = p.families()?;
                connection_oracle(&from, &to, n)
            }
            (Self::Linearization(p), Some(m)) => {
                let f = p.family()?;
                linearization_oracle(&f, m, n, &f)
            }
            (Self::ChebyshevProduct, Some(m)) => {
                linearization_oracle(&FamilySpec::ChebyshevT, m, n, &FamilySpec::ChebyshevU)
            }
            _ => Err(Error::Formula("missing first degree".into())),
        }
    }

    fn params(&self) -> Vec<(String, String)> {
        match self {
            Self::Connection(p) => p.named(),
            Self::Linearization(p) => p.named(),
            Self::ChebyshevProduct => Vec::new(),
        }
    }
}

/// `(m, n)` pairs with `lo ≤ m, n ≤ hi`, lexicographic; with `lower` only
/// `n ≤ m`.
fn pairs(lo: usize, hi: usize, lower: bool) -> Vec<(Option<usize>, usize)> {
    let mut out = Vec::new();
    for m in lo..=hi {
        for n in lo..=hi {
            if !lower || n <= m {
                out.push((Some(m), n));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// Any mismatch or formula error fails the check.
    Strict,
    /// Mismatches are recorded as findings.
    Survey,
}

impl std::str::FromStr for CheckMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Self::Strict),
            "survey" => Ok(Self::Survey),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientRow {
    pub k: usize,
    #[serde(with = "serde_q")]
    pub formula: Q,
    #[serde(with = "serde_q")]
    pub oracle: Q,
    #[serde(with = "serde_q")]
    pub diff: Q,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseVerdict {
    Match,
    Mismatch { k: usize },
    FormulaError { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
    pub verdict: CaseVerdict,
    pub rows: Vec<CoefficientRow>,
}

/// Overall verdict: the first mismatch in grid order wins, then the first
/// formula error.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch {
        m: Option<usize>,
        n: usize,
        k: usize,
        #[serde(with = "serde_q")]
        formula: Q,
        #[serde(with = "serde_q")]
        oracle: Q,
    },
    FormulaError {
        m: Option<usize>,
        n: usize,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientReport {
    pub identity: String,
    pub params: std::collections::BTreeMap<String, String>,
    pub mode: CheckMode,
    pub max: usize,
    pub verdict: Verdict,
    pub matched: usize,
    pub mismatched: usize,
    pub formula_errors: usize,
    pub cases: Vec<CaseReport>,
}

impl CoefficientReport {
    /// Strict mode passes only on a full match; survey mode passes once
    /// every case has been evaluated.
    pub fn passed(&self) -> bool {
        match self.mode {
            CheckMode::Strict => self.verdict == Verdict::Match,
            CheckMode::Survey => true,
        }
    }
}

fn check_case(id: &Identity, m: Option<usize>, n: usize) -> Result<CaseReport> {
    let oracle = id.oracle(m, n)?;
    let formula = match id.formula(m, n) {
        Ok(f) => f,
        Err(Error::Formula(reason)) => {
            return Ok(CaseReport {
                m,
                n,
                verdict: CaseVerdict::FormulaError { reason },
                rows: Vec::new(),
            })
        }
        Err(e) => return Err(e),
    };
    let len = formula.len().max(oracle.len());
    let at = |v: &[Q], k: usize| v.get(k).cloned().unwrap_or_else(Q::zero);
    let rows: Vec<CoefficientRow> = (0..len)
        .map(|k| {
            let (f, o) = (at(&formula, k), at(&oracle, k));
            CoefficientRow {
                k,
                diff: &f - &o,
                formula: f,
                oracle: o,
            }
        })
        .collect();
    let verdict = match rows.iter().find(|r| !r.diff.is_zero()) {
        Some(r) => CaseVerdict::Mismatch { k: r.k },
        None => CaseVerdict::Match,
    };
    Ok(CaseReport {
        m,
        n,
        verdict,
        rows,
    })
}

/// Diffs the printed formula against the oracle over the identity's grid up
/// to `max`. Formula poles are recorded per case; oracle failures (parameter
/// domain) abort the check.
pub fn identity_check(id: &Identity, max: usize, mode: CheckMode) -> Result<CoefficientReport> {
    let cases = id
        .grid(max)
        .into_par_iter()
        .map(|(m, n)| check_case(id, m, n))
        .collect::<Result<Vec<_>>>()?;

    let mut verdict = Verdict::Match;
    let (mut matched, mut mismatched, mut formula_errors) = (0, 0, 0);
    for c in &cases {
        match &c.verdict {
            CaseVerdict::Match => matched += 1,
            CaseVerdict::Mismatch { k } => {
                mismatched += 1;
                if !matches!(verdict, Verdict::Mismatch { .. }) {
                    let row = &c.rows[*k];
                    verdict = Verdict::Mismatch {
                        m: c.m,
                        n: c.n,
                        k: *k,
                        formula: row.formula.clone(),
                        oracle: row.oracle.clone(),
                    };
                }
            }
            CaseVerdict::FormulaError { reason } => {
                formula_errors += 1;
                if verdict == Verdict::Match {
                    verdict = Verdict::FormulaError {
                        m: c.m,
                        n: c.n,
                        reason: reason.clone(),
                    };
                }
            }
        }
    }
    Ok(CoefficientReport {
        identity: id.tag().to_string(),
        params: id.params().into_iter().collect(),
        mode,
        max,
        verdict,
        matched,
        mismatched,
        formula_errors,
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn gegenbauer_lin_matches() {
        let id = Identity::Linearization(LinParams::Gegenbauer { lambda: q("1/3") });
        let r = identity_check(&id, 5, CheckMode::Strict).unwrap();
        assert_eq!(r.verdict, Verdict::Match);
        assert!(r.passed());
        assert_eq!(r.cases.len(), 36);
    }

    #[test]
    fn laguerre_lin_first_mismatch() {
        let id = Identity::Linearization(LinParams::Laguerre { alpha: q("0") });
        let r = identity_check(&id, 4, CheckMode::Strict).unwrap();
        match &r.verdict {
            Verdict::Mismatch {
                m,
                n,
                k,
                formula,
                oracle,
            } => {
                assert_eq!((*m, *n, *k), (Some(1), 1, 1));
                assert_eq!((formula, oracle), (&q("2"), &q("-2")));
            }
            other => panic!("expected a mismatch, got {other:?}"),
        }
        assert!(!r.passed());
        let survey = identity_check(&id, 4, CheckMode::Survey).unwrap();
        assert!(survey.passed());
    }

    #[test]
    fn reports_are_deterministic() {
        let id = Identity::Linearization(LinParams::Jacobi {
            alpha: q("1/2"),
            beta: q("1/3"),
        });
        let a = identity_check(&id, 3, CheckMode::Survey).unwrap();
        let b = identity_check(&id, 3, CheckMode::Survey).unwrap();
        assert_eq!(a, b);
    }
}
