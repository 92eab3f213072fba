//! The orthogonal polynomial families the lab works with: classical
//! normalizations, monic three-term recurrence coefficients, and Jacobi
//! matrix truncations.
//!
//! Monic convention: `P_{n+1} = (x − a_n) P_n − b_n P_{n−1}`, `P_{−1} = 0`,
//! `P_0 = 1`. The coefficient tables below are not trusted constants; the
//! tests check every one of them against the classical polynomials.

use std::fmt;
use std::io::Read;
use std::path::Path;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, format_q, parse_q, pochhammer, q_frac, q_int, q_to_f64, Q};
use crate::poly::Poly;

/// A family together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Laguerre {
        alpha: Q,
    },
    Gegenbauer {
        lambda: Q,
    },
    Jacobi {
        alpha: Q,
        beta: Q,
    },
    ChebyshevT,
    ChebyshevU,
    /// Continuous q-ultraspherical (Rogers) `C_n(x; β | q)`.
    QUltraspherical {
        beta: Q,
        q: Q,
    },
    Meixner {
        beta: Q,
        c: Q,
    },
    /// The angle φ enters only through the rational pair `(cos φ, sin φ)`.
    MeixnerPollaczek {
        lambda: Q,
        cos_phi: Q,
        sin_phi: Q,
    },
}

impl FamilySpec {
    pub fn laguerre(alpha: Q) -> Result<Self> {
        Self::Laguerre { alpha }.validated()
    }
    pub fn gegenbauer(lambda: Q) -> Result<Self> {
        Self::Gegenbauer { lambda }.validated()
    }
    pub fn jacobi(alpha: Q, beta: Q) -> Result<Self> {
        Self::Jacobi { alpha, beta }.validated()
    }
    pub fn q_ultraspherical(beta: Q, q: Q) -> Result<Self> {
        Self::QUltraspherical { beta, q }.validated()
    }
    pub fn meixner(beta: Q, c: Q) -> Result<Self> {
        Self::Meixner { beta, c }.validated()
    }
    pub fn meixner_pollaczek(lambda: Q, cos_phi: Q, sin_phi: Q) -> Result<Self> {
        Self::MeixnerPollaczek {
            lambda,
            cos_phi,
            sin_phi,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Checks the parameter domain of the family.
    pub fn validate(&self) -> Result<()> {
        let one = Q::one();
        let fail = |msg: String| Err(Error::ParameterDomain(msg));
        match self {
            Self::Laguerre { alpha } if *alpha <= -one.clone() => fail(format!(
                "Laguerre needs alpha > -1, got {}",
                format_q(alpha)
            )),
            Self::Gegenbauer { lambda } if *lambda <= q_frac(-1, 2) || lambda.is_zero() => {
                fail(format!(
                    "Gegenbauer needs lambda > -1/2, lambda != 0, got {}",
                    format_q(lambda)
                ))
            }
            Self::Jacobi { alpha, beta } if *alpha <= -one.clone() || *beta <= -one.clone() => {
                fail(format!(
                    "Jacobi needs alpha, beta > -1, got ({}, {})",
                    format_q(alpha),
                    format_q(beta)
                ))
            }
            Self::QUltraspherical { beta, q } if q.abs() >= one || beta.abs() >= one => {
                fail(format!(
                    "q-ultraspherical needs |q| < 1, |beta| < 1, got beta = {}, q = {}",
                    format_q(beta),
                    format_q(q)
                ))
            }
            Self::QUltraspherical { q, .. } if q.is_zero() => {
                fail("q-ultraspherical needs q != 0".into())
            }
            Self::Meixner { beta, c } if !beta.is_positive() || !c.is_positive() || *c >= one => {
                fail(format!(
                    "Meixner needs beta > 0, 0 < c < 1, got beta = {}, c = {}",
                    format_q(beta),
                    format_q(c)
                ))
            }
            Self::MeixnerPollaczek {
                lambda,
                cos_phi,
                sin_phi,
            } => {
                if !lambda.is_positive() {
                    return fail(format!(
                        "Meixner-Pollaczek needs lambda > 0, got {}",
                        format_q(lambda)
                    ));
                }
                if !sin_phi.is_positive() {
                    return fail("Meixner-Pollaczek needs 0 < phi < pi (sin phi > 0)".into());
                }
                if cos_phi * cos_phi + sin_phi * sin_phi != one {
                    return fail("cos phi, sin phi must satisfy cos^2 + sin^2 = 1".into());
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Parses CLI strings such as `gegenbauer:lambda=1/3` or
    /// `meixner:beta=1,c=1/2`.
    pub fn parse(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = std::collections::BTreeMap::new();
        for kv in rest.split(',').filter(|t| !t.trim().is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {kv:?}")))?;
            params.insert(k.trim().to_ascii_lowercase(), parse_q(v)?);
        }
        let mut take = |key: &str| {
            params
                .remove(key)
                .ok_or_else(|| Error::Parse(format!("family {name:?} needs parameter {key:?}")))
        };
        let spec = match name.trim().to_ascii_lowercase().as_str() {
            "laguerre" => Self::Laguerre {
                alpha: take("alpha")?,
            },
            "gegenbauer" => Self::Gegenbauer {
                lambda: take("lambda")?,
            },
            "jacobi" => Self::Jacobi {
                alpha: take("alpha")?,
                beta: take("beta")?,
            },
            "chebyshev-t" | "chebyshevt" => Self::ChebyshevT,
            "chebyshev-u" | "chebyshevu" => Self::ChebyshevU,
            "q-ultraspherical" | "rogers" => Self::QUltraspherical {
                beta: take("beta")?,
                q: take("q")?,
            },
            "meixner" => Self::Meixner {
                beta: take("beta")?,
                c: take("c")?,
            },
            "meixner-pollaczek" => Self::MeixnerPollaczek {
                lambda: take("lambda")?,
                cos_phi: take("cos")?,
                sin_phi: take("sin")?,
            },
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        if let Some(k) = params.keys().next() {
            return Err(Error::Parse(format!(
                "unexpected parameter {k:?} for {name:?}"
            )));
        }
        spec.validated()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Laguerre { alpha } => write!(f, "laguerre:alpha={}", format_q(alpha)),
            Self::Gegenbauer { lambda } => write!(f, "gegenbauer:lambda={}", format_q(lambda)),
            Self::Jacobi { alpha, beta } => {
                write!(
                    f,
                    "jacobi:alpha={},beta={}",
                    format_q(alpha),
                    format_q(beta)
                )
            }
            Self::ChebyshevT => write!(f, "chebyshev-t"),
            Self::ChebyshevU => write!(f, "chebyshev-u"),
            Self::QUltraspherical { beta, q } => {
                write!(
                    f,
                    "q-ultraspherical:beta={},q={}",
                    format_q(beta),
                    format_q(q)
                )
            }
            Self::Meixner { beta, c } => {
                write!(f, "meixner:beta={},c={}", format_q(beta), format_q(c))
            }
            Self::MeixnerPollaczek {
                lambda,
                cos_phi,
                sin_phi,
            } => write!(
                f,
                "meixner-pollaczek:lambda={},cos={},sin={}",
                format_q(lambda),
                format_q(cos_phi),
                format_q(sin_phi)
            ),
        }
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Classically normalized `P_n` of the family, exactly.
pub fn family_poly(f: &FamilySpec, n: usize) -> Result<Poly<Q>> {
    Ok(family_basis(f, n)?.pop().expect("basis has n + 1 entries"))
}

/// `[P_0, …, P_n]` in classical normalization.
pub fn family_basis(f: &FamilySpec, n: usize) -> Result<Vec<Poly<Q>>> {
    f.validate()?;
    let x = Poly::<Q>::x();
    let basis = match f {
        FamilySpec::Laguerre { alpha } => (0..=n).map(|m| laguerre_explicit(alpha, m)).collect(),
        FamilySpec::Gegenbauer { lambda } => {
            (0..=n).map(|m| gegenbauer_explicit(lambda, m)).collect()
        }
        FamilySpec::Jacobi { alpha, beta } => {
            (0..=n).map(|m| jacobi_explicit(alpha, beta, m)).collect()
        }
        FamilySpec::ChebyshevT | FamilySpec::ChebyshevU => {
            let two_x = x.scale(&q_int(2));
            let first = if matches!(f, FamilySpec::ChebyshevT) {
                x.clone()
            } else {
                two_x.clone()
            };
            let mut out = vec![Poly::one(), first];
            while out.len() <= n {
                let k = out.len();
                out.push(&(&two_x * &out[k - 1]) - &out[k - 2]);
            }
            out.truncate(n + 1);
            out
        }
        FamilySpec::QUltraspherical { beta, q } => q_ultraspherical_basis(beta, q, n),
        FamilySpec::Meixner { beta, c } => (0..=n).map(|m| meixner_explicit(beta, c, m)).collect(),
        FamilySpec::MeixnerPollaczek { .. } => {
            return Err(Error::ParameterDomain(
                "Meixner-Pollaczek is available only through its monic recurrence".into(),
            ))
        }
    };
    Ok(basis)
}

fn laguerre_explicit(alpha: &Q, n: usize) -> Poly<Q> {
    // Σ_k (α+k+1)_{n−k} / ((n−k)! k!) (−x)^k
    Poly::new(
        (0..=n)
            .map(|k| {
                let sign = if k % 2 == 0 { q_int(1) } else { q_int(-1) };
                sign * pochhammer(&(alpha + q_int(k as i64 + 1)), n - k)
                    / (factorial(n - k) * factorial(k))
            })
            .collect(),
    )
}

fn gegenbauer_explicit(lambda: &Q, n: usize) -> Poly<Q> {
    // Σ_{k ≤ n/2} (−1)^k (λ)_{n−k} / (k! (n−2k)!) (2x)^{n−2k}
    let mut coeffs = vec![Q::zero(); n + 1];
    for k in 0..=n / 2 {
        let sign = if k % 2 == 0 { q_int(1) } else { q_int(-1) };
        let two_pow = Q::from_integer(num_bigint::BigInt::from(2).pow((n - 2 * k) as u32));
        coeffs[n - 2 * k] =
            sign * pochhammer(lambda, n - k) * two_pow / (factorial(k) * factorial(n - 2 * k));
    }
    Poly::new(coeffs)
}

fn jacobi_explicit(alpha: &Q, beta: &Q, n: usize) -> Poly<Q> {
    // Σ_k (n+α+β+1)_k (α+k+1)_{n−k} / (k! (n−k)!) ((x−1)/2)^k
    let half_shift = Poly::new(vec![q_frac(-1, 2), q_frac(1, 2)]);
    let top = alpha + beta + q_int(n as i64 + 1);
    let mut out = Poly::zero();
    let mut power = Poly::one();
    for k in 0..=n {
        let c = pochhammer(&top, k) * pochhammer(&(alpha + q_int(k as i64 + 1)), n - k)
            / (factorial(k) * factorial(n - k));
        out = &out + &power.scale(&c);
        power = &power * &half_shift;
    }
    out
}

fn meixner_explicit(beta: &Q, c: &Q, n: usize) -> Poly<Q> {
    // 2F1(−n, −x; β; 1 − 1/c) with (−x)_k expanded as a polynomial in x
    let z = Q::one() - c.recip();
    let mut out = Poly::zero();
    let mut falling = Poly::one(); // (−x)_k
    let mut zk = Q::one();
    for k in 0..=n {
        let c_k = pochhammer(&q_int(-(n as i64)), k) * &zk / (pochhammer(beta, k) * factorial(k));
        out = &out + &falling.scale(&c_k);
        falling = &falling * &Poly::new(vec![q_int(k as i64), q_int(-1)]);
        zk *= &z;
    }
    out
}

fn q_ultraspherical_basis(beta: &Q, q: &Q, n: usize) -> Vec<Poly<Q>> {
    // 2x(1 − βq^k) C_k = (1 − q^{k+1}) C_{k+1} + (1 − β²q^{k−1}) C_{k−1}
    let one = Q::one();
    let x = Poly::<Q>::x();
    let mut out = vec![Poly::one()];
    let mut qk = one.clone(); // q^k
    let mut qkm1 = q.recip(); // q^{k−1}
    for k in 0..n {
        let lead = x.scale(&(q_int(2) * (&one - beta * &qk)));
        let mut next = &lead * &out[k];
        if k > 0 {
            let back = &one - beta * beta * &qkm1;
            next = &next - &out[k - 1].scale(&back);
        }
        let denom = &one - &qk * q;
        out.push(next.scale(&denom.recip()));
        qkm1 = qk.clone();
        qk *= q;
    }
    out
}

/// Where a recurrence's coefficients come from.
#[derive(Debug, Clone, PartialEq)]
pub enum RecurrenceSource {
    Family(FamilySpec),
    Constant {
        a: Q,
        b: Q,
    },
    /// Finite table, e.g. loaded from CSV. `b[0]` is unused.
    Table {
        origin: String,
        a: Vec<Q>,
        b: Vec<Q>,
    },
}

/// Monic three-term recurrence coefficients `(a_n, b_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrencePair {
    source: RecurrenceSource,
}

impl RecurrencePair {
    pub fn constant(a: Q, b: Q) -> Result<Self> {
        if !b.is_positive() {
            return Err(Error::InvalidRecurrence(format!(
                "b = {} is not positive",
                format_q(&b)
            )));
        }
        Ok(Self {
            source: RecurrenceSource::Constant { a, b },
        })
    }

    /// A finite table; `b[0]` is ignored and `a.len()` must equal `b.len()`.
    pub fn table(origin: impl Into<String>, a: Vec<Q>, b: Vec<Q>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidRecurrence(
                "a and b columns differ in length".into(),
            ));
        }
        if let Some(n) = (1..b.len()).find(|&n| !b[n].is_positive()) {
            return Err(Error::NonpositiveB { n });
        }
        Ok(Self {
            source: RecurrenceSource::Table {
                origin: origin.into(),
                a,
                b,
            },
        })
    }

    pub fn source(&self) -> &RecurrenceSource {
        &self.source
    }

    pub fn provenance(&self) -> String {
        match &self.source {
            RecurrenceSource::Family(f) => format!("family {f}"),
            RecurrenceSource::Constant { a, b } => {
                format!("constant a={},b={}", format_q(a), format_q(b))
            }
            RecurrenceSource::Table { origin, .. } => format!("table {origin}"),
        }
    }

    /// Largest index available, `None` for unbounded generators.
    pub fn len_limit(&self) -> Option<usize> {
        match &self.source {
            RecurrenceSource::Table { a, .. } => Some(a.len()),
            _ => None,
        }
    }

    /// Diagonal coefficient `a_n`, `n ≥ 0`.
    pub fn a(&self, n: usize) -> Result<Q> {
        let nq = q_int(n as i64);
        match &self.source {
            RecurrenceSource::Constant { a, .. } => Ok(a.clone()),
            RecurrenceSource::Table { a, .. } => a.get(n).cloned().ok_or(Error::OutOfTable(n)),
            RecurrenceSource::Family(f) => Ok(match f {
                FamilySpec::Laguerre { alpha } => q_int(2) * nq + alpha + q_int(1),
                FamilySpec::Gegenbauer { .. }
                | FamilySpec::ChebyshevT
                | FamilySpec::ChebyshevU
                | FamilySpec::QUltraspherical { .. } => Q::zero(),
                FamilySpec::Jacobi { alpha, beta } => {
                    let s = alpha + beta;
                    if n == 0 {
                        (beta - alpha) / (&s + q_int(2))
                    } else {
                        let t = q_int(2) * nq + &s;
                        (beta * beta - alpha * alpha) / (&t * (&t + q_int(2)))
                    }
                }
                FamilySpec::Meixner { beta, c } => (&nq + (&nq + beta) * c) / (Q::one() - c),
                FamilySpec::MeixnerPollaczek {
                    lambda,
                    cos_phi,
                    sin_phi,
                } => -(&nq + lambda) * cos_phi / sin_phi,
            }),
        }
    }

    /// Off-diagonal coefficient `b_n`, `n ≥ 1`.
    pub fn b(&self, n: usize) -> Result<Q> {
        if n == 0 {
            return Err(Error::InvalidRecurrence(
                "b_0 is not part of the recurrence".into(),
            ));
        }
        let nq = q_int(n as i64);
        let one = Q::one();
        let b = match &self.source {
            RecurrenceSource::Constant { b, .. } => b.clone(),
            RecurrenceSource::Table { b, .. } => b.get(n).cloned().ok_or(Error::OutOfTable(n))?,
            RecurrenceSource::Family(f) => match f {
                FamilySpec::Laguerre { alpha } => &nq * (&nq + alpha),
                FamilySpec::Gegenbauer { lambda } => {
                    &nq * (&nq + q_int(2) * lambda - &one)
                        / (q_int(4) * (&nq + lambda) * (&nq + lambda - &one))
                }
                FamilySpec::ChebyshevT if n == 1 => q_frac(1, 2),
                FamilySpec::ChebyshevT | FamilySpec::ChebyshevU => q_frac(1, 4),
                FamilySpec::Jacobi { alpha, beta } => {
                    let s = alpha + beta;
                    if n == 1 {
                        let t = &s + q_int(2);
                        q_int(4) * (alpha + &one) * (beta + &one) / (&t * &t * (&s + q_int(3)))
                    } else {
                        let t = q_int(2) * &nq + &s;
                        q_int(4) * &nq * (&nq + alpha) * (&nq + beta) * (&nq + &s)
                            / (&t * &t * (&t + &one) * (&t - &one))
                    }
                }
                FamilySpec::QUltraspherical { beta, q } => {
                    let qn = num_traits::pow(q.clone(), n);
                    let qn1 = num_traits::pow(q.clone(), n - 1);
                    (&one - &qn) * (&one - beta * beta * &qn1)
                        / (q_int(4) * (&one - beta * &qn) * (&one - beta * &qn1))
                }
                FamilySpec::Meixner { beta, c } => {
                    let omc = &one - c;
                    &nq * (&nq + beta - &one) * c / (&omc * &omc)
                }
                FamilySpec::MeixnerPollaczek {
                    lambda, sin_phi, ..
                } => &nq * (&nq + q_int(2) * lambda - &one) / (q_int(4) * sin_phi * sin_phi),
            },
        };
        if !b.is_positive() {
            return Err(Error::InvalidRecurrence(format!(
                "b_{n} = {} is not positive",
                format_q(&b)
            )));
        }
        Ok(b)
    }
}

/// Monic recurrence coefficients of a family.
pub fn family_recurrence(f: &FamilySpec) -> Result<RecurrencePair> {
    f.validate()?;
    Ok(RecurrencePair {
        source: RecurrenceSource::Family(f.clone()),
    })
}

/// Symmetric tridiagonal matrix: `diag` of length N, `offdiag` of length N−1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TridiagonalMatrix {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::DomainError(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                offdiag.len()
            )));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.diag.iter().map(|d| d * d).sum::<f64>()
            + 2.0 * self.offdiag.iter().map(|e| e * e).sum::<f64>()
    }

    /// Max absolute row sum, an upper bound for the spectral norm.
    pub fn norm_inf(&self) -> f64 {
        let n = self.size();
        (0..n)
            .map(|i| {
                let left = if i > 0 {
                    self.offdiag[i - 1].abs()
                } else {
                    0.0
                };
                let right = if i + 1 < n {
                    self.offdiag[i].abs()
                } else {
                    0.0
                };
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// Gershgorin intervals, one per row.
    pub fn gershgorin(&self) -> Vec<(f64, f64)> {
        let n = self.size();
        (0..n)
            .map(|i| {
                let left = if i > 0 {
                    self.offdiag[i - 1].abs()
                } else {
                    0.0
                };
                let right = if i + 1 < n {
                    self.offdiag[i].abs()
                } else {
                    0.0
                };
                (self.diag[i] - left - right, self.diag[i] + left + right)
            })
            .collect()
    }
}

/// N×N truncation: `diag[i] = a_i`, `offdiag[i] = √b_{i+1}`.
pub fn jacobi_matrix(rec: &RecurrencePair, n: usize) -> Result<TridiagonalMatrix> {
    if n == 0 {
        return Err(Error::DomainError("Jacobi matrix needs N >= 1".into()));
    }
    let diag = (0..n)
        .map(|i| rec.a(i).map(|a| q_to_f64(&a)))
        .collect::<Result<Vec<_>>>()?;
    let offdiag = (1..n)
        .map(|i| rec.b(i).map(|b| q_to_f64(&b).sqrt()))
        .collect::<Result<Vec<_>>>()?;
    TridiagonalMatrix::new(diag, offdiag)
}

/// Reads a `n,a_n,b_n` CSV table with rationals written as `p/q`.
pub fn load_recurrence_csv(path: impl AsRef<Path>) -> Result<RecurrencePair> {
    let path = path.as_ref();
    let file =
        std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_recurrence_csv(file, &path.display().to_string())
}

pub fn parse_recurrence_csv(reader: impl Read, origin: &str) -> Result<RecurrencePair> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?;
    let names: Vec<&str> = headers.iter().collect();
    if names != ["n", "a_n", "b_n"] {
        return Err(Error::Parse(format!(
            "expected header n,a_n,b_n, found {}",
            names.join(",")
        )));
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.len() != 3 {
            return Err(Error::Parse(format!("row {row}: expected 3 fields")));
        }
        let n: usize = record[0]
            .parse()
            .map_err(|_| Error::Parse(format!("row {row}: bad index {:?}", &record[0])))?;
        if n != a.len() {
            return Err(Error::GapInIndices {
                expected: a.len(),
                found: n,
            });
        }
        a.push(parse_q(&record[1])?);
        let b_field = &record[2];
        if n == 0 && matches!(b_field, "" | "-" | "—") {
            b.push(Q::zero());
            continue;
        }
        let bn = parse_q(b_field)?;
        if n > 0 && !bn.is_positive() {
            return Err(Error::NonpositiveB { n });
        }
        b.push(bn);
    }
    if a.is_empty() {
        return Err(Error::Parse("recurrence table is empty".into()));
    }
    RecurrencePair::table(origin, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::poly::generate_from_ttr;

    fn qp(cs: &[&str]) -> Poly<Q> {
        Poly::new(cs.iter().map(|s| q(s)).collect())
    }

    #[test]
    fn classical_examples() {
        assert_eq!(
            family_poly(&FamilySpec::ChebyshevT, 2).unwrap(),
            qp(&["-1", "0", "2"])
        );
        let lag = FamilySpec::laguerre(q("3/4")).unwrap();
        assert_eq!(family_poly(&lag, 1).unwrap(), qp(&["7/4", "-1"]));
        let lam = q("2/5");
        let g = FamilySpec::gegenbauer(lam.clone()).unwrap();
        let expect = Poly::new(vec![
            -lam.clone(),
            Q::zero(),
            q_int(2) * &lam * (&lam + q_int(1)),
        ]);
        assert_eq!(family_poly(&g, 2).unwrap(), expect);
        let g1 = FamilySpec::gegenbauer(q("1")).unwrap();
        assert_eq!(
            family_poly(&g1, 2).unwrap(),
            family_poly(&FamilySpec::ChebyshevU, 2).unwrap()
        );
        assert_eq!(family_poly(&g1, 2).unwrap(), qp(&["-1", "0", "4"]));
    }

    #[test]
    fn q_ultraspherical_base_case() {
        let (beta, qq) = (q("2/5"), q("1/3"));
        let f = FamilySpec::q_ultraspherical(beta.clone(), qq.clone()).unwrap();
        let c1 = family_poly(&f, 1).unwrap();
        let expect = Poly::<Q>::x().scale(&(q_int(2) * (q_int(1) - &beta) / (q_int(1) - &qq)));
        assert_eq!(c1, expect);
    }

    #[test]
    fn recurrence_examples() {
        let t = family_recurrence(&FamilySpec::ChebyshevT).unwrap();
        assert_eq!(t.a(5).unwrap(), q("0"));
        assert_eq!(t.b(1).unwrap(), q("1/2"));
        assert_eq!(t.b(7).unwrap(), q("1/4"));
        let l = family_recurrence(&FamilySpec::laguerre(q("1/2")).unwrap()).unwrap();
        assert_eq!(l.a(3).unwrap(), q("15/2"));
        assert_eq!(l.b(3).unwrap(), q("21/2"));
        let g = family_recurrence(&FamilySpec::gegenbauer(q("1/3")).unwrap()).unwrap();
        assert!((0..10).all(|n| g.a(n).unwrap().is_zero()));
        assert!(t.b(0).is_err());
    }

    fn sample_families() -> Vec<FamilySpec> {
        let mut out = vec![FamilySpec::ChebyshevT, FamilySpec::ChebyshevU];
        for p in ["0", "1/2", "7/3"] {
            out.push(FamilySpec::laguerre(q(p)).unwrap());
        }
        for p in ["1/3", "1", "-1/4"] {
            out.push(FamilySpec::gegenbauer(q(p)).unwrap());
        }
        for (a, b) in [("0", "0"), ("1/2", "-1/2"), ("-1/3", "5/2")] {
            out.push(FamilySpec::jacobi(q(a), q(b)).unwrap());
        }
        for (b, qq) in [("1/5", "1/3"), ("2/5", "1/2"), ("-1/2", "3/4")] {
            out.push(FamilySpec::q_ultraspherical(q(b), q(qq)).unwrap());
        }
        for (b, c) in [("1", "1/2"), ("5/2", "1/3"), ("1/3", "4/5")] {
            out.push(FamilySpec::meixner(q(b), q(c)).unwrap());
        }
        out
    }

    #[test]
    fn monic_rescale_matches_recurrence() {
        for f in sample_families() {
            let rec = family_recurrence(&f).unwrap();
            let monic = generate_from_ttr(&rec, 10).unwrap();
            let classical = family_basis(&f, 10).unwrap();
            for n in 0..=10 {
                assert_eq!(classical[n].monic().unwrap(), monic[n], "{f} n = {n}");
            }
        }
    }

    #[test]
    fn jacobi_edge_parameters() {
        // α + β = 0 and α + β + 1 = 0 hit the removable singularities of a_0, b_1
        for (a, b) in [("1/2", "-1/2"), ("-1/3", "-2/3"), ("0", "0")] {
            let f = FamilySpec::jacobi(q(a), q(b)).unwrap();
            let rec = family_recurrence(&f).unwrap();
            let monic = generate_from_ttr(&rec, 6).unwrap();
            for n in 0..=6 {
                assert_eq!(family_poly(&f, n).unwrap().monic().unwrap(), monic[n]);
            }
        }
    }

    #[test]
    fn chebyshev_product_identity() {
        let t = family_basis(&FamilySpec::ChebyshevT, 32).unwrap();
        let half = q("1/2");
        for m in 0..=16usize {
            for n in 0..=16usize {
                let lhs = &t[m] * &t[n];
                let rhs = (&t[m + n] + &t[m.abs_diff(n)]).scale(&half);
                assert_eq!(lhs, rhs, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn chebyshev_t_from_u() {
        let t = family_basis(&FamilySpec::ChebyshevT, 16).unwrap();
        let u = family_basis(&FamilySpec::ChebyshevU, 16).unwrap();
        for n in 2..=16 {
            assert_eq!(t[n], (&u[n] - &u[n - 2]).scale(&q("1/2")));
        }
    }

    #[test]
    fn domains() {
        assert!(FamilySpec::laguerre(q("-1")).is_err());
        assert!(FamilySpec::gegenbauer(q("0")).is_err());
        assert!(FamilySpec::gegenbauer(q("-1/2")).is_err());
        assert!(FamilySpec::jacobi(q("0"), q("-3/2")).is_err());
        assert!(FamilySpec::q_ultraspherical(q("1/2"), q("1")).is_err());
        assert!(FamilySpec::meixner(q("1"), q("1")).is_err());
        assert!(FamilySpec::meixner_pollaczek(q("1"), q("1/2"), q("1/2")).is_err());
        assert!(FamilySpec::meixner_pollaczek(q("1"), q("3/5"), q("4/5")).is_ok());
        let mp = FamilySpec::meixner_pollaczek(q("1"), q("0"), q("1")).unwrap();
        assert!(family_poly(&mp, 2).is_err());
    }

    #[test]
    fn parse_family_strings() {
        assert_eq!(
            FamilySpec::parse("gegenbauer:lambda=1/3").unwrap(),
            FamilySpec::Gegenbauer { lambda: q("1/3") }
        );
        let m = FamilySpec::parse("meixner:beta=1,c=1/2").unwrap();
        assert_eq!(m.to_string(), "meixner:beta=1,c=1/2");
        assert_eq!(FamilySpec::parse(&m.to_string()).unwrap(), m);
        assert_eq!(
            FamilySpec::parse("chebyshev-t").unwrap(),
            FamilySpec::ChebyshevT
        );
        assert!(FamilySpec::parse("laguerre").is_err());
        assert!(FamilySpec::parse("laguerre:alpha=0,beta=1").is_err());
        assert!(FamilySpec::parse("hermite").is_err());
    }

    #[test]
    fn jacobi_matrix_examples() {
        let t = family_recurrence(&FamilySpec::ChebyshevT).unwrap();
        let m = jacobi_matrix(&t, 2).unwrap();
        assert_eq!(m.diag, vec![0.0, 0.0]);
        assert!((m.offdiag[0] - 0.5f64.sqrt()).abs() < 1e-16);
        let l = family_recurrence(&FamilySpec::laguerre(q("0")).unwrap()).unwrap();
        let m = jacobi_matrix(&l, 2).unwrap();
        assert_eq!(m.diag, vec![1.0, 3.0]);
        assert_eq!(m.offdiag, vec![1.0]);
        let m = jacobi_matrix(&l, 1).unwrap();
        assert_eq!(m.diag, vec![1.0]);
        assert!(m.offdiag.is_empty());
        assert!(jacobi_matrix(&l, 0).is_err());
    }

    #[test]
    fn csv_tables() {
        let ok = "n,a_n,b_n\n0,0,\n1,0,1/2\n2,0,1/4\n";
        let rec = parse_recurrence_csv(ok.as_bytes(), "mem").unwrap();
        assert_eq!(rec.b(1).unwrap(), q("1/2"));
        assert_eq!(rec.b(2).unwrap(), q("1/4"));
        assert_eq!(rec.b(3), Err(Error::OutOfTable(3)));
        let dash = "n,a_n,b_n\n0,0,—\n1,0,1/2\n";
        assert!(parse_recurrence_csv(dash.as_bytes(), "mem").is_ok());
        let neg = "n,a_n,b_n\n0,0,\n1,0,-1\n";
        assert_eq!(
            parse_recurrence_csv(neg.as_bytes(), "mem"),
            Err(Error::NonpositiveB { n: 1 })
        );
        let gap = "n,a_n,b_n\n0,0,\n2,0,1/4\n";
        assert_eq!(
            parse_recurrence_csv(gap.as_bytes(), "mem"),
            Err(Error::GapInIndices {
                expected: 1,
                found: 2
            })
        );
        let header = "k,a,b\n0,0,\n";
        assert!(matches!(
            parse_recurrence_csv(header.as_bytes(), "mem"),
            Err(Error::Parse(_))
        ));
        let junk = "n,a_n,b_n\n0,zz,\n";
        assert!(matches!(
            parse_recurrence_csv(junk.as_bytes(), "mem"),
            Err(Error::Parse(_))
        ));
    }
}
