//! Evaluators for printed connection and linearization coefficient formulas.
//!
//! Every evaluator returns a degree-indexed vector; entries outside the
//! printed summation range are zero.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    factorial, format_q, hyp_pfq_terminating, pochhammer, q_frac, q_int, q_pochhammer,
    recip_factorial, HypSeriesSpec, Q,
};
use crate::families::FamilySpec;

/// Parameters of a connection relation `P_n(x; a) = Σ β_k P_k(x; b)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConnParams {
    /// `L_n^α` in the basis `L_k^β`.
    Laguerre { alpha: Q, beta: Q },
    /// `C_n^λ` in the basis `C_k^μ`.
    Gegenbauer { lambda: Q, mu: Q },
    /// `C_n(x; γ|q)` in the basis `C_k(x; β|q)`.
    Rogers { gamma: Q, beta: Q, q: Q },
    /// `P_n^{(γ,δ)}` in the basis `P_k^{(α,β)}`.
    Jacobi {
        gamma: Q,
        delta: Q,
        alpha: Q,
        beta: Q,
    },
}

/// Parameters of a linearization `P_m P_n = Σ α_k P_k`.
#[derive(Debug, Clone, PartialEq)]
pub enum LinParams {
    Laguerre { alpha: Q },
    Gegenbauer { lambda: Q },
    Rogers { beta: Q, q: Q },
    Jacobi { alpha: Q, beta: Q },
}

impl ConnParams {
    pub fn families(&self) -> Result<(FamilySpec, FamilySpec)> {
        Ok(match self {
            Self::Laguerre { alpha, beta } => (
                FamilySpec::laguerre(alpha.clone())?,
                FamilySpec::laguerre(beta.clone())?,
            ),
            Self::Gegenbauer { lambda, mu } => (
                FamilySpec::gegenbauer(lambda.clone())?,
                FamilySpec::gegenbauer(mu.clone())?,
            ),
            Self::Rogers { gamma, beta, q } => (
                FamilySpec::q_ultraspherical(gamma.clone(), q.clone())?,
                FamilySpec::q_ultraspherical(beta.clone(), q.clone())?,
            ),
            Self::Jacobi {
                gamma,
                delta,
                alpha,
                beta,
            } => (
                FamilySpec::jacobi(gamma.clone(), delta.clone())?,
                FamilySpec::jacobi(alpha.clone(), beta.clone())?,
            ),
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::Laguerre { .. } => "laguerre-conn",
            Self::Gegenbauer { .. } => "gegenbauer-conn",
            Self::Rogers { .. } => "rogers-conn",
            Self::Jacobi { .. } => "jacobi-conn",
        }
    }

    pub fn named(&self) -> Vec<(String, String)> {
        let pairs: Vec<(&str, &Q)> = match self {
            Self::Laguerre { alpha, beta } => vec![("alpha", alpha), ("beta", beta)],
            Self::Gegenbauer { lambda, mu } => vec![("lambda", lambda), ("mu", mu)],
            Self::Rogers { gamma, beta, q } => vec![("gamma", gamma), ("beta", beta), ("q", q)],
            Self::Jacobi {
                gamma,
                delta,
                alpha,
                beta,
            } => vec![
                ("gamma", gamma),
                ("delta", delta),
                ("alpha", alpha),
                ("beta", beta),
            ],
        };
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), format_q(v)))
            .collect()
    }
}

impl LinParams {
    pub fn family(&self) -> Result<FamilySpec> {
        match self {
            Self::Laguerre { alpha } => FamilySpec::laguerre(alpha.clone()),
            Self::Gegenbauer { lambda } => FamilySpec::gegenbauer(lambda.clone()),
            Self::Rogers { beta, q } => FamilySpec::q_ultraspherical(beta.clone(), q.clone()),
            Self::Jacobi { alpha, beta } => FamilySpec::jacobi(alpha.clone(), beta.clone()),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::Laguerre { .. } => "laguerre-lin",
            Self::Gegenbauer { .. } => "gegenbauer-lin",
            Self::Rogers { .. } => "rogers-lin",
            Self::Jacobi { .. } => "jacobi-lin",
        }
    }

    pub fn named(&self) -> Vec<(String, String)> {
        let pairs: Vec<(&str, &Q)> = match self {
            Self::Laguerre { alpha } => vec![("alpha", alpha)],
            Self::Gegenbauer { lambda } => vec![("lambda", lambda)],
            Self::Rogers { beta, q } => vec![("beta", beta), ("q", q)],
            Self::Jacobi { alpha, beta } => vec![("alpha", alpha), ("beta", beta)],
        };
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), format_q(v)))
            .collect()
    }
}

impl Serialize for ConnParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.named())
    }
}

impl Serialize for LinParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.named())
    }
}

fn pole(what: &str) -> Error {
    Error::Formula(format!("pole: {what} vanishes"))
}

fn nonzero(x: Q, what: &str) -> Result<Q> {
    if x.is_zero() {
        Err(pole(what))
    } else {
        Ok(x)
    }
}

fn qi(n: usize) -> Q {
    q_int(n as i64)
}

/// Printed connection coefficients, indexed by target degree `0..=n`.
pub fn connection_formula(params: &ConnParams, n: usize) -> Result<Vec<Q>> {
    params.families()?;
    let mut out = vec![Q::zero(); n + 1];
    match params {
        ConnParams::Laguerre { alpha, beta } => {
            // (α−β)_{n−k} / (n−k)!
            let d = alpha - beta;
            for (k, slot) in out.iter_mut().enumerate() {
                *slot = pochhammer(&d, n - k) / factorial(n - k);
            }
        }
        ConnParams::Gegenbauer { lambda, mu } => {
            // (μ+n−2k)/μ · (λ)_{n−k} (λ−μ)_k / (k! (μ+1)_{n−k}) at degree n−2k
            let lm = lambda - mu;
            for k in 0..=n / 2 {
                let den = nonzero(
                    mu * factorial(k) * pochhammer(&(mu + Q::one()), n - k),
                    "mu k! (mu+1)_{n-k}",
                )?;
                out[n - 2 * k] =
                    (mu + qi(n - 2 * k)) * pochhammer(lambda, n - k) * pochhammer(&lm, k) / den;
            }
        }
        ConnParams::Rogers { gamma, beta, q } => {
            // β^k (γ/β;q)_k (γ;q)_{n−k} (1−βq^{n−2k}) / ((q;q)_k (βq;q)_{n−k} (1−β))
            let one = Q::one();
            if beta.is_zero() {
                return Err(pole("beta"));
            }
            let ratio = gamma / beta;
            let bq = beta * q;
            for k in 0..=n / 2 {
                let qn2k = num_traits::pow(q.clone(), n - 2 * k);
                let num = num_traits::pow(beta.clone(), k)
                    * q_pochhammer(&ratio, q, k)
                    * q_pochhammer(gamma, q, n - k)
                    * (&one - beta * qn2k);
                let den = nonzero(
                    q_pochhammer(q, q, k) * q_pochhammer(&bq, q, n - k) * (&one - beta),
                    "(q;q)_k (beta q;q)_{n-k} (1-beta)",
                )?;
                out[n - 2 * k] = num / den;
            }
        }
        ConnParams::Jacobi {
            gamma,
            delta,
            alpha,
            beta,
        } => {
            // (γ+k+1)_{n−k} (n+γ+δ+1)_k Γ(α+β+k+1) / ((n−k)! Γ(α+β+2k+1))
            //   × 3F2(−n+k, n+k+γ+δ+1, α+k+1; γ+k+1, α+β+2k+2; 1)
            // with Γ(α+β+k+1)/Γ(α+β+2k+1) = 1/(α+β+k+1)_k.
            if *gamma > -Q::one() && *delta > -Q::one() && gamma + delta + Q::one() == Q::zero() {
                return Err(Error::Formula("gamma + delta + 1 = 0 is excluded".into()));
            }
            let ab = alpha + beta;
            let gd = gamma + delta;
            for (k, slot) in out.iter_mut().enumerate() {
                let gamma_ratio = nonzero(pochhammer(&(&ab + qi(k + 1)), k), "(alpha+beta+k+1)_k")?;
                let pre = pochhammer(&(gamma + qi(k + 1)), n - k)
                    * pochhammer(&(&gd + qi(n + 1)), k)
                    / (factorial(n - k) * gamma_ratio);
                let series = HypSeriesSpec::new(
                    vec![
                        q_int(k as i64 - n as i64),
                        &gd + qi(n + k + 1),
                        alpha + qi(k + 1),
                    ],
                    vec![gamma + qi(k + 1), &ab + qi(2 * k + 2)],
                    Q::one(),
                );
                *slot = pre * hyp_pfq_terminating(&series).map_err(series_error)?;
            }
        }
    }
    Ok(out)
}

fn series_error(e: Error) -> Error {
    Error::Formula(format!("series: {e}"))
}

/// Printed linearization coefficients for `P_m P_n`, indexed by degree
/// `0..=m+n`.
pub fn linearization_formula(params: &LinParams, m: usize, n: usize) -> Result<Vec<Q>> {
    params.family()?;
    let mut out = vec![Q::zero(); m + n + 1];
    match params {
        LinParams::Laguerre { alpha } => {
            for k in m.abs_diff(n)..=m + n {
                out[k] = laguerre_a(alpha, k, m, n)?;
            }
        }
        LinParams::Gegenbauer { lambda } => {
            let two_l = q_int(2) * lambda;
            for k in 0..=m.min(n) {
                let s = m + n;
                let num = (lambda + qi(s - 2 * k))
                    * factorial(s - 2 * k)
                    * pochhammer(lambda, k)
                    * pochhammer(lambda, m - k)
                    * pochhammer(lambda, n - k)
                    * pochhammer(&two_l, s - k);
                let den = (lambda + qi(s - k))
                    * factorial(k)
                    * factorial(m - k)
                    * factorial(n - k)
                    * pochhammer(lambda, s - k)
                    * pochhammer(&two_l, s - 2 * k);
                out[s - 2 * k] = num / nonzero(den, "B denominator")?;
            }
        }
        LinParams::Rogers { beta, q } => {
            let one = Q::one();
            let b2 = beta * beta;
            let bq = beta * q;
            for k in 0..=m.min(n) {
                let s = m + n;
                let num = q_pochhammer(q, q, s - 2 * k)
                    * q_pochhammer(beta, q, m - k)
                    * q_pochhammer(beta, q, n - k)
                    * q_pochhammer(beta, q, k)
                    * q_pochhammer(&b2, q, s - k)
                    * (&one - beta * num_traits::pow(q.clone(), s - 2 * k));
                let den = q_pochhammer(q, q, k)
                    * q_pochhammer(q, q, m - k)
                    * q_pochhammer(q, q, n - k)
                    * q_pochhammer(&bq, q, s - k)
                    * q_pochhammer(&b2, q, s - 2 * k)
                    * (&one - beta);
                out[s - 2 * k] = num / nonzero(den, "D denominator")?;
            }
        }
        LinParams::Jacobi { alpha, beta } => {
            let (m, n) = if m <= n { (m, n) } else { (n, m) };
            if m == 0 {
                return Err(Error::Formula(
                    "outside the printed index range (needs s + 1 <= n, i.e. both degrees >= 1)"
                        .into(),
                ));
            }
            let s = n - m;
            for j in 0..=2 * n - 2 * s {
                out[s + j] = jacobi_h(alpha, beta, s, j, n)?;
            }
        }
    }
    Ok(out)
}

/// `A_{k,m,n}^α` with `1/(k−n)!` and `1/(k−m)!` absorbed into the lower
/// parameters of the 3F2, i.e. `1/((k−n)! (k−n+1)_i) = 1/(k−n+i)!`, so the
/// reciprocal-factorial convention `1/(−j)! = 0` applies termwise.
fn laguerre_a(alpha: &Q, k: usize, m: usize, n: usize) -> Result<Q> {
    let top = m + n - k;
    let pre =
        Q::from_integer(num_bigint::BigInt::from(2).pow(top as u32)) * factorial(n) * factorial(m)
            / factorial(top);
    let a1 = q_frac(k as i64 - m as i64 - n as i64, 2);
    let a2 = q_frac(k as i64 - m as i64 - n as i64 + 1, 2);
    let a3 = alpha + qi(k + 1);
    let spec = HypSeriesSpec::new(vec![a1.clone(), a2.clone(), a3.clone()], vec![], Q::one());
    let last = spec
        .termination_index()
        .ok_or(Error::Formula("A series does not terminate".into()))?;
    let (kn, km) = (k as i64 - n as i64, k as i64 - m as i64);
    let mut sum = Q::zero();
    let mut term = Q::one(); // (a1)_i (a2)_i (a3)_i / i!
    for i in 0..=last {
        if i > 0 {
            let iq = qi(i - 1);
            term = term * (&a1 + &iq) * (&a2 + &iq) * (&a3 + &iq) / qi(i);
        }
        let i = i as i64;
        sum += &term * recip_factorial(kn + i) * recip_factorial(km + i);
    }
    Ok(pre * sum)
}

/// `h_{s+j, n−s, n}^{α,β}` as printed, with the terminating 9F8.
///
/// The printed upper row carries ten entries; `(β+s+½)/2` is the `a/2`
/// parameter of the very-well-poised series and is placed in the lower row,
/// giving nine upper and eight lower parameters.
fn jacobi_h(alpha: &Q, beta: &Q, s: usize, j: usize, n: usize) -> Result<Q> {
    let one = Q::one();
    let half = q_frac(1, 2);
    let ab = alpha + beta;
    let ab1 = &ab + &one;

    let pre_num = (&ab1 + qi(2 * s + 2 * j))
        * factorial(n)
        * factorial(n)
        * factorial(n - s)
        * factorial(s + j);
    let pre_den = &ab1 * (qi(2 * s) - qi(2 * n) - &ab) * factorial(s) * factorial(j);
    let pre = pre_num / nonzero(pre_den, "(alpha+beta+1)(2s-2n-alpha-beta)")?;

    let ratio_num = pochhammer(&(beta + &one), n)
        * pochhammer(&ab1, 2 * n - 2 * s)
        * pochhammer(&ab1, 2 * s + j)
        * pochhammer(&q_int(2 * s as i64 - 2 * n as i64), j)
        * pochhammer(&(q_int(2) * &ab + qi(2 * n + 2)), j)
        * pochhammer(&(alpha - beta), j);
    let alpha1 = alpha + &one;
    let ratio_den = pochhammer(&alpha1, n)
        * pochhammer(&alpha1, n - s)
        * pochhammer(&alpha1, s + j)
        * pochhammer(&alpha1, n - s)
        * pochhammer(&(beta + &one), s)
        * pochhammer(&ab1, n - s)
        * pochhammer(&(&ab + qi(2)), 2 * n + j)
        * pochhammer(&(q_int(2) * beta + qi(2 * s + 2)), j);
    let ratio = ratio_num / nonzero(ratio_den, "h Pochhammer denominator")?;

    let jq = qi(j);
    let sq = qi(s);
    let a = beta + &sq + &half;
    let upper = vec![
        a.clone(),
        (beta + &sq + q_frac(3, 2)) / qi(2),
        (q_int(2) * beta + &one) / qi(2),
        beta + qi(n + 1),
        sq.clone() + &one,
        (qi(2 * s) - qi(2 * n) + &one) / qi(2),
        (&ab + &jq + qi(2 * s + 2)) / qi(2),
        (&one - &jq) / qi(2),
        -jq.clone() / qi(2),
    ];
    let lower = vec![
        a / qi(2),
        &sq - qi(n) - alpha,
        (&ab + &jq + qi(2 * s + 1)) / qi(2),
        &ab + qi(n) + q_frac(3, 2),
        (beta - alpha - &jq + qi(2)) / qi(2),
        (beta - alpha - &jq + &one) / qi(2),
        (q_int(2) * beta + qi(2 * s + 2) + &jq) / qi(2),
        (q_int(2) * beta + qi(2 * s + 3) + &jq) / qi(2),
    ];
    let series =
        hyp_pfq_terminating(&HypSeriesSpec::new(upper, lower, one)).map_err(series_error)?;
    Ok(pre * ratio * series)
}

/// `T_m T_n = ¼(U_{m+n} − U_{m+n−2} + U_{m−n} − U_{m−n−2})` in the U basis,
/// with `m ≥ n` after swapping and `U_{−j} = −U_{j−2}` (so `U_{−1} = 0`,
/// `U_{−2} = −1`).
pub fn chebyshev_product_formula(m: usize, n: usize) -> Vec<Q> {
    let (m, n) = if m >= n { (m, n) } else { (n, m) };
    let mut out = vec![Q::zero(); m + n + 1];
    let quarter = q_frac(1, 4);
    let mut add = |idx: i64, sign: i64| {
        let (idx, sign) = if idx >= 0 {
            (idx, sign)
        } else {
            (-idx - 2, -sign)
        };
        if idx >= 0 {
            out[idx as usize] += &quarter * q_int(sign);
        }
    };
    let (m, n) = (m as i64, n as i64);
    add(m + n, 1);
    add(m + n - 2, -1);
    add(m - n, 1);
    add(m - n - 2, -1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn identity_cases_give_unit_vectors() {
        let unit = |n: usize| {
            let mut v = vec![Q::zero(); n + 1];
            v[n] = Q::one();
            v
        };
        for n in 0..7 {
            let lag = ConnParams::Laguerre {
                alpha: q("1/2"),
                beta: q("1/2"),
            };
            assert_eq!(connection_formula(&lag, n).unwrap(), unit(n));
            let geg = ConnParams::Gegenbauer {
                lambda: q("2/3"),
                mu: q("2/3"),
            };
            assert_eq!(connection_formula(&geg, n).unwrap(), unit(n));
            let jac = ConnParams::Jacobi {
                gamma: q("0"),
                delta: q("0"),
                alpha: q("0"),
                beta: q("0"),
            };
            assert_eq!(connection_formula(&jac, n).unwrap(), unit(n));
            let rog = ConnParams::Rogers {
                gamma: q("2/5"),
                beta: q("2/5"),
                q: q("1/3"),
            };
            assert_eq!(connection_formula(&rog, n).unwrap(), unit(n));
        }
    }

    #[test]
    fn gegenbauer_b_small_case() {
        let b = linearization_formula(&LinParams::Gegenbauer { lambda: q("1") }, 1, 1).unwrap();
        assert_eq!(b, vec![q("1"), q("0"), q("1")]);
        let lam = q("3/7");
        let b = linearization_formula(
            &LinParams::Gegenbauer {
                lambda: lam.clone(),
            },
            1,
            1,
        )
        .unwrap();
        // C_1^λ C_1^λ = 4λ²x² = B_0 C_2^λ + B_1 C_0 with C_2^λ = 2λ(λ+1)x² − λ
        let b0 = q_int(2) * &lam / (&lam + q_int(1));
        assert_eq!(b[2], b0);
        assert_eq!(b[0], &b0 * &lam);
    }

    #[test]
    fn laguerre_a_values() {
        let a = linearization_formula(&LinParams::Laguerre { alpha: q("0") }, 0, 0).unwrap();
        assert_eq!(a, vec![q("1")]);
        // printed A at m = n = 1, α = 0: k = 0 gives 1, k = 1 gives +2, k = 2 gives 1
        let a = linearization_formula(&LinParams::Laguerre { alpha: q("0") }, 1, 1).unwrap();
        assert_eq!(a, vec![q("1"), q("2"), q("1")]);
    }

    #[test]
    fn chebyshev_product_conventions() {
        assert_eq!(chebyshev_product_formula(0, 0), vec![q("1")]);
        assert_eq!(
            chebyshev_product_formula(1, 1),
            vec![q("1/4"), q("0"), q("1/4")]
        );
        assert_eq!(
            chebyshev_product_formula(2, 1),
            vec![q("0"), q("0"), q("0"), q("1/4")]
        );
    }

    #[test]
    fn jacobi_caveat_and_range() {
        let bad = ConnParams::Jacobi {
            gamma: q("-1/2"),
            delta: q("-1/2"),
            alpha: q("0"),
            beta: q("0"),
        };
        assert!(matches!(
            connection_formula(&bad, 2),
            Err(Error::Formula(_))
        ));
        let lin = LinParams::Jacobi {
            alpha: q("1/2"),
            beta: q("1/3"),
        };
        assert!(matches!(
            linearization_formula(&lin, 0, 3),
            Err(Error::Formula(_))
        ));
    }
}
