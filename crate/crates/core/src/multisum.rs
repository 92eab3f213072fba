//! Double sums with closed forms, their recurrences, a nonterminating
//! variant, and a Kampé de Fériet double sum with its single-sum reduction.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    beta_fn, factorial, format_q, ln_gamma, pochhammer, q_frac, q_int, q_to_f64, Q,
};

fn qi(n: usize) -> Q {
    q_int(n as i64)
}

fn half() -> Q {
    q_frac(1, 2)
}

/// `T(i, n) = Σ_j (−n)_j (½−n)_j / (j! (½)_j) · 1/(i+j+½)`.
pub fn t_inner(i: usize, n: usize) -> Q {
    let a = -qi(n);
    let b = half() - qi(n);
    let mut term = Q::one();
    let mut sum = Q::zero();
    for j in 0..=n {
        if j > 0 {
            let jq = qi(j - 1);
            term = term * (&a + &jq) * (&b + &jq) / (qi(j) * (half() + jq));
        }
        sum += &term / (qi(i + j) + half());
    }
    sum
}

/// The double sum `S(m, n) = Σ_i (−m)_i (n+1)_i / (i! (m+n+2)_i) · T(i, n)`.
pub fn s_terminating(m: usize, n: usize) -> Q {
    let a = -qi(m);
    let b = qi(n + 1);
    let c = qi(m + n + 2);
    let mut coef = Q::one();
    let mut sum = Q::zero();
    for i in 0..=m {
        if i > 0 {
            let iq = qi(i - 1);
            coef = coef * (&a + &iq) * (&b + &iq) / (qi(i) * (&c + iq));
        }
        sum += &coef * t_inner(i, n);
    }
    sum
}

/// `2^{2m+2n} m! (m+n)! (m+n+1)! (½)_n / (n! (n+2m+1)! (½)_{m+n+1})`.
pub fn s_closed(m: usize, n: usize) -> Q {
    let pow2 = Q::from_integer(num_bigint::BigInt::from(1) << (2 * m + 2 * n));
    pow2 * factorial(m) * factorial(m + n) * factorial(m + n + 1) * pochhammer(&half(), n)
        / (factorial(n) * factorial(n + 2 * m + 1) * pochhammer(&half(), m + n + 1))
}

/// Residual of the second-order recurrence of `T` in `i` is zero.
pub fn check_t_recurrence(i: usize, n: usize) -> bool {
    let (iq, nq) = (qi(i), qi(n));
    let lhs = (&iq + &nq + qi(2)) * (qi(2) * &iq + qi(2) * &nq + qi(5)) * t_inner(i + 2, n);
    let mid = qi(4) * &iq * &iq
        + qi(4) * &iq * &nq
        + qi(12) * &iq
        + qi(2) * &nq * &nq
        + qi(5) * &nq
        + qi(9);
    let rhs = mid * t_inner(i + 1, n) - (&iq + qi(1)) * (qi(2) * &iq + qi(1)) * t_inner(i, n);
    lhs == rhs
}

/// Residuals of the two first-order recurrences of `S` (shift in `n`,
/// shift in `m`) evaluated on the double sum itself.
pub fn check_s_recurrences(m: usize, n: usize) -> (bool, bool) {
    let (mq, nq) = (qi(m), qi(n));
    let s = s_terminating(m, n);
    let in_n = (&nq + qi(1))
        * (qi(2) * &mq + &nq + qi(2))
        * (qi(2) * &mq + qi(2) * &nq + qi(3))
        * s_terminating(m, n + 1)
        == qi(4) * (qi(2) * &nq + qi(1)) * (&mq + &nq + qi(1)) * (&mq + &nq + qi(2)) * &s;
    let in_m = (qi(2) * &mq + &nq + qi(2))
        * (qi(2) * &mq + &nq + qi(3))
        * (qi(2) * &mq + qi(2) * &nq + qi(3))
        * s_terminating(m + 1, n)
        == qi(8) * (&mq + qi(1)) * (&mq + &nq + qi(1)) * (&mq + &nq + qi(2)) * &s;
    (in_n, in_m)
}

/// `1/(k+½) = 2 (½)_k / (3/2)_k`.
pub fn half_shift_rewrite_holds(k: usize) -> bool {
    Q::one() / (qi(k) + half()) == qi(2) * pochhammer(&half(), k) / pochhammer(&q_frac(3, 2), k)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub err_bound: f64,
    pub terms: usize,
}

const NONTERM_CAP: usize = 50_000_000;

/// Partial sums of the nonterminating `S(β, n)`.
///
/// Beyond `j > β` the terms keep one sign and decay; the tail is bounded by
/// `∫_J^∞ C u^{−2β−2} du` with `C` fitted to the last term. Natural `β`
/// terminates and returns an exact-zero bound.
pub fn s_nonterminating(beta: &Q, n: usize, tol: f64) -> Result<SeriesValue> {
    if *beta <= -half() {
        return Err(Error::ConvergenceDomain(format!(
            "beta = {} must exceed -1/2",
            format_q(beta)
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::ConvergenceDomain("tol must be positive".into()));
    }
    let b = q_to_f64(beta);
    let nf = n as f64;
    let binom: Vec<f64> = {
        let mut row = vec![1.0f64; 2 * n + 1];
        for k in 1..=2 * n {
            row[k] = row[k - 1] * (2 * n + 1 - k) as f64 / k as f64;
        }
        (0..=n).map(|i| row[2 * i]).collect()
    };
    let inner = |j: usize| -> f64 {
        binom
            .iter()
            .enumerate()
            .map(|(i, c)| c / ((i + j) as f64 + 0.5))
            .sum()
    };
    let natural = beta.is_integer() && !beta.is_negative();
    let mut coef = 1.0f64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for j in 0..NONTERM_CAP {
        if j > 0 {
            let jf = (j - 1) as f64;
            coef *= (jf - b) * (nf + 1.0 + jf) / ((jf + 1.0) * (b + nf + 2.0 + jf));
        }
        if coef == 0.0 && natural {
            return Ok(SeriesValue {
                value: sum + comp,
                err_bound: 0.0,
                terms: j,
            });
        }
        let term = coef * inner(j);
        // Neumaier compensated summation
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        let jf = j as f64;
        if jf > b + 1.0 && j >= 8 {
            let tail = term.abs() * jf / (2.0 * b + 1.0);
            if tail < tol {
                return Ok(SeriesValue {
                    value: sum + comp,
                    err_bound: tail,
                    terms: j + 1,
                });
            }
        }
    }
    Err(Error::ToleranceNotReached {
        value: sum + comp,
        err: f64::NAN,
        tol,
    })
}

/// `2^{2β+2n} B(β+1, n+½) Γ(n+β+2) Γ(n+β+1) / (n! Γ(n+2β+2))`, in log space.
pub fn s_nonterm_closed(beta: &Q, n: usize) -> Result<f64> {
    if *beta <= -half() {
        return Err(Error::ConvergenceDomain(format!(
            "beta = {} must exceed -1/2",
            format_q(beta)
        )));
    }
    let b = q_to_f64(beta);
    let nf = n as f64;
    let ln = (2.0 * b + 2.0 * nf) * std::f64::consts::LN_2
        + beta_fn(b + 1.0, nf + 0.5)?.ln()
        + ln_gamma(nf + b + 2.0)?
        + ln_gamma(nf + b + 1.0)?
        - ln_gamma(nf + 1.0)?
        - ln_gamma(nf + 2.0 * b + 2.0)?;
    Ok(ln.exp())
}

/// Four nonnegative integers of one parity and a rational `κ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KdfPoint {
    alphas: [u32; 4],
    kappa: Q,
}

impl KdfPoint {
    pub fn new(alphas: [u32; 4], kappa: Q) -> Result<Self> {
        let p = alphas[0] % 2;
        if alphas.iter().any(|a| a % 2 != p) {
            return Err(Error::ParityViolation(alphas));
        }
        Ok(Self { alphas, kappa })
    }

    pub fn alphas(&self) -> [u32; 4] {
        self.alphas
    }

    pub fn kappa(&self) -> &Q {
        &self.kappa
    }

    /// `(b₀, b₁, b₂, b₃) = ((α₂+α₃)/2, (α₁+α₄)/2, (α₂+α₄)/2, (α₃+α₄)/2)`.
    pub fn b(&self) -> [usize; 4] {
        let [a1, a2, a3, a4] = self.alphas.map(|a| a as usize);
        [(a2 + a3) / 2, (a1 + a4) / 2, (a2 + a4) / 2, (a3 + a4) / 2]
    }

    fn with(&self, alphas: [u32; 4]) -> Self {
        Self {
            alphas,
            kappa: self.kappa.clone(),
        }
    }
}

fn nonzero(x: Q, what: &str) -> Result<Q> {
    if x.is_zero() {
        Err(Error::Formula(format!("pole: {what} vanishes")))
    } else {
        Ok(x)
    }
}

/// `∏ (½)_{b} / (κ+½)_{b}` over the given `b`s.
fn half_ratio(kappa: &Q, bs: &[usize]) -> Result<Q> {
    let kh = kappa + half();
    let mut num = Q::one();
    let mut den = Q::one();
    for &b in bs {
        num *= pochhammer(&half(), b);
        den *= pochhammer(&kh, b);
    }
    Ok(num / nonzero(den, "(kappa+1/2)_b")?)
}

/// The double sum: returns `(s, s′)` with `s = (2κ)_{2b₁}(2κ)_{2b₀}/(4κ)_{2b₁+2b₀} · s′`.
pub fn kdf_double(p: &KdfPoint) -> Result<(Q, Q)> {
    let [b0, b1, _, b3] = p.b();
    let k = &p.kappa;
    let a3 = p.alphas[2] as usize;
    let a4 = p.alphas[3] as usize;
    let (h1, h0, h3) = (half() - qi(b1), half() - qi(b0), half() - qi(b3));
    let m4 = -qi(a4);
    let m3 = -qi(a3);
    let mut sum = Q::zero();
    for i in 0..=a4 / 2 {
        let left = pochhammer(&m4, 2 * i) / (factorial(i) * pochhammer(&h1, i));
        for j in 0..=a3 / 2 {
            let den = factorial(j) * pochhammer(&h0, j) * pochhammer(&h3, i + j);
            let right = pochhammer(&m3, 2 * j) * pochhammer(k, i + j)
                / nonzero(den, "double-sum denominator")?;
            let quarter = Q::new(One::one(), num_bigint::BigInt::from(1) << (2 * (i + j)));
            sum += &left * right * quarter;
        }
    }
    let s_prime = half_ratio(k, &[b1, b0, b3])? * sum;
    let two_k = qi(2) * k;
    let pre = pochhammer(&two_k, 2 * b1) * pochhammer(&two_k, 2 * b0)
        / nonzero(
            pochhammer(&(qi(4) * k), 2 * b1 + 2 * b0),
            "(4kappa)_{2b1+2b0}",
        )?;
    Ok((&pre * &s_prime, s_prime))
}

/// The balanced 4F3 single sum for `s′`.
pub fn kdf_single(p: &KdfPoint) -> Result<Q> {
    let [b0, b1, b2, b3] = p.b();
    let k = &p.kappa;
    let a4 = p.alphas[3] as i64;
    let up = [
        q_frac(-a4, 2),
        q_frac(1 - a4, 2),
        k.clone(),
        -k - qi(b1) - qi(b0),
    ];
    let lo = [half() - qi(b1), half() - qi(b2), half() - qi(b3)];
    let mut term = Q::one();
    let mut sum = Q::zero();
    for i in 0..=(a4 as usize) / 2 {
        if i > 0 {
            let iq = qi(i - 1);
            let mut num = Q::one();
            for u in &up {
                num *= u + &iq;
            }
            let mut den = qi(i);
            for l in &lo {
                den *= l + &iq;
            }
            term = term * num / nonzero(den, "4F3 denominator")?;
        }
        sum += &term;
    }
    Ok(half_ratio(k, &[b1, b2, b3])? * sum)
}

/// `s′` agrees across all 24 orderings of the four arguments.
pub fn kdf_symmetry_check(p: &KdfPoint) -> Result<bool> {
    let base = kdf_single(p)?;
    for perm in permutations4() {
        let q = p.with(perm.map(|i| p.alphas[i]));
        if kdf_single(&q)? != base {
            return Ok(false);
        }
    }
    Ok(true)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Residual of the printed contiguous relation in `(α₁−1, α₂+1, α₃+1, α₄−1)`
/// and `(α₁+1, α₂−1, α₃−1, α₄+1)`. A shifted value whose coefficient vanishes
/// is not evaluated, so boundary points never leave the index domain.
pub fn kdf_recurrence_residual(p: &KdfPoint) -> Result<Q> {
    let [a1, a2, a3, a4] = p.alphas;
    let k = &p.kappa;
    let [q1, q2, q3, q4] = p.alphas.map(|a| q_int(a as i64));
    let c_down = &q1 * &q4 * (k + (&q2 + &q3 + qi(1)) / qi(2));
    let c_mid = (&q2 * &q3 * (&q1 + &q4 + qi(1)) - &q1 * &q4 * (&q2 + &q3 + qi(1))) / qi(2);
    let c_up = &q2 * &q3 * (k + (&q1 + &q4 + qi(1)) / qi(2));
    let mut lhs = c_mid * kdf_single(p)?;
    if !c_down.is_zero() {
        lhs += c_down * kdf_single(&p.with([a1 - 1, a2 + 1, a3 + 1, a4 - 1]))?;
    }
    let rhs = if c_up.is_zero() {
        Q::zero()
    } else {
        c_up * kdf_single(&p.with([a1 + 1, a2 - 1, a3 - 1, a4 + 1]))?
    };
    Ok(lhs - rhs)
}

pub fn kdf_recurrence_check(p: &KdfPoint) -> Result<bool> {
    Ok(kdf_recurrence_residual(p)?.is_zero())
}

/// Parity-valid `α` with `Σα ≤ max_total`, ordered by total then
/// lexicographically.
pub fn parity_valid_alphas(max_total: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        for a1 in 0..=total {
            for a2 in 0..=total - a1 {
                for a3 in 0..=total - a1 - a2 {
                    let a4 = total - a1 - a2 - a3;
                    let al = [a1, a2, a3, a4];
                    if al.iter().all(|a| a % 2 == a1 % 2) {
                        out.push(al);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexWitness {
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormSweep {
    pub max: usize,
    pub checked: usize,
    pub failures: Vec<IndexWitness>,
}

/// `S(m, n) == s_closed(m, n)` for `0 ≤ m, n ≤ max`.
pub fn closed_form_sweep(max: usize) -> ClosedFormSweep {
    let grid: Vec<(usize, usize)> = (0..=max)
        .flat_map(|m| (0..=max).map(move |n| (m, n)))
        .collect();
    let failures = grid
        .par_iter()
        .filter(|&&(m, n)| s_terminating(m, n) != s_closed(m, n))
        .map(|&(first, second)| IndexWitness { first, second })
        .collect();
    ClosedFormSweep {
        max,
        checked: grid.len(),
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceSweep {
    pub max: usize,
    pub checked: usize,
    /// `(i, n)` with a nonzero `T` residual.
    pub t_failures: Vec<IndexWitness>,
    /// `(m, n)` with a nonzero residual in the `n`-shift relation.
    pub s_n_failures: Vec<IndexWitness>,
    /// `(m, n)` with a nonzero residual in the `m`-shift relation.
    pub s_m_failures: Vec<IndexWitness>,
    pub rewrite_ok: bool,
}

/// All three printed recurrences for indices `0..=max`.
pub fn recurrence_sweep(max: usize) -> RecurrenceSweep {
    let grid: Vec<(usize, usize)> = (0..=max)
        .flat_map(|m| (0..=max).map(move |n| (m, n)))
        .collect();
    let results: Vec<(bool, bool, bool)> = grid
        .par_iter()
        .map(|&(a, b)| {
            let (sn, sm) = check_s_recurrences(a, b);
            (check_t_recurrence(a, b), sn, sm)
        })
        .collect();
    let pick = |f: fn(&(bool, bool, bool)) -> bool| -> Vec<IndexWitness> {
        grid.iter()
            .zip(&results)
            .filter(|(_, r)| !f(r))
            .map(|(&(first, second), _)| IndexWitness { first, second })
            .collect()
    };
    RecurrenceSweep {
        max,
        checked: grid.len(),
        t_failures: pick(|r| r.0),
        s_n_failures: pick(|r| r.1),
        s_m_failures: pick(|r| r.2),
        rewrite_ok: (0..=2 * max + 2).all(half_shift_rewrite_holds),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KdfWitness {
    pub alphas: [u32; 4],
    #[serde(with = "crate::exact::serde_q")]
    pub kappa: Q,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KdfSweep {
    pub max_total: u32,
    #[serde(with = "crate::exact::serde_q::vec")]
    pub kappas: Vec<Q>,
    pub points: usize,
    /// Failures in sweep order; the first is a minimal witness.
    pub failures: Vec<KdfWitness>,
}

/// Double vs single, permutation symmetry and the contiguous relation at
/// every parity-valid point with `Σα ≤ max_total`, for each `κ`.
pub fn kdf_sweep(max_total: u32, kappas: &[Q]) -> KdfSweep {
    let alphas = parity_valid_alphas(max_total);
    let points: Vec<(usize, [u32; 4])> = alphas
        .iter()
        .flat_map(|a| (0..kappas.len()).map(move |k| (k, *a)))
        .collect();
    let failures: Vec<Vec<KdfWitness>> = points
        .par_iter()
        .map(|&(ki, alphas)| {
            let kappa = &kappas[ki];
            let mut out = Vec::new();
            let mut fail = |check: &str, detail: String| {
                out.push(KdfWitness {
                    alphas,
                    kappa: kappa.clone(),
                    check: check.into(),
                    detail,
                })
            };
            let p = match KdfPoint::new(alphas, kappa.clone()) {
                Ok(p) => p,
                Err(e) => {
                    fail("parity", e.to_string());
                    return out;
                }
            };
            match (kdf_double(&p), kdf_single(&p)) {
                (Ok((_, d)), Ok(s)) if d == s => {}
                (Ok((_, d)), Ok(s)) => fail(
                    "double-vs-single",
                    format!("double {} single {}", format_q(&d), format_q(&s)),
                ),
                (Err(e), _) | (_, Err(e)) => fail("double-vs-single", e.to_string()),
            }
            match kdf_symmetry_check(&p) {
                Ok(true) => {}
                Ok(false) => fail("symmetry", "s' differs under a permutation".into()),
                Err(e) => fail("symmetry", e.to_string()),
            }
            match kdf_recurrence_residual(&p) {
                Ok(r) if r.is_zero() => {}
                Ok(r) => fail("recurrence", format!("residual {}", format_q(&r))),
                Err(e) => fail("recurrence", e.to_string()),
            }
            out
        })
        .collect();
    KdfSweep {
        max_total,
        kappas: kappas.to_vec(),
        points: points.len(),
        failures: failures.into_iter().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn t_values() {
        assert_eq!(t_inner(0, 0), q("2"));
        assert_eq!(t_inner(1, 0), q("2/3"));
        assert_eq!(t_inner(0, 1), q("8/3"));
    }

    #[test]
    fn s_values() {
        assert_eq!(s_terminating(0, 0), q("2"));
        assert_eq!(s_closed(0, 0), q("2"));
        assert_eq!(s_terminating(1, 0), q("16/9"));
        assert_eq!(s_closed(1, 0), q("16/9"));
    }

    #[test]
    fn recurrences_at_origin() {
        assert!(check_t_recurrence(0, 0));
        assert_eq!(check_s_recurrences(0, 0), (true, true));
        assert!(half_shift_rewrite_holds(5));
    }

    #[test]
    fn small_sweeps() {
        assert!(closed_form_sweep(6).failures.is_empty());
        let r = recurrence_sweep(6);
        assert!(r.t_failures.is_empty() && r.s_n_failures.is_empty() && r.s_m_failures.is_empty());
        assert!(r.rewrite_ok);
    }

    #[test]
    fn nonterminating_examples() {
        for (b, n) in [("5/2", 0), ("1/3", 2)] {
            let beta = q(b);
            let s = s_nonterminating(&beta, n, 1e-10).unwrap();
            let c = s_nonterm_closed(&beta, n).unwrap();
            assert!((s.value - c).abs() < 1e-8, "{b} {n}: {} vs {c}", s.value);
        }
        assert!(matches!(
            s_nonterminating(&q("-1/2"), 0, 1e-10),
            Err(Error::ConvergenceDomain(_))
        ));
    }

    #[test]
    fn nonterminating_at_natural_beta_matches_terminating_sum() {
        for (m, n) in [(0usize, 0usize), (2, 1), (3, 3)] {
            let s = s_nonterminating(&qi(m), n, 1e-12).unwrap();
            assert_eq!(s.err_bound, 0.0);
            // the j-sum at natural β is S(m, n) with the inner sum rewritten
            let exact = q_to_f64(&s_closed(m, n));
            let closed = s_nonterm_closed(&qi(m), n).unwrap();
            assert!((closed - exact).abs() < 1e-9 * exact, "{closed} vs {exact}");
            assert!(
                (s.value - exact).abs() < 1e-9 * exact,
                "{} vs {exact}",
                s.value
            );
        }
    }

    #[test]
    fn kdf_examples() {
        let p = KdfPoint::new([0, 0, 0, 0], q("3/2")).unwrap();
        assert_eq!(kdf_double(&p).unwrap().1, q("1"));
        assert_eq!(kdf_single(&p).unwrap(), q("1"));
        let p = KdfPoint::new([1, 1, 1, 1], q("1")).unwrap();
        assert_eq!(kdf_double(&p).unwrap().1, q("1/27"));
        assert_eq!(kdf_single(&p).unwrap(), q("1/27"));
        let p = KdfPoint::new([2, 0, 0, 2], q("1")).unwrap();
        assert_eq!(kdf_double(&p).unwrap().1, kdf_single(&p).unwrap());
        assert!(kdf_symmetry_check(&KdfPoint::new([3, 1, 1, 1], q("2")).unwrap()).unwrap());
        assert!(kdf_recurrence_check(&KdfPoint::new([2, 2, 2, 2], q("1")).unwrap()).unwrap());
        assert!(matches!(
            KdfPoint::new([1, 0, 0, 0], q("1")),
            Err(Error::ParityViolation(_))
        ));
    }

    #[test]
    fn permutation_count() {
        let p = permutations4();
        assert_eq!(p.len(), 24);
    }
}
