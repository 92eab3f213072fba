use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{q_int, q_is_integer, q_pow, Q};
use crate::error::{Error, Result};

/// Rising factorial `(a)_n = a(a+1)…(a+n−1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Q, n: usize) -> Q {
    let mut acc = Q::one();
    let mut f = a.clone();
    for _ in 0..n {
        if f.is_zero() {
            return Q::zero();
        }
        acc *= &f;
        f += Q::one();
    }
    acc
}

/// `(a;q)_n = ∏_{i<n} (1 − a·q^i)`.
pub fn q_pochhammer(a: &Q, q: &Q, n: usize) -> Q {
    let mut acc = Q::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc *= Q::one() - &aq;
        if acc.is_zero() {
            return acc;
        }
        aq *= q;
    }
    acc
}

pub fn factorial(n: usize) -> Q {
    Q::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// `1/n!`, extended by `1/n! = 0` for negative `n`.
pub fn recip_factorial(n: i64) -> Q {
    if n < 0 {
        Q::zero()
    } else {
        factorial(n as usize).recip()
    }
}

/// Parameter lists and argument of a `pFq` series.
#[derive(Debug, Clone, PartialEq)]
pub struct HypSeriesSpec {
    pub numerator: Vec<Q>,
    pub denominator: Vec<Q>,
    pub argument: Q,
}

impl HypSeriesSpec {
    pub fn new(numerator: Vec<Q>, denominator: Vec<Q>, argument: Q) -> Self {
        Self {
            numerator,
            denominator,
            argument,
        }
    }

    /// Smallest `N` such that some numerator parameter equals `−N`.
    pub fn termination_index(&self) -> Option<usize> {
        self.numerator
            .iter()
            .filter(|a| q_is_integer(a) && !a.is_positive())
            .map(|a| nonneg_usize(&-a.clone()))
            .min()
    }

    pub fn evaluate(&self) -> Result<Q> {
        hyp_pfq_terminating(self)
    }
}

fn nonneg_usize(x: &Q) -> usize {
    x.to_integer()
        .try_into()
        .expect("termination index does not fit in usize")
}

/// Exact value of a terminating `pFq`.
///
/// Sums `Σ_{k≤N} ∏(a)_k / (∏(b)_k k!) z^k` where `N` is the termination index.
pub fn hyp_pfq_terminating(spec: &HypSeriesSpec) -> Result<Q> {
    let n_max = spec.termination_index().ok_or(Error::NonTerminating)?;
    let mut term = Q::one();
    let mut sum = Q::one();
    for k in 0..n_max {
        let kq = q_int(k as i64);
        let mut den = q_int(k as i64 + 1);
        for b in &spec.denominator {
            let f = b + &kq;
            if f.is_zero() {
                return Err(Error::DenominatorPole { index: k + 1 });
            }
            den *= f;
        }
        for a in &spec.numerator {
            term *= a + &kq;
        }
        term = term * &spec.argument / den;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(sum)
}

/// Smallest `N ≥ 0` with `a·q^N = 1`, if any.
fn q_termination(a: &Q, q: &Q) -> Option<usize> {
    const CAP: usize = 10_000;
    let one = Q::one();
    let q_small = q.abs() < one;
    let mut p = a.clone();
    for n in 0..=CAP {
        if p == one {
            return Some(n);
        }
        if p.is_zero() {
            return None;
        }
        // |a q^n| moves monotonically away from 1 once past it.
        let pa = p.abs();
        if (q_small && pa < one) || (!q_small && pa > one) {
            return None;
        }
        p *= q;
    }
    None
}

/// Exact value of a terminating basic hypergeometric series `rφs(a; b; q, z)`.
///
/// Uses the standard term
/// `∏(a;q)_k / (∏(b;q)_k (q;q)_k) · [(−1)^k q^{k(k−1)/2}]^{1+s−r} z^k`,
/// and terminates at the first `N` where some `a = q^{−N}`.
pub fn hyp_qphiq_terminating(num: &[Q], den: &[Q], q: &Q, z: &Q) -> Result<Q> {
    if q.is_zero() {
        return Err(Error::DomainError("base q must be nonzero".into()));
    }
    if q.abs().is_one() {
        return Err(Error::DomainError("base q must satisfy |q| != 1".into()));
    }
    let n_max = num
        .iter()
        .filter_map(|a| q_termination(a, q))
        .min()
        .ok_or(Error::NonTerminating)?;
    let balance = 1 + den.len() as i64 - num.len() as i64;
    let one = Q::one();
    let mut qk = one.clone();
    let mut term = one.clone();
    let mut sum = one.clone();
    for k in 0..n_max {
        let mut ratio = z.clone();
        for a in num {
            ratio *= &one - a * &qk;
        }
        let mut d = &one - &qk * q;
        for b in den {
            d *= &one - b * &qk;
        }
        if d.is_zero() {
            return Err(Error::DenominatorPole { index: k + 1 });
        }
        let twist = q_pow(&(-qk.clone()), balance)?;
        term = term * ratio * twist / d;
        sum += &term;
        qk *= q;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, q_frac};
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&q("7/3"), 0), q_int(1));
        assert_eq!(pochhammer(&q("1/2"), 3), q("15/8"));
        assert_eq!(pochhammer(&q("-3"), 5), q_int(0));
    }

    #[test]
    fn q_pochhammer_examples() {
        assert_eq!(q_pochhammer(&q("5/7"), &q("1/3"), 0), q_int(1));
        assert_eq!(q_pochhammer(&q("2"), &q("1/2"), 2), q_int(0));
        assert_eq!(q_pochhammer(&q("1/2"), &q("1/2"), 2), q("3/8"));
    }

    #[test]
    fn reciprocal_factorials() {
        assert_eq!(recip_factorial(-1), q_int(0));
        assert_eq!(recip_factorial(0), q_int(1));
        assert_eq!(recip_factorial(4), q("1/24"));
    }

    fn spec(num: &[&str], den: &[&str], z: &str) -> HypSeriesSpec {
        HypSeriesSpec::new(
            num.iter().map(|s| q(s)).collect(),
            den.iter().map(|s| q(s)).collect(),
            q(z),
        )
    }

    #[test]
    fn pfq_examples() {
        assert_eq!(
            spec(&["0", "1/2", "5"], &["2", "2"], "1").evaluate(),
            Ok(q_int(1))
        );
        assert_eq!(spec(&["-1", "1"], &["2"], "1").evaluate(), Ok(q("1/2")));
        // three terms: 1 - 2/3 + 1/6
        assert_eq!(spec(&["-2", "1"], &["3"], "1").evaluate(), Ok(q("1/2")));
    }

    #[test]
    fn pfq_picks_smallest_termination() {
        let s = spec(&["-5", "-2", "1"], &["3", "4"], "1");
        assert_eq!(s.termination_index(), Some(2));
    }

    #[test]
    fn pfq_errors() {
        assert_eq!(
            spec(&["1/2", "1"], &["3"], "1").evaluate(),
            Err(Error::NonTerminating)
        );
        // (-1)_k vanishes at k = 2 while the series runs to k = 3
        assert_eq!(
            spec(&["-3", "1"], &["-1"], "1").evaluate(),
            Err(Error::DenominatorPole { index: 2 })
        );
        // a pole past the termination index is harmless
        assert!(spec(&["-1", "1"], &["-1"], "1").evaluate().is_ok());
    }

    #[test]
    fn qphiq_examples() {
        let qq = q("1/2");
        // numerator parameter 1 = q^0 terminates immediately
        assert_eq!(
            hyp_qphiq_terminating(&[q_int(1), q("3")], &[q("1/5")], &qq, &q("7")),
            Ok(q_int(1))
        );
        // 1φ0(q^{-1}; -; q, z) at q = 1/2, z = 1: 1 + (1 - 2)/(1 - 1/2) = -1
        assert_eq!(
            hyp_qphiq_terminating(&[q_int(2)], &[], &qq, &q_int(1)),
            Ok(q_int(-1))
        );
        // denominator (q^{-1}; q)_k vanishes at k = 2 before termination at N = 3
        assert_eq!(
            hyp_qphiq_terminating(&[q_int(8)], &[q_int(2)], &qq, &q_int(1)),
            Err(Error::DenominatorPole { index: 2 })
        );
        assert_eq!(
            hyp_qphiq_terminating(&[q("3/5")], &[], &qq, &q_int(1)),
            Err(Error::NonTerminating)
        );
    }

    #[test]
    fn q_chu_vandermonde() {
        // 2φ1(q^{-n}, b; c; q, c q^n / b) = (c/b; q)_n / (c; q)_n
        let qq = q("1/3");
        let (b, c) = (q("2/5"), q("3/7"));
        for n in 0..8usize {
            let qn = q_pow(&qq, -(n as i64)).unwrap();
            let z = &c * q_pow(&qq, n as i64).unwrap() / &b;
            let lhs = hyp_qphiq_terminating(&[qn, b.clone()], &[c.clone()], &qq, &z).unwrap();
            let rhs = q_pochhammer(&(&c / &b), &qq, n) / q_pochhammer(&c, &qq, n);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| q_frac(n, d))
    }

    proptest! {
        #[test]
        fn pochhammer_splits(a in small_q(), m in 0usize..30, n in 0usize..30) {
            let lhs = pochhammer(&a, m + n);
            let rhs = pochhammer(&a, m) * pochhammer(&(&a + q_int(m as i64)), n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn q_pochhammer_splits(a in small_q(), qq in small_q(), m in 0usize..12, n in 0usize..12) {
            let lhs = q_pochhammer(&a, &qq, m + n);
            let shifted = &a * num_traits::pow(qq.clone(), m);
            let rhs = q_pochhammer(&a, &qq, m) * q_pochhammer(&shifted, &qq, n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn zero_numerator_gives_one(b in small_q(), c in (1i64..40, 1i64..9), z in small_q()) {
            let s = HypSeriesSpec::new(vec![q_int(0), b], vec![q_frac(c.0, c.1)], z);
            prop_assert_eq!(s.evaluate(), Ok(q_int(1)));
        }

        #[test]
        fn chu_vandermonde(n in 0usize..=20, b in small_q(), c in (1i64..60, 1i64..7)) {
            let c = q_frac(c.0, c.1);
            let s = HypSeriesSpec::new(vec![q_int(-(n as i64)), b.clone()], vec![c.clone()], q_int(1));
            let rhs = pochhammer(&(&c - &b), n) / pochhammer(&c, n);
            prop_assert_eq!(s.evaluate(), Ok(rhs));
        }
    }
}
