use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::{q_frac, q_int, Q};

/// Sparse polynomial in `x, y, z` over the rationals, keyed by exponent
/// triples. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly3 {
    terms: BTreeMap<[u32; 3], Q>,
}

impl MultiPoly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: Q, exps: [u32; 3]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// The `i`-th coordinate variable (0 = x, 1 = y, 2 = z).
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(Q::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, e: [u32; 3], c: Q) {
        let entry = self.terms.entry(e).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Q::one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, p: [&Q; 3]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, k) in p.iter().zip(e) {
                    v *= num_traits::pow((*x).clone(), *k as usize);
                }
                v
            })
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn eval_f64(&self, p: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = crate::exact::q_to_f64(c);
                for (x, k) in p.iter().zip(e) {
                    v *= x.powi(*k as i32);
                }
                v
            })
            .sum()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl Add for &MultiPoly3 {
    type Output = MultiPoly3;
    fn add(self, rhs: &MultiPoly3) -> MultiPoly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.accumulate(*e, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly3 {
    type Output = MultiPoly3;
    fn sub(self, rhs: &MultiPoly3) -> MultiPoly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.accumulate(*e, -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly3 {
    type Output = MultiPoly3;
    fn neg(self) -> MultiPoly3 {
        self.scale(&-Q::one())
    }
}

impl Mul for &MultiPoly3 {
    type Output = MultiPoly3;
    fn mul(self, rhs: &MultiPoly3) -> MultiPoly3 {
        let mut out = MultiPoly3::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.accumulate(e, ca * cb);
            }
        }
        out
    }
}

/// `x^n(x−y)(x−z) + y^n(y−x)(y−z) + z^n(z−x)(z−y)`, expanded.
pub fn schur_lhs(n: u32) -> MultiPoly3 {
    let [x, y, z] = [0, 1, 2].map(MultiPoly3::var);
    let term = |a: &MultiPoly3, b: &MultiPoly3, c: &MultiPoly3| &(&a.pow(n) * &(a - b)) * &(a - c);
    &(&term(&x, &y, &z) + &term(&y, &x, &z)) + &term(&z, &x, &y)
}

/// The sum-of-squares form
/// `¼[(2x²−y²−z²+2yz−xz−xy)² + 3(y²−z²+xz−xy)²]`.
pub fn sos_rhs() -> MultiPoly3 {
    let [x, y, z] = [0, 1, 2].map(MultiPoly3::var);
    let c = |k: i64| MultiPoly3::constant(q_int(k));
    let sq = |p: &MultiPoly3| p * p;
    let x2 = sq(&x);
    let y2 = sq(&y);
    let z2 = sq(&z);
    let yz = &y * &z;
    let xz = &x * &z;
    let xy = &x * &y;
    let first = &(&(&(&(&(&c(2) * &x2) - &y2) - &z2) + &(&c(2) * &yz)) - &xz) - &xy;
    let second = &(&(&y2 - &z2) + &xz) - &xy;
    (&sq(&first) + &(&c(3) * &sq(&second))).scale(&q_frac(1, 4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn schur_examples() {
        let lhs = schur_lhs(2);
        let one = q("1");
        assert_eq!(lhs.eval([&one, &one, &one]), q("0"));
        assert_eq!(lhs.eval([&q("2"), &q("1"), &q("0")]), q("7"));
        assert_eq!(sos_rhs().eval([&q("2"), &q("1"), &q("0")]), q("7"));
        assert_eq!(schur_lhs(3).eval([&q("2"), &q("1"), &q("0")]), q("15"));
    }

    #[test]
    fn sos_identity_exact() {
        assert!((&schur_lhs(2) - &sos_rhs()).is_zero());
        assert_eq!(sos_rhs().total_degree(), Some(4));
    }

    #[test]
    fn schur_lhs_is_symmetric() {
        let p = schur_lhs(3);
        let swapped: MultiPoly3 = p
            .terms()
            .map(|(e, c)| MultiPoly3::monomial(c.clone(), [e[1], e[0], e[2]]))
            .fold(MultiPoly3::zero(), |a, b| &a + &b);
        assert_eq!(p, swapped);
    }

    #[test]
    fn ring_laws() {
        let [x, y, _] = [0, 1, 2].map(MultiPoly3::var);
        let a = &x + &y;
        let b = &x - &y;
        assert_eq!(&a * &b, &(&x * &x) - &(&y * &y));
        assert!((&a - &a).is_zero());
    }
}
