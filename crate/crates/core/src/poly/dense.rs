use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{format_q, q_int, Eisenstein, Q};

/// Coefficient field of a [`Poly`].
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    /// `self / rhs`, `None` when `rhs` is zero.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
    fn render(&self) -> String;
}

impl Scalar for Q {
    fn from_i64(n: i64) -> Self {
        q_int(n)
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
    fn render(&self) -> String {
        format_q(self)
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0.0).then(|| self / rhs)
    }
    fn render(&self) -> String {
        format!("{self}")
    }
}

impl Scalar for Eisenstein {
    fn from_i64(n: i64) -> Self {
        Eisenstein::from_q(q_int(n))
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().ok().map(|r| self.clone() * r)
    }
    fn render(&self) -> String {
        format!("({self})")
    }
}

/// Dense polynomial `Σ coeffs[i] x^i`.
///
/// The zero polynomial is the empty coefficient list; every other value has a
/// nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x − a`.
    pub fn linear_root(a: T) -> Self {
        Self::new(vec![-a, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    /// Substitutes `x ↦ c·x`.
    pub fn dilate(&self, c: &T) -> Self {
        let mut p = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * p.clone());
            p = p * c.clone();
        }
        Self::new(out)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Rescales to leading coefficient one.
    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(l) => {
                let inv = T::one().checked_div(l).ok_or(Error::DivisionByZero)?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.leading().expect("nonzero divisor");
        let mut r = self.coeffs.clone();
        let mut quot = vec![T::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].checked_div(lead).ok_or(Error::DivisionByZero)?;
            let shift = top - dd;
            for (i, b) in d.coeffs.iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - c.clone() * b.clone();
            }
            quot[shift] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Ok((Self::new(quot), Self::new(r)))
    }

    /// Linear combination `Σ c_k · polys[k]`.
    pub fn combine(coeffs: &[T], polys: &[Self]) -> Self {
        coeffs
            .iter()
            .zip(polys)
            .fold(Self::zero(), |acc, (c, p)| &acc + &p.scale(c))
    }
}

impl<T: Scalar> Default for Poly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.render(),
                1 => format!("{}*x", c.render()),
                _ => format!("{}*x^{i}", c.render()),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Coefficients `γ_k` with `p = Σ γ_k basis[k]`, by back-substitution from the
/// top degree. `basis[k]` must have degree exactly `k` for every `k ≤ deg p`.
pub fn expand_in_basis<T: Scalar>(p: &Poly<T>, basis: &[Poly<T>]) -> Result<Vec<T>> {
    let Some(deg) = p.degree() else {
        return Ok(Vec::new());
    };
    for k in 0..=deg {
        match basis.get(k) {
            Some(b) if b.degree() == Some(k) => {}
            _ => return Err(Error::BasisNotGraded { index: k }),
        }
    }
    let mut rest = p.clone();
    let mut gamma = vec![T::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let top = rest.coeff(k);
        if top.is_zero() {
            continue;
        }
        let lead = basis[k].leading().expect("graded basis element");
        let g = top.checked_div(lead).ok_or(Error::DivisionByZero)?;
        rest = &rest - &basis[k].scale(&g);
        gamma[k] = g;
    }
    debug_assert!(rest.is_zero());
    Ok(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, q_frac};
    use proptest::prelude::*;

    fn qp(cs: &[&str]) -> Poly<Q> {
        Poly::new(cs.iter().map(|s| q(s)).collect())
    }

    #[test]
    fn arithmetic_examples() {
        let a = qp(&["1", "1"]);
        let b = qp(&["-1", "1"]);
        assert_eq!(&a * &b, qp(&["-1", "0", "1"]));
        assert_eq!(qp(&["-1", "0", "1"]).eval(&q("2")), q("3"));
        assert_eq!(qp(&["0", "0", "0", "1"]).derivative(), qp(&["0", "0", "3"]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(Poly::<Q>::zero().degree(), None);
        assert_eq!(qp(&["1", "0", "0"]).degree(), Some(0));
    }

    #[test]
    fn display() {
        assert_eq!(qp(&["1/2", "0", "-3"]).to_string(), "1/2 + -3*x^2");
        assert_eq!(Poly::<Q>::zero().to_string(), "0");
    }

    #[test]
    fn division() {
        let p = qp(&["-1", "0", "0", "1"]);
        let d = qp(&["-1", "1"]);
        let (quot, r) = p.div_rem(&d).unwrap();
        assert_eq!(quot, qp(&["1", "1", "1"]));
        assert!(r.is_zero());
        assert!(p.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn expansion_examples() {
        let basis = vec![qp(&["1"]), qp(&["0", "1"]), qp(&["-1/4", "0", "1"])];
        assert_eq!(
            expand_in_basis(&qp(&["0", "0", "1"]), &basis).unwrap(),
            vec![q("1/4"), q("0"), q("1")]
        );
        assert_eq!(
            expand_in_basis(&basis[2], &basis).unwrap(),
            vec![q("0"), q("0"), q("1")]
        );
        // (1 − x)² in Laguerre α = 0: L0 = 1, L1 = 1 − x, L2 = 1 − 2x + x²/2
        let lag = vec![qp(&["1"]), qp(&["1", "-1"]), qp(&["1", "-2", "1/2"])];
        assert_eq!(
            expand_in_basis(&qp(&["1", "-2", "1"]), &lag).unwrap(),
            vec![q("1"), q("-2"), q("2")]
        );
        let bad = vec![qp(&["1"]), qp(&["0", "0", "1"])];
        assert_eq!(
            expand_in_basis(&qp(&["0", "1"]), &bad),
            Err(Error::BasisNotGraded { index: 1 })
        );
    }

    fn rand_poly(max_deg: usize) -> impl Strategy<Value = Poly<Q>> {
        prop::collection::vec((-50i64..50, 1i64..10), 0..=max_deg + 1)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| q_frac(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn expansion_reconstructs(p in rand_poly(25), shifts in prop::collection::vec((-9i64..9, 1i64..5), 26)) {
            // basis b_k = ∏_{i<k} (x − s_i) scaled by (k+1)
            let mut basis = Vec::new();
            let mut acc = Poly::<Q>::one();
            for (k, (n, d)) in shifts.iter().enumerate() {
                basis.push(acc.scale(&q_int(k as i64 + 1)));
                acc = &acc * &Poly::linear_root(q_frac(*n, *d));
            }
            let gamma = expand_in_basis(&p, &basis).unwrap();
            prop_assert_eq!(Poly::combine(&gamma, &basis), p);
        }

        #[test]
        fn division_identity(p in rand_poly(12), d in rand_poly(5)) {
            prop_assume!(!d.is_zero());
            let (quot, r) = p.div_rem(&d).unwrap();
            prop_assert!(r.degree() < d.degree() || r.is_zero());
            prop_assert_eq!(&(&quot * &d) + &r, p);
        }
    }
}
