use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_q, Q};
use crate::error::{Error, Result};

/// `re + om·ω` with rational coefficients, where `ω² = −1 − ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub re: Q,
    pub om: Q,
}

impl Eisenstein {
    pub fn new(re: Q, om: Q) -> Self {
        Self { re, om }
    }

    pub fn from_q(re: Q) -> Self {
        Self { re, om: Q::zero() }
    }

    pub fn omega() -> Self {
        Self::new(Q::zero(), Q::one())
    }

    pub fn omega_sq() -> Self {
        Self::new(-Q::one(), -Q::one())
    }

    /// Field norm `re² − re·om + om²`, zero only at zero.
    pub fn norm(&self) -> Q {
        &self.re * &self.re - &self.re * &self.om + &self.om * &self.om
    }

    /// Complex conjugate: ω ↦ ω².
    pub fn conj(&self) -> Self {
        Self::new(&self.re - &self.om, -self.om.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(Self::new(c.re / &n, c.om / n))
    }

    pub fn is_rational(&self) -> bool {
        self.om.is_zero()
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*w", format_q(&self.re), format_q(&self.om))
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.om + rhs.om)
    }
}

impl Sub for Eisenstein {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.om - rhs.om)
    }
}

impl Neg for Eisenstein {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.om)
    }
}

impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
        let bd = &self.om * &rhs.om;
        let re = &self.re * &rhs.re - &bd;
        let om = &self.re * &rhs.om + &self.om * &rhs.re - bd;
        Self::new(re, om)
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Self::from_q(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Self::from_q(Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, q_frac};
    use proptest::prelude::*;

    #[test]
    fn omega_identities() {
        let w = Eisenstein::omega();
        let w2 = Eisenstein::omega_sq();
        assert_eq!(w.clone() * w.clone(), w2);
        assert_eq!(w.clone() * w2.clone(), Eisenstein::one());
        assert_eq!(
            Eisenstein::one() + w.clone() + w2.clone(),
            Eisenstein::zero()
        );
        assert_eq!(w.inv().unwrap(), w2);
        assert_eq!(Eisenstein::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display() {
        let x = Eisenstein::new(q("1/2"), q("-3"));
        assert_eq!(x.to_string(), "1/2+-3*w");
    }

    fn eis() -> impl Strategy<Value = Eisenstein> {
        (-30i64..30, 1i64..9, -30i64..30, 1i64..9)
            .prop_map(|(a, b, c, d)| Eisenstein::new(q_frac(a, b), q_frac(c, d)))
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(x in eis()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(x.clone() * x.inv().unwrap(), Eisenstein::one());
        }

        #[test]
        fn cube_of_rotated_rational(r in (-30i64..30, 1i64..9), k in 0usize..3) {
            let mut x = Eisenstein::from_q(q_frac(r.0, r.1));
            for _ in 0..k {
                x = x * Eisenstein::omega();
            }
            let cube = x.clone() * x.clone() * x;
            prop_assert!(cube.is_rational());
        }

        #[test]
        fn norm_is_multiplicative(x in eis(), y in eis()) {
            prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        }
    }
}
