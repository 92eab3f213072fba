use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_q, q_to_f64, Eisenstein, Q};
use crate::poly::Poly;

/// A polynomial in `t` known to lie in `ℚ[t³]`, stored in `x = t³`.
#[derive(Debug, Clone, PartialEq)]
pub struct XPoly(Poly<Q>);

impl XPoly {
    pub fn new(p: Poly<Q>) -> Self {
        Self(p)
    }

    pub fn poly(&self) -> &Poly<Q> {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    /// Converts a polynomial in `t`; every power not divisible by 3 must have
    /// an exactly zero coefficient.
    pub fn from_t_poly(p: &Poly<Q>) -> Result<Self> {
        let mut out = Vec::new();
        for (j, c) in p.coeffs().iter().enumerate() {
            if j % 3 == 0 {
                out.push(c.clone());
            } else if !c.is_zero() {
                return Err(Error::StructureViolation(format!(
                    "t^{j} has coefficient {}",
                    format_q(c)
                )));
            }
        }
        Ok(Self(Poly::new(out)))
    }

    /// As [`XPoly::from_t_poly`], also requiring every ω-part to vanish.
    pub fn from_eisenstein_t_poly(p: &Poly<Eisenstein>) -> Result<Self> {
        let mut rational = Vec::with_capacity(p.coeffs().len());
        for (j, c) in p.coeffs().iter().enumerate() {
            if !c.is_rational() {
                return Err(Error::StructureViolation(format!(
                    "t^{j} has a nonzero omega part"
                )));
            }
            rational.push(c.re.clone());
        }
        Self::from_t_poly(&Poly::new(rational))
    }

    /// Value at `t` (so at `x = t³`).
    pub fn eval_t(&self, t: f64) -> f64 {
        self.eval_x(t * t * t)
    }

    pub fn eval_x(&self, x: f64) -> f64 {
        self.0
            .coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + q_to_f64(c))
    }
}

impl Serialize for XPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.0.coeffs().iter().map(format_q).collect();
        let mut st = s.serialize_struct("XPoly", 2)?;
        st.serialize_field("variable", "x=t^3")?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Positive multiple with coprime integer coefficients.
fn primitive(p: &Poly<Q>) -> Poly<Q> {
    if p.is_zero() {
        return p.clone();
    }
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    Poly::new(ints.into_iter().map(|c| Q::from_integer(c / &g)).collect())
}

/// `num / 2^exp`
#[derive(Debug, Clone)]
struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    fn zero() -> Self {
        Self {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    fn mid(a: &Self, b: &Self) -> Self {
        let e = a.exp.max(b.exp);
        let num = (&a.num << (e - a.exp)) + (&b.num << (e - b.exp));
        Self { num, exp: e + 1 }
    }

    fn to_f64(&self) -> f64 {
        q_to_f64(&Q::new(self.num.clone(), BigInt::one() << self.exp))
    }
}

/// Sturm chain with integer coefficients, lowest degree first per entry.
struct IntChain(Vec<Vec<BigInt>>);

fn integer_coeffs(p: &Poly<Q>) -> Vec<BigInt> {
    primitive(p)
        .coeffs()
        .iter()
        .map(|c| c.numer().clone())
        .collect()
}

/// Sign of `p(num / 2^exp)` via `Σ c_i num^i 2^{exp(d−i)}`.
fn sign_at(coeffs: &[BigInt], x: &Dyadic) -> i8 {
    let Some((lead, rest)) = coeffs.split_last() else {
        return 0;
    };
    let mut h = lead.clone();
    let mut scale = BigInt::one();
    for c in rest.iter().rev() {
        scale <<= x.exp;
        h = h * &x.num + c * &scale;
    }
    int_sign(&h)
}

fn int_sign(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

impl IntChain {
    fn new(p: &Poly<Q>) -> Result<Self> {
        let mut chain = vec![primitive(p), primitive(&p.derivative())];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
            if r.is_zero() {
                break;
            }
            chain.push(primitive(&(-&r)));
        }
        Ok(Self(chain.iter().map(integer_coeffs).collect()))
    }

    fn gcd_part(&self) -> &[BigInt] {
        self.0.last().expect("nonempty chain")
    }

    fn changes_at(&self, x: &Dyadic) -> usize {
        changes(self.0.iter().map(|c| sign_at(c, x)))
    }

    fn changes_at_minus_infinity(&self) -> usize {
        changes(self.0.iter().map(|c| {
            let s = c.last().map(int_sign).unwrap_or(0);
            if c.len() % 2 == 0 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]` (`lo = None` for −∞).
    fn count_in(&self, lo: Option<&Dyadic>, hi: &Dyadic) -> usize {
        let left = match lo {
            Some(l) => self.changes_at(l),
            None => self.changes_at_minus_infinity(),
        };
        left.saturating_sub(self.changes_at(hi))
    }
}

fn changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Splits off the factor `x^m`; returns `(m, p / x^m)`.
fn deflate_zero(p: &Poly<Q>) -> (usize, Poly<Q>) {
    let m = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    (m, Poly::new(p.coeffs()[m..].to_vec()))
}

/// Exact count of distinct roots in `(−∞, 0)`.
pub fn sturm_count_negative(p: &XPoly) -> Result<usize> {
    let (_, q) = deflate_zero(p.poly());
    if q.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    Ok(IntChain::new(&q)?.count_in(None, &Dyadic::zero()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroReport {
    pub degree: usize,
    /// Distinct real roots, ascending, refined to 1e−12 relative width.
    pub roots: Vec<f64>,
    /// Exact Sturm count of distinct roots in `(−∞, 0)`.
    pub negative_count: usize,
    /// Multiplicity of the root at `x = 0` (a boundary case, not a violation).
    pub zero_multiplicity: usize,
    pub all_negative: bool,
}

/// Power of two exceeding the Cauchy bound `1 + max |c_i / c_n|`.
fn root_bound_exp(p: &Poly<Q>) -> u64 {
    let lead = p.leading().expect("nonzero").abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Q::zero(), |a, b| if b > a { b } else { a });
    let bound = m + Q::one();
    let mut e = 0u64;
    let mut r = Q::one();
    while r < bound {
        r *= Q::from_integer(2.into());
        e += 1;
    }
    e
}

fn isolate(chain: &IntChain, lo: Dyadic, hi: Dyadic, out: &mut Vec<(Dyadic, Dyadic)>) {
    match chain.count_in(Some(&lo), &hi) {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = Dyadic::mid(&lo, &hi);
            isolate(chain, lo, mid.clone(), out);
            isolate(chain, mid, hi, out);
        }
    }
}

/// Bisection of the unique root of squarefree `p` in `(lo, hi]`.
fn refine(p: &[BigInt], mut lo: Dyadic, mut hi: Dyadic) -> f64 {
    let s_hi = sign_at(p, &hi);
    if s_hi == 0 {
        return hi.to_f64();
    }
    loop {
        let (l, h) = (lo.to_f64(), hi.to_f64());
        if h - l <= 1e-13 * h.abs().max(1.0) {
            return 0.5 * (l + h);
        }
        let mid = Dyadic::mid(&lo, &hi);
        match sign_at(p, &mid) {
            0 => return mid.to_f64(),
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
}

/// Real roots by exact Sturm isolation and exact bisection.
pub fn xpoly_real_zeros(p: &XPoly) -> Result<ZeroReport> {
    let degree = p
        .degree()
        .ok_or_else(|| Error::DomainError("zero polynomial has no finite root set".into()))?;
    let (zero_multiplicity, q) = deflate_zero(p.poly());
    let mut roots = Vec::new();
    let mut negative_count = 0;
    if q.degree().unwrap_or(0) > 0 {
        let chain = IntChain::new(&q)?;
        negative_count = chain.count_in(None, &Dyadic::zero());
        // squarefree part keeps every isolated root a sign change
        let g: Poly<Q> = Poly::new(
            chain
                .gcd_part()
                .iter()
                .cloned()
                .map(Q::from_integer)
                .collect(),
        );
        let sqfree = if g.degree().unwrap_or(0) > 0 {
            q.div_rem(&g)?.0
        } else {
            q.clone()
        };
        let sqfree = integer_coeffs(&sqfree);
        let e = root_bound_exp(&q);
        let r = BigInt::one() << e;
        let mut boxes = Vec::new();
        isolate(
            &chain,
            Dyadic {
                num: -r.clone(),
                exp: 0,
            },
            Dyadic { num: r, exp: 0 },
            &mut boxes,
        );
        roots = boxes
            .into_iter()
            .map(|(lo, hi)| refine(&sqfree, lo, hi))
            .collect();
    }
    if zero_multiplicity > 0 {
        roots.push(0.0);
        roots.sort_by(f64::total_cmp);
    }
    Ok(ZeroReport {
        degree,
        roots,
        negative_count,
        zero_multiplicity,
        all_negative: zero_multiplicity == 0 && negative_count == degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn structure_check() {
        let ok = Poly::new(vec![q("1"), q("0"), q("0"), q("2")]);
        assert_eq!(
            XPoly::from_t_poly(&ok).unwrap().poly().coeffs(),
            &[q("1"), q("2")]
        );
        let bad = Poly::new(vec![q("1"), q("1")]);
        assert!(matches!(
            XPoly::from_t_poly(&bad),
            Err(Error::StructureViolation(_))
        ));
        let w = Poly::new(vec![Eisenstein::omega()]);
        assert!(XPoly::from_eisenstein_t_poly(&w).is_err());
    }

    #[test]
    fn zero_examples() {
        let a2 = XPoly::new(Poly::new(vec![q("0"), q("1/4")]));
        let r = xpoly_real_zeros(&a2).unwrap();
        assert_eq!(r.roots, vec![0.0]);
        assert!(!r.all_negative);
        assert_eq!(r.zero_multiplicity, 1);

        let b2 = XPoly::new(Poly::new(vec![q("1"), q("1/4")]));
        let r = xpoly_real_zeros(&b2).unwrap();
        assert_eq!(r.roots, vec![-4.0]);
        assert!(r.all_negative);
    }

    #[test]
    fn sturm_on_known_roots() {
        // (x+1)(x+3)(x−2)(x+1/2)
        let p = [q("1"), q("3"), q("-2"), q("1/2")]
            .iter()
            .fold(Poly::one(), |acc, r| {
                &acc * &Poly::new(vec![r.clone(), q("1")])
            });
        let r = xpoly_real_zeros(&XPoly::new(p)).unwrap();
        assert_eq!(r.negative_count, 3);
        assert!(!r.all_negative);
        for (x, y) in r.roots.iter().zip([-3.0, -1.0, -0.5, 2.0]) {
            assert!((x - y).abs() < 1e-12);
        }
        // double root counts once
        let d = &Poly::new(vec![q("1"), q("1")]) * &Poly::new(vec![q("1"), q("1")]);
        let r = xpoly_real_zeros(&XPoly::new(d)).unwrap();
        assert_eq!((r.negative_count, r.all_negative), (1, false));
        assert!((r.roots[0] + 1.0).abs() < 1e-12);
    }
}
