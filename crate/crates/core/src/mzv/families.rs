use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{factorial, q_int, Eisenstein, Q};
use crate::poly::Poly;

use super::xpoly::XPoly;

fn lin(c: Q, slope: Q) -> Poly<Q> {
    Poly::new(vec![c, slope])
}

/// `((n+α)³ − x)`
fn b_cubic(alpha: &Q, n: usize) -> Poly<Q> {
    let s = alpha + q_int(n as i64);
    lin(&s * &s * &s, q_int(-1))
}

fn b_middle(alpha: &Q, n: usize) -> Q {
    let nq = q_int(n as i64);
    let inner = q_int(2) * &nq * &nq
        + q_int(3) * &nq * (alpha + q_int(1))
        + alpha * alpha
        + q_int(3) * alpha
        + q_int(1);
    (&nq + q_int(1)) * inner
}

/// `B_0, …, B_N` in `x = t³` from the three-term recurrence.
pub fn b_poly_recurrence(alpha: &Q, max_n: usize) -> Vec<XPoly> {
    let mut out: Vec<Poly<Q>> = vec![Poly::one()];
    if max_n >= 1 {
        out.push(Poly::constant(alpha * alpha));
    }
    for n in 0..max_n.saturating_sub(1) {
        let num = out[n + 1].scale(&b_middle(alpha, n)) - &b_cubic(alpha, n) * &out[n];
        let den = q_int(((n + 2) * (n + 2) * (n + 1)) as i64);
        out.push(num.scale(&(q_int(1) / den)));
    }
    out.into_iter().map(XPoly::new).collect()
}

/// Residual of the three-term relation at index `n` (needs `n + 2 < len`).
pub fn b_recurrence_residual(alpha: &Q, b: &[XPoly], n: usize) -> Poly<Q> {
    let last = q_int(((n + 2) * (n + 2) * (n + 1)) as i64);
    &(&b_cubic(alpha, n) * b[n].poly()) - &b[n + 1].poly().scale(&b_middle(alpha, n))
        + b[n + 2].poly().scale(&last)
}

fn eis_lin(c: Eisenstein, slope: Eisenstein) -> Poly<Eisenstein> {
    Poly::new(vec![c, slope])
}

fn eis_int(i: usize) -> Eisenstein {
    Eisenstein::from_q(q_int(i as i64))
}

/// `∏_{i<k} (c + i + slope·t)`
fn rising(c: &Eisenstein, slope: &Eisenstein, k: usize) -> Poly<Eisenstein> {
    (0..k).fold(Poly::one(), |acc, i| {
        &acc * &eis_lin(c.clone() + eis_int(i), slope.clone())
    })
}

/// `B_n` from the explicit sum over Eisenstein-rational coefficients in `t`.
pub fn b_poly_explicit(alpha: &Q, n: usize) -> Result<XPoly> {
    let w = Eisenstein::omega();
    let w2 = Eisenstein::omega_sq();
    let one = Eisenstein::from_q(q_int(1));
    let a = Eisenstein::from_q(alpha.clone());
    let zero = Eisenstein::zero();
    let mut sum: Poly<Eisenstein> = Poly::zero();
    for k in 0..=n {
        let term = &(&rising(&zero, &w, k) * &rising(&zero, &w2, k))
            * &(&rising(&a, &one, n - k)
                * &rising(&(a.clone() + eis_int(k)), &-one.clone(), n - k));
        let den = factorial(n) * factorial(k) * factorial(n - k);
        let scale = Eisenstein::from_q(q_int(1) / den);
        sum = sum + term.scale(&scale);
    }
    XPoly::from_eisenstein_t_poly(&sum)
}

fn sign_x(n: usize) -> Q {
    // coefficient of x in n³ − (−1)^n x
    if n % 2 == 0 {
        q_int(-1)
    } else {
        q_int(1)
    }
}

fn a_cubic(n: usize) -> Poly<Q> {
    lin(q_int((n * n * n) as i64), sign_x(n))
}

/// `(A_0..=A_N, Ã_0..=Ã_N)`; `Ã` is generated by its own recursion, then
/// checked against the partial sums of `A`.
pub fn a_polys(max_n: usize) -> Result<(Vec<XPoly>, Vec<XPoly>)> {
    let mut a: Vec<Poly<Q>> = vec![Poly::one(), Poly::zero()];
    for n in 0..max_n.saturating_sub(1) {
        let num =
            &a_cubic(n) * &a[n] + a[n + 1].scale(&q_int(((n + 1) * (n + 1) * (2 * n + 1)) as i64));
        let den = q_int(-(((n + 2) * (n + 2) * (n + 1)) as i64));
        a.push(num.scale(&(q_int(1) / den)));
    }
    a.truncate(max_n + 1);

    let mut at: Vec<Poly<Q>> = vec![Poly::one(), Poly::one()];
    for n in 1..max_n {
        let num = &a_cubic(n) * &at[n - 1] + at[n].scale(&q_int(((2 * n + 1) * n) as i64));
        let den = q_int(((n + 1) * (n + 1) * n) as i64);
        at.push(num.scale(&(q_int(1) / den)));
    }
    at.truncate(max_n + 1);

    if at[0] != a[0] {
        return Err(Error::StructureViolation(
            "partial sum mismatch at n=0".into(),
        ));
    }
    for n in 1..=max_n {
        if &at[n] - &at[n - 1] != a[n] {
            return Err(Error::StructureViolation(format!(
                "partial sum mismatch at n={n}"
            )));
        }
    }
    Ok((
        a.into_iter().map(XPoly::new).collect(),
        at.into_iter().map(XPoly::new).collect(),
    ))
}

/// Residual of the `A` recursion at index `n` (needs `n + 2 < len`).
pub fn a_recursion_residual(a: &[XPoly], n: usize) -> Poly<Q> {
    &(&a_cubic(n) * a[n].poly())
        + &a[n + 1]
            .poly()
            .scale(&q_int(((n + 1) * (n + 1) * (2 * n + 1)) as i64))
        + a[n + 2]
            .poly()
            .scale(&q_int(((n + 2) * (n + 2) * (n + 1)) as i64))
}

/// Residual of the partial-sum recursion at index `n ≥ 1` (needs `n + 1 < len`).
pub fn endrec_residual(at: &[XPoly], n: usize) -> Poly<Q> {
    &(&a_cubic(n) * at[n - 1].poly()) + &at[n].poly().scale(&q_int(((2 * n + 1) * n) as i64))
        - at[n + 1]
            .poly()
            .scale(&q_int(((n + 1) * (n + 1) * n) as i64))
}
