use crate::error::Result;
use crate::exact::Q;
use crate::families::RecurrencePair;

use super::Poly;

/// Monic `P_0, …, P_N` from `P_{n+1} = (x − a_n) P_n − b_n P_{n−1}`.
pub fn generate_from_ttr(rec: &RecurrencePair, n_max: usize) -> Result<Vec<Poly<Q>>> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Poly::one());
    for n in 0..n_max {
        let mut next = &Poly::linear_root(rec.a(n)?) * &out[n];
        if n > 0 {
            next = &next - &out[n - 1].scale(&rec.b(n)?);
        }
        out.push(next);
    }
    Ok(out)
}

/// `P_{n+1} − (x − a_n) P_n + b_n P_{n−1}` for `n ≥ 1`; zero when the
/// sequence satisfies the recurrence.
pub fn recurrence_residual(rec: &RecurrencePair, polys: &[Poly<Q>], n: usize) -> Result<Poly<Q>> {
    let step = &Poly::linear_root(rec.a(n)?) * &polys[n];
    let back = polys[n - 1].scale(&rec.b(n)?);
    Ok(&(&polys[n + 1] - &step) + &back)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exact::q;
    use crate::families::{family_recurrence, FamilySpec};

    fn qp(cs: &[&str]) -> Poly<Q> {
        Poly::new(cs.iter().map(|s| q(s)).collect())
    }

    #[test]
    fn chebyshev_heads() {
        let t = family_recurrence(&FamilySpec::ChebyshevT).unwrap();
        let p = generate_from_ttr(&t, 3).unwrap();
        assert_eq!(p[1], qp(&["0", "1"]));
        assert_eq!(p[2], qp(&["-1/2", "0", "1"]));
        let u = RecurrencePair::constant(q("0"), q("1/4")).unwrap();
        let p = generate_from_ttr(&u, 3).unwrap();
        assert_eq!(p[3], qp(&["0", "-1/2", "0", "1"]));
    }

    #[test]
    fn first_step_is_x_minus_a0() {
        let rec = RecurrencePair::constant(q("3/7"), q("2")).unwrap();
        assert_eq!(generate_from_ttr(&rec, 1).unwrap()[1], qp(&["-3/7", "1"]));
    }

    #[test]
    fn degrees_and_residuals() {
        let rec = family_recurrence(&FamilySpec::laguerre(q("1/3")).unwrap()).unwrap();
        let p = generate_from_ttr(&rec, 40).unwrap();
        for (n, pn) in p.iter().enumerate() {
            assert_eq!(pn.degree(), Some(n));
            assert_eq!(pn.leading(), Some(&q("1")));
        }
        for n in 1..40 {
            assert!(recurrence_residual(&rec, &p, n).unwrap().is_zero());
        }
    }

    #[test]
    fn invalid_b_is_rejected() {
        assert!(RecurrencePair::constant(q("0"), q("0")).is_err());
        let rec =
            RecurrencePair::table("t", vec![q("0"); 3], vec![q("0"), q("1"), q("1")]).unwrap();
        assert_eq!(generate_from_ttr(&rec, 4), Err(Error::OutOfTable(3)));
    }
}
