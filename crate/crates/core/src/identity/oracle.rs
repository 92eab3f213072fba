use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Q;
use crate::families::{family_basis, FamilySpec};
use crate::poly::{expand_in_basis, Poly};

/// `γ_k` with `P_m^f P_n^f = Σ_{k ≤ m+n} γ_k P_k^{target}`.
///
/// The expansion is re-multiplied and compared with the product before
/// returning, so a returned vector always reconstructs exactly.
pub fn linearization_oracle(
    f: &FamilySpec,
    m: usize,
    n: usize,
    target: &FamilySpec,
) -> Result<Vec<Q>> {
    let source = family_basis(f, m.max(n))?;
    let product = &source[m] * &source[n];
    expand_checked(&product, target, m + n)
}

/// `β_k` with `P_n^{from} = Σ_{k ≤ n} β_k P_k^{to}`.
pub fn connection_oracle(from: &FamilySpec, to: &FamilySpec, n: usize) -> Result<Vec<Q>> {
    let p = family_poly_of(from, n)?;
    expand_checked(&p, to, n)
}

fn family_poly_of(f: &FamilySpec, n: usize) -> Result<Poly<Q>> {
    Ok(family_basis(f, n)?.swap_remove(n))
}

fn expand_checked(p: &Poly<Q>, target: &FamilySpec, top: usize) -> Result<Vec<Q>> {
    let basis = family_basis(target, top)?;
    let mut gamma = expand_in_basis(p, &basis)?;
    if Poly::combine(&gamma, &basis) != *p {
        return Err(Error::StructureViolation(
            "oracle expansion failed to reconstruct the product".into(),
        ));
    }
    gamma.resize(top + 1, Q::zero());
    Ok(gamma)
}

/// Pushes a linearization in basis A through connection rows A→B:
/// `Σ_j lin_j · conn[j]`, where `conn[j]` expands `P_j^A` in basis B.
pub fn compose_connection(lin: &[Q], conn: &[Vec<Q>]) -> Vec<Q> {
    let len = conn.iter().map(Vec::len).max().unwrap_or(0).max(lin.len());
    let mut out = vec![Q::zero(); len];
    for (c, row) in lin.iter().zip(conn) {
        if c.is_zero() {
            continue;
        }
        for (k, v) in row.iter().enumerate() {
            out[k] += c * v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn oracle_examples() {
        let u = FamilySpec::gegenbauer(q("1")).unwrap();
        assert_eq!(
            linearization_oracle(&u, 1, 1, &u).unwrap(),
            vec![q("1"), q("0"), q("1")]
        );
        let l = FamilySpec::laguerre(q("0")).unwrap();
        assert_eq!(
            linearization_oracle(&l, 1, 1, &l).unwrap(),
            vec![q("1"), q("-2"), q("2")]
        );
        // T_2 T_1 = T_3/2 + T_1/2 = (U_3 − U_1)/4 + (U_1 − U_{-1})/4 = U_3/4
        let got =
            linearization_oracle(&FamilySpec::ChebyshevT, 2, 1, &FamilySpec::ChebyshevU).unwrap();
        assert_eq!(got, vec![q("0"), q("0"), q("0"), q("1/4")]);
    }

    #[test]
    fn connection_identity_is_delta() {
        let j = FamilySpec::jacobi(q("1/3"), q("-1/2")).unwrap();
        for n in 0..6 {
            let c = connection_oracle(&j, &j, n).unwrap();
            for (k, v) in c.iter().enumerate() {
                assert_eq!(v.is_zero(), k != n);
            }
        }
    }
}
