use num_traits::Zero;
use proptest::prelude::*;

use opsf_core::exact::{q_frac, q_int, Q};
use opsf_core::families::{
    family_basis, family_poly, family_recurrence, FamilySpec, TridiagonalMatrix,
};
use opsf_core::identity::connection_oracle;
use opsf_core::multisum::{
    kdf_double, kdf_single, kdf_symmetry_check, parity_valid_alphas, s_closed, s_terminating,
    KdfPoint,
};
use opsf_core::mzv::{mzv_truncated, sturm_count_negative, xpoly_real_zeros, MzvSpec, XPoly};
use opsf_core::poly::{generate_from_ttr, Poly};
use opsf_core::positivity::gauss_legendre;
use opsf_core::spectra::{bernoulli_montecarlo, eigen_sym_tridiagonal};

fn small_positive_q() -> impl Strategy<Value = Q> {
    (1i64..40, 1i64..8).prop_map(|(a, b)| q_frac(a, b))
}

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        small_positive_q().prop_map(|a| FamilySpec::laguerre(a - q_frac(1, 2)).unwrap()),
        small_positive_q().prop_map(|l| FamilySpec::gegenbauer(l).unwrap()),
        (small_positive_q(), small_positive_q()).prop_map(|(a, b)| FamilySpec::jacobi(
            a - q_frac(1, 2),
            b - q_frac(1, 2)
        )
        .unwrap()),
    ]
}

fn brute_mzv(exps: &[u32], alts: &[bool], below: usize) -> f64 {
    let Some((&s, rest)) = exps.split_first() else {
        return 1.0;
    };
    (1..below)
        .map(|k| {
            let w = (k as f64).powi(-(s as i32));
            let w = if alts[0] && k % 2 == 1 { -w } else { w };
            w * brute_mzv(rest, &alts[1..], k)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sturm_counts_negative_roots(
        neg in prop::collection::btree_set(1i64..60, 0..6),
        pos in prop::collection::btree_set(1i64..60, 0..3),
    ) {
        let mut p = Poly::one();
        for &r in &neg {
            p = &p * &Poly::new(vec![q_frac(r, 3), q_int(1)]);
        }
        for &r in &pos {
            p = &p * &Poly::new(vec![q_frac(-r, 5), q_int(1)]);
        }
        let x = XPoly::new(p);
        prop_assert_eq!(sturm_count_negative(&x).unwrap(), neg.len());
        let report = xpoly_real_zeros(&x).unwrap();
        prop_assert_eq!(report.negative_count, neg.len());
        prop_assert_eq!(report.all_negative, pos.is_empty());
        let found = report.roots.iter().filter(|&&r| r < 0.0).count();
        prop_assert_eq!(found, neg.len());
        for (&r, &z) in neg.iter().rev().zip(report.roots.iter()) {
            let want = -(r as f64) / 3.0;
            prop_assert!((z - want).abs() <= 1e-12 * want.abs().max(1.0), "{} vs {}", z, want);
        }
    }

    #[test]
    fn t_cubed_structure(coeffs in prop::collection::vec(-20i64..20, 1..6), stray in 0usize..12) {
        let mut t = vec![Q::zero(); 3 * coeffs.len()];
        for (i, &c) in coeffs.iter().enumerate() {
            t[3 * i] = q_int(c);
        }
        let x = XPoly::from_t_poly(&Poly::new(t.clone())).unwrap();
        let back: Vec<Q> = x.poly().coeffs().to_vec();
        prop_assert_eq!(back, Poly::new(coeffs.iter().map(|&c| q_int(c)).collect()).coeffs().to_vec());
        if stray % 3 != 0 {
            t.resize(t.len().max(stray + 1), Q::zero());
            t[stray] = q_int(1);
            prop_assert!(XPoly::from_t_poly(&Poly::new(t)).is_err());
        }
    }

    #[test]
    fn mzv_recursion_matches_brute_force(
        lead in 2u32..5,
        rest in prop::collection::vec((1u32..4, any::<bool>()), 0..3),
        lead_alt in any::<bool>(),
        n in 10usize..40,
    ) {
        let mut exps = vec![lead];
        let mut alts = vec![lead_alt];
        for (s, a) in rest {
            exps.push(s);
            alts.push(a);
        }
        let spec = MzvSpec::new(exps.clone(), alts.clone(), n).unwrap();
        let dp = mzv_truncated(&spec);
        let bf = brute_mzv(&exps, &alts, n + 1);
        prop_assert!((dp.value - bf).abs() <= 1e-13 * bf.abs().max(1.0), "{} vs {}", dp.value, bf);
        prop_assert!(dp.tail_estimate >= 0.0);
    }

    #[test]
    fn monic_family_matches_recurrence(f in family(), n in 0usize..=10) {
        let rec = family_recurrence(&f).unwrap();
        let from_rec = generate_from_ttr(&rec, n).unwrap();
        prop_assert_eq!(family_poly(&f, n).unwrap().monic().unwrap(), from_rec[n].clone());
    }

    #[test]
    fn connection_reconstructs(from in family(), to in family(), n in 0usize..=8) {
        let gamma = connection_oracle(&from, &to, n).unwrap();
        let basis = family_basis(&to, n).unwrap();
        prop_assert_eq!(Poly::combine(&gamma, &basis[..gamma.len()]), family_poly(&from, n).unwrap());
    }

    #[test]
    fn tridiagonal_spectrum_invariants(
        diag in prop::collection::vec(-5.0f64..5.0, 1..40),
        off in prop::collection::vec(0.01f64..3.0, 39),
    ) {
        let t = TridiagonalMatrix::new(diag.clone(), off[..diag.len() - 1].to_vec()).unwrap();
        let ev = eigen_sym_tridiagonal(&t).unwrap();
        let scale = t.frobenius_sq().max(1.0);
        let sum: f64 = ev.iter().sum();
        let sq: f64 = ev.iter().map(|x| x * x).sum();
        prop_assert!((sum - t.trace()).abs() <= 1e-9 * scale);
        prop_assert!((sq - t.frobenius_sq()).abs() <= 1e-9 * scale);
        let discs = t.gershgorin();
        for &x in &ev {
            prop_assert!(discs.iter().any(|&(lo, hi)| x >= lo - 1e-10 && x <= hi + 1e-10));
        }
    }

    #[test]
    fn double_sum_closed_form(m in 0usize..=20, n in 0usize..=20) {
        prop_assert_eq!(s_terminating(m, n), s_closed(m, n));
    }

    #[test]
    fn kdf_reductions_agree(idx in any::<prop::sample::Index>(), kappa in prop::sample::select(vec![(1, 2), (1, 1), (3, 1), (2, 5)])) {
        let all = parity_valid_alphas(10);
        let alphas = all[idx.index(all.len())];
        let p = KdfPoint::new(alphas, q_frac(kappa.0, kappa.1)).unwrap();
        let (_, double) = kdf_double(&p).unwrap();
        prop_assert_eq!(double, kdf_single(&p).unwrap());
        prop_assert!(kdf_symmetry_check(&p).unwrap());
    }

    #[test]
    fn gauss_legendre_exact_on_monomials(n in 1usize..=30, k in 0usize..60) {
        let k = k % (2 * n);
        let (x, w) = gauss_legendre(n).unwrap();
        let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
        let want = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
        prop_assert!((got - want).abs() <= 1e-13, "n={} k={} {} vs {}", n, k, got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn bernoulli_histogram_counts_every_eigenvalue(n in 2usize..12, samples in 1usize..200, seed in any::<u64>()) {
        let r = bernoulli_montecarlo(n, samples, seed).unwrap();
        prop_assert_eq!(r.matrices, samples as u64);
        prop_assert_eq!(r.histogram.total(), (n * samples) as u64);
        prop_assert_eq!(r.trace_violations, 0);
        prop_assert_eq!(r, bernoulli_montecarlo(n, samples, seed).unwrap());
    }
}
