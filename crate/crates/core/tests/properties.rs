//! Property tests for the exact kernels.

use eulersym::legendre::{legendre_transform, LegendreConfig};
use eulersym::linalg::{int, nullspace, rank, Matrix, Scalar};
use eulersym::poly::{monomials_of_degree, Monomial, Polynomial};
use eulersym::symbol::{rank_symmetry_check, symbol_system_of, verify_symbol_system};
use eulersym::variety::{translate, AmbientSpace};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, c), r).prop_map(|rows| {
            Matrix::from_rows(rows.into_iter().map(|row| row.into_iter().map(int).collect()).collect()).unwrap()
        })
    })
}

/// A nonzero homogeneous form with small integer coefficients.
fn form(max_vars: usize, max_degree: u32) -> impl Strategy<Value = Polynomial> {
    (1..=max_vars, 1..=max_degree).prop_flat_map(|(m, r)| {
        let monos = monomials_of_degree(m, r);
        let n = monos.len();
        proptest::collection::vec(-3i64..=3, n)
            .prop_filter("nonzero", |cs| cs.iter().any(|&c| c != 0))
            .prop_map(move |cs| Polynomial::from_terms(m, monos.clone().into_iter().zip(cs.into_iter().map(int))))
    })
}

fn point(m: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(-5i64..=5, m).prop_map(|v| v.into_iter().map(int).collect())
}

fn form_and_point(max_vars: usize, max_degree: u32) -> impl Strategy<Value = (Polynomial, Vec<Scalar>)> {
    form(max_vars, max_degree).prop_flat_map(|p| {
        let m = p.nvars();
        (Just(p), point(m))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in small_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let null = nullspace(&m);
        prop_assert_eq!(rank(&m) + null.len(), m.cols());
        for v in &null {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn euler_identity((p, w) in form_and_point(4, 4)) {
        let r = p.homogeneous_degree().unwrap();
        let lhs: Scalar = p.gradient().iter().zip(&w).map(|(g, x)| g.evaluate(&w).unwrap() * x).sum();
        prop_assert_eq!(lhs, p.evaluate(&w).unwrap() * int(i64::from(r)));
    }

    #[test]
    fn full_contraction_is_evaluation((p, w) in form_and_point(4, 4)) {
        let r = p.homogeneous_degree().unwrap();
        let c = p.contract_times(&w, r).unwrap();
        prop_assert_eq!(c, Polynomial::constant(p.nvars(), p.evaluate(&w).unwrap()));
    }

    #[test]
    fn contraction_is_scaled_directional_derivative((p, w) in form_and_point(4, 4)) {
        let r = p.homogeneous_degree().unwrap();
        let d = p.directional_derivative(&w).unwrap();
        prop_assert_eq!(p.contract(&w).unwrap().scale(&int(i64::from(r))), d);
    }

    #[test]
    fn partials_commute(p in form(4, 4), i in 0usize..4, j in 0usize..4) {
        let m = p.nvars();
        let (i, j) = (i % m, j % m);
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
    }

    #[test]
    fn plane_restriction_is_exact_and_linear(
        (p, a) in form_and_point(3, 3),
        b in proptest::collection::vec(-5i64..=5, 3),
        s0 in -4i64..=4,
        u0 in -4i64..=4,
    ) {
        let m = p.nvars();
        let b: Vec<Scalar> = b.into_iter().take(m).map(int).collect();
        let (s0, u0) = (int(s0), int(u0));
        let restricted = p.restrict_to_plane(&a, &b).unwrap();
        let at: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| &s0 * x + &u0 * y).collect();
        prop_assert_eq!(restricted.evaluate(&[s0.clone(), u0.clone()]).unwrap(), p.evaluate(&at).unwrap());
        let doubled = (&p + &p).restrict_to_plane(&a, &b).unwrap();
        prop_assert_eq!(doubled, &restricted + &restricted);
    }

    #[test]
    fn catalecticant_ranks_are_symmetric(p in form(4, 4)) {
        prop_assert!(rank_symmetry_check(&p).unwrap().symmetric());
    }

    #[test]
    fn generated_systems_verify(p in form(3, 4)) {
        let s = symbol_system_of(&p).unwrap();
        prop_assert!(verify_symbol_system(&s.system).passed());
        let profile = s.system.profile();
        prop_assert_eq!(profile[0], 1);
        if s.degree() >= 2 {
            prop_assert_eq!(*profile.last().unwrap(), 1);
        }
    }

    #[test]
    fn translation_group_law(
        (p, w) in form_and_point(3, 3),
        a in proptest::collection::vec(-3i64..=3, 3),
        b in proptest::collection::vec(-3i64..=3, 3),
    ) {
        let m = p.nvars();
        let a: Vec<Scalar> = a.into_iter().take(m).map(int).collect();
        let b: Vec<Scalar> = b.into_iter().take(m).map(int).collect();
        let space = AmbientSpace::new(&p).unwrap();
        let x = space.embed(&Scalar::one(), &w).unwrap();
        let sum: Vec<Scalar> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
        let lhs = translate(&space, &a, &translate(&space, &b, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, translate(&space, &sum, &x).unwrap());
    }

    #[test]
    fn translation_matches_embedding((p, w) in form_and_point(3, 3), v in proptest::collection::vec(-3i64..=3, 3)) {
        let m = p.nvars();
        let v: Vec<Scalar> = v.into_iter().take(m).map(int).collect();
        let space = AmbientSpace::new(&p).unwrap();
        let x = space.embed(&Scalar::one(), &w).unwrap();
        let moved: Vec<Scalar> = w.iter().zip(&v).map(|(a, b)| a + b).collect();
        prop_assert_eq!(translate(&space, &v, &x).unwrap(), space.embed(&Scalar::one(), &moved).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// `P -> cP` sends `P_*` to `c^{-1} P_*`.
    #[test]
    fn legendre_scale_covariance(m in 1usize..4, c in prop_oneof![-4i64..=-1, 1i64..=4]) {
        let p = Polynomial::monomial(Monomial::new(vec![1; m + 1]), Scalar::one());
        let c = int(c);
        let config = LegendreConfig::default();
        let base = legendre_transform(&p, &config).unwrap();
        let scaled = legendre_transform(&p.scale(&c), &config).unwrap();
        let expected = base.transform().unwrap().scale(&(Scalar::one() / &c));
        prop_assert_eq!(scaled.transform(), Some(&expected));
    }
}
