use std::collections::BTreeSet;

use hilbasis::caratheodory::{
    decompose_face_descent, decompose_lp_rounding, sigma, verify_decomposition, DescentAction,
    Strategy as Tag,
};
use hilbasis::exactlin::{
    delta_modulus, dot, gcd_max_minors, hermite, is_zero_vec, lp_max_sum, smith, solve_linear,
    IntMatrix, IntVector,
};
use hilbasis::formats::{read_cone_matrix, read_report, write_cone, write_report};
use hilbasis::geometry::{box_points, lattice_points, ConeH, Polytope};
use hilbasis::hilbert::{hilbert_basis, pigeonhole_point, support_minimal_element, Representer};
use hilbasis::instances::{
    random_bimodular, random_cone, random_cone_point, random_simplicial, seeded,
};
use hilbasis::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows).prop_map(move |rs| {
        let rs: Vec<IntVector> = rs
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        IntMatrix::from_rows(rs, cols).unwrap()
    })
}

fn shaped_matrix(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| matrix(r, c, bound))
}

fn tight_rows(a: &IntMatrix, z: &[BigInt]) -> BTreeSet<usize> {
    (0..a.rows())
        .filter(|&i| dot(a.row(i), z).is_zero())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_reconstructs(a in shaped_matrix(5, 7)) {
        let s = smith(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        let nonzero: Vec<BigInt> = s.diagonal().into_iter().take_while(|d| !d.is_zero()).collect();
        prop_assert_eq!(nonzero.len(), a.rank());
        for w in nonzero.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn hermite_reconstructs(a in shaped_matrix(5, 7)) {
        prop_assume!(a.rows() <= a.cols() && a.rank() == a.rows());
        let h = hermite(&a).unwrap();
        let au = a.mul(&h.u_inv);
        prop_assert_eq!(au.select_cols(&(0..a.rows()).collect::<Vec<_>>()), h.h.clone());
        prop_assert!(au.select_cols(&(a.rows()..a.cols()).collect::<Vec<_>>()).is_zero());
        prop_assert_eq!(h.h.det().unwrap().abs(), gcd_max_minors(&a).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(4, 4, 5), b in matrix(4, 4, 5)) {
        prop_assert_eq!(a.mul(&b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn solve_recovers_integral_solutions(a in matrix(3, 3, 6), x in prop::collection::vec(-9i64..=9, 3)) {
        prop_assume!(!a.det().unwrap().is_zero());
        let x: IntVector = x.into_iter().map(BigInt::from).collect();
        let b = a.mul_vec(&x);
        let sol = solve_linear(&a, &b).unwrap();
        prop_assert_eq!(sol.x.to_integral(), Some(x));
    }

    #[test]
    fn lattice_points_match_brute_force(a in matrix(3, 2, 3), b in prop::collection::vec(-3i64..=6, 3)) {
        let box_rows = IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let mut rhs: IntVector = b.into_iter().map(BigInt::from).collect();
        rhs.extend([4, 4, 4, 4].map(BigInt::from));
        let p = Polytope::new(a.vstack(&box_rows), rhs).unwrap();
        let got = lattice_points(&p).unwrap();
        let want: Vec<IntVector> = box_points(2, 4).into_iter().filter(|x| p.contains(x)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn lp_optimum_dominates_integral_points(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=3);
        let a = random_cone(&mut rng, n, n + 1, 2, 4);
        let hb = hilbert_basis(&ConeH::new(a.clone()).unwrap()).unwrap();
        let z = random_cone_point(&mut rng, &a, 12);
        let beta = Representer::new(&a, hb.elements()).represent(&z).unwrap();
        prop_assert_eq!(hb.matrix().mul_vec(&beta), z.clone());
        if !is_zero_vec(&z) {
            let opt = lp_max_sum(&hb.matrix(), &z).unwrap().objective;
            prop_assert!(BigRational::from_integer(beta.iter().sum()) <= opt);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// Every strategy returns a decomposition that passes verification, and
    /// the oracle is never beaten.
    #[test]
    fn every_strategy_is_sound(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=4);
        let m = n + rng.gen_range(0..=1);
        let a = random_cone(&mut rng, n, m, 2, 6);
        let hb = hilbert_basis(&ConeH::new(a.clone()).unwrap()).unwrap();
        let z = random_cone_point(&mut rng, &a, 50);

        let (s, witness) = sigma(&z, &hb, 2 * n - 2).unwrap();
        prop_assert!(verify_decomposition(&witness, &hb).valid);
        prop_assert_eq!(witness.length(), s);
        if n <= 3 {
            prop_assert!(s <= n);
        }

        let (descent, trace) = decompose_face_descent(&a, &z).unwrap();
        let v = verify_decomposition(&descent, &hb);
        prop_assert!(v.valid, "{:?}", v.diagnostics);
        prop_assert!(s <= descent.length());
        prop_assert_eq!(trace.replay().unwrap_or_else(|| z.clone()), z.clone());

        match decompose_lp_rounding(&z, &hb) {
            Ok((lp, _)) => {
                let v = verify_decomposition(&lp, &hb);
                prop_assert!(v.valid, "{:?}", v.diagnostics);
                prop_assert!(s <= lp.length());
                prop_assert!(matches!(lp.strategy, Tag::LpRounding | Tag::LpFallback));
            }
            Err(Error::GuardExceeded { .. }) => {}
            Err(e) => prop_assert!(false, "lp rounding failed: {e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bimodular_descent_is_short(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=5);
        let m = n + rng.gen_range(0..=3);
        let a = random_bimodular(&mut rng, n, m);
        let z = random_cone_point(&mut rng, &a, 50);
        let (d, trace) = decompose_face_descent(&a, &z).unwrap();
        prop_assert!(d.length() <= n);
        prop_assert!(!trace.got_stuck());
        prop_assert_eq!(d.certified_bound, Some(n));
    }

    #[test]
    fn simplicial_descent_respects_its_bound(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=6);
        let delta = rng.gen_range(1..=n as u64);
        let a = random_simplicial(&mut rng, n, delta);
        let z = random_cone_point(&mut rng, &a, 30);
        let (d, _) = decompose_face_descent(&a, &z).unwrap();
        let bound = if delta <= 4 { n } else { n + delta as usize - 3 };
        prop_assert!(d.length() <= bound);
        prop_assert_eq!(d.evaluate(), z);
    }

    /// Interior steps grow the tight set; face projections lower the dimension.
    #[test]
    fn descent_steps_make_progress(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=4);
        let m = n + rng.gen_range(0..=2);
        let a = random_cone(&mut rng, n, m, 2, 4);
        let z = random_cone_point(&mut rng, &a, 40);
        let (_, trace) = decompose_face_descent(&a, &z).unwrap();
        let mut dim = n;
        for step in &trace.steps {
            match &step.action {
                DescentAction::InteriorStep { element, multiplier } => {
                    let after: IntVector = step.point.iter().zip(element).map(|(p, h)| p - h * multiplier).collect();
                    let (before_t, after_t) = (tight_rows(&a, &step.point), tight_rows(&a, &after));
                    prop_assert!(before_t.is_subset(&after_t) && before_t != after_t);
                    prop_assert!(a.row_iter().all(|r| !dot(r, &after).is_negative()));
                }
                DescentAction::FaceProjection { .. } => {
                    prop_assert!(step.dim_after < dim);
                    dim = step.dim_after;
                }
                _ => {}
            }
        }
    }

    #[test]
    fn pigeonhole_lands_in_the_parallelepiped(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(1..=5);
        let delta = rng.gen_range(1..=n as u64);
        let a = random_simplicial(&mut rng, n, delta);
        let h = pigeonhole_point(&a).unwrap();
        prop_assert!(!is_zero_vec(&h));
        prop_assert!(a.mul_vec(&h).iter().all(|v| !v.is_negative() && *v <= BigInt::one()));
        let (g, supp) = support_minimal_element(&a).unwrap();
        let ag = a.mul_vec(&g);
        prop_assert!(supp.len() <= a.mul_vec(&h).iter().filter(|v| !v.is_zero()).count());
        prop_assert!(supp.iter().all(|&i| ag[i].is_one()));
    }

    #[test]
    fn cone_and_report_text_round_trip(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=3);
        let a = random_cone(&mut rng, n, n + 1, 3, 6);
        prop_assert_eq!(read_cone_matrix(&write_cone(&a)).unwrap(), a.clone());
        let z = random_cone_point(&mut rng, &a, 20);
        let (d, trace) = decompose_face_descent(&a, &z).unwrap();
        prop_assert_eq!(read_report(&write_report(&d, Some(&trace))).unwrap(), d);
    }

    #[test]
    fn modularity_is_unimodular_invariant(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=4);
        let a = random_bimodular(&mut rng, n, n + 2);
        let u = hilbasis::instances::random_unimodular(&mut rng, n, 6);
        prop_assert_eq!(delta_modulus(&a.mul(&u)).unwrap(), delta_modulus(&a).unwrap());
    }
}
