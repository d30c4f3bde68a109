use nalgebra::{DMatrix, DVector};
use nuradius_core::fixtures::{hexagon, hexagonal_prism};
use nuradius_core::lp::pairing_value;
use nuradius_core::{
    classify, is_w_orthogonal, lp_support_functional, recover_entries, LpSpace, Operator,
    PolyhedralSpace,
};
use proptest::prelude::*;

fn spaces() -> Vec<PolyhedralSpace> {
    vec![
        hexagon(),
        hexagonal_prism(),
        PolyhedralSpace::linf(3).unwrap(),
        PolyhedralSpace::l1(3).unwrap(),
    ]
}

fn entry() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

fn space_and_matrices(count: usize) -> impl Strategy<Value = (usize, Vec<Vec<f64>>)> {
    (0..4usize).prop_flat_map(move |k| {
        let n = spaces()[k].dim();
        (Just(k), prop::collection::vec(prop::collection::vec(entry(), n * n), count))
    })
}

fn matrix(n: usize, entries: &[f64]) -> DMatrix<f64> {
    DMatrix::from_row_slice(n, n, entries)
}

fn scalar() -> impl Strategy<Value = f64> {
    prop_oneof![-5.0..-0.1f64, 0.1..5.0f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_axioms((k, vs) in space_and_matrices(2), c in -5.0..5.0f64) {
        let space = &spaces()[k];
        let n = space.dim();
        let x = DVector::from_column_slice(&vs[0][..n]);
        let y = DVector::from_column_slice(&vs[1][..n]);
        let nx = space.norm(&x).unwrap();
        prop_assert!(nx >= 0.0);
        prop_assert!((space.norm(&(&x * c)).unwrap() - c.abs() * nx).abs() <= 1e-9 * (1.0 + nx));
        prop_assert!(space.norm(&(&x + &y)).unwrap() <= nx + space.norm(&y).unwrap() + 1e-12);
        prop_assert_eq!(space.norm(&DVector::zeros(n)).unwrap(), 0.0);
    }

    #[test]
    fn support_set_is_homogeneous((k, vs) in space_and_matrices(1), c in 0.1..10.0f64) {
        let space = &spaces()[k];
        let x = DVector::from_column_slice(&vs[0][..space.dim()]);
        prop_assume!(x.amax() > 1e-6);
        let s = space.support_set(&x).unwrap();
        prop_assert!(!s.is_empty());
        prop_assert_eq!(space.support_set(&(&x * c)).unwrap(), s);
    }

    #[test]
    fn radius_is_a_seminorm_below_operator_norm((k, ms) in space_and_matrices(2), c in -5.0..5.0f64) {
        let space = &spaces()[k];
        let n = space.dim();
        let t = Operator::new(space, matrix(n, &ms[0])).unwrap();
        let a = Operator::new(space, matrix(n, &ms[1])).unwrap();
        let w = t.numerical_radius().value;
        prop_assert!((t.scaled(c).numerical_radius().value - c.abs() * w).abs() <= 1e-9 * (1.0 + w));
        prop_assert!(w <= t.operator_norm().value + 1e-12);
        prop_assert!(t.add(&a).unwrap().numerical_radius().value <= w + a.numerical_radius().value + 1e-12);
    }

    #[test]
    fn witnesses_are_complete((k, ms) in space_and_matrices(1)) {
        let space = &spaces()[k];
        let t = Operator::new(space, matrix(space.dim(), &ms[0])).unwrap();
        let r = t.numerical_radius();
        for pair in space.extreme_pairs() {
            let attains = (t.pair_value(*pair).abs() - r.value).abs() <= space.tolerance();
            prop_assert_eq!(attains, r.contains(pair.vertex, pair.facet));
        }
        let classified: usize = r.sign_classes.iter().map(Vec::len).sum();
        prop_assert_eq!(classified, r.witnesses.len());
    }

    #[test]
    fn orthogonality_is_homogeneous((k, ms) in space_and_matrices(2), c in scalar(), d in scalar()) {
        let space = &spaces()[k];
        let n = space.dim();
        let t = Operator::new(space, matrix(n, &ms[0])).unwrap();
        let a = Operator::new(space, matrix(n, &ms[1])).unwrap();
        prop_assume!(t.numerical_radius().value > 1e-3);
        // keep the decision away from the tolerance boundary
        let d_min = nuradius_core::d_set(&t, &a).unwrap();
        prop_assume!(d_min.iter().all(|x| x.abs() > 1e-6));
        let base = is_w_orthogonal(&t, &a).unwrap().orthogonal;
        prop_assert_eq!(is_w_orthogonal(&t.scaled(c), &a.scaled(d)).unwrap().orthogonal, base);
    }

    #[test]
    fn orthogonality_matches_profile((k, ms) in space_and_matrices(2)) {
        let space = &spaces()[k];
        let n = space.dim();
        let t = Operator::new(space, matrix(n, &ms[0])).unwrap();
        let a = Operator::new(space, matrix(n, &ms[1])).unwrap();
        let w = t.numerical_radius().value;
        prop_assume!(w > 1e-3 && !a.is_w_zero());
        let profile = nuradius_core::lambda_profile_min(&t, &a, nuradius_core::NormKind::W).unwrap();
        prop_assert_eq!(
            is_w_orthogonal(&t, &a).unwrap().orthogonal,
            profile.value >= w - space.tolerance()
        );
    }

    #[test]
    fn classification_is_scale_invariant((k, ms) in space_and_matrices(1), c in scalar()) {
        let space = &spaces()[k];
        let t = Operator::new(space, matrix(space.dim(), &ms[0])).unwrap();
        prop_assume!(t.numerical_radius().value > 1e-3);
        let a = classify(&t).unwrap();
        let b = classify(&t.scaled(c)).unwrap();
        prop_assert_eq!((a.operator_smooth, a.nu_smooth), (b.operator_smooth, b.nu_smooth));
    }

    #[test]
    fn holder_equality(
        p in prop_oneof![Just(1.0), 1.1..1.9f64, 2.1..6.0f64],
        v in prop::collection::vec(-3.0..3.0f64, 1..6),
    ) {
        let x = DVector::from_vec(v);
        prop_assume!(x.amax() > 1e-3);
        let space = LpSpace::new(x.len(), p).unwrap();
        let x = space.normalize(&x).unwrap();
        let f = lp_support_functional(&space, &x).unwrap();
        prop_assert!((f.dot(&x) - 1.0).abs() < 1e-9);
        prop_assert!((space.dual_norm(&f) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn recovery_reproduces_hidden_matrix(
        p in prop_oneof![Just(1.0), 1.1..1.9f64, 2.2..5.0f64],
        n in 1..5usize,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let hidden = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        let space = LpSpace::new(n, p).unwrap();
        let t = recover_entries(&space, |x: &DVector<f64>| pairing_value(&space, &hidden, x)).unwrap();
        prop_assert!((t - &hidden).amax() < 1e-6);
    }
}
