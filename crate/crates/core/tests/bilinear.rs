mod common;

use banach_bilinear::bilinear::{alternating_ascent, bilinear_norm, norm_attainment_set};
use banach_bilinear::instances::{self, Family};
use banach_bilinear::product::{is_smooth_point_product, ProductVector};
use banach_bilinear::{BilinearOperator, Error, SearchConfig, Space, Tolerances};
use proptest::prelude::*;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

/// Operator over ℓ_p spaces of dims 2 to 3.
fn operator(seed: u64, families: &'static [Family]) -> BilinearOperator {
    let mut rng = common::seeded(seed);
    let x = instances::random_space_from(&mut rng, families, 2..=3);
    let y = instances::random_space_from(&mut rng, families, 2..=3);
    let z = instances::random_space_from(&mut rng, families, 2..=3);
    if seed.is_multiple_of(3) {
        instances::random_dyadic_operator(&mut rng, x, y, z)
    } else {
        instances::random_operator(&mut rng, x, y, z)
    }
}

fn max_sampled(t: &BilinearOperator, seed: u64) -> f64 {
    let xs = t.x_space().sample_sphere(300, seed);
    let ys = t.y_space().sample_sphere(300, seed + 1);
    xs.iter()
        .zip(&ys)
        .map(|(x, y)| common::norm(t.z_space(), &common::eval(t, x, y)))
        .fold(0.0, f64::max)
}

#[test]
fn norm_examples() {
    let e1 = BilinearOperator::new(
        Space::l2(2).unwrap(),
        Space::l2(2).unwrap(),
        Space::scalar(),
        vec![vec![vec![1.0], vec![0.0]], vec![vec![0.0], vec![0.0]]],
    )
    .unwrap();
    let n = bilinear_norm(&e1, &cfg());
    assert!((n.value - 1.0).abs() <= 1e-12);
    let m = norm_attainment_set(&e1, &cfg()).unwrap();
    assert!(m.is_single_orbit());
    let (x, y) = &m.orbits[0];
    assert!((x[0].abs() - 1.0).abs() <= 1e-9 && (y[0].abs() - 1.0).abs() <= 1e-9);

    let s = Space::linf(2).unwrap();
    let diag = BilinearOperator::new(
        s.clone(),
        s.clone(),
        s.clone(),
        vec![vec![vec![1.0, 0.0], vec![0.0, 0.0]], vec![vec![0.0, 0.0], vec![0.0, 1.0]]],
    )
    .unwrap();
    assert_eq!(common::linf_domain_norm(&diag), 1.0);
    let m = norm_attainment_set(&diag, &cfg()).unwrap();
    assert!(m.exact && m.value == 1.0 && m.orbits.len() > 1);

    let zero = BilinearOperator::zero(s.clone(), s.clone(), s).unwrap();
    assert_eq!(bilinear_norm(&zero, &cfg()).value, 0.0);
    assert!(matches!(norm_attainment_set(&zero, &cfg()), Err(Error::ZeroOperator)));
}

#[test]
fn ascent_reaches_enumerated_value_on_cube_domains() {
    for seed in 0..40 {
        let t = operator(seed, &[Family::LInf]);
        let exact = common::linf_domain_norm(&t);
        let lib = bilinear_norm(&t, &cfg());
        assert!(lib.exact);
        assert!((lib.value - exact).abs() <= 1e-12 * exact);
        let ascent = alternating_ascent(&t, &cfg());
        assert!((ascent.value - exact).abs() <= 1e-9 * exact, "seed {seed}: {} vs {exact}", ascent.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_bilinear(seed in any::<u64>(), a in -3.0f64..3.0) {
        let t = operator(seed, &Family::ALL[..4]);
        let (dx, dy, _) = t.shape();
        let mut rng = common::seeded(seed ^ 1);
        let (x, x2) = (instances::normal_vec(&mut rng, dx), instances::normal_vec(&mut rng, dx));
        let (y, y2) = (instances::normal_vec(&mut rng, dy), instances::normal_vec(&mut rng, dy));
        let lhs = t.evaluate(&common::axpy(&x2, a, &x), &y).unwrap();
        let rhs = common::axpy(&common::eval(&t, &x2, &y), a, &common::eval(&t, &x, &y));
        for (l, r) in lhs.iter().zip(&rhs) {
            prop_assert!((l - r).abs() <= 1e-12 * (1.0 + r.abs()));
        }
        let lhs = t.evaluate(&x, &common::axpy(&y2, a, &y)).unwrap();
        let rhs = common::axpy(&common::eval(&t, &x, &y2), a, &common::eval(&t, &x, &y));
        for (l, r) in lhs.iter().zip(&rhs) {
            prop_assert!((l - r).abs() <= 1e-12 * (1.0 + r.abs()));
        }
    }

    #[test]
    fn slices_reproduce_evaluation(seed in any::<u64>()) {
        let t = operator(seed, &Family::ALL[..4]);
        let (dx, dy, _) = t.shape();
        let mut rng = common::seeded(seed ^ 2);
        let x = instances::normal_vec(&mut rng, dx);
        let y = instances::normal_vec(&mut rng, dy);
        let direct = common::eval(&t, &x, &y);
        let first = t.fix_first(&x).unwrap().apply(&y).unwrap();
        let second = t.fix_second(&y).unwrap().apply(&x).unwrap();
        for ((d, f), s) in direct.iter().zip(first.iter()).zip(second.iter()) {
            prop_assert!((d - f).abs() <= 1e-12 * (1.0 + d.abs()));
            prop_assert!((d - s).abs() <= 1e-12 * (1.0 + d.abs()));
        }
    }

    #[test]
    fn norm_scales_absolutely(seed in any::<u64>(), a in -10.0f64..10.0) {
        prop_assume!(a.abs() > 1e-3);
        let t = operator(seed, &[Family::LInf, Family::L1]);
        let n = bilinear_norm(&t, &cfg()).value;
        let na = bilinear_norm(&t.scaled(a), &cfg()).value;
        prop_assert!((na - a.abs() * n).abs() <= 1e-12 * a.abs() * n);
    }

    /// The reported norm is attained by its certificate and is not beaten by
    /// any sampled pair of unit vectors.
    #[test]
    fn norm_is_a_maximum(seed in any::<u64>()) {
        let t = operator(seed, &Family::ALL[..4]);
        let n = bilinear_norm(&t, &cfg());
        prop_assert!(max_sampled(&t, seed) <= n.value * (1.0 + 1e-9));
        prop_assert!(!n.certificate.is_empty());
        for (x, y) in &n.certificate {
            let v = common::norm(t.z_space(), &common::eval(&t, x, y));
            prop_assert!(v >= n.value * (1.0 - 1e-8));
        }
    }

    #[test]
    fn slice_norms_are_bounded(seed in any::<u64>()) {
        let t = operator(seed, &[Family::L2, Family::LInf]);
        let m = norm_attainment_set(&t, &cfg()).unwrap();
        let mut rng = common::seeded(seed ^ 3);
        let x = instances::normal_vec(&mut rng, t.shape().0);
        let nx = common::norm(t.x_space(), &x);
        let slice = t.fix_first(&x).unwrap().norm(&cfg()).value;
        prop_assert!(slice <= m.value * nx * (1.0 + 1e-9) + 1e-9);
        for (x0, _) in &m.orbits {
            let v = t.fix_first(x0).unwrap().norm(&cfg()).value;
            prop_assert!((v - m.value).abs() <= 1e-8 * m.value);
        }
    }

    #[test]
    fn maximisers_lie_on_both_spheres_and_are_not_smooth(seed in any::<u64>()) {
        let t = operator(seed, &[Family::L2, Family::LInf, Family::L4]);
        let m = norm_attainment_set(&t, &cfg()).unwrap();
        for (x, y) in m.members() {
            prop_assert!((common::norm(t.x_space(), &x) - 1.0).abs() <= 1e-9);
            prop_assert!((common::norm(t.y_space(), &y) - 1.0).abs() <= 1e-9);
            let v = common::norm(t.z_space(), &common::eval(&t, &x, &y));
            prop_assert!(v >= m.value * (1.0 - 1e-8));
            let anchor = ProductVector::new(x, y);
            prop_assert!(is_smooth_point_product(t.x_space(), t.y_space(), &anchor, &Tolerances::default()).unwrap().is_fails());
        }
    }

    #[test]
    fn search_is_deterministic(seed in any::<u64>()) {
        let t = operator(seed, &[Family::L2, Family::L4]);
        let a = norm_attainment_set(&t, &cfg()).unwrap();
        let b = norm_attainment_set(&t, &cfg()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let t = operator(seed, &Family::ALL[..4]);
        let back: BilinearOperator = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }
}
