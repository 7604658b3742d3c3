//! Seeded algebraic properties over random elements.

use num_complex::Complex64;
use proptest::prelude::*;

use ncergo::dynamics::{
    apply_action, conditional_expectation, ergodic_average, folner_defect, ActionSpec, FolnerRegion,
    GroupElement, GroupKind, RegionShape,
};
use ncergo::group::{finite_orbit_expectation, trace_product, DualSystemConfig, GroupObservable, Word};
use ncergo::sampling::{random_group_observable, random_tensor_element, random_torus_element, random_word, rng};
use ncergo::surd::rat;
use ncergo::{parse_scalar, SurdScalar, TorusElement};

const THETAS: [&str; 4] = ["0", "1/5", "1/2*sqrt(2)", "1/2 + 1/7*sqrt(5)"];

fn theta(i: usize) -> SurdScalar {
    parse_scalar(THETAS[i % THETAS.len()]).unwrap()
}

fn triple(seed: u64, t: &SurdScalar) -> (TorusElement, TorusElement, TorusElement) {
    let mut g = rng(seed);
    (
        random_torus_element(&mut g, t, 4, 8),
        random_torus_element(&mut g, t, 4, 8),
        random_torus_element(&mut g, t, 4, 8),
    )
}

fn spec(i: usize) -> ActionSpec {
    let s = |x: &str| parse_scalar(x).unwrap();
    match i % 3 {
        0 => ActionSpec::gauge(),
        1 => ActionSpec::torus(GroupKind::R, s("1"), s("1")),
        _ => ActionSpec::torus(GroupKind::R2, s("sqrt(3)"), s("-2/3*sqrt(3)")),
    }
}

fn element(kind: GroupKind, a: i64, b: i64) -> GroupElement {
    let parts = [rat(a, 7), rat(b, 11)];
    GroupElement(parts[..kind.dim()].to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>(), i in 0usize..4) {
        let t = theta(i);
        let (a, b, c) = triple(seed, &t);
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        let scale = a.one_norm() * b.one_norm() * c.one_norm();
        prop_assert!(lhs.distance(&rhs).unwrap() <= 1e-12 * scale);
    }

    #[test]
    fn trace_is_tracial_and_positive(seed in any::<u64>(), i in 0usize..4) {
        let t = theta(i);
        let (a, b, _) = triple(seed, &t);
        let ab = a.mul(&b).unwrap().trace();
        let ba = b.mul(&a).unwrap().trace();
        prop_assert!((ab - ba).norm() <= 1e-12);
        let aa = a.adjoint().mul(&a).unwrap().trace();
        prop_assert!(aa.re >= -1e-12 && aa.im.abs() <= 1e-12);
        // ‖a‖₂² = Σ|coeff|²
        let l2: f64 = a.terms().values().map(|c| c.norm_sqr()).sum();
        prop_assert!((aa.re - l2).abs() <= 1e-12);
    }

    #[test]
    fn adjoint_is_an_involutive_antihomomorphism(seed in any::<u64>(), i in 0usize..4) {
        let t = theta(i);
        let (a, b, _) = triple(seed, &t);
        prop_assert!(a.adjoint().adjoint().distance(&a).unwrap() <= 1e-12);
        let lhs = a.mul(&b).unwrap().adjoint();
        let rhs = b.adjoint().mul(&a.adjoint()).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() <= 1e-12);
        prop_assert!((a.adjoint().trace() - a.trace().conj()).norm() == 0.0);
    }

    #[test]
    fn action_is_a_star_automorphism(seed in any::<u64>(), i in 0usize..4, j in 0usize..3, x in -500i64..500, y in -500i64..500) {
        let t = theta(i);
        let spec = spec(j);
        let g = element(spec.kind(), x, y);
        let (a, b, _) = triple(seed, &t);
        let lhs = apply_action(&a.mul(&b).unwrap(), &g, &spec).unwrap();
        let rhs = apply_action(&a, &g, &spec).unwrap().mul(&apply_action(&b, &g, &spec).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() <= 1e-12);
        let star = apply_action(&a.adjoint(), &g, &spec).unwrap();
        prop_assert!(star.distance(&apply_action(&a, &g, &spec).unwrap().adjoint()).unwrap() <= 1e-12);
        // α_g α_h = α_{g+h}
        let h = element(spec.kind(), y, x);
        let sum = GroupElement(g.0.iter().zip(&h.0).map(|(p, q)| p + q).collect());
        let twice = apply_action(&apply_action(&a, &g, &spec).unwrap(), &h, &spec).unwrap();
        prop_assert!(twice.distance(&apply_action(&a, &sum, &spec).unwrap()).unwrap() <= 1e-12);
    }

    #[test]
    fn expectation_is_an_invariant_projection(seed in any::<u64>(), j in 0usize..3, x in -500i64..500, y in -500i64..500) {
        let t = theta(1);
        let spec = spec(j);
        let g = element(spec.kind(), x, y);
        let (a, _, _) = triple(seed, &t);
        let e = conditional_expectation(&a, &spec).unwrap();
        prop_assert_eq!(&conditional_expectation(&e, &spec).unwrap(), &e);
        prop_assert_eq!(&conditional_expectation(&apply_action(&a, &g, &spec).unwrap(), &spec).unwrap(), &e);
        prop_assert_eq!(&apply_action(&e, &g, &spec).unwrap(), &e);
        prop_assert!(e.one_norm() <= a.one_norm());
        prop_assert_eq!(e.trace(), a.trace());
    }

    #[test]
    fn averages_are_stable_under_shifts(seed in any::<u64>(), j in 0usize..3, x in -500i64..500, y in -500i64..500, size in 1i64..400) {
        let t = theta(3);
        let spec = spec(j);
        let shape = if spec.kind() == GroupKind::R2 { RegionShape::Box } else { RegionShape::Interval };
        let region = FolnerRegion::from_shape(shape, &rat(size, 3)).unwrap();
        let h = element(spec.kind(), x, y);
        let (a, _, _) = triple(seed, &t);
        let diff = a.sub(&apply_action(&a, &h, &spec).unwrap()).unwrap();
        let lhs = ergodic_average(&diff, &spec, &region).unwrap().one_norm();
        let bound = folner_defect(&region, &h).unwrap() * a.one_norm();
        prop_assert!(lhs <= bound + 1e-12, "{} > {}", lhs, bound);
    }

    #[test]
    fn tensor_product_trace_factorizes(seed in any::<u64>()) {
        let (t1, t2) = (theta(1), theta(2));
        let mut g = rng(seed);
        let a = random_torus_element(&mut g, &t1, 3, 5);
        let b = random_torus_element(&mut g, &t2, 3, 5);
        let c = ncergo::TensorElement::product(&a, &b);
        let f = ncergo::StateFunctional::new(ncergo::StateKind::ProductTrace, t1, t2).unwrap();
        let value = ncergo::tensor::state_eval(&f, &c).unwrap();
        prop_assert!((value - a.trace() * b.trace()).norm() <= 1e-12);
        let d = random_tensor_element(&mut g, c.theta1(), c.theta2(), 3, 5);
        prop_assert!(d.mul(&c).unwrap().adjoint().distance(&c.adjoint().mul(&d.adjoint()).unwrap()).unwrap() <= 1e-12);
    }

    #[test]
    fn group_automorphisms_respect_words(seed in any::<u64>()) {
        let config = DualSystemConfig::increasing_cycles(3);
        let t = config.t();
        let mut g = rng(seed);
        let w = random_word(&mut g, 9, 5, 12);
        let v = random_word(&mut g, 9, 5, 12);
        prop_assert_eq!(Word::reduce(w.letters().to_vec()), w.clone());
        prop_assert!(w.is_reduced());
        prop_assert_eq!(t.apply(&w).len(), w.len());
        prop_assert_eq!(t.apply(&w.inverse()), t.apply(&w).inverse());
        prop_assert_eq!(t.apply(&w.concat(&v)), t.apply(&w).concat(&t.apply(&v)));
        prop_assert_eq!(t.apply_power(&t.apply_power(&w, 3), -3), w);
    }

    #[test]
    fn finite_orbit_expectation_properties(seed in any::<u64>()) {
        let config = DualSystemConfig::increasing_cycles(3);
        let mut g = rng(seed);
        let a = random_group_observable(&mut g, 9, 3, 5, 6);
        let b = random_group_observable(&mut g, 9, 3, 5, 6);
        let unit = GroupObservable::unit();
        prop_assert!((trace_product(&a, &b) - trace_product(&b, &a)).norm() <= 1e-12);
        let d = finite_orbit_expectation(&a, &config);
        prop_assert_eq!(&finite_orbit_expectation(&d, &config), &d);
        prop_assert_eq!(finite_orbit_expectation(&a.transform(config.t(), 1), &config), d.transform(config.t(), 1));
        prop_assert_eq!(trace_product(&d, &unit), trace_product(&a, &unit));
        // letter-orbit finiteness agrees with direct enumeration
        for w in a.terms().keys() {
            let enumerated = config.t().orbit_period(w, 10_000).is_some();
            prop_assert_eq!(config.t().has_finite_orbit(w), enumerated);
        }
        let _ = Complex64::default();
    }
}
