//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p ncergo --test acceptance`. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use ncergo::dynamics::{
    apply_action, char_average, conditional_expectation, ergodic_average, point_spectrum,
    spectrum_intersection, ActionSpec, FolnerRegion, Frequency, GroupElement, GroupKind,
    RegionShape,
};
use ncergo::group::{
    cesaro_mean, correlation_experiment, mixing_decay, DualSystemConfig, GroupObservable, Word,
};
use ncergo::qtorus::rep::{compare_with_oracle, OracleDeviation};
use ncergo::sampling::{random_tensor_element, random_torus_element, rng};
use ncergo::surd::{cis_2pi, rat};
use ncergo::tensor::{disjointness_average, kernel_certificate, oracle, state_eval};
use ncergo::{
    parse_scalar, Rational, StateFunctional, StateKind, SurdScalar, TensorElement, TensorMonomial,
    TorusElement,
};

const COMMUTATION_TOL: f64 = 1e-12;
const ORACLE_TOL: f64 = 1e-9;
const ORACLE_BUDGET: Duration = Duration::from_secs(10);
const ROUNDING_SLACK: f64 = 1e-12;
const CLOSED_FORM_TOL: f64 = 1e-12;
const QUADRATURE_TOL: f64 = 1e-8;
const LIMIT_TOL: f64 = 1e-3;
const POSITIVITY_TOL: f64 = 1e-12;
const OPERATOR_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-12;

const SEED: u64 = 20_241_015;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn s(text: &str) -> SurdScalar {
    parse_scalar(text).unwrap()
}

fn r(n: i64) -> Rational {
    rat(n, 1)
}

fn c1_commutation() -> Outcome {
    let mut worst: f64 = 0.0;
    for theta in ["0", "1/4", "1/3", "1/2 + 1/5*sqrt(2)"] {
        let theta = s(theta);
        let u = TorusElement::u(theta.clone());
        let v = TorusElement::v(theta.clone());
        // e^{2πiθ} from the f64 value, independent of the exact phase routine
        let phase = Complex64::from_polar(1.0, 2.0 * PI * theta.to_f64());
        let gap = u.mul(&v).unwrap().sub(&v.mul(&u).unwrap().scale(phase)).unwrap();
        worst = worst.max(gap.one_norm());
    }
    outcome(
        worst <= COMMUTATION_TOL,
        format!("max ||uv - e(θ)vu||_1 = {worst:.2e} (tol {COMMUTATION_TOL:.0e})"),
    )
}

fn c2_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst = OracleDeviation::default();
    for (i, theta) in ["1/5", "1/2*sqrt(2)"].iter().enumerate() {
        let theta = s(theta);
        let mut g = rng(SEED + i as u64);
        // 100 elements per θ, compared in pairs
        for _ in 0..50 {
            let a = random_torus_element(&mut g, &theta, 4, 10);
            let b = random_torus_element(&mut g, &theta, 4, 10);
            worst = worst
                .merge(compare_with_oracle(&a, &b, 16).unwrap())
                .merge(compare_with_oracle(&b, &a, 16).unwrap());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst.max() <= ORACLE_TOL && elapsed <= ORACLE_BUDGET,
        format!(
            "mul {:.2e}, adjoint {:.2e}, trace {:.2e} (tol {ORACLE_TOL:.0e}); {:.2} s (budget {} s)",
            worst.mul,
            worst.adjoint,
            worst.trace,
            elapsed.as_secs_f64(),
            ORACLE_BUDGET.as_secs()
        ),
    )
}

fn c3_unique_ergodicity() -> Outcome {
    let theta = s("1/2 + 1/5*sqrt(2)");
    let spec = ActionSpec::gauge();
    let mut passed = true;
    let mut worst_ratio: f64 = 0.0;
    // The pinned size, plus a non-integer one where the sines do not vanish.
    for size in [r(1000), rat(3001, 3)] {
        let region = FolnerRegion::from_shape(RegionShape::Box, &size).unwrap();
        let t = region.size().to_f64().unwrap();
        for m in -4i64..=4 {
            for n in -4i64..=4 {
                let a = TorusElement::monomial(theta.clone(), m, n);
                let avg = ergodic_average(&a, &spec, &region).unwrap();
                if m == 0 && n == 0 {
                    passed &= avg == a;
                    continue;
                }
                let bound = 1.0 / (PI * m.abs().max(n.abs()) as f64 * t);
                let norm = avg.one_norm();
                passed &= norm <= bound + ROUNDING_SLACK;
                worst_ratio = worst_ratio.max(norm / bound);
            }
        }
    }
    outcome(
        passed,
        format!("max ||A_T(u^m v^n)||_1 / bound = {worst_ratio:.3}; unit average exact"),
    )
}

/// Composite Simpson rule for `(1/T)∫_0^T e^{2πifs} ds` on `nodes` intervals.
fn simpson_average(f: f64, t: f64, nodes: usize) -> Complex64 {
    let h = t / nodes as f64;
    let g = |x: f64| Complex64::from_polar(1.0, 2.0 * PI * f * x);
    let mut sum = g(0.0) + g(t);
    for i in 1..nodes {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += g(i as f64 * h) * w;
    }
    sum * (h / 3.0) / t
}

fn c4_product_limit() -> Outcome {
    let (t1, t2) = (s("1/5"), s("sqrt(3)"));
    let spec = ActionSpec::tensor(GroupKind::R2, (s("1"), s("1")), (s("sqrt(2)"), s("sqrt(3)")));
    let kappa = StateFunctional::new(StateKind::KappaD, t1.clone(), t2.clone()).unwrap();
    let c = TensorElement::monomial(t1, t2, TensorMonomial::new(0, 1, 0, -1));
    let regions = [
        FolnerRegion::from_shape(RegionShape::Box, &r(1000)).unwrap(),
        FolnerRegion::from_shape(RegionShape::Box, &r(10)).unwrap(),
    ];
    let rows = disjointness_average(&kappa, &c, &spec, &regions).unwrap();
    let value = rows[0].value;
    let bound = 1.0 / (PI * (3f64.sqrt() - 1.0) * 1000.0);

    // Frequency (0, 1 − √3): the first axis contributes 1.
    let f = 1.0 - 3f64.sqrt();
    let closed = |t: f64| {
        Complex64::from_polar(1.0, PI * f * t) * ((PI * f * t).sin() / (PI * f * t))
    };
    let closed_gap = (value - closed(1000.0)).norm();
    let quad_gap = (rows[1].value - simpson_average(f, 10.0, 10_000)).norm();
    let limit_ok = rows[0].limit == Complex64::new(0.0, 0.0);
    outcome(
        value.norm() <= bound && closed_gap <= CLOSED_FORM_TOL && quad_gap <= QUADRATURE_TOL && limit_ok,
        format!(
            "|avg(1000)| = {:.3e} <= {bound:.3e}; closed form gap {closed_gap:.1e}; Simpson gap at T=10 {quad_gap:.1e}; limit {}",
            value.norm(),
            rows[0].limit
        ),
    )
}

fn c5_relative_limit() -> Outcome {
    let (t1, t2) = (s("1/5"), s("-1/5"));
    let spec = ActionSpec::tensor(GroupKind::R, (s("1"), s("1")), (s("sqrt(2)"), s("1")));
    let diag = StateFunctional::new(StateKind::KappaDiag, t1.clone(), t2.clone()).unwrap();
    let omega = StateFunctional::new(StateKind::OmegaRel, t1.clone(), t2.clone()).unwrap();
    let product = StateFunctional::new(StateKind::ProductTrace, t1.clone(), t2.clone()).unwrap();
    let regions: Vec<_> = [1, 10, 100, 1000]
        .iter()
        .map(|&t| FolnerRegion::from_shape(RegionShape::Interval, &r(t)).unwrap())
        .collect();
    let one = Complex64::new(1.0, 0.0);

    let vv = TensorElement::monomial(t1.clone(), t2.clone(), TensorMonomial::new(0, 1, 0, -1));
    let rows = disjointness_average(&diag, &vv, &spec, &regions).unwrap();
    let exact_one = rows.iter().all(|row| row.value == one && row.limit == one);
    let omega_vv = state_eval(&omega, &vv).unwrap();
    let product_vv = state_eval(&product, &vv).unwrap();

    let uu = TensorElement::monomial(t1, t2, TensorMonomial::new(1, 0, -1, 0));
    let rows = disjointness_average(&diag, &uu, &spec, &regions).unwrap();
    let last = rows.last().unwrap();
    let bound = 1.0 / (PI * (2f64.sqrt() - 1.0) * 1000.0);
    let kappa_uu = state_eval(&diag, &uu).unwrap();
    let omega_uu = state_eval(&omega, &uu).unwrap();
    outcome(
        exact_one
            && omega_vv == one
            && product_vv == Complex64::new(0.0, 0.0)
            && kappa_uu == one
            && omega_uu == Complex64::new(0.0, 0.0)
            && last.value.norm() <= bound
            && last.limit == Complex64::new(0.0, 0.0),
        format!(
            "v⊗ṽ⁻¹: average 1 at all T, omega_rel {omega_vv}, product_trace {product_vv}; u⊗ũ⁻¹: |avg(1000)| = {:.3e} <= {bound:.3e}, limit {}",
            last.value.norm(),
            last.limit
        ),
    )
}

fn c6_conditional_expectation() -> Outcome {
    let theta = s("1/5");
    // α_s = τ_{s, 0}
    let spec = ActionSpec::torus(GroupKind::R, s("1"), s("1"));
    let mut g = rng(SEED ^ 6);
    let mut worst: f64 = 0.0;
    let mut exact = true;
    let big = [
        FolnerRegion::from_shape(RegionShape::Interval, &r(10_000)).unwrap(),
        FolnerRegion::from_shape(RegionShape::Interval, &rat(20_001, 2)).unwrap(),
    ];
    for i in 0..20 {
        let a = random_torus_element(&mut g, &theta, 4, 8);
        let e = conditional_expectation(&a, &spec).unwrap();
        for region in &big {
            worst = worst.max(ergodic_average(&a, &spec, region).unwrap().distance(&e).unwrap());
        }
        let h = GroupElement(vec![rat(i * 37 - 300, 7)]);
        exact &= conditional_expectation(&e, &spec).unwrap() == e;
        exact &= conditional_expectation(&apply_action(&a, &h, &spec).unwrap(), &spec).unwrap() == e;
        exact &= apply_action(&e, &h, &spec).unwrap() == e;
    }
    let one = TorusElement::one(theta.clone());
    exact &= conditional_expectation(&one, &spec).unwrap() == one;

    let mut fixed = BTreeSet::new();
    for m in -4..=4 {
        for n in -4..=4 {
            let mono = TorusElement::monomial(theta.clone(), m, n);
            if conditional_expectation(&mono, &spec).unwrap() == mono {
                fixed.insert((m, n));
            }
        }
    }
    let expected: BTreeSet<_> = (-4..=4).map(|n| (0, n)).collect();
    outcome(
        worst <= LIMIT_TOL && exact && fixed == expected,
        format!(
            "max ||A_T(a) - E(a)||_1 = {worst:.2e} (tol {LIMIT_TOL:.0e}); E idempotent/invariant/unital: {exact}; fixed monomials = {{m = 0}}: {}",
            fixed == expected
        ),
    )
}

fn c7_kernel() -> Outcome {
    let spec = ActionSpec::tensor(GroupKind::R, (s("1"), s("1")), (s("sqrt(2)"), s("1")));
    let cert = kernel_certificate(&spec, 8).unwrap();
    let got: BTreeSet<_> = cert.zero_frequency.iter().copied().collect();
    let mut expected = BTreeSet::new();
    for k in -8..=8 {
        for m in -8..=8 {
            expected.insert(TensorMonomial::new(0, k, 0, m));
        }
    }
    outcome(
        got == expected && cert.zero_frequency.len() == expected.len(),
        format!("{} zero-frequency monomials, expected {} of the form (0,k,0,m)", got.len(), expected.len()),
    )
}

fn c8_spectrum() -> Outcome {
    let a = point_spectrum(&ActionSpec::torus(GroupKind::R2, s("1"), s("1")), 8).unwrap();
    let b = point_spectrum(&ActionSpec::torus(GroupKind::R2, s("sqrt(2)"), s("sqrt(3)")), 8).unwrap();
    let common = spectrum_intersection(&a, &b);
    outcome(
        common == [(SurdScalar::zero(), SurdScalar::zero())],
        format!("intersection has {} point(s): {:?}", common.len(), common.iter().map(|(x, y)| format!("({x}, {y})")).collect::<Vec<_>>()),
    )
}

fn c9_dual_system() -> Outcome {
    let config = DualSystemConfig::increasing_cycles(3);
    let word = |t: &str| t.parse::<Word>().unwrap();
    let cases = [
        ("s1", "s1^-1", 1.0),
        ("t0", "t0^-1", 0.0),
        ("s1 t0", "t0^-1 s1^-1", 0.0),
    ];
    let mut passed = true;
    let mut worst: f64 = 0.0;
    for (g, h, target) in cases {
        let a = GroupObservable::basis(word(g));
        let b = GroupObservable::basis(word(h));
        for row in correlation_experiment(&a, &b, &config, &[1, 10, 100]).unwrap() {
            passed &= row.abs_error == 0.0 && row.limit == Complex64::new(target, 0.0);
            worst = worst.max(row.abs_error);
        }
    }
    let hits = mixing_decay(&word("t0"), &word("t5"), &config, 1000);
    let count = hits.iter().filter(|&&x| x == 1).count();
    let cesaro_ok = (1..=hits.len()).all(|n| cesaro_mean(&hits, n) <= 1.0 / n as f64);
    passed &= count == 1 && hits[4] == 1 && cesaro_ok;
    outcome(
        passed,
        format!("max error {worst:.1e} over N in {{1,10,100}}; (t0, t5) hits {count} time(s) in 1000 steps; Cesàro <= 1/N: {cesaro_ok}"),
    )
}

fn c10_positivity() -> Outcome {
    let theta = s("1/5");
    let mirror = theta.neg();
    let mut g = rng(SEED ^ 10);
    let mut negativity: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for _ in 0..100 {
        let c = random_tensor_element(&mut g, &theta, &mirror, 3, 8);
        let cc = c.adjoint().mul(&c).unwrap();
        for kind in StateKind::ALL {
            let f = StateFunctional::new(kind, theta.clone(), mirror.clone()).unwrap();
            let value = state_eval(&f, &cc).unwrap();
            negativity = negativity.max(-value.re);
            gap = gap.max((oracle::vacuum_state(kind, &cc) - value).norm());
            if let Some(norm) = oracle::gns_norm_sq(kind, &c) {
                gap = gap.max((Complex64::new(norm, 0.0) - value).norm());
            }
        }
    }
    outcome(
        negativity <= POSITIVITY_TOL && gap <= OPERATOR_TOL,
        format!("min value(c*c) = {:.2e} (tol -{POSITIVITY_TOL:.0e}); operator gap {gap:.2e} (tol {OPERATOR_TOL:.0e})", 0.0 - negativity),
    )
}

fn c11_integral_identities() -> Outcome {
    let theta = s("1/2 + 1/7*sqrt(5)");
    let spec = ActionSpec::torus(GroupKind::R2, s("sqrt(2)"), s("1/3"));
    let mut g = rng(SEED ^ 11);
    let mut adj: f64 = 0.0;
    let mut translation: f64 = 0.0;
    for i in 0..50i64 {
        let a = random_torus_element(&mut g, &theta, 4, 8);
        let size = rat(7 * i + 3, 5);
        let region = FolnerRegion::from_shape(RegionShape::Box, &size).unwrap();
        let lhs = ergodic_average(&a, &spec, &region).unwrap().adjoint();
        let rhs = ergodic_average(&a.adjoint(), &spec, &region).unwrap();
        adj = adj.max(lhs.distance(&rhs).unwrap());

        let f = s("sqrt(2)").scale(&rat(i - 25, 3));
        let start = rat(13 * i - 200, 9);
        let h = rat(400 - 11 * i, 7);
        let freq = Frequency(vec![f.clone()]);
        let here = char_average(&freq, &FolnerRegion::interval(start.clone(), size.clone()).unwrap()).unwrap();
        let there = char_average(&freq, &FolnerRegion::interval(&start - &h, size).unwrap()).unwrap();
        translation = translation.max((here - cis_2pi(&f.scale(&h)) * there).norm());
    }
    outcome(
        adj <= IDENTITY_TOL && translation <= IDENTITY_TOL,
        format!("adjoint/average {adj:.2e}, translation {translation:.2e} (tol {IDENTITY_TOL:.0e})"),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("commutation relation", c1_commutation),
        ("matrix oracle equivalence", c2_oracle),
        ("unique ergodicity of the gauge action", c3_unique_ergodicity),
        ("averaged coupling converges to the product", c4_product_limit),
        ("averaged mirror coupling converges to the relative joining", c5_relative_limit),
        ("conditional expectation as ergodic limit", c6_conditional_expectation),
        ("fixed-point certificate", c7_kernel),
        ("point-spectrum disjointness", c8_spectrum),
        ("dual-system correlation limit", c9_dual_system),
        ("state positivity", c10_positivity),
        ("adjoint and translation identities", c11_integral_identities),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        let status = if result.passed { "PASS" } else { "FAIL" };
        if !result.passed {
            failures += 1;
        }
        println!("{status} criterion {:>2} {name}: {}", i + 1, result.detail);
    }
    if failures == 0 {
        println!("acceptance: {} of {} criteria pass", criteria.len(), criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of {} criteria fail", criteria.len());
        ExitCode::FAILURE
    }
}
