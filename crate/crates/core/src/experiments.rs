//! Experiment runners behind the command-line tool: convergence tables
//! written as CSV, and the property suites of `verify`.

use std::fmt;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::config::{ExperimentConfig, Observable};
use crate::dynamics::{
    Observable as DynObservable,
    apply_action, char_average, conditional_expectation, ergodic_average, folner_defect,
    point_spectrum, spectrum_intersection, ActionSpec, FolnerRegion, Frequency, GroupElement,
    GroupKind,
};
use crate::error::{Error, Result};
use crate::group::{
    cesaro_mean, correlation_experiment, correlation_average, finite_orbit_expectation,
    mixing_decay, trace_product, DualSystemConfig, GroupObservable, Word,
};
use crate::qtorus::rep::compare_with_oracle;
use crate::qtorus::TorusElement;
use crate::report::ConvergenceRow;
use crate::sampling::{
    random_group_observable, random_tensor_element, random_torus_element, random_word, rng,
};
use crate::surd::{cis_2pi, parse_scalar, rat, Rational, SurdScalar};
use crate::tensor::{
    disjointness_average, invariance_check, kernel_certificate, marginal_check, oracle,
    state_eval, StateFunctional, StateKind, TensorMonomial,
};

pub const CSV_HEADER: &str = "size,re_value,im_value,re_limit,im_limit,abs_error";

/// One CSV line of a convergence table.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub size: Rational,
    pub value: Complex64,
    pub limit: Complex64,
    pub abs_error: f64,
}

impl From<ConvergenceRow> for ResultRow {
    fn from(row: ConvergenceRow) -> Self {
        ResultRow {
            size: row.size,
            value: row.value,
            limit: row.limit,
            abs_error: row.abs_error,
        }
    }
}

fn real(x: f64) -> String {
    // 17 significant digits; `+ 0.0` folds -0 into 0.
    format!("{:.16e}", x + 0.0)
}

impl fmt::Display for ResultRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let size = if self.size.is_integer() {
            self.size.to_integer().to_string()
        } else {
            real(self.size.to_f64().unwrap_or(f64::NAN))
        };
        write!(
            f,
            "{size},{},{},{},{},{}",
            real(self.value.re),
            real(self.value.im),
            real(self.limit.re),
            real(self.limit.im),
            real(self.abs_error)
        )
    }
}

pub fn render_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_csv(path: &Path, rows: &[ResultRow]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(render_csv(rows).as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn action(config: &ExperimentConfig) -> Result<&ActionSpec> {
    config
        .action
        .as_ref()
        .ok_or_else(|| Error::parameter(format!("{} has no character action", config.kind)))
}

/// `τ(x* y) = Σ conj(x_k) y_k`: monomials are orthonormal for the trace
/// (the product trace on tensors).
fn inner<E: DynObservable>(x: &E, y: &E) -> Complex64 {
    let y = y.term_map();
    x.term_map()
        .iter()
        .filter_map(|(k, c)| y.get(k).map(|d| c.conj() * d))
        .sum()
}

/// Per region size: `⟨a, A_Λ(a)⟩ / ⟨a, a⟩` next to `⟨a, E(a)⟩ / ⟨a, a⟩`.
pub fn run_average(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let spec = action(config)?;
    let regions = config.regions()?;
    match &config.observable {
        Observable::Torus(a) => average_rows(a, spec, &regions),
        Observable::Tensor(c) => average_rows(c, spec, &regions),
        Observable::Group { .. } => Err(Error::parameter("average needs a torus system")),
    }
}

fn average_rows<E: DynObservable>(
    a: &E,
    spec: &ActionSpec,
    regions: &[FolnerRegion],
) -> Result<Vec<ResultRow>> {
    let norm = inner(a, a);
    if norm.re == 0.0 {
        return Err(Error::parameter("observable is zero"));
    }
    let limit = inner(a, &conditional_expectation(a, spec)?) / norm;
    regions
        .iter()
        .map(|r| {
            let value = inner(a, &ergodic_average(a, spec, r)?) / norm;
            Ok(ConvergenceRow::new(r.size(), value, limit).into())
        })
        .collect()
}

pub fn run_disjoint(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let spec = action(config)?;
    let Observable::Tensor(c) = &config.observable else {
        return Err(Error::parameter("disjoint needs qtorus_pair or qtorus_mirror"));
    };
    let functional = config
        .functional
        .as_ref()
        .ok_or_else(|| Error::parameter("disjoint needs [functional] kind"))?;
    Ok(disjointness_average(functional, c, spec, &config.regions()?)?
        .into_iter()
        .map(ResultRow::from)
        .collect())
}

pub fn run_group(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let (Observable::Group { a, b }, Some(dual)) = (&config.observable, &config.dual) else {
        return Err(Error::parameter("group needs a group_dual system"));
    };
    Ok(correlation_experiment(a, b, dual, &config.integer_sizes()?)?
        .into_iter()
        .map(ResultRow::from)
        .collect())
}

/// Result of one invariant in a property suite.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub id: &'static str,
    pub deviation: f64,
    pub passed: bool,
}

impl Check {
    fn within(suite: &'static str, id: &'static str, deviation: f64, tolerance: f64) -> Self {
        Check {
            suite,
            id,
            deviation,
            passed: deviation <= tolerance,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {} {:.3e}", self.suite, self.id, self.deviation + 0.0)
    }
}

pub const SUITES: [&str; 5] = ["qtorus", "oracle", "dynamics", "tensor", "group"];

pub fn verify(suite: Option<&str>, seed: u64) -> Result<Vec<Check>> {
    let selected: Vec<&str> = match suite {
        Some(name) if SUITES.contains(&name) => vec![name],
        Some(name) => {
            return Err(Error::parameter(format!(
                "unknown suite '{name}', expected one of {}",
                SUITES.join(", ")
            )))
        }
        None => SUITES.to_vec(),
    };
    let mut checks = Vec::new();
    for name in selected {
        checks.extend(match name {
            "qtorus" => qtorus_suite(seed)?,
            "oracle" => vec![oracle_check(&parse_scalar("1/5")?, 16, 10, seed)?],
            "dynamics" => dynamics_suite(seed)?,
            "tensor" => tensor_suite(seed)?,
            _ => group_suite(seed)?,
        });
    }
    Ok(checks)
}

fn s(text: &str) -> SurdScalar {
    parse_scalar(text).expect("literal")
}

fn qtorus_suite(seed: u64) -> Result<Vec<Check>> {
    const SUITE: &str = "qtorus";
    let mut r = rng(seed);
    let mut commutation: f64 = 0.0;
    for theta in ["0", "1/4", "1/3", "1/2 + 1/5*sqrt(2)"] {
        let theta = s(theta);
        let u = TorusElement::u(theta.clone());
        let v = TorusElement::v(theta.clone());
        let gap = u.mul(&v)?.sub(&v.mul(&u)?.scale(cis_2pi(&theta)))?;
        commutation = commutation.max(gap.one_norm());
    }

    let theta = s("1/2 + 1/7*sqrt(5)");
    let (mut assoc, mut involution, mut tracial, mut positive, mut unit): (f64, f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0, 0.0);
    let one = TorusElement::one(theta.clone());
    for _ in 0..20 {
        let a = random_torus_element(&mut r, &theta, 3, 6);
        let b = random_torus_element(&mut r, &theta, 3, 6);
        let c = random_torus_element(&mut r, &theta, 3, 6);
        let scale = a.one_norm() * b.one_norm() * c.one_norm();
        assoc = assoc.max(a.mul(&b)?.mul(&c)?.distance(&a.mul(&b.mul(&c)?)?)? / scale);
        let ab = a.mul(&b)?;
        involution = involution
            .max(ab.adjoint().distance(&b.adjoint().mul(&a.adjoint())?)?)
            .max(a.adjoint().adjoint().distance(&a)?);
        tracial = tracial.max((ab.trace() - b.mul(&a)?.trace()).norm());
        let aa = a.adjoint().mul(&a)?.trace();
        positive = positive.max((-aa.re).max(0.0)).max(aa.im.abs());
        unit = unit.max(one.mul(&a)?.distance(&a)?).max(a.mul(&one)?.distance(&a)?);
    }
    Ok(vec![
        Check::within(SUITE, "commutation_relation", commutation, 1e-12),
        Check::within(SUITE, "associativity", assoc, 1e-12),
        Check::within(SUITE, "involution", involution, 1e-12),
        Check::within(SUITE, "trace_tracial", tracial, 1e-12),
        Check::within(SUITE, "trace_positive", positive, 1e-12),
        Check::within(SUITE, "unit", unit, 0.0),
    ])
}

/// Max deviation between symbolic and truncated-matrix `mul`, `adjoint`,
/// `trace` over seeded pairs with support in `[-4, 4]²`.
pub fn oracle_deviation(
    theta: &SurdScalar,
    truncation: usize,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let mut r = rng(seed);
    let radius = (truncation as i64 / 4).clamp(1, 4);
    let mut worst = crate::qtorus::rep::OracleDeviation::default();
    for _ in 0..samples {
        let a = random_torus_element(&mut r, theta, radius, 8);
        let b = random_torus_element(&mut r, theta, radius, 8);
        worst = worst.merge(compare_with_oracle(&a, &b, truncation)?);
    }
    Ok(worst.max())
}

pub fn oracle_check(theta: &SurdScalar, truncation: usize, samples: usize, seed: u64) -> Result<Check> {
    let dev = oracle_deviation(theta, truncation, samples, seed)?;
    Ok(Check::within("oracle", "matrix_equivalence", dev, 1e-9))
}

fn random_group_element<R: Rng>(r: &mut R, kind: GroupKind) -> GroupElement {
    let mut part = || -> Rational {
        if kind == GroupKind::Z {
            Rational::from_integer(r.gen_range(-50..=50).into())
        } else {
            rat(r.gen_range(-5000..=5000), r.gen_range(1..=97))
        }
    };
    GroupElement((0..kind.dim()).map(|_| part()).collect())
}

fn dynamics_suite(seed: u64) -> Result<Vec<Check>> {
    const SUITE: &str = "dynamics";
    let mut r = rng(seed ^ 0x5eed);
    let theta = s("1/5");
    let specs = [
        ActionSpec::gauge(),
        // α_s = τ_{s, 0}
        ActionSpec::torus(GroupKind::R, SurdScalar::one(), SurdScalar::one()),
        ActionSpec::torus(GroupKind::R2, s("sqrt(2)"), s("sqrt(3)")),
        ActionSpec::torus(GroupKind::Z, s("sqrt(2)"), s("1/3")),
    ];
    let (mut hom, mut star, mut idem, mut inv, mut unital, mut nonexp, mut limit, mut shift, mut adj) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for spec in &specs {
        let one = TorusElement::one(theta.clone());
        unital = unital.max(conditional_expectation(&one, spec)?.distance(&one)?);
        let big = match spec.kind() {
            GroupKind::R2 => FolnerRegion::from_shape(crate::dynamics::RegionShape::Box, &rat(10_000, 1))?,
            GroupKind::R => FolnerRegion::from_shape(crate::dynamics::RegionShape::Interval, &rat(10_000, 1))?,
            GroupKind::Z => FolnerRegion::from_shape(crate::dynamics::RegionShape::IntegerRange, &rat(10_000, 1))?,
        };
        for _ in 0..10 {
            let a = random_torus_element(&mut r, &theta, 4, 6);
            let b = random_torus_element(&mut r, &theta, 4, 6);
            let g = random_group_element(&mut r, spec.kind());
            let ga = apply_action(&a, &g, spec)?;
            let lhs = apply_action(&a.mul(&b)?, &g, spec)?;
            hom = hom.max(lhs.distance(&ga.mul(&apply_action(&b, &g, spec)?)?)?);
            star = star.max(apply_action(&a.adjoint(), &g, spec)?.distance(&ga.adjoint())?);

            let e = conditional_expectation(&a, spec)?;
            idem = idem.max(conditional_expectation(&e, spec)?.distance(&e)?);
            inv = inv
                .max(conditional_expectation(&ga, spec)?.distance(&e)?)
                .max(apply_action(&e, &g, spec)?.distance(&e)?);
            nonexp = nonexp.max((e.one_norm() - a.one_norm()).max(0.0));
            if spec.kind() != GroupKind::Z {
                // Z with an irrational multiplier has no uniform frequency gap.
                limit = limit.max(ergodic_average(&a, spec, &big)?.distance(&e)?);
            }

            let size = rat(r.gen_range(1..=200), r.gen_range(1..=7));
            let shape = big.shape();
            let size = if spec.kind() == GroupKind::Z { Rational::from_integer(size.to_integer().max(1.into())) } else { size };
            let region = FolnerRegion::from_shape(shape, &size)?;
            let h = random_group_element(&mut r, spec.kind());
            let diff = a.sub(&apply_action(&a, &h, spec)?)?;
            let bound = folner_defect(&region, &h)? * a.one_norm();
            shift = shift.max(ergodic_average(&diff, spec, &region)?.one_norm() - bound);

            adj = adj.max(
                ergodic_average(&a, spec, &region)?
                    .adjoint()
                    .distance(&ergodic_average(&a.adjoint(), spec, &region)?)?,
            );
        }
    }
    Ok(vec![
        Check::within(SUITE, "action_homomorphism", hom, 1e-12),
        Check::within(SUITE, "action_star", star, 1e-12),
        Check::within(SUITE, "expectation_idempotent", idem, 0.0),
        Check::within(SUITE, "expectation_invariant", inv, 0.0),
        Check::within(SUITE, "expectation_unital", unital, 0.0),
        Check::within(SUITE, "expectation_nonexpansive", nonexp, 0.0),
        Check::within(SUITE, "average_limit", limit, 1e-3),
        Check::within(SUITE, "shift_stability", shift.max(0.0), 1e-12),
        Check::within(SUITE, "adjoint_average", adj, 1e-12),
        Check::within(SUITE, "translation_identity", translation_deviation(&mut r, 50)?, 1e-12),
    ])
}

/// `|A_{[a,a+T]}(f) − e^{2πifh} A_{[a−h,a−h+T]}(f)|` over seeded cases.
pub fn translation_deviation<R: Rng>(r: &mut R, cases: usize) -> Result<f64> {
    let surds = [s("sqrt(2)"), s("1/3*sqrt(2)"), s("-1/2 + sqrt(2)")];
    let mut worst: f64 = 0.0;
    for i in 0..cases {
        let f = surds[i % surds.len()].scale(&rat(r.gen_range(-9..=9), r.gen_range(1..=5)));
        let start = rat(r.gen_range(-400..=400), r.gen_range(1..=9));
        let length = rat(r.gen_range(1..=400), r.gen_range(1..=9));
        let h = rat(r.gen_range(-400..=400), r.gen_range(1..=9));
        let freq = Frequency(vec![f.clone()]);
        let lhs = char_average(&freq, &FolnerRegion::interval(start.clone(), length.clone())?)?;
        let shifted = FolnerRegion::interval(&start - &h, length)?;
        let rhs = cis_2pi(&f.scale(&h)) * char_average(&freq, &shifted)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// `max(0, −Re κ(c*c))` and the gap to the operator evaluation, over all
/// four functionals.
pub fn positivity_deviation(samples: usize, seed: u64) -> Result<(f64, f64)> {
    let mut r = rng(seed ^ 0x9051);
    let theta = s("1/5");
    let mirror = theta.neg();
    let mut negativity: f64 = 0.0;
    let mut oracle_gap: f64 = 0.0;
    for _ in 0..samples {
        let c = random_tensor_element(&mut r, &theta, &mirror, 3, 8);
        let cc = c.adjoint().mul(&c)?;
        for kind in StateKind::ALL {
            let f = StateFunctional::new(kind, theta.clone(), mirror.clone())?;
            let value = state_eval(&f, &cc)?;
            negativity = negativity.max(-value.re).max(value.im.abs());
            let operator = oracle::vacuum_state(kind, &cc);
            oracle_gap = oracle_gap.max((operator - value).norm());
            if let Some(norm) = oracle::gns_norm_sq(kind, &c) {
                oracle_gap = oracle_gap.max((norm - value.re).abs());
            }
        }
    }
    Ok((negativity.max(0.0), oracle_gap))
}

fn tensor_suite(seed: u64) -> Result<Vec<Check>> {
    const SUITE: &str = "tensor";
    let theta = s("1/5");
    let mirror = theta.neg();
    let mut marginal: f64 = 0.0;
    for kind in StateKind::ALL {
        let f = StateFunctional::new(kind, theta.clone(), mirror.clone())?;
        marginal = marginal.max(marginal_check(&f, 6).max_deviation);
    }
    let (negativity, oracle_gap) = positivity_deviation(20, seed)?;

    let mut r = rng(seed ^ 0x7e5);
    let pair = ActionSpec::tensor(GroupKind::R2, (s("1"), s("1")), (s("sqrt(2)"), s("sqrt(3)")));
    let relative = ActionSpec::tensor(GroupKind::R, (s("1"), s("1")), (s("sqrt(2)"), s("1")));
    let samples2: Vec<_> = (0..4).map(|_| random_group_element(&mut r, GroupKind::R2)).collect();
    let samples1: Vec<_> = (0..4).map(|_| random_group_element(&mut r, GroupKind::R)).collect();
    let product = StateFunctional::new(StateKind::ProductTrace, theta.clone(), s("sqrt(3)"))?;
    let kappa_d = StateFunctional::new(StateKind::KappaD, theta.clone(), s("sqrt(3)"))?;
    let omega = StateFunctional::new(StateKind::OmegaRel, theta.clone(), mirror.clone())?;
    let product_inv = invariance_check(&product, &pair, &samples2, 3)?;
    let omega_inv = invariance_check(&omega, &relative, &samples1, 3)?;
    let kappa_inv = invariance_check(&kappa_d, &pair, &samples2, 2)?;
    let witness = kappa_inv.witness_for(TensorMonomial::new(0, 1, 0, -1));

    let unit_only = kernel_certificate(&pair, 8)?.is_unit_only();
    let v_z = kernel_certificate(&relative, 8)?.is_v_z_algebra();
    let sa = point_spectrum(&ActionSpec::torus(GroupKind::R2, s("1"), s("1")), 8)?;
    let sb = point_spectrum(&ActionSpec::torus(GroupKind::R2, s("sqrt(2)"), s("sqrt(3)")), 8)?;
    let common = spectrum_intersection(&sa, &sb);
    let spectrum_ok = common == [(SurdScalar::zero(), SurdScalar::zero())];

    let flag = |ok: bool| if ok { 0.0 } else { 1.0 };
    Ok(vec![
        Check::within(SUITE, "marginals", marginal, 1e-12),
        Check::within(SUITE, "positivity", negativity, 1e-12),
        Check::within(SUITE, "operator_oracle", oracle_gap, 1e-9),
        Check::within(SUITE, "product_trace_invariant", product_inv.max_deviation, 1e-12),
        Check::within(SUITE, "omega_rel_invariant", omega_inv.max_deviation, 1e-12),
        Check {
            suite: SUITE,
            id: "kappa_D_witness",
            deviation: witness.map_or(0.0, |w| (w.after - w.before).norm()),
            passed: witness.is_some(),
        },
        Check::within(SUITE, "kernel_unit_only", flag(unit_only), 0.0),
        Check::within(SUITE, "kernel_v_z", flag(v_z), 0.0),
        Check::within(SUITE, "spectrum_intersection", flag(spectrum_ok), 0.0),
    ])
}

fn group_suite(seed: u64) -> Result<Vec<Check>> {
    const SUITE: &str = "group";
    let mut r = rng(seed ^ 0x6209);
    let config = DualSystemConfig::increasing_cycles(3);
    let t = config.t();
    let (mut reduce, mut length, mut inverse) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..200 {
        let w = random_word(&mut r, 9, 6, 10);
        reduce = reduce.max(if Word::reduce(w.letters().to_vec()) == w { 0.0 } else { 1.0 });
        let tw = t.apply(&w);
        length = length.max((tw.len() as f64 - w.len() as f64).abs());
        inverse = inverse.max(if t.apply(&w.inverse()) == tw.inverse() { 0.0 } else { 1.0 });
    }
    let unit = GroupObservable::unit();
    let (mut tracial, mut idem, mut commute, mut trace_pres) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let unital = finite_orbit_expectation(&unit, &config).distance(&unit);
    for _ in 0..50 {
        let a = random_group_observable(&mut r, 9, 4, 4, 6);
        let b = random_group_observable(&mut r, 9, 4, 4, 6);
        tracial = tracial.max((trace_product(&a, &b) - trace_product(&b, &a)).norm());
        let d = finite_orbit_expectation(&a, &config);
        idem = idem.max(finite_orbit_expectation(&d, &config).distance(&d));
        commute = commute.max(
            finite_orbit_expectation(&a.transform(t, 1), &config).distance(&d.transform(t, 1)),
        );
        trace_pres = trace_pres.max((trace_product(&d, &unit) - trace_product(&a, &unit)).norm());
    }

    let mut correlation_gap: f64 = 0.0;
    for (g, h) in [("s1", "s1^-1"), ("t0", "t0^-1"), ("s1 t0", "t0^-1 s1^-1")] {
        let a = GroupObservable::basis(g.parse()?);
        let b = GroupObservable::basis(h.parse()?);
        for row in correlation_experiment(&a, &b, &config, &[1, 10, 100])? {
            correlation_gap = correlation_gap.max(row.abs_error);
        }
        let direct = correlation_average(&a, &b, &config, 7)?;
        let target = trace_product(
            &finite_orbit_expectation(&a, &config),
            &finite_orbit_expectation(&b, &config),
        );
        correlation_gap = correlation_gap.max((direct - target).norm());
    }

    let mut cesaro: f64 = 0.0;
    for shift in 1..=20 {
        let g: Word = "t0 s2 t3^-1".parse()?;
        let h = t.apply_power(&g, shift);
        let hits = mixing_decay(&g, &h, &config, 100);
        for n in 1..=100 {
            cesaro = cesaro.max(cesaro_mean(&hits, n) - 1.0 / n as f64);
        }
        let count: u32 = hits.iter().map(|&x| x as u32).sum();
        cesaro = cesaro.max((count as f64 - 1.0).abs());
    }
    let mut period: f64 = 0.0;
    for (i, len) in [(1, 2), (2, 2), (3, 3), (4, 3), (5, 3), (6, 4), (7, 4), (8, 4), (9, 4)] {
        let w = Word::reduce([crate::group::Letter::s(i)]);
        if t.orbit_period(&w, 10_000) != Some(len) {
            period = 1.0;
        }
    }

    Ok(vec![
        Check::within(SUITE, "reduce_idempotent", reduce, 0.0),
        Check::within(SUITE, "length_preserved", length, 0.0),
        Check::within(SUITE, "inverse_compatible", inverse, 0.0),
        Check::within(SUITE, "trace_tracial", tracial, 1e-12),
        Check::within(SUITE, "expectation_unital", unital, 0.0),
        Check::within(SUITE, "expectation_idempotent", idem, 0.0),
        Check::within(SUITE, "expectation_commutes_with_action", commute, 0.0),
        Check::within(SUITE, "expectation_trace_preserving", trace_pres, 1e-12),
        Check::within(SUITE, "correlation_limit", correlation_gap, 0.0),
        Check::within(SUITE, "cesaro_decay", cesaro.max(0.0), 1e-15),
        Check::within(SUITE, "cycle_periods", period, 0.0),
    ])
}
