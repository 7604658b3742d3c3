//! Tensor products `A_θ₁ ⊙ A_θ₂`, the couplings and joinings built from
//! them, and the convergence experiment for averaged couplings.
//!
//! Monomials `u^j v^k ⊗ w^l z^m` multiply factorwise: the left factor is
//! twisted by `θ₁`, the right by `θ₂`, and letters from different factors
//! commute.

pub mod oracle;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;

use crate::dynamics::{
    char_average, character_value, ActionSpec, CharacterKey, FolnerRegion, GroupElement,
    GroupKind,
};
use crate::error::{Error, Result};
use crate::qtorus::{accumulate, monomial_adjoint, monomial_mul, prune, Monomial, TorusElement};
use crate::report::ConvergenceRow;
use crate::surd::SurdScalar;

/// Deviations at or below this count as exact agreement in checks.
pub const CHECK_TOLERANCE: f64 = 1e-12;

/// `u^j v^k ⊗ w^l z^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorMonomial {
    pub j: i64,
    pub k: i64,
    pub l: i64,
    pub m: i64,
}

impl TensorMonomial {
    pub const UNIT: TensorMonomial = TensorMonomial::new(0, 0, 0, 0);

    pub const fn new(j: i64, k: i64, l: i64, m: i64) -> Self {
        TensorMonomial { j, k, l, m }
    }

    pub fn from_factors(left: Monomial, right: Monomial) -> Self {
        Self::new(left.m, left.n, right.m, right.n)
    }

    pub fn left(&self) -> Monomial {
        Monomial::new(self.j, self.k)
    }

    pub fn right(&self) -> Monomial {
        Monomial::new(self.l, self.m)
    }

    pub fn radius(&self) -> i64 {
        self.left().radius().max(self.right().radius())
    }

    pub fn degree(&self) -> i64 {
        self.j.abs() + self.k.abs() + self.l.abs() + self.m.abs()
    }
}

impl fmt::Display for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^{} v^{} w^{} z^{}", self.j, self.k, self.l, self.m)
    }
}

/// Element of the algebraic tensor product of two quantum tori.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement {
    theta1: SurdScalar,
    theta2: SurdScalar,
    terms: BTreeMap<TensorMonomial, Complex64>,
}

impl TensorElement {
    pub fn from_terms(
        theta1: SurdScalar,
        theta2: SurdScalar,
        terms: impl IntoIterator<Item = (TensorMonomial, Complex64)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut map, k, c);
        }
        prune(&mut map);
        TensorElement {
            theta1,
            theta2,
            terms: map,
        }
    }

    pub fn zero(theta1: SurdScalar, theta2: SurdScalar) -> Self {
        Self::from_terms(theta1, theta2, [])
    }

    pub fn one(theta1: SurdScalar, theta2: SurdScalar) -> Self {
        Self::monomial(theta1, theta2, TensorMonomial::UNIT)
    }

    pub fn monomial(theta1: SurdScalar, theta2: SurdScalar, mono: TensorMonomial) -> Self {
        Self::from_terms(theta1, theta2, [(mono, Complex64::new(1.0, 0.0))])
    }

    /// `a ⊗ b`.
    pub fn product(a: &TorusElement, b: &TorusElement) -> Self {
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                terms.push((TensorMonomial::from_factors(*ka, *kb), ca * cb));
            }
        }
        Self::from_terms(a.theta().clone(), b.theta().clone(), terms)
    }

    pub fn theta1(&self) -> &SurdScalar {
        &self.theta1
    }

    pub fn theta2(&self) -> &SurdScalar {
        &self.theta2
    }

    pub fn terms(&self) -> &BTreeMap<TensorMonomial, Complex64> {
        &self.terms
    }

    pub fn coeff(&self, mono: TensorMonomial) -> Complex64 {
        self.terms.get(&mono).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_radius(&self) -> i64 {
        self.terms.keys().map(TensorMonomial::radius).max().unwrap_or(0)
    }

    pub fn one_norm(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| acc + c.norm())
    }

    pub(crate) fn with_terms(&self, terms: BTreeMap<TensorMonomial, Complex64>) -> Self {
        let mut terms = terms;
        prune(&mut terms);
        TensorElement {
            theta1: self.theta1.clone(),
            theta2: self.theta2.clone(),
            terms,
        }
    }

    fn check_params(&self, other: &Self) -> Result<()> {
        if self.theta1 != other.theta1 || self.theta2 != other.theta2 {
            return Err(Error::parameter(format!(
                "deformation mismatch: ({}, {}) vs ({}, {})",
                self.theta1, self.theta2, other.theta1, other.theta2
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            accumulate(&mut terms, *k, *c);
        }
        Ok(self.with_terms(terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.with_terms(self.terms.iter().map(|(k, c)| (*k, c * factor)).collect())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let (pl, left) = monomial_mul(ka.left(), kb.left(), &self.theta1);
                let (pr, right) = monomial_mul(ka.right(), kb.right(), &self.theta2);
                accumulate(
                    &mut terms,
                    TensorMonomial::from_factors(left, right),
                    ca * cb * pl * pr,
                );
            }
        }
        Ok(self.with_terms(terms))
    }

    pub fn adjoint(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let (pl, left) = monomial_adjoint(k.left(), &self.theta1);
            let (pr, right) = monomial_adjoint(k.right(), &self.theta2);
            accumulate(
                &mut terms,
                TensorMonomial::from_factors(left, right),
                c.conj() * pl * pr,
            );
        }
        self.with_terms(terms)
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.one_norm())
    }

    /// Projection onto `C*(v) ⊙ C*(z)`: drops every monomial with `j ≠ 0`
    /// or `l ≠ 0`.
    pub fn relative_expectation(&self) -> Self {
        self.with_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.j == 0 && k.l == 0)
                .map(|(k, c)| (*k, *c))
                .collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StateKind {
    /// `μ ⊗ ν`: both canonical traces.
    ProductTrace,
    /// Vacuum state after projecting each factor onto `C*(v)` and `C*(z)`.
    KappaD,
    /// Diagonal coupling of `A_θ` with its mirror `A_{-θ}` acting on the same space.
    KappaDiag,
    /// Diagonal coupling precomposed with the relative expectation.
    OmegaRel,
}

impl StateKind {
    pub const ALL: [StateKind; 4] = [
        StateKind::ProductTrace,
        StateKind::KappaD,
        StateKind::KappaDiag,
        StateKind::OmegaRel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StateKind::ProductTrace => "product_trace",
            StateKind::KappaD => "kappa_D",
            StateKind::KappaDiag => "kappa_diag",
            StateKind::OmegaRel => "omega_rel",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Requires `θ₂ = −θ₁`.
    pub fn is_mirror(self) -> bool {
        matches!(self, StateKind::KappaDiag | StateKind::OmegaRel)
    }

    /// Value on a single monomial (each is 0 or 1).
    pub fn eval_monomial(self, t: &TensorMonomial) -> f64 {
        let hit = match self {
            StateKind::ProductTrace => *t == TensorMonomial::UNIT,
            StateKind::KappaD | StateKind::OmegaRel => t.j == 0 && t.l == 0 && t.k + t.m == 0,
            StateKind::KappaDiag => t.j + t.l == 0 && t.k + t.m == 0,
        };
        if hit {
            1.0
        } else {
            0.0
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A state on `A_θ₁ ⊙ A_θ₂` given by closed-form monomial rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateFunctional {
    kind: StateKind,
    theta1: SurdScalar,
    theta2: SurdScalar,
}

impl StateFunctional {
    pub fn new(kind: StateKind, theta1: SurdScalar, theta2: SurdScalar) -> Result<Self> {
        if kind.is_mirror() && theta2 != theta1.neg() {
            return Err(Error::parameter(format!(
                "{kind} requires theta2 = -theta1, got ({theta1}, {theta2})"
            )));
        }
        Ok(StateFunctional {
            kind,
            theta1,
            theta2,
        })
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn theta1(&self) -> &SurdScalar {
        &self.theta1
    }

    pub fn theta2(&self) -> &SurdScalar {
        &self.theta2
    }

    /// The joining the averaged coupling converges to: the product trace
    /// for `product_trace` and `kappa_D`, the relative joining for the
    /// mirror couplings.
    pub fn limit_joining(&self) -> StateFunctional {
        let kind = if self.kind.is_mirror() {
            StateKind::OmegaRel
        } else {
            StateKind::ProductTrace
        };
        StateFunctional {
            kind,
            theta1: self.theta1.clone(),
            theta2: self.theta2.clone(),
        }
    }

    fn check(&self, c: &TensorElement) -> Result<()> {
        if c.theta1 != self.theta1 || c.theta2 != self.theta2 {
            return Err(Error::parameter(format!(
                "{} on ({}, {}) applied to an element over ({}, {})",
                self.kind, self.theta1, self.theta2, c.theta1, c.theta2
            )));
        }
        Ok(())
    }
}

pub fn state_eval(functional: &StateFunctional, c: &TensorElement) -> Result<Complex64> {
    functional.check(c)?;
    Ok(c
        .terms
        .iter()
        .map(|(k, coeff)| coeff * functional.kind.eval_monomial(k))
        .sum())
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarginalReport {
    pub window: u32,
    pub evaluations: usize,
    pub max_deviation: f64,
}

impl MarginalReport {
    pub fn holds(&self) -> bool {
        self.max_deviation <= CHECK_TOLERANCE
    }
}

/// Compares `κ(a ⊗ 1)` and `κ(1 ⊗ b)` with the canonical traces for every
/// monomial `a`, `b` with exponents in `[-window, window]²`.
pub fn marginal_check(functional: &StateFunctional, window: u32) -> MarginalReport {
    let w = window as i64;
    let mut evaluations = 0;
    let mut max_deviation: f64 = 0.0;
    for m in -w..=w {
        for n in -w..=w {
            let mono = Monomial::new(m, n);
            let expected_left = TorusElement::monomial(functional.theta1.clone(), m, n).trace();
            let expected_right = TorusElement::monomial(functional.theta2.clone(), m, n).trace();
            let left = functional
                .kind
                .eval_monomial(&TensorMonomial::from_factors(mono, Monomial::UNIT));
            let right = functional
                .kind
                .eval_monomial(&TensorMonomial::from_factors(Monomial::UNIT, mono));
            max_deviation = max_deviation
                .max((expected_left - left).norm())
                .max((expected_right - right).norm());
            evaluations += 2;
        }
    }
    MarginalReport {
        window,
        evaluations,
        max_deviation,
    }
}

/// A monomial and group element at which a functional fails to be invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceWitness {
    pub monomial: TensorMonomial,
    pub sample: usize,
    pub before: Complex64,
    pub after: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub max_deviation: f64,
    /// Failing monomials, lowest degree first.
    pub witnesses: Vec<InvarianceWitness>,
}

impl InvarianceReport {
    pub fn is_invariant(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn witness_for(&self, monomial: TensorMonomial) -> Option<&InvarianceWitness> {
        self.witnesses.iter().find(|w| w.monomial == monomial)
    }
}

/// `|κ((α⊗β)_g(x)) − κ(x)|` over the sampled `g` and all monomials `x` with
/// exponents in `[-window, window]⁴`.
pub fn invariance_check(
    functional: &StateFunctional,
    spec: &ActionSpec,
    samples: &[GroupElement],
    window: u32,
) -> Result<InvarianceReport> {
    let w = window as i64;
    let mut max_deviation: f64 = 0.0;
    let mut witnesses = Vec::new();
    for j in -w..=w {
        for k in -w..=w {
            for l in -w..=w {
                for m in -w..=w {
                    let mono = TensorMonomial::new(j, k, l, m);
                    let value = functional.kind.eval_monomial(&mono);
                    if value == 0.0 {
                        continue;
                    }
                    let before = Complex64::new(value, 0.0);
                    let freq = mono.frequency(spec)?;
                    for (i, g) in samples.iter().enumerate() {
                        if g.dim() != spec.kind().dim() {
                            return Err(Error::parameter("sample dimension does not match action"));
                        }
                        let after = before * character_value(&freq, g)?;
                        let dev = (after - before).norm();
                        max_deviation = max_deviation.max(dev);
                        if dev > CHECK_TOLERANCE {
                            witnesses.push(InvarianceWitness {
                                monomial: mono,
                                sample: i,
                                before,
                                after,
                            });
                        }
                    }
                }
            }
        }
    }
    witnesses.sort_by_key(|w| (w.monomial.degree(), w.monomial, w.sample));
    Ok(InvarianceReport {
        max_deviation,
        witnesses,
    })
}

/// The exact set of zero-frequency monomials in a window.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelCertificate {
    pub window: u32,
    pub kind: GroupKind,
    pub zero_frequency: Vec<TensorMonomial>,
}

impl KernelCertificate {
    /// Only the unit has zero frequency.
    pub fn is_unit_only(&self) -> bool {
        self.zero_frequency == [TensorMonomial::UNIT]
    }

    /// The zero-frequency set is exactly `{(0, k, 0, m)}` over the window,
    /// i.e. the fixed points are generated by `v ⊗ 1` and `1 ⊗ z`.
    pub fn is_v_z_algebra(&self) -> bool {
        let side = (2 * self.window as usize) + 1;
        self.zero_frequency.len() == side * side
            && self.zero_frequency.iter().all(|t| t.j == 0 && t.l == 0)
    }
}

/// Enumerates every monomial with exponents in `[-window, window]⁴` and keeps
/// those whose frequency vanishes exactly.
pub fn kernel_certificate(spec: &ActionSpec, window: u32) -> Result<KernelCertificate> {
    let [c, d] = spec
        .right()
        .ok_or_else(|| Error::parameter("kernel certificate needs a tensor action"))?;
    let [p, q] = spec.left();
    let w = window as i64;
    // The first frequency component depends on (j, l) only, the second on (k, m).
    let mut first_zero = BTreeSet::new();
    let mut second_zero = BTreeSet::new();
    for a in -w..=w {
        for b in -w..=w {
            if p.mul_int(a).checked_add(&c.mul_int(b))?.is_zero() {
                first_zero.insert((a, b));
            }
            if q.mul_int(a).checked_add(&d.mul_int(b))?.is_zero() {
                second_zero.insert((a, b));
            }
        }
    }
    let two_dim = spec.kind() == GroupKind::R2;
    let mut zero_frequency = Vec::new();
    for j in -w..=w {
        for k in -w..=w {
            for l in -w..=w {
                for m in -w..=w {
                    if first_zero.contains(&(j, l)) && (!two_dim || second_zero.contains(&(k, m)))
                    {
                        zero_frequency.push(TensorMonomial::new(j, k, l, m));
                    }
                }
            }
        }
    }
    Ok(KernelCertificate {
        window,
        kind: spec.kind(),
        zero_frequency,
    })
}

/// `(1/|Λ|)∫_Λ κ((α⊗β)_g(c)) dg` for each region, next to the value of the
/// limiting joining on `c`.
pub fn disjointness_average(
    functional: &StateFunctional,
    c: &TensorElement,
    spec: &ActionSpec,
    regions: &[FolnerRegion],
) -> Result<Vec<ConvergenceRow>> {
    functional.check(c)?;
    let limit = state_eval(&functional.limit_joining(), c)?;
    let mut weighted = Vec::new();
    for (k, coeff) in &c.terms {
        let value = functional.kind.eval_monomial(k);
        if value != 0.0 {
            weighted.push((coeff * value, k.frequency(spec)?));
        }
    }
    regions
        .iter()
        .map(|region| {
            if region.group_kind() != spec.kind() {
                return Err(Error::parameter(format!(
                    "{} region for a {} action",
                    region.shape().name(),
                    spec.kind()
                )));
            }
            let mut value = Complex64::default();
            for (w, freq) in &weighted {
                value += w * char_average(freq, region)?;
            }
            Ok(ConvergenceRow::new(region.size(), value, limit))
        })
        .collect()
}
