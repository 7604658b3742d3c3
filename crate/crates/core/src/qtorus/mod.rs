//! Sparse algebra of the quantum torus `A_θ`.
//!
//! Elements are finite combinations of normal-ordered monomials `u^m v^n`
//! with complex coefficients. The commutation relation `uv = e^{2πiθ} vu`
//! gives the product rule
//!
//! ```text
//! u^m v^n · u^m' v^n' = e^{-2πiθ·n·m'} u^{m+m'} v^{n+n'}
//! ```
//!
//! and the involution `(u^m v^n)* = e^{-2πiθ·m·n} u^{-m} v^{-n}`.

pub mod rep;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::surd::{cis_2pi, SurdScalar};

/// Coefficients with modulus below this are dropped after every ring operation.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// The monomial `u^m v^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub m: i64,
    pub n: i64,
}

impl Monomial {
    pub const UNIT: Monomial = Monomial { m: 0, n: 0 };

    pub const fn new(m: i64, n: i64) -> Self {
        Monomial { m, n }
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::UNIT
    }

    /// Chebyshev radius `max(|m|, |n|)`.
    pub fn radius(&self) -> i64 {
        self.m.abs().max(self.n.abs())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^{} v^{}", self.m, self.n)
    }
}

/// Twisted product of two normal-ordered monomials.
pub fn monomial_mul(a: Monomial, b: Monomial, theta: &SurdScalar) -> (Complex64, Monomial) {
    let product = Monomial::new(a.m + b.m, a.n + b.n);
    let twist = a.n * b.m;
    if twist == 0 {
        return (Complex64::new(1.0, 0.0), product);
    }
    (cis_2pi(&theta.mul_int(-twist)), product)
}

/// Phase and image of `(u^m v^n)*`.
pub fn monomial_adjoint(a: Monomial, theta: &SurdScalar) -> (Complex64, Monomial) {
    let image = Monomial::new(-a.m, -a.n);
    let twist = a.m * a.n;
    if twist == 0 {
        return (Complex64::new(1.0, 0.0), image);
    }
    (cis_2pi(&theta.mul_int(-twist)), image)
}

pub(crate) fn prune<K: Ord>(terms: &mut BTreeMap<K, Complex64>) {
    terms.retain(|_, c| c.norm() >= PRUNE_THRESHOLD);
}

pub(crate) fn accumulate<K: Ord>(terms: &mut BTreeMap<K, Complex64>, key: K, c: Complex64) {
    *terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
}

/// An element of `A_θ` supported on finitely many monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement {
    theta: SurdScalar,
    terms: BTreeMap<Monomial, Complex64>,
}

impl TorusElement {
    pub fn zero(theta: SurdScalar) -> Self {
        TorusElement {
            theta,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(theta: SurdScalar) -> Self {
        Self::monomial(theta, 0, 0)
    }

    pub fn monomial(theta: SurdScalar, m: i64, n: i64) -> Self {
        Self::from_terms(theta, [(Monomial::new(m, n), Complex64::new(1.0, 0.0))])
    }

    pub fn u(theta: SurdScalar) -> Self {
        Self::monomial(theta, 1, 0)
    }

    pub fn v(theta: SurdScalar) -> Self {
        Self::monomial(theta, 0, 1)
    }

    /// Sums repeated monomials and prunes.
    pub fn from_terms(
        theta: SurdScalar,
        terms: impl IntoIterator<Item = (Monomial, Complex64)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut map, k, c);
        }
        prune(&mut map);
        TorusElement { theta, terms: map }
    }

    pub fn theta(&self) -> &SurdScalar {
        &self.theta
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Complex64> {
        &self.terms
    }

    pub fn coeff(&self, m: i64, n: i64) -> Complex64 {
        self.terms
            .get(&Monomial::new(m, n))
            .copied()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest Chebyshev radius over the support (0 for the zero element).
    pub fn support_radius(&self) -> i64 {
        self.terms.keys().map(Monomial::radius).max().unwrap_or(0)
    }

    /// `Σ|coeff|`, an upper bound on the operator norm.
    pub fn one_norm(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| acc + c.norm())
    }

    pub(crate) fn with_terms(&self, terms: BTreeMap<Monomial, Complex64>) -> Self {
        let mut terms = terms;
        prune(&mut terms);
        TorusElement {
            theta: self.theta.clone(),
            terms,
        }
    }

    fn check_theta(&self, other: &Self) -> Result<()> {
        if self.theta != other.theta {
            return Err(Error::parameter(format!(
                "deformation mismatch: theta = {} vs {}",
                self.theta, other.theta
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_theta(other)?;
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

    /// Bilinear extension of [`monomial_mul`].
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_theta(other)?;
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let (phase, k) = monomial_mul(*ka, *kb, &self.theta);
                accumulate(&mut terms, k, ca * cb * phase);
            }
        }
        Ok(self.with_terms(terms))
    }

    pub fn adjoint(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let (phase, image) = monomial_adjoint(*k, &self.theta);
            accumulate(&mut terms, image, c.conj() * phase);
        }
        self.with_terms(terms)
    }

    /// Canonical trace: the coefficient of the unit.
    pub fn trace(&self) -> Complex64 {
        self.terms
            .get(&Monomial::UNIT)
            .copied()
            .unwrap_or_default()
    }

    /// One-norm of `self − other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.one_norm())
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i) {k}", c.re, c.im)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::parse_scalar;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn monomial_rule_examples() {
        let theta = parse_scalar("1/7").unwrap();
        let (phase, k) = monomial_mul(Monomial::new(1, 0), Monomial::new(0, 1), &theta);
        assert_eq!(phase, c(1.0, 0.0));
        assert_eq!(k, Monomial::new(1, 1));

        let (phase, k) = monomial_mul(Monomial::new(0, 1), Monomial::new(1, 0), &theta);
        let expected = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / 7.0);
        assert!((phase - expected).norm() < 1e-15);
        assert_eq!(k, Monomial::new(1, 1));

        let quarter = parse_scalar("1/4").unwrap();
        let (phase, k) = monomial_mul(Monomial::new(0, 2), Monomial::new(3, 0), &quarter);
        assert!((phase - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(k, Monomial::new(3, 2));
    }

    #[test]
    fn unit_is_neutral_and_relation_holds() {
        let theta = parse_scalar("1/2 + 1/5*sqrt(2)").unwrap();
        let one = TorusElement::one(theta.clone());
        let a = TorusElement::from_terms(
            theta.clone(),
            [(Monomial::new(2, -1), c(0.5, 1.0)), (Monomial::new(0, 3), c(-2.0, 0.0))],
        );
        assert_eq!(one.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&one).unwrap(), a);

        let u = TorusElement::u(theta.clone());
        let v = TorusElement::v(theta.clone());
        let uv = u.mul(&v).unwrap();
        let vu = v.mul(&u).unwrap();
        let twisted = vu.scale(cis_2pi(&theta));
        assert!(uv.distance(&twisted).unwrap() <= 1e-12);
    }

    #[test]
    fn mismatched_theta_is_rejected() {
        let a = TorusElement::u(parse_scalar("1/5").unwrap());
        let b = TorusElement::v(parse_scalar("1/3").unwrap());
        assert!(matches!(a.mul(&b), Err(Error::Parameter(_))));
        assert!(matches!(a.add(&b), Err(Error::Parameter(_))));
    }

    #[test]
    fn adjoint_examples() {
        let theta = parse_scalar("1/5").unwrap();
        let one = TorusElement::one(theta.clone());
        assert_eq!(one.adjoint(), one);

        let uv = TorusElement::monomial(theta.clone(), 1, 1);
        let adj = uv.adjoint();
        let expected = TorusElement::from_terms(
            theta.clone(),
            [(Monomial::new(-1, -1), cis_2pi(&theta.neg()))],
        );
        assert!(adj.distance(&expected).unwrap() < 1e-15);

        let a = TorusElement::from_terms(
            theta.clone(),
            [(Monomial::new(1, 0), c(1.0, 0.0)), (Monomial::new(0, 1), c(0.0, 1.0))],
        );
        let expected = TorusElement::from_terms(
            theta,
            [(Monomial::new(-1, 0), c(1.0, 0.0)), (Monomial::new(0, -1), c(0.0, -1.0))],
        );
        assert_eq!(a.adjoint(), expected);
    }

    #[test]
    fn trace_examples() {
        let theta = parse_scalar("1/3").unwrap();
        assert_eq!(TorusElement::one(theta.clone()).trace(), c(1.0, 0.0));
        assert_eq!(TorusElement::monomial(theta.clone(), 2, -1).trace(), c(0.0, 0.0));
        let a = TorusElement::u(theta.clone()).add(&TorusElement::v(theta)).unwrap();
        let tr = a.adjoint().mul(&a).unwrap().trace();
        assert!((tr - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn commutative_degeneration() {
        let theta = SurdScalar::zero();
        let a = TorusElement::from_terms(
            theta.clone(),
            [(Monomial::new(1, 2), c(1.0, -1.0)), (Monomial::new(-3, 1), c(0.25, 0.0))],
        );
        let b = TorusElement::from_terms(
            theta,
            [(Monomial::new(2, -1), c(0.0, 2.0)), (Monomial::new(0, 1), c(1.5, 0.5))],
        );
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        assert!(ab.distance(&ba).unwrap() <= 1e-12);
    }

    #[test]
    fn pruning_drops_dust() {
        let theta = SurdScalar::zero();
        let a = TorusElement::from_terms(
            theta,
            [(Monomial::new(1, 0), c(1e-16, 0.0)), (Monomial::new(0, 1), c(1.0, 0.0))],
        );
        assert_eq!(a.len(), 1);
        assert!(a.sub(&a).unwrap().is_zero());
    }
}
