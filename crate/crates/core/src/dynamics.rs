//! Character actions of ℤ, ℝ and ℝ² on torus and tensor elements,
//! Følner regions and closed-form ergodic averages.
//!
//! Every action in scope multiplies each monomial by a character
//! `g ↦ e^{2πi⟨f, g⟩}`, where the frequency vector `f` is an exact
//! [`SurdScalar`] combination of exponents and multipliers. Averages of
//! characters over intervals, boxes and integer ranges have closed forms, so
//! the Bochner average of `g ↦ α_g(a)` is computed exactly up to rounding.

use std::collections::{BTreeMap, HashSet};
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qtorus::{Monomial, TorusElement};
use crate::surd::{cis_2pi, rat, sin_pi, Rational, SurdScalar};
use crate::tensor::{TensorElement, TensorMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Z,
    R,
    R2,
}

impl GroupKind {
    pub fn dim(self) -> usize {
        match self {
            GroupKind::Z | GroupKind::R => 1,
            GroupKind::R2 => 2,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Z => "Z",
            GroupKind::R => "R",
            GroupKind::R2 => "R2",
        })
    }
}

/// Frequency multipliers of a character action.
///
/// On a torus, `u^m v^n` has frequency `(m·p, n·q)`. On a tensor product,
/// `u^j v^k ⊗ w^l z^m` has frequency `(j·p + l·c, k·q + m·d)`. One-parameter
/// groups keep only the first component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    kind: GroupKind,
    left: [SurdScalar; 2],
    right: Option<[SurdScalar; 2]>,
}

impl ActionSpec {
    pub fn torus(kind: GroupKind, p: SurdScalar, q: SurdScalar) -> Self {
        ActionSpec {
            kind,
            left: [p, q],
            right: None,
        }
    }

    pub fn tensor(
        kind: GroupKind,
        (p, q): (SurdScalar, SurdScalar),
        (c, d): (SurdScalar, SurdScalar),
    ) -> Self {
        ActionSpec {
            kind,
            left: [p, q],
            right: Some([c, d]),
        }
    }

    /// The gauge action `τ` itself: `p = q = 1` on ℝ².
    pub fn gauge() -> Self {
        Self::torus(GroupKind::R2, SurdScalar::one(), SurdScalar::one())
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn left(&self) -> &[SurdScalar; 2] {
        &self.left
    }

    pub fn right(&self) -> Option<&[SurdScalar; 2]> {
        self.right.as_ref()
    }

    pub fn is_tensor(&self) -> bool {
        self.right.is_some()
    }

    /// All multipliers used by the group are nonzero.
    pub fn multipliers_nonzero(&self) -> bool {
        let used = self.kind.dim();
        let left = self.left[..used].iter().all(|x| !x.is_zero());
        let right = self
            .right
            .as_ref()
            .is_none_or(|r| r[..used].iter().all(|x| !x.is_zero()));
        left && right
    }
}

/// Exact frequency vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frequency(pub Vec<SurdScalar>);

impl Frequency {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(SurdScalar::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[SurdScalar] {
        &self.0
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A monomial type carrying a character under an [`ActionSpec`].
pub trait CharacterKey: Copy + Ord {
    fn frequency(&self, spec: &ActionSpec) -> Result<Frequency>;
}

impl CharacterKey for Monomial {
    fn frequency(&self, spec: &ActionSpec) -> Result<Frequency> {
        if spec.is_tensor() {
            return Err(Error::parameter("torus element under a tensor action"));
        }
        let [p, q] = spec.left();
        let first = p.mul_int(self.m);
        Ok(match spec.kind() {
            GroupKind::R2 => Frequency(vec![first, q.mul_int(self.n)]),
            GroupKind::R | GroupKind::Z => Frequency(vec![first]),
        })
    }
}

impl CharacterKey for TensorMonomial {
    fn frequency(&self, spec: &ActionSpec) -> Result<Frequency> {
        let [c, d] = spec
            .right()
            .ok_or_else(|| Error::parameter("tensor element under a torus action"))?;
        let [p, q] = spec.left();
        let first = p.mul_int(self.j).checked_add(&c.mul_int(self.l))?;
        Ok(match spec.kind() {
            GroupKind::R2 => {
                let second = q.mul_int(self.k).checked_add(&d.mul_int(self.m))?;
                Frequency(vec![first, second])
            }
            GroupKind::R | GroupKind::Z => Frequency(vec![first]),
        })
    }
}

/// Sparse elements whose coefficients the actions rescale.
pub trait Observable: Sized {
    type Key: CharacterKey;

    fn term_map(&self) -> &BTreeMap<Self::Key, Complex64>;

    /// Same parameters, new (pruned) coefficients.
    fn with_term_map(&self, terms: BTreeMap<Self::Key, Complex64>) -> Self;
}

impl Observable for TorusElement {
    type Key = Monomial;

    fn term_map(&self) -> &BTreeMap<Monomial, Complex64> {
        self.terms()
    }

    fn with_term_map(&self, terms: BTreeMap<Monomial, Complex64>) -> Self {
        self.with_terms(terms)
    }
}

impl Observable for TensorElement {
    type Key = TensorMonomial;

    fn term_map(&self) -> &BTreeMap<TensorMonomial, Complex64> {
        self.terms()
    }

    fn with_term_map(&self, terms: BTreeMap<TensorMonomial, Complex64>) -> Self {
        self.with_terms(terms)
    }
}

/// A point of ℤ, ℝ or ℝ² with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement(pub Vec<Rational>);

impl GroupElement {
    pub fn zero(dim: usize) -> Self {
        GroupElement(vec![Rational::zero(); dim])
    }

    pub fn from_ratios(parts: &[(i64, i64)]) -> Self {
        GroupElement(parts.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn from_integers(parts: &[i64]) -> Self {
        GroupElement(
            parts
                .iter()
                .map(|&n| Rational::from_integer(n.into()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    fn check(&self, kind: GroupKind) -> Result<()> {
        if self.dim() != kind.dim() {
            return Err(Error::parameter(format!(
                "group element of dimension {} for a {kind} action",
                self.dim()
            )));
        }
        if kind == GroupKind::Z && !self.0.iter().all(|x| x.is_integer()) {
            return Err(Error::parameter("non-integer element of Z"));
        }
        Ok(())
    }
}

/// `e^{2πi⟨f, g⟩}`, one exact range reduction per component.
pub fn character_value(freq: &Frequency, g: &GroupElement) -> Result<Complex64> {
    if freq.dim() != g.dim() {
        return Err(Error::parameter(format!(
            "frequency of dimension {} paired with group element of dimension {}",
            freq.dim(),
            g.dim()
        )));
    }
    Ok(freq
        .0
        .iter()
        .zip(&g.0)
        .map(|(f, x)| cis_2pi(&f.scale(x)))
        .product())
}

/// `α_g(a)`: every coefficient times its character at `g`.
pub fn apply_action<E: Observable>(a: &E, g: &GroupElement, spec: &ActionSpec) -> Result<E> {
    g.check(spec.kind())?;
    let mut terms = BTreeMap::new();
    for (k, c) in a.term_map() {
        let freq = k.frequency(spec)?;
        terms.insert(*k, c * character_value(&freq, g)?);
    }
    Ok(a.with_term_map(terms))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionShape {
    /// `[0, T]`
    Interval,
    /// `[-T, T]`
    SymmetricInterval,
    /// `[0, T]²`
    Box,
    /// `[-T, T]²`
    SymmetricBox,
    /// `{1, …, N}`
    IntegerRange,
    /// `{-N, …, N}`
    SymmetricRange,
}

impl RegionShape {
    pub fn group_kind(self) -> GroupKind {
        match self {
            RegionShape::Interval | RegionShape::SymmetricInterval => GroupKind::R,
            RegionShape::Box | RegionShape::SymmetricBox => GroupKind::R2,
            RegionShape::IntegerRange | RegionShape::SymmetricRange => GroupKind::Z,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RegionShape::Interval => "interval",
            RegionShape::SymmetricInterval => "symmetric_interval",
            RegionShape::Box => "box",
            RegionShape::SymmetricBox => "symmetric_box",
            RegionShape::IntegerRange => "range",
            RegionShape::SymmetricRange => "symmetric_range",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            RegionShape::Interval,
            RegionShape::SymmetricInterval,
            RegionShape::Box,
            RegionShape::SymmetricBox,
            RegionShape::IntegerRange,
            RegionShape::SymmetricRange,
        ]
        .into_iter()
        .find(|s| s.name() == name)
    }
}

/// A compact Følner set with a closed-form character average.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FolnerRegion {
    Interval { start: Rational, length: Rational },
    SymmetricInterval { half_width: Rational },
    Box { side: Rational },
    SymmetricBox { half_width: Rational },
    IntegerRange { count: u64 },
    SymmetricRange { half_width: u64 },
}

impl FolnerRegion {
    /// `[start, start + length]`.
    pub fn interval(start: Rational, length: Rational) -> Result<Self> {
        if !length.is_positive() {
            return Err(Error::parameter("interval length must be positive"));
        }
        Ok(FolnerRegion::Interval { start, length })
    }

    /// The region of `shape` at size parameter `size` (T or N).
    pub fn from_shape(shape: RegionShape, size: &Rational) -> Result<Self> {
        if !size.is_positive() {
            return Err(Error::parameter(format!("region size {size} must be positive")));
        }
        let count = || -> Result<u64> {
            if !size.is_integer() {
                return Err(Error::parameter(format!("integer range size {size} is not an integer")));
            }
            size.to_integer()
                .to_u64()
                .ok_or_else(|| Error::parameter("integer range size out of range"))
        };
        Ok(match shape {
            RegionShape::Interval => FolnerRegion::Interval {
                start: Rational::zero(),
                length: size.clone(),
            },
            RegionShape::SymmetricInterval => FolnerRegion::SymmetricInterval {
                half_width: size.clone(),
            },
            RegionShape::Box => FolnerRegion::Box { side: size.clone() },
            RegionShape::SymmetricBox => FolnerRegion::SymmetricBox {
                half_width: size.clone(),
            },
            RegionShape::IntegerRange => FolnerRegion::IntegerRange { count: count()? },
            RegionShape::SymmetricRange => FolnerRegion::SymmetricRange {
                half_width: count()?,
            },
        })
    }

    pub fn shape(&self) -> RegionShape {
        match self {
            FolnerRegion::Interval { .. } => RegionShape::Interval,
            FolnerRegion::SymmetricInterval { .. } => RegionShape::SymmetricInterval,
            FolnerRegion::Box { .. } => RegionShape::Box,
            FolnerRegion::SymmetricBox { .. } => RegionShape::SymmetricBox,
            FolnerRegion::IntegerRange { .. } => RegionShape::IntegerRange,
            FolnerRegion::SymmetricRange { .. } => RegionShape::SymmetricRange,
        }
    }

    pub fn group_kind(&self) -> GroupKind {
        self.shape().group_kind()
    }

    pub fn dim(&self) -> usize {
        self.group_kind().dim()
    }

    /// The size parameter `T` or `N`.
    pub fn size(&self) -> Rational {
        match self {
            FolnerRegion::Interval { length, .. } => length.clone(),
            FolnerRegion::SymmetricInterval { half_width }
            | FolnerRegion::SymmetricBox { half_width } => half_width.clone(),
            FolnerRegion::Box { side } => side.clone(),
            FolnerRegion::IntegerRange { count } => Rational::from_integer((*count).into()),
            FolnerRegion::SymmetricRange { half_width } => {
                Rational::from_integer((*half_width).into())
            }
        }
    }

    /// Lebesgue measure or cardinality.
    pub fn measure(&self) -> Rational {
        let two = rat(2, 1);
        match self {
            FolnerRegion::Interval { length, .. } => length.clone(),
            FolnerRegion::SymmetricInterval { half_width } => half_width * two,
            FolnerRegion::Box { side } => side * side,
            FolnerRegion::SymmetricBox { half_width } => {
                let l = half_width * two;
                &l * &l
            }
            FolnerRegion::IntegerRange { count } => Rational::from_integer((*count).into()),
            FolnerRegion::SymmetricRange { half_width } => {
                Rational::from_integer((2 * half_width + 1).into())
            }
        }
    }
}

/// `(1/T)∫_start^{start+T} e^{2πifs} ds = e^{2πif·start} e^{πifT} sin(πfT)/(πfT)`.
fn interval_average(f: &SurdScalar, start: &Rational, length: &Rational) -> Complex64 {
    if f.is_zero() {
        return Complex64::new(1.0, 0.0);
    }
    let x = f.scale(length);
    let sinc = sin_pi(&x) / (PI * x.to_f64());
    cis_2pi(&f.scale(start)) * cis_2pi(&x.scale(&rat(1, 2))) * sinc
}

/// `(1/N) Σ_{n=1}^{N} e^{2πifn} = e^{πif(N+1)} sin(πfN) / (N sin(πf))`.
fn range_average(f: &SurdScalar, count: u64) -> Complex64 {
    if f.is_integer() {
        return Complex64::new(1.0, 0.0);
    }
    let n = count as i64;
    let ratio = sin_pi(&f.mul_int(n)) / (count as f64 * sin_pi(f));
    cis_2pi(&f.mul_int(n + 1).scale(&rat(1, 2))) * ratio
}

/// `(1/(2N+1)) Σ_{n=-N}^{N} e^{2πifn} = sin(πf(2N+1)) / ((2N+1) sin(πf))`.
fn symmetric_range_average(f: &SurdScalar, half_width: u64) -> Complex64 {
    if f.is_integer() {
        return Complex64::new(1.0, 0.0);
    }
    let width = 2 * half_width as i64 + 1;
    let ratio = sin_pi(&f.mul_int(width)) / (width as f64 * sin_pi(f));
    Complex64::new(ratio, 0.0)
}

/// Closed-form average of the character with frequency `freq` over `region`.
pub fn char_average(freq: &Frequency, region: &FolnerRegion) -> Result<Complex64> {
    if freq.dim() != region.dim() {
        return Err(Error::parameter(format!(
            "frequency of dimension {} averaged over a {}-dimensional region",
            freq.dim(),
            region.dim()
        )));
    }
    let f = freq.components();
    Ok(match region {
        FolnerRegion::Interval { start, length } => interval_average(&f[0], start, length),
        FolnerRegion::SymmetricInterval { half_width } => {
            interval_average(&f[0], &-half_width, &(half_width * rat(2, 1)))
        }
        FolnerRegion::Box { side } => {
            let zero = Rational::zero();
            interval_average(&f[0], &zero, side) * interval_average(&f[1], &zero, side)
        }
        FolnerRegion::SymmetricBox { half_width } => {
            let start = -half_width;
            let length = half_width * rat(2, 1);
            interval_average(&f[0], &start, &length) * interval_average(&f[1], &start, &length)
        }
        FolnerRegion::IntegerRange { count } => range_average(&f[0], *count),
        FolnerRegion::SymmetricRange { half_width } => symmetric_range_average(&f[0], *half_width),
    })
}

fn check_region(spec: &ActionSpec, region: &FolnerRegion) -> Result<()> {
    if region.group_kind() != spec.kind() {
        return Err(Error::parameter(format!(
            "{} region for a {} action",
            region.shape().name(),
            spec.kind()
        )));
    }
    Ok(())
}

/// `(1/|Λ|)∫_Λ α_g(a) dg`, coefficient by coefficient.
pub fn ergodic_average<E: Observable>(
    a: &E,
    spec: &ActionSpec,
    region: &FolnerRegion,
) -> Result<E> {
    check_region(spec, region)?;
    let mut terms = BTreeMap::new();
    for (k, c) in a.term_map() {
        let avg = char_average(&k.frequency(spec)?, region)?;
        terms.insert(*k, c * avg);
    }
    Ok(a.with_term_map(terms))
}

/// Projection onto the fixed-point algebra: keeps exactly the
/// zero-frequency monomials.
pub fn conditional_expectation<E: Observable>(a: &E, spec: &ActionSpec) -> Result<E> {
    let mut terms = BTreeMap::new();
    for (k, c) in a.term_map() {
        if k.frequency(spec)?.is_zero() {
            terms.insert(*k, *c);
        }
    }
    Ok(a.with_term_map(terms))
}

fn min_rational(a: Rational, b: &Rational) -> Rational {
    if &a < b {
        a
    } else {
        b.clone()
    }
}

/// `|Λ △ (Λ + h)| / |Λ|`.
pub fn folner_defect(region: &FolnerRegion, shift: &GroupElement) -> Result<f64> {
    shift.check(region.group_kind())?;
    let h = &shift.0;
    let two = rat(2, 1);
    let one = Rational::one();
    let ratio = match region {
        FolnerRegion::Interval { length, .. } => {
            &two * min_rational(h[0].abs(), length) / length
        }
        FolnerRegion::SymmetricInterval { half_width } => {
            let length = half_width * &two;
            &two * min_rational(h[0].abs(), &length) / length
        }
        FolnerRegion::Box { side } => box_defect(side, &h[0], &h[1]),
        FolnerRegion::SymmetricBox { half_width } => box_defect(&(half_width * &two), &h[0], &h[1]),
        FolnerRegion::IntegerRange { count } => {
            let n = Rational::from_integer((*count).into());
            &two * min_rational(h[0].abs(), &n) / n
        }
        FolnerRegion::SymmetricRange { half_width } => {
            let n = Rational::from_integer((2 * half_width + 1).into());
            &two * min_rational(h[0].abs(), &n) / n
        }
    };
    debug_assert!(ratio <= &two * one);
    Ok(ratio.to_f64().unwrap_or(f64::NAN))
}

fn box_defect(side: &Rational, h1: &Rational, h2: &Rational) -> Rational {
    let zero = Rational::zero();
    let overlap = |h: &Rational| {
        let o = side - h.abs();
        if o < zero {
            zero.clone()
        } else {
            o
        }
    };
    let area = side * side;
    rat(2, 1) * (&area - overlap(h1) * overlap(h2)) / area
}

/// `{(m·p, n·q) : |m|, |n| ≤ window}` for a torus action of ℝ².
pub fn point_spectrum(spec: &ActionSpec, window: u32) -> Result<Vec<(SurdScalar, SurdScalar)>> {
    if spec.is_tensor() || spec.kind() != GroupKind::R2 {
        return Err(Error::parameter("point spectrum requires a torus action of R2"));
    }
    let w = window as i64;
    let [p, q] = spec.left();
    let mut out = Vec::with_capacity(((2 * w + 1) * (2 * w + 1)) as usize);
    for m in -w..=w {
        for n in -w..=w {
            out.push((p.mul_int(m), q.mul_int(n)));
        }
    }
    Ok(out)
}

/// Points common to two spectra, deduplicated, in the order of `a`.
pub fn spectrum_intersection(
    a: &[(SurdScalar, SurdScalar)],
    b: &[(SurdScalar, SurdScalar)],
) -> Vec<(SurdScalar, SurdScalar)> {
    let in_b: HashSet<_> = b.iter().collect();
    let mut seen = HashSet::new();
    a.iter()
        .filter(|x| in_b.contains(x) && seen.insert(*x))
        .cloned()
        .collect()
}
