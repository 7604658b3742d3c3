//! Dual systems on the group von Neumann algebra of a free group.
//!
//! Generators split into a finite alphabet `S1 = {s1, s2, …}` and an
//! integer-indexed family `S2 = {t_z : z ∈ ℤ}` that is only materialized on
//! the letters a word actually uses. Automorphisms are induced by
//! letter bijections preserving the split: cycles on `S1` and one of a
//! shift, the identity, or blocks of fixed-length cycles on `S2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qtorus::{accumulate, prune};
use crate::report::ConvergenceRow;
use crate::surd::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `s_i`, 1-based.
    S1(u32),
    /// `t_z`.
    S2(i64),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::S1(i) => write!(f, "s{i}"),
            Generator::S2(z) => write!(f, "t{z}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn s(i: u32) -> Self {
        Letter::new(Generator::S1(i), false)
    }

    pub fn t(z: i64) -> Self {
        Letter::new(Generator::S2(z), false)
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Free reduction.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for letter in letters {
            if stack.last() == Some(&letter.inv()) {
                stack.pop();
            } else {
                stack.push(letter);
            }
        }
        Word(stack)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(&other.0).copied())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Whitespace-separated letters `s<i>` or `t<z>`, each optionally followed
/// by `^-1`; `e` alone is the identity. The result is reduced.
impl FromStr for Word {
    type Err = Error;

    fn from_str(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let column = text[offset..].find(token).map(|p| p + offset).unwrap_or(0) + 1;
            offset = column - 1 + token.len();
            if token == "e" {
                continue;
            }
            let (body, inverse) = match token.strip_suffix("^-1") {
                Some(body) => (body, true),
                None => (token, false),
            };
            let bad = || Error::parse(1, column, format!("malformed letter '{token}'"));
            let generator = if let Some(idx) = body.strip_prefix('s') {
                let i: u32 = idx.parse().map_err(|_| bad())?;
                if i == 0 {
                    return Err(bad());
                }
                Generator::S1(i)
            } else if let Some(idx) = body.strip_prefix('t') {
                Generator::S2(idx.parse().map_err(|_| bad())?)
            } else {
                return Err(bad());
            };
            letters.push(Letter::new(generator, inverse));
        }
        Ok(Word::reduce(letters))
    }
}

/// Action of an automorphism on the infinite family `S2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum S2Rule {
    /// `t_z ↦ t_{z+1}`: every orbit infinite.
    Shift,
    Identity,
    /// Cycles `(t_{bL}, …, t_{bL+L-1})` of length `L`.
    Cycles(u64),
}

impl S2Rule {
    fn power(self, z: i64, n: i64) -> i64 {
        match self {
            S2Rule::Shift => z + n,
            S2Rule::Identity => z,
            S2Rule::Cycles(len) => {
                let len = len as i64;
                let base = z.div_euclid(len) * len;
                base + (z - base + n).rem_euclid(len)
            }
        }
    }

    fn period(self) -> Option<u64> {
        match self {
            S2Rule::Shift => None,
            S2Rule::Identity => Some(1),
            S2Rule::Cycles(len) => Some(len),
        }
    }
}

/// A bijection of `S1 ∪ S2` preserving each part, extended to words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterMap {
    cycles: Vec<Vec<u32>>,
    position: BTreeMap<u32, (usize, usize)>,
    s2: S2Rule,
}

impl LetterMap {
    /// `cycles` are disjoint cycles on `S1` (letters not listed are fixed).
    pub fn new(cycles: Vec<Vec<u32>>, s2: S2Rule) -> Result<Self> {
        if let S2Rule::Cycles(0) = s2 {
            return Err(Error::parameter("S2 cycle length must be positive"));
        }
        let mut position = BTreeMap::new();
        for (ci, cycle) in cycles.iter().enumerate() {
            if cycle.is_empty() {
                return Err(Error::parameter("empty cycle"));
            }
            for (pi, &i) in cycle.iter().enumerate() {
                if i == 0 {
                    return Err(Error::parameter("S1 letters are numbered from 1"));
                }
                if position.insert(i, (ci, pi)).is_some() {
                    return Err(Error::parameter(format!("s{i} appears in two cycles")));
                }
            }
        }
        Ok(LetterMap {
            cycles,
            position,
            s2,
        })
    }

    pub fn identity() -> Self {
        LetterMap {
            cycles: Vec::new(),
            position: BTreeMap::new(),
            s2: S2Rule::Identity,
        }
    }

    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn s2_rule(&self) -> S2Rule {
        self.s2
    }

    /// Image of a generator under the `n`-th power (`n` may be negative).
    pub fn generator_power(&self, g: Generator, n: i64) -> Generator {
        match g {
            Generator::S1(i) => match self.position.get(&i) {
                Some(&(ci, pi)) => {
                    let cycle = &self.cycles[ci];
                    let len = cycle.len() as i64;
                    Generator::S1(cycle[(pi as i64 + n).rem_euclid(len) as usize])
                }
                None => g,
            },
            Generator::S2(z) => Generator::S2(self.s2.power(z, n)),
        }
    }

    /// Letterwise image of `w` under the `n`-th power. Letter bijectivity
    /// means the image is already reduced.
    pub fn apply_power(&self, w: &Word, n: i64) -> Word {
        Word(
            w.letters()
                .iter()
                .map(|l| Letter::new(self.generator_power(l.generator, n), l.inverse))
                .collect(),
        )
    }

    pub fn apply(&self, w: &Word) -> Word {
        self.apply_power(w, 1)
    }

    /// Orbit length of a generator, `None` if infinite.
    pub fn letter_period(&self, g: Generator) -> Option<u64> {
        match g {
            Generator::S1(i) => Some(
                self.position
                    .get(&i)
                    .map_or(1, |&(ci, _)| self.cycles[ci].len() as u64),
            ),
            Generator::S2(_) => self.s2.period(),
        }
    }

    /// A word's orbit is finite iff every letter's orbit is.
    pub fn has_finite_orbit(&self, w: &Word) -> bool {
        w.letters()
            .iter()
            .all(|l| self.letter_period(l.generator).is_some())
    }

    /// Smallest `n ≥ 1` with `Tⁿw = w`, found by iterating up to `bound`.
    pub fn orbit_period(&self, w: &Word, bound: usize) -> Option<usize> {
        let mut current = w.clone();
        for n in 1..=bound {
            current = self.apply(&current);
            if &current == w {
                return Some(n);
            }
        }
        None
    }

    /// Restriction to `S1` as a map `i ↦ T(s_i)` over `1..=alphabet`.
    fn s1_table(&self, alphabet: u32) -> Vec<Generator> {
        (1..=alphabet)
            .map(|i| self.generator_power(Generator::S1(i), 1))
            .collect()
    }
}

/// Pair of automorphisms `(T, K)` on the same free group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSystemConfig {
    alphabet: u32,
    t: LetterMap,
    k: LetterMap,
}

impl DualSystemConfig {
    /// `alphabet` is the size of `S1`; every cycle must stay within it.
    pub fn new(alphabet: u32, t: LetterMap, k: LetterMap) -> Result<Self> {
        for (name, map) in [("T", &t), ("K", &k)] {
            if let Some(bad) = map.position.keys().find(|&&i| i > alphabet) {
                return Err(Error::parameter(format!(
                    "{name} moves s{bad} outside the alphabet s1..s{alphabet}"
                )));
            }
        }
        Ok(DualSystemConfig { alphabet, t, k })
    }

    /// `T|S1` given by cycles of increasing length `(s1 s2)(s3 s4 s5)(s6 … s9)…`,
    /// `T` shifting `S2`; `K` agrees with `T` on `S1` and fixes `S2`.
    pub fn increasing_cycles(cycle_count: usize) -> Self {
        let mut cycles = Vec::new();
        let mut next = 1u32;
        for len in 2..2 + cycle_count as u32 {
            cycles.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        let alphabet = next - 1;
        let t = LetterMap::new(cycles.clone(), S2Rule::Shift).expect("disjoint cycles");
        let k = LetterMap::new(cycles, S2Rule::Identity).expect("disjoint cycles");
        DualSystemConfig { alphabet, t, k }
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn t(&self) -> &LetterMap {
        &self.t
    }

    pub fn k(&self) -> &LetterMap {
        &self.k
    }

    /// `K|S1 = T|S1`, `T` has infinite orbits on `S2`, `K` finite ones.
    pub fn check_relative_mode(&self) -> Result<()> {
        if self.t.s1_table(self.alphabet) != self.k.s1_table(self.alphabet) {
            return Err(Error::parameter("K must agree with T on S1"));
        }
        if self.t.s2.period().is_some() {
            return Err(Error::parameter("T must have infinite orbits on S2"));
        }
        if self.k.s2.period().is_none() {
            return Err(Error::parameter("K must have finite orbits on S2"));
        }
        Ok(())
    }
}

/// Finite combination `Σ a(g) l(g)` of left-regular unitaries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GroupObservable {
    terms: BTreeMap<Word, Complex64>,
}

impl GroupObservable {
    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Complex64)>) -> Self {
        let mut map = BTreeMap::new();
        for (w, c) in terms {
            accumulate(&mut map, w, c);
        }
        prune(&mut map);
        GroupObservable { terms: map }
    }

    /// `l(w)`.
    pub fn basis(w: Word) -> Self {
        Self::from_terms([(w, Complex64::new(1.0, 0.0))])
    }

    pub fn unit() -> Self {
        Self::basis(Word::identity())
    }

    pub fn terms(&self) -> &BTreeMap<Word, Complex64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(w, c)| (w.clone(), *c)),
        )
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * factor)))
    }

    /// Image under `l(g) ↦ l(φⁿ(g))`.
    pub fn transform(&self, map: &LetterMap, n: i64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (map.apply_power(w, n), *c)),
        )
    }

    /// Distance in coefficient one-norm.
    pub fn distance(&self, other: &Self) -> f64 {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
            .terms
            .values()
            .fold(0.0, |acc, c| acc + c.norm())
    }
}

/// `μ(ab) = Σ_{gh = e} a(g) b(h)`.
pub fn trace_product(a: &GroupObservable, b: &GroupObservable) -> Complex64 {
    a.terms
        .iter()
        .filter_map(|(g, ca)| b.terms.get(&g.inverse()).map(|cb| ca * cb))
        .sum()
}

/// `(1/N) Σ_{n=1}^{N} μ(αⁿ(a) βⁿ(b))` with `α` induced by `T` and `β` by `K`.
pub fn correlation_average(
    a: &GroupObservable,
    b: &GroupObservable,
    config: &DualSystemConfig,
    n: u64,
) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::parameter("correlation average needs N ≥ 1"));
    }
    let sum: Complex64 = (1..=n as i64)
        .map(|step| trace_product(&a.transform(&config.t, step), &b.transform(&config.k, step)))
        .sum();
    Ok(sum / n as f64)
}

/// Projection onto the finite orbit factor: keeps the words whose
/// `T`-orbit is finite.
pub fn finite_orbit_expectation(a: &GroupObservable, config: &DualSystemConfig) -> GroupObservable {
    GroupObservable::from_terms(
        a.terms
            .iter()
            .filter(|(w, _)| config.t.has_finite_orbit(w))
            .map(|(w, c)| (w.clone(), *c)),
    )
}

/// Correlation averages at each `N` next to `μ(D(a) D(b))`.
pub fn correlation_experiment(
    a: &GroupObservable,
    b: &GroupObservable,
    config: &DualSystemConfig,
    sizes: &[u64],
) -> Result<Vec<ConvergenceRow>> {
    config.check_relative_mode()?;
    let limit = trace_product(
        &finite_orbit_expectation(a, config),
        &finite_orbit_expectation(b, config),
    );
    sizes
        .iter()
        .map(|&n| {
            let value = correlation_average(a, b, config, n)?;
            Ok(ConvergenceRow::new(
                Rational::from_integer(n.into()),
                value,
                limit,
            ))
        })
        .collect()
}

/// Indicator sequence `[Tⁿ g = h]` for `n = 1..=n_max`.
pub fn mixing_decay(g: &Word, h: &Word, config: &DualSystemConfig, n_max: u64) -> Vec<u8> {
    let mut current = g.clone();
    (1..=n_max)
        .map(|_| {
            current = config.t.apply(&current);
            u8::from(&current == h)
        })
        .collect()
}

/// Cesàro mean of the first `n` entries of an indicator sequence.
pub fn cesaro_mean(hits: &[u8], n: usize) -> f64 {
    let n = n.min(hits.len());
    if n == 0 {
        return 0.0;
    }
    hits[..n].iter().map(|&x| x as f64).sum::<f64>() / n as f64
}

/// Generators appearing in a word.
pub fn support_letters(w: &Word) -> BTreeSet<Generator> {
    w.letters().iter().map(|l| l.generator).collect()
}
