//! Exact scalars `r + s·√n` over arbitrary-precision rationals.
//!
//! Deformation parameters and action frequencies live here so that zero
//! tests (is a frequency zero? are two spectra points equal?) are exact.
//! Only the final conversion to a phase touches floating point.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

pub fn is_square_free(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element `rational + surd·√radicand` of a real quadratic field.
///
/// Canonical form: `radicand == 1` exactly when `surd == 0`, so structural
/// equality is numeric equality (1, √n, √m are linearly independent over ℚ
/// for distinct square-free n, m).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurdScalar {
    rational: Rational,
    surd: Rational,
    radicand: u64,
}

impl SurdScalar {
    pub fn new(rational: Rational, surd: Rational, radicand: u64) -> Result<Self> {
        if !is_square_free(radicand) {
            return Err(Error::NotSquareFree(radicand));
        }
        Ok(Self::canonical(rational, surd, radicand))
    }

    fn canonical(rational: Rational, surd: Rational, radicand: u64) -> Self {
        if surd.is_zero() {
            SurdScalar {
                rational,
                surd,
                radicand: 1,
            }
        } else if radicand == 1 {
            SurdScalar {
                rational: rational + surd,
                surd: Rational::zero(),
                radicand: 1,
            }
        } else {
            SurdScalar {
                rational,
                surd,
                radicand,
            }
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_rational(r: Rational) -> Self {
        SurdScalar {
            rational: r,
            surd: Rational::zero(),
            radicand: 1,
        }
    }

    /// `√n` for square-free `n`.
    pub fn sqrt(n: u64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), n)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.rational.is_integer()
    }

    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.radicand, other.radicand) {
            (1, n) | (n, 1) => Ok(n),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::RadicandMismatch(a, b)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let n = self.common_radicand(other)?;
        Ok(Self::canonical(
            &self.rational + &other.rational,
            &self.surd + &other.surd,
            n,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let n = self.common_radicand(other)?;
        let nr = Rational::from_integer(n.into());
        let rational = &self.rational * &other.rational + &self.surd * &other.surd * nr;
        let surd = &self.rational * &other.surd + &self.surd * &other.rational;
        Ok(Self::canonical(rational, surd, n))
    }

    pub fn neg(&self) -> Self {
        SurdScalar {
            rational: -&self.rational,
            surd: -&self.surd,
            radicand: self.radicand,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::canonical(&self.rational * factor, &self.surd * factor, self.radicand)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let a = &self.rational;
        let b = &self.surd;
        let sa = a.cmp(&Rational::zero());
        let sb = b.cmp(&Rational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (Ordering::Greater, _) => {
                // a > 0 > b: compare a² with b²n
                let lhs = a * a;
                let rhs = b * b * Rational::from_integer(self.radicand.into());
                lhs.cmp(&rhs)
            }
            _ => {
                let lhs = b * b * Rational::from_integer(self.radicand.into());
                let rhs = a * a;
                lhs.cmp(&rhs)
            }
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let approx = self.to_f64().floor();
        let mut k = BigInt::from(approx as i64);
        loop {
            let diff = self.checked_sub(&Self::from_rational(Rational::from_integer(k.clone())));
            let diff = diff.expect("integer shares every field");
            if diff.signum() == Ordering::Less {
                k -= 1;
                continue;
            }
            let next = diff.checked_sub(&Self::one()).expect("integer shares every field");
            if next.signum() != Ordering::Less {
                k += 1;
                continue;
            }
            return k;
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.surd.is_zero() {
            return r;
        }
        r + self.surd.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }

    /// Fractional part `x − ⌊x⌋ ∈ [0, 1)`, accurate to about 2⁻⁶⁴
    /// regardless of the magnitude of `x`.
    pub fn fract_f64(&self) -> f64 {
        const BITS: u32 = 64;
        let scale = BigInt::one() << BITS;
        let rational_scaled = (&self.rational * Rational::from_integer(scale.clone())).floor();
        let mut total = rational_scaled.to_integer();
        if !self.surd.is_zero() {
            // floor(|a|·2^64·√n / b) via an integer square root
            let numer = self.surd.numer();
            let denom = self.surd.denom();
            let x = numer * numer * &scale * &scale * BigInt::from(self.radicand);
            let root = x.sqrt();
            let q = root.div_floor(denom);
            if numer.is_negative() {
                total -= q + 1;
            } else {
                total += q;
            }
        }
        let reduced = total.mod_floor(&scale);
        reduced.to_f64().unwrap_or(0.0) / scale.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// `e^{2πix}` with `x` range-reduced exactly before conversion.
pub fn cis_2pi(x: &SurdScalar) -> Complex64 {
    if x.is_integer() {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::from_polar(1.0, 2.0 * PI * x.fract_f64())
}

/// `sin(πx)` with exact range reduction modulo 2.
pub fn sin_pi(x: &SurdScalar) -> f64 {
    if x.is_integer() {
        return 0.0;
    }
    (2.0 * PI * x.scale(&rat(1, 2)).fract_f64()).sin()
}

impl Default for SurdScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for SurdScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for SurdScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for SurdScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let abs = self.surd.abs();
        let surd = if abs.is_one() {
            format!("sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", abs, self.radicand)
        };
        let negative = self.surd.is_negative();
        if self.rational.is_zero() {
            if negative {
                write!(f, "-{surd}")
            } else {
                write!(f, "{surd}")
            }
        } else {
            let op = if negative { '-' } else { '+' };
            write!(f, "{} {op} {surd}", self.rational)
        }
    }
}

impl FromStr for SurdScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

/// Parses `a/b`, `a/b + c/d*sqrt(n)`, `sqrt(n)` and the obvious signed
/// variants (`-sqrt(2)`, `1/2 - sqrt(3)`, `(1/3)*sqrt(5)`, plain integers).
///
/// Errors carry line 1 and the 1-based column of the offending character.
pub fn parse_scalar(text: &str) -> Result<SurdScalar> {
    ScalarParser::new(text).parse()
}

struct ScalarParser<'a> {
    chars: Vec<char>,
    pos: usize,
    _text: &'a str,
}

impl<'a> ScalarParser<'a> {
    fn new(text: &'a str) -> Self {
        ScalarParser {
            chars: text.chars().collect(),
            pos: 0,
            _text: text,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let numer = self.integer()?;
        if self.eat('/') {
            let denom = self.integer()?;
            if denom.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn at_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let end = self.pos + kw.len();
        end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(kw.chars())
    }

    fn radical(&mut self) -> Result<u64> {
        let column = self.pos + 1;
        self.pos += "sqrt".len();
        self.expect('(')?;
        let n = self.integer()?;
        self.expect(')')?;
        let n = n
            .to_u64()
            .ok_or_else(|| Error::parse(1, column, "radicand out of range"))?;
        if n == 0 || !is_square_free(n) {
            return Err(Error::NotSquareFree(n));
        }
        Ok(n)
    }

    /// One unsigned term: returns (rational contribution, surd coefficient, radicand).
    fn term(&mut self) -> Result<(Rational, Rational, u64)> {
        if self.at_keyword("sqrt") {
            let n = self.radical()?;
            return Ok((Rational::zero(), Rational::one(), n));
        }
        let coeff = if self.eat('(') {
            let r = self.rational()?;
            self.expect(')')?;
            r
        } else {
            self.rational()?
        };
        if self.eat('*') {
            if !self.at_keyword("sqrt") {
                return Err(self.err("expected sqrt(n) after '*'"));
            }
            let n = self.radical()?;
            Ok((Rational::zero(), coeff, n))
        } else {
            Ok((coeff, Rational::zero(), 1))
        }
    }

    fn parse(mut self) -> Result<SurdScalar> {
        let mut acc = SurdScalar::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos >= self.chars.len() {
                if first {
                    return Err(self.err("empty scalar literal"));
                }
                break;
            }
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Err(self.err("expected '+' or '-'"));
            };
            self.skip_ws();
            let column = self.pos + 1;
            let (r, s, n) = self.term()?;
            let mut t = SurdScalar::canonical(r, s, n);
            if negative {
                t = t.neg();
            }
            acc = acc
                .checked_add(&t)
                .map_err(|e| Error::parse(1, column, e.to_string()))?;
            first = false;
        }
        Ok(acc)
    }
}
