//! Sectioned `key = value` experiment configuration.
//!
//! ```text
//! # comment
//! [system]
//! kind = qtorus_pair        # qtorus | qtorus_pair | qtorus_mirror | group_dual
//! theta1 = 1/5
//! theta2 = sqrt(3)
//! p = 1
//! q = 1
//! c = sqrt(2)
//! d = sqrt(3)
//! action = R2               # Z | R | R2
//!
//! [folner]
//! shape = box
//! sizes = 1, 10, 100, 1000
//!
//! [observable]
//! u^0 v^1 w^0 z^-1 = 1      # coefficient: `re` or `re im`
//!
//! [functional]
//! kind = kappa_D
//!
//! [run]
//! seed = 7
//! ```
//!
//! A `group_dual` system takes `cycles` (or `cycle_count` for the
//! increasing-cycles alphabet), `t_s2`, `k_s2` (`shift`, `identity` or
//! `cycles:L`) and optionally `k_cycles`; its observables are lines
//! `a: <word> = coeff` and `b: <word> = coeff`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_complex::Complex64;

use crate::dynamics::{ActionSpec, FolnerRegion, GroupKind, RegionShape};
use crate::error::{Error, Result};
use crate::group::{DualSystemConfig, GroupObservable, LetterMap, S2Rule, Word};
use crate::qtorus::TorusElement;
use crate::surd::{parse_scalar, Rational, SurdScalar};
use crate::tensor::{StateFunctional, StateKind, TensorElement, TensorMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    Qtorus,
    QtorusPair,
    QtorusMirror,
    GroupDual,
}

impl SystemKind {
    pub fn name(self) -> &'static str {
        match self {
            SystemKind::Qtorus => "qtorus",
            SystemKind::QtorusPair => "qtorus_pair",
            SystemKind::QtorusMirror => "qtorus_mirror",
            SystemKind::GroupDual => "group_dual",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        [
            SystemKind::Qtorus,
            SystemKind::QtorusPair,
            SystemKind::QtorusMirror,
            SystemKind::GroupDual,
        ]
        .into_iter()
        .find(|k| k.name() == name)
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Observable {
    Torus(TorusElement),
    Tensor(TensorElement),
    Group { a: GroupObservable, b: GroupObservable },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: SystemKind,
    pub theta1: SurdScalar,
    pub theta2: Option<SurdScalar>,
    /// `None` for `group_dual`.
    pub action: Option<ActionSpec>,
    pub dual: Option<DualSystemConfig>,
    pub shape: RegionShape,
    pub sizes: Vec<Rational>,
    pub observable: Observable,
    pub functional: Option<StateFunctional>,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Builder::default().run(text)
    }

    pub fn regions(&self) -> Result<Vec<FolnerRegion>> {
        self.sizes
            .iter()
            .map(|s| FolnerRegion::from_shape(self.shape, s))
            .collect()
    }

    /// Sizes as positive integers, for integer ranges.
    pub fn integer_sizes(&self) -> Result<Vec<u64>> {
        self.sizes
            .iter()
            .map(|s| {
                if !s.is_integer() {
                    return Err(Error::parameter(format!("size {s} is not an integer")));
                }
                u64::try_from(s.to_integer())
                    .map_err(|_| Error::parameter(format!("size {s} out of range")))
            })
            .collect()
    }
}

/// A value together with the position of its first character.
#[derive(Clone, Debug)]
struct Entry {
    value: String,
    line: usize,
    column: usize,
}

impl Entry {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, message)
    }

    /// Re-bases a scalar parse error onto this entry's position.
    fn scalar(&self) -> Result<SurdScalar> {
        parse_scalar(&self.value).map_err(|e| match e {
            Error::Parse {
                column, message, ..
            } => Error::parse(self.line, self.column + column - 1, message),
            Error::NotSquareFree(n) => self.error(format!("radicand {n} is not square-free")),
            other => other,
        })
    }
}

#[derive(Default)]
struct Builder {
    keys: BTreeMap<(String, String), Entry>,
    terms: Vec<(Entry, Entry)>,
}

const SECTIONS: [&str; 5] = ["system", "folner", "observable", "functional", "run"];

impl Builder {
    fn run(mut self, text: &str) -> Result<ExperimentConfig> {
        self.scan(text)?;
        self.build()
    }

    fn scan(&mut self, text: &str) -> Result<()> {
        let mut section: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let indent = content.len() - content.trim_start().len();
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or_else(|| {
                    Error::parse(line, indent + 1, "unterminated section header")
                })?;
                let name = name.trim();
                if !SECTIONS.contains(&name) {
                    return Err(Error::parse(line, indent + 2, format!("unknown section '{name}'")));
                }
                section = Some(name.to_string());
                continue;
            }
            let Some(section) = &section else {
                return Err(Error::parse(line, indent + 1, "entry before any section header"));
            };
            let Some(eq) = content.find('=') else {
                return Err(Error::parse(line, indent + 1, "expected 'key = value'"));
            };
            let key = content[..eq].trim();
            let value_raw = &content[eq + 1..];
            let value = value_raw.trim();
            let value_col = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
            if value.is_empty() {
                return Err(Error::parse(line, eq + 2, format!("missing value for '{key}'")));
            }
            let key_entry = Entry {
                value: key.to_string(),
                line,
                column: indent + 1,
            };
            let value_entry = Entry {
                value: value.to_string(),
                line,
                column: value_col,
            };
            if section == "observable" {
                self.terms.push((key_entry, value_entry));
                continue;
            }
            let slot = (section.clone(), key.to_string());
            if self.keys.contains_key(&slot) {
                return Err(Error::parse(line, indent + 1, format!("duplicate key '{key}'")));
            }
            self.keys.insert(slot, value_entry);
        }
        Ok(())
    }

    fn get(&self, section: &str, key: &str) -> Option<&Entry> {
        self.keys.get(&(section.to_string(), key.to_string()))
    }

    fn require(&self, section: &str, key: &str) -> Result<&Entry> {
        self.get(section, key)
            .ok_or_else(|| Error::parameter(format!("missing [{section}] {key}")))
    }

    fn scalar_or(&self, key: &str, default: i64) -> Result<SurdScalar> {
        match self.get("system", key) {
            Some(e) => e.scalar(),
            None => Ok(SurdScalar::from_integer(default)),
        }
    }

    fn build(&self) -> Result<ExperimentConfig> {
        let kind_entry = self.require("system", "kind")?;
        let kind = SystemKind::from_name(&kind_entry.value)
            .ok_or_else(|| kind_entry.error(format!("unknown system kind '{}'", kind_entry.value)))?;

        let (shape, sizes) = self.folner(kind)?;
        let seed = match self.get("run", "seed") {
            Some(e) => e.value.parse().map_err(|_| e.error("seed must be a non-negative integer"))?,
            None => 0,
        };

        if kind == SystemKind::GroupDual {
            let dual = self.dual()?;
            if shape != RegionShape::IntegerRange {
                return Err(Error::parameter("group_dual averages run over shape = range"));
            }
            let (a, b) = self.group_terms()?;
            return Ok(ExperimentConfig {
                kind,
                theta1: SurdScalar::zero(),
                theta2: None,
                action: None,
                dual: Some(dual),
                shape,
                sizes,
                observable: Observable::Group { a, b },
                functional: None,
                seed,
            });
        }

        let theta1 = self.require("system", "theta1")?.scalar()?;
        let theta2 = match kind {
            SystemKind::Qtorus => None,
            SystemKind::QtorusPair => Some(self.require("system", "theta2")?.scalar()?),
            SystemKind::QtorusMirror => {
                let mirror = theta1.neg();
                if let Some(e) = self.get("system", "theta2") {
                    if e.scalar()? != mirror {
                        return Err(e.error(format!(
                            "qtorus_mirror requires theta2 = -theta1 = {mirror}"
                        )));
                    }
                }
                Some(mirror)
            }
            SystemKind::GroupDual => unreachable!(),
        };

        let group = match self.get("system", "action") {
            Some(e) => match e.value.as_str() {
                "Z" => GroupKind::Z,
                "R" => GroupKind::R,
                "R2" => GroupKind::R2,
                other => return Err(e.error(format!("unknown action group '{other}'"))),
            },
            None => shape.group_kind(),
        };
        if group != shape.group_kind() {
            return Err(Error::parameter(format!(
                "shape {} averages over {}, but the action is of {group}",
                shape.name(),
                shape.group_kind()
            )));
        }
        let p = self.scalar_or("p", 1)?;
        let q = self.scalar_or("q", 1)?;
        let action = match &theta2 {
            None => ActionSpec::torus(group, p, q),
            Some(_) => {
                let c = self.scalar_or("c", 1)?;
                let d = self.scalar_or("d", 1)?;
                ActionSpec::tensor(group, (p, q), (c, d))
            }
        };
        if !action.multipliers_nonzero() {
            return Err(Error::parameter("action multipliers p, q, c, d must be nonzero"));
        }

        let observable = match &theta2 {
            None => Observable::Torus(TorusElement::from_terms(
                theta1.clone(),
                self.monomial_terms(false)?
                    .into_iter()
                    .map(|(t, c)| (t.left(), c)),
            )),
            Some(t2) => Observable::Tensor(TensorElement::from_terms(
                theta1.clone(),
                t2.clone(),
                self.monomial_terms(true)?,
            )),
        };

        let functional = match (self.get("functional", "kind"), &theta2) {
            (Some(e), Some(t2)) => {
                let k = StateKind::from_name(&e.value)
                    .ok_or_else(|| e.error(format!("unknown functional '{}'", e.value)))?;
                Some(StateFunctional::new(k, theta1.clone(), t2.clone())?)
            }
            (Some(e), None) => return Err(e.error("functionals need a tensor system")),
            (None, _) => None,
        };

        Ok(ExperimentConfig {
            kind,
            theta1,
            theta2,
            action: Some(action),
            dual: None,
            shape,
            sizes,
            observable,
            functional,
            seed,
        })
    }

    fn folner(&self, kind: SystemKind) -> Result<(RegionShape, Vec<Rational>)> {
        let shape = match self.get("folner", "shape") {
            Some(e) => RegionShape::from_name(&e.value)
                .ok_or_else(|| e.error(format!("unknown shape '{}'", e.value)))?,
            None if kind == SystemKind::GroupDual => RegionShape::IntegerRange,
            None => return Err(Error::parameter("missing [folner] shape")),
        };
        let entry = self.require("folner", "sizes")?;
        let mut sizes: Vec<Rational> = Vec::new();
        let mut offset = 0;
        for part in entry.value.split(',') {
            let column = entry.column + offset + (part.len() - part.trim_start().len());
            offset += part.len() + 1;
            let token = part.trim();
            let size = parse_scalar(token)
                .ok()
                .filter(|s| s.is_rational())
                .map(|s| s.rational_part().clone())
                .ok_or_else(|| Error::parse(entry.line, column, format!("bad size '{token}'")))?;
            if size <= Rational::from_integer(0.into()) {
                return Err(Error::parse(entry.line, column, "sizes must be positive"));
            }
            if sizes.last().is_some_and(|prev| &size <= prev) {
                return Err(Error::parse(entry.line, column, "sizes must be strictly increasing"));
            }
            sizes.push(size);
        }
        Ok((shape, sizes))
    }

    fn monomial_terms(&self, tensor: bool) -> Result<Vec<(TensorMonomial, Complex64)>> {
        if self.terms.is_empty() {
            return Err(Error::parameter("empty [observable] section"));
        }
        self.terms
            .iter()
            .map(|(key, value)| Ok((parse_monomial(key, tensor)?, parse_coeff(value)?)))
            .collect()
    }

    fn group_terms(&self) -> Result<(GroupObservable, GroupObservable)> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (key, value) in &self.terms {
            let (target, rest) = match key.value.split_once(':') {
                Some(("a", rest)) => (&mut a, rest),
                Some(("b", rest)) => (&mut b, rest),
                _ => return Err(key.error("group observable lines start with 'a:' or 'b:'")),
            };
            let word_col = key.column + key.value.find(':').unwrap_or(0) + 1;
            let word: Word = rest.parse().map_err(|e| match e {
                Error::Parse {
                    column, message, ..
                } => Error::parse(key.line, word_col + column - 1, message),
                other => other,
            })?;
            target.push((word, parse_coeff(value)?));
        }
        if a.is_empty() || b.is_empty() {
            return Err(Error::parameter("group_dual needs observables 'a:' and 'b:'"));
        }
        Ok((GroupObservable::from_terms(a), GroupObservable::from_terms(b)))
    }

    fn dual(&self) -> Result<DualSystemConfig> {
        if let Some(e) = self.get("system", "cycle_count") {
            let n: usize = e
                .value
                .parse()
                .map_err(|_| e.error("cycle_count must be a non-negative integer"))?;
            if self.get("system", "cycles").is_some() {
                return Err(e.error("give either cycles or cycle_count"));
            }
            let preset = DualSystemConfig::increasing_cycles(n);
            let t = LetterMap::new(preset.t().cycles().to_vec(), self.s2_rule("t_s2", S2Rule::Shift)?)?;
            let k = LetterMap::new(preset.k().cycles().to_vec(), self.s2_rule("k_s2", S2Rule::Identity)?)?;
            return DualSystemConfig::new(preset.alphabet(), t, k);
        }
        let cycles = match self.get("system", "cycles") {
            Some(e) => parse_cycles(e)?,
            None => Vec::new(),
        };
        let k_cycles = match self.get("system", "k_cycles") {
            Some(e) => parse_cycles(e)?,
            None => cycles.clone(),
        };
        let alphabet = match self.get("system", "alphabet") {
            Some(e) => e.value.parse().map_err(|_| e.error("alphabet must be a positive integer"))?,
            None => cycles.iter().chain(&k_cycles).flatten().copied().max().unwrap_or(0),
        };
        let t = LetterMap::new(cycles, self.s2_rule("t_s2", S2Rule::Shift)?)?;
        let k = LetterMap::new(k_cycles, self.s2_rule("k_s2", S2Rule::Identity)?)?;
        DualSystemConfig::new(alphabet, t, k)
    }

    fn s2_rule(&self, key: &str, default: S2Rule) -> Result<S2Rule> {
        let Some(e) = self.get("system", key) else {
            return Ok(default);
        };
        match e.value.as_str() {
            "shift" => Ok(S2Rule::Shift),
            "identity" => Ok(S2Rule::Identity),
            other => other
                .strip_prefix("cycles:")
                .and_then(|l| l.trim().parse().ok())
                .filter(|&l| l > 0)
                .map(S2Rule::Cycles)
                .ok_or_else(|| e.error(format!("unknown S2 rule '{other}'"))),
        }
    }
}

/// `(1 2) (3 4 5)`.
fn parse_cycles(e: &Entry) -> Result<Vec<Vec<u32>>> {
    let mut cycles = Vec::new();
    let mut rest = e.value.as_str();
    let mut consumed = 0;
    loop {
        let trimmed = rest.trim_start();
        consumed += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        let column = e.column + consumed;
        let close = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| Error::parse(e.line, column, "expected '(i j ...)'"))?;
        let cycle = rest[1..close + 1]
            .split_whitespace()
            .map(|x| x.parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse(e.line, column, "cycle entries must be positive integers"))?;
        cycles.push(cycle);
        consumed += close + 2;
        rest = &rest[close + 2..];
    }
    Ok(cycles)
}

/// `u^INT v^INT [w^INT z^INT]`; a bare letter means exponent 1, `1` is the unit.
pub fn parse_monomial_text(text: &str, tensor: bool) -> Result<TensorMonomial> {
    parse_monomial(
        &Entry {
            value: text.to_string(),
            line: 1,
            column: 1,
        },
        tensor,
    )
}

fn parse_monomial(e: &Entry, tensor: bool) -> Result<TensorMonomial> {
    let mut exps = [None::<i64>; 4];
    let letters = if tensor { "uvwz" } else { "uv" };
    let mut offset = 0;
    for token in e.value.split_whitespace() {
        let pos = e.value[offset..].find(token).unwrap_or(0) + offset;
        offset = pos + token.len();
        let column = e.column + pos;
        if token == "1" {
            continue;
        }
        let bad = || Error::parse(e.line, column, format!("malformed monomial factor '{token}'"));
        let mut chars = token.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let slot = letters.find(letter).ok_or_else(bad)?;
        let rest = chars.as_str();
        let exp = if rest.is_empty() {
            1
        } else {
            rest.strip_prefix('^')
                .and_then(|x| x.parse().ok())
                .ok_or_else(bad)?
        };
        if exps[slot].replace(exp).is_some() {
            return Err(Error::parse(e.line, column, format!("repeated generator '{letter}'")));
        }
    }
    let [j, k, l, m] = exps.map(|x| x.unwrap_or(0));
    Ok(TensorMonomial::new(j, k, l, m))
}

/// `re` or `re im`.
fn parse_coeff(e: &Entry) -> Result<Complex64> {
    let parts: Vec<&str> = e.value.split_whitespace().collect();
    let number = |s: &str| -> Result<f64> {
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| e.error(format!("bad coefficient '{}'", e.value)))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(number(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(number(re)?, number(im)?)),
        _ => Err(e.error("coefficient is 're' or 're im'")),
    }
}
