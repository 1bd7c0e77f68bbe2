//! Ordinals below ω^ω in Cantor normal form, with natural (Hessenberg) arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::surreal::SignExpansion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ordinal arithmetic overflowed a u64 coefficient or u32 exponent")]
    Overflow,
    #[error("ordinal {0} is not finite")]
    NotFinite(Ordinal),
    #[error("cannot parse ordinal from {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A term ω^exponent · coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: u32,
    pub coefficient: u64,
}

/// An ordinal `ω^e1·c1 + … + ω^ek·ck` with `e1 > … > ek` and every `ci > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal { terms: Vec::new() };

    /// Builds an ordinal from arbitrary terms, merging equal exponents and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u64)>) -> Result<Self, OrdinalError> {
        let mut merged: Vec<Term> = Vec::new();
        for (exponent, coefficient) in terms {
            if coefficient == 0 {
                continue;
            }
            match merged.iter_mut().find(|t| t.exponent == exponent) {
                Some(t) => {
                    t.coefficient = t
                        .coefficient
                        .checked_add(coefficient)
                        .ok_or(OrdinalError::Overflow)?
                }
                None => merged.push(Term {
                    exponent,
                    coefficient,
                }),
            }
        }
        merged.sort_by_key(|b| std::cmp::Reverse(b.exponent));
        Ok(Ordinal { terms: merged })
    }

    pub fn finite(n: u64) -> Self {
        Self::from_terms([(0, n)]).expect("a single term cannot overflow")
    }

    pub fn omega_power(exponent: u32) -> Self {
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient: 1,
            }],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [Term {
                exponent: 0,
                coefficient,
            }] => Some(*coefficient),
            _ => None,
        }
    }

    /// Coefficient of ω^exponent (zero when absent).
    pub fn coefficient(&self, exponent: u32) -> u64 {
        self.terms
            .iter()
            .find(|t| t.exponent == exponent)
            .map_or(0, |t| t.coefficient)
    }

    /// Hessenberg sum: coefficient-wise addition.
    pub fn natural_sum(&self, other: &Ordinal) -> Result<Ordinal, OrdinalError> {
        Self::from_terms(
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|t| (t.exponent, t.coefficient)),
        )
    }

    /// Hessenberg product: term-wise products with naturally added exponents.
    pub fn natural_product(&self, other: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let exponent = a
                    .exponent
                    .checked_add(b.exponent)
                    .ok_or(OrdinalError::Overflow)?;
                let coefficient = a
                    .coefficient
                    .checked_mul(b.coefficient)
                    .ok_or(OrdinalError::Overflow)?;
                terms.push((exponent, coefficient));
            }
        }
        Self::from_terms(terms)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then(a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (t.exponent, t.coefficient) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| OrdinalError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut terms = Vec::new();
        let mut last: Option<u32> = None;
        for raw in s.split('+') {
            let part: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if part.is_empty() {
                return Err(fail("empty term"));
            }
            let (exponent, coefficient) = if let Some(rest) = part.strip_prefix('w') {
                let (exp_text, coef_text) = match rest.split_once('*') {
                    Some((e, c)) => (e, Some(c)),
                    None => (rest, None),
                };
                let exponent = match exp_text.strip_prefix('^') {
                    Some(e) => e.parse::<u32>().map_err(|_| fail("bad exponent"))?,
                    None if exp_text.is_empty() => 1,
                    None => return Err(fail("expected '^' after 'w'")),
                };
                let coefficient = match coef_text {
                    Some(c) => c.parse::<u64>().map_err(|_| fail("bad coefficient"))?,
                    None => 1,
                };
                (exponent, coefficient)
            } else {
                (0, part.parse::<u64>().map_err(|_| fail("bad integer"))?)
            };
            if last.is_some_and(|l| l <= exponent) {
                return Err(fail("exponents must strictly decrease"));
            }
            last = Some(exponent);
            terms.push((exponent, coefficient));
        }
        if terms == [(0, 0)] {
            return Ok(Ordinal::ZERO);
        }
        if terms.iter().any(|&(_, c)| c == 0) {
            return Err(fail("zero coefficient"));
        }
        Self::from_terms(terms)
    }
}

/// The embedding of finite ordinals into the surreals: `n` maps to `n` plus signs.
pub fn j_embed(ordinal: &Ordinal) -> Result<SignExpansion, OrdinalError> {
    let n = ordinal
        .as_finite()
        .ok_or_else(|| OrdinalError::NotFinite(ordinal.clone()))?;
    Ok(SignExpansion::integer(n as i64))
}

/// Birthday of a sign expansion as an ordinal.
pub fn birthday(x: &SignExpansion) -> Ordinal {
    Ordinal::finite(x.len() as u64)
}
