//! Dyadic rationals `p / 2^k`, generic over the integer numerator.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::SurrealError;

/// Integer types usable as a dyadic numerator.
pub trait DyadicInt:
    Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + FromPrimitive + ToPrimitive
{
}

impl<T> DyadicInt for T where
    T: Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + FromPrimitive + ToPrimitive
{
}

/// `numerator / 2^exponent`, kept normalized: the numerator is odd whenever `exponent > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic<N> {
    numerator: N,
    exponent: u32,
}

fn pow2<N: DyadicInt>(k: u32) -> N {
    num_traits::pow(N::one() + N::one(), k as usize)
}

impl<N: DyadicInt> Dyadic<N> {
    pub fn new(numerator: N, exponent: u32) -> Self {
        let mut d = Dyadic {
            numerator,
            exponent,
        };
        d.normalize();
        d
    }

    pub fn integer(n: N) -> Self {
        Dyadic {
            numerator: n,
            exponent: 0,
        }
    }

    pub fn zero() -> Self {
        Self::integer(N::zero())
    }

    fn normalize(&mut self) {
        let two = N::one() + N::one();
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && self.numerator.is_even() {
            self.numerator = self.numerator.clone() / two.clone();
            self.exponent -= 1;
        }
    }

    pub fn numerator(&self) -> &N {
        &self.numerator
    }

    /// `k` in `p / 2^k`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        if self.numerator.is_positive() {
            Ordering::Greater
        } else if self.numerator.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn scaled_to(&self, exponent: u32) -> N {
        self.numerator.clone() * pow2::<N>(exponent - self.exponent)
    }

    pub fn floor(&self) -> N {
        self.numerator.div_floor(&pow2::<N>(self.exponent))
    }

    pub fn ceil(&self) -> N {
        -((-self.clone()).floor())
    }

    /// Halves the value exactly.
    pub fn half(&self) -> Self {
        Self::new(self.numerator.clone(), self.exponent + 1)
    }

    /// Converts between numerator types.
    pub fn convert<M: DyadicInt>(&self) -> Option<Dyadic<M>> {
        let n = M::from_i128(self.numerator.to_i128()?)?;
        Some(Dyadic {
            numerator: n,
            exponent: self.exponent,
        })
    }
}

impl<N: DyadicInt> Add for Dyadic<N> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let e = self.exponent.max(rhs.exponent);
        Self::new(self.scaled_to(e) + rhs.scaled_to(e), e)
    }
}

impl<N: DyadicInt> Sub for Dyadic<N> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<N: DyadicInt> Neg for Dyadic<N> {
    type Output = Self;

    fn neg(self) -> Self {
        Dyadic {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }
}

impl<N: DyadicInt> Mul for Dyadic<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(self.numerator * rhs.numerator, self.exponent + rhs.exponent)
    }
}

impl<N: DyadicInt> Ord for Dyadic<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        self.scaled_to(e).cmp(&other.scaled_to(e))
    }
}

impl<N: DyadicInt> PartialOrd for Dyadic<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<N: DyadicInt> Zero for Dyadic<N> {
    fn zero() -> Self {
        Dyadic::zero()
    }

    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl<N: DyadicInt> One for Dyadic<N> {
    fn one() -> Self {
        Self::integer(N::one())
    }
}

impl<N: DyadicInt> fmt::Display for Dyadic<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, pow2::<N>(self.exponent))
        }
    }
}

impl<N: DyadicInt + FromStr> FromStr for Dyadic<N> {
    type Err = SurrealError;

    /// Accepts `p`, `p/q` with `q` a power of two, and `p/2^k`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SurrealError::ParseDyadic(s.to_string());
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let numerator: N = num.parse().map_err(|_| bad())?;
        let exponent = match den {
            None => 0,
            Some(d) => match d.strip_prefix("2^") {
                Some(k) => k.parse::<u32>().map_err(|_| bad())?,
                None => {
                    let q: u128 = d.parse().map_err(|_| bad())?;
                    if !q.is_power_of_two() {
                        return Err(bad());
                    }
                    q.trailing_zeros()
                }
            },
        };
        Ok(Dyadic::new(numerator, exponent))
    }
}
