//! Sign expansions: finite surreal numbers as words over `{-, +}`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;

use super::dyadic::{Dyadic, DyadicInt};
use super::SurrealError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// A finite sign expansion. `Ord` is the surreal order: at the first index where the
/// words differ, `-` < absent < `+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignExpansion(Vec<Sign>);

impl SignExpansion {
    pub fn zero() -> Self {
        SignExpansion(Vec::new())
    }

    pub fn new(signs: Vec<Sign>) -> Self {
        SignExpansion(signs)
    }

    pub fn integer(n: i64) -> Self {
        let sign = if n < 0 { Sign::Minus } else { Sign::Plus };
        SignExpansion(vec![sign; n.unsigned_abs() as usize])
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// The birthday, which for a finite expansion is its length.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&self, s: Sign) -> Self {
        let mut v = self.0.clone();
        v.push(s);
        SignExpansion(v)
    }

    pub fn prefix(&self, n: usize) -> Self {
        SignExpansion(self.0[..n].to_vec())
    }

    /// Canonical options: proper prefixes below `self` on the left, above on the right.
    pub fn canonical_options(&self) -> (Vec<SignExpansion>, Vec<SignExpansion>) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, s) in self.0.iter().enumerate() {
            match s {
                Sign::Plus => left.push(self.prefix(i)),
                Sign::Minus => right.push(self.prefix(i)),
            }
        }
        (left, right)
    }

    /// All expansions with birthday below `n`, in increasing order.
    pub fn all_below(n: usize) -> Vec<SignExpansion> {
        let mut level = vec![SignExpansion::zero()];
        let mut out = Vec::new();
        for _ in 0..n {
            let mut next = Vec::with_capacity(level.len() * 2);
            for x in &level {
                next.push(x.push(Sign::Minus));
                next.push(x.push(Sign::Plus));
            }
            out.append(&mut level);
            level = next;
        }
        out.sort();
        out
    }

    /// The dyadic value of this expansion.
    pub fn to_dyadic<N: DyadicInt>(&self) -> Dyadic<N> {
        let Some(&first) = self.0.first() else {
            return Dyadic::zero();
        };
        let run = self.0.iter().take_while(|&&s| s == first).count();
        let unit = |s: Sign| match s {
            Sign::Plus => N::one(),
            Sign::Minus => -N::one(),
        };
        let mut value = Dyadic::integer(unit(first) * N::from_usize(run).expect("length fits"));
        let mut step = Dyadic::<N>::integer(N::one());
        for &s in &self.0[run..] {
            step = step.half();
            value = match s {
                Sign::Plus => value + step.clone(),
                Sign::Minus => value - step.clone(),
            };
        }
        value
    }

    /// The sign expansion of a dyadic value.
    pub fn from_dyadic<N: DyadicInt>(x: &Dyadic<N>) -> Self {
        let mut signs = Vec::new();
        let mut value = Dyadic::<N>::zero();
        let one = Dyadic::<N>::integer(N::one());
        if x.is_zero() {
            return SignExpansion(signs);
        }
        let up = x > &value;
        while (up && &value < x) || (!up && &value > x) {
            if up {
                value = value + one.clone();
                signs.push(Sign::Plus);
            } else {
                value = value - one.clone();
                signs.push(Sign::Minus);
            }
        }
        let mut step = one;
        while &value != x {
            step = step.half();
            if x < &value {
                value = value - step.clone();
                signs.push(Sign::Minus);
            } else {
                value = value + step.clone();
                signs.push(Sign::Plus);
            }
        }
        SignExpansion(signs)
    }

    pub fn to_big_dyadic(&self) -> Dyadic<BigInt> {
        self.to_dyadic()
    }
}

impl Ord for SignExpansion {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(s: Option<&Sign>) -> u8 {
            match s {
                Some(Sign::Minus) => 0,
                None => 1,
                Some(Sign::Plus) => 2,
            }
        }
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            let ord = rank(self.0.get(i)).cmp(&rank(other.0.get(i)));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for SignExpansion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Neg for &SignExpansion {
    type Output = SignExpansion;

    fn neg(self) -> SignExpansion {
        SignExpansion(self.0.iter().map(|s| s.flip()).collect())
    }
}

impl std::ops::Neg for SignExpansion {
    type Output = SignExpansion;

    fn neg(self) -> SignExpansion {
        -&self
    }
}

impl fmt::Display for SignExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignExpansion {
    type Err = SurrealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(SurrealError::ParseSign(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignExpansion)
    }
}

/// The simplest dyadic strictly inside `(lo, hi)`; `None` bounds are infinite.
fn simplest_dyadic<N: DyadicInt>(lo: Option<&Dyadic<N>>, hi: Option<&Dyadic<N>>) -> Dyadic<N> {
    let zero = Dyadic::<N>::zero();
    let below_zero = lo.is_none_or(|l| l < &zero);
    let above_zero = hi.is_none_or(|h| h > &zero);
    if below_zero && above_zero {
        return zero;
    }
    if !below_zero {
        let l = lo.expect("bounded below");
        let n = Dyadic::integer(l.floor() + N::one());
        if hi.is_none_or(|h| &n < h) {
            return n;
        }
    } else {
        let h = hi.expect("bounded above");
        let n = Dyadic::integer(h.ceil() - N::one());
        if lo.is_none_or(|l| &n > l) {
            return n;
        }
    }
    let (l, h) = (lo.expect("bounded"), hi.expect("bounded"));
    let mut k = 1u32;
    loop {
        let scale = Dyadic::<N>::new(num_traits::pow(N::one() + N::one(), k as usize), 0);
        let c = Dyadic::new((l.clone() * scale).floor() + N::one(), k);
        if &c < h {
            return c;
        }
        k += 1;
    }
}

/// The simplest (shortest) expansion strictly between every member of `left` and of `right`.
pub fn simplest_between(
    left: &[SignExpansion],
    right: &[SignExpansion],
) -> Result<SignExpansion, SurrealError> {
    let lo = left.iter().max();
    let hi = right.iter().min();
    if let (Some(l), Some(h)) = (lo, hi) {
        if l >= h {
            return Err(SurrealError::NotACut {
                left: l.clone(),
                right: h.clone(),
            });
        }
    }
    let longest = lo.map_or(0, |x| x.len()).max(hi.map_or(0, |x| x.len()));
    if longest < 120 {
        let lo = lo.map(|x| x.to_dyadic::<i128>());
        let hi = hi.map(|x| x.to_dyadic::<i128>());
        Ok(SignExpansion::from_dyadic(&simplest_dyadic(
            lo.as_ref(),
            hi.as_ref(),
        )))
    } else {
        let lo = lo.map(|x| x.to_big_dyadic());
        let hi = hi.map(|x| x.to_big_dyadic());
        Ok(SignExpansion::from_dyadic(&simplest_dyadic(
            lo.as_ref(),
            hi.as_ref(),
        )))
    }
}

type Memo = LazyLock<RwLock<HashMap<(SignExpansion, SignExpansion), SignExpansion>>>;

static ADD_MEMO: Memo = LazyLock::new(Default::default);
static MUL_MEMO: Memo = LazyLock::new(Default::default);

fn memoized(
    memo: &Memo,
    key: (SignExpansion, SignExpansion),
    compute: impl FnOnce(&SignExpansion, &SignExpansion) -> SignExpansion,
) -> SignExpansion {
    if let Some(v) = memo.read().expect("memo lock").get(&key) {
        return v.clone();
    }
    let v = compute(&key.0, &key.1);
    memo.write().expect("memo lock").insert(key, v.clone());
    v
}

fn normal_key(x: &SignExpansion, y: &SignExpansion) -> (SignExpansion, SignExpansion) {
    if x <= y {
        (x.clone(), y.clone())
    } else {
        (y.clone(), x.clone())
    }
}

/// Conway sum, computed recursively from canonical options.
pub fn add(x: &SignExpansion, y: &SignExpansion) -> SignExpansion {
    memoized(&ADD_MEMO, normal_key(x, y), |x, y| {
        let (xl, xr) = x.canonical_options();
        let (yl, yr) = y.canonical_options();
        let left: Vec<_> = xl
            .iter()
            .map(|a| add(a, y))
            .chain(yl.iter().map(|b| add(x, b)))
            .collect();
        let right: Vec<_> = xr
            .iter()
            .map(|a| add(a, y))
            .chain(yr.iter().map(|b| add(x, b)))
            .collect();
        simplest_between(&left, &right).expect("options of a sum form a cut")
    })
}

pub fn sub(x: &SignExpansion, y: &SignExpansion) -> SignExpansion {
    add(x, &-y)
}

/// Conway product, computed recursively from canonical options.
pub fn mul(x: &SignExpansion, y: &SignExpansion) -> SignExpansion {
    memoized(&MUL_MEMO, normal_key(x, y), |x, y| {
        let (xl, xr) = x.canonical_options();
        let (yl, yr) = y.canonical_options();
        let term = |a: &SignExpansion, b: &SignExpansion| {
            sub(&add(&mul(a, y), &mul(x, b)), &mul(a, b))
        };
        let mut left = Vec::new();
        let mut right = Vec::new();
        for a in &xl {
            left.extend(yl.iter().map(|b| term(a, b)));
            right.extend(yr.iter().map(|b| term(a, b)));
        }
        for a in &xr {
            left.extend(yr.iter().map(|b| term(a, b)));
            right.extend(yl.iter().map(|b| term(a, b)));
        }
        simplest_between(&left, &right).expect("options of a product form a cut")
    })
}
