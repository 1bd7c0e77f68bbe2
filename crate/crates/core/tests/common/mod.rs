//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod mutants;

use std::cmp::Ordering;

use suralg::sigma::{check_morphism, Structure};
use suralg::{Elem, Morphism, MorphismKind, SignExpansion};
use std::sync::Arc;

/// An exact dyadic `num / 2^exp`, kept unreduced.
#[derive(Debug, Clone, Copy)]
pub struct Q {
    pub num: i128,
    pub exp: u32,
}

impl Q {
    pub fn int(n: i128) -> Q {
        Q { num: n, exp: 0 }
    }

    fn scaled(self, exp: u32) -> i128 {
        self.num << (exp - self.exp)
    }

    pub fn add(self, o: Q) -> Q {
        let e = self.exp.max(o.exp);
        Q { num: self.scaled(e) + o.scaled(e), exp: e }
    }

    pub fn neg(self) -> Q {
        Q { num: -self.num, exp: self.exp }
    }

    pub fn mul(self, o: Q) -> Q {
        Q { num: self.num * o.num, exp: self.exp + o.exp }
    }

    /// Lowest terms, for display and exact comparison with the library.
    pub fn reduced(self) -> (i128, u32) {
        let (mut n, mut e) = (self.num, self.exp);
        while e > 0 && n % 2 == 0 {
            n /= 2;
            e -= 1;
        }
        (n, e)
    }

    pub fn render(self) -> String {
        match self.reduced() {
            (n, 0) => n.to_string(),
            (n, e) => format!("{n}/{}", 1i128 << e),
        }
    }
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Q {}
impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        let e = self.exp.max(o.exp);
        self.scaled(e).cmp(&o.scaled(e))
    }
}

/// Value of a sign string: the leading run counts whole units, each later sign adds
/// or subtracts the next power of one half.
pub fn value(signs: &str) -> Q {
    let bytes = signs.as_bytes();
    let Some(&first) = bytes.first() else {
        return Q::int(0);
    };
    let unit = if first == b'+' { 1 } else { -1 };
    let run = bytes.iter().take_while(|&&c| c == first).count();
    let mut q = Q::int(unit * run as i128);
    for (k, &c) in bytes[run..].iter().enumerate() {
        let step = Q { num: if c == b'+' { 1 } else { -1 }, exp: k as u32 + 1 };
        q = q.add(step);
    }
    q
}

/// Every sign string of length exactly `n`.
pub fn strings_of_len(n: usize) -> Vec<String> {
    (0u32..1 << n)
        .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { '+' } else { '-' }).collect())
        .collect()
}

/// Every sign string shorter than `n`, shortest first.
pub fn strings_below(n: usize) -> Vec<String> {
    (0..n).flat_map(strings_of_len).collect()
}

/// The first string, by length, whose value lies strictly inside `(lo, hi)`.
pub fn bfs_simplest(lo: Option<Q>, hi: Option<Q>, max_len: usize) -> Option<String> {
    (0..=max_len).flat_map(strings_of_len).find(|s| {
        let v = value(s);
        lo.is_none_or(|l| l < v) && hi.is_none_or(|h| v < h)
    })
}

pub fn sign(s: &str) -> SignExpansion {
    s.parse().expect("sign string")
}

/// Every map `source → target`, checked at `kind`; returns the passing tables.
pub fn brute_force_morphisms(
    source: &Arc<Structure>,
    target: &Arc<Structure>,
    kind: MorphismKind,
) -> Vec<Vec<Elem>> {
    let (n, m) = (source.len(), target.len());
    let total = (m as u64).pow(n as u32);
    let mut found = Vec::new();
    for code in 0..total {
        let mut c = code;
        let table: Vec<Elem> = (0..n)
            .map(|_| {
                let e = Elem::new((c % m as u64) as usize);
                c /= m as u64;
                e
            })
            .collect();
        let h = Morphism::new(source.clone(), target.clone(), table.clone(), kind).unwrap();
        if check_morphism(&h).passed() {
            found.push(table);
        }
    }
    found
}

/// Ordinal below ω^ω as coefficients indexed by exponent.
pub type Cnf = Vec<u64>;

fn trim(mut a: Cnf) -> Cnf {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn cnf_cmp(a: &Cnf, b: &Cnf) -> Ordering {
    let (a, b) = (trim(a.clone()), trim(b.clone()));
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Ordinary ordinal sum: terms of `a` below the leading exponent of `b` are absorbed.
pub fn ordinary_sum(a: &Cnf, b: &Cnf) -> Cnf {
    let b = trim(b.clone());
    let Some(lead) = b.len().checked_sub(1) else {
        return trim(a.clone());
    };
    let mut out = vec![0; a.len().max(b.len())];
    for (e, &c) in a.iter().enumerate().skip(lead + 1) {
        out[e] = c;
    }
    out[lead] = a.get(lead).copied().unwrap_or(0) + b[lead];
    for (e, &c) in b.iter().enumerate().take(lead) {
        out[e] = c;
    }
    trim(out)
}

/// Ordinary ordinal product as repeated ordinary sums over the terms of `b`, each
/// `a · ω^e · c` computed from the leading term of `a`.
pub fn ordinary_product(a: &Cnf, b: &Cnf) -> Cnf {
    let (a, b) = (trim(a.clone()), trim(b.clone()));
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let lead = a.len() - 1;
    let mut acc: Cnf = Vec::new();
    for (e, &c) in b.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = if e == 0 {
            // a · c: the leading coefficient is multiplied, the tail of the last copy kept
            let mut p = a.clone();
            p[lead] = a[lead] * c;
            p
        } else {
            let mut p = vec![0; lead + e + 1];
            p[lead + e] = c;
            p
        };
        acc = ordinary_sum(&acc, &part);
    }
    acc
}

/// The natural sum as the largest ordinary sum over interleavings of the two term lists.
pub fn shuffle_max_sum(a: &Cnf, b: &Cnf) -> Cnf {
    let units = |x: &Cnf| -> Vec<usize> {
        let mut v = Vec::new();
        for (e, &c) in x.iter().enumerate().rev() {
            v.extend(std::iter::repeat_n(e, c as usize));
        }
        v
    };
    let (ua, ub) = (units(a), units(b));
    let mut best: Cnf = Vec::new();
    fn walk(ua: &[usize], ub: &[usize], acc: Cnf, best: &mut Cnf) {
        if ua.is_empty() && ub.is_empty() {
            if cnf_cmp(&acc, best) == Ordering::Greater {
                *best = acc;
            }
            return;
        }
        let one = |e: usize| {
            let mut t = vec![0; e + 1];
            t[e] = 1;
            t
        };
        if let Some((&e, rest)) = ua.split_first() {
            walk(rest, ub, ordinary_sum(&acc, &one(e)), best);
        }
        if let Some((&e, rest)) = ub.split_first() {
            walk(ua, rest, ordinary_sum(&acc, &one(e)), best);
        }
    }
    walk(&ua, &ub, Vec::new(), &mut best);
    best
}

/// Polynomial product in ω with natural-number coefficients.
pub fn polynomial_product(a: &Cnf, b: &Cnf) -> Cnf {
    let (a, b) = (trim(a.clone()), trim(b.clone()));
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn cnf_of(o: &suralg::Ordinal) -> Cnf {
    let mut v = Vec::new();
    for t in o.terms() {
        let e = t.exponent as usize;
        if v.len() <= e {
            v.resize(e + 1, 0);
        }
        v[e] = t.coefficient;
    }
    v
}

pub fn ordinal_of(c: &Cnf) -> suralg::Ordinal {
    suralg::Ordinal::from_terms(c.iter().enumerate().map(|(e, &k)| (e as u32, k))).unwrap()
}
