//! Partial cut maps `t : C^t_s(S) → S`.

use std::borrow::Cow;
use std::collections::HashMap;
use std::sync::Arc;

use indexmap::IndexMap;

use super::{Cut, CutRef, Elem, TermArena};

/// A cut map determined by the extremes of a cut over a chain: the value of `(A, B)`
/// depends only on `max A` and `min B`, and the domain is every cut over the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalT {
    base: Vec<Elem>,
    position: HashMap<Elem, u32>,
    values: HashMap<(Option<u32>, Option<u32>), Elem>,
}

impl ExtremalT {
    /// `base` must be increasing; `value(lo, hi)` is called for every pair of bounds
    /// `lo < hi` (as base positions, `None` for an empty side).
    pub fn new(base: Vec<Elem>, mut value: impl FnMut(Option<Elem>, Option<Elem>) -> Elem) -> Self {
        let m = base.len() as u32;
        let position = base.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let mut values = HashMap::new();
        let bounds = || std::iter::once(None).chain((0..m).map(Some));
        for lo in bounds() {
            for hi in bounds() {
                if matches!((lo, hi), (Some(l), Some(h)) if l >= h) {
                    continue;
                }
                let v = value(lo.map(|i| base[i as usize]), hi.map(|i| base[i as usize]));
                values.insert((lo, hi), v);
            }
        }
        ExtremalT {
            base,
            position,
            values,
        }
    }

    /// Rebuilds a map from [`ExtremalT::bound_entries`]; `None` if a pair of bounds is
    /// missing or a bound is off the base.
    pub fn from_bounds(
        base: Vec<Elem>,
        entries: &[(Option<Elem>, Option<Elem>, Elem)],
    ) -> Option<Self> {
        let table: HashMap<(Option<Elem>, Option<Elem>), Elem> =
            entries.iter().map(|&(lo, hi, v)| ((lo, hi), v)).collect();
        let on_base = |e: &Option<Elem>| e.is_none_or(|x| base.contains(&x));
        if !entries.iter().all(|(lo, hi, _)| on_base(lo) && on_base(hi)) {
            return None;
        }
        let mut missing = false;
        let ext = ExtremalT::new(base, |lo, hi| {
            table.get(&(lo, hi)).copied().unwrap_or_else(|| {
                missing = true;
                Elem(0)
            })
        });
        (!missing && ext.values.len() == table.len()).then_some(ext)
    }

    pub fn base(&self) -> &[Elem] {
        &self.base
    }

    /// `(max A, min B)` with the stored value, for every pair of bounds.
    pub fn bound_entries(&self) -> Vec<(Option<Elem>, Option<Elem>, Elem)> {
        let mut out: Vec<_> = self
            .values
            .iter()
            .map(|(&(lo, hi), &v)| {
                (
                    lo.map(|i| self.base[i as usize]),
                    hi.map(|i| self.base[i as usize]),
                    v,
                )
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn key(&self, left: &[Elem], right: &[Elem]) -> Option<(Option<u32>, Option<u32>)> {
        let pos = |x: &Elem| self.position.get(x).copied();
        let mut lo = None;
        for x in left {
            lo = lo.max(Some(pos(x)?));
        }
        let mut hi: Option<u32> = None;
        for x in right {
            let p = pos(x)?;
            hi = Some(hi.map_or(p, |h| h.min(p)));
        }
        if let (Some(l), Some(h)) = (lo, hi) {
            if l >= h {
                return None;
            }
        }
        Some((lo, hi))
    }

    fn domain_size(&self) -> u128 {
        let m = self.base.len() as u32;
        if m == 0 {
            return 1;
        }
        if m > 120 {
            return u128::MAX;
        }
        (m as u128 + 2) << (m - 1)
    }

    fn entries(&self) -> impl Iterator<Item = (Cut, Elem)> + '_ {
        let m = self.base.len();
        let bounds = move || std::iter::once(None).chain((0..m).map(Some));
        bounds()
            .flat_map(move |lo| bounds().map(move |hi| (lo, hi)))
            .filter(|p| !matches!(p, (Some(l), Some(h)) if l >= h))
            .flat_map(move |(lo, hi)| {
                let below = lo.unwrap_or(0);
                let above = hi.map_or(0, |h| m - h - 1);
                let value = self.values[&(lo.map(|i| i as u32), hi.map(|i| i as u32))];
                (0u64..1 << below).flat_map(move |lmask| {
                    (0u64..1 << above).map(move |rmask| {
                        let left = lo.map(|l| {
                            (0..l)
                                .filter(move |i| lmask >> i & 1 == 1)
                                .chain([l])
                                .map(|i| self.base[i])
                        });
                        let right = hi.map(|h| {
                            std::iter::once(h)
                                .chain((h + 1..m).filter(move |i| rmask >> (i - h - 1) & 1 == 1))
                                .map(|i| self.base[i])
                        });
                        (
                            Cut::new(
                                left.into_iter().flatten(),
                                right.into_iter().flatten(),
                            ),
                            value,
                        )
                    })
                })
            })
    }
}

/// The partial cut map of a structure.
#[derive(Debug, Clone)]
pub enum TMap {
    /// An explicit table.
    Table(IndexMap<Cut, Elem>),
    /// The first `len` terms of an arena, each mapping to itself.
    Terms { arena: Arc<TermArena>, len: usize },
    /// Values read off the extremes of cuts over a chain.
    Extremal(ExtremalT),
}

impl TMap {
    pub fn get(&self, left: &[Elem], right: &[Elem]) -> Option<Elem> {
        match self {
            TMap::Table(table) => table.get(&CutRef { left, right }).copied(),
            TMap::Terms { arena, len } => arena.lookup(left, right).filter(|e| e.index() < *len),
            TMap::Extremal(ext) => ext.key(left, right).map(|k| ext.values[&k]),
        }
    }

    pub fn get_cut(&self, cut: &Cut) -> Option<Elem> {
        self.get(&cut.left, &cut.right)
    }

    pub fn contains(&self, left: &[Elem], right: &[Elem]) -> bool {
        self.get(left, right).is_some()
    }

    /// Number of cuts in the domain (saturating).
    pub fn domain_size(&self) -> u128 {
        match self {
            TMap::Table(table) => table.len() as u128,
            TMap::Terms { len, .. } => *len as u128,
            TMap::Extremal(ext) => ext.domain_size(),
        }
    }

    /// Every `(cut, value)` pair of the domain.
    pub fn entries(&self) -> Box<dyn Iterator<Item = (Cow<'_, Cut>, Elem)> + '_> {
        match self {
            TMap::Table(table) => Box::new(table.iter().map(|(c, &v)| (Cow::Borrowed(c), v))),
            TMap::Terms { arena, len } => Box::new(
                arena
                    .iter()
                    .take(*len)
                    .map(|(e, c)| (Cow::Borrowed(c), e)),
            ),
            TMap::Extremal(ext) => Box::new(ext.entries().map(|(c, v)| (Cow::Owned(c), v))),
        }
    }

    /// The domain as an explicit table.
    pub fn to_table(&self) -> IndexMap<Cut, Elem> {
        self.entries().map(|(c, v)| (c.into_owned(), v)).collect()
    }
}
