//! Conway prenumbers: hereditarily finite games `{L | R}` interned in an arena.

use std::collections::HashMap;
use std::sync::RwLock;

use indexmap::IndexSet;

use super::sign::{simplest_between, SignExpansion};
use super::SurrealError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameId(u32);

impl GameId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Node {
    left: Box<[GameId]>,
    right: Box<[GameId]>,
}

/// Interned games with memoized comparison.
#[derive(Debug, Default)]
pub struct GameArena {
    nodes: IndexSet<Node>,
    leq_memo: RwLock<HashMap<(GameId, GameId), bool>>,
}

impl GameArena {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns `{left | right}`; option sets are deduplicated.
    pub fn game(&mut self, left: &[GameId], right: &[GameId]) -> GameId {
        let norm = |s: &[GameId]| {
            let mut v = s.to_vec();
            v.sort();
            v.dedup();
            v.into_boxed_slice()
        };
        let (i, _) = self.nodes.insert_full(Node {
            left: norm(left),
            right: norm(right),
        });
        GameId(i as u32)
    }

    pub fn zero(&mut self) -> GameId {
        self.game(&[], &[])
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn left(&self, g: GameId) -> &[GameId] {
        &self.nodes[g.index()].left
    }

    pub fn right(&self, g: GameId) -> &[GameId] {
        &self.nodes[g.index()].right
    }

    /// `x ≤ y` iff no left option of `x` is `≥ y` and no right option of `y` is `≤ x`.
    pub fn leq(&self, x: GameId, y: GameId) -> bool {
        if let Some(&v) = self.leq_memo.read().expect("memo lock").get(&(x, y)) {
            return v;
        }
        let v = !self.left(x).iter().any(|&xl| self.leq(y, xl))
            && !self.right(y).iter().any(|&yr| self.leq(yr, x));
        self.leq_memo.write().expect("memo lock").insert((x, y), v);
        v
    }

    pub fn equivalent(&self, x: GameId, y: GameId) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    /// Hereditarily: no right option is `≤` any left option.
    pub fn is_numeric(&self, g: GameId) -> bool {
        let (l, r) = (self.left(g), self.right(g));
        l.iter().chain(r).all(|&o| self.is_numeric(o))
            && !r.iter().any(|&b| l.iter().any(|&a| self.leq(b, a)))
    }

    /// The sign expansion of a numeric game.
    pub fn value(&self, g: GameId) -> Result<SignExpansion, SurrealError> {
        if !self.is_numeric(g) {
            return Err(SurrealError::NotNumeric);
        }
        self.value_unchecked(g)
    }

    fn value_unchecked(&self, g: GameId) -> Result<SignExpansion, SurrealError> {
        let left = self
            .left(g)
            .iter()
            .map(|&o| self.value_unchecked(o))
            .collect::<Result<Vec<_>, _>>()?;
        let right = self
            .right(g)
            .iter()
            .map(|&o| self.value_unchecked(o))
            .collect::<Result<Vec<_>, _>>()?;
        simplest_between(&left, &right)
    }

    /// The canonical game of a sign expansion: options are its proper prefixes.
    pub fn from_sign(&mut self, x: &SignExpansion) -> GameId {
        let (l, r) = x.canonical_options();
        let l: Vec<_> = l.iter().map(|p| self.from_sign(p)).collect();
        let r: Vec<_> = r.iter().map(|p| self.from_sign(p)).collect();
        self.game(&l, &r)
    }

    /// All games born by `day`: day 0 is `{0}`, each next day takes every pair of
    /// subsets of the previous day.
    pub fn born_by(&mut self, day: usize) -> Vec<GameId> {
        let mut games = vec![self.zero()];
        for _ in 0..day {
            let n = games.len();
            assert!(n < 16, "games born by day 3 are out of reach");
            let subsets: Vec<Vec<GameId>> = (0u32..1 << n)
                .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| games[i]).collect())
                .collect();
            let mut next = Vec::with_capacity(subsets.len() * subsets.len());
            for l in &subsets {
                for r in &subsets {
                    next.push(self.game(l, r));
                }
            }
            next.sort();
            next.dedup();
            games = next;
        }
        games
    }
}
