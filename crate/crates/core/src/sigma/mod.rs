//! Σ-structures: a strict relation with a distinguished point, an involution and a
//! partial cut map, together with their axioms, morphisms and constructions.

mod axioms;
mod cuts;
mod embedding;
mod initial;
mod morphism;
mod order;
mod product;
mod search;
mod structure;
mod tmap;

use std::fmt;

use indexmap::{Equivalent, IndexSet};
use thiserror::Error;

pub use axioms::{
    check_axioms, eta_density_diagnostic, order_properties, AxiomReport, OrderProperties,
    Verdict, Witness,
};
pub use cuts::{enumerate_cuts, enumerate_order_cuts, CutKind, CUT_LIMIT};
pub use embedding::{classify_embedding, substructure, EmbeddingClass, EmbeddingKind};
pub use initial::{initial_psur, minimal_partial};
pub use morphism::{check_morphism, compose, identity, Morphism, MorphismKind, MorphismReport};
pub use order::{Order, OrderForm};
pub use product::{product, Product};
pub use search::{find_isomorphism, search_morphisms, SearchLimits, SearchOutcome};
pub use structure::{Labels, Structure, StructureBuilder};
pub use tmap::{ExtremalT, TMap};

/// An element of a finite carrier, by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub fn new(i: usize) -> Self {
        Elem(u32::try_from(i).expect("carrier index fits in u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A pair of finite element sets, each sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    pub left: Box<[Elem]>,
    pub right: Box<[Elem]>,
}

/// Borrowed form of [`Cut`], usable as a lookup key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CutRef<'a> {
    pub left: &'a [Elem],
    pub right: &'a [Elem],
}

impl Equivalent<Cut> for CutRef<'_> {
    fn equivalent(&self, key: &Cut) -> bool {
        *self.left == *key.left && *self.right == *key.right
    }
}

fn normalized(items: impl IntoIterator<Item = Elem>) -> Box<[Elem]> {
    let mut v: Vec<Elem> = items.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v.into_boxed_slice()
}

impl Cut {
    pub fn new(left: impl IntoIterator<Item = Elem>, right: impl IntoIterator<Item = Elem>) -> Self {
        Cut {
            left: normalized(left),
            right: normalized(right),
        }
    }

    pub fn empty() -> Self {
        Cut::new([], [])
    }

    pub fn as_ref(&self) -> CutRef<'_> {
        CutRef {
            left: &self.left,
            right: &self.right,
        }
    }

    pub fn members(&self) -> impl Iterator<Item = Elem> + '_ {
        self.left.iter().chain(self.right.iter()).copied()
    }

    /// `(f[A], f[B])`.
    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Cut {
        Cut::new(self.left.iter().map(|&x| f(x)), self.right.iter().map(|&x| f(x)))
    }

    /// `(−B, −A)` under the given negation.
    pub fn negate(&self, neg: impl Fn(Elem) -> Elem) -> Cut {
        Cut::new(self.right.iter().map(|&x| neg(x)), self.left.iter().map(|&x| neg(x)))
    }
}

/// Interned cut terms `⟨A, B⟩` whose members are earlier terms.
#[derive(Debug, Clone, Default)]
pub struct TermArena {
    terms: IndexSet<Cut>,
}

impl TermArena {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns a term and reports whether it is new.
    pub fn intern(&mut self, cut: Cut) -> (Elem, bool) {
        let (i, fresh) = self.terms.insert_full(cut);
        (Elem::new(i), fresh)
    }

    pub fn lookup(&self, left: &[Elem], right: &[Elem]) -> Option<Elem> {
        self.terms
            .get_index_of(&CutRef { left, right })
            .map(Elem::new)
    }

    pub fn get(&self, e: Elem) -> &Cut {
        &self.terms[e.index()]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, &Cut)> {
        self.terms.iter().enumerate().map(|(i, c)| (Elem::new(i), c))
    }

    /// Renders `e` as `<A|B>` with members rendered recursively and sorted as text.
    pub fn render(&self, e: Elem) -> String {
        let cut = self.get(e);
        let side = |xs: &[Elem]| {
            let mut parts: Vec<String> = xs.iter().map(|&x| self.render(x)).collect();
            parts.sort();
            parts.join(",")
        };
        format!("<{}|{}>", side(&cut.left), side(&cut.right))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("element index {0} is outside the carrier")]
    UnknownElement(usize),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("no distinguished element was set")]
    MissingStar,
    #[error("negation is undefined on {0:?}")]
    NegationNotTotal(String),
    #[error("cut ({left:?}, {right:?}) has a left member not below a right member")]
    NotACut { left: Vec<String>, right: Vec<String> },
    #[error("{what} would need {size} items, above the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("morphism tables must be total: expected {expected} entries, got {got}")]
    PartialTable { expected: usize, got: usize },
    #[error("extremal cut map base is not a chain at {0:?} and {1:?}")]
    BaseNotLinear(String, String),
    #[error("{0}")]
    Invalid(String),
}
