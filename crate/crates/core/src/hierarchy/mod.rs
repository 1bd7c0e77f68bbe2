//! Finite stages of the cut hierarchies `SA` (free) and `ST` (free transitive).
//!
//! Stage `α` holds every term born on or before day `α`. Terms are interned in birth
//! order, so the element index of a term is its position in the arena and the stages
//! below `α` are index prefixes of stage `α`.

mod claims;
mod terms;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sigma::{
    enumerate_order_cuts, Cut, CutKind, Elem, Labels, Morphism, MorphismKind, Order, OrderForm,
    SigmaError, Structure, TMap, TermArena,
};

pub use claims::verify_claims;
pub use terms::parse_term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error("stage {alpha} is beyond the budget of {limit}")]
    StageTooLarge { alpha: usize, limit: usize },
    #[error("malformed term {0:?}")]
    BadTerm(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
}

/// Which hierarchy a stage belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    /// Each stage adds exactly the membership pairs of its new terms.
    Sa,
    /// Each stage takes the transitive closure.
    St,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Sa => "sa",
            Algebra::St => "st",
        })
    }
}

impl FromStr for Algebra {
    type Err = HierarchyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sa" | "SA" => Ok(Algebra::Sa),
            "st" | "ST" => Ok(Algebra::St),
            _ => Err(HierarchyError::Inconsistent(format!("unknown algebra {s:?}"))),
        }
    }
}

/// Largest stage built without an explicit override.
pub const DEFAULT_STAGE_LIMIT: usize = 3;

/// Transitive stages up to this size store their order pair by pair.
const MATERIALIZE_LIMIT: usize = 4096;

/// One finite stage `SA_α` or `ST_α` with its term decomposition and ranks.
#[derive(Debug, Clone)]
pub struct Stage {
    algebra: Algebra,
    structure: Arc<Structure>,
    terms: Arc<TermArena>,
    ranks: Vec<u32>,
}

/// Old, made and new members with respect to a day.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OldMadeNew {
    pub old: Vec<Elem>,
    pub made: Vec<Elem>,
    pub new: Vec<Elem>,
}

pub fn sa_stage(alpha: usize) -> Result<Stage, HierarchyError> {
    build_stage(Algebra::Sa, alpha, DEFAULT_STAGE_LIMIT)
}

pub fn st_stage(alpha: usize) -> Result<Stage, HierarchyError> {
    build_stage(Algebra::St, alpha, DEFAULT_STAGE_LIMIT)
}

fn membership_edges(arena: &TermArena, from: usize) -> Vec<(Elem, Elem)> {
    arena
        .iter()
        .skip(from)
        .flat_map(|(x, cut)| {
            let below = cut.left.iter().map(move |&a| (a, x));
            let above = cut.right.iter().map(move |&b| (x, b));
            below.chain(above)
        })
        .collect()
}

/// Builds stage `alpha` of the given hierarchy, refusing stages above `limit`.
pub fn build_stage(algebra: Algebra, alpha: usize, limit: usize) -> Result<Stage, HierarchyError> {
    if alpha > limit {
        return Err(HierarchyError::StageTooLarge { alpha, limit });
    }
    let form = match algebra {
        Algebra::Sa => OrderForm::Explicit,
        Algebra::St => OrderForm::Generated,
    };
    let mut arena = TermArena::new();
    arena.intern(Cut::empty());
    let mut ranks = vec![0u32];
    let mut edges: Vec<(Elem, Elem)> = Vec::new();
    for day in 1..=alpha {
        let old = arena.len();
        let order = Order::from_pairs(old, edges.clone(), form);
        for cut in enumerate_order_cuts(&order, CutKind::Conway)? {
            if arena.intern(cut).1 {
                ranks.push(day as u32);
            }
        }
        edges.extend(membership_edges(&arena, old));
    }
    let n = arena.len();
    let mut order = Order::from_pairs(n, edges, form);
    if algebra == Algebra::St && n <= MATERIALIZE_LIMIT {
        order = order.materialize();
    }
    let neg = negation_by_terms(&arena)
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| HierarchyError::Inconsistent("negated term outside the stage".into()))?;
    let star = arena.lookup(&[], &[]).expect("the empty term");
    let arena = Arc::new(arena);
    let structure = Structure::from_parts_unchecked(
        Labels::Terms(arena.clone()),
        star,
        neg,
        order,
        TMap::Terms {
            arena: arena.clone(),
            len: n,
        },
    );
    Ok(Stage {
        algebra,
        structure: Arc::new(structure),
        terms: arena,
        ranks,
    })
}

/// `−⟨A, B⟩ = ⟨−B, −A⟩`, evaluated in rank order; `None` where the result is missing.
fn negation_by_terms(arena: &TermArena) -> Vec<Option<Elem>> {
    let mut order: Vec<Elem> = arena.iter().map(|(e, _)| e).collect();
    let depth = term_depths(arena);
    order.sort_by_key(|e| depth[e.index()]);
    let mut neg: Vec<Option<Elem>> = vec![None; arena.len()];
    for x in order {
        let cut = arena.get(x);
        let side = |xs: &[Elem]| xs.iter().map(|m| neg[m.index()]).collect::<Option<Vec<_>>>();
        neg[x.index()] = match (side(&cut.right), side(&cut.left)) {
            (Some(l), Some(r)) => {
                let c = Cut::new(l, r);
                arena.lookup(&c.left, &c.right)
            }
            _ => None,
        };
    }
    neg
}

/// Hereditary depth of every term: 0 for `⟨∅, ∅⟩`, one more than the deepest member.
fn term_depths(arena: &TermArena) -> Vec<u32> {
    let mut depth = vec![None; arena.len()];
    fn visit(arena: &TermArena, x: Elem, depth: &mut Vec<Option<u32>>) -> u32 {
        if let Some(d) = depth[x.index()] {
            return d;
        }
        let cut = arena.get(x).clone();
        let d = cut
            .members()
            .map(|m| visit(arena, m, depth) + 1)
            .max()
            .unwrap_or(0);
        depth[x.index()] = Some(d);
        d
    }
    for (x, _) in arena.iter() {
        visit(arena, x, &mut depth);
    }
    depth.into_iter().map(|d| d.expect("visited")).collect()
}

impl Stage {
    /// A stage from an existing structure, term table and rank table. The term of
    /// element `i` must be entry `i` of the arena.
    pub fn from_parts(
        algebra: Algebra,
        structure: Arc<Structure>,
        terms: Arc<TermArena>,
        ranks: Vec<u32>,
    ) -> Result<Stage, HierarchyError> {
        let n = structure.len();
        if terms.len() != n || ranks.len() != n {
            return Err(HierarchyError::Inconsistent(format!(
                "{n} elements, {} terms, {} ranks",
                terms.len(),
                ranks.len()
            )));
        }
        if let Some(m) = terms
            .iter()
            .flat_map(|(_, c)| c.members())
            .find(|m| m.index() >= n)
        {
            return Err(HierarchyError::Inconsistent(format!(
                "term member {m} is outside the stage"
            )));
        }
        Ok(Stage {
            algebra,
            structure,
            terms,
            ranks,
        })
    }

    /// A stage whose terms are read off the labels of `structure`.
    pub fn from_labeled(
        algebra: Algebra,
        structure: Arc<Structure>,
        ranks: Vec<u32>,
    ) -> Result<Stage, HierarchyError> {
        let terms = terms::arena_from_labels(&structure)?;
        Self::from_parts(algebra, structure, Arc::new(terms), ranks)
    }

    /// The same stage with another structure, keeping terms and ranks.
    pub fn with_structure(&self, structure: Structure) -> Result<Stage, HierarchyError> {
        Self::from_parts(self.algebra, Arc::new(structure), self.terms.clone(), self.ranks.clone())
    }

    /// The same stage with another rank table.
    pub fn with_ranks(&self, ranks: Vec<u32>) -> Result<Stage, HierarchyError> {
        Self::from_parts(self.algebra, self.structure.clone(), self.terms.clone(), ranks)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn structure(&self) -> &Arc<Structure> {
        &self.structure
    }

    pub fn terms(&self) -> &Arc<TermArena> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.structure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structure.is_empty()
    }

    /// The largest rank present.
    pub fn alpha(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// `r(x)`: the day `x` is born.
    pub fn rank(&self, x: Elem) -> u32 {
        self.ranks[x.index()]
    }

    /// `R(A, B)`: the least day before which every member is born.
    pub fn cut_rank(&self, cut: &Cut) -> u32 {
        cut.members().map(|m| self.rank(m) + 1).max().unwrap_or(0)
    }

    /// `(L_x, R_x)`.
    pub fn term(&self, x: Elem) -> &Cut {
        self.terms.get(x)
    }

    /// The element whose term is `cut`.
    pub fn element(&self, cut: &Cut) -> Option<Elem> {
        self.terms.lookup(&cut.left, &cut.right)
    }

    pub fn label(&self, x: Elem) -> String {
        self.structure.label(x)
    }

    /// An element by term notation, e.g. `<<|>|>`.
    pub fn find(&self, term: &str) -> Option<Elem> {
        let cut = parse_term(term).ok()?;
        self.resolve(&cut)
    }

    fn resolve(&self, term: &terms::Term) -> Option<Elem> {
        let side = |xs: &[terms::Term]| xs.iter().map(|t| self.resolve(t)).collect::<Option<Vec<_>>>();
        let cut = Cut::new(side(&term.left)?, side(&term.right)?);
        self.element(&cut)
    }

    /// `0 = ⟨∅, ∅⟩`, `1 = ⟨{0}, ∅⟩` and `−1 = ⟨∅, {0}⟩` in both hierarchies.
    pub fn zero(&self) -> Elem {
        self.structure.star()
    }

    pub fn one(&self) -> Option<Elem> {
        self.element(&Cut::new([self.zero()], []))
    }

    pub fn minus_one(&self) -> Option<Elem> {
        self.element(&Cut::new([], [self.zero()]))
    }

    /// Members born on or before `day`, as `(old, made, new)`.
    pub fn old_made_new(&self, day: usize) -> OldMadeNew {
        let day = day as u32;
        let pick = |f: &dyn Fn(u32) -> bool| -> Vec<Elem> {
            self.structure.elements().filter(|&x| f(self.rank(x))).collect()
        };
        OldMadeNew {
            old: pick(&|r| r < day),
            made: pick(&|r| r <= day),
            new: pick(&|r| r == day),
        }
    }

    /// `s(β) = ⟨{s(0), …, s(β − 1)}, ∅⟩`, when it is in the stage.
    pub fn s_map(&self, beta: usize) -> Option<Elem> {
        let mut prefix = Vec::new();
        for _ in 0..=beta {
            let next = self.element(&Cut::new(prefix.iter().copied(), []))?;
            prefix.push(next);
        }
        prefix.pop()
    }

    /// `−x` computed from terms alone: `−⟨A, B⟩ = ⟨−B, −A⟩`.
    pub fn neg_term(&self, x: Elem) -> Option<Elem> {
        negation_by_terms(&self.terms)[x.index()]
    }

    /// The inclusion of this stage into a later stage, matching terms hereditarily.
    pub fn inclusion_into(&self, later: &Stage) -> Result<Morphism, HierarchyError> {
        let depth = term_depths(&self.terms);
        let mut order: Vec<Elem> = self.structure.elements().collect();
        order.sort_by_key(|e| depth[e.index()]);
        let mut table = vec![Elem(0); self.len()];
        for x in order {
            let cut = self.term(x).map(|m| table[m.index()]);
            table[x.index()] = later.element(&cut).ok_or_else(|| {
                HierarchyError::Inconsistent(format!(
                    "{} is missing from the later stage",
                    self.label(x)
                ))
            })?;
        }
        Ok(Morphism::new(
            self.structure.clone(),
            later.structure.clone(),
            table,
            MorphismKind::Fpsur,
        )?)
    }
}
