use std::collections::HashSet;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::hierarchy::DEFAULT_STAGE_LIMIT;
use crate::sigma::{
    check_axioms, check_morphism, compose, Elem, Labels, Morphism, MorphismKind, Order, OrderForm,
    Structure, TMap,
};

use super::{fresh_label, pushout_plus, require_psur, PushoutResult, UniversalError};

/// `S_0 → S_1 → … → S_n` with injective pSUR connectors.
#[derive(Debug, Clone)]
pub struct ChainDiagram {
    objects: Vec<Arc<Structure>>,
    connectors: Vec<Morphism>,
}

impl ChainDiagram {
    /// `connectors[i]` must run from `objects[i]` to `objects[i + 1]`.
    pub fn new(
        objects: Vec<Arc<Structure>>,
        connectors: Vec<Morphism>,
    ) -> Result<Self, UniversalError> {
        let bad = |msg: String| Err(UniversalError::IncompatibleChain(msg));
        if objects.is_empty() {
            return bad("a chain needs an object".into());
        }
        if connectors.len() + 1 != objects.len() {
            return bad(format!(
                "{} objects need {} connectors, got {}",
                objects.len(),
                objects.len() - 1,
                connectors.len()
            ));
        }
        for (k, h) in connectors.iter().enumerate() {
            if !Arc::ptr_eq(h.source(), &objects[k]) || !Arc::ptr_eq(h.target(), &objects[k + 1]) {
                return bad(format!("connector {k} does not join objects {k} and {}", k + 1));
            }
            if !h.is_injective() {
                return bad(format!("connector {k} is not injective"));
            }
            let report = check_morphism(&h.with_kind(MorphismKind::Psur));
            if let Some(v) = report.verdicts.iter().find(|v| !v.passed) {
                return bad(format!("connector {k}: {v}"));
            }
        }
        Ok(ChainDiagram {
            objects,
            connectors,
        })
    }

    pub fn single(object: Arc<Structure>) -> Self {
        ChainDiagram {
            objects: vec![object],
            connectors: Vec::new(),
        }
    }

    pub fn objects(&self) -> &[Arc<Structure>] {
        &self.objects
    }

    pub fn connectors(&self) -> &[Morphism] {
        &self.connectors
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn last(&self) -> &Arc<Structure> {
        self.objects.last().expect("chains are non-empty")
    }

    /// Appends an object reached from the current last one.
    pub fn push(&mut self, connector: Morphism) -> Result<(), UniversalError> {
        let mut objects = self.objects.clone();
        objects.push(connector.target().clone());
        let mut connectors = self.connectors.clone();
        connectors.push(connector);
        *self = ChainDiagram::new(objects, connectors)?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Colimit {
    pub structure: Arc<Structure>,
    /// `h_j : S_j → S_∞`.
    pub cocone: Vec<Morphism>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            y = std::mem::replace(&mut self.0[y], root);
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The colimit `(⊔ S_i) / ≡` of a finite chain. Classes are numbered by first
/// appearance and labelled after their earliest member.
///
/// Cocone maps are tagged full when every connector is full, except the map out of
/// the last object: its cuts outside the pushed-forward domains have nowhere to go.
pub fn chain_colimit(d: &ChainDiagram) -> Result<Colimit, UniversalError> {
    let offsets: Vec<usize> = d
        .objects
        .iter()
        .scan(0, |acc, s| {
            let start = *acc;
            *acc += s.len();
            Some(start)
        })
        .collect();
    let total = offsets.last().copied().unwrap_or(0) + d.last().len();
    let mut uf = UnionFind((0..total).collect());
    for (k, h) in d.connectors.iter().enumerate() {
        for x in h.source().elements() {
            uf.union(offsets[k] + x.index(), offsets[k + 1] + h.apply(x).index());
        }
    }
    let mut class = vec![None; total];
    let mut taken = HashSet::new();
    let mut labels = Vec::new();
    let mut maps: Vec<Vec<Elem>> = Vec::with_capacity(d.len());
    for (k, s) in d.objects.iter().enumerate() {
        let mut table = Vec::with_capacity(s.len());
        for x in s.elements() {
            let root = uf.find(offsets[k] + x.index());
            let c = *class[root].get_or_insert_with(|| {
                labels.push(fresh_label(&mut taken, s.label(x)));
                Elem::new(labels.len() - 1)
            });
            table.push(c);
        }
        maps.push(table);
    }
    let n = labels.len();

    let first = &d.objects[0];
    let star = maps[0][first.star().index()];
    let mut neg = vec![None; n];
    let mut pairs = Vec::new();
    let mut t = IndexMap::new();
    for (k, s) in d.objects.iter().enumerate() {
        let at = |x: Elem| maps[k][x.index()];
        if at(s.star()) != star {
            return Err(UniversalError::IncompatibleChain(format!("object {k} moves *")));
        }
        for x in s.elements() {
            let v = at(s.neg(x));
            if *neg[at(x).index()].get_or_insert(v) != v {
                return Err(UniversalError::IncompatibleChain(format!(
                    "negation of {} differs in object {k}",
                    s.label(x)
                )));
            }
        }
        pairs.extend(s.order().stored_pairs().map(|(a, b)| (at(a), at(b))));
        for (cut, v) in s.t().entries() {
            let image = cut.map(at);
            let v = at(v);
            if *t.entry(image).or_insert(v) != v {
                return Err(UniversalError::IncompatibleChain(format!(
                    "cut map disagrees in object {k}"
                )));
            }
        }
    }
    let form = if d
        .objects
        .iter()
        .any(|s| s.order().form() == OrderForm::Generated)
    {
        OrderForm::Generated
    } else {
        OrderForm::Explicit
    };
    let structure = Arc::new(Structure::from_parts(
        Labels::Explicit(labels),
        star,
        neg.into_iter().map(|v| v.expect("every class has a member")).collect(),
        Order::from_pairs(n, pairs, form),
        TMap::Table(t),
    )?);
    let full = d
        .connectors
        .iter()
        .all(|h| check_morphism(&h.with_kind(MorphismKind::Fpsur)).passed());
    let last = d.len() - 1;
    let cocone = d
        .objects
        .iter()
        .zip(maps)
        .enumerate()
        .map(|(k, (s, table))| {
            let kind = if full && k < last {
                MorphismKind::Fpsur
            } else {
                MorphismKind::Psur
            };
            Morphism::new(s.clone(), structure.clone(), table, kind)
        })
        .collect::<Result<_, _>>()?;
    Ok(Colimit { structure, cocone })
}

/// The first stages of `SA(I)` (or `ST(I)` when `transitive` is set).
#[derive(Debug, Clone)]
pub struct FreeChain {
    pub diagram: ChainDiagram,
    /// `pushouts[k]` produced stage `k + 1`.
    pub pushouts: Vec<PushoutResult>,
}

impl FreeChain {
    pub fn stage(&self, k: usize) -> &Arc<Structure> {
        &self.diagram.objects()[k]
    }

    pub fn top(&self) -> &Arc<Structure> {
        self.diagram.last()
    }
}

/// `SA(I)_0 = I` and `SA(I)_{k+1} = (colim_{j ≤ k} SA(I)_j)⁺`, for `k < alpha`.
pub fn free_over(
    i: &Arc<Structure>,
    alpha: usize,
    transitive: bool,
) -> Result<FreeChain, UniversalError> {
    if alpha > DEFAULT_STAGE_LIMIT {
        return Err(UniversalError::StageTooLarge {
            alpha,
            limit: DEFAULT_STAGE_LIMIT,
        });
    }
    require_psur(&check_axioms(i))?;
    let mut diagram = ChainDiagram::single(i.clone());
    let mut pushouts = Vec::with_capacity(alpha);
    for k in 0..alpha {
        let colim = chain_colimit(&diagram)?;
        let p = pushout_plus(&colim.structure, transitive)?;
        let connector = compose(&p.i0, &colim.cocone[k])?.with_kind(MorphismKind::Fpsur);
        diagram.push(connector)?;
        pushouts.push(p);
    }
    Ok(FreeChain { diagram, pushouts })
}
