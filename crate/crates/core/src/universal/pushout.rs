use std::collections::HashSet;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::sigma::{
    check_axioms, check_morphism, enumerate_cuts, Cut, CutKind, Elem, Labels, Morphism,
    MorphismKind, Order, OrderForm, SigmaError, Structure, TMap,
};

use super::{cut_label, fresh_label, require_psur, UniversalError};

/// Transitive pushouts up to this size store their order pair by pair.
const MATERIALIZE_LIMIT: usize = 4096;

/// The pushout of `I ← C^t_s(I) ↪ C_s(I)` with its Σ-structure.
///
/// Old elements keep their indices; each cut outside the domain of `t` becomes a new
/// element, appended in cut order.
#[derive(Debug, Clone)]
pub struct PushoutResult {
    pub structure: Arc<Structure>,
    pub i0: Morphism,
    /// Every Conway cut of `I` with its class in `I⁺`.
    pub i1: IndexMap<Cut, Elem>,
    /// `(x, (A, B))` for each cut glued to an old element, `x = t(A, B)`.
    pub glue: Vec<(Elem, Cut)>,
    pub transitive: bool,
}

impl PushoutResult {
    pub fn old_len(&self) -> usize {
        self.i0.source().len()
    }

    pub fn is_new(&self, e: Elem) -> bool {
        e.index() >= self.old_len()
    }

    pub fn new_elements(&self) -> impl Iterator<Item = (&Cut, Elem)> + '_ {
        self.i1.iter().filter(|(_, &e)| self.is_new(e)).map(|(c, &e)| (c, e))
    }
}

/// `I⁺`, or `I⁺_(tc)` when `transitive` is set.
pub fn pushout_plus(i: &Arc<Structure>, transitive: bool) -> Result<PushoutResult, UniversalError> {
    require_psur(&check_axioms(i))?;
    let old = i.len();
    let cuts = enumerate_cuts(i, CutKind::Conway)?;
    let mut taken: HashSet<String> = i.elements().map(|x| i.label(x)).collect();
    let mut labels: Vec<String> = i.elements().map(|x| i.label(x)).collect();
    let mut i1 = IndexMap::with_capacity(cuts.len());
    let mut glue = Vec::new();
    for cut in cuts {
        let e = match i.t().get_cut(&cut) {
            Some(x) => {
                glue.push((x, cut.clone()));
                x
            }
            None => {
                labels.push(fresh_label(&mut taken, cut_label(i, &cut.left, &cut.right)));
                Elem::new(labels.len() - 1)
            }
        };
        i1.insert(cut, e);
    }
    let n = labels.len();

    let mut neg: Vec<Elem> = i.neg_table().to_vec();
    neg.resize(n, Elem(0));
    for (cut, &e) in &i1 {
        if e.index() >= old {
            neg[e.index()] = *i1
                .get(&i.negate_cut(cut))
                .expect("negated cuts are cuts");
        }
    }

    let mut pairs: Vec<(Elem, Elem)> = if transitive {
        i.order().stored_pairs().collect()
    } else {
        i.order().pairs()
    };
    for (cut, &e) in &i1 {
        if e.index() >= old {
            pairs.extend(cut.left.iter().map(|&a| (a, e)));
            pairs.extend(cut.right.iter().map(|&b| (e, b)));
        }
    }
    let order = if transitive {
        let gen = Order::from_pairs(n, pairs, OrderForm::Generated);
        if n <= MATERIALIZE_LIMIT {
            gen.materialize()
        } else {
            gen
        }
    } else {
        Order::from_pairs(n, pairs, OrderForm::Explicit)
    };

    let structure = Arc::new(Structure::from_parts(
        Labels::Explicit(labels),
        i.star(),
        neg,
        order,
        TMap::Table(i1.clone()),
    )?);
    let i0 = Morphism::new(
        i.clone(),
        structure.clone(),
        i.elements().collect(),
        MorphismKind::Fpsur,
    )?;
    Ok(PushoutResult {
        structure,
        i0,
        i1,
        glue,
        transitive,
    })
}

/// The unique `f⁺ : I⁺ → S'` with `f⁺ ∘ i0 = f`, for a full morphism `f : I → S'`.
pub fn extend_universal(
    f: &Morphism,
    pushout: &PushoutResult,
) -> Result<Morphism, UniversalError> {
    if !Arc::ptr_eq(f.source(), pushout.i0.source()) {
        return Err(SigmaError::Invalid("morphism does not start at the pushout base".into()).into());
    }
    let report = check_morphism(&f.with_kind(MorphismKind::Fpsur));
    if let Some(v) = report.verdicts.iter().find(|v| !v.passed) {
        return Err(UniversalError::NotFull(v.to_string()));
    }
    let target = f.target();
    let mut table: Vec<Elem> = f.table().to_vec();
    table.resize(pushout.structure.len(), Elem(0));
    for (cut, e) in pushout.new_elements() {
        let image = f.image(cut);
        table[e.index()] = target.t().get_cut(&image).ok_or_else(|| {
            UniversalError::TargetCutUndefined(cut_label(target, &image.left, &image.right))
        })?;
    }
    let ext = Morphism::new(pushout.structure.clone(), target.clone(), table, MorphismKind::Psur)?;

    let old_agrees = f.source().elements().all(|x| ext.apply(pushout.i0.apply(x)) == f.apply(x));
    let cuts_agree = pushout
        .i1
        .iter()
        .all(|(cut, &e)| target.t().get_cut(&f.image(cut)) == Some(ext.apply(e)));
    if !old_agrees || !cuts_agree {
        return Err(SigmaError::Invalid("extension fails its defining equations".into()).into());
    }
    Ok(ext)
}
