use std::sync::Arc;

use indexmap::IndexMap;
use serde::Serialize;

use super::{Cut, Elem, Labels, Morphism, MorphismKind, SigmaError, Structure, TMap};

/// The Σ-substructure on `subset` (which must contain `*` and be closed under `−`),
/// with its inclusion.
pub fn substructure(
    s: &Arc<Structure>,
    subset: &[Elem],
) -> Result<(Arc<Structure>, Morphism), SigmaError> {
    let mut keep = subset.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let mut index = vec![None; s.len()];
    for (i, &x) in keep.iter().enumerate() {
        index[x.index()] = Some(Elem::new(i));
    }
    let at = |x: Elem| index[x.index()];
    let star = at(s.star()).ok_or_else(|| SigmaError::Invalid("subset must contain *".into()))?;
    let neg = keep
        .iter()
        .map(|&x| {
            at(s.neg(x)).ok_or_else(|| {
                SigmaError::Invalid(format!("subset is not closed under negation at {}", s.label(x)))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let order = s.order().restrict(&keep);
    let mut table = IndexMap::new();
    for (cut, v) in s.t().entries() {
        let (Some(v), true) = (at(v), cut.members().all(|m| at(m).is_some())) else {
            continue;
        };
        table.insert(cut.map(|m| at(m).expect("member kept")), v);
    }
    let labels = keep.iter().map(|&x| s.label(x)).collect();
    let sub = Arc::new(Structure::from_parts(
        Labels::Explicit(labels),
        star,
        neg,
        order,
        TMap::Table(table),
    )?);
    let inclusion = Morphism::new(sub.clone(), s.clone(), keep, MorphismKind::Sigma)?;
    Ok((sub, inclusion))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingKind {
    Embedding,
    Quasi,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingClass {
    pub kind: EmbeddingKind,
    pub injective: bool,
    pub order_reflecting: bool,
    pub cut_reflecting: bool,
}

fn cut_reflecting(j: &Morphism) -> bool {
    let (s, t) = (j.source(), j.target());
    let mut preimage = vec![None; t.len()];
    for x in s.elements() {
        preimage[j.apply(x).index()] = Some(x);
    }
    for (cut, _) in s.t().entries() {
        match t.t().get_cut(&j.image(&cut)) {
            Some(w) if preimage[w.index()].is_some() => {}
            _ => return false,
        }
    }
    for (cut, w) in t.t().entries() {
        if preimage[w.index()].is_none() {
            continue;
        }
        let back: Option<Vec<Elem>> = cut.left.iter().map(|y| preimage[y.index()]).collect();
        let forth: Option<Vec<Elem>> = cut.right.iter().map(|y| preimage[y.index()]).collect();
        if let (Some(l), Some(r)) = (back, forth) {
            if s.t().get_cut(&Cut::new(l, r)).is_none() {
                return false;
            }
        }
    }
    true
}

/// Injective, order-reflecting and cut-reflecting maps are embeddings; injective and
/// cut-reflecting ones are quasi-embeddings.
pub fn classify_embedding(j: &Morphism) -> EmbeddingClass {
    let (s, t) = (j.source(), j.target());
    let injective = j.is_injective();
    let order_reflecting = s.elements().all(|a| {
        s.elements()
            .all(|b| !t.lt(j.apply(a), j.apply(b)) || s.lt(a, b))
    });
    let cut_reflecting = injective && cut_reflecting(j);
    let kind = match (injective && cut_reflecting, order_reflecting) {
        (true, true) => EmbeddingKind::Embedding,
        (true, false) => EmbeddingKind::Quasi,
        _ => EmbeddingKind::None,
    };
    EmbeddingClass {
        kind,
        injective,
        order_reflecting,
        cut_reflecting,
    }
}
