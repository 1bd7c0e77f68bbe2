use std::collections::HashSet;
use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};

use crate::sigma::{
    check_axioms, check_morphism, Cut, CutRef, Elem, Labels, Morphism, MorphismKind, Order,
    SigmaError, Structure, TMap,
};

use super::{cut_label, fresh_label, require_psur, UniversalError};

/// Largest cut-map domain [`cut_algebra`] will tabulate.
pub const CUT_ALGEBRA_LIMIT: u128 = 4_000_000;

/// The cut structure `C^t_s(S)` of a partial SUR-algebra, with `t` as a morphism back.
#[derive(Debug, Clone)]
pub struct CutAlgebra {
    pub structure: Arc<Structure>,
    pub base: Arc<Structure>,
    /// Element `i` is the cut `cuts[i]` of the base.
    pub cuts: IndexSet<Cut>,
    /// `(A, B) ↦ t(A, B)`.
    pub t_map: Morphism,
}

impl CutAlgebra {
    pub fn element(&self, cut: &Cut) -> Option<Elem> {
        self.cuts.get_index_of(cut).map(Elem::new)
    }

    pub fn cut(&self, e: Elem) -> &Cut {
        &self.cuts[e.index()]
    }

    /// Exactly one of `a <' b`, `t(a) = t(b)`, `b <' a` holds for every pair; otherwise
    /// the first pair where this fails.
    pub fn prelinear(&self) -> Result<(), (Elem, Elem)> {
        let s = &self.structure;
        for a in s.elements() {
            for b in s.elements().skip(a.index()) {
                let cases = [
                    s.lt(a, b),
                    self.t_map.apply(a) == self.t_map.apply(b),
                    s.lt(b, a),
                ];
                if cases.iter().filter(|&&c| c).count() != 1 {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }
}

pub fn cut_algebra(s: &Arc<Structure>) -> Result<CutAlgebra, UniversalError> {
    require_psur(&check_axioms(s))?;
    let mut entries: Vec<(Cut, Elem)> = s.t().entries().map(|(c, v)| (c.into_owned(), v)).collect();
    entries.sort_unstable();
    let cuts: IndexSet<Cut> = entries.iter().map(|(c, _)| c.clone()).collect();
    let values: Vec<Elem> = entries.iter().map(|&(_, v)| v).collect();
    let n = cuts.len();
    let at = |c: &Cut| cuts.get_index_of(c).map(Elem::new);

    let star = at(&Cut::empty())
        .ok_or_else(|| UniversalError::NotPSur(vec!["pS7".into()]))?;
    let neg = cuts
        .iter()
        .map(|c| at(&s.negate_cut(c)).ok_or_else(|| UniversalError::NotPSur(vec!["pS5".into()])))
        .collect::<Result<Vec<_>, _>>()?;

    let mut preimage: Vec<Vec<Elem>> = vec![Vec::new(); s.len()];
    for (i, v) in values.iter().enumerate() {
        preimage[v.index()].push(Elem::new(i));
    }
    let mut pairs = Vec::new();
    for (x, y) in s.order().stored_pairs() {
        for &a in &preimage[x.index()] {
            pairs.extend(preimage[y.index()].iter().map(|&b| (a, b)));
        }
    }
    let order = Order::from_pairs(n, pairs, s.order().form());

    let mut size: u128 = 0;
    for c in &cuts {
        let choices = c
            .members()
            .map(|m| (1u128 << preimage[m.index()].len().min(100)) - 1)
            .fold(1u128, |acc, k| acc.saturating_mul(k));
        size = size.saturating_add(choices);
    }
    if size > CUT_ALGEBRA_LIMIT {
        return Err(SigmaError::TooLarge {
            what: "cut algebra domain",
            size,
            limit: CUT_ALGEBRA_LIMIT,
        }
        .into());
    }
    let mut table = IndexMap::new();
    for (k, c) in cuts.iter().enumerate() {
        let left = lifts(&c.left, &preimage);
        let right = lifts(&c.right, &preimage);
        for l in &left {
            for r in &right {
                table.insert(Cut::new(l.iter().copied(), r.iter().copied()), Elem::new(k));
            }
        }
    }

    let mut taken = HashSet::new();
    let labels = cuts
        .iter()
        .map(|c| fresh_label(&mut taken, cut_label(s, &c.left, &c.right)))
        .collect();
    let structure = Arc::new(Structure::from_parts(
        Labels::Explicit(labels),
        star,
        neg,
        order,
        TMap::Table(table),
    )?);
    let t_map = Morphism::new(structure.clone(), s.clone(), values, MorphismKind::Psur)?;
    Ok(CutAlgebra {
        structure,
        base: s.clone(),
        cuts,
        t_map,
    })
}

/// Every set `α` of cut-algebra elements with `t[α] = side`.
fn lifts(side: &[Elem], preimage: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for m in side {
        let pre = &preimage[m.index()];
        let mut next = Vec::new();
        for mask in 1u64..1 << pre.len() {
            let chosen: Vec<Elem> = (0..pre.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pre[i])
                .collect();
            for prefix in &out {
                let mut v = prefix.clone();
                v.extend_from_slice(&chosen);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `C^t_s(f) : (A, B) ↦ (f[A], f[B])` between two cut algebras.
pub fn cut_map(
    f: &Morphism,
    from: &CutAlgebra,
    to: &CutAlgebra,
) -> Result<Morphism, UniversalError> {
    if !Arc::ptr_eq(f.source(), &from.base) || !Arc::ptr_eq(f.target(), &to.base) {
        return Err(SigmaError::Invalid("morphism does not join the given cut algebras".into()).into());
    }
    let report = check_morphism(&f.with_kind(MorphismKind::Psur));
    if !report.passed() {
        return Err(UniversalError::NotPSurMorphism(
            report.verdicts.iter().filter(|v| !v.passed).map(|v| v.name.clone()).collect(),
        ));
    }
    let table = from
        .cuts
        .iter()
        .map(|c| {
            let image = f.image(c);
            to.cuts
                .get_index_of(&CutRef {
                    left: &image.left,
                    right: &image.right,
                })
                .map(Elem::new)
                .ok_or_else(|| {
                    UniversalError::TargetCutUndefined(cut_label(&to.base, &image.left, &image.right))
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Morphism::new(
        from.structure.clone(),
        to.structure.clone(),
        table,
        MorphismKind::Psur,
    )?)
}
