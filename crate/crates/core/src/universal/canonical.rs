use std::sync::Arc;

use crate::hierarchy::{HierarchyError, Stage};
use crate::sigma::{Cut, Elem, Morphism, MorphismKind, Structure};
use crate::surreal::{no_value, simplest_between, SignExpansion};

use super::{cut_label, UniversalError};

/// `h(⟨A, B⟩) = t'(h[A], h[B])`, with `t'` read from the target.
pub fn canonical_into(stage: &Stage, target: &Arc<Structure>) -> Result<Morphism, UniversalError> {
    canonical_into_with(stage, target, |cut| target.t().get_cut(cut))
}

/// [`canonical_into`] with the target cut map supplied by `eval`.
pub fn canonical_into_with(
    stage: &Stage,
    target: &Arc<Structure>,
    eval: impl Fn(&Cut) -> Option<Elem>,
) -> Result<Morphism, UniversalError> {
    let mut table: Vec<Elem> = Vec::with_capacity(stage.len());
    for x in stage.structure().elements() {
        let term = stage.term(x);
        if let Some(m) = term.members().find(|m| m.index() >= x.index()) {
            return Err(HierarchyError::Inconsistent(format!(
                "{} has the later member {}",
                stage.label(x),
                stage.label(m)
            ))
            .into());
        }
        let image = term.map(|m| table[m.index()]);
        let v = eval(&image).ok_or_else(|| {
            UniversalError::TargetCutUndefined(cut_label(target, &image.left, &image.right))
        })?;
        table.push(v);
    }
    Ok(Morphism::new(
        stage.structure().clone(),
        target.clone(),
        table,
        MorphismKind::Psur,
    )?)
}

/// The total cut map of `No` restricted to a stage of it: the simplest number
/// between the members, when the stage contains it.
pub fn no_evaluator(target: &Structure) -> impl Fn(&Cut) -> Option<Elem> + '_ {
    move |cut| {
        let value = |xs: &[Elem]| -> Option<Vec<SignExpansion>> {
            xs.iter().map(|&x| no_value(target, x).ok()).collect()
        };
        let v = simplest_between(&value(&cut.left)?, &value(&cut.right)?).ok()?;
        target.find(&v.to_string())
    }
}
