//! Universal constructions over partial SUR-algebras: cut algebras, the one-step
//! pushout `I⁺`, colimits of finite chains, the free stages `SA(I)` and `ST(I)`, and
//! the canonical morphisms out of the hierarchy stages.

mod canonical;
mod colimit;
mod cut_algebra;
mod pushout;

use std::collections::HashSet;

use thiserror::Error;

use crate::hierarchy::HierarchyError;
use crate::sigma::{AxiomReport, Elem, SigmaError, Structure};

pub use canonical::{canonical_into, canonical_into_with, no_evaluator};
pub use colimit::{chain_colimit, free_over, ChainDiagram, Colimit, FreeChain};
pub use cut_algebra::{cut_algebra, cut_map, CutAlgebra, CUT_ALGEBRA_LIMIT};
pub use pushout::{extend_universal, pushout_plus, PushoutResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniversalError {
    #[error("not a partial SUR-algebra: {} fails", .0.join(", "))]
    NotPSur(Vec<String>),
    #[error("not a pSUR morphism: {} fails", .0.join(", "))]
    NotPSurMorphism(Vec<String>),
    #[error("morphism is not full: {0}")]
    NotFull(String),
    #[error("target cut map is undefined on {0}")]
    TargetCutUndefined(String),
    #[error("incompatible chain: {0}")]
    IncompatibleChain(String),
    #[error("stage {alpha} is beyond the budget of {limit}")]
    StageTooLarge { alpha: usize, limit: usize },
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
}

fn require_psur(report: &AxiomReport) -> Result<(), UniversalError> {
    if report.is_psur() {
        return Ok(());
    }
    Err(UniversalError::NotPSur(
        report
            .failures()
            .filter(|v| v.name.starts_with("pS"))
            .map(|v| v.name.clone())
            .collect(),
    ))
}

/// `<A|B>` over the labels of `s`, each side sorted.
fn cut_label(s: &Structure, left: &[Elem], right: &[Elem]) -> String {
    let side = |xs: &[Elem]| {
        let mut v = s.labels_of(xs);
        v.sort();
        v.join(",")
    };
    format!("<{}|{}>", side(left), side(right))
}

/// `candidate`, primed until it is not in `taken`; the result is added to `taken`.
fn fresh_label(taken: &mut HashSet<String>, candidate: String) -> String {
    let mut label = candidate;
    while taken.contains(&label) {
        label.push('\'');
    }
    taken.insert(label.clone());
    label
}

#[cfg(test)]
mod tests;
