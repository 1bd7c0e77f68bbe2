use std::sync::Arc;

use crate::sigma::{Elem, ExtremalT, Labels, Order, OrderForm, Structure, TMap};

use super::{simplest_between, SignExpansion, SurrealError};

/// Largest supported stage; the order is stored pair by pair.
pub const NO_STAGE_LIMIT: usize = 12;

/// The numbers born before day `alpha`, ordered as surreals, with the cut map defined
/// on every cut over the numbers born before day `alpha − 1`.
pub fn no_stage(alpha: usize) -> Result<Arc<Structure>, SurrealError> {
    if alpha == 0 || alpha > NO_STAGE_LIMIT {
        return Err(SurrealError::StageOutOfRange {
            alpha,
            limit: NO_STAGE_LIMIT,
        });
    }
    let elements = SignExpansion::all_below(alpha);
    let n = elements.len();
    let index = |x: &SignExpansion| Elem::new(elements.binary_search(x).expect("element of stage"));
    let pairs = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (Elem::new(a), Elem::new(b))))
        .collect();
    let order = Order::from_pairs(n, pairs, OrderForm::Explicit);
    let neg = elements.iter().map(|x| index(&-x)).collect();
    let base: Vec<Elem> = (0..n)
        .filter(|&i| elements[i].len() + 1 < alpha)
        .map(Elem::new)
        .collect();
    let ext = ExtremalT::new(base, |lo, hi| {
        let lo: Vec<_> = lo.map(|e| elements[e.index()].clone()).into_iter().collect();
        let hi: Vec<_> = hi.map(|e| elements[e.index()].clone()).into_iter().collect();
        index(&simplest_between(&lo, &hi).expect("bounds are ordered"))
    });
    let labels = elements.iter().map(|x| x.to_string()).collect();
    Ok(Arc::new(Structure::from_parts_unchecked(
        Labels::Explicit(labels),
        index(&SignExpansion::zero()),
        neg,
        order,
        TMap::Extremal(ext),
    )))
}

/// The number an element of a [`no_stage`] stands for.
pub fn no_value(s: &Structure, e: Elem) -> Result<SignExpansion, SurrealError> {
    s.label(e).parse()
}
