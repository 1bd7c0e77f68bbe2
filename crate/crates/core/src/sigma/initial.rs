use indexmap::IndexMap;

use super::{Cut, Elem, Labels, Order, Structure, TMap};

/// The one-point pSUR-algebra: `t(∅, ∅) = *` and nothing else.
pub fn initial_psur() -> Structure {
    let mut table = IndexMap::new();
    table.insert(Cut::empty(), Elem(0));
    Structure::from_parts_unchecked(
        Labels::Explicit(vec!["<|>".into()]),
        Elem(0),
        vec![Elem(0)],
        Order::empty(1),
        TMap::Table(table),
    )
}

/// The same order, star and negation with the cut map cut down to `(∅, ∅) ↦ *`.
pub fn minimal_partial(s: &Structure) -> Structure {
    let mut table = IndexMap::new();
    table.insert(Cut::empty(), s.star());
    s.with_t(TMap::Table(table))
}
