use super::{Cut, Elem, Order, SigmaError, Structure};

/// Which pairs `(A, B)` with `A < B` to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutKind {
    /// Any pair of subsets with `A < B`.
    Conway,
    /// Conway cuts with `A ∪ B` the whole carrier.
    CuestaDutari,
    /// Cuesta-Dutari cuts with both sides non-empty.
    Dedekind,
}

/// Largest number of cuts an enumeration will produce.
pub const CUT_LIMIT: usize = 20_000_000;

/// All cuts of the given kind over a relation on at most 64 elements, sorted.
///
/// Elements are decided in index order; adding `x` to the left side requires it to be
/// below every chosen right member and narrows the common strict upper bounds of the
/// left side, which is where right members must then come from.
pub fn enumerate_order_cuts(order: &Order, kind: CutKind) -> Result<Vec<Cut>, SigmaError> {
    let n = order.len();
    if n > 64 {
        return Err(SigmaError::TooLarge {
            what: "cut enumeration over a carrier",
            size: n as u128,
            limit: 64,
        });
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut up = vec![0u64; n];
    let mut down = vec![0u64; n];
    for (a, up_a) in up.iter_mut().enumerate() {
        for b in order.successors(Elem::new(a)) {
            *up_a |= 1 << b.index();
            down[b.index()] |= 1 << a;
        }
    }
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64, 0u64, full, full)];
    while let Some((i, left, right, above, below)) = stack.pop() {
        if i == n {
            let ok = match kind {
                CutKind::Conway => true,
                CutKind::CuestaDutari => left | right == full,
                CutKind::Dedekind => left | right == full && left != 0 && right != 0,
            };
            if ok {
                if out.len() == CUT_LIMIT {
                    return Err(SigmaError::TooLarge {
                        what: "cut enumeration",
                        size: CUT_LIMIT as u128 + 1,
                        limit: CUT_LIMIT as u128,
                    });
                }
                out.push(Cut::new(bits(left), bits(right)));
            }
            continue;
        }
        let bit = 1u64 << i;
        let to_left = below & bit != 0;
        let to_right = above & bit != 0;
        if to_left && to_right && up[i] & bit != 0 {
            stack.push((i + 1, left | bit, right | bit, above & up[i], below & down[i]));
        }
        if to_right {
            stack.push((i + 1, left, right | bit, above, below & down[i]));
        }
        if to_left {
            stack.push((i + 1, left | bit, right, above & up[i], below));
        }
        if kind == CutKind::Conway {
            stack.push((i + 1, left, right, above, below));
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn bits(mask: u64) -> impl Iterator<Item = Elem> {
    (0..64).filter(move |i| mask >> i & 1 == 1).map(Elem::new)
}

pub fn enumerate_cuts(s: &Structure, kind: CutKind) -> Result<Vec<Cut>, SigmaError> {
    enumerate_order_cuts(s.order(), kind)
}
