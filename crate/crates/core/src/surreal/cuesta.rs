//! Cuesta-Dutari completion of finite strict linear orders.

use super::SurrealError;

/// Where an element of a completed chain came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    /// Position in the chain that was completed.
    Old(usize),
    /// A cut of the completed chain, as index sets of its left and right parts.
    Cut { left: Vec<usize>, right: Vec<usize> },
}

/// A finite strict order given by its relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrder {
    lt: Vec<Vec<bool>>,
}

impl FiniteOrder {
    pub fn empty() -> Self {
        FiniteOrder { lt: Vec::new() }
    }

    pub fn from_matrix(lt: Vec<Vec<bool>>) -> Self {
        FiniteOrder { lt }
    }

    pub fn len(&self) -> usize {
        self.lt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lt.is_empty()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a][b]
    }

    /// Elements by increasing position; fails with a witness if the order is not linear.
    pub fn linear_sequence(&self) -> Result<Vec<usize>, SurrealError> {
        let n = self.len();
        for a in 0..n {
            if self.lt(a, a) {
                return Err(SurrealError::NotLinear(a, a));
            }
            for b in a + 1..n {
                if self.lt(a, b) == self.lt(b, a) {
                    return Err(SurrealError::NotLinear(a, b));
                }
            }
        }
        let mut seq: Vec<usize> = (0..n).collect();
        seq.sort_by_key(|&a| (0..n).filter(|&b| self.lt(b, a)).count());
        for (i, &a) in seq.iter().enumerate() {
            for &b in &seq[i + 1..] {
                if !self.lt(a, b) {
                    return Err(SurrealError::NotLinear(a, b));
                }
            }
        }
        Ok(seq)
    }
}

/// `T ∪ CD(T)`: the chain plus one new element for each of its cuts.
///
/// Cuts are ordered by strict inclusion of left parts, and an old element is below a
/// cut exactly when it lies in the cut's left part.
pub fn cuesta_dutari_complete(t: &FiniteOrder) -> Result<(FiniteOrder, Vec<Origin>), SurrealError> {
    let seq = t.linear_sequence()?;
    let n = seq.len();
    let mut origin: Vec<Origin> = (0..n).map(Origin::Old).collect();
    for k in 0..=n {
        let mut left = seq[..k].to_vec();
        let mut right = seq[k..].to_vec();
        left.sort_unstable();
        right.sort_unstable();
        origin.push(Origin::Cut { left, right });
    }
    let m = origin.len();
    let mut lt = vec![vec![false; m]; m];
    for a in 0..m {
        for b in 0..m {
            lt[a][b] = match (&origin[a], &origin[b]) {
                (Origin::Old(x), Origin::Old(y)) => t.lt(*x, *y),
                (Origin::Old(x), Origin::Cut { left, .. }) => left.contains(x),
                (Origin::Cut { right, .. }, Origin::Old(y)) => right.contains(y),
                (Origin::Cut { left: l1, .. }, Origin::Cut { left: l2, .. }) => {
                    l1.len() < l2.len() && l1.iter().all(|x| l2.contains(x))
                }
            };
        }
    }
    Ok((FiniteOrder::from_matrix(lt), origin))
}

/// `χ^n(∅)` and the iteration at which each element appeared.
pub fn iterate_completion(n: usize) -> Result<(FiniteOrder, Vec<usize>), SurrealError> {
    let mut order = FiniteOrder::empty();
    let mut born: Vec<usize> = Vec::new();
    for round in 0..n {
        let (next, origin) = cuesta_dutari_complete(&order)?;
        born = origin
            .iter()
            .map(|o| match o {
                Origin::Old(i) => born[*i],
                Origin::Cut { .. } => round,
            })
            .collect();
        order = next;
    }
    Ok((order, born))
}
