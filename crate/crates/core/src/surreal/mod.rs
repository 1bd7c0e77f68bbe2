//! Finite surreal numbers: sign expansions, dyadic values, Conway arithmetic,
//! prenumbers, Cuesta-Dutari completion and the finite stages of `No`.

mod cuesta;
mod dyadic;
mod no_stage;
mod prenumber;
mod sign;

use thiserror::Error;

pub use cuesta::{cuesta_dutari_complete, iterate_completion, FiniteOrder, Origin};
pub use dyadic::{Dyadic, DyadicInt};
pub use no_stage::{no_stage, no_value, NO_STAGE_LIMIT};
pub use prenumber::{GameArena, GameId};
pub use sign::{add, mul, simplest_between, sub, Sign, SignExpansion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurrealError {
    #[error("not a cut: {left} is not below {right}")]
    NotACut {
        left: SignExpansion,
        right: SignExpansion,
    },
    #[error("game is not numeric")]
    NotNumeric,
    #[error("order is not a strict linear order at elements {0} and {1}")]
    NotLinear(usize, usize),
    #[error("not a sign expansion: {0:?}")]
    ParseSign(String),
    #[error("not a dyadic rational: {0:?}")]
    ParseDyadic(String),
    #[error("stage {alpha} is outside the supported range 1..={limit}")]
    StageOutOfRange { alpha: usize, limit: usize },
}

/// Every member of `a` is `≤` some member of `b`, and every member of `b` is `≤` some
/// member of `a`.
pub fn mutually_cofinal(a: &[SignExpansion], b: &[SignExpansion]) -> bool {
    let covered = |xs: &[SignExpansion], ys: &[SignExpansion]| {
        xs.iter().all(|x| ys.iter().any(|y| x <= y))
    };
    covered(a, b) && covered(b, a)
}

/// The dual of [`mutually_cofinal`].
pub fn mutually_coinitial(a: &[SignExpansion], b: &[SignExpansion]) -> bool {
    let covered = |xs: &[SignExpansion], ys: &[SignExpansion]| {
        xs.iter().all(|x| ys.iter().any(|y| y <= x))
    };
    covered(a, b) && covered(b, a)
}
