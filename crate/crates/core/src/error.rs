use thiserror::Error;

use crate::coxsys::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// The closure produced more objects than allowed; this is how an infinite
    /// (or merely too large) group shows up.
    #[error("enumeration cap exceeded: more than {cap} {what}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("operation requires all bonds to be finite (m{i}{j} = inf)")]
    InfiniteBond { i: usize, j: usize },

    #[error("requires evenly-laced s0")]
    EvenlyLacedRequired,

    #[error("requires s0 to be an even leaf")]
    EvenLeafRequired,

    #[error("requires the bond between s0 and its neighbor to be finite")]
    InfiniteLeafBond,

    #[error("requires at least {needed} generators besides s0 (found {found})")]
    RankTooSmall { needed: usize, found: usize },

    #[error("word has odd length {0}; it does not lie in the alternating subgroup")]
    OddLengthWord(usize),

    #[error("elements belong to different root systems")]
    MismatchedSystems,

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("exact arithmetic overflowed while {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
