//! Finite Coxeter groups as signed permutations of their positive roots.

mod group;
mod roots;

pub use group::{Caps, Group, Id};
pub use roots::{GroupElement, RootSystem, NEGATED};
