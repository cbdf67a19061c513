//! Exact computations in the alternating subgroup `W+` of a finite Coxeter
//! system `(W, S)` with a distinguished generator `s0`.

pub mod algnum;
pub mod alt;
pub mod bitset;
pub mod cli;
pub mod coxsys;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod genfun;
pub mod verify;

pub use alt::{AltGroup, AltWord, EvenLeaf, Flavor, Letter, Poset};
pub use coxsys::{Bond, CoxeterSystem, NodeClass, ParseError};
pub use engine::{Caps, Group, GroupElement, Id, RootSystem};
pub use error::{Error, Result};
