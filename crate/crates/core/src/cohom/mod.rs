//! 2-cocycles on finite abelian groups with values in roots of unity.

mod cocycle;
mod group;
mod solver;

pub use cocycle::{random, CoboundaryWitness, Cocycle2};
pub use group::{AbelianGroupTable, MAX_GROUP_ORDER};
pub use solver::{find_coboundary, solve_coboundary, witness_modulus};
