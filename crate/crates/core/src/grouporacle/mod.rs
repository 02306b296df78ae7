//! Brute-force ground truth inside GL_n(O_3): characters of congruence
//! subgroups, their orbits, the representation π_ψ and the cocycle c_U.

mod congruence;
mod intertwiner;
mod oracle;
mod orbits;
mod pipsi;
mod ring;

pub use congruence::{Congruence, ExtensionReport, KGroup, L, R};
pub use intertwiner::{inverse_class, same_class, snap_modulus, CuExtraction, SNAP_TOL};
pub use oracle::{compare_ring_kinds, count_irr, run_oracle, IrrCount, OracleOptions, OracleReport, RhoEntry, RingComparison};
pub use orbits::{orbit_census, OrbitCensus, XSet};
pub use pipsi::{random_k1, Monomial, PiPsi, PiPsiReport, OP_TOL};
pub use ring::{LMat, LocalRing, RingKind};
