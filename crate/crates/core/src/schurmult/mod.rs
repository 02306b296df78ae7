//! The centralizer cocycle c_{β̄,ρ}, its split-case witnesses and the
//! conjecture sweep.

mod cocycle;
mod rho;
mod split;
mod sweep;

pub use cocycle::{dual_vector_defect, gamma_map, CentralizerCocycle, DualVectorCache};
pub use rho::{is_injective, pairing_matrix, PairingKind, Rho};
pub use split::{delta_split_argument, exp_coordinates, from_exp_coordinates, SplitWitness, WitnessCheck};
pub use sweep::{
    conjecture_sweep, primary_nonsplit_classes, separable_classes, sweep_tables, Counterexample, RhoSelector, SweepOptions,
    SweepReport, SweepTables, WitnessEntry,
};
