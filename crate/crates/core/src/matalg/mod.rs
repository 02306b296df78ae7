//! Matrices over F_q, regular elements, the centralizer algebra F[β̄] and the
//! symplectic quotient V_β = M_n(F)/F[β̄].

mod matrix;
mod poly;
mod regular;
mod symplectic;
mod units;

pub use matrix::{dot, vec_add, vec_scale, vec_sub, Matrix};
pub use poly::Poly;
pub use regular::{is_regular, jordan_block, BetaShape, CentralizerAlgebra, RegularMatrix};
pub use symplectic::{involution_star, transpose_intertwiner, ComplementHint, Polarization, PolarizationKind, SymplecticSpace};
pub use units::{format_element, UnitGroup};
