//! Operators on Bessel-spinor states: Hamiltonian, `p_z`, `L_z`, `S_z`,
//! `J_z`, the auxiliary operator `K` and the helicity `Σ·p`.
//!
//! The ground truth is the constant-coefficient Cartesian form of each
//! operator. The cylindrical forms are derived from it term by term, and
//! act on the mode representation with exact `∂_θ`, `∂_z` and grid
//! derivatives in `r`.

mod algebra;
mod cartesian;
mod field;
pub mod gradient;
mod grid;
pub mod matrices;
mod residual;

pub use algebra::{k_matrices, CartesianForm, Derivative, KConvention, Operator, Term};
pub use cartesian::{apply_cartesian_at, apply_cartesian_box, BoxGrid};
pub use field::{apply_at, apply_full_fd_at, central_derivative, SpinorField};
pub use grid::{fornberg_first_derivative, RadialGrid, Spacing, MIN_NODES};
pub use residual::{
    best_fit, estimate_order, refinement_sequence, relative_residual, residual_report, Action, ResidualLevel,
    ResidualReport, ROUNDING_FLOOR,
};
