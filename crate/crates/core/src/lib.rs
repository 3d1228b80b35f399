//! Exact Bessel-spinor eigenstates of the free Dirac equation in cylindrical
//! coordinates, numerical operator checks on them, and the angular-momentum
//! and helicity observables of relativistic electron vortex beams.
//!
//! Natural units throughout (`ħ = c = 1`); energies and momenta are in units
//! of the electron rest mass unless a different mass is given.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command line live in the companion `vortex-cli` crate.
//!
//! Layout:
//! - [`bessel`]: integer-order `J_n` and first positive zeros.
//! - [`beam`]: quantum numbers, kinematics, normalized eigenspinors.
//! - [`series`]: Frobenius solution of the radial system.
//! - [`operators`]: Hamiltonian, `J_z`, `K`, `p_z`, helicity on spinor fields.
//! - [`quadrature`] and [`observables`]: radial integrals, `Δ_n`, expectations.
//! - [`fidelity`]: the printed component forms, evaluated as-is.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod beam;
pub mod bessel;
pub mod dd;
pub mod error;
pub mod fidelity;
mod math;
pub mod observables;
pub mod operators;
pub mod quadrature;
pub mod series;

pub use num_complex::Complex64 as C64;

pub use beam::{
    BeamGeometry, BeamState, Branch, CutoffRule, CylPoint, DerivedKinematics, EigenMode, ModeSet, ModeState,
    QuantumNumbers, SpinorSample, Units,
};
pub use bessel::{bessel_j, first_positive_zero, BesselSeriesConfig};
pub use error::{Error, Result};
pub use observables::{ObservableReport, QuadratureConfig, QuadratureRule};
pub use operators::{KConvention, Operator, RadialGrid, ResidualReport, Spacing};
pub use series::RadialSeries;
