//! Eigen-residuals `‖Oψ - oψ‖/‖ψ‖` over a sequence of grids.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::algebra::{KConvention, Operator};
use super::field::SpinorField;
use super::grid::RadialGrid;
use crate::beam::ModeState;
use crate::error::{Error, Result};
use crate::math;
use crate::C64;

/// Residuals below this are treated as rounding noise when estimating the
/// convergence order.
pub const ROUNDING_FLOOR: f64 = 1e-11;

#[derive(Clone, Copy, Debug)]
pub enum Action<'a> {
    Single(&'a Operator),
    Power(&'a Operator, u32),
    Commutator(&'a Operator, &'a Operator),
}

impl Action<'_> {
    pub fn on(&self, field: &SpinorField) -> SpinorField {
        match *self {
            Action::Single(op) => field.apply(op),
            Action::Power(op, p) => field.apply_power(op, p),
            Action::Commutator(a, b) => field.apply_commutator(a, b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualLevel {
    pub count: usize,
    pub h: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub label: String,
    pub convention: Option<KConvention>,
    pub eigenvalue: C64,
    pub levels: Vec<ResidualLevel>,
    /// Smallest observed order over successive refinements above the
    /// rounding floor; `None` if fewer than two levels are above it.
    pub order: Option<f64>,
}

impl ResidualReport {
    /// Residual on the finest grid.
    pub fn finest(&self) -> f64 {
        self.levels.last().map(|l| l.residual).unwrap_or(f64::NAN)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.finest() < tol
    }

    pub fn decreasing(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].residual < w[0].residual)
    }
}

/// `min log(r_i/r_{i+1}) / log(h_i/h_{i+1})` over pairs with both residuals
/// above `floor`.
pub fn estimate_order(levels: &[ResidualLevel], floor: f64) -> Option<f64> {
    levels
        .windows(2)
        .filter(|w| w[0].residual > floor && w[1].residual > floor)
        .map(|w| math::ln(w[0].residual / w[1].residual) / math::ln(w[0].h / w[1].h))
        .fold(None, |acc: Option<f64>, o| Some(acc.map_or(o, |a| a.min(o))))
}

pub fn relative_residual(action: Action<'_>, psi: &SpinorField, eigenvalue: C64) -> f64 {
    let out = action.on(psi);
    out.add_scaled(psi, -eigenvalue).norm() / psi.norm()
}

pub fn residual_report<S: ModeState + ?Sized>(
    label: &str,
    convention: Option<KConvention>,
    action: Action<'_>,
    state: &S,
    eigenvalue: C64,
    grids: &[RadialGrid],
) -> Result<ResidualReport> {
    if grids.len() < 2 {
        return Err(Error::TooFewLevels(grids.len()));
    }
    let levels = grids
        .iter()
        .map(|g| {
            let g = Arc::new(g.clone());
            let psi = SpinorField::sample(state, &g);
            ResidualLevel { count: g.len(), h: g.step(), residual: relative_residual(action, &psi, eigenvalue) }
        })
        .collect::<Vec<_>>();
    let order = estimate_order(&levels, ROUNDING_FLOOR);
    Ok(ResidualReport { label: label.into(), convention, eigenvalue, levels, order })
}

/// Eigenvalue minimizing the residual, `⟨ψ|Oψ⟩/⟨ψ|ψ⟩`, and that residual.
/// Used only for the non-eigenstate witnesses.
pub fn best_fit<S: ModeState + ?Sized>(action: Action<'_>, state: &S, grid: &RadialGrid) -> (C64, f64) {
    let g = Arc::new(grid.clone());
    let psi = SpinorField::sample(state, &g);
    let out = action.on(&psi);
    let e = psi.inner(&out) / psi.inner(&psi).re;
    (e, out.add_scaled(&psi, -e).norm() / psi.norm())
}

/// Grids with `count · 2^l` nodes on `[0, r_max]`, `l = 0..levels`.
pub fn refinement_sequence(
    spacing: super::grid::Spacing,
    r_max: f64,
    count: usize,
    levels: usize,
) -> Result<Vec<RadialGrid>> {
    (0..levels).map(|l| RadialGrid::new(spacing, r_max, count << l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_estimate() {
        let levels = [
            ResidualLevel { count: 64, h: 0.04, residual: 1.6e-5 },
            ResidualLevel { count: 128, h: 0.02, residual: 1e-6 },
            ResidualLevel { count: 256, h: 0.01, residual: 6.25e-8 },
            ResidualLevel { count: 512, h: 0.005, residual: 2e-12 },
        ];
        let o = estimate_order(&levels, 1e-11).unwrap();
        assert!((o - 4.0).abs() < 1e-12);
        assert_eq!(estimate_order(&levels[2..], 1e-7), None);
    }
}
