//! Constant-coefficient operators applied in Cartesian coordinates with
//! fourth-order finite differences in `x`, `y` and `z`.

use alloc::vec::Vec;

use super::algebra::CartesianForm;
use super::field::central_derivative;
use super::matrices;
use crate::beam::ModeState;
use crate::error::{Error, Result};
use crate::math;
use crate::C64;

/// `form ψ` at `(x, y, z)`. Every stencil point must stay at least `r_min`
/// from the axis.
pub fn apply_cartesian_at<S: ModeState + ?Sized>(
    form: &CartesianForm,
    state: &S,
    point: [f64; 3],
    h: f64,
    r_min: f64,
) -> Result<[C64; 4]> {
    let [x, y, z] = point;
    let mut closest = f64::INFINITY;
    for j in [-2.0, -1.0, 1.0, 2.0] {
        closest = closest.min(math::hypot(x + j * h, y)).min(math::hypot(x, y + j * h));
    }
    if closest < r_min {
        return Err(Error::AxisIntrusion { rho: math::hypot(x, y), min: r_min });
    }
    let psi = state.at_cartesian(x, y, z);
    let dx = central_derivative(|v| state.at_cartesian(v, y, z), x, h);
    let dy = central_derivative(|v| state.at_cartesian(x, v, z), y, h);
    let dz = central_derivative(|v| state.at_cartesian(x, y, v), z, h);
    let mut out = matrices::apply(&form.constant, &psi);
    for (m, d) in [(&form.dx, dx), (&form.dy, dy), (&form.dz, dz)] {
        let v = matrices::apply(m, &d);
        for s in 0..4 {
            out[s] += v[s];
        }
    }
    Ok(out)
}

/// Tensor-product box of sample points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoxGrid {
    pub lower: [f64; 3],
    pub upper: [f64; 3],
    pub counts: [usize; 3],
    /// Finite-difference step.
    pub h: f64,
    /// Minimum distance of any stencil point from the axis.
    pub r_min: f64,
}

impl BoxGrid {
    pub fn points(&self) -> Vec<[f64; 3]> {
        let coord = |axis: usize, i: usize| {
            if self.counts[axis] == 1 {
                self.lower[axis]
            } else {
                self.lower[axis] + (self.upper[axis] - self.lower[axis]) * i as f64 / (self.counts[axis] - 1) as f64
            }
        };
        let mut out = Vec::with_capacity(self.counts.iter().product());
        for i in 0..self.counts[0] {
            for j in 0..self.counts[1] {
                for k in 0..self.counts[2] {
                    out.push([coord(0, i), coord(1, j), coord(2, k)]);
                }
            }
        }
        out
    }
}

pub fn apply_cartesian_box<S: ModeState + ?Sized>(
    form: &CartesianForm,
    state: &S,
    grid: &BoxGrid,
) -> Result<Vec<([f64; 3], [C64; 4])>> {
    if grid.counts.contains(&0) {
        return Err(Error::InvalidConfig("box grid needs at least one point per axis"));
    }
    if !(grid.h > 0.0) {
        return Err(Error::InvalidConfig("finite-difference step must be > 0"));
    }
    grid.points().into_iter().map(|p| apply_cartesian_at(form, state, p, grid.h, grid.r_min).map(|v| (p, v))).collect()
}
