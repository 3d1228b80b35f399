//! Radial grids without a node on the axis, with five-point first-derivative
//! stencils.
//!
//! Near the axis the stencils reach across it: node `-r_j` is the mirror of
//! node `r_j`, and a component with azimuthal index `m` continues as
//! `R(-r) = (-1)^m R(r)`. The last two nodes use one-sided stencils.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::C64;

pub const MIN_NODES: usize = 32;
const WIDTH: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    /// `r_i = (i + 1/2) h`, `h = r_max/(count - 1/2)`.
    UniformOffset,
    /// Positive half of the Chebyshev-Gauss nodes of `[-R, R]`, scaled so
    /// the last node sits at `r_max`. Clustered towards `r_max`.
    Chebyshev,
}

impl Spacing {
    pub fn name(&self) -> &'static str {
        match self {
            Spacing::UniformOffset => "uniform-offset",
            Spacing::Chebyshev => "chebyshev",
        }
    }
}

/// Node index into the extended list; negative values address mirrors:
/// `-1 - j` is the mirror of node `j`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Stencil {
    start: isize,
    weights: [f64; WIDTH],
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialGrid {
    pub spacing: Spacing,
    pub nodes: Vec<f64>,
    /// Quadrature weights for `∫ f r dr`.
    pub weights: Vec<f64>,
    stencils: Vec<Stencil>,
}

impl RadialGrid {
    pub fn new(spacing: Spacing, r_max: f64, count: usize) -> Result<Self> {
        if count < MIN_NODES {
            return Err(Error::GridTooCoarse { count });
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(Error::InvalidConfig("grid r_max must be > 0"));
        }
        let nodes: Vec<f64> = match spacing {
            Spacing::UniformOffset => {
                let h = r_max / (count as f64 - 0.5);
                (0..count).map(|i| (i as f64 + 0.5) * h).collect()
            }
            Spacing::Chebyshev => {
                let c = count as f64;
                let big_r = r_max / math::cos(math::PI / (4.0 * c));
                (0..count).rev().map(|j| big_r * math::cos(math::PI * (2.0 * j as f64 + 1.0) / (4.0 * c))).collect()
            }
        };
        let weights = cell_weights(&nodes);
        let stencils = (0..count).map(|i| stencil(&nodes, i)).collect();
        Ok(RadialGrid { spacing, nodes, weights, stencils })
    }

    pub fn uniform(r_max: f64, count: usize) -> Result<Self> {
        RadialGrid::new(Spacing::UniformOffset, r_max, count)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn r_min(&self) -> f64 {
        self.nodes[0]
    }

    pub fn r_max(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Largest node spacing.
    pub fn step(&self) -> f64 {
        let inner = 2.0 * self.nodes[0];
        self.nodes.windows(2).map(|w| w[1] - w[0]).fold(inner, f64::max)
    }

    /// `dR/dr` at every node for samples of a component with azimuthal index `m`.
    pub fn derivative(&self, values: &[C64], m: i32) -> Vec<C64> {
        let parity = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let at = |idx: isize| -> C64 {
            if idx >= 0 {
                values[idx as usize]
            } else {
                values[(-1 - idx) as usize] * parity
            }
        };
        self.stencils
            .iter()
            .map(|st| {
                let mut acc = C64::new(0.0, 0.0);
                for (j, w) in st.weights.iter().enumerate() {
                    acc += at(st.start + j as isize) * *w;
                }
                acc
            })
            .collect()
    }
}

fn position(nodes: &[f64], idx: isize) -> f64 {
    if idx >= 0 {
        nodes[idx as usize]
    } else {
        -nodes[(-1 - idx) as usize]
    }
}

fn stencil(nodes: &[f64], i: usize) -> Stencil {
    let last = nodes.len() as isize - 1;
    let half = (WIDTH / 2) as isize;
    let start = (i as isize - half).min(last - WIDTH as isize + 1);
    let x: [f64; WIDTH] = core::array::from_fn(|j| position(nodes, start + j as isize));
    Stencil { start, weights: fornberg_first_derivative(nodes[i], &x) }
}

/// Weights `w_j` with `f'(x0) ≈ Σ w_j f(x_j)`.
pub fn fornberg_first_derivative<const N: usize>(x0: f64, x: &[f64; N]) -> [f64; N] {
    // c[j][k]: weight of node j for the k-th derivative, k = 0, 1
    let mut c = [[0.0_f64; 2]; N];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = x[0] - x0;
    for i in 1..N {
        let mn = i.min(1);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - x0;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    core::array::from_fn(|j| c[j][1])
}

/// `r_i Δ_i` with `Δ_i` the width of the cell between neighbouring midpoints.
fn cell_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    (0..n)
        .map(|i| {
            let lo = if i == 0 { 0.0 } else { 0.5 * (nodes[i - 1] + nodes[i]) };
            let hi =
                if i + 1 == n { nodes[i] + 0.5 * (nodes[i] - nodes[i - 1]) } else { 0.5 * (nodes[i] + nodes[i + 1]) };
            nodes[i] * (hi - lo)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn too_coarse() {
        assert_eq!(RadialGrid::uniform(1.0, 31), Err(Error::GridTooCoarse { count: 31 }));
    }

    #[test]
    fn offset_grid_has_no_axis_node() {
        let g = RadialGrid::uniform(2.0, 64).unwrap();
        let h = g.nodes[1] - g.nodes[0];
        assert!((g.r_min() - 0.5 * h).abs() < 1e-15);
        assert!((g.r_max() - 2.0).abs() < 1e-14);
        let c = RadialGrid::new(Spacing::Chebyshev, 2.0, 64).unwrap();
        assert!(c.r_min() > 0.0);
        assert!((c.r_max() - 2.0).abs() < 1e-14);
        assert!(c.nodes.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn fornberg_central_weights() {
        let w = fornberg_first_derivative(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0]);
        let want = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        for j in 0..5 {
            assert!((w[j] - want[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn quartic_polynomials_are_differentiated_exactly() {
        for spacing in [Spacing::UniformOffset, Spacing::Chebyshev] {
            let g = RadialGrid::new(spacing, 1.5, 40).unwrap();
            // even in r: m = 0; odd in r: m = 1
            let even: Vec<C64> = g.nodes.iter().map(|r| C64::new(1.0 + r * r - 0.3 * r.powi(4), 0.0)).collect();
            let odd: Vec<C64> = g.nodes.iter().map(|r| C64::new(0.0, r - 2.0 * r.powi(3))).collect();
            let de = g.derivative(&even, 0);
            let dodd = g.derivative(&odd, 1);
            for (i, r) in g.nodes.iter().enumerate() {
                assert!((de[i].re - (2.0 * r - 1.2 * r.powi(3))).abs() < 1e-10, "{spacing:?} {i}");
                assert!((dodd[i].im - (1.0 - 6.0 * r * r)).abs() < 1e-10, "{spacing:?} {i}");
            }
        }
    }

    #[test]
    fn weights_integrate_r() {
        let g = RadialGrid::uniform(1.0, 1000).unwrap();
        let h = g.nodes[1] - g.nodes[0];
        let s: f64 = g.weights.iter().map(|w| 2.0 * w).sum();
        // ∫_0^{1+h/2} 2r dr for the midpoint rule
        assert!((s - (1.0 + 0.5 * h).powi(2)).abs() < 1e-6);
    }
}
