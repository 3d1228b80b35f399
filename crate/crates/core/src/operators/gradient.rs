//! Gradient in the complex spherical basis
//! `e_{+1} = -(e_x + i e_y)/√2`, `e_0 = e_z`, `e_{-1} = (e_x - i e_y)/√2`.
//!
//! `∇ = -e_{+1} ∇_{-1} + e_0 ∇_0 - e_{-1} ∇_{+1}` with
//! `∇_{±1} = ∓ e^{±iθ}/√2 (∂_r ± i/r ∂_θ)` and `∇_0 = ∂_z`.

use crate::math;
use crate::C64;

/// Cylindrical partial derivatives of a scalar field at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CylindricalPartials {
    pub d_r: C64,
    pub d_theta: C64,
    pub d_z: C64,
}

/// `(∇_{+1}, ∇_0, ∇_{-1})` at `(r, θ)`.
pub fn spherical_components(p: &CylindricalPartials, r: f64, theta: f64) -> [C64; 3] {
    let i = C64::new(0.0, 1.0);
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let plus = -math::cis(theta) * s * (p.d_r + i * p.d_theta / r);
    let minus = math::cis(-theta) * s * (p.d_r - i * p.d_theta / r);
    [plus, p.d_z, minus]
}

/// Unit vectors `e_{+1}, e_0, e_{-1}` as Cartesian triples.
pub fn spherical_basis() -> [[C64; 3]; 3] {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let o = C64::new(0.0, 0.0);
    [[C64::new(-s, 0.0), C64::new(0.0, -s), o], [o, o, C64::new(1.0, 0.0)], [C64::new(s, 0.0), C64::new(0.0, -s), o]]
}

/// Cartesian `(∂_x, ∂_y, ∂_z)` from `(∇_{+1}, ∇_0, ∇_{-1})`.
pub fn recombine(components: &[C64; 3]) -> [C64; 3] {
    let [e_plus, e_zero, e_minus] = spherical_basis();
    let [g_plus, g_zero, g_minus] = *components;
    core::array::from_fn(|a| -e_plus[a] * g_minus + e_zero[a] * g_zero - e_minus[a] * g_plus)
}
