//! Operators as sums of `matrix × derivative` terms.
//!
//! Transverse derivatives are written in the raising/lowering form
//! `T(σ, τ) = e^{iσθ}(∂_r + iτ/r ∂_θ)`, so that `T(+1, +1) = ∂_x + i∂_y`
//! and `T(-1, -1) = ∂_x - i∂_y`. On `R(r) e^{imθ}` it gives
//! `(R' - τ m R/r) e^{i(m+σ)θ}`. In terms of the complex gradient,
//! `∇_{+1} = -T(+1, +1)/√2` and `∇_{-1} = T(-1, -1)/√2`.

use alloc::vec::Vec;

use super::matrices::{self, Mat4, ZERO4};
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivative {
    Identity,
    /// `∂_z`.
    Z,
    /// `∂_θ`.
    Theta,
    Transverse {
        shift: i32,
        tau: i32,
    },
}

impl Derivative {
    pub const RAISE: Derivative = Derivative::Transverse { shift: 1, tau: 1 };
    pub const LOWER: Derivative = Derivative::Transverse { shift: -1, tau: -1 };

    pub fn shift(&self) -> i32 {
        match self {
            Derivative::Transverse { shift, .. } => *shift,
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub matrix: Mat4,
    pub derivative: Derivative,
}

/// Sign convention for the auxiliary operator `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KConvention {
    /// `γ¹γ⁰γ³ ∂_x + γ²γ⁰γ³ ∂_y`, the product order as printed.
    PrintedOrder,
    /// `γ¹γ³γ⁰ ∂_x + γ²γ³γ⁰ ∂_y`: the opposite overall sign.
    ConnectionOrder,
    /// Printed matrices with the rotated frame `γ̃² = (γ¹ sinθ + γ² cosθ)/r`.
    TildeRotation,
}

impl KConvention {
    pub const ALL: [KConvention; 3] =
        [KConvention::PrintedOrder, KConvention::ConnectionOrder, KConvention::TildeRotation];

    pub fn name(&self) -> &'static str {
        match self {
            KConvention::PrintedOrder => "printed-order",
            KConvention::ConnectionOrder => "connection-order",
            KConvention::TildeRotation => "tilde-rotation",
        }
    }
}

/// `constant + dx ∂_x + dy ∂_y + dz ∂_z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CartesianForm {
    pub constant: Mat4,
    pub dx: Mat4,
    pub dy: Mat4,
    pub dz: Mat4,
}

impl CartesianForm {
    pub fn zero() -> Self {
        CartesianForm { constant: ZERO4, dx: ZERO4, dy: ZERO4, dz: ZERO4 }
    }

    /// `α·(-i∇) + β m`.
    pub fn hamiltonian(mass: f64) -> Self {
        let mi = C64::new(0.0, -1.0);
        CartesianForm {
            constant: matrices::scale(&matrices::beta(), C64::new(mass, 0.0)),
            dx: matrices::scale(&matrices::alpha(0), mi),
            dy: matrices::scale(&matrices::alpha(1), mi),
            dz: matrices::scale(&matrices::alpha(2), mi),
        }
    }

    /// `Σ·(-i∇)`.
    pub fn helicity() -> Self {
        let mi = C64::new(0.0, -1.0);
        CartesianForm {
            constant: ZERO4,
            dx: matrices::scale(&matrices::big_sigma(0), mi),
            dy: matrices::scale(&matrices::big_sigma(1), mi),
            dz: matrices::scale(&matrices::big_sigma(2), mi),
        }
    }

    /// `K` in the two conventions that have a constant-coefficient form.
    pub fn k_operator(convention: KConvention) -> Option<Self> {
        let sign = match convention {
            KConvention::PrintedOrder => 1.0,
            KConvention::ConnectionOrder => -1.0,
            KConvention::TildeRotation => return None,
        };
        let (a, b) = k_matrices();
        let s = C64::new(sign, 0.0);
        Some(CartesianForm { constant: ZERO4, dx: matrices::scale(&a, s), dy: matrices::scale(&b, s), dz: ZERO4 })
    }
}

/// `(γ¹γ⁰γ³, γ²γ⁰γ³)`.
pub fn k_matrices() -> (Mat4, Mat4) {
    let g = matrices::gamma;
    let g03 = matrices::mul(&g(0), &g(3));
    (matrices::mul(&g(1), &g03), matrices::mul(&g(2), &g03))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    pub name: &'static str,
    pub terms: Vec<Term>,
}

impl Operator {
    pub fn new(name: &'static str, terms: Vec<Term>) -> Self {
        let terms = terms.into_iter().filter(|t| !matrices::is_zero(&t.matrix)).collect();
        Operator { name, terms }
    }

    pub fn from_cartesian(name: &'static str, form: &CartesianForm) -> Self {
        // a ∂_x + b ∂_y = (a - i b)/2 · T(+1,+1) + (a + i b)/2 · T(-1,-1)
        let half = C64::new(0.5, 0.0);
        let i = C64::new(0.0, 1.0);
        let raise = matrices::scale(&matrices::add(&form.dx, &matrices::scale(&form.dy, -i)), half);
        let lower = matrices::scale(&matrices::add(&form.dx, &matrices::scale(&form.dy, i)), half);
        Operator::new(
            name,
            alloc::vec![
                Term { matrix: form.constant, derivative: Derivative::Identity },
                Term { matrix: raise, derivative: Derivative::RAISE },
                Term { matrix: lower, derivative: Derivative::LOWER },
                Term { matrix: form.dz, derivative: Derivative::Z },
            ],
        )
    }

    pub fn hamiltonian(mass: f64) -> Self {
        Operator::from_cartesian("hamiltonian", &CartesianForm::hamiltonian(mass))
    }

    /// `-i ∂_z`.
    pub fn momentum_z() -> Self {
        let m = matrices::scale(&matrices::identity(), C64::new(0.0, -1.0));
        Operator::new("momentum_z", alloc::vec![Term { matrix: m, derivative: Derivative::Z }])
    }

    /// `-i ∂_θ`.
    pub fn orbital_z() -> Self {
        let m = matrices::scale(&matrices::identity(), C64::new(0.0, -1.0));
        Operator::new("orbital_z", alloc::vec![Term { matrix: m, derivative: Derivative::Theta }])
    }

    /// `Σ_z / 2`.
    pub fn spin_z() -> Self {
        let m = matrices::scale(&matrices::big_sigma(2), C64::new(0.5, 0.0));
        Operator::new("spin_z", alloc::vec![Term { matrix: m, derivative: Derivative::Identity }])
    }

    pub fn total_jz() -> Self {
        let mut terms = Operator::orbital_z().terms;
        terms.extend(Operator::spin_z().terms);
        Operator::new("total_jz", terms)
    }

    pub fn helicity() -> Self {
        Operator::from_cartesian("helicity", &CartesianForm::helicity())
    }

    /// Longitudinal part of the helicity, `Σ_z (-i ∂_z)`.
    pub fn helicity_longitudinal() -> Self {
        let m = matrices::scale(&matrices::big_sigma(2), C64::new(0.0, -1.0));
        Operator::new("helicity_longitudinal", alloc::vec![Term { matrix: m, derivative: Derivative::Z }])
    }

    pub fn k_operator(convention: KConvention) -> Self {
        if let Some(form) = CartesianForm::k_operator(convention) {
            return Operator::from_cartesian("k_operator", &form);
        }
        // A (cosθ ∂_r + sinθ/r ∂_θ) + B (sinθ ∂_r + cosθ/r ∂_θ)
        //   = A/2 [T(1,-1) + T(-1,1)] + B/(2i) [T(1,1) - T(-1,-1)]
        let (a, b) = k_matrices();
        let half = C64::new(0.5, 0.0);
        let b_half = matrices::scale(&b, C64::new(0.0, -0.5));
        let minus_b_half = matrices::scale(&b, C64::new(0.0, 0.5));
        Operator::new(
            "k_operator",
            alloc::vec![
                Term { matrix: matrices::scale(&a, half), derivative: Derivative::Transverse { shift: 1, tau: -1 } },
                Term { matrix: matrices::scale(&a, half), derivative: Derivative::Transverse { shift: -1, tau: 1 } },
                Term { matrix: b_half, derivative: Derivative::RAISE },
                Term { matrix: minus_b_half, derivative: Derivative::LOWER },
            ],
        )
    }

    /// `c · self`.
    pub fn scaled(&self, c: C64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { matrix: matrices::scale(&t.matrix, c), derivative: t.derivative })
            .collect();
        Operator::new(self.name, terms)
    }

    /// `self + other`, named after `self`.
    pub fn plus(&self, other: &Operator) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().copied());
        Operator::new(self.name, terms)
    }

    /// Whether every term maps a mode set `(n, n+1, n, n+1)` onto another
    /// mode set of the same shape.
    pub fn keeps_mode_structure(&self) -> bool {
        use crate::beam::MODE_OFFSETS;
        self.terms.iter().all(|t| {
            let shift = t.derivative.shift();
            (0..4).all(|s| {
                (0..4).all(|c| t.matrix[s][c].norm_sqr() == 0.0 || MODE_OFFSETS[c] + shift - MODE_OFFSETS[s] == 0)
            })
        })
    }
}
