//! Spinor fields on a radial grid in the mode representation, and operator
//! application on them.
//!
//! A field is a sum of parts `R_{s,m}(r) e^{imθ} e^{ik_z z}` keyed by
//! component `s` and azimuthal index `m`. Distinct `m` are orthogonal over
//! `θ`, so norms and inner products reduce to radial sums.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::algebra::{Derivative, Operator};
use super::grid::RadialGrid;
use crate::beam::{CylPoint, ModeState};
use crate::math;
use crate::quadrature::NeumaierSum;
use crate::C64;

#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    pub grid: Arc<RadialGrid>,
    pub k_z: f64,
    parts: BTreeMap<(usize, i32), Vec<C64>>,
}

impl SpinorField {
    pub fn sample<S: ModeState + ?Sized>(state: &S, grid: &Arc<RadialGrid>) -> Self {
        let modes = state.modes();
        let mut columns: [Vec<C64>; 4] = core::array::from_fn(|_| Vec::with_capacity(grid.len()));
        for &r in &grid.nodes {
            let v = state.radial(r);
            for s in 0..4 {
                columns[s].push(v[s]);
            }
        }
        let mut parts = BTreeMap::new();
        for (s, column) in columns.into_iter().enumerate() {
            parts.insert((s, modes.azimuthal(s)), column);
        }
        SpinorField { grid: grid.clone(), k_z: modes.k_z, parts }
    }

    pub fn zero_like(&self) -> Self {
        SpinorField { grid: self.grid.clone(), k_z: self.k_z, parts: BTreeMap::new() }
    }

    pub fn parts(&self) -> impl Iterator<Item = (&(usize, i32), &Vec<C64>)> {
        self.parts.iter()
    }

    fn accumulate(&mut self, key: (usize, i32), values: &[C64], factor: C64) {
        let n = self.grid.len();
        let entry = self.parts.entry(key).or_insert_with(|| alloc::vec![C64::new(0.0, 0.0); n]);
        for (e, v) in entry.iter_mut().zip(values) {
            *e += *v * factor;
        }
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, other: &SpinorField, c: C64) -> Self {
        let mut out = self.clone();
        for (key, values) in &other.parts {
            out.accumulate(*key, values, c);
        }
        out
    }

    pub fn scaled(&self, c: C64) -> Self {
        let mut out = self.clone();
        for values in out.parts.values_mut() {
            for v in values.iter_mut() {
                *v *= c;
            }
        }
        out
    }

    /// `⟨self|other⟩ / (2π D)`: the θ and z integrals are left out.
    pub fn inner(&self, other: &SpinorField) -> C64 {
        let mut re = NeumaierSum::default();
        let mut im = NeumaierSum::default();
        for (key, a) in &self.parts {
            if let Some(b) = other.parts.get(key) {
                for ((x, y), w) in a.iter().zip(b).zip(&self.grid.weights) {
                    let p = x.conj() * y * *w;
                    re.add(p.re);
                    im.add(p.im);
                }
            }
        }
        C64::new(re.total(), im.total())
    }

    pub fn norm(&self) -> f64 {
        math::sqrt(self.inner(self).re.max(0.0))
    }

    /// The four components at grid node `i`.
    pub fn value_at(&self, i: usize, theta: f64, z: f64) -> [C64; 4] {
        let mut out = [C64::new(0.0, 0.0); 4];
        for ((s, m), values) in &self.parts {
            out[*s] += values[i] * math::cis(*m as f64 * theta + self.k_z * z);
        }
        out
    }

    /// Operator action with `∂_θ`, `∂_z` exact on each part and radial
    /// derivatives from the grid stencils.
    pub fn apply(&self, op: &Operator) -> SpinorField {
        let mut out = self.zero_like();
        let i = C64::new(0.0, 1.0);
        for (&(t, m), values) in &self.parts {
            // radial derivative computed once per part, only if needed
            let mut radial: Option<Vec<C64>> = None;
            for term in &op.terms {
                let column: Vec<C64>;
                let (key_shift, data, factor): (i32, &[C64], C64) = match term.derivative {
                    Derivative::Identity => (0, values, C64::new(1.0, 0.0)),
                    Derivative::Z => (0, values, i * self.k_z),
                    Derivative::Theta => (0, values, i * m as f64),
                    Derivative::Transverse { shift, tau } => {
                        let d = radial.get_or_insert_with(|| self.grid.derivative(values, m));
                        column = d
                            .iter()
                            .zip(values)
                            .zip(&self.grid.nodes)
                            .map(|((dv, v), r)| *dv - *v * (tau as f64 * m as f64 / r))
                            .collect();
                        (shift, &column, C64::new(1.0, 0.0))
                    }
                };
                for s in 0..4 {
                    let coeff = term.matrix[s][t];
                    if coeff.norm_sqr() != 0.0 {
                        out.accumulate((s, m + key_shift), data, coeff * factor);
                    }
                }
            }
        }
        out
    }

    pub fn apply_power(&self, op: &Operator, power: u32) -> SpinorField {
        let mut field = self.clone();
        for _ in 0..power {
            field = field.apply(op);
        }
        field
    }

    /// `[A, B] ψ = A(Bψ) - B(Aψ)`.
    pub fn apply_commutator(&self, a: &Operator, b: &Operator) -> SpinorField {
        let ab = self.apply(b).apply(a);
        let ba = self.apply(a).apply(b);
        ab.add_scaled(&ba, C64::new(-1.0, 0.0))
    }
}

/// Five-point central derivative of a sampled function at `x` with step `h`.
pub fn central_derivative<F: FnMut(f64) -> [C64; 4]>(mut f: F, x: f64, h: f64) -> [C64; 4] {
    let (m2, m1, p1, p2) = (f(x - 2.0 * h), f(x - h), f(x + h), f(x + 2.0 * h));
    core::array::from_fn(|s| (m2[s] - p2[s] + (p1[s] - m1[s]) * 8.0) / (12.0 * h))
}

/// Operator action at one point with `∂_θ, ∂_z` exact and `dR/dr` from a
/// five-point stencil of step `h` (which may reach across the axis).
pub fn apply_at<S: ModeState + ?Sized>(op: &Operator, state: &S, p: CylPoint, h: f64) -> [C64; 4] {
    let modes = state.modes();
    let radial = state.radial(p.r);
    let d_radial = central_derivative(|r| state.radial(r), p.r, h);
    let i = C64::new(0.0, 1.0);
    let mut out = [C64::new(0.0, 0.0); 4];
    for term in &op.terms {
        for t in 0..4 {
            let m = modes.azimuthal(t);
            let (value, shift) = match term.derivative {
                Derivative::Identity => (radial[t], 0),
                Derivative::Z => (radial[t] * i * modes.k_z, 0),
                Derivative::Theta => (radial[t] * i * m as f64, 0),
                Derivative::Transverse { shift, tau } => {
                    (d_radial[t] - radial[t] * (tau as f64 * m as f64 / p.r), shift)
                }
            };
            let value = value * math::cis((m + shift) as f64 * p.theta + modes.k_z * p.z);
            for s in 0..4 {
                out[s] += term.matrix[s][t] * value;
            }
        }
    }
    out
}

/// Operator action at one point with every derivative, including `∂_θ`
/// and `∂_z`, taken by finite differences of the full spinor.
pub fn apply_full_fd_at<S: ModeState + ?Sized>(op: &Operator, state: &S, p: CylPoint, h: f64) -> [C64; 4] {
    let psi = state.at(p);
    let d_r = central_derivative(|r| state.at(CylPoint { r, ..p }), p.r, h);
    let d_theta = central_derivative(|theta| state.at(CylPoint { theta, ..p }), p.theta, h);
    let d_z = central_derivative(|z| state.at(CylPoint { z, ..p }), p.z, h);
    let i = C64::new(0.0, 1.0);
    let mut out = [C64::new(0.0, 0.0); 4];
    for term in &op.terms {
        for t in 0..4 {
            let value = match term.derivative {
                Derivative::Identity => psi[t],
                Derivative::Z => d_z[t],
                Derivative::Theta => d_theta[t],
                Derivative::Transverse { shift, tau } => {
                    math::cis(shift as f64 * p.theta) * (d_r[t] + d_theta[t] * i * (tau as f64 / p.r))
                }
            };
            for s in 0..4 {
                out[s] += term.matrix[s][t] * value;
            }
        }
    }
    out
}
