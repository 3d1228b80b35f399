//! Dirac matrices in the Dirac-Pauli representation.

use crate::C64;

pub type Mat4 = [[C64; 4]; 4];
pub type Mat2 = [[C64; 2]; 2];

const O: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub const ZERO4: Mat4 = [[O; 4]; 4];

pub const SIGMA_X: Mat2 = [[O, ONE], [ONE, O]];
pub const SIGMA_Y: Mat2 = [[O, C64::new(0.0, -1.0)], [I, O]];
pub const SIGMA_Z: Mat2 = [[ONE, O], [O, C64::new(-1.0, 0.0)]];
pub const PAULI: [Mat2; 3] = [SIGMA_X, SIGMA_Y, SIGMA_Z];

pub fn identity() -> Mat4 {
    let mut m = ZERO4;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

/// Block matrix `[[a, b], [c, d]]`.
pub fn blocks(a: &Mat2, b: &Mat2, c: &Mat2, d: &Mat2) -> Mat4 {
    let mut m = ZERO4;
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][j];
            m[i][j + 2] = b[i][j];
            m[i + 2][j] = c[i][j];
            m[i + 2][j + 2] = d[i][j];
        }
    }
    m
}

const Z2: Mat2 = [[O; 2]; 2];
const I2: Mat2 = [[ONE, O], [O, ONE]];
const MINUS_I2: Mat2 = [[C64::new(-1.0, 0.0), O], [O, C64::new(-1.0, 0.0)]];

pub fn beta() -> Mat4 {
    blocks(&I2, &Z2, &Z2, &MINUS_I2)
}

/// `α_j`, `j = 0, 1, 2` for `x, y, z`.
pub fn alpha(j: usize) -> Mat4 {
    blocks(&Z2, &PAULI[j], &PAULI[j], &Z2)
}

/// `Σ_j = diag(σ_j, σ_j)`.
pub fn big_sigma(j: usize) -> Mat4 {
    blocks(&PAULI[j], &Z2, &Z2, &PAULI[j])
}

/// `γ^μ`: `γ^0 = β`, `γ^j = β α_j`.
pub fn gamma(mu: usize) -> Mat4 {
    match mu {
        0 => beta(),
        j => mul(&beta(), &alpha(j - 1)),
    }
}

pub fn mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut m = ZERO4;
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

pub fn scale(a: &Mat4, c: C64) -> Mat4 {
    a.map(|row| row.map(|x| x * c))
}

pub fn add(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut m = *a;
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] += b[i][j];
        }
    }
    m
}

pub fn apply(a: &Mat4, v: &[C64; 4]) -> [C64; 4] {
    core::array::from_fn(|i| (0..4).map(|k| a[i][k] * v[k]).sum())
}

pub fn is_zero(a: &Mat4) -> bool {
    a.iter().flatten().all(|x| x.norm_sqr() == 0.0)
}
