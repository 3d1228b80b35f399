//! The printed component forms, evaluated exactly as written.
//!
//! Each entry applies one literal form to the beam state and reports how far
//! it is from being satisfied. Nothing here is asserted: entries flagged
//! inconsistent are the places where the implemented operators follow the
//! Cartesian Hamiltonian instead of the printed expression.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::beam::{derive_kinematics, Branch, EigenMode, PrintedMinusMode, QuantumNumbers, Units};
use crate::error::Result;
use crate::operators::matrices::{Mat4, ZERO4};
use crate::operators::{CartesianForm, Derivative, Operator, RadialGrid, SpinorField, Term};
use crate::C64;

/// Entries below this relative residual count as consistent.
pub const CONSISTENCY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityEntry {
    pub name: &'static str,
    pub relative_residual: f64,
    pub consistent: bool,
}

impl FidelityEntry {
    fn new(name: &'static str, relative_residual: f64) -> Self {
        FidelityEntry { name, relative_residual, consistent: relative_residual < CONSISTENCY_TOL }
    }
}

fn single(s: usize, t: usize, c: C64) -> Mat4 {
    let mut m = ZERO4;
    m[s][t] = c;
    m
}

fn term(s: usize, t: usize, c: C64, derivative: Derivative) -> Term {
    Term { matrix: single(s, t, c), derivative }
}

/// The four cylindrical component equations as printed; each row should
/// vanish on an eigenstate.
pub fn printed_cylindrical_rows(energy: f64, mass: f64) -> Operator {
    let one = C64::new(1.0, 0.0);
    let minus = C64::new(-1.0, 0.0);
    let upper = C64::new(0.0, -(energy - mass));
    let lower = C64::new(0.0, -(energy + mass));
    let t_minus = Derivative::Transverse { shift: -1, tau: -1 };
    let t_minus_plus = Derivative::Transverse { shift: -1, tau: 1 };
    Operator::new(
        "printed-cylindrical-rows",
        alloc::vec![
            term(0, 0, upper, Derivative::Identity),
            term(0, 3, one, t_minus),
            term(0, 2, one, Derivative::Z),
            term(1, 1, upper, Derivative::Identity),
            term(1, 2, one, t_minus_plus),
            term(1, 3, minus, Derivative::Z),
            term(2, 2, lower, Derivative::Identity),
            term(2, 1, one, t_minus),
            term(2, 0, one, Derivative::Z),
            term(3, 3, lower, Derivative::Identity),
            term(3, 0, one, t_minus),
            term(3, 1, minus, Derivative::Z),
        ],
    )
}

/// The stationary Cartesian component equations as printed, read as a
/// Hamiltonian.
pub fn printed_cartesian_hamiltonian(mass: f64) -> CartesianForm {
    let mi = C64::new(0.0, -1.0);
    let mut form = CartesianForm::zero();
    form.constant = crate::operators::matrices::scale(&crate::operators::matrices::beta(), C64::new(mass, 0.0));
    // row: (target component, dx/dy source, y sign, dz source, z sign)
    let rows = [(0, 3, 1.0, 2, 1.0), (1, 2, -1.0, 3, -1.0), (2, 1, 1.0, 0, 1.0), (3, 0, -1.0, 1, -1.0)];
    for (s, t, y_sign, u, z_sign) in rows {
        form.dx[s][t] = mi;
        form.dy[s][t] = mi * C64::new(0.0, y_sign);
        form.dz[s][u] = mi * z_sign;
    }
    form
}

/// `σ·p` in the printed cylindrical block form, on both halves.
pub fn printed_helicity() -> Operator {
    let mut terms = Vec::new();
    for base in [0usize, 2] {
        terms.push(term(base, base, C64::new(0.0, -1.0), Derivative::Z));
        terms.push(term(base, base + 1, C64::new(1.0, 0.0), Derivative::LOWER));
        terms.push(term(base + 1, base, C64::new(-1.0, 0.0), Derivative::RAISE));
        terms.push(term(base + 1, base + 1, C64::new(0.0, 1.0), Derivative::Z));
    }
    Operator::new("printed-helicity", terms)
}

fn component_norm(field: &SpinorField, s: usize) -> f64 {
    let mut acc = 0.0;
    for ((c, _), values) in field.parts() {
        if *c == s {
            acc += values.iter().zip(&field.grid.weights).map(|(v, w)| v.norm_sqr() * w).sum::<f64>();
        }
    }
    crate::math::sqrt(acc)
}

/// All entries for the `+` branch state `qn` (and its printed `-` branch
/// counterpart) on `grid`.
pub fn fidelity_report(qn: &QuantumNumbers, units: &Units, grid: &RadialGrid) -> Result<Vec<FidelityEntry>> {
    let plus_qn = QuantumNumbers { branch: Branch::Plus, ..*qn };
    let mode = EigenMode::new(plus_qn, units)?;
    let kin = mode.kin;
    let grid = Arc::new(grid.clone());
    let psi = SpinorField::sample(&mode, &grid);
    let e = C64::new(kin.energy, 0.0);
    let e_psi_norm = psi.norm() * kin.energy;
    let mut out = Vec::new();

    let rows = psi.apply(&printed_cylindrical_rows(kin.energy, units.mass));
    const ROW_NAMES: [&str; 4] = ["cylindrical-row-1", "cylindrical-row-2", "cylindrical-row-3", "cylindrical-row-4"];
    for (s, name) in ROW_NAMES.iter().enumerate() {
        let scale =
            component_norm(&psi, s).max(1e-300) * if s < 2 { kin.energy - units.mass } else { kin.energy + units.mass };
        out.push(FidelityEntry::new(name, component_norm(&rows, s) / scale));
    }

    let literal = Operator::from_cartesian("printed-cartesian", &printed_cartesian_hamiltonian(units.mass));
    let r = psi.apply(&literal).add_scaled(&psi, -e).norm() / e_psi_norm;
    out.push(FidelityEntry::new("cartesian-component-equations", r));

    let true_h = psi.apply(&Operator::helicity());
    let r = psi.apply(&printed_helicity()).add_scaled(&true_h, C64::new(-1.0, 0.0)).norm() / true_h.norm();
    out.push(FidelityEntry::new("helicity-cylindrical-block", r));

    let h = Operator::hamiltonian(units.mass);
    let r = psi.apply(&h).add_scaled(&psi, -e).norm() / e_psi_norm;
    out.push(FidelityEntry::new("plus-branch-spinor", r));

    let minus_qn = QuantumNumbers { branch: Branch::Minus, ..*qn };
    let minus_kin = derive_kinematics(&minus_qn, units)?;
    let printed = PrintedMinusMode { qn: minus_qn, kin: minus_kin };
    let phi = SpinorField::sample(&printed, &grid);
    let r = phi.apply(&h).add_scaled(&phi, -e).norm() / (phi.norm() * kin.energy);
    out.push(FidelityEntry::new("minus-branch-spinor-as-printed", r));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_forms_report() {
        let qn = QuantumNumbers::new(1, 1.0, 2.0, Branch::Plus).unwrap();
        let grid = RadialGrid::uniform(2.4, 1024).unwrap();
        let report = fidelity_report(&qn, &Units::default(), &grid).unwrap();
        let get = |name: &str| report.iter().find(|e| e.name == name).unwrap();
        assert!(get("cylindrical-row-1").consistent);
        assert!(get("cylindrical-row-3").consistent);
        assert!(!get("cylindrical-row-2").consistent);
        assert!(!get("cylindrical-row-4").consistent);
        assert!(!get("cartesian-component-equations").consistent);
        assert!(!get("helicity-cylindrical-block").consistent);
        assert!(get("plus-branch-spinor").consistent);
        assert!(!get("minus-branch-spinor-as-printed").consistent);
    }
}
