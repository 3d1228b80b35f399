//! Quantum numbers, kinematics and the normalized Bessel-spinor eigenstates.
//!
//! Every state here has the mode structure
//! `ψ_s(r, θ, z) = R_s(r) e^{i m_s θ} e^{i k_z z}` with azimuthal indices
//! `m = (n, n+1, n, n+1)`. [`ModeState`] exposes exactly that: the radial
//! amplitudes `R_s` and the indices. Operators act on this representation.

use crate::bessel::{bessel_j_real, first_positive_zero};
use crate::error::{Error, Result};
use crate::math;
use crate::observables::compute_i1;
use crate::quadrature::QuadratureConfig;
use crate::C64;

/// Offsets of the azimuthal index of each spinor component relative to `n`.
pub const MODE_OFFSETS: [i32; 4] = [0, 1, 0, 1];

/// Natural units, `ħ = c = 1`. Only the mass is free.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Units {
    pub mass: f64,
}

impl Units {
    pub fn natural(mass: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidConfig("mass must be > 0"));
        }
        Ok(Units { mass })
    }

    pub fn convention(&self) -> &'static str {
        "natural units (hbar = c = 1), mass in units of the electron rest mass"
    }
}

impl Default for Units {
    fn default() -> Self {
        Units { mass: 1.0 }
    }
}

/// Sign of the `K` eigenvalue, `K ψ = branch · p_κ ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }

    pub fn other(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumNumbers {
    /// Azimuthal index of the first component.
    pub n: i32,
    /// Transverse wavenumber, strictly positive.
    pub kappa: f64,
    pub k_z: f64,
    pub branch: Branch,
}

impl QuantumNumbers {
    pub fn new(n: i32, kappa: f64, k_z: f64, branch: Branch) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidQuantumNumbers("kappa must be > 0 (kappa = 0 is a plane wave)"));
        }
        if !k_z.is_finite() {
            return Err(Error::InvalidQuantumNumbers("k_z must be finite"));
        }
        // J_{n+1} must stay inside the supported order range
        if !(-crate::bessel::MAX_ORDER..crate::bessel::MAX_ORDER).contains(&n) {
            return Err(Error::InvalidQuantumNumbers("n outside -64..=63"));
        }
        Ok(QuantumNumbers { n, kappa, k_z, branch })
    }

    pub fn modes(&self) -> ModeSet {
        ModeSet { n: self.n, k_z: self.k_z }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedKinematics {
    pub mass: f64,
    pub energy: f64,
    pub p_kappa: f64,
    pub k_z: f64,
    /// The spinor parameter fixed by the branch.
    pub lambda: C64,
    /// `(k_z - iκ)/(E + m)`, the lower-pair amplitude of the `+` branch.
    pub c_ratio: C64,
    /// `1/γ = m/E`.
    pub gamma_inv: f64,
    pub branch: Branch,
}

impl DerivedKinematics {
    /// `E - m`, computed without cancellation.
    pub fn energy_minus_mass(&self) -> f64 {
        (self.p_kappa * self.p_kappa + self.k_z * self.k_z) / (self.energy + self.mass)
    }

    /// `E + b m` with `b` the branch sign; enters the normalization.
    pub fn branch_energy(&self) -> f64 {
        match self.branch {
            Branch::Plus => self.energy + self.mass,
            Branch::Minus => self.energy_minus_mass(),
        }
    }

    /// `λ` for either branch.
    pub fn lambda_for(&self, branch: Branch) -> C64 {
        let e_minus_m = self.energy_minus_mass();
        C64::new(self.k_z, branch.sign() * self.p_kappa) / e_minus_m
    }
}

/// Dispersion `E = sqrt(m² + κ² + k_z²)` and the branch-fixed `λ`.
pub fn derive_kinematics(qn: &QuantumNumbers, units: &Units) -> Result<DerivedKinematics> {
    let m = units.mass;
    if !(qn.kappa > 0.0) {
        return Err(Error::InvalidQuantumNumbers("kappa must be > 0"));
    }
    let energy = math::sqrt(m * m + qn.kappa * qn.kappa + qn.k_z * qn.k_z);
    let e_minus_m = (qn.kappa * qn.kappa + qn.k_z * qn.k_z) / (energy + m);
    if !(e_minus_m > 0.0) {
        return Err(Error::DegenerateKinematics);
    }
    let lambda = C64::new(qn.k_z, qn.branch.sign() * qn.kappa) / e_minus_m;
    Ok(DerivedKinematics {
        mass: m,
        energy,
        p_kappa: qn.kappa,
        k_z: qn.k_z,
        lambda,
        c_ratio: C64::new(qn.k_z, -qn.kappa) / (energy + m),
        gamma_inv: m / energy,
        branch: qn.branch,
    })
}

/// How the radial integration limit `r1` is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum CutoffRule {
    /// `r1 = j_{0,1}/κ` for every `n`: one aperture for the whole family.
    #[default]
    CommonAperture,
    /// `r1 = j_{|n|,1}/κ`.
    FirstZeroOfJn,
    /// `r1 = j_{|n+1|,1}/κ`.
    FirstZeroOfJn1,
    ExplicitRadius(f64),
}

impl CutoffRule {
    pub fn name(&self) -> &'static str {
        match self {
            CutoffRule::CommonAperture => "j0",
            CutoffRule::FirstZeroOfJn => "jn",
            CutoffRule::FirstZeroOfJn1 => "jn1",
            CutoffRule::ExplicitRadius(_) => "radius",
        }
    }

    /// The Bessel order whose first zero fixes `r1`, if any.
    pub fn zero_order(&self, n: i32) -> Option<i32> {
        match self {
            CutoffRule::CommonAperture => Some(0),
            CutoffRule::FirstZeroOfJn => Some(n.abs()),
            CutoffRule::FirstZeroOfJn1 => Some((n + 1).abs()),
            CutoffRule::ExplicitRadius(_) => None,
        }
    }

    pub fn radius(&self, qn: &QuantumNumbers) -> Result<f64> {
        match self {
            CutoffRule::ExplicitRadius(r) => {
                if *r > 0.0 && r.is_finite() {
                    Ok(*r)
                } else {
                    Err(Error::InvalidConfig("explicit cutoff radius must be > 0"))
                }
            }
            rule => {
                let order = rule.zero_order(qn.n).expect("zero-based rule");
                Ok(first_positive_zero(order)? / qn.kappa)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamGeometry {
    /// Beam length; `z ∈ [-D/2, D/2]`.
    pub length: f64,
    pub r1: f64,
    pub rule: CutoffRule,
}

impl BeamGeometry {
    pub fn resolve(qn: &QuantumNumbers, length: f64, rule: CutoffRule) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidConfig("beam length D must be > 0"));
        }
        Ok(BeamGeometry { length, r1: rule.radius(qn)?, rule })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CylPoint {
    pub r: f64,
    pub theta: f64,
    pub z: f64,
}

impl CylPoint {
    pub fn new(r: f64, theta: f64, z: f64) -> Self {
        CylPoint { r, theta, z }
    }

    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Self {
        CylPoint { r: math::hypot(x, y), theta: math::atan2(y, x), z }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorSample {
    pub psi: [C64; 4],
    pub point: CylPoint,
}

impl SpinorSample {
    pub fn density(&self) -> f64 {
        self.psi.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Azimuthal and longitudinal labels shared by all four components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeSet {
    pub n: i32,
    pub k_z: f64,
}

impl ModeSet {
    pub fn azimuthal(&self, component: usize) -> i32 {
        self.n + MODE_OFFSETS[component]
    }
}

/// A spinor of the form `R_s(r) e^{i m_s θ} e^{i k_z z}`.
pub trait ModeState {
    fn modes(&self) -> ModeSet;

    /// Radial amplitudes `R_s(r)`. Defined for `r < 0` as the analytic
    /// continuation through the axis, `R_s(-r) = (-1)^{m_s} R_s(r)`, so
    /// central stencils may straddle the origin.
    fn radial(&self, r: f64) -> [C64; 4];

    fn at(&self, p: CylPoint) -> [C64; 4] {
        let modes = self.modes();
        let radial = self.radial(p.r);
        let mut out = [C64::new(0.0, 0.0); 4];
        for s in 0..4 {
            let phase = modes.azimuthal(s) as f64 * p.theta + modes.k_z * p.z;
            out[s] = radial[s] * math::cis(phase);
        }
        out
    }

    fn at_cartesian(&self, x: f64, y: f64, z: f64) -> [C64; 4] {
        self.at(CylPoint::from_cartesian(x, y, z))
    }
}

impl<S: ModeState + ?Sized> ModeState for &S {
    fn modes(&self) -> ModeSet {
        (**self).modes()
    }
    fn radial(&self, r: f64) -> [C64; 4] {
        (**self).radial(r)
    }
}

fn bessel_pair(n: i32, x: f64) -> (f64, f64) {
    let jn = bessel_j_real(n, x).expect("order validated by QuantumNumbers");
    let jn1 = bessel_j_real(n + 1, x).expect("order validated by QuantumNumbers");
    (jn, jn1)
}

/// Unnormalized eigenmode: the normalized state with `N = 1`.
///
/// Branch `+`: `(J_n, J_{n+1}, c J_n, -c J_{n+1})` with `c = (k_z - iκ)/(E + m)`.
/// Branch `-`: `(λ J_n, -λ J_{n+1}, J_n, J_{n+1})` with `λ = (k_z - iκ)/(E - m)`,
/// which is `λ` times the free-λ spinor at `λ = λ_-`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenMode {
    pub qn: QuantumNumbers,
    pub kin: DerivedKinematics,
}

impl EigenMode {
    pub fn new(qn: QuantumNumbers, units: &Units) -> Result<Self> {
        Ok(EigenMode { qn, kin: derive_kinematics(&qn, units)? })
    }

    /// Amplitude carried by the non-unit spinor pair.
    pub fn pair_factor(&self) -> C64 {
        match self.qn.branch {
            Branch::Plus => self.kin.c_ratio,
            Branch::Minus => self.kin.lambda,
        }
    }
}

impl ModeState for EigenMode {
    fn modes(&self) -> ModeSet {
        self.qn.modes()
    }

    fn radial(&self, r: f64) -> [C64; 4] {
        let (jn, jn1) = bessel_pair(self.qn.n, self.qn.kappa * r);
        let f = self.pair_factor();
        let one = C64::new(1.0, 0.0);
        match self.qn.branch {
            Branch::Plus => [one * jn, one * jn1, f * jn, -f * jn1],
            Branch::Minus => [f * jn, -f * jn1, one * jn, one * jn1],
        }
    }
}

/// The normalization constant `N = sqrt((E + b m) / (4π E D I₁))`.
pub fn normalization_constant(kin: &DerivedKinematics, geom: &BeamGeometry, i1: f64) -> Result<f64> {
    if !(i1 > 0.0) {
        return Err(Error::NonPositiveIntegral(i1));
    }
    Ok(math::sqrt(kin.branch_energy() / (4.0 * math::PI * kin.energy * geom.length * i1)))
}

/// Normalized eigenstate on a finite beam.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamState {
    pub mode: EigenMode,
    pub geometry: BeamGeometry,
    pub i1: f64,
    pub norm: f64,
}

impl BeamState {
    pub fn new(
        qn: QuantumNumbers,
        units: &Units,
        length: f64,
        rule: CutoffRule,
        quad: &QuadratureConfig,
    ) -> Result<Self> {
        let mode = EigenMode::new(qn, units)?;
        let geometry = BeamGeometry::resolve(&qn, length, rule)?;
        let i1 = compute_i1(&qn, &geometry, quad)?.value;
        let norm = normalization_constant(&mode.kin, &geometry, i1)?;
        Ok(BeamState { mode, geometry, i1, norm })
    }

    pub fn qn(&self) -> &QuantumNumbers {
        &self.mode.qn
    }

    pub fn kin(&self) -> &DerivedKinematics {
        &self.mode.kin
    }

    pub fn sample(&self, point: CylPoint) -> SpinorSample {
        evaluate_spinor(&self.mode, self.norm, point)
    }
}

impl ModeState for BeamState {
    fn modes(&self) -> ModeSet {
        self.mode.modes()
    }

    fn radial(&self, r: f64) -> [C64; 4] {
        self.mode.radial(r).map(|c| c * self.norm)
    }
}

/// `N e^{i k_z z} e^{i n θ} (...)` at one point.
pub fn evaluate_spinor(mode: &EigenMode, norm: f64, point: CylPoint) -> SpinorSample {
    let psi = mode.at(point).map(|c| c * norm);
    SpinorSample { psi, point }
}

/// The spinor before `λ` is fixed:
/// `(J_n, -i/κ (k_z - (E+m)/λ) J_{n+1} e^{iθ}, J_n/λ, -i/κ (k_z/λ - (E-m)) J_{n+1} e^{iθ})`
/// times the common phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeLambdaMode {
    pub qn: QuantumNumbers,
    pub kin: DerivedKinematics,
    pub lambda: C64,
}

impl FreeLambdaMode {
    pub fn new(qn: QuantumNumbers, kin: DerivedKinematics, lambda: C64) -> Result<Self> {
        if lambda.norm_sqr() == 0.0 || !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(Error::ZeroLambda);
        }
        Ok(FreeLambdaMode { qn, kin, lambda })
    }

    /// Coefficients multiplying `(J_n, J_{n+1}, J_n, J_{n+1})`.
    pub fn coefficients(&self) -> [C64; 4] {
        let minus_i_over_kappa = C64::new(0.0, -1.0 / self.qn.kappa);
        let e_plus_m = self.kin.energy + self.kin.mass;
        let e_minus_m = self.kin.energy_minus_mass();
        let inv = C64::new(1.0, 0.0) / self.lambda;
        [
            C64::new(1.0, 0.0),
            minus_i_over_kappa * (C64::new(self.kin.k_z, 0.0) - inv * e_plus_m),
            inv,
            minus_i_over_kappa * (inv * self.kin.k_z - e_minus_m),
        ]
    }
}

impl ModeState for FreeLambdaMode {
    fn modes(&self) -> ModeSet {
        self.qn.modes()
    }

    fn radial(&self, r: f64) -> [C64; 4] {
        let (jn, jn1) = bessel_pair(self.qn.n, self.qn.kappa * r);
        let c = self.coefficients();
        [c[0] * jn, c[1] * jn1, c[2] * jn, c[3] * jn1]
    }
}

pub fn evaluate_unnormalized_general(
    qn: &QuantumNumbers,
    kin: &DerivedKinematics,
    lambda_free: C64,
    point: CylPoint,
) -> Result<SpinorSample> {
    let mode = FreeLambdaMode::new(*qn, *kin, lambda_free)?;
    Ok(SpinorSample { psi: mode.at(point), point })
}

/// The minus-branch spinor exactly as printed:
/// `(c J_n, c J_{n+1} e^{iθ}, J_n, -J_{n+1} e^{iθ})`. Not an eigenstate of
/// the Hamiltonian; kept for the fidelity report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrintedMinusMode {
    pub qn: QuantumNumbers,
    pub kin: DerivedKinematics,
}

impl ModeState for PrintedMinusMode {
    fn modes(&self) -> ModeSet {
        self.qn.modes()
    }

    fn radial(&self, r: f64) -> [C64; 4] {
        let (jn, jn1) = bessel_pair(self.qn.n, self.qn.kappa * r);
        let c = self.kin.c_ratio;
        let one = C64::new(1.0, 0.0);
        [c * jn, c * jn1, one * jn, -one * jn1]
    }
}

/// Plane wave along `z` with definite spin along `z`: a helicity eigenstate
/// with eigenvalue `spin · k_z`. `spin = +1` sits in the `n = 0` mode set,
/// `spin = -1` in `n = -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWaveMode {
    pub k_z: f64,
    pub mass: f64,
    pub spin_up: bool,
}

impl PlaneWaveMode {
    pub fn helicity(&self) -> f64 {
        if self.spin_up {
            self.k_z
        } else {
            -self.k_z
        }
    }

    pub fn energy(&self) -> f64 {
        math::sqrt(self.mass * self.mass + self.k_z * self.k_z)
    }
}

impl ModeState for PlaneWaveMode {
    fn modes(&self) -> ModeSet {
        ModeSet { n: if self.spin_up { 0 } else { -1 }, k_z: self.k_z }
    }

    fn radial(&self, _r: f64) -> [C64; 4] {
        let zero = C64::new(0.0, 0.0);
        let lower = C64::new(self.helicity() / (self.energy() + self.mass), 0.0);
        if self.spin_up {
            [C64::new(1.0, 0.0), zero, lower, zero]
        } else {
            [zero, C64::new(1.0, 0.0), zero, lower]
        }
    }
}

/// `a ψ_a + b ψ_b` for two states with identical mode sets.
#[derive(Clone, Copy, Debug)]
pub struct Superposition<A, B> {
    pub first: A,
    pub second: B,
    pub weights: (C64, C64),
}

impl<A: ModeState, B: ModeState> Superposition<A, B> {
    pub fn new(first: A, second: B, weights: (C64, C64)) -> Result<Self> {
        if first.modes() != second.modes() {
            return Err(Error::ModeMismatch);
        }
        Ok(Superposition { first, second, weights })
    }
}

impl<A: ModeState, B: ModeState> ModeState for Superposition<A, B> {
    fn modes(&self) -> ModeSet {
        self.first.modes()
    }

    fn radial(&self, r: f64) -> [C64; 4] {
        let a = self.first.radial(r);
        let b = self.second.radial(r);
        core::array::from_fn(|s| self.weights.0 * a[s] + self.weights.1 * b[s])
    }
}
