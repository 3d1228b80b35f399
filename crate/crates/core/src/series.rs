//! Frobenius solution of the radial Dirac system.
//!
//! With `R_s(r) = r^α Σ_k C^s_k r^k` the radial equations reduce to
//!
//! ```text
//! (α+k-n)   C¹_k = i k_z C²_{k-1} + i(E+m) C⁴_{k-1}
//! (α+k+n+1) C²_k = -i k_z C¹_{k-1} + i(E+m) C³_{k-1}
//! (α+k-n)   C³_k = i k_z C⁴_{k-1} + i(E-m) C²_{k-1}
//! (α+k+n+1) C⁴_k = -i k_z C³_{k-1} + i(E-m) C¹_{k-1}
//! ```
//!
//! Coefficients are built from the two-step ratio forms with `C¹_k = λ C³_k`
//! imposed; the coupled form above is only used to check them.
//! Arithmetic is double-double so the alternating sums stay accurate out to
//! `κr = 20`.

use alloc::vec::Vec;

use crate::beam::{DerivedKinematics, FreeLambdaMode, ModeState, QuantumNumbers};
use crate::dd::{CDd, Dd};
use crate::error::{Error, Result};
use crate::math;
use crate::C64;

/// Default number of retained orders.
pub const DEFAULT_TERMS: usize = 80;

/// Certification threshold: the leading omitted terms must be below this
/// fraction of the largest radial amplitude.
pub const TAIL_RATIO: f64 = 1e-15;

/// Above this index the closed form is evaluated through `lgamma`.
const LOG_SPACE_ABOVE: u32 = 15;

/// Roots of the indicial equation, regular root first.
pub fn indicial_roots(n: i32) -> (i32, i32) {
    if n >= 0 {
        (n, -n - 1)
    } else {
        (-n - 1, n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Root {
    Regular,
    Irregular,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesOptions {
    /// Highest retained index `K`.
    pub terms: usize,
    pub root: Root,
    /// Leading coefficient of the seeded pair. `None` picks the value that
    /// makes the regular solution match `J_n` (or `b J_{n+1}`) exactly.
    pub c0: Option<C64>,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { terms: DEFAULT_TERMS, root: Root::Regular, c0: None }
    }
}

/// Which component pair carries the leading power `r^α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedPair {
    /// `α = n`: `C¹_0, C³_0` free, odd `k` of `C¹, C³` vanish.
    UpperFirst,
    /// `α = -n-1`: `C²_0, C⁴_0` free, even `k` of `C¹, C³` vanish.
    LowerFirst,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialSeries {
    pub n: i32,
    pub alpha: i32,
    pub kappa: f64,
    pub lambda: C64,
    /// Leading coefficient of the seeded pair (`C¹_0` or `C²_0`).
    pub c0: C64,
    pub seed: SeedPair,
    pub kinematics: DerivedKinematics,
    terms: usize,
    /// Indices `0..=terms + GUARD`; the guard orders only estimate the tail.
    coefficients: [Vec<CDd>; 4],
}

/// Orders computed beyond `K` to measure the truncation error.
const GUARD: usize = 2;

fn int_dd(x: i64) -> Dd {
    Dd::from_f64(x as f64)
}

fn i_times(z: CDd) -> CDd {
    CDd::new(-z.im, z.re)
}

fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

/// `C0` making the regular solution equal `(J_n, b J_{n+1}, J_n/λ, d J_{n+1})`.
fn bessel_c0(n: i32, kappa: f64, kin: &DerivedKinematics, lambda: C64) -> C64 {
    if n >= 0 {
        let half = 0.5 * kappa;
        C64::new(math::pow_i(half, n) / factorial(n as u32), 0.0)
    } else {
        // leading term of b J_{n+1}, J_{n+1} = (-1)^{|n+1|} J_{|n+1|}
        let order = (n + 1).unsigned_abs();
        let b = C64::new(0.0, -1.0 / kappa) * (C64::new(kin.k_z, 0.0) - (kin.energy + kin.mass) / lambda);
        let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
        b * (sign * math::pow_i(0.5 * kappa, order as i32) / factorial(order))
    }
}

/// Series with the regular root, Bessel-normalized `C0` and `K` orders.
pub fn run_recurrence(n: i32, kin: &DerivedKinematics, lambda_free: C64, terms: usize) -> Result<RadialSeries> {
    run_recurrence_with(n, kin, lambda_free, &SeriesOptions { terms, ..SeriesOptions::default() })
}

pub fn run_recurrence_with(n: i32, kin: &DerivedKinematics, lambda: C64, opts: &SeriesOptions) -> Result<RadialSeries> {
    if opts.terms < 2 {
        return Err(Error::InvalidConfig("series needs K >= 2"));
    }
    if lambda.norm_sqr() == 0.0 || !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(Error::ZeroLambda);
    }
    let (regular, irregular) = indicial_roots(n);
    let alpha = match opts.root {
        Root::Regular => regular,
        Root::Irregular => irregular,
    };
    let seed = if alpha == n { SeedPair::UpperFirst } else { SeedPair::LowerFirst };
    let c0 = match (opts.c0, opts.root) {
        (Some(c), _) => c,
        (None, Root::Regular) => bessel_c0(n, kin.p_kappa, kin, lambda),
        (None, Root::Irregular) => C64::new(1.0, 0.0),
    };
    let total = opts.terms + GUARD;
    let coefficients = match seed {
        SeedPair::UpperFirst => upper_first(n, alpha, kin, lambda, c0, total)?,
        SeedPair::LowerFirst => lower_first(n, alpha, kin, lambda, c0, total)?,
    };
    Ok(RadialSeries {
        n,
        alpha,
        kappa: kin.p_kappa,
        lambda,
        c0,
        seed,
        kinematics: *kin,
        terms: opts.terms,
        coefficients,
    })
}

fn checked(den: i64, k: usize) -> Result<Dd> {
    if den == 0 {
        Err(Error::SingularDenominator { k })
    } else {
        Ok(int_dd(den))
    }
}

fn upper_first(
    n: i32,
    alpha: i32,
    kin: &DerivedKinematics,
    lambda: C64,
    c0: C64,
    terms: usize,
) -> Result<[Vec<CDd>; 4]> {
    let (n, alpha) = (n as i64, alpha as i64);
    let lam = CDd::from_c64(lambda);
    let inv_lam = CDd::from_real(Dd::ONE) / lam;
    let kz = CDd::from_real(Dd::from_f64(kin.k_z));
    let e_plus_m = Dd::from_f64(kin.energy) + Dd::from_f64(kin.mass);
    let e_minus_m = Dd::from_f64(kin.energy_minus_mass());
    let kappa2 = Dd::from_prod(kin.p_kappa, kin.p_kappa);
    // C²_{k+1} = C¹_k · i(-k_z + (E+m)/λ) / (α+k+n+2)
    let to_c2 = i_times(inv_lam.scale(e_plus_m) - kz);
    // C⁴_{k+1} = C¹_k · i(-k_z/λ + (E-m)) / (α+k+n+2)
    let to_c4 = i_times(CDd::from_real(e_minus_m) - kz * inv_lam);

    let mut c = [(); 4].map(|_| alloc::vec![CDd::ZERO; terms + 1]);
    c[0][0] = CDd::from_c64(c0);
    let mut k = 0usize;
    while k <= terms {
        if k >= 2 {
            let den = checked((alpha + k as i64 + n) * (alpha + k as i64 - n), k)?;
            c[0][k] = (c[0][k - 2].scale(-kappa2)).scale(Dd::ONE / den);
        }
        c[2][k] = c[0][k] * inv_lam;
        if k < terms {
            let den = checked(alpha + k as i64 + n + 2, k + 1)?;
            let inv = Dd::ONE / den;
            c[1][k + 1] = (c[0][k] * to_c2).scale(inv);
            c[3][k + 1] = (c[0][k] * to_c4).scale(inv);
        }
        k += 2;
    }
    Ok(c)
}

fn lower_first(
    n: i32,
    alpha: i32,
    kin: &DerivedKinematics,
    lambda: C64,
    c0: C64,
    terms: usize,
) -> Result<[Vec<CDd>; 4]> {
    let (n, alpha) = (n as i64, alpha as i64);
    let lam = CDd::from_c64(lambda);
    let kz = CDd::from_real(Dd::from_f64(kin.k_z));
    let e_plus_m = Dd::from_f64(kin.energy) + Dd::from_f64(kin.mass);
    let e_minus_m = Dd::from_f64(kin.energy_minus_mass());
    let kappa2 = Dd::from_prod(kin.p_kappa, kin.p_kappa);
    // μ = C⁴/C² fixed by C¹ = λ C³
    let mu_den = lam * kz - CDd::from_real(e_plus_m);
    if mu_den.is_zero() {
        return Err(Error::SingularDenominator { k: 0 });
    }
    let mu = (kz - lam.scale(e_minus_m)) / mu_den;
    let to_c1 = i_times(kz + mu.scale(e_plus_m));
    let to_c3 = i_times(kz * mu + CDd::from_real(e_minus_m));

    let mut c = [(); 4].map(|_| alloc::vec![CDd::ZERO; terms + 1]);
    c[1][0] = CDd::from_c64(c0);
    let mut k = 0usize;
    while k <= terms {
        if k >= 2 {
            let den = checked((alpha + k as i64 + n + 1) * (alpha + k as i64 - n - 1), k)?;
            c[1][k] = (c[1][k - 2].scale(-kappa2)).scale(Dd::ONE / den);
        }
        c[3][k] = c[1][k] * mu;
        if k < terms {
            let den = checked(alpha + k as i64 + 1 - n, k + 1)?;
            let inv = Dd::ONE / den;
            c[0][k + 1] = (c[1][k] * to_c1).scale(inv);
            c[2][k + 1] = (c[1][k] * to_c3).scale(inv);
        }
        k += 2;
    }
    Ok(c)
}

impl RadialSeries {
    /// Highest retained index `K`.
    pub fn terms(&self) -> usize {
        self.terms
    }

    /// `C^s_k`, with `s` in `0..4`.
    pub fn coefficient(&self, s: usize, k: usize) -> C64 {
        self.coefficients[s][k].to_c64()
    }

    pub fn component(&self, s: usize) -> Vec<C64> {
        self.coefficients[s][..=self.terms].iter().map(|c| c.to_c64()).collect()
    }

    /// Largest relative violation of the coupled recurrences, each equation
    /// scaled by the largest of its three terms.
    pub fn resubstitution_residual(&self) -> f64 {
        let kin = &self.kinematics;
        let (n, alpha) = (self.n as i64, self.alpha as i64);
        let kz = CDd::from_real(Dd::from_f64(kin.k_z));
        let e_plus_m = Dd::from_f64(kin.energy) + Dd::from_f64(kin.mass);
        let e_minus_m = Dd::from_f64(kin.energy_minus_mass());
        let c = &self.coefficients;
        let prev = |s: usize, k: usize| if k == 0 { CDd::ZERO } else { c[s][k - 1] };
        let mut worst = 0.0_f64;
        for k in 0..self.coefficients[0].len() {
            let a = int_dd(alpha + k as i64 - n);
            let b = int_dd(alpha + k as i64 + n + 1);
            let equations = [
                [c[0][k].scale(a), i_times(kz * prev(1, k)), i_times(prev(3, k).scale(e_plus_m))],
                [c[1][k].scale(b), -i_times(kz * prev(0, k)), i_times(prev(2, k).scale(e_plus_m))],
                [c[2][k].scale(a), i_times(kz * prev(3, k)), i_times(prev(1, k).scale(e_minus_m))],
                [c[3][k].scale(b), -i_times(kz * prev(2, k)), i_times(prev(0, k).scale(e_minus_m))],
            ];
            for [lhs, t1, t2] in equations {
                let scale = lhs.norm_f64().max(t1.norm_f64()).max(t2.norm_f64());
                if scale > 0.0 {
                    worst = worst.max((lhs - t1 - t2).norm_f64() / scale);
                }
            }
        }
        worst
    }

    /// Number of coefficients that should vanish by parity but do not.
    pub fn parity_violations(&self) -> usize {
        let zero_parity_upper = match self.seed {
            SeedPair::UpperFirst => 1,
            SeedPair::LowerFirst => 0,
        };
        let mut count = 0;
        for s in 0..4 {
            let vanishing = if s % 2 == 0 { zero_parity_upper } else { 1 - zero_parity_upper };
            count +=
                self.coefficients[s].iter().enumerate().filter(|(k, c)| k % 2 == vanishing && !c.is_zero()).count();
        }
        count
    }

    /// Largest `|C¹_k/C³_k - λ| / |λ|` over populated `k`.
    pub fn ratio_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (c1, c3) in self.coefficients[0].iter().zip(&self.coefficients[2]) {
            if !c3.is_zero() {
                let ratio = (*c1 / *c3).to_c64();
                worst = worst.max(math::cabs(ratio - self.lambda) / math::cabs(self.lambda));
            }
        }
        worst
    }

    /// `(R₁, R₂, R₃, R₄)(r)`. The sum is accepted only while the omitted
    /// orders `K+1, K+2` contribute less than `TAIL_RATIO` of the largest
    /// amplitude.
    pub fn radial_eval(&self, r: f64) -> Result<[C64; 4]> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::NegativeArgument(r));
        }
        let kr = self.kappa * r;
        let terms = self.terms();
        let mut sums = [CDd::ZERO; 4];
        let mut tail = 0.0_f64;
        for s in 0..4 {
            let mut acc = CDd::ZERO;
            for k in (0..=terms).rev() {
                acc = acc.scale_f64(r) + self.coefficients[s][k];
            }
            sums[s] = acc;
            let mut omitted = CDd::ZERO;
            for k in (terms + 1..=terms + GUARD).rev() {
                omitted = omitted.scale_f64(r) + self.coefficients[s][k];
            }
            tail = tail.max(omitted.norm_f64() * math::pow_i(r, terms as i32 + 1));
        }
        let largest = sums.iter().map(|c| c.norm_f64()).fold(0.0, f64::max);
        if tail > TAIL_RATIO * largest && tail > 0.0 {
            return Err(Error::SeriesRange { kr, tail: if largest > 0.0 { tail / largest } else { f64::INFINITY } });
        }
        let lead = if self.alpha == 0 {
            1.0
        } else if r == 0.0 && self.alpha < 0 {
            return Err(Error::InvalidConfig("irregular root is singular at r = 0"));
        } else {
            math::pow_i(r, self.alpha)
        };
        Ok(sums.map(|c| c.to_c64() * lead))
    }
}

/// `C¹_{2m}` in closed form:
/// `C0 κ^{2m} (-1)^m / (2^{2m} m! (n+1)(n+2)…(n+m))`.
/// `c0 = None` uses `C0 = 1/(2^{n-1} Γ(n))`, which has a pole at `n = 0`.
pub fn closed_form_c2m(n: i32, m: u32, kappa: f64, c0: Option<C64>) -> Result<C64> {
    if n < 0 {
        return Err(Error::InvalidQuantumNumbers("closed form needs n >= 0"));
    }
    let c0 = match c0 {
        Some(c) => c,
        None => C64::new(canonical_c0(n)?, 0.0),
    };
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let magnitude = if m <= LOG_SPACE_ABOVE {
        let mut v = 1.0;
        for j in 1..=m {
            v *= kappa * kappa / (4.0 * j as f64 * (n as f64 + j as f64));
        }
        v
    } else {
        let mf = m as f64;
        let nf = n as f64;
        math::exp(
            2.0 * mf * math::ln(0.5 * kappa)
                - math::lgamma(mf + 1.0)
                - (math::lgamma(nf + mf + 1.0) - math::lgamma(nf + 1.0)),
        )
    };
    Ok(c0 * (sign * magnitude))
}

/// `1/(2^{n-1} Γ(n))`.
pub fn canonical_c0(n: i32) -> Result<f64> {
    if n <= 0 {
        return Err(Error::CanonicalC0Pole(n));
    }
    Ok(1.0 / (math::pow_i(2.0, n - 1) * factorial((n - 1) as u32)))
}

/// Upper end of the identification grid in `κr`.
pub const IDENTIFICATION_KR: f64 = 20.0;

/// Worst component-scaled deviation between the series (regular root,
/// `λ` of the branch) and `(J_n, b J_{n+1}, J_n/λ, d J_{n+1})` on
/// `κr ∈ [0, 20]`.
pub fn verify_bessel_identification(n: i32, kin: &DerivedKinematics, terms: usize) -> Result<f64> {
    let series = run_recurrence(n, kin, kin.lambda, terms)?;
    let qn = QuantumNumbers::new(n, kin.p_kappa, kin.k_z, kin.branch)?;
    let reference = FreeLambdaMode::new(qn, *kin, kin.lambda)?;
    const SAMPLES: usize = 401;
    let mut diff = [0.0_f64; 4];
    let mut scale = [0.0_f64; 4];
    for i in 0..SAMPLES {
        let kr = IDENTIFICATION_KR * i as f64 / (SAMPLES - 1) as f64;
        let r = kr / kin.p_kappa;
        if r == 0.0 && series.alpha < 0 {
            continue;
        }
        let got = series.radial_eval(r)?;
        let want = reference.radial(r);
        for s in 0..4 {
            diff[s] = diff[s].max(math::cabs(got[s] - want[s]));
            scale[s] = scale[s].max(math::cabs(want[s]));
        }
    }
    Ok((0..4).filter(|&s| scale[s] > 0.0).map(|s| diff[s] / scale[s]).fold(0.0, f64::max))
}
