//! CHSH-type Bell combinations of displaced-parity expectations.
//!
//! Parities are normalised as `Π = (π/2)^N W`, so `Π(0) = 1` for undriven
//! states and every combination equals 2 when all displacements vanish.
//!
//! Displacement patterns use amplitudes of modulus `√(J/2)`, i.e. `J` is the
//! squared quadrature displacement:
//!
//! * `Bipartite`: `α = β = i√(J/2)`
//! * `Imaginary`: `α = β = γ = i√(J/2)`
//! * `RealPair`: `α = −√(J/2)`, `β = +√(J/2)`, `γ = 0`

mod optimize;
mod surface;

pub use optimize::{maximize_bell, nelder_mead, Axis, MaxReport, MaximizeOptions, Objective, SimplexResult, Spacing};
pub use surface::{figure_preset, scan_surface, write_bell_csv, BellRow, BellSurface, FigurePreset, BELL_CSV_HEADER};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::gaussian::{GaussianKetSpec, Regime, Regulator, SqueezingParam};
use crate::wigner::{
    epr3_exponent, nopa3_exponent, tmsv_exponent, wigner_displaced_parity, PhasePoint, WignerValue,
};
use crate::{Error, Result};

/// Source of displaced-parity expectations `Π(α)`.
pub trait ParityProvider {
    fn modes(&self) -> usize;
    fn regime(&self) -> Regime;
    fn parity(&self, pt: &PhasePoint) -> Result<f64>;
}

/// Closed-form tripartite EPR parity.
#[derive(Debug, Clone, Copy)]
pub struct Epr3Parity(pub Regulator);

/// Bipartite EPR parity, the two-mode squeezed vacuum with `tanh r = 1/s²`
/// written directly in `s`.
#[derive(Debug, Clone, Copy)]
pub struct Epr2Parity(pub Regulator);

#[derive(Debug, Clone, Copy)]
pub struct Nopa2Parity(pub SqueezingParam);

#[derive(Debug, Clone, Copy)]
pub struct Nopa3Parity(pub SqueezingParam);

/// Any ket through the general Gaussian-integral engine.
#[derive(Debug, Clone)]
pub struct EngineParity(pub GaussianKetSpec);

impl ParityProvider for Epr3Parity {
    fn modes(&self) -> usize {
        3
    }
    fn regime(&self) -> Regime {
        self.0.classify(3).unwrap_or(Regime::Singular)
    }
    fn parity(&self, pt: &PhasePoint) -> Result<f64> {
        Ok(epr3_exponent(self.0, pt)?.exp())
    }
}

impl ParityProvider for Epr2Parity {
    fn modes(&self) -> usize {
        2
    }
    fn regime(&self) -> Regime {
        self.0.classify(2).unwrap_or(Regime::Singular)
    }
    fn parity(&self, pt: &PhasePoint) -> Result<f64> {
        pt.check_modes(2)?;
        let s2 = self.0.s() * self.0.s();
        let d = s2 * s2 - 1.0;
        let (ch, sh) = ((s2 * s2 + 1.0) / d, 2.0 * s2 / d);
        let (a, b) = (pt.amps()[0], pt.amps()[1]);
        let e = -2.0 * ch * (a.norm_sqr() + b.norm_sqr()) + 4.0 * sh * (a * b).re;
        Ok(e.exp())
    }
}

impl ParityProvider for Nopa2Parity {
    fn modes(&self) -> usize {
        2
    }
    fn regime(&self) -> Regime {
        Regime::Normalizable
    }
    fn parity(&self, pt: &PhasePoint) -> Result<f64> {
        Ok(tmsv_exponent(self.0, pt)?.exp())
    }
}

impl ParityProvider for Nopa3Parity {
    fn modes(&self) -> usize {
        3
    }
    fn regime(&self) -> Regime {
        Regime::Normalizable
    }
    fn parity(&self, pt: &PhasePoint) -> Result<f64> {
        Ok(nopa3_exponent(self.0, pt)?.exp())
    }
}

impl ParityProvider for EngineParity {
    fn modes(&self) -> usize {
        self.0.modes()
    }
    fn regime(&self) -> Regime {
        self.0.regime()
    }
    fn parity(&self, pt: &PhasePoint) -> Result<f64> {
        let v: WignerValue = wigner_displaced_parity(&self.0, pt)?;
        Ok(v.parity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellValue {
    pub b: f64,
    pub regime: Regime,
}

impl BellValue {
    /// Local-realistic bound on `|B|`.
    pub const CLASSICAL_BOUND: f64 = 2.0;

    pub fn violates(&self) -> bool {
        self.b.abs() > Self::CLASSICAL_BOUND
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn bell_value(b: f64, regime: Regime) -> Result<BellValue> {
    if b.is_finite() {
        Ok(BellValue { b, regime })
    } else {
        Err(Error::Objective(format!("non-finite Bell value {b}")))
    }
}

/// `Π(0,0) + Π(0,β) + Π(α,0) − Π(α,β)`.
pub fn bell_b2(p: &dyn ParityProvider, alpha: Complex64, beta: Complex64) -> Result<BellValue> {
    if p.modes() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.modes() });
    }
    let pi = |a, b| p.parity(&PhasePoint::new(vec![a, b]));
    let b = pi(zero(), zero())? + pi(zero(), beta)? + pi(alpha, zero())? - pi(alpha, beta)?;
    bell_value(b, p.regime())
}

/// `Π(0,0,γ) + Π(0,β,0) + Π(α,0,0) − Π(α,β,γ)`.
pub fn bell_b3(p: &dyn ParityProvider, alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<BellValue> {
    if p.modes() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: p.modes() });
    }
    let pi = |a, b, c| p.parity(&PhasePoint::new(vec![a, b, c]));
    let b = pi(zero(), zero(), gamma)? + pi(zero(), beta, zero())? + pi(alpha, zero(), zero())?
        - pi(alpha, beta, gamma)?;
    bell_value(b, p.regime())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Bipartite,
    Imaginary,
    RealPair,
    General,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Bipartite => "bipartite",
            Branch::Imaginary => "imaginary",
            Branch::RealPair => "real_pair",
            Branch::General => "general",
        }
    }

    pub fn modes(self) -> usize {
        if self == Branch::Bipartite {
            2
        } else {
            3
        }
    }

    /// Displacement amplitudes for the patterned branches.
    pub fn pattern(self, j: f64) -> Result<Vec<Complex64>> {
        if !(j >= 0.0) || !j.is_finite() {
            return Err(Error::InvalidParameter(format!("J = {j} must be finite and non-negative")));
        }
        let a = (j / 2.0).sqrt();
        match self {
            Branch::Bipartite => Ok(vec![Complex64::new(0.0, a); 2]),
            Branch::Imaginary => Ok(vec![Complex64::new(0.0, a); 3]),
            Branch::RealPair => Ok(vec![Complex64::new(-a, 0.0), Complex64::new(a, 0.0), zero()]),
            Branch::General => Err(Error::InvalidParameter("the general branch has no fixed pattern".into())),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bipartite" => Ok(Branch::Bipartite),
            "imaginary" => Ok(Branch::Imaginary),
            "real" | "real_pair" | "real-pair" => Ok(Branch::RealPair),
            "general" => Ok(Branch::General),
            _ => Err(Error::InvalidParameter(format!(
                "unknown branch '{s}' (expected bipartite, imaginary, real_pair or general)"
            ))),
        }
    }
}

/// A patterned Bell evaluation: branch, displacement scale and state parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellConfig {
    pub branch: Branch,
    pub j: f64,
    pub s: Regulator,
}

impl BellConfig {
    /// Evaluates the branch's Bell combination through `bell_b2`/`bell_b3` on
    /// the closed-form EPR parities.
    pub fn evaluate(&self) -> Result<BellValue> {
        let amps = self.branch.pattern(self.j)?;
        match self.branch {
            Branch::Bipartite => bell_b2(&Epr2Parity(self.s), amps[0], amps[1]),
            _ => bell_b3(&Epr3Parity(self.s), amps[0], amps[1], amps[2]),
        }
    }
}

fn check_j(j: f64) -> Result<()> {
    if j >= 0.0 && j.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("J = {j} must be finite and non-negative")))
    }
}

/// `1 + 2 exp(−J(s⁴+1)/(s⁴−1)) − exp(−2J(s²+1)/(s²−1))`.
pub fn b2_imaginary(s: Regulator, j: f64) -> Result<BellValue> {
    check_j(j)?;
    let s2 = s.s() * s.s();
    let a = (s2 * s2 + 1.0) / (s2 * s2 - 1.0);
    let b = 2.0 * (s2 + 1.0) / (s2 - 1.0);
    bell_value(1.0 + 2.0 * (-a * j).exp() - (-b * j).exp(), s.classify(2)?)
}

fn tripartite_regime(s: Regulator) -> Result<Regime> {
    match s.classify(3)? {
        Regime::Singular => Err(Error::SingularRegulator { s: s.s(), modes: 3 }),
        r => Ok(r),
    }
}

/// `3 exp(−J(s⁴−s²+2)/((s²+1)(s²−2))) − exp(−3J(s²+2)/(s²−2))`.
pub fn b3_imaginary(s: Regulator, j: f64) -> Result<BellValue> {
    check_j(j)?;
    let regime = tripartite_regime(s)?;
    let s2 = s.s() * s.s();
    let a = (s2 * s2 - s2 + 2.0) / ((s2 + 1.0) * (s2 - 2.0));
    let b = 3.0 * (s2 + 2.0) / (s2 - 2.0);
    bell_value(3.0 * (-a * j).exp() - (-b * j).exp(), regime)
}

/// `1 + 2 exp(−J(s⁴+s²+2)/((s²−1)(s²+2))) − exp(−2J(s²+1)/(s²−1))`.
pub fn b3_real(s: Regulator, j: f64) -> Result<BellValue> {
    check_j(j)?;
    let regime = tripartite_regime(s)?;
    let s2 = s.s() * s.s();
    let a = (s2 * s2 + s2 + 2.0) / ((s2 - 1.0) * (s2 + 2.0));
    let b = 2.0 * (s2 + 1.0) / (s2 - 1.0);
    bell_value(1.0 + 2.0 * (-a * j).exp() - (-b * j).exp(), regime)
}

/// Ratio of the two exponents of [`b3_imaginary`],
/// `3(s²+2)(s²+1)/(s⁴−s²+2)`, which tends to 9 as `s → √2`.
pub fn imaginary_exponent_ratio(s: Regulator) -> f64 {
    let s2 = s.s() * s.s();
    3.0 * (s2 + 2.0) * (s2 + 1.0) / (s2 * s2 - s2 + 2.0)
}

/// Leading-order form `3x − x^λ` of a branch whose exponents have ratio `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticBranch {
    pub lambda: f64,
}

impl AsymptoticBranch {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda > 1.0 && lambda.is_finite() {
            Ok(AsymptoticBranch { lambda })
        } else {
            Err(Error::InvalidParameter(format!("exponent ratio {lambda} must exceed 1")))
        }
    }

    /// Stationary point `x* = (3/λ)^{1/(λ−1)}`.
    pub fn argmax(self) -> f64 {
        (3.0 / self.lambda).powf(1.0 / (self.lambda - 1.0))
    }
}

/// `max_x (3x − x^λ) = (λ−1)(3/λ)^{λ/(λ−1)}`.
pub fn b3_asymptotic_max(branch: AsymptoticBranch) -> f64 {
    let l = branch.lambda;
    (l - 1.0) * (3.0 / l).powf(l / (l - 1.0))
}

/// Limit of the real-pair maximum as `s → 1⁺`: `1 + 2√(2/3) − (2/3)^{3/2}`.
pub fn b3_real_limit() -> f64 {
    let q: f64 = 2.0 / 3.0;
    1.0 + 2.0 * q.sqrt() - q.powf(1.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{epr_ket, nopa2_ket, squeezing_correspondence, EtaVector};
    use approx::assert_relative_eq;

    fn reg(s: f64) -> Regulator {
        Regulator::new(s).unwrap()
    }

    #[test]
    fn zero_displacement_gives_two() {
        let z = zero();
        assert_eq!(bell_b2(&Epr2Parity(reg(1.5)), z, z).unwrap().b, 2.0);
        assert_eq!(bell_b3(&Epr3Parity(reg(2.0)), z, z, z).unwrap().b, 2.0);
        for f in [b3_imaginary, b3_real, b2_imaginary] {
            assert_eq!(f(reg(1.3), 0.0).unwrap().b, 2.0);
        }
    }

    #[test]
    fn single_mode_parity_example() {
        // Π(i√(J/2), 0, 0) at s = 2, J = 0.2.
        let a = Complex64::new(0.0, 0.1f64.sqrt());
        let p = Epr3Parity(reg(2.0)).parity(&PhasePoint::new(vec![a, zero(), zero()])).unwrap();
        assert_relative_eq!(p, (-0.28f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn patterned_b3_matches_branch_formulas() {
        let cfg = BellConfig { branch: Branch::Imaginary, j: 0.1, s: reg(1.5) };
        assert_relative_eq!(cfg.evaluate().unwrap().b, b3_imaginary(reg(1.5), 0.1).unwrap().b, epsilon = 1e-12);
        let cfg = BellConfig { branch: Branch::RealPair, j: 0.05, s: reg(1.2) };
        assert_relative_eq!(cfg.evaluate().unwrap().b, b3_real(reg(1.2), 0.05).unwrap().b, epsilon = 1e-12);
        let cfg = BellConfig { branch: Branch::Bipartite, j: 0.3, s: reg(1.1) };
        assert_relative_eq!(cfg.evaluate().unwrap().b, b2_imaginary(reg(1.1), 0.3).unwrap().b, epsilon = 1e-12);
    }

    #[test]
    fn providers_agree() {
        let s = reg(1.7);
        let r = squeezing_correspondence(s);
        let a = Complex64::new(0.1, 0.3);
        let b = Complex64::new(-0.2, 0.15);
        let via_s = bell_b2(&Epr2Parity(s), a, b).unwrap().b;
        let via_r = bell_b2(&Nopa2Parity(r), a, b).unwrap().b;
        let via_engine = bell_b2(&EngineParity(nopa2_ket(r)), a, b).unwrap().b;
        assert_relative_eq!(via_s, via_r, epsilon = 1e-10);
        assert_relative_eq!(via_s, via_engine, epsilon = 1e-10);
        let spec = epr_ket(3, s, &EtaVector::zeros(3)).unwrap();
        let c = Complex64::new(0.05, -0.1);
        assert_relative_eq!(
            bell_b3(&Epr3Parity(s), a, b, c).unwrap().b,
            bell_b3(&EngineParity(spec), a, b, c).unwrap().b,
            epsilon = 1e-10
        );
    }

    #[test]
    fn asymptotic_values() {
        let nine = AsymptoticBranch::new(9.0).unwrap();
        assert_relative_eq!(b3_asymptotic_max(nine), 8.0 * 3f64.powf(-9.0 / 8.0), epsilon = 1e-15);
        assert_relative_eq!(b3_asymptotic_max(nine), 2.324495, epsilon = 1e-6);
        assert_relative_eq!(nine.argmax(), 0.87169, epsilon = 1e-5);
        assert_relative_eq!(b3_asymptotic_max(AsymptoticBranch::new(3.0).unwrap()), 2.0, epsilon = 1e-15);
        assert!(AsymptoticBranch::new(1.0).is_err());
        assert_relative_eq!(b3_real_limit(), 2.08866, epsilon = 1e-5);
        assert_relative_eq!(imaginary_exponent_ratio(reg(2f64.sqrt())), 9.0, epsilon = 1e-12);
    }

    #[test]
    fn branch_guards() {
        assert!(b3_imaginary(reg(2f64.sqrt()), 0.1).is_err());
        assert!(b3_real(reg(1.5), -0.1).is_err());
        assert!(Branch::General.pattern(0.1).is_err());
        assert_eq!("real".parse::<Branch>().unwrap(), Branch::RealPair);
        assert!("diagonal".parse::<Branch>().is_err());
        assert!(bell_b3(&Epr2Parity(reg(1.5)), zero(), zero(), zero()).is_err());
    }

    #[test]
    fn imaginary_branch_never_exceeds_two_below_threshold() {
        for k in 1..40 {
            let s = reg(1.0 + 0.01 * k as f64);
            for m in 0..200 {
                let b = b3_imaginary(s, 0.01 * m as f64).unwrap().b;
                assert!(b <= 2.0 + 1e-12);
            }
        }
    }
}
