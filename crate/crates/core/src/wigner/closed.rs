use num_complex::Complex64;
use serde::Serialize;

use super::{wigner_displaced_parity, PhasePoint, WignerValue};
use crate::gaussian::{epr_ket, EtaVector, Regime, Regulator, SqueezingParam};
use crate::{Error, Result};

/// Coefficients of the tripartite EPR Wigner exponent; every term is divided
/// by `denom = (s⁴ − 4)(s⁴ − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WignerCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub denom: f64,
}

impl WignerCoefficients {
    pub fn new(s: Regulator) -> Result<Self> {
        if s.classify(3)? == Regime::Singular {
            return Err(Error::SingularRegulator { s: s.s(), modes: 3 });
        }
        let s = s.s();
        let s2 = s * s;
        let s4 = s2 * s2;
        Ok(WignerCoefficients {
            c1: -2.0 * (s4 * s4 - s4 - 4.0),
            c2: 4.0 * s2 * (s4 - 2.0),
            c3: -4.0 * s4,
            c4: 4.0 * s2,
            denom: (s4 - 4.0) * (s4 - 1.0),
        })
    }
}

/// Symmetric sums over three amplitudes: `Σ|αᵢ|²`, `Σ_{i<j}(αᵢαⱼ + c.c.)`,
/// `Σ_{i≠j} αᵢαⱼ*` and `Σ(αᵢ² + c.c.)`.
fn symmetric_sums(a: &[Complex64]) -> (f64, f64, f64, f64) {
    let abs2 = a.iter().map(|z| z.norm_sqr()).sum();
    let mut pair = 0.0;
    let mut mixed = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            pair += 2.0 * (a[i] * a[j]).re;
            mixed += 2.0 * (a[i] * a[j].conj()).re;
        }
    }
    let squares = a.iter().map(|z| 2.0 * (z * z).re).sum();
    (abs2, pair, mixed, squares)
}

fn regime_of(s: Regulator) -> Result<Regime> {
    s.classify(3)
}

/// Exponent of the tripartite EPR Wigner function (η = 0).
pub fn epr3_exponent(s: Regulator, pt: &PhasePoint) -> Result<f64> {
    pt.check_modes(3)?;
    let k = WignerCoefficients::new(s)?;
    let (abs2, pair, mixed, squares) = symmetric_sums(pt.amps());
    Ok((k.c1 * abs2 + k.c2 * pair + k.c3 * mixed + k.c4 * squares) / k.denom)
}

pub fn wigner_epr3_closed(s: Regulator, pt: &PhasePoint) -> Result<WignerValue> {
    let e = epr3_exponent(s, pt)?;
    Ok(WignerValue::from_exponent(3, 1.0, e, regime_of(s)?))
}

/// Same function written in polar amplitudes `αⱼ = |αⱼ| e^{iφⱼ}`.
pub fn wigner_epr3_polar(s: Regulator, mags: [f64; 3], phases: [f64; 3]) -> Result<WignerValue> {
    if mags.iter().any(|m| !(*m >= 0.0)) {
        return Err(Error::InvalidParameter("magnitudes must be non-negative".into()));
    }
    let k = WignerCoefficients::new(s)?;
    let pairs = [(0usize, 1usize), (1, 2), (2, 0)];
    let abs2: f64 = mags.iter().map(|m| m * m).sum();
    let sum_phase: f64 = pairs
        .iter()
        .map(|&(i, j)| mags[i] * mags[j] * (phases[i] + phases[j]).cos())
        .sum();
    let diff_phase: f64 = pairs
        .iter()
        .map(|&(i, j)| mags[i] * mags[j] * (phases[j] - phases[i]).cos())
        .sum();
    let doubled: f64 = (0..3).map(|i| mags[i] * mags[i] * (2.0 * phases[i]).cos()).sum();
    let e = (k.c1 * abs2 + 2.0 * k.c2 * sum_phase + 2.0 * k.c3 * diff_phase + 2.0 * k.c4 * doubled)
        / k.denom;
    Ok(WignerValue::from_exponent(3, 1.0, e, regime_of(s)?))
}

/// Exponent of the tripartite NOPA Wigner function.
pub fn nopa3_exponent(r: SqueezingParam, pt: &PhasePoint) -> Result<f64> {
    pt.check_modes(3)?;
    let (abs2, pair, _, squares) = symmetric_sums(pt.amps());
    let (ch, sh) = ((2.0 * r.r()).cosh(), (2.0 * r.r()).sinh());
    Ok(-2.0 * ch * abs2 - sh / 3.0 * squares + 4.0 / 3.0 * sh * pair)
}

pub fn wigner_nopa3_closed(r: SqueezingParam, pt: &PhasePoint) -> Result<WignerValue> {
    let e = nopa3_exponent(r, pt)?;
    Ok(WignerValue::from_exponent(3, 1.0, e, Regime::Normalizable))
}

/// Exponent of the two-mode squeezed vacuum `√(1−t²) e^{t a†b†}|00⟩`,
/// `t = tanh r`.
pub fn tmsv_exponent(r: SqueezingParam, pt: &PhasePoint) -> Result<f64> {
    pt.check_modes(2)?;
    let (abs2, pair, _, _) = symmetric_sums(pt.amps());
    let (ch, sh) = ((2.0 * r.r()).cosh(), (2.0 * r.r()).sinh());
    Ok(-2.0 * ch * abs2 + 2.0 * sh * pair)
}

pub fn wigner_tmsv_closed(r: SqueezingParam, pt: &PhasePoint) -> Result<WignerValue> {
    let e = tmsv_exponent(r, pt)?;
    Ok(WignerValue::from_exponent(2, 1.0, e, Regime::Normalizable))
}

/// Bipartite EPR Wigner function, evaluated by the general engine on
/// `epr_ket(2, s, 0)`.
pub fn wigner_epr2(s: Regulator, pt: &PhasePoint) -> Result<WignerValue> {
    let spec = epr_ket(2, s, &EtaVector::zeros(2))?;
    wigner_displaced_parity(&spec, pt)
}
