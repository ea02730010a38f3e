//! Wigner functions as displaced-parity expectation values,
//! `W(α) = (2/π)^N ⟨Π(α)⟩` with `Π(α) = ⊗ⱼ D(αⱼ)(−1)^{nⱼ}D†(αⱼ)`.
//!
//! [`wigner_displaced_parity`] handles any [`GaussianKetSpec`] through the
//! Berezin integral; the `closed` functions evaluate the known closed forms.

mod berezin;
mod closed;
mod grid;
mod quadform;
mod shift;

pub use berezin::{berezin_integral, BerezinResult, BlockMatrix};
pub use closed::{
    epr3_exponent, nopa3_exponent, tmsv_exponent, wigner_epr2, wigner_epr3_closed, wigner_epr3_polar,
    wigner_nopa3_closed, wigner_tmsv_closed, WignerCoefficients,
};
pub use grid::{evaluate_slice, fmt_f64, write_wigner_csv, Quadrature, WignerGridRow, WignerSlice, WIGNER_CSV_HEADER};
pub use quadform::{form_signature, gaussian_phase_space_integral, quadrature_form};
pub use shift::{eta_shift, eta_shift_factor, ShiftFactor};

use num_complex::Complex64;
use serde::Serialize;

use crate::gaussian::{GaussianKetSpec, Regime, StateFamily};
use crate::{Error, Result};

/// Exponents beyond this magnitude saturate to `inf` / `0`.
pub const EXPONENT_LIMIT: f64 = 700.0;

/// Phase-space point, one complex amplitude `αⱼ = (xⱼ + i pⱼ)/√2` per mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhasePoint(pub Vec<Complex64>);

impl PhasePoint {
    pub fn new(amps: Vec<Complex64>) -> Self {
        PhasePoint(amps)
    }

    pub fn zeros(modes: usize) -> Self {
        PhasePoint(vec![Complex64::new(0.0, 0.0); modes])
    }

    /// From interleaved quadratures `(x₁, p₁, x₂, p₂, …)`.
    pub fn from_quadratures(xp: &[f64]) -> Result<Self> {
        if !xp.len().is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "expected an even number of quadratures, got {}",
                xp.len()
            )));
        }
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Ok(PhasePoint(
            xp.chunks(2).map(|c| Complex64::new(c[0] * r, c[1] * r)).collect(),
        ))
    }

    pub fn from_polar(mags: &[f64], phases: &[f64]) -> Self {
        PhasePoint(
            mags.iter()
                .zip(phases)
                .map(|(&m, &p)| Complex64::from_polar(m, p))
                .collect(),
        )
    }

    pub fn quadratures(&self) -> Vec<f64> {
        let s = std::f64::consts::SQRT_2;
        self.0.iter().flat_map(|a| [a.re * s, a.im * s]).collect()
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub(crate) fn check_modes(&self, modes: usize) -> Result<()> {
        if self.modes() == modes {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: modes, found: self.modes() })
        }
    }
}

/// A Wigner function value together with the parity expectation it came
/// from and the regime of the underlying state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WignerValue {
    /// `W = (2/π)^N Π`.
    pub w: f64,
    /// Displaced-parity expectation `Π`, equal to 1 at the origin for
    /// undriven states.
    pub parity: f64,
    /// Natural log of `Π` (finite even when `Π` saturates).
    pub ln_parity: f64,
    pub modes: usize,
    pub regime: Regime,
    /// Set when the exponent exceeded [`EXPONENT_LIMIT`] in magnitude.
    pub saturated: bool,
}

impl WignerValue {
    pub(crate) fn from_exponent(modes: usize, prefactor: f64, exponent: f64, regime: Regime) -> Self {
        let ln_parity = prefactor.ln() + exponent;
        let (parity, saturated) = if exponent > EXPONENT_LIMIT {
            (f64::INFINITY, true)
        } else if exponent < -EXPONENT_LIMIT {
            (0.0, true)
        } else {
            (prefactor * exponent.exp(), false)
        };
        WignerValue {
            w: (2.0 / std::f64::consts::PI).powi(modes as i32) * parity,
            parity,
            ln_parity,
            modes,
            regime,
            saturated,
        }
    }

    /// True when `Π` leaves `(0, 1]`: impossible for a normalisable state,
    /// expected in the formal regime.
    pub fn exceeds_parity_bound(&self) -> bool {
        !(self.parity > 0.0 && self.parity <= 1.0 + 1e-12)
    }
}

fn singular_error(spec: &GaussianKetSpec) -> Error {
    match spec.family() {
        StateFamily::Epr { s, .. } => Error::SingularRegulator { s: *s, modes: spec.modes() },
        _ => Error::FormalRegime { spectral_norm: spec.coupling().spectral_norm() },
    }
}

/// Wigner function of a Gaussian ket through the anti-normally ordered
/// displaced parity and a Berezin integral over coherent states.
///
/// `D(α)(−1)ⁿD†(α) = e^{2|α|²} e^{−2α*a} e^{2αa†} (−1)ⁿ`; the parity flips the
/// ket's drive, and inserting coherent states leaves a Gaussian integral with
/// `μ = λ* − 2α*`, `ν* = −λ + 2α`. In the formal regime the same algebraic
/// expression is returned with the normalisation taken in absolute value.
pub fn wigner_displaced_parity(spec: &GaussianKetSpec, pt: &PhasePoint) -> Result<WignerValue> {
    let n = spec.modes();
    pt.check_modes(n)?;
    let regime = spec.regime();
    if regime == Regime::Singular {
        return Err(singular_error(spec));
    }
    let lam = spec.drive();
    let mut mu_nu = Vec::with_capacity(2 * n);
    mu_nu.extend(lam.iter().zip(pt.amps()).map(|(l, a)| l.conj() - 2.0 * a.conj()));
    mu_nu.extend(lam.iter().zip(pt.amps()).map(|(l, a)| -l + 2.0 * a));
    let res = berezin_integral(&BlockMatrix::for_coupling(spec.coupling()), &mu_nu)?;
    let cancel = match regime {
        Regime::Normalizable => {
            let n2 = spec.norm().unwrap_or(0.0).powi(2);
            (res.prefactor * n2).re
        }
        _ => spec.formal_norm_sq() * res.prefactor.norm(),
    };
    let exponent = 2.0 * pt.norm_sqr() + res.exponent.re + 2.0 * spec.scalar_prefactor().ln();
    Ok(WignerValue::from_exponent(n, cancel, exponent, regime))
}
