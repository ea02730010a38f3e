//! Removing the drive η from the EPR family by a phase-space translation.
//!
//! For `ψ_η = epr_ket(N, s, η)` and any `α′`,
//!
//! ```text
//! W_η(α′ + η/(2s)) = E · W₀(α′),   E = exp(Σⱼ (αⱼ′ηⱼ* + αⱼ′*ηⱼ)/s)
//! ```
//!
//! and `E = 1` when every pair satisfies `Re(αⱼ′ηⱼ*) = 0`.

use num_complex::Complex64;
use serde::Serialize;

use super::PhasePoint;
use crate::gaussian::{EtaVector, Regulator};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftFactor {
    pub e: f64,
}

fn cross(a: Complex64, eta: Complex64) -> f64 {
    2.0 * (a * eta.conj()).re
}

/// `E` for an arbitrary point, with no constraint check.
pub fn eta_shift_factor(pt: &PhasePoint, eta: &EtaVector, s: Regulator) -> Result<ShiftFactor> {
    pt.check_modes(eta.len())?;
    let sum: f64 = pt.amps().iter().zip(&eta.0).map(|(a, e)| cross(*a, *e)).sum();
    Ok(ShiftFactor { e: (sum / s.s()).exp() })
}

/// Maps `α′` to the point `α′ + η/(2s)` at which the driven state is
/// evaluated, enforcing `αⱼ′ηⱼ* + αⱼ′*ηⱼ = 0` for each mode.
pub fn eta_shift(pt: &PhasePoint, eta: &EtaVector, s: Regulator) -> Result<(PhasePoint, ShiftFactor)> {
    pt.check_modes(eta.len())?;
    for (mode, (a, e)) in pt.amps().iter().zip(&eta.0).enumerate() {
        let residual = cross(*a, *e);
        if residual.abs() > 1e-12 * (1.0 + a.norm() * e.norm()) {
            return Err(Error::ShiftConstraint { mode, residual });
        }
    }
    let half = 0.5 / s.s();
    let moved = pt.amps().iter().zip(&eta.0).map(|(a, e)| a + e * half).collect();
    Ok((PhasePoint::new(moved), eta_shift_factor(pt, eta, s)?))
}
